#include "sqrtvelu/isogeny.hpp"

#include <string>

#include "sqrtvelu/velusqrt.hpp"

namespace sqrtvelu {

namespace {

void check_kernel(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell, bool check_order) {
  if (ell < 3 || ell % 2 == 0) throw Error(Errc::InvalidDegree, "degree must be odd and >= 3");
  if (P.is_infinity()) throw Error(Errc::KernelPointIsIdentity, "kernel point is the identity");
  if (check_order && !ladder(F, mpz_class(static_cast<long>(ell)), P, curve).is_infinity())
    throw Error(Errc::WrongOrder, "[ell]P is not the identity");
}

// A' = 2 (aE + dE), C' = aE - dE with aE = (A + 2C)^ell * plus^8 and
// dE = (A - 2C)^ell * minus^8, where plus and minus are proportional (by the
// same constant) to prod (x_s + 1) and prod (x_s - 1).
MontgomeryCurve codomain(const Field& F, const MontgomeryCurve& curve, std::int64_t ell, const FieldElement& plus,
                         const FieldElement& minus) {
  const FieldElement twoC = F.dbl(curve.C);
  const auto e = static_cast<std::uint64_t>(ell);
  const FieldElement aE = F.mul(F.pow(F.add(curve.A, twoC), e), F.sqr(F.sqr(F.sqr(plus))));
  const FieldElement dE = F.mul(F.pow(F.sub(curve.A, twoC), e), F.sqr(F.sqr(F.sqr(minus))));
  MontgomeryCurve out{F.dbl(F.add(aE, dE)), F.sub(aE, dE)};
  if (!is_nonsingular(out)) throw Error(Errc::SingularCodomain, "codomain is singular");
  return out;
}

}  // namespace

IsogenyOutput velu_conventional(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                                const std::vector<XPoint>& push, bool check_order) {
  check_kernel(F, curve, P, ell, check_order);
  const std::size_t half = static_cast<std::size_t>((ell - 1) / 2);
  const std::size_t npush = push.size();
  std::vector<FieldElement> qp(npush), qm(npush), accX(npush), accZ(npush);
  for (std::size_t q = 0; q < npush; ++q) {
    qp[q] = F.add(push[q].X, push[q].Z);
    qm[q] = F.sub(push[q].X, push[q].Z);
  }
  FieldElement plus, minus;
  XPoint prev, cur = P;
  for (std::size_t s = 1; s <= half; ++s) {
    if (s == 2) {
      prev = cur;
      cur = xdbl(F, P, curve);
    } else if (s > 2) {
      XPoint next = xadd(F, cur, P, prev);
      prev = cur;
      cur = next;
    }
    const FieldElement tp = F.add(cur.X, cur.Z);
    const FieldElement tm = F.sub(cur.X, cur.Z);
    plus = s == 1 ? tp : F.mul(plus, tp);
    minus = s == 1 ? tm : F.mul(minus, tm);
    for (std::size_t q = 0; q < npush; ++q) {
      const FieldElement t0 = F.mul(tm, qp[q]);
      const FieldElement t1 = F.mul(tp, qm[q]);
      const FieldElement nx = F.add(t0, t1);
      const FieldElement nz = F.sub(t0, t1);
      accX[q] = s == 1 ? nx : F.mul(accX[q], nx);
      accZ[q] = s == 1 ? nz : F.mul(accZ[q], nz);
    }
  }
  IsogenyOutput out;
  for (std::size_t q = 0; q < npush; ++q) {
    XPoint img{F.mul(push[q].X, F.sqr(accX[q])), F.mul(push[q].Z, F.sqr(accZ[q]))};
    if (img.Z.is_zero()) img = infinity(F.context());
    out.images.push_back(img);
  }
  out.codomain = codomain(F, curve, ell, plus, minus);
  return out;
}

IsogenyOutput velu_sqrt(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                        const std::vector<XPoint>& push, std::optional<std::int64_t> b, bool check_order) {
  check_kernel(F, curve, P, ell, check_order);
  const HsPlan plan(F, curve, P, ell, index_system_for(ell, b), {.check_order = false, .exact = false});
  IsogenyOutput out;
  for (const auto& Q : push) {
    const HsPair h = hs_eval_projective(F, plan, Q);
    XPoint img{F.mul(Q.X, F.sqr(h.second)), F.mul(Q.Z, F.sqr(h.first))};
    if (img.Z.is_zero()) img = infinity(F.context());
    out.images.push_back(img);
  }
  // h_S(-1) ~ prod (x_s + 1), h_S(1) ~ prod (x_s - 1) up to sign; the eighth
  // power removes the sign.
  const HsPair u = hs_eval_units(F, plan);
  out.codomain = codomain(F, curve, ell, u.second, u.first);
  return out;
}

bool uses_sqrt(const EngineChoice& engine, std::int64_t ell) {
  switch (engine.mode) {
    case Engine::Conventional: return false;
    case Engine::Sqrt: return true;
    case Engine::Auto: return ell >= engine.crossover_ell;
  }
  return false;
}

IsogenyOutput isogeny_eval(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                           const std::vector<XPoint>& push, const EngineChoice& engine) {
  if (!uses_sqrt(engine, ell)) return velu_conventional(F, curve, P, ell, push, engine.check_order);
  std::optional<std::int64_t> b;
  if (auto it = engine.b_table.find(ell); it != engine.b_table.end()) b = it->second;
  return velu_sqrt(F, curve, P, ell, push, b, engine.check_order);
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Conventional: return "conventional";
    case Engine::Sqrt: return "sqrt";
    case Engine::Auto: return "auto";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "conventional") return Engine::Conventional;
  if (name == "sqrt") return Engine::Sqrt;
  if (name == "auto") return Engine::Auto;
  throw Error(Errc::Parse, "unknown engine '" + name + "'");
}

}  // namespace sqrtvelu
