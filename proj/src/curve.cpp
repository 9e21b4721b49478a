#include "sqrtvelu/curve.hpp"

#include <algorithm>
#include <atomic>
#include <vector>

namespace sqrtvelu {

namespace {

std::atomic<bool> g_corrupt_biquadratic{false};

}  // namespace

namespace fault {
void corrupt_biquadratic(bool on) { g_corrupt_biquadratic.store(on); }
bool biquadratic_corrupted() { return g_corrupt_biquadratic.load(); }
}  // namespace fault

MontgomeryCurve affine_curve(const FieldContext& ctx, const FieldElement& a) { return {a, ctx.one()}; }

XPoint affine_point(const FieldContext& ctx, const FieldElement& x) { return {x, ctx.one()}; }

XPoint infinity(const FieldContext& ctx) { return {ctx.one(), ctx.zero()}; }

bool is_nonsingular(const MontgomeryCurve& curve) {
  if (curve.C.is_zero()) return false;
  OpTally scratch;
  const Field F(*curve.A.context(), scratch);
  const FieldElement a2 = F.sqr(curve.A);
  const FieldElement c2 = F.sqr(curve.C);
  return !(a2 == F.add(F.dbl(c2), F.dbl(c2)));
}

FieldElement affine_a(const MontgomeryCurve& curve) {
  OpTally scratch;
  const Field F(*curve.A.context(), scratch);
  return F.mul(curve.A, F.inv(curve.C));
}

FieldElement affine_x(const XPoint& P) {
  OpTally scratch;
  const Field F(*P.X.context(), scratch);
  return F.mul(P.X, F.inv(P.Z));
}

bool same_x(const XPoint& P, const XPoint& Q) {
  if (P.is_infinity() || Q.is_infinity()) return P.is_infinity() && Q.is_infinity();
  OpTally scratch;
  const Field F(*P.X.context(), scratch);
  return F.mul(P.X, Q.Z) == F.mul(Q.X, P.Z);
}

XPoint xdbl(const Field& F, const XPoint& P, const MontgomeryCurve& curve) {
  const FieldElement c2 = F.dbl(curve.C);
  const FieldElement a24 = F.add(curve.A, c2);  // A + 2C
  const FieldElement c24 = F.dbl(c2);           // 4C
  const FieldElement s = F.sqr(F.add(P.X, P.Z));
  const FieldElement d = F.sqr(F.sub(P.X, P.Z));
  const FieldElement dc = F.mul(d, c24);
  const FieldElement x2 = F.mul(s, dc);
  const FieldElement t = F.sub(s, d);  // 4XZ
  const FieldElement z2 = F.mul(F.add(dc, F.mul(a24, t)), t);
  return {x2, z2};
}

XPoint xadd(const Field& F, const XPoint& P, const XPoint& Q, const XPoint& PminusQ) {
  const FieldElement u = F.mul(F.sub(P.X, P.Z), F.add(Q.X, Q.Z));
  const FieldElement v = F.mul(F.add(P.X, P.Z), F.sub(Q.X, Q.Z));
  const FieldElement x = F.mul(PminusQ.Z, F.sqr(F.add(u, v)));
  const FieldElement z = F.mul(PminusQ.X, F.sqr(F.sub(u, v)));
  return {x, z};
}

XPoint ladder(const Field& F, const mpz_class& k, const XPoint& P, const MontgomeryCurve& curve) {
  const FieldContext& ctx = F.context();
  if (k == 0 || P.is_infinity()) return infinity(ctx);
  if (P.X.is_zero()) return mpz_even_p(k.get_mpz_t()) ? infinity(ctx) : P;  // (0,0) has order 2
  XPoint r0 = P;
  XPoint r1 = xdbl(F, P, curve);
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (mpz_tstbit(k.get_mpz_t(), i)) {
      r0 = xadd(F, r1, r0, P);
      r1 = xdbl(F, r1, curve);
    } else {
      r1 = xadd(F, r0, r1, P);
      r0 = xdbl(F, r0, curve);
    }
  }
  return r0;
}

std::map<std::int64_t, FieldElement> multiples_x(const Field& F, const XPoint& P,
                                                 std::span<const std::int64_t> indices,
                                                 const MontgomeryCurve& curve) {
  std::vector<std::int64_t> idx(indices.begin(), indices.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  auto mult = [&](std::int64_t k) { return ladder(F, mpz_class(static_cast<long>(k < 0 ? -k : k)), P, curve); };

  std::vector<XPoint> pts;
  pts.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t end = i + 1;
    const std::int64_t step = end < idx.size() ? idx[end] - idx[i] : 0;
    while (end < idx.size() && idx[end] - idx[end - 1] == step) ++end;
    // Run idx[i], idx[i] + step, ..., chained by x([s+d]P) = xadd([s]P, [d]P, [s-d]P).
    XPoint prev, cur = mult(idx[i]);
    pts.push_back(cur);
    if (end - i >= 2) {
      const XPoint stepP = mult(step);
      const XPoint back = mult(idx[i] - step);
      XPoint next = back.is_infinity() ? xdbl(F, cur, curve) : xadd(F, cur, stepP, back);
      prev = cur;
      cur = next;
      pts.push_back(cur);
      for (std::size_t k = i + 2; k < end; ++k) {
        next = xadd(F, cur, stepP, prev);
        prev = cur;
        cur = next;
        pts.push_back(cur);
      }
    }
    i = end;
  }

  std::vector<FieldElement> zs;
  zs.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].is_infinity())
      throw Error(Errc::IdentityMultiple, "index " + std::to_string(idx[k]) + " annihilates the point");
    zs.push_back(pts[k].Z);
  }
  F.batch_inv(zs);
  std::map<std::int64_t, FieldElement> out;
  for (std::size_t k = 0; k < pts.size(); ++k) out.emplace(idx[k], F.mul(pts[k].X, zs[k]));
  return out;
}

namespace {

FieldElement two_a_term(const Field& F, const FieldElement& a_times_t) {
  // 2 a t, or 3 a t when the mutation hook is active.
  const FieldElement two = F.dbl(a_times_t);
  return g_corrupt_biquadratic.load(std::memory_order_relaxed) ? F.add(two, a_times_t) : two;
}

}  // namespace

Biquadratic biquad_coeffs(const Field& F, const FieldElement& x1, const FieldElement& x2,
                          const MontgomeryCurve& curve) {
  const FieldElement t = F.mul(x1, x2);
  const FieldElement f0 = F.mul(curve.C, F.sqr(F.sub(x1, x2)));
  const FieldElement f2 = F.mul(curve.C, F.sqr(F.sub(t, F.one())));
  const FieldElement u = F.mul(curve.C, F.mul(F.add(t, F.one()), F.add(x1, x2)));
  const FieldElement f1 = F.neg(F.dbl(F.add(u, two_a_term(F, F.mul(curve.A, t)))));
  return {f0, f1, f2};
}

Biquadratic biquad_affine(const Field& F, const FieldElement& x1, const FieldElement& x2, const FieldElement& a) {
  const FieldElement t = F.mul(x1, x2);
  const FieldElement f0 = F.sqr(F.sub(x1, x2));
  const FieldElement f2 = F.sqr(F.sub(t, F.one()));
  const FieldElement u = F.mul(F.add(t, F.one()), F.add(x1, x2));
  const FieldElement f1 = F.neg(F.dbl(F.add(u, two_a_term(F, F.mul(a, t)))));
  return {f0, f1, f2};
}

Biquadratic biquad_homogeneous(const Field& F, const FieldElement& X, const FieldElement& Z,
                               const FieldElement& axz, const FieldElement& x2) {
  const FieldElement xX = F.mul(x2, X);
  const FieldElement xZ = F.mul(x2, Z);
  const FieldElement f0 = F.sqr(F.sub(X, xZ));
  const FieldElement f2 = F.sqr(F.sub(xX, Z));
  const FieldElement u = F.mul(F.add(xX, Z), F.add(X, xZ));
  const FieldElement f1 = F.neg(F.dbl(F.add(u, two_a_term(F, F.mul(x2, axz)))));
  return {f0, f1, f2};
}

UnitBiquadratics biquad_at_units(const Field& F, const FieldElement& x2, const FieldElement& a) {
  const FieldElement minus = F.sqr(F.sub(x2, F.one()));  // (x - 1)^2
  const FieldElement plus = F.sqr(F.add(x2, F.one()));   // (x + 1)^2
  const FieldElement w = two_a_term(F, F.mul(a, x2));    // 2 a x
  // x1 = 1:  F0 = F2 = (x - 1)^2, F1 = -2 ((x + 1)^2 + 2 a x)
  // x1 = -1: F0 = F2 = (x + 1)^2, F1 =  2 ((x - 1)^2 + 2 a x)
  return {{minus, F.neg(F.dbl(F.add(plus, w))), minus}, {plus, F.dbl(F.add(minus, w)), plus}};
}

}  // namespace sqrtvelu
