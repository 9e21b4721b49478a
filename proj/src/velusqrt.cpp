#include "sqrtvelu/velusqrt.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace sqrtvelu {

namespace {

std::int64_t isqrt(std::int64_t n) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Product of the entries; one for an empty list.
FieldElement product_of(const Field& F, const std::vector<FieldElement>& xs) {
  if (xs.empty()) return F.one();
  FieldElement acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = F.mul(acc, xs[i]);
  return acc;
}

// x([s]P) for s = first, first + step, ... (count terms), where every term
// after the first two comes from xadd(prev, [step]P, prevprev).
std::vector<XPoint> chain(const Field& F, const XPoint& first, const XPoint& second, const XPoint& step,
                          std::size_t count) {
  std::vector<XPoint> out;
  out.reserve(count);
  if (count > 0) out.push_back(first);
  if (count > 1) out.push_back(second);
  for (std::size_t k = 2; k < count; ++k) out.push_back(xadd(F, out[k - 1], step, out[k - 2]));
  return out;
}

Poly quad(const Biquadratic& q) { return Poly({q.f2, q.f1, q.f0}); }

struct JetPoly {
  Poly v;
  Poly d;
};

JetPoly jet_poly_mul(const Field& F, const JetPoly& f, const JetPoly& g) {
  return {mul(F, f.v, g.v), add(F, mul(F, f.v, g.d), mul(F, f.d, g.v))};
}

JetPoly jet_poly_product(const Field& F, std::vector<JetPoly> fs) {
  if (fs.empty()) return {Poly({F.one()}), Poly()};
  while (fs.size() > 1) {
    std::vector<JetPoly> next;
    next.reserve((fs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(jet_poly_mul(F, fs[i], fs[i + 1]));
    if (fs.size() % 2) next.push_back(std::move(fs.back()));
    fs = std::move(next);
  }
  return std::move(fs.front());
}

}  // namespace

std::int64_t default_b(std::int64_t ell) { return ell < 3 ? 0 : isqrt(ell - 1) / 2; }

IndexSystem index_system_for(std::int64_t ell, std::optional<std::int64_t> b_override) {
  if (ell < 3 || ell % 2 == 0) throw Error(Errc::InvalidDegree, "degree must be odd and >= 3");
  IndexSystem sys;
  sys.m = ell - 2;
  sys.b = b_override.value_or(default_b(ell));
  if (sys.b < 0) throw Error(Errc::InvalidTuning, "b must be non-negative");
  if (sys.b > 0) {
    sys.b_prime = (ell - 1) / (4 * sys.b);
    if (sys.b_prime == 0) throw Error(Errc::InvalidTuning, "b = " + std::to_string(sys.b) + " too large for ell = " + std::to_string(ell));
    for (std::int64_t i = 0; i < sys.b_prime; ++i) sys.I.push_back(2 * sys.b * (2 * i + 1));
    for (std::int64_t j = 0; j < sys.b; ++j) sys.J.push_back(2 * j + 1);
  }
  for (std::int64_t k = 4 * sys.b * sys.b_prime + 1; k <= sys.m; k += 2) sys.K.push_back(k);
  return sys;
}

bool is_valid_index_system(const IndexSystem& sys) {
  std::vector<std::int64_t> all;
  for (auto i : sys.I)
    for (auto j : sys.J) {
      all.push_back(i + j);
      all.push_back(i - j);
    }
  all.insert(all.end(), sys.K.begin(), sys.K.end());
  std::sort(all.begin(), all.end());
  if (sys.m < 1 || static_cast<std::int64_t>(all.size()) != (sys.m + 1) / 2) return false;
  for (std::size_t t = 0; t < all.size(); ++t)
    if (all[t] != static_cast<std::int64_t>(2 * t + 1)) return false;
  return true;
}

HsPlan::HsPlan(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t n, IndexSystem sys,
               PlanOptions options)
    : sys_(std::move(sys)), exact_(options.exact) {
  if (sys_.m + 2 != n) throw Error(Errc::InvalidTuning, "index system does not match the kernel order");
  if (sys_.I.empty() != sys_.J.empty()) throw Error(Errc::InvalidTuning, "I and J must be both empty or both nonempty");
  if (P.is_infinity()) throw Error(Errc::IndexHitsIdentity, "index 1 hits the identity");
  if (options.check_order && !ladder(F, mpz_class(static_cast<long>(n)), P, curve).is_infinity())
    throw Error(Errc::WrongOrder, "[n]P is not the identity");

  const XPoint P2 = xdbl(F, P, curve);
  std::vector<XPoint> ptsI, ptsJ;
  if (sys_.b == 0) {
    if (!sys_.K.empty()) ptsK_ = chain(F, P, sys_.K.size() > 1 ? xadd(F, P2, P, P) : P, P2, sys_.K.size());
  } else {
    const std::size_t nJ = sys_.J.size();
    ptsJ = chain(F, P, nJ > 1 ? xadd(F, P2, P, P) : P, P2, nJ);
    // [2b]P from the odd part of b, then [4b]P.
    const auto b = static_cast<std::uint64_t>(sys_.b);
    const int v = std::countr_zero(b);
    XPoint P2b = ptsJ[((b >> v) - 1) / 2];
    for (int t = 0; t <= v; ++t) P2b = xdbl(F, P2b, curve);
    const XPoint P4b = xdbl(F, P2b, curve);
    const std::size_t nI = sys_.I.size();
    ptsI = chain(F, P2b, nI > 1 ? xadd(F, P2b, P4b, P2b) : P2b, P4b, nI);
    // x([s]P) = x([n - s]P): K is reached through the even multiples 2, 4, ...
    const std::size_t nK = sys_.K.size();
    if (nK > 0) {
      std::vector<XPoint> evens = chain(F, P2, nK > 1 ? xdbl(F, P2, curve) : P2, P2, nK);
      for (std::size_t t = 0; t < nK; ++t) ptsK_.push_back(evens[static_cast<std::size_t>((n - sys_.K[t]) / 2 - 1)]);
    }
  }

  // One batch inversion: X_i Z_i for I (w_i and v_i need 1/x_i too), Z_j for
  // J, Z_k for K (exact mode only), and C.
  std::vector<FieldElement> dens;
  for (const auto& Q : ptsI) {
    const FieldElement xz = F.mul(Q.X, Q.Z);
    if (xz.is_zero()) throw Error(Errc::IndexHitsIdentity, "an I multiple is the identity or has x = 0");
    dens.push_back(xz);
  }
  for (const auto& Q : ptsJ) {
    if (Q.is_infinity()) throw Error(Errc::IndexHitsIdentity, "a J multiple is the identity");
    dens.push_back(Q.Z);
  }
  for (const auto& Q : ptsK_) {
    if (Q.is_infinity()) throw Error(Errc::IndexHitsIdentity, "a K multiple is the identity");
    if (exact_) dens.push_back(Q.Z);
  }
  dens.push_back(curve.C);
  F.batch_inv(dens);

  std::size_t at = 0;
  for (const auto& Q : ptsI) {
    const FieldElement& inv = dens[at++];
    const FieldElement X2 = F.sqr(Q.X), Z2 = F.sqr(Q.Z);
    wI_.push_back(F.mul(F.add(X2, Z2), inv));
    vI_.push_back(F.mul(F.sub(X2, Z2), inv));
    if (exact_) xI_.push_back(F.mul(X2, inv));
  }
  for (const auto& Q : ptsJ) xJ_.push_back(F.mul(Q.X, dens[at++]));
  if (exact_)
    for (const auto& Q : ptsK_) xK_.push_back(F.mul(Q.X, dens[at++]));
  a_ = F.mul(curve.A, dens[at]);

  if (!wI_.empty()) tree_.emplace(F, wI_, xJ_.size());
  if (exact_) {
    correction_ = F.one();
    if (!xI_.empty()) {
      const FieldElement half = F.element((F.context().modulus() + 1) / 2);
      correction_ = F.mul(F.pow(product_of(F, xI_), static_cast<std::uint64_t>(xJ_.size())),
                          F.pow(half, static_cast<std::uint64_t>(xI_.size())));
    }
  }
}

void HsPlan::require_exact() const {
  if (!exact_) throw std::logic_error("plan was built without exact data");
}

const std::vector<FieldElement>& HsPlan::xI() const {
  require_exact();
  return xI_;
}

const std::vector<FieldElement>& HsPlan::xK() const {
  require_exact();
  return xK_;
}

const FieldElement& HsPlan::correction() const {
  require_exact();
  return correction_;
}

namespace {

// For f of degree <= 2d: 2 Z^-d f(Z) = A(W) + (Z - 1/Z) B(W) with W = Z + 1/Z,
// using Z^k + Z^-k = C_k(W) and Z^k - Z^-k = (Z - 1/Z) U_{k-1}(W). The basis
// change runs Clenshaw's recurrence on polynomials, so it needs additions only.
struct SymmetricSplit {
  Poly A;
  Poly B;
};

// sum_k c_k T_k(W) for T_{k+1} = W T_k - T_{k-1}, given T_0 = t0 (1 or 2) and T_1 = W.
Poly clenshaw(const Field& F, const std::vector<FieldElement>& c, int t0) {
  using Coeffs = std::vector<FieldElement>;
  if (c.empty()) return {};
  Coeffs b1, b2;  // b_{k+1}, b_{k+2}
  auto sub_into = [&](Coeffs& x, const Coeffs& y) {
    if (x.size() < y.size()) x.resize(y.size(), F.zero());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = F.sub(x[i], y[i]);
  };
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    Coeffs bk(b1.size() + 1, F.zero());
    std::copy(b1.begin(), b1.end(), bk.begin() + 1);
    bk[0] = c[k];
    sub_into(bk, b2);
    b2 = std::move(b1);
    b1 = std::move(bk);
  }
  // c_0 T_0 + W b_1 - T_0 b_2
  Coeffs out(b1.size() + 1, F.zero());
  std::copy(b1.begin(), b1.end(), out.begin() + 1);
  out[0] = t0 == 2 ? F.dbl(c[0]) : c[0];
  Coeffs b2s = b2;
  if (t0 == 2)
    for (auto& x : b2s) x = F.dbl(x);
  sub_into(out, b2s);
  return Poly(std::move(out));
}

SymmetricSplit split_symmetric(const Field& F, const Poly& f, std::size_t d) {
  auto coef = [&](std::size_t i) { return i < f.size() ? f[i] : F.zero(); };
  std::vector<FieldElement> s(d + 1), t(d);
  s[0] = coef(d);
  for (std::size_t k = 1; k <= d; ++k) {
    s[k] = F.add(coef(d + k), coef(d - k));
    t[k - 1] = F.sub(coef(d + k), coef(d - k));
  }
  return {clenshaw(F, s, 2), clenshaw(F, t, 1)};
}

// 2 x_i^-#J f(x_i) for every I-multiple.
std::vector<FieldElement> half_values(const Field& F, const HsPlan& plan, const Poly& f) {
  const SymmetricSplit sp = split_symmetric(F, f, plan.xJ().size());
  const auto a = plan.tree().evaluate(F, sp.A);
  const auto b = plan.tree().evaluate(F, sp.B);
  std::vector<FieldElement> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], F.mul(plan.vI()[i], b[i]));
  return out;
}

}  // namespace

FieldElement hs_eval(const Field& F, const HsPlan& plan, const FieldElement& alpha) {
  std::vector<FieldElement> factors;
  for (const auto& x : plan.xK()) factors.push_back(F.sub(alpha, x));
  if (plan.has_pairs()) {
    std::vector<Poly> quads;
    quads.reserve(plan.xJ().size());
    for (const auto& x : plan.xJ()) quads.push_back(quad(biquad_affine(F, alpha, x, plan.a())));
    const auto vals = half_values(F, plan, product(F, std::move(quads)));
    factors.insert(factors.end(), vals.begin(), vals.end());
    factors.push_back(plan.correction());
  }
  return product_of(F, factors);
}

FieldElement delta(const Field& F, const HsPlan& plan) {
  if (!plan.has_pairs()) return F.one();
  plan.correction();
  std::vector<Poly> quads;
  for (const auto& x : plan.xJ()) quads.push_back(Poly({F.sqr(x), F.neg(F.dbl(x)), F.one()}));
  auto vals = half_values(F, plan, product(F, std::move(quads)));
  vals.push_back(plan.correction());
  return product_of(F, vals);
}

Jet hs_eval_jet(const Field& F, const HsPlan& plan, const FieldElement& alpha) {
  std::vector<Jet> factors;
  for (const auto& x : plan.xK()) factors.push_back({F.sub(alpha, x), F.one()});
  if (plan.has_pairs()) {
    const FieldElement& a = plan.a();
    std::vector<JetPoly> quads;
    for (const auto& x : plan.xJ()) {
      const Biquadratic q = biquad_affine(F, alpha, x, a);
      const FieldElement t = F.mul(alpha, x);
      // d/d alpha of F0, F1, F2.
      const FieldElement d0 = F.dbl(F.sub(alpha, x));
      const FieldElement d2 = F.dbl(F.mul(x, F.sub(t, F.one())));
      const FieldElement s = F.add(F.add(F.mul(x, F.add(alpha, x)), F.add(t, F.one())), F.dbl(F.mul(a, x)));
      const FieldElement d1 = F.neg(F.dbl(s));
      quads.push_back({quad(q), Poly({d2, d1, d0})});
    }
    const JetPoly E = jet_poly_product(F, std::move(quads));
    const auto v = half_values(F, plan, E.v);
    const auto d = half_values(F, plan, E.d);
    for (std::size_t i = 0; i < v.size(); ++i) factors.push_back({v[i], d[i]});
    factors.push_back({plan.correction(), F.zero()});
  }
  if (factors.empty()) return {F.one(), F.zero()};
  Jet acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = F.jet_mul(acc, factors[i]);
  return acc;
}

HsPair hs_eval_projective(const Field& F, const HsPlan& plan, const XPoint& alpha) {
  const FieldElement& X = alpha.X;
  const FieldElement& Z = alpha.Z;
  // K factors carry prod Z_k in both entries.
  std::vector<FieldElement> direct, rev;
  for (const auto& Q : plan.pointsK()) {
    direct.push_back(F.sub(F.mul(X, Q.Z), F.mul(Q.X, Z)));
    rev.push_back(F.sub(F.mul(Z, Q.Z), F.mul(Q.X, X)));
  }
  if (plan.has_pairs()) {
    const FieldElement axz = F.mul(F.mul(plan.a(), X), Z);
    std::vector<Poly> quads;
    quads.reserve(plan.xJ().size());
    for (const auto& x : plan.xJ()) quads.push_back(quad(biquad_homogeneous(F, X, Z, axz, x)));
    // Swapping X and Z reverses every quadratic, hence the product, which
    // flips the sign of the B part of the split.
    const SymmetricSplit sp = split_symmetric(F, product(F, std::move(quads)), plan.xJ().size());
    const auto a = plan.tree().evaluate(F, sp.A);
    const auto b = plan.tree().evaluate(F, sp.B);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const FieldElement t = F.mul(plan.vI()[i], b[i]);
      direct.push_back(F.add(a[i], t));
      rev.push_back(F.sub(a[i], t));
    }
  }
  return {product_of(F, direct), product_of(F, rev)};
}

HsPair hs_eval_units(const Field& F, const HsPlan& plan) {
  // K factors carry prod Z_k in both entries.
  std::vector<FieldElement> plus, minus;
  for (const auto& Q : plan.pointsK()) {
    plus.push_back(F.sub(Q.Z, Q.X));
    minus.push_back(F.neg(F.add(Q.Z, Q.X)));
  }
  if (plan.has_pairs()) {
    // Palindromic quadratics: Z^-1 (f0 Z^2 + f1 Z + f0) = f0 W + f1, so the
    // values at x_i are x_i^#J times linear products at w_i.
    std::vector<Poly> lp, lm;
    for (const auto& x : plan.xJ()) {
      const auto u = biquad_at_units(F, x, plan.a());
      lp.push_back(Poly({u.plus_one.f1, u.plus_one.f0}));
      lm.push_back(Poly({u.minus_one.f1, u.minus_one.f0}));
    }
    const auto vp = plan.tree().evaluate(F, product(F, std::move(lp)));
    const auto vm = plan.tree().evaluate(F, product(F, std::move(lm)));
    plus.insert(plus.end(), vp.begin(), vp.end());
    minus.insert(minus.end(), vm.begin(), vm.end());
  }
  return {product_of(F, plus), product_of(F, minus)};
}

FieldElement kernel_poly_eval(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                              const FieldElement& alpha) {
  const HsPlan plan(F, curve, P, ell, index_system_for(ell));
  const FieldElement v = hs_eval(F, plan, alpha);
  if (!plan.has_pairs()) return v;
  return F.mul(v, F.inv(delta(F, plan)));
}

}  // namespace sqrtvelu
