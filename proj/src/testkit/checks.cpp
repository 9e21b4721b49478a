#include "sqrtvelu/checks.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "sqrtvelu/csidh.hpp"
#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/isogeny.hpp"
#include "sqrtvelu/poly.hpp"
#include "sqrtvelu/progressions.hpp"
#include "sqrtvelu/testkit.hpp"
#include "sqrtvelu/velusqrt.hpp"

namespace sqrtvelu::checks {

using testkit::AffineCurve;
using testkit::AffinePoint;

void Result::expect(bool cond, const std::string& what) {
  ++cases;
  if (cond) return;
  if (failures == 0) first_failure = what;
  ++failures;
}

Result& Result::operator+=(const Result& o) {
  if (failures == 0 && o.failures > 0) first_failure = o.first_failure;
  cases += o.cases;
  failures += o.failures;
  return *this;
}

std::vector<std::int64_t> odd_primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t c = 3; c <= n; c += 2)
    if (testkit::trial_smallest_factor(static_cast<std::uint64_t>(c)) == static_cast<std::uint64_t>(c))
      out.push_back(c);
  return out;
}

namespace {

mpz_class random_below(const mpz_class& n, std::mt19937_64& rng) {
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  return gen.get_z_range(n);
}

FieldElement random_nonzero(const FieldContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    const FieldElement x = ctx.random(rng);
    if (!x.is_zero()) return x;
  }
}

std::vector<FieldElement> random_coeffs(const FieldContext& ctx, std::size_t len, std::mt19937_64& rng) {
  std::vector<FieldElement> c(len);
  for (auto& x : c) x = ctx.random(rng);
  if (len > 0) c.back() = random_nonzero(ctx, rng);
  return c;
}

mpz_class horner_mpz(const Poly& f, const mpz_class& x, const mpz_class& p) {
  mpz_class acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i].to_mpz()) % p;
  return acc;
}

std::vector<mpz_class> to_mpz(const Poly& f) {
  std::vector<mpz_class> out;
  for (const auto& c : f.coeffs()) out.push_back(c.to_mpz());
  return out;
}

// Restores the polynomial tuning knobs on scope exit.
struct TuningGuard {
  std::size_t karatsuba = karatsuba_threshold();
  std::size_t cutoff = remainder_tree_cutoff();
  ~TuningGuard() {
    set_karatsuba_threshold(karatsuba);
    set_remainder_tree_cutoff(cutoff);
  }
};

// A random supersingular toy curve with a point of order ell.
struct Toy {
  std::shared_ptr<const FieldContext> ctx;
  MontgomeryCurve curve;
  XPoint kernel;
};

Toy toy_setting(std::int64_t ell, std::mt19937_64& rng, int steps = 4) {
  const mpz_class p = testkit::find_toy_prime(static_cast<std::uint64_t>(ell), 20, 40, rng);
  auto ctx = FieldContext::create(p);
  const FieldElement a = testkit::random_supersingular_a(*ctx, rng, steps);
  const MontgomeryCurve curve = affine_curve(*ctx, a);
  const XPoint K = testkit::point_of_order(*ctx, curve, static_cast<std::uint64_t>(ell), rng);
  return {std::move(ctx), curve, K};
}

std::vector<FieldElement> naive_multiples(const Toy& t, std::int64_t ell) {
  std::vector<FieldElement> xs;
  for (std::int64_t s = 1; s <= ell - 2; s += 2) xs.push_back(*testkit::multiple_x(*t.ctx, t.curve, t.kernel, s));
  return xs;
}

FieldElement naive_product(const Field& F, const std::vector<FieldElement>& xs, const FieldElement& alpha) {
  FieldElement acc = F.one();
  for (const auto& x : xs) acc = F.mul(acc, F.sub(alpha, x));
  return acc;
}

std::string tag(const std::string& what, std::int64_t ell) { return what + " (ell=" + std::to_string(ell) + ")"; }

}  // namespace

Result field_axioms(const FieldContext& ctx, int samples, std::mt19937_64& rng) {
  Result r;
  OpTally t;
  const Field F(ctx, t);
  const mpz_class& p = ctx.modulus();
  for (int n = 0; n < samples; ++n) {
    const FieldElement a = ctx.random(rng), b = ctx.random(rng), c = ctx.random(rng);
    r.expect(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)), "addition associative");
    r.expect(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)), "multiplication associative");
    r.expect(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)), "distributive");
    r.expect(F.mul(a, b).to_mpz() == a.to_mpz() * b.to_mpz() % p, "mul matches mpz");
    r.expect(F.sqr(a) == F.mul(a, a), "sqr == mul(a, a)");
    r.expect(F.sub(a, b) == F.add(a, F.neg(b)), "sub == add neg");
    if (!a.is_zero()) {
      r.expect(F.mul(a, F.inv(a)).is_one(), "a * a^-1 == 1");
      r.expect(F.pow(a, p - 1).is_one(), "Fermat");
    }
    r.expect(F.is_square(F.sqr(a)), "squares are squares");
  }
  return r;
}

Result tally_exactness(const FieldContext& ctx, std::mt19937_64& rng) {
  Result r;
  auto script = [&](const FieldElement& x, const FieldElement& y) {
    OpTally t;
    const Field F(ctx, t);
    FieldElement u = F.mul(x, y);
    u = F.mul(u, x);
    u = F.mul(u, u);
    u = F.sqr(F.sqr(u));
    u = F.add(u, x);
    u = F.sub(u, y);
    u = F.add(F.neg(u), x);
    const FieldElement w = F.add(u, F.one());
    (void)F.inv(w.is_zero() ? F.one() : w);
    return t;
  };
  const OpTally expected{3, 2, 5, 1};  // add, sub, neg, add, add
  r.expect(script(ctx.zero(), ctx.zero()) == expected, "tally for zero operands");
  for (int n = 0; n < 10; ++n) r.expect(script(ctx.random(rng), ctx.random(rng)) == expected, "tally for random operands");
  return r;
}

Result jet_homomorphism(const FieldContext& ctx, int samples, std::mt19937_64& rng) {
  Result r;
  OpTally t;
  const Field F(ctx, t);
  for (int n = 0; n < samples; ++n) {
    const Poly f(random_coeffs(ctx, 1 + rng() % 12, rng));
    const FieldElement alpha = ctx.random(rng);
    const Jet j = eval_jet(F, f, {alpha, F.one()});
    r.expect(j.v == eval(F, f, alpha), "jet value part");
    r.expect(j.d == eval(F, derivative(F, f), alpha), "jet derivative part");
    const Jet u{random_nonzero(ctx, rng), ctx.random(rng)};
    const Jet one = F.jet_mul(u, F.jet_inv(u));
    r.expect(one.v.is_one() && one.d.is_zero(), "jet inverse");
  }
  return r;
}

Result poly_ops(const FieldContext& ctx, int samples, std::size_t max_len, std::mt19937_64& rng) {
  Result r;
  TuningGuard guard;
  OpTally t;
  const Field F(ctx, t);
  const mpz_class& p = ctx.modulus();
  for (int n = 0; n < samples; ++n) {
    const Poly f(random_coeffs(ctx, 1 + rng() % max_len, rng));
    const Poly g(random_coeffs(ctx, 1 + rng() % max_len, rng));
    std::vector<mpz_class> naive(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t k = 0; k < g.size(); ++k) naive[i + k] += f[i].to_mpz() * g[k].to_mpz();
    for (auto& c : naive) c %= p;
    for (std::size_t th : {std::size_t{2}, std::size_t{5}, guard.karatsuba}) {
      set_karatsuba_threshold(th);
      r.expect(to_mpz(mul(F, f, g)) == naive, "mul vs schoolbook, karatsuba threshold " + std::to_string(th));
    }
    set_karatsuba_threshold(guard.karatsuba);

    const std::size_t npts = 1 + rng() % max_len;
    std::vector<FieldElement> pts;
    for (std::size_t i = 0; i < npts; ++i) pts.push_back(ctx.random(rng));
    const Poly h(random_coeffs(ctx, 1 + rng() % (2 * npts + 1), rng));
    for (std::size_t cut : {std::size_t{2}, guard.cutoff}) {
      set_remainder_tree_cutoff(cut);
      const auto vals = multipoint_eval(F, h, pts);
      bool same = true;
      for (std::size_t i = 0; i < npts; ++i) same = same && vals[i].to_mpz() == horner_mpz(h, pts[i].to_mpz(), p);
      r.expect(same, "multipoint vs Horner, tree cutoff " + std::to_string(cut));
      r.expect(resultant_via_roots(F, pts, g) ==
                   ctx.element(testkit::sylvester_resultant(to_mpz(poly_from_roots(F, pts)), to_mpz(g), p)),
               "resultant vs Sylvester determinant");
      const Poly root = poly_from_roots(F, pts);
      const Poly rem = rem_monic(F, h, root);
      bool rem_ok = rem.degree() < root.degree();
      for (const auto& x : pts) rem_ok = rem_ok && eval(F, rem, x) == eval(F, h, x);
      r.expect(rem_ok, "rem_monic agrees at the roots");
    }
    set_remainder_tree_cutoff(guard.cutoff);

    if (!f[0].is_zero()) {
      const std::size_t prec = 1 + rng() % (2 * max_len);
      const Poly prod = mul_low(F, f, inverse_series(F, f, prec), prec);
      r.expect(prod.size() == 1 && prod[0].is_one(), "inverse_series");
    }
  }
  return r;
}

Result factorial(std::uint64_t max_ell, std::mt19937_64& rng) {
  Result r;
  for (std::uint64_t ell = 0; ell <= max_ell; ++ell) {
    const mpz_class n = ell % 3 == 0 ? mpz_class(2 + rng() % 1000) : 2 + random_below(mpz_class(1) << 40, rng);
    OpTally t;
    r.expect(factorial_mod(ell, n, t) == testkit::naive_factorial(ell, n),
             "factorial_mod(" + std::to_string(ell) + ", " + n.get_str() + ")");
  }
  return r;
}

Result smallest_factor(std::uint64_t max_n) {
  Result r;
  for (std::uint64_t n = 2; n <= max_n; ++n)
    r.expect(sqrtvelu::smallest_factor(n) == testkit::trial_smallest_factor(n), "smallest_factor(" + std::to_string(n) + ")");
  return r;
}

Result geometric_hs(std::int64_t max_size, int samples, std::mt19937_64& rng) {
  Result r;
  const mpz_class p = testkit::find_toy_prime(3, 30, 40, rng);
  const auto ctx = FieldContext::create(p);
  OpTally t;
  const Field F(*ctx, t);
  auto power = [&](const mpz_class& z, std::int64_t s) {
    mpz_class out;
    const mpz_class base = s >= 0 ? z : testkit::inv_mod(z, p);
    mpz_powm_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(s >= 0 ? s : -s), p.get_mpz_t());
    return out;
  };
  for (int n = 0; n < samples; ++n) {
    const std::int64_t length = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_size));
    const std::int64_t start = static_cast<std::int64_t>(rng() % 41) - 20;
    const std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 7);
    const IndexPair pair = ap_index_pair(start, step, length);
    const FieldElement zeta = random_nonzero(*ctx, rng);
    const FieldElement alpha = ctx->random(rng);
    mpz_class expect = 1;
    for (auto s : enumerate(pair)) expect = testkit::mod(expect * (alpha.to_mpz() - power(zeta.to_mpz(), s)), p);
    r.expect(sqrtvelu::geometric_hs(F, zeta, pair, alpha).to_mpz() == expect,
             "geometric_hs, length " + std::to_string(length));
    r.expect(static_cast<std::int64_t>(pair.size()) == length, "ap_index_pair covers the progression");
    // alpha on the progression
    const FieldElement on = ctx->element(power(zeta.to_mpz(), start + step * (length - 1)));
    r.expect(sqrtvelu::geometric_hs(F, zeta, pair, on).is_zero(), "geometric_hs vanishes on the progression");
  }
  return r;
}

Result curve_arith(int samples, std::mt19937_64& rng) {
  Result r;
  const mpz_class p = testkit::find_toy_prime(3, 24, 32, rng);
  const auto ctx = FieldContext::create(p);
  OpTally t;
  const Field F(*ctx, t);
  for (int n = 0; n < samples; ++n) {
    mpz_class a;
    do a = random_below(p, rng);
    while (testkit::mod(a * a - 4, p) == 0);
    const AffineCurve E(p, a);
    // Random projective scalings of the curve and points.
    const FieldElement mu = random_nonzero(*ctx, rng);
    const MontgomeryCurve curve{F.mul(ctx->element(a), mu), mu};
    auto xpoint = [&](const AffinePoint& P) {
      if (P.inf) return infinity(*ctx);
      const FieldElement lam = random_nonzero(*ctx, rng);
      return XPoint{F.mul(ctx->element(P.x), lam), lam};
    };
    auto matches = [&](const XPoint& Q, const AffinePoint& R) {
      return R.inf ? Q.is_infinity() : (!Q.is_infinity() && *testkit::x_of(Q) == R.x);
    };
    const AffinePoint P = E.random_point(rng), Q = E.random_point(rng);
    const XPoint xP = xpoint(P), xQ = xpoint(Q);
    r.expect(matches(xdbl(F, xP, curve), E.add(P, P)), "xdbl vs affine");
    if (P.x != Q.x) r.expect(matches(xadd(F, xP, xQ, xpoint(E.add(P, E.neg(Q)))), E.add(P, Q)), "xadd vs affine");
    const mpz_class k = random_below(mpz_class(1) << 40, rng), m = random_below(k + 1, rng);
    r.expect(matches(ladder(F, k, xP, curve), E.mul(k, P)), "ladder vs affine");
    const XPoint sum = xadd(F, ladder(F, k, xP, curve), ladder(F, m, xP, curve), ladder(F, k - m, xP, curve));
    if (m != 0 && k != m && m * 2 != k) r.expect(same_x(sum, ladder(F, k + m, xP, curve)), "ladder homomorphism");
    r.expect(ladder(F, 0, xP, curve).is_infinity(), "ladder(0) is the identity");
    r.expect(same_x(ladder(F, 1, xP, curve), xP), "ladder(1) is P");
    r.expect(xdbl(F, affine_point(*ctx, ctx->zero()), curve).is_infinity(), "xdbl of (0:1)");
    std::vector<std::int64_t> idx{1, 3, 5, 7, 12, 16, 20, 31};
    const auto mult = multiples_x(F, xP, idx, curve);
    bool ok = true;
    for (auto i : idx) ok = ok && mult.at(i).to_mpz() == E.mul(i, P).x;
    r.expect(ok, "multiples_x vs affine");
  }
  return r;
}

Result biquadratics(int samples, std::mt19937_64& rng) {
  Result r;
  const mpz_class p = testkit::find_toy_prime(3, 24, 32, rng);
  const auto ctx = FieldContext::create(p);
  OpTally t;
  const Field F(*ctx, t);
  for (int n = 0; n < samples; ++n) {
    mpz_class a;
    do a = random_below(p, rng);
    while (testkit::mod(a * a - 4, p) == 0);
    const AffineCurve E(p, a);
    const FieldElement fa = ctx->element(a);
    const FieldElement mu = random_nonzero(*ctx, rng);
    const MontgomeryCurve curve{F.mul(fa, mu), mu};
    const AffinePoint P = E.random_point(rng), Q = E.random_point(rng);
    const AffinePoint S = E.add(P, Q), D = E.add(P, E.neg(Q));
    const FieldElement x1 = ctx->element(P.x), x2 = ctx->element(Q.x);
    const Biquadratic b = biquad_coeffs(F, x1, x2, curve);
    if (!S.inf && !D.inf && P.x != 0 && Q.x != 0 && !b.f0.is_zero()) {
      const FieldElement i0 = F.inv(b.f0);
      const FieldElement xs = ctx->element(S.x), xd = ctx->element(D.x);
      r.expect(F.mul(b.f1, i0) == F.neg(F.add(xs, xd)), "Vieta: F1/F0 = -(x(P+Q) + x(P-Q))");
      r.expect(F.mul(b.f2, i0) == F.mul(xs, xd), "Vieta: F2/F0 = x(P+Q) x(P-Q)");
    }
    const Biquadratic bs = biquad_coeffs(F, x2, x1, curve);
    r.expect(b.f0 == bs.f0 && b.f1 == bs.f1 && b.f2 == bs.f2, "biquadratic symmetry");
    const Biquadratic ba = biquad_affine(F, x1, x2, fa);
    r.expect(F.mul(ba.f0, mu) == b.f0 && F.mul(ba.f1, mu) == b.f1 && F.mul(ba.f2, mu) == b.f2,
             "projective coefficients are the affine ones scaled by C");

    // Triquadratic identity at random points.
    const FieldElement X0 = ctx->random(rng), X1 = ctx->random(rng), X2 = ctx->random(rng);
    const Biquadratic q = biquad_affine(F, X1, X2, fa);
    const FieldElement lhs = F.add(F.add(F.mul(F.sqr(X0), q.f0), F.mul(X0, q.f1)), q.f2);
    const FieldElement one = F.one();
    FieldElement rhs = F.add(F.add(F.sqr(F.sub(F.mul(X0, X1), one)), F.sqr(F.sub(F.mul(X0, X2), one))),
                             F.sqr(F.sub(F.mul(X1, X2), one)));
    const FieldElement inner = F.add(F.add(F.add(X0, X1), X2), F.dbl(fa));
    rhs = F.sub(rhs, F.dbl(F.mul(F.mul(F.mul(X0, X1), X2), inner)));
    rhs = F.sub(rhs, F.dbl(one));
    r.expect(lhs == rhs, "triquadratic identity");

    // Homogeneous and unit forms agree with the affine one.
    const FieldElement Z = random_nonzero(*ctx, rng), X = F.mul(X0, Z);
    const Biquadratic h = biquad_homogeneous(F, X, Z, F.mul(F.mul(fa, X), Z), X2);
    const Biquadratic ha = biquad_affine(F, X0, X2, fa);
    const FieldElement z2 = F.sqr(Z);
    r.expect(h.f0 == F.mul(ha.f0, z2) && h.f1 == F.mul(ha.f1, z2) && h.f2 == F.mul(ha.f2, z2),
             "homogeneous biquadratic");
    const UnitBiquadratics u = biquad_at_units(F, X2, fa);
    const Biquadratic up = biquad_affine(F, one, X2, fa), um = biquad_affine(F, F.neg(one), X2, fa);
    r.expect(u.plus_one.f0 == up.f0 && u.plus_one.f1 == up.f1 && u.plus_one.f2 == up.f2 && u.minus_one.f0 == um.f0 &&
                 u.minus_one.f1 == um.f1 && u.minus_one.f2 == um.f2,
             "biquadratics at +-1");
  }
  return r;
}

Result index_systems(std::int64_t max_ell, std::int64_t window) {
  Result r;
  for (auto ell : odd_primes_up_to(max_ell)) {
    const std::int64_t b0 = default_b(ell);
    for (std::int64_t b = std::max<std::int64_t>(0, b0 - window); b <= b0 + window; ++b) {
      IndexSystem sys;
      try {
        sys = index_system_for(ell, b);
      } catch (const Error& e) {
        r.expect(e.code() == Errc::InvalidTuning && b > 0 && (ell - 1) / (4 * b) == 0,
                 tag("only b' = 0 is rejected, b=" + std::to_string(b), ell));
        continue;
      }
      r.expect(is_valid_index_system(sys), tag("partition of S, b=" + std::to_string(b), ell));
      if (b > 0) r.expect(static_cast<std::int64_t>(sys.K.size()) <= 2 * b - 1, tag("#K <= 2b - 1", ell));
    }
  }
  return r;
}

Result hs_oracle(std::int64_t max_ell, int alphas, std::mt19937_64& rng) {
  Result r;
  for (auto ell : odd_primes_up_to(max_ell)) {
    const Toy toy = toy_setting(ell, rng);
    OpTally t;
    const Field F(*toy.ctx, t);
    const HsPlan plan(F, toy.curve, toy.kernel, ell, index_system_for(ell));
    const FieldElement dinv = F.inv(delta(F, plan));
    const auto xs = naive_multiples(toy, ell);
    for (int n = 0; n < alphas; ++n) {
      const FieldElement alpha = n == 0 ? xs[rng() % xs.size()] : toy.ctx->random(rng);
      const FieldElement got = F.mul(dinv, hs_eval(F, plan, alpha));
      r.expect(got == naive_product(F, xs, alpha), tag("delta^-1 hs_eval vs naive product", ell));
    }
    // Scaled evaluators: ratios against the naive product.
    const FieldElement one = F.one(), mone = F.neg(one);
    const HsPair u = hs_eval_units(F, plan);
    r.expect(F.mul(u.first, naive_product(F, xs, mone)) == F.mul(u.second, naive_product(F, xs, one)),
             tag("hs_eval_units ratio", ell));
    const FieldElement Z = random_nonzero(*toy.ctx, rng), X = random_nonzero(*toy.ctx, rng);
    const HsPair pr = hs_eval_projective(F, plan, {X, Z});
    const auto nS = static_cast<std::uint64_t>(xs.size());
    const FieldElement direct = F.mul(F.pow(Z, nS), naive_product(F, xs, F.mul(X, F.inv(Z))));
    const FieldElement rev = F.mul(F.pow(X, nS), naive_product(F, xs, F.mul(Z, F.inv(X))));
    r.expect(F.mul(pr.first, rev) == F.mul(pr.second, direct), tag("hs_eval_projective ratio", ell));
  }
  return r;
}

Result jet_derivative(std::int64_t max_ell, std::mt19937_64& rng) {
  Result r;
  for (auto ell : odd_primes_up_to(max_ell)) {
    const Toy toy = toy_setting(ell, rng);
    OpTally t;
    const Field F(*toy.ctx, t);
    const HsPlan plan(F, toy.curve, toy.kernel, ell, index_system_for(ell));
    const auto xs = naive_multiples(toy, ell);
    const Poly psi = poly_from_roots(F, xs);
    const Poly dpsi = derivative(F, psi);
    const FieldElement d = delta(F, plan);
    for (int n = 0; n < 5; ++n) {
      const FieldElement alpha = toy.ctx->random(rng);
      const Jet j = hs_eval_jet(F, plan, alpha);
      r.expect(j.v == F.mul(d, eval(F, psi, alpha)), tag("jet value part", ell));
      r.expect(j.d == F.mul(d, eval(F, dpsi, alpha)), tag("jet derivative vs formal derivative", ell));
      r.expect(j.v == hs_eval(F, plan, alpha), tag("jet value equals hs_eval", ell));
    }
  }
  return r;
}

Result engine_equivalence(std::int64_t max_ell, int curves, std::mt19937_64& rng) {
  Result r;
  for (auto ell : odd_primes_up_to(max_ell)) {
    for (int c = 0; c < curves; ++c) {
      const Toy toy = toy_setting(ell, rng);
      const FieldContext& ctx = *toy.ctx;
      OpTally t;
      const Field F(ctx, t);
      // Two random points (one with a random Z) and one special point.
      std::vector<XPoint> push{affine_point(ctx, ctx.random(rng))};
      const FieldElement lam = random_nonzero(ctx, rng);
      push.push_back({F.mul(ctx.random(rng), lam), lam});
      if (c % 2 == 0)
        push.push_back(xdbl(F, toy.kernel, toy.curve));
      else
        push.push_back(affine_point(ctx, ctx.zero()));
      const IsogenyOutput conv = velu_conventional(F, toy.curve, toy.kernel, ell, push);
      const IsogenyOutput sq = velu_sqrt(F, toy.curve, toy.kernel, ell, push);
      bool same = affine_a(conv.codomain) == affine_a(sq.codomain);
      for (std::size_t i = 0; i < push.size(); ++i)
        same = same && testkit::x_of(conv.images[i]) == testkit::x_of(sq.images[i]);
      r.expect(same, tag("velu_sqrt == velu_conventional", ell));

      std::vector<mpz_class> px;
      std::vector<std::optional<mpz_class>> imgs;
      for (std::size_t i = 0; i < push.size(); ++i) {
        px.push_back(*testkit::x_of(push[i]));
        imgs.push_back(testkit::x_of(conv.images[i]));
      }
      r.expect(testkit::velu_matches(ctx.modulus(), affine_a(toy.curve).to_mpz(), *testkit::x_of(toy.kernel),
                                     static_cast<std::uint64_t>(ell), affine_a(conv.codomain).to_mpz(), px, imgs),
               tag("conventional engine vs Weierstrass Velu", ell));
    }
  }
  return r;
}

Result csidh_toy(int keys, std::mt19937_64& rng) {
  Result r;
  const CsidhParams params = csidh_params("toy419");
  OpTally t;
  const Field F(*params.ctx, t);
  EngineChoice sqrt_engine;
  sqrt_engine.mode = Engine::Sqrt;
  EngineChoice conv_engine;
  conv_engine.mode = Engine::Conventional;
  const PublicCurve e0 = start_curve(params);
  for (int n = 0; n < keys; ++n) {
    const PrivateKey k1 = random_key(params, 3, rng), k2 = random_key(params, 3, rng);
    const std::uint64_t s[4] = {rng(), rng(), rng(), rng()};
    const PublicCurve a1 = action(F, params, k1, e0, sqrt_engine, s[0]);
    const PublicCurve a12 = action(F, params, k2, a1, sqrt_engine, s[1]);
    const PublicCurve a2 = action(F, params, k2, e0, sqrt_engine, s[2]);
    const PublicCurve a21 = action(F, params, k1, a2, sqrt_engine, s[3]);
    r.expect(a12.a == a21.a, "toy419 commutativity, keys " + format_key(k1) + " / " + format_key(k2));
    PrivateKey inv = k1;
    for (auto& e : inv.exponents) e = -e;
    r.expect(action(F, params, inv, a1, sqrt_engine, s[1]).a == e0.a, "toy419 invertibility, key " + format_key(k1));
    r.expect(action(F, params, k1, e0, conv_engine, s[0]).a == a1.a, "toy419 engines agree, key " + format_key(k1));
  }
  return r;
}

}  // namespace sqrtvelu::checks

namespace sqrtvelu::checks {

std::vector<Suite> selftest_suites() {
  return {
      {"field",
       [](std::mt19937_64& rng) {
         const mpz_class p = testkit::find_toy_prime(3, 40, 60, rng);
         const auto toy = FieldContext::create(p);
         const auto big = csidh_params("csidh512").ctx;
         Result r = field_axioms(*toy, 50, rng);
         r += field_axioms(*big, 50, rng);
         r += tally_exactness(*big, rng);
         r += jet_homomorphism(*toy, 30, rng);
         return r;
       }},
      {"poly",
       [](std::mt19937_64& rng) {
         const auto ctx = FieldContext::create(testkit::find_toy_prime(3, 40, 60, rng));
         return poly_ops(*ctx, 40, 40, rng);
       }},
      {"progressions",
       [](std::mt19937_64& rng) {
         Result r = factorial(150, rng);
         r += smallest_factor(1000);
         r += geometric_hs(60, 30, rng);
         return r;
       }},
      {"curve",
       [](std::mt19937_64& rng) {
         Result r = curve_arith(30, rng);
         r += biquadratics(30, rng);
         return r;
       }},
      {"velusqrt",
       [](std::mt19937_64& rng) {
         Result r = index_systems(401, 3);
         r += hs_oracle(101, 6, rng);
         r += jet_derivative(23, rng);
         return r;
       }},
      {"isogeny", [](std::mt19937_64& rng) { return engine_equivalence(101, 2, rng); }},
      {"csidh", [](std::mt19937_64& rng) { return csidh_toy(4, rng); }},
  };
}

}  // namespace sqrtvelu::checks
