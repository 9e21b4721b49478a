#include "helpers.hpp"

#include "sqrtvelu/testkit.hpp"

using namespace sqrtvelu;
using namespace sqrtvelu::testkit;

TEST_CASE("modular helpers") {
  CHECK(mod(-3, 7) == 4);
  CHECK(inv_mod(2, 7) == 4);
  CHECK(sqrt_mod(2, 7).has_value());
  CHECK(mod(*sqrt_mod(2, 7) * *sqrt_mod(2, 7), 7) == 2);
  CHECK_FALSE(sqrt_mod(3, 7).has_value());
  CHECK(is_prime(419));
  CHECK_FALSE(is_prime(421 * 3));
}

TEST_CASE("affine curve on p = 419 has p + 1 points") {
  const AffineCurve E(419, 0);
  std::uint64_t count = 1;
  for (int x = 0; x < 419; ++x) {
    const mpz_class r = E.rhs(x);
    if (r == 0) count += 1;
    else if (sqrt_mod(r, 419)) count += 2;
  }
  CHECK(count == 420);
  std::mt19937_64 rng(91);
  for (int n = 0; n < 20; ++n) {
    const AffinePoint P = E.random_point(rng);
    CHECK(E.on_curve(P));
    CHECK(E.mul(420, P).inf);
    CHECK(420 % E.brute_order(P) == 0);
    CHECK(E.order_dividing(P, 420) == E.brute_order(P));
  }
}

TEST_CASE("twist lift") {
  // 3 is a non-residue mod 7; p = 419: find an x whose rhs is a non-residue.
  for (int x = 1; x < 50; ++x) {
    const AffineCurve E = AffineCurve::containing(419, 0, x);
    CHECK(E.on_curve(E.lift(x)));
  }
}

TEST_CASE("j-invariant") {
  CHECK(montgomery_j(0, 419) == 1728 % 419);
  // j is invariant under a -> -a (isomorphic via x -> -x).
  CHECK(montgomery_j(5, 419) == montgomery_j(414, 419));
}

TEST_CASE("toy parameters") {
  std::mt19937_64 rng(92);
  for (std::uint64_t ell : {3u, 101u, 401u}) {
    const mpz_class p = find_toy_prime(ell, 20, 40, rng);
    CHECK(is_prime(p));
    CHECK((p + 1) % (12 * ell) == 0);
    CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) >= 20);
    CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) <= 40);
    const auto ctx = FieldContext::create(p);
    const FieldElement a = random_supersingular_a(*ctx, rng, 3);
    const MontgomeryCurve curve = affine_curve(*ctx, a);
    const XPoint K = point_of_order(*ctx, curve, ell, rng);
    OpTally t;
    const Field F(*ctx, t);
    CHECK_FALSE(K.is_infinity());
    CHECK(ladder(F, ell, K, curve).is_infinity());
    // Supersingular: the group order p + 1 kills everything.
    CHECK(ladder(F, p + 1, affine_point(*ctx, ctx->element(7)), curve).is_infinity());
  }
}

TEST_CASE("naive oracles") {
  CHECK(naive_factorial(10, 101) == 72);
  CHECK(trial_smallest_factor(91) == 7);
  // Res(X - 2, X^2 + 1) = 5 over F_7.
  CHECK(sylvester_resultant({-2, 1}, {1, 0, 1}, 7) == 5);
  // Res((X-1)(X-2)(X-3), X^2 + 1) = 2 * 5 * 10 = 100 = 2 mod 7.
  CHECK(sylvester_resultant({-6, 11, -6, 1}, {1, 0, 1}, 7) == 2);
}
