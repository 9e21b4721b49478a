#pragma once

// Independent, uncounted oracles for tests: plain mpz arithmetic, no use of
// the counted field layer's algorithms.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/field.hpp"

namespace sqrtvelu::testkit {

mpz_class mod(const mpz_class& v, const mpz_class& p);
mpz_class inv_mod(const mpz_class& v, const mpz_class& p);
// Tonelli-Shanks; nullopt for non-residues.
std::optional<mpz_class> sqrt_mod(const mpz_class& v, const mpz_class& p);
bool is_prime(const mpz_class& n);

// B y^2 = x^3 + a x^2 + x over F_p with the affine chord-and-tangent law.
struct AffinePoint {
  bool inf = true;
  mpz_class x, y;
};

class AffineCurve {
 public:
  AffineCurve(mpz_class p, mpz_class a, mpz_class B = 1) : p_(std::move(p)), a_(std::move(a)), B_(std::move(B)) {}

  const mpz_class& p() const { return p_; }
  const mpz_class& a() const { return a_; }
  const mpz_class& B() const { return B_; }
  // The curve (B = 1) or its quadratic twist that has a point with this x.
  static AffineCurve containing(const mpz_class& p, const mpz_class& a, const mpz_class& x);
  // The point with this x (y chosen by Tonelli-Shanks); x must lie on the curve.
  AffinePoint lift(const mpz_class& x) const;
  mpz_class rhs(const mpz_class& x) const;
  bool on_curve(const AffinePoint& P) const;
  AffinePoint neg(const AffinePoint& P) const;
  AffinePoint add(const AffinePoint& P, const AffinePoint& Q) const;
  AffinePoint mul(mpz_class k, const AffinePoint& P) const;
  // Uniform x until x^3 + a x^2 + x is a square; y chosen by Tonelli-Shanks.
  AffinePoint random_point(std::mt19937_64& rng) const;
  // Smallest d | n with [d]P = 0 (n must be a multiple of the order).
  mpz_class order_dividing(const AffinePoint& P, const mpz_class& n) const;
  // Order by repeated addition (small p only).
  std::uint64_t brute_order(const AffinePoint& P) const;

 private:
  mpz_class p_, a_, B_;
};

mpz_class montgomery_j(const mpz_class& a, const mpz_class& p);

// Checks an x-only isogeny output (affine a', x-images of the pushed x's)
// against Velu's formulas on the short Weierstrass model y^2 = x^3 + a x^2 + x,
// for the kernel generated by the point with x-coordinate kernel_x (on the
// curve or its twist) of order ell: equal j-invariants and, when j' is not 0
// or 1728, images matching under the unique x-isomorphism.
bool velu_matches(const mpz_class& p, const mpz_class& a, const mpz_class& kernel_x, std::uint64_t ell,
                  const mpz_class& a_out, const std::vector<mpz_class>& pushed_x,
                  const std::vector<std::optional<mpz_class>>& x_images);

// Toy setting: a prime p = 12 * ell * c - 1 in the bit range (p = 3 mod 4,
// 12 ell | p + 1) and a random supersingular curve reached from a = 0 by
// 3-isogeny steps.
mpz_class find_toy_prime(std::uint64_t ell, unsigned min_bits, unsigned max_bits, std::mt19937_64& rng);
FieldElement random_supersingular_a(const FieldContext& ctx, std::mt19937_64& rng, int steps = 6);
// x-only point of exact order ell (ell prime, ell | p + 1) on the curve or its twist.
XPoint point_of_order(const FieldContext& ctx, const MontgomeryCurve& curve, std::uint64_t ell,
                      std::mt19937_64& rng);

// x([k]P) by ladder, affine; nullopt for the identity.
std::optional<FieldElement> multiple_x(const FieldContext& ctx, const MontgomeryCurve& curve, const XPoint& P,
                                       std::int64_t k);
// prod_{s in S} (alpha - x([s]P)), by ladder per index.
FieldElement naive_hs(const FieldContext& ctx, const MontgomeryCurve& curve, const XPoint& P,
                      const std::vector<std::int64_t>& S, const FieldElement& alpha);

// Resultant of two polynomials (coefficients low to high, mod p) through the
// Sylvester determinant.
mpz_class sylvester_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g, const mpz_class& p);
mpz_class naive_factorial(std::uint64_t ell, const mpz_class& n);
std::uint64_t trial_smallest_factor(std::uint64_t n);

// Affine normalization helpers.
std::optional<mpz_class> x_of(const XPoint& P);

}  // namespace sqrtvelu::testkit
