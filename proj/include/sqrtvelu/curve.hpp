#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "sqrtvelu/field.hpp"

namespace sqrtvelu {

// B y^2 = x (x^2 + a x + 1) with a = A / C. B never enters x-only arithmetic,
// so a curve and its quadratic twist share one MontgomeryCurve.
struct MontgomeryCurve {
  FieldElement A;
  FieldElement C;
};

// Projective x-coordinate (X : Z); Z = 0 is the identity.
struct XPoint {
  FieldElement X;
  FieldElement Z;

  bool is_infinity() const { return Z.is_zero(); }
};

MontgomeryCurve affine_curve(const FieldContext& ctx, const FieldElement& a);
XPoint affine_point(const FieldContext& ctx, const FieldElement& x);
XPoint infinity(const FieldContext& ctx);

// a^2 != 4 and C != 0; uncounted.
bool is_nonsingular(const MontgomeryCurve& curve);
// Uncounted normalization helpers for comparisons and output.
FieldElement affine_a(const MontgomeryCurve& curve);
FieldElement affine_x(const XPoint& P);  // P must not be the identity
bool same_x(const XPoint& P, const XPoint& Q);

XPoint xdbl(const Field& F, const XPoint& P, const MontgomeryCurve& curve);
// x(P + Q) from x(P), x(Q), x(P - Q); requires P != Q (use xdbl).
XPoint xadd(const Field& F, const XPoint& P, const XPoint& Q, const XPoint& PminusQ);
XPoint ladder(const Field& F, const mpz_class& k, const XPoint& P, const MontgomeryCurve& curve);

// Affine x([i]P) for each index, using differential chains along runs of
// equally spaced indices and one shared batch inversion.
// Throws IdentityMultiple if some [i]P is the identity.
std::map<std::int64_t, FieldElement> multiples_x(const Field& F, const XPoint& P,
                                                 std::span<const std::int64_t> indices,
                                                 const MontgomeryCurve& curve);

// Coefficients of X^2 + (F1/F0) X + F2/F0, whose roots are x(P+Q), x(P-Q)
// for x1 = x(P), x2 = x(Q).
struct Biquadratic {
  FieldElement f0;
  FieldElement f1;
  FieldElement f2;
};

// Projective (A:C) version; every coefficient is scaled by C.
Biquadratic biquad_coeffs(const Field& F, const FieldElement& x1, const FieldElement& x2,
                          const MontgomeryCurve& curve);
// Affine coefficient a; no scaling.
Biquadratic biquad_affine(const Field& F, const FieldElement& x1, const FieldElement& x2, const FieldElement& a);

// Quadratic in Z for the projective point (X : Z) against affine x2: the
// coefficients of Z^2 T(X/Z, Z', x2) scaled by Z^2. `axz` must be a * X * Z.
Biquadratic biquad_homogeneous(const Field& F, const FieldElement& X, const FieldElement& Z,
                               const FieldElement& axz, const FieldElement& x2);

// Biquadratics at x1 = +1 and x1 = -1 (both palindromic: f0 == f2).
struct UnitBiquadratics {
  Biquadratic plus_one;
  Biquadratic minus_one;
};
UnitBiquadratics biquad_at_units(const Field& F, const FieldElement& x2, const FieldElement& a);

namespace fault {
// Mutation-testing hook: perturbs the biquadratic middle coefficient so the
// self-test can demonstrate that it detects a broken constant.
void corrupt_biquadratic(bool on);
bool biquadratic_corrupted();
}  // namespace fault

}  // namespace sqrtvelu
