#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/field.hpp"
#include "sqrtvelu/poly.hpp"

namespace sqrtvelu {

// S = {1, 3, ..., m} split as (I + J) u (I - J) u K with
// I = {2b(2i+1) : i < b'}, J = {2j+1 : j < b}, K = odd numbers in [4bb'+1, m].
// b = 0 is the degenerate split I = J = {} and K = S.
struct IndexSystem {
  std::vector<std::int64_t> I;
  std::vector<std::int64_t> J;
  std::vector<std::int64_t> K;
  std::int64_t b = 0;
  std::int64_t b_prime = 0;
  std::int64_t m = 0;
};

std::int64_t default_b(std::int64_t ell);
// Throws InvalidDegree for even or tiny ell, InvalidTuning for a bad override.
IndexSystem index_system_for(std::int64_t ell, std::optional<std::int64_t> b_override = {});
// Brute-force check of the partition and the injectivity conditions.
bool is_valid_index_system(const IndexSystem& sys);

struct PlanOptions {
  // Verify [n]P = identity with a ladder.
  bool check_order = true;
  // Also prepare the affine data needed by the exact evaluators (hs_eval,
  // delta, hs_eval_jet). The isogeny path only needs the scaled evaluators.
  bool exact = true;
};

// Alpha-independent precomputation for h_S(alpha) = prod_{s in S} (alpha - x([s]P)).
// Values at the I-multiples are taken through w_i = x_i + 1/x_i: any f of
// degree <= 2#J satisfies 2 x^-#J f(x) = A(w) + (x - 1/x) B(w) for polynomials
// A, B of degree <= #J, so only half-degree polynomials are evaluated.
class HsPlan {
 public:
  // P must have order n = sys.m + 2. Throws WrongOrder (only when
  // check_order is set), IndexHitsIdentity, InvalidTuning.
  HsPlan(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t n, IndexSystem sys,
         PlanOptions options = {});

  const IndexSystem& system() const { return sys_; }
  bool exact() const { return exact_; }
  bool has_pairs() const { return !wI_.empty(); }
  const FieldElement& a() const { return a_; }
  const std::vector<FieldElement>& xJ() const { return xJ_; }
  const std::vector<FieldElement>& wI() const { return wI_; }
  const std::vector<FieldElement>& vI() const { return vI_; }
  const std::vector<XPoint>& pointsK() const { return ptsK_; }
  const RemainderTree& tree() const { return *tree_; }
  // Exact mode only.
  const std::vector<FieldElement>& xI() const;
  const std::vector<FieldElement>& xK() const;
  // prod_i x_i^#J / 2^#I: turns products of the half-degree values into
  // products of true values at the x_i.
  const FieldElement& correction() const;

 private:
  void require_exact() const;

  IndexSystem sys_;
  bool exact_;
  FieldElement a_;
  std::vector<FieldElement> xJ_, wI_, vI_, xI_, xK_;
  std::vector<XPoint> ptsK_;
  std::optional<RemainderTree> tree_;
  FieldElement correction_;
};

// Exact evaluators (exact plans only).
// Delta * h_S(alpha), where Delta = prod_{i,j} (x_i - x_j)^2 (1 when I is empty).
FieldElement hs_eval(const Field& F, const HsPlan& plan, const FieldElement& alpha);
FieldElement delta(const Field& F, const HsPlan& plan);
// (Delta h_S(alpha), Delta h_S'(alpha)).
Jet hs_eval_jet(const Field& F, const HsPlan& plan, const FieldElement& alpha);

// Scaled evaluators for the isogeny path: both entries of a pair carry the
// same unknown nonzero factor, which cancels in every ratio.
struct HsPair {
  FieldElement first;
  FieldElement second;
};
// For alpha = (X : Z): ~ Z^#S h_S(X/Z) and ~ X^#S h_S(Z/X), from one product.
HsPair hs_eval_projective(const Field& F, const HsPlan& plan, const XPoint& alpha);
// ~ h_S(1) and ~ h_S(-1).
HsPair hs_eval_units(const Field& F, const HsPlan& plan);

// The kernel polynomial of <P> at alpha, P of order ell.
FieldElement kernel_poly_eval(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                              const FieldElement& alpha);

}  // namespace sqrtvelu
