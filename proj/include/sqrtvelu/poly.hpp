#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqrtvelu/field.hpp"

namespace sqrtvelu {

// Dense univariate polynomial, lowest degree first. The zero polynomial has
// no coefficients; otherwise the top coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElement> coeffs) : c_(std::move(coeffs)) { trim(); }

  const std::vector<FieldElement>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const FieldElement& operator[](std::size_t i) const { return c_[i]; }
  const FieldElement& leading() const { return c_.back(); }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<FieldElement> c_;
};

// Coefficient count below which multiplication is schoolbook; Karatsuba above.
std::size_t karatsuba_threshold();
void set_karatsuba_threshold(std::size_t n);

Poly add(const Field& F, const Poly& f, const Poly& g);
Poly sub(const Field& F, const Poly& f, const Poly& g);
Poly mul(const Field& F, const Poly& f, const Poly& g);
// First n coefficients of f*g.
Poly mul_low(const Field& F, const Poly& f, const Poly& g, std::size_t n);
// Coefficients of f padded/truncated to n and reversed: Z^(n-1) f(1/Z).
Poly reversed(const Poly& f, std::size_t n);
Poly derivative(const Field& F, const Poly& f);

FieldElement eval(const Field& F, const Poly& f, const FieldElement& x);
// Horner in the jet algebra: (f(a.v), f'(a.v) * a.d) + ...
Jet eval_jet(const Field& F, const Poly& f, const Jet& at);

// 1/f mod Z^n; requires f(0) invertible (f(0) == 1 needs no inversion).
Poly inverse_series(const Field& F, const Poly& f, std::size_t n);
// f mod g for monic g.
Poly rem_monic(const Field& F, const Poly& f, const Poly& g);

struct ProductTree {
  // levels[0] holds the leaves; each later level pairs adjacent nodes of the
  // previous one (an odd node is carried up unchanged); levels.back() is the
  // single root.
  std::vector<std::vector<Poly>> levels;

  const Poly& root() const { return levels.back().front(); }
  std::size_t leaf_count() const { return levels.front().size(); }
};

ProductTree product_tree(const Field& F, std::vector<Poly> factors);
Poly product(const Field& F, std::vector<Poly> factors);
Poly poly_from_roots(const Field& F, std::span<const FieldElement> roots);

// Point-set size from which multipoint evaluation descends a subproduct
// tree with reciprocal-based division; smaller nodes use Horner (with
// schoolbook division both cost the same).
std::size_t remainder_tree_cutoff();
void set_remainder_tree_cutoff(std::size_t n);

// Multipoint evaluation at fixed points for polynomials of degree <=
// max_input_degree: a subproduct tree of (Z - x_k) with cached node
// reciprocals above the cutoff, Horner below it.
class RemainderTree {
 public:
  RemainderTree(const Field& F, std::span<const FieldElement> points, std::size_t max_input_degree);

  std::vector<FieldElement> evaluate(const Field& F, const Poly& f) const;

  std::span<const FieldElement> points() const { return points_; }
  std::size_t max_input_degree() const { return max_degree_; }
  bool has_tree() const { return !tree_.levels.empty(); }
  const ProductTree& tree() const { return tree_; }

 private:
  Poly reduce(const Field& F, const Poly& f, std::size_t level, std::size_t index) const;
  void descend(const Field& F, const Poly& f, std::size_t level, std::size_t index,
               std::vector<FieldElement>& out) const;

  std::vector<FieldElement> points_;
  ProductTree tree_;
  std::vector<std::vector<std::vector<FieldElement>>> recips_;
  std::size_t max_degree_;
  std::size_t cutoff_ = 0;
};

std::vector<FieldElement> multipoint_eval(const Field& F, const Poly& f, std::span<const FieldElement> points);

// Product of g over the given roots: Res_Z(prod (Z - r), g) for the monic
// polynomial with these roots. No leading-coefficient factor is applied.
FieldElement resultant_via_roots(const Field& F, std::span<const FieldElement> roots, const Poly& g);

}  // namespace sqrtvelu
