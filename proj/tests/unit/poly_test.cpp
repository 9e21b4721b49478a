#include "helpers.hpp"

#include "sqrtvelu/poly.hpp"
#include "sqrtvelu/testkit.hpp"

using namespace sqrtvelu;

namespace {

struct Mod7 {
  std::shared_ptr<const FieldContext> ctx = FieldContext::create(7);
  OpTally t;
  Field F{*ctx, t};

  Poly P(std::initializer_list<std::int64_t> c) {
    std::vector<FieldElement> v;
    for (auto x : c) v.push_back(ctx->element(x));
    return Poly(v);
  }
  std::vector<FieldElement> E(std::initializer_list<std::int64_t> c) {
    std::vector<FieldElement> v;
    for (auto x : c) v.push_back(ctx->element(x));
    return v;
  }
};

}  // namespace

TEST_CASE("mul examples mod 7") {
  Mod7 m;
  CHECK(mul(m.F, m.P({1, 1}), m.P({-1, 1})) == m.P({6, 0, 1}));
  CHECK(mul(m.F, m.P({3, 2}), m.P({5, 4})) == m.P({1, 1, 1}));
  const Poly f = m.P({3, 0, 5, 1});
  CHECK(mul(m.F, f, m.P({1})) == f);
  CHECK(mul(m.F, f, Poly{}).is_zero());
}

TEST_CASE("product tree examples mod 7") {
  Mod7 m;
  CHECK(product_tree(m.F, {m.P({-1, 1})}).root() == m.P({-1, 1}));
  CHECK(product_tree(m.F, {m.P({-1, 1}), m.P({-2, 1}), m.P({-3, 1})}).root() == m.P({1, 4, 1, 1}));
  const Poly q1 = m.P({1, 2, 3}), q2 = m.P({4, 5, 6});
  const Poly root = product_tree(m.F, {q1, q2}).root();
  CHECK(root.degree() == 4);
  CHECK(root.leading() == m.F.mul(q1.leading(), q2.leading()));
}

TEST_CASE("poly_from_roots examples mod 7") {
  Mod7 m;
  CHECK(poly_from_roots(m.F, {}) == m.P({1}));
  CHECK(poly_from_roots(m.F, m.E({0})) == m.P({0, 1}));
  CHECK(poly_from_roots(m.F, m.E({1, 2, 3})) == m.P({1, 4, 1, 1}));
}

TEST_CASE("multipoint examples mod 7") {
  Mod7 m;
  CHECK(multipoint_eval(m.F, m.P({0, 0, 1}), m.E({0, 1, 2})) == m.E({0, 1, 4}));
  CHECK(multipoint_eval(m.F, m.P({5}), m.E({0, 3, 6})) == m.E({5, 5, 5}));
  CHECK(multipoint_eval(m.F, m.P({1, 4, 1, 1}), m.E({1, 2, 3})) == m.E({0, 0, 0}));
}

TEST_CASE("resultant examples") {
  Mod7 m;
  CHECK(resultant_via_roots(m.F, m.E({0}), m.P({5, 1})) == m.ctx->element(5));
  CHECK(resultant_via_roots(m.F, m.E({1, 2}), m.P({0, 1})) == m.ctx->element(2));
  CHECK(resultant_via_roots(m.F, m.E({1, 2, 3}), m.P({1, 0, 1})) == m.ctx->element(2));
}

TEST_CASE("jet evaluation examples mod 7") {
  Mod7 m;
  const Jet j = eval_jet(m.F, m.P({0, 0, 1}), {m.ctx->element(3), m.F.one()});
  CHECK(j.v == m.ctx->element(2));
  CHECK(j.d == m.ctx->element(6));
  const Jet c = eval_jet(m.F, m.P({4}), {m.ctx->element(3), m.F.one()});
  CHECK(c.v == m.ctx->element(4));
  CHECK(c.d.is_zero());
  const Jet x = eval_jet(m.F, m.P({0, 1}), {m.ctx->element(5), m.F.one()});
  CHECK(x.v == m.ctx->element(5));
  CHECK(x.d == m.F.one());
}

TEST_CASE("product tree root equals the left fold") {
  std::mt19937_64 rng(21);
  const auto ctx = FieldContext::create(1000003);
  OpTally t;
  const Field F(*ctx, t);
  for (std::size_t n : {1u, 2u, 5u, 17u, 64u}) {
    std::vector<Poly> factors;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<FieldElement> c(1 + rng() % 4);
      for (auto& x : c) x = ctx->random(rng);
      c.back() = ctx->one();
      factors.push_back(Poly(c));
    }
    Poly fold({ctx->one()});
    for (const auto& f : factors) fold = mul(F, fold, f);
    CHECK(product_tree(F, factors).root() == fold);
    CHECK(product(F, factors) == fold);
  }
}

TEST_CASE("multipoint at scale: degree 512, 256 points") {
  std::mt19937_64 rng(22);
  const auto ctx = FieldContext::create(testkit::find_toy_prime(3, 50, 60, rng));
  OpTally t;
  const Field F(*ctx, t);
  std::vector<FieldElement> c(513), pts(256);
  for (auto& x : c) x = ctx->random(rng);
  for (auto& x : pts) x = ctx->random(rng);
  const Poly f(c);
  const auto vals = multipoint_eval(F, f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    OpTally scratch;
    REQUIRE(vals[i] == eval(Field(*ctx, scratch), f, pts[i]));
  }
  const RemainderTree tree(F, pts, 512);
  CHECK(tree.has_tree());
  CHECK(tree.evaluate(F, f) == vals);
}

TEST_CASE("remainder tree cutoff and Karatsuba threshold keep results exact") {
  std::mt19937_64 rng(23);
  const auto ctx = FieldContext::create(1000003);
  CHECK_PROPERTY(checks::poly_ops(*ctx, 120, 40, rng));
  // Tuning is restored afterwards.
  CHECK(karatsuba_threshold() == 32);
  CHECK(remainder_tree_cutoff() == 64);
}

TEST_CASE("small point sets use Horner, no tree") {
  const auto ctx = FieldContext::create(1000003);
  OpTally t;
  const Field F(*ctx, t);
  std::vector<FieldElement> pts{ctx->element(1), ctx->element(2)};
  CHECK_FALSE(RemainderTree(F, pts, 8).has_tree());
}

TEST_CASE("rem_monic and inverse_series") {
  Mod7 m;
  // (X^3 + 1) mod (X - 1) = 2
  CHECK(rem_monic(m.F, m.P({1, 0, 0, 1}), m.P({-1, 1})) == m.P({2}));
  // 1 / (1 - X) = 1 + X + X^2 + ...
  CHECK(inverse_series(m.F, m.P({1, -1}), 4) == m.P({1, 1, 1, 1}));
  CHECK(derivative(m.F, m.P({1, 2, 3})) == m.P({2, 6}));
  CHECK(reversed(m.P({1, 2}), 3) == m.P({0, 2, 1}));
}
