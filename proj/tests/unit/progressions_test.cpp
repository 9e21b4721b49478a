#include "helpers.hpp"

#include "sqrtvelu/progressions.hpp"
#include "sqrtvelu/testkit.hpp"

using namespace sqrtvelu;

TEST_CASE("factorial examples") {
  OpTally t;
  CHECK(factorial_mod(1, 5, t) == 1);
  CHECK(factorial_mod(10, 101, t) == 72);
  CHECK(factorial_mod(6, 7, t) == 6);
  CHECK(factorial_mod(1, 2, t) == 1);
  CHECK(factorial_mod(0, 13, t) == 1);
  CHECK(factorial_mod(20, 1000, t) == 0);
}

TEST_CASE("smallest factor examples") {
  CHECK(smallest_factor(35) == 5);
  CHECK(smallest_factor(101) == 101);
  CHECK(smallest_factor(4) == 2);
  CHECK(smallest_factor(2) == 2);
  CHECK(smallest_factor(1000003ull * 1000033ull) == 1000003);
  CHECK_ERRC(smallest_factor(1), Errc::Parse);
}

TEST_CASE("geometric_hs examples") {
  const auto ctx = FieldContext::create(7);
  OpTally t;
  const Field F(*ctx, t);
  const IndexPair s123 = ap_index_pair(1, 1, 3);
  CHECK(enumerate(s123) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(geometric_hs(F, F.element(2), s123, F.one()).is_zero());
  CHECK(geometric_hs(F, F.element(3), ap_index_pair(1, 1, 2), F.element(5)) == F.element(6));
  CHECK(geometric_hs(F, F.element(3), IndexPair{}, F.element(5)) == F.one());
}

TEST_CASE("ap_index_pair examples") {
  const IndexPair empty = ap_index_pair(1, 1, 0);
  CHECK(empty.I.empty());
  CHECK(empty.J.empty());
  CHECK(empty.K.empty());
  const IndexPair a = ap_index_pair(1, 1, 9);
  CHECK(a.I == std::vector<std::int64_t>{0, 1, 2});
  CHECK(a.J == std::vector<std::int64_t>{1, 4, 7});
  CHECK(a.K.empty());
  const IndexPair b = ap_index_pair(0, 2, 5);
  CHECK(b.I == std::vector<std::int64_t>{0, 2});
  CHECK(b.J == std::vector<std::int64_t>{0, 4});
  CHECK(b.K == std::vector<std::int64_t>{8});
}

TEST_CASE("ap_index_pair invariants") {
  for (std::int64_t n = 0; n <= 200; ++n)
    for (std::int64_t r : {1, 2, 5, -3}) {
      const IndexPair pair = ap_index_pair(7, r, n);
      CHECK_NOTHROW(validate(pair));
      REQUIRE(static_cast<std::int64_t>(pair.size()) == n);
      std::vector<std::int64_t> expect;
      for (std::int64_t k = 0; k < n; ++k) expect.push_back(7 + k * r);
      std::sort(expect.begin(), expect.end());
      REQUIRE(enumerate(pair) == expect);
    }
}

TEST_CASE("invalid index pairs are rejected") {
  CHECK_ERRC(validate(IndexPair{{0, 1}, {0, 1}, {}}), Errc::InvalidIndexPair);
  CHECK_ERRC(validate(IndexPair{{0}, {1}, {1}}), Errc::InvalidIndexPair);
}

TEST_CASE("property: factorial vs naive for ell <= 2000") {
  std::mt19937_64 rng(31);
  CHECK_PROPERTY(checks::factorial(2000, rng));
}

TEST_CASE("property: smallest factor") { CHECK_PROPERTY(checks::smallest_factor(5000)); }

TEST_CASE("property: geometric_hs vs direct product, #S <= 500") {
  std::mt19937_64 rng(32);
  CHECK_PROPERTY(checks::geometric_hs(500, 60, rng));
}
