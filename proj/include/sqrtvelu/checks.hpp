#pragma once

// Property checks against the testkit oracles, shared by the self-test
// command, the unit tests and the acceptance binary.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sqrtvelu/field.hpp"

namespace sqrtvelu::checks {

struct Result {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
  void expect(bool cond, const std::string& what);
  Result& operator+=(const Result& o);
};

std::vector<std::int64_t> odd_primes_up_to(std::int64_t n);

Result field_axioms(const FieldContext& ctx, int samples, std::mt19937_64& rng);
Result tally_exactness(const FieldContext& ctx, std::mt19937_64& rng);
Result jet_homomorphism(const FieldContext& ctx, int samples, std::mt19937_64& rng);
// mul against schoolbook over mpz, multipoint evaluation (tree forced on and
// off) against Horner, resultant against the Sylvester determinant.
Result poly_ops(const FieldContext& ctx, int samples, std::size_t max_len, std::mt19937_64& rng);

Result factorial(std::uint64_t max_ell, std::mt19937_64& rng);
Result smallest_factor(std::uint64_t max_n);
Result geometric_hs(std::int64_t max_size, int samples, std::mt19937_64& rng);

// Toy-curve group law against the affine oracle.
Result curve_arith(int samples, std::mt19937_64& rng);
// Vieta, symmetry and triquadratic identities.
Result biquadratics(int samples, std::mt19937_64& rng);

Result index_systems(std::int64_t max_ell, std::int64_t window);
// delta^-1 hs_eval == naive product, for every odd prime ell <= max_ell.
Result hs_oracle(std::int64_t max_ell, int alphas, std::mt19937_64& rng);
Result jet_derivative(std::int64_t max_ell, std::mt19937_64& rng);

// velu_sqrt == velu_conventional (affine codomain and images) for every odd
// prime ell <= max_ell over random toy curves, both also checked against the
// Weierstrass Velu oracle.
Result engine_equivalence(std::int64_t max_ell, int curves, std::mt19937_64& rng);

// toy419: commutativity, invertibility and engine agreement.
Result csidh_toy(int keys, std::mt19937_64& rng);

// Toy-scale suites run by `sqrtvelu selftest`, one per module.
struct Suite {
  std::string name;
  std::function<Result(std::mt19937_64&)> run;
};
std::vector<Suite> selftest_suites();

}  // namespace sqrtvelu::checks
