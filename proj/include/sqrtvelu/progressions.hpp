#pragma once

#include <cstdint>
#include <vector>

#include "sqrtvelu/field.hpp"

namespace sqrtvelu {

// Index sets for h_S with S = (I + J) u K. Valid when I and J have no common
// differences (so I x J -> I + J is a bijection) and I + J misses K.
struct IndexPair {
  std::vector<std::int64_t> I;
  std::vector<std::int64_t> J;
  std::vector<std::int64_t> K;

  std::size_t size() const { return I.size() * J.size() + K.size(); }
};

// Throws InvalidIndexPair.
void validate(const IndexPair& pair);

// Enumerates S = (I + J) u K in increasing order (test and oracle helper).
std::vector<std::int64_t> enumerate(const IndexPair& pair);

// Splits the progression {m, m + r, ..., m + (n-1) r} into an index pair with
// #I = #J = floor(sqrt(n)).
IndexPair ap_index_pair(std::int64_t start, std::int64_t step, std::int64_t length);

// ell! mod n by baby-step/giant-step blocking over Z/nZ (n need not be prime).
mpz_class factorial_mod(std::uint64_t ell, const mpz_class& n, OpTally& tally);

// Smallest prime factor of n >= 2 by binary search on gcd(n, k! mod n).
std::uint64_t smallest_factor(std::uint64_t n);

// prod_{s in S} (alpha - zeta^s), via a product tree for h_I and a resultant
// against H_J(alpha, Z) = prod_j (alpha - zeta^j Z).
FieldElement geometric_hs(const Field& F, const FieldElement& zeta, const IndexPair& pair,
                          const FieldElement& alpha);

}  // namespace sqrtvelu
