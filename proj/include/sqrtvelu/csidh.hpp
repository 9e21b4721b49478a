#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "sqrtvelu/field.hpp"
#include "sqrtvelu/isogeny.hpp"

namespace sqrtvelu {

// p = 4 * prod(ells) - 1.
struct CsidhParams {
  std::string name;
  mpz_class p;
  std::vector<std::int64_t> ells;  // ascending
  std::shared_ptr<const FieldContext> ctx;
};

// "toy419" or "csidh512"; throws UnknownParams.
CsidhParams csidh_params(const std::string& name);

struct PrivateKey {
  std::vector<int> exponents;  // one per ell
};

struct PublicCurve {
  FieldElement a;
};

PrivateKey random_key(const CsidhParams& params, int bound, std::mt19937_64& rng);
// Comma-separated decimal exponents; throws Parse.
PrivateKey parse_key(const std::string& text);
std::string format_key(const PrivateKey& key);

PublicCurve start_curve(const CsidhParams& params);

// Deterministic given the seed. Not constant time.
PublicCurve action(const Field& F, const CsidhParams& params, const PrivateKey& key, const PublicCurve& start,
                   const EngineChoice& engine, std::uint64_t seed);

// Runs both orders of the two-party exchange from the starting curve and
// returns the shared coefficient; throws SharedSecretMismatch if they differ.
// seeds: alice public, bob public, alice shared, bob shared.
FieldElement key_exchange_demo(const Field& F, const CsidhParams& params, const PrivateKey& alice,
                               const PrivateKey& bob, const EngineChoice& engine, const std::uint64_t (&seeds)[4]);

}  // namespace sqrtvelu
