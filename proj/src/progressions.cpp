#include "sqrtvelu/progressions.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "sqrtvelu/poly.hpp"

namespace sqrtvelu {

namespace {

bool has_duplicates(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

std::uint64_t isqrt(std::uint64_t n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), mpz_class(static_cast<unsigned long>(n)).get_mpz_t());
  return r.get_ui();
}

FieldElement zeta_power(const Field& F, const FieldElement& zeta, const FieldElement& zeta_inv, std::int64_t s) {
  return s >= 0 ? F.pow(zeta, static_cast<std::uint64_t>(s)) : F.pow(zeta_inv, static_cast<std::uint64_t>(-s));
}

}  // namespace

void validate(const IndexPair& pair) {
  if (has_duplicates(pair.I) || has_duplicates(pair.J) || has_duplicates(pair.K))
    throw Error(Errc::InvalidIndexPair, "index sets must not repeat elements");
  std::unordered_set<std::int64_t> sums;
  for (auto i : pair.I)
    for (auto j : pair.J)
      if (!sums.insert(i + j).second) throw Error(Errc::InvalidIndexPair, "I and J share a difference");
  for (auto k : pair.K)
    if (sums.count(k)) throw Error(Errc::InvalidIndexPair, "K meets I + J");
}

std::vector<std::int64_t> enumerate(const IndexPair& pair) {
  std::vector<std::int64_t> s;
  s.reserve(pair.size());
  for (auto i : pair.I)
    for (auto j : pair.J) s.push_back(i + j);
  s.insert(s.end(), pair.K.begin(), pair.K.end());
  std::sort(s.begin(), s.end());
  return s;
}

IndexPair ap_index_pair(std::int64_t start, std::int64_t step, std::int64_t length) {
  IndexPair out;
  if (length <= 0) return out;
  const auto b = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(length)));
  for (std::int64_t i = 0; i < b; ++i) out.I.push_back(i * step);
  for (std::int64_t j = 0; j < b; ++j) out.J.push_back(start + j * b * step);
  for (std::int64_t k = b * b; k < length; ++k) out.K.push_back(start + k * step);
  std::sort(out.I.begin(), out.I.end());
  std::sort(out.J.begin(), out.J.end());
  std::sort(out.K.begin(), out.K.end());
  return out;
}

mpz_class factorial_mod(std::uint64_t ell, const mpz_class& n, OpTally& tally) {
  const auto ring = FieldContext::create_ring(n);
  const Field F(*ring, tally);
  if (ell <= 1) return mpz_class(1) % n;
  const std::uint64_t b = isqrt(ell);
  // h(X) = X (X - 1) ... (X - (b - 1)); h(k b) is the product of the k-th block.
  std::vector<FieldElement> roots, points;
  for (std::uint64_t i = 0; i < b; ++i) roots.push_back(F.element(static_cast<std::int64_t>(i)));
  for (std::uint64_t k = 1; k <= b; ++k) points.push_back(F.element(mpz_class(static_cast<unsigned long>(k * b))));
  const Poly h = poly_from_roots(F, roots);
  const auto blocks = multipoint_eval(F, h, points);
  FieldElement acc = blocks[0];
  for (std::size_t k = 1; k < blocks.size(); ++k) acc = F.mul(acc, blocks[k]);
  for (std::uint64_t t = b * b + 1; t <= ell; ++t) acc = F.mul(acc, F.element(mpz_class(static_cast<unsigned long>(t))));
  return acc.to_mpz();
}

std::uint64_t smallest_factor(std::uint64_t n) {
  if (n < 2) throw Error(Errc::Parse, "smallest_factor needs n >= 2");
  const mpz_class nz(static_cast<unsigned long>(n));
  OpTally scratch;
  auto shares_factor = [&](std::uint64_t k) {
    return gcd(nz, factorial_mod(k, nz, scratch)) > 1;
  };
  std::uint64_t hi = isqrt(n);
  if (hi * hi < n) ++hi;
  if (!shares_factor(hi)) return n;
  std::uint64_t lo = 1;  // 1! shares nothing with n
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (shares_factor(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

FieldElement geometric_hs(const Field& F, const FieldElement& zeta, const IndexPair& pair,
                          const FieldElement& alpha) {
  validate(pair);
  const FieldElement zeta_inv = F.inv(zeta);
  FieldElement acc = F.one();
  bool first = true;
  auto fold = [&](const FieldElement& v) {
    acc = first ? v : F.mul(acc, v);
    first = false;
  };
  if (!pair.I.empty() && !pair.J.empty()) {
    std::vector<FieldElement> roots;
    for (auto i : pair.I) roots.push_back(zeta_power(F, zeta, zeta_inv, i));
    // H_J(alpha, Z) = prod_j (alpha - zeta^j Z)
    std::vector<Poly> factors;
    for (auto j : pair.J)
      factors.emplace_back(std::vector<FieldElement>{alpha, F.neg(zeta_power(F, zeta, zeta_inv, j))});
    fold(resultant_via_roots(F, roots, product(F, std::move(factors))));
  }
  for (auto k : pair.K) fold(F.sub(alpha, zeta_power(F, zeta, zeta_inv, k)));
  return acc;
}

}  // namespace sqrtvelu
