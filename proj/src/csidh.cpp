#include "sqrtvelu/csidh.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "sqrtvelu/curve.hpp"

namespace sqrtvelu {

namespace {

std::vector<std::int64_t> odd_primes(std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; out.size() < count; n += 2) {
    bool prime = true;
    for (std::int64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

CsidhParams make_params(std::string name, std::vector<std::int64_t> ells) {
  mpz_class p = 4;
  for (auto l : ells) p *= static_cast<long>(l);
  p -= 1;
  auto ctx = FieldContext::create(p);
  return {std::move(name), p, std::move(ells), std::move(ctx)};
}

}  // namespace

CsidhParams csidh_params(const std::string& name) {
  if (name == "toy419") return make_params(name, {3, 5, 7});
  if (name == "csidh512") {
    auto ells = odd_primes(73);
    ells.push_back(587);
    return make_params(name, std::move(ells));
  }
  throw Error(Errc::UnknownParams, "unknown parameter set '" + name + "'");
}

PrivateKey random_key(const CsidhParams& params, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  PrivateKey key;
  for (std::size_t i = 0; i < params.ells.size(); ++i) key.exponents.push_back(dist(rng));
  return key;
}

PrivateKey parse_key(const std::string& text) {
  PrivateKey key;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    while (first != last && std::isspace(static_cast<unsigned char>(*first))) ++first;
    while (last != first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) throw Error(Errc::Parse, "bad key entry '" + item + "'");
    key.exponents.push_back(v);
  }
  if (key.exponents.empty()) throw Error(Errc::Parse, "empty key");
  return key;
}

std::string format_key(const PrivateKey& key) {
  std::string out;
  for (std::size_t i = 0; i < key.exponents.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(key.exponents[i]);
  }
  return out;
}

PublicCurve start_curve(const CsidhParams& params) { return {params.ctx->zero()}; }

PublicCurve action(const Field& F, const CsidhParams& params, const PrivateKey& key, const PublicCurve& start,
                   const EngineChoice& engine, std::uint64_t seed) {
  if (key.exponents.size() != params.ells.size())
    throw Error(Errc::Parse, "key has " + std::to_string(key.exponents.size()) + " exponents, expected " +
                                 std::to_string(params.ells.size()));
  const FieldContext& ctx = *params.ctx;
  if (!is_nonsingular(affine_curve(ctx, start.a))) throw Error(Errc::SingularCodomain, "start curve is singular");

  std::mt19937_64 rng(seed);
  std::vector<int> e = key.exponents;
  FieldElement a = start.a;
  EngineChoice eng = engine;
  eng.check_order = false;  // kernel points have order ell by construction
  const mpz_class p1 = params.p + 1;

  while (std::any_of(e.begin(), e.end(), [](int v) { return v != 0; })) {
    const FieldElement x = ctx.random(rng);
    const FieldElement rhs = F.mul(x, F.add(F.mul(F.add(x, a), x), F.one()));
    if (rhs.is_zero()) continue;
    const int sign = F.is_square(rhs) ? 1 : -1;

    // Largest degree first keeps the cofactor ladders short.
    std::vector<std::size_t> S;
    for (std::size_t i = params.ells.size(); i-- > 0;)
      if (e[i] != 0 && (e[i] > 0) == (sign > 0)) S.push_back(i);
    if (S.empty()) continue;

    mpz_class k = 1;
    for (auto i : S) k *= static_cast<long>(params.ells[i]);
    MontgomeryCurve curve = affine_curve(ctx, a);
    XPoint Q = ladder(F, p1 / k, affine_point(ctx, x), curve);

    for (std::size_t t = 0; t < S.size(); ++t) {
      const std::size_t i = S[t];
      const std::int64_t ell = params.ells[i];
      k /= static_cast<long>(ell);
      const XPoint R = ladder(F, k, Q, curve);
      if (R.is_infinity()) continue;
      std::vector<XPoint> push;
      if (t + 1 < S.size()) push.push_back(Q);
      IsogenyOutput out = isogeny_eval(F, curve, R, ell, push, eng);
      a = F.mul(out.codomain.A, F.inv(out.codomain.C));
      curve = affine_curve(ctx, a);
      if (!push.empty()) Q = out.images[0];
      e[i] -= sign;
    }
  }
  return {a};
}

FieldElement key_exchange_demo(const Field& F, const CsidhParams& params, const PrivateKey& alice,
                               const PrivateKey& bob, const EngineChoice& engine, const std::uint64_t (&seeds)[4]) {
  const PublicCurve e0 = start_curve(params);
  const PublicCurve pa = action(F, params, alice, e0, engine, seeds[0]);
  const PublicCurve pb = action(F, params, bob, e0, engine, seeds[1]);
  const PublicCurve sa = action(F, params, alice, pb, engine, seeds[2]);
  const PublicCurve sb = action(F, params, bob, pa, engine, seeds[3]);
  if (!(sa.a == sb.a)) throw Error(Errc::SharedSecretMismatch, "the two exchange orders disagree");
  return sa.a;
}

}  // namespace sqrtvelu
