// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "sqrtvelu/bench.hpp"
#include "sqrtvelu/checks.hpp"
#include "sqrtvelu/csidh.hpp"

using namespace sqrtvelu;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome from(const checks::Result& r) {
  std::string d = std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases) + " cases";
  if (!r.ok()) d += "; first failure: " + r.first_failure;
  return {r.ok() && r.cases > 0, d};
}

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d: %s  %s (%s) [%.1fs]\n", n, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

int main() {
  std::mt19937_64 rng(20200101);
  const CsidhParams big = csidh_params("csidh512");

  criterion(1, "velu_sqrt == velu_conventional, odd primes ell <= 401, 3 toy curves each, 3 pushed points",
            [&] { return from(checks::engine_equivalence(401, 3, rng)); });

  criterion(2, "delta^-1 hs_eval == naive product, odd primes ell <= 401, 20 alphas each",
            [&] { return from(checks::hs_oracle(401, 20, rng)); });

  std::vector<BenchRow> rows;
  criterion(3, "ell = 587 on the CSIDH-512 field: sqrt <= 2600 mults, conventional within 5% of 3550", [&] {
    rows = crossover_rows(big, big.ells, 3);
    const BenchRow& conv = rows[rows.size() - 2];
    const BenchRow& sq = rows.back();
    const double c = static_cast<double>(conv.tally.mults()), s = static_cast<double>(sq.tally.mults());
    const bool ok = conv.ell == 587 && sq.ell == 587 && s <= 2600 && c >= 0.95 * 3550 && c <= 1.05 * 3550;
    return Outcome{ok, fmt("sqrt %.0f = %.3f(ell+2) at b = %.0f; conventional %.0f", s, sq.normalized(),
                           static_cast<double>(sq.b), c) +
                           fmt(" = %.3f(ell+2)", conv.normalized())};
  });

  criterion(4, "tuned sqrt strictly cheaper than conventional for every ell >= 113; ell* <= 113", [&] {
    if (rows.empty()) rows = crossover_rows(big, big.ells, 3);
    bool all = true;
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
      if (rows[i].ell >= 113 && rows[i + 1].tally.mults() >= rows[i].tally.mults()) all = false;
    const auto star = crossover_ell(rows);
    return Outcome{all && star && *star <= 113,
                   "empirical ell* = " + (star ? std::to_string(*star) : std::string("none")) +
                       (all ? "" : "; some ell >= 113 is not cheaper")};
  });

  criterion(5, "CSIDH-512 action, B = 5, matched keys and seeds: sqrt engine saves >= 4% mults", [&] {
    if (rows.empty()) rows = crossover_rows(big, big.ells, 3);
    const EngineChoice tuned = tuned_engine(rows);
    EngineChoice conv;
    conv.mode = Engine::Conventional;
    OpTally tc, ts;
    bool same = true;
    for (int k = 0; k < 3; ++k) {
      const PrivateKey key = random_key(big, 5, rng);
      const std::uint64_t seed = rng();
      const PublicCurve a = action(Field(*big.ctx, tc), big, key, start_curve(big), conv, seed);
      const PublicCurve b = action(Field(*big.ctx, ts), big, key, start_curve(big), tuned, seed);
      same = same && a.a == b.a;
    }
    const double saving = 1.0 - static_cast<double>(ts.mults()) / static_cast<double>(tc.mults());
    return Outcome{same && saving >= 0.04,
                   fmt("3 keys: conventional %.0f, sqrt %.0f, saving %.1f%%", static_cast<double>(tc.mults()),
                       static_cast<double>(ts.mults()), 100 * saving) +
                       (same ? "; identical public curves" : "; PUBLIC CURVES DIFFER")};
  });

  criterion(6, "toy419 commutativity/invertibility over 10 keys; CSIDH-512 key exchange agrees", [&] {
    checks::Result r = checks::csidh_toy(10, rng);
    OpTally t;
    const Field F(*big.ctx, t);
    const PrivateKey alice = random_key(big, 5, rng), bob = random_key(big, 5, rng);
    const std::uint64_t seeds[4] = {rng(), rng(), rng(), rng()};
    bool agreed = true;
    try {
      key_exchange_demo(F, big, alice, bob, EngineChoice{}, seeds);
    } catch (const Error&) {
      agreed = false;
    }
    r.expect(agreed, "csidh512 shared secrets differ");
    return from(r);
  });

  criterion(7, "factorial_mod for ell <= 2000, geometric_hs for #S <= 500, smallest_factor for n <= 1e5", [&] {
    checks::Result r = checks::factorial(2000, rng);
    r += checks::geometric_hs(500, 200, rng);
    r += checks::smallest_factor(100000);
    return from(r);
  });

  criterion(8, "biquadratic identities (1000 samples), index systems for ell <= 1e4, jet derivative ell <= 31", [&] {
    checks::Result r = checks::biquadratics(1000, rng);
    r += checks::index_systems(10000, 3);
    r += checks::jet_derivative(31, rng);
    return from(r);
  });

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failures == 0 ? 0 : 1;
}
