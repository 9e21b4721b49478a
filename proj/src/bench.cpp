#include "sqrtvelu/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/velusqrt.hpp"

namespace sqrtvelu {

BenchInput bench_input(const CsidhParams& params, std::int64_t ell, std::uint64_t seed) {
  const FieldContext& ctx = *params.ctx;
  OpTally scratch;
  const Field F(ctx, scratch);
  const MontgomeryCurve curve = affine_curve(ctx, ctx.zero());
  std::mt19937_64 rng(seed);
  const mpz_class cofactor = (params.p + 1) / static_cast<long>(ell);
  for (;;) {
    const XPoint K = ladder(F, cofactor, affine_point(ctx, ctx.random(rng)), curve);
    if (K.is_infinity()) continue;
    return {curve, K, affine_point(ctx, ctx.random(rng))};
  }
}

OpTally measure_isogeny(const FieldContext& ctx, const BenchInput& in, std::int64_t ell, Engine engine,
                        std::optional<std::int64_t> b) {
  OpTally tally;
  const Field F(ctx, tally);
  if (engine == Engine::Sqrt)
    velu_sqrt(F, in.curve, in.kernel, ell, {in.push}, b, false);
  else
    velu_conventional(F, in.curve, in.kernel, ell, {in.push}, false);
  return tally;
}

std::vector<std::int64_t> b_candidates(std::int64_t ell, std::int64_t width) {
  const std::int64_t b0 = default_b(ell);
  std::vector<std::int64_t> out;
  for (std::int64_t b = std::max<std::int64_t>(1, b0 - width); b <= b0 + width; ++b)
    if ((ell - 1) / (4 * b) >= 1) out.push_back(b);
  if (out.empty()) out.push_back(b0);
  return out;
}

std::vector<BenchRow> crossover_rows(const CsidhParams& params, const std::vector<std::int64_t>& requested,
                                     std::int64_t sweep_width) {
  std::vector<std::int64_t> ells = requested;
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  std::vector<BenchRow> rows(2 * ells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < ells.size();) {
      const std::int64_t ell = ells[t];
      const BenchInput in = bench_input(params, ell);
      rows[2 * t] = {ell, Engine::Conventional, 0, measure_isogeny(*params.ctx, in, ell, Engine::Conventional)};
      BenchRow best{ell, Engine::Sqrt, -1, {}};
      for (std::int64_t b : b_candidates(ell, sweep_width)) {
        const OpTally tally = measure_isogeny(*params.ctx, in, ell, Engine::Sqrt, b);
        if (best.b < 0 || tally.mults() < best.tally.mults()) best = {ell, Engine::Sqrt, b, tally};
      }
      rows[2 * t + 1] = best;
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(thread_cap(), static_cast<unsigned>(ells.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

std::optional<std::int64_t> crossover_ell(const std::vector<BenchRow>& rows) {
  std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> cost;  // ell -> (conventional, sqrt)
  for (const auto& r : rows) {
    auto& c = cost[r.ell];
    (r.engine == Engine::Sqrt ? c.second : c.first) = r.tally.mults();
  }
  std::optional<std::int64_t> star;
  for (auto it = cost.rbegin(); it != cost.rend(); ++it) {
    if (it->second.second >= it->second.first) break;
    star = it->first;
  }
  return star;
}

std::map<std::int64_t, std::int64_t> tuned_b_table(const std::vector<BenchRow>& rows) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& r : rows)
    if (r.engine == Engine::Sqrt) out[r.ell] = r.b;
  return out;
}

EngineChoice tuned_engine(const std::vector<BenchRow>& rows) {
  EngineChoice e;
  e.mode = Engine::Auto;
  e.b_table = tuned_b_table(rows);
  const auto star = crossover_ell(rows);
  e.crossover_ell = star ? *star : std::numeric_limits<std::int64_t>::max();
  return e;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "ell,engine,b,muls,sqrs,adds,invs,normalized\n";
  for (const auto& r : rows) {
    char norm[32];
    std::snprintf(norm, sizeof norm, "%.3f", r.normalized());
    os << r.ell << ',' << engine_name(r.engine) << ',' << r.b << ',' << r.tally.mul << ',' << r.tally.sqr << ','
       << r.tally.add_sub << ',' << r.tally.inv << ',' << norm << '\n';
  }
}

unsigned thread_cap() {
  if (const char* s = std::getenv("SQRTVELU_THREADS")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace sqrtvelu
