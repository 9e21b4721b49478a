#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "sqrtvelu/csidh.hpp"
#include "sqrtvelu/field.hpp"
#include "sqrtvelu/isogeny.hpp"

namespace sqrtvelu {

struct BenchRow {
  std::int64_t ell = 0;
  Engine engine = Engine::Conventional;
  std::int64_t b = 0;  // 0 for conventional rows
  OpTally tally;

  double normalized() const { return static_cast<double>(tally.mults()) / static_cast<double>(ell + 2); }
};

// A kernel point of order ell (and one extra point to push) on y^2 = x^3 + x.
struct BenchInput {
  MontgomeryCurve curve;
  XPoint kernel;
  XPoint push;
};
BenchInput bench_input(const CsidhParams& params, std::int64_t ell, std::uint64_t seed = 1);

// Tally of one isogeny evaluation pushing one point, order check disabled.
OpTally measure_isogeny(const FieldContext& ctx, const BenchInput& in, std::int64_t ell, Engine engine,
                        std::optional<std::int64_t> b = {});

// Candidate b values: default_b(ell) +- width, restricted to valid splits.
std::vector<std::int64_t> b_candidates(std::int64_t ell, std::int64_t width);

// One conventional row and one best-of-sweep sqrt row per ell, ordered by
// ell (conventional first). Parallel across ell up to thread_cap() threads.
std::vector<BenchRow> crossover_rows(const CsidhParams& params, const std::vector<std::int64_t>& ells,
                                     std::int64_t sweep_width);

// Least ell in the rows from which the sqrt engine is strictly cheaper for
// that ell and every larger one; nullopt if it never is.
std::optional<std::int64_t> crossover_ell(const std::vector<BenchRow>& rows);
std::map<std::int64_t, std::int64_t> tuned_b_table(const std::vector<BenchRow>& rows);
// Auto engine from a sweep: crossover and tuned b values.
EngineChoice tuned_engine(const std::vector<BenchRow>& rows);

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);

// SQRTVELU_THREADS if set and positive, else the hardware concurrency.
unsigned thread_cap();

}  // namespace sqrtvelu
