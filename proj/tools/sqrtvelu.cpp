#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqrtvelu/bench.hpp"
#include "sqrtvelu/checks.hpp"
#include "sqrtvelu/csidh.hpp"
#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/isogeny.hpp"
#include "sqrtvelu/progressions.hpp"

using namespace sqrtvelu;

namespace {

constexpr int kOk = 0, kSelftestFailed = 1, kUsage = 2, kMath = 3;

void print_tally(const OpTally& t) {
  std::cout << "tally mul=" << t.mul << " sqr=" << t.sqr << " add=" << t.add_sub << " inv=" << t.inv
            << " mults=" << t.mults() << "\n";
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used, 10);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::Parse, "not an integer: '" + s + "'");
  }
}

// "all", "lo:hi" (inclusive, filtered to the parameter set) or "l1,l2,...".
std::vector<std::int64_t> parse_ells(const std::string& text, const CsidhParams& params) {
  if (text == "all") return params.ells;
  std::vector<std::int64_t> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const std::int64_t lo = parse_int(text.substr(0, colon)), hi = parse_int(text.substr(colon + 1));
    for (auto ell : params.ells)
      if (ell >= lo && ell <= hi) out.push_back(ell);
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_int(item));
  }
  if (out.empty()) throw Error(Errc::Parse, "empty ell list '" + text + "'");
  return out;
}

int cmd_selftest(const std::string& filter, bool corrupt, std::uint64_t seed) {
  fault::corrupt_biquadratic(corrupt);
  std::mt19937_64 rng(seed);
  bool all_ok = true, matched = false;
  for (const auto& suite : checks::selftest_suites()) {
    if (!filter.empty() && suite.name != filter) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    checks::Result r;
    try {
      r = suite.run(rng);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-13s %s %llu/%llu passed (%.2fs)\n", suite.name.c_str(), r.ok() ? "PASS" : "FAIL",
                static_cast<unsigned long long>(r.cases - r.failures), static_cast<unsigned long long>(r.cases), secs);
    if (!r.ok()) std::printf("  first failure: %s\n", r.first_failure.c_str());
    all_ok = all_ok && r.ok();
  }
  fault::corrupt_biquadratic(false);
  if (!matched) throw Error(Errc::Parse, "no suite named '" + filter + "'");
  return all_ok ? kOk : kSelftestFailed;
}

struct IsogenyArgs {
  std::string prime, a, xp, engine = "auto";
  std::int64_t ell = 0;
  std::vector<std::string> push;
  std::optional<std::int64_t> b;
};

int cmd_isogeny(const IsogenyArgs& args) {
  const auto ctx = FieldContext::create(parse_hex(args.prime));
  OpTally tally;
  const Field F(*ctx, tally);
  const MontgomeryCurve curve = affine_curve(*ctx, parse_element(*ctx, args.a));
  const XPoint P = affine_point(*ctx, parse_element(*ctx, args.xp));
  std::vector<XPoint> push;
  for (const auto& h : args.push) push.push_back(affine_point(*ctx, parse_element(*ctx, h)));
  EngineChoice engine;
  engine.mode = parse_engine(args.engine);
  if (args.b) engine.b_table[args.ell] = *args.b;
  const IsogenyOutput out = isogeny_eval(F, curve, P, args.ell, push, engine);
  std::cout << "engine " << (uses_sqrt(engine, args.ell) ? "sqrt" : "conventional") << "\n";
  std::cout << "a " << to_hex(affine_a(out.codomain)) << "\n";
  for (const auto& img : out.images) std::cout << "image " << (img.is_infinity() ? "inf" : to_hex(affine_x(img))) << "\n";
  print_tally(tally);
  return kOk;
}

int cmd_crossover(const std::string& params_name, const std::string& ells_spec, std::int64_t width,
                  const std::string& out_path) {
  const CsidhParams params = csidh_params(params_name);
  const auto ells = parse_ells(ells_spec, params);
  if (width < 0) throw Error(Errc::Parse, "--b-sweep must be >= 0");
  const auto rows = crossover_rows(params, ells, width);
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw Error(Errc::Parse, "cannot open '" + out_path + "' for writing");
    write_csv(os, rows);
    if (!os) throw Error(Errc::Parse, "write to '" + out_path + "' failed");
  }
  const auto star = crossover_ell(rows);
  std::cerr << "crossover " << (star ? std::to_string(*star) : "none") << "\n";
  return kOk;
}

int cmd_csidh(const std::string& params_name, const std::string& key_text, const std::string& engine_name,
              std::uint64_t seed) {
  const CsidhParams params = csidh_params(params_name);
  const PrivateKey key = parse_key(key_text);
  if (key.exponents.size() != params.ells.size())
    throw Error(Errc::Parse, "key has " + std::to_string(key.exponents.size()) + " exponents, " + params.name +
                                 " needs " + std::to_string(params.ells.size()));
  EngineChoice engine;
  engine.mode = parse_engine(engine_name);
  OpTally tally;
  const Field F(*params.ctx, tally);
  const PublicCurve out = action(F, params, key, start_curve(params), engine, seed);
  std::cout << "a " << to_hex(out.a) << "\n";
  print_tally(tally);
  return kOk;
}

int cmd_factorial(std::uint64_t ell, const std::string& modulus) {
  mpz_class n;
  if (n.set_str(modulus, 10) != 0 || n < 1) throw Error(Errc::Parse, "--mod must be a positive decimal integer");
  if (n == 1) {
    std::cout << "0\n";
    return kOk;
  }
  OpTally tally;
  std::cout << factorial_mod(ell, n, tally).get_str() << "\n";
  return kOk;
}

int cmd_qfact(const std::string& zeta_hex, const std::string& prime_hex, const std::string& range,
              const std::string& alpha_hex) {
  const auto ctx = FieldContext::create(parse_hex(prime_hex));
  std::vector<std::int64_t> parts;
  std::stringstream ss(range);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(parse_int(item));
  if (parts.size() != 3 || parts[1] <= 0 || parts[2] <= 0)
    throw Error(Errc::Parse, "--range must be m:r:n with r, n > 0");
  OpTally tally;
  const Field F(*ctx, tally);
  const IndexPair pair = ap_index_pair(parts[0], parts[1], parts[2]);
  const FieldElement v = geometric_hs(F, parse_element(*ctx, zeta_hex), pair, parse_element(*ctx, alpha_hex));
  std::cout << to_hex(v) << "\n";
  print_tally(tally);
  return kOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Parse:
    case Errc::WrongOrder:
    case Errc::UnknownParams:
      return kUsage;
    default:
      return kMath;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-root Velu isogeny toolkit"};
  app.require_subcommand(1);

  std::string filter;
  bool corrupt = false;
  std::uint64_t selftest_seed = 1;
  auto* st = app.add_subcommand("selftest", "Run the invariant suites at toy scale");
  st->add_option("--filter", filter, "Run only this module's suite");
  st->add_flag("--corrupt-biquadratic", corrupt, "Inject a fault into the biquadratic (negative control)");
  st->add_option("--seed", selftest_seed, "RNG seed");

  IsogenyArgs iso;
  auto* is = app.add_subcommand("isogeny", "Evaluate one ell-isogeny with kernel <P>");
  is->add_option("--prime", iso.prime, "Field prime (hex)")->required();
  is->add_option("--a", iso.a, "Montgomery coefficient a (hex)")->required();
  is->add_option("--xp", iso.xp, "x-coordinate of the kernel generator (hex)")->required();
  is->add_option("--ell", iso.ell, "Odd prime degree")->required();
  is->add_option("--push", iso.push, "x-coordinates to push through (hex)");
  is->add_option("--engine", iso.engine, "conventional, sqrt or auto");
  is->add_option("--b", iso.b, "Baby-step size for the sqrt engine");

  std::string params_name = "csidh512", ells_spec = "all", out_path;
  std::int64_t width = 2;
  auto* cr = app.add_subcommand("crossover", "Operation-count sweep over ell; CSV output");
  cr->add_option("--params", params_name, "toy419 or csidh512");
  cr->add_option("--ells", ells_spec, "all, lo:hi or a comma list");
  cr->add_option("--b-sweep", width, "Try default_b +- width");
  cr->add_option("--out", out_path, "CSV path (default stdout)");

  std::string cs_params = "toy419", key_text, cs_engine = "auto";
  std::uint64_t cs_seed = 1;
  auto* cs = app.add_subcommand("csidh", "Apply a CSIDH private key to the starting curve");
  cs->add_option("--params", cs_params, "toy419 or csidh512");
  cs->add_option("--key", key_text, "Comma-separated exponents")->required();
  cs->add_option("--engine", cs_engine, "conventional, sqrt or auto");
  cs->add_option("--seed", cs_seed, "Point-sampling seed");

  std::uint64_t f_ell = 0;
  std::string f_mod;
  auto* fa = app.add_subcommand("factorial", "ell! mod n");
  fa->add_option("--ell", f_ell, "ell")->required();
  fa->add_option("--mod", f_mod, "Modulus n (decimal)")->required();

  std::string q_zeta, q_prime, q_range, q_alpha;
  auto* qf = app.add_subcommand("qfact", "prod (alpha - zeta^s) over s = m, m+r, ..., m+(n-1)r");
  qf->add_option("--zeta", q_zeta, "zeta (hex)")->required();
  qf->add_option("--prime", q_prime, "Field prime (hex)")->required();
  qf->add_option("--range", q_range, "m:r:n")->required();
  qf->add_option("--alpha", q_alpha, "alpha (hex)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*st) return cmd_selftest(filter, corrupt, selftest_seed);
    if (*is) return cmd_isogeny(iso);
    if (*cr) return cmd_crossover(params_name, ells_spec, width, out_path);
    if (*cs) return cmd_csidh(cs_params, key_text, cs_engine, cs_seed);
    if (*fa) return cmd_factorial(f_ell, f_mod);
    if (*qf) return cmd_qfact(q_zeta, q_prime, q_range, q_alpha);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMath;
  }
  return kUsage;
}
