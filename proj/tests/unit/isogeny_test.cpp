#include "helpers.hpp"

#include "sqrtvelu/isogeny.hpp"
#include "sqrtvelu/testkit.hpp"

using namespace sqrtvelu;

namespace {

struct Setting {
  std::shared_ptr<const FieldContext> ctx;
  MontgomeryCurve curve;
  XPoint K;
};

Setting setting(std::int64_t ell, std::uint64_t seed, unsigned min_bits = 20, unsigned max_bits = 40) {
  std::mt19937_64 rng(seed);
  auto ctx = FieldContext::create(testkit::find_toy_prime(ell, min_bits, max_bits, rng));
  const MontgomeryCurve curve = affine_curve(*ctx, testkit::random_supersingular_a(*ctx, rng));
  const XPoint K = testkit::point_of_order(*ctx, curve, ell, rng);
  return {std::move(ctx), curve, K};
}

bool same_output(const IsogenyOutput& a, const IsogenyOutput& b) {
  if (affine_a(a.codomain) != affine_a(b.codomain) || a.images.size() != b.images.size()) return false;
  for (std::size_t i = 0; i < a.images.size(); ++i)
    if (testkit::x_of(a.images[i]) != testkit::x_of(b.images[i])) return false;
  return true;
}

using Engine_fn = IsogenyOutput (*)(const Field&, const MontgomeryCurve&, const XPoint&, std::int64_t,
                                    const std::vector<XPoint>&);

IsogenyOutput run_conv(const Field& F, const MontgomeryCurve& c, const XPoint& P, std::int64_t ell,
                       const std::vector<XPoint>& push) {
  return velu_conventional(F, c, P, ell, push);
}
IsogenyOutput run_sqrt(const Field& F, const MontgomeryCurve& c, const XPoint& P, std::int64_t ell,
                       const std::vector<XPoint>& push) {
  return velu_sqrt(F, c, P, ell, push);
}

}  // namespace

TEST_CASE("kernel and (0:1) images, both engines") {
  for (std::int64_t ell : {3, 5, 13, 37, 101}) {
    const Setting s = setting(ell, 70 + static_cast<std::uint64_t>(ell));
    OpTally t;
    const Field F(*s.ctx, t);
    for (Engine_fn fn : {&run_conv, &run_sqrt}) {
      const std::vector<XPoint> push{s.K, xdbl(F, s.K, s.curve), affine_point(*s.ctx, s.ctx->zero())};
      const IsogenyOutput out = fn(F, s.curve, s.K, ell, push);
      CAPTURE(ell);
      CHECK(out.images[0].is_infinity());
      CHECK(out.images[1].is_infinity());
      CHECK(testkit::x_of(out.images[2]) == mpz_class(0));
      CHECK(is_nonsingular(out.codomain));
    }
  }
}

TEST_CASE("ell = 3 on p = 419, a = 0 matches the Weierstrass Velu oracle") {
  const auto ctx = FieldContext::create(419);
  OpTally t;
  const Field F(*ctx, t);
  const MontgomeryCurve curve = affine_curve(*ctx, ctx->zero());
  // Brute-force 3-torsion: the x with [3]P = 0.
  std::optional<XPoint> K;
  for (int x = 1; x < 419 && !K; ++x) {
    const XPoint P = affine_point(*ctx, ctx->element(x));
    if (ladder(F, 3, P, curve).is_infinity()) K = P;
  }
  REQUIRE(K);
  const std::vector<XPoint> push{affine_point(*ctx, ctx->element(5)), affine_point(*ctx, ctx->element(77))};
  const IsogenyOutput conv = velu_conventional(F, curve, *K, 3, push);
  const IsogenyOutput sq = velu_sqrt(F, curve, *K, 3, push);
  CHECK(same_output(conv, sq));
  std::vector<std::optional<mpz_class>> imgs;
  for (const auto& q : conv.images) imgs.push_back(testkit::x_of(q));
  CHECK(testkit::velu_matches(419, 0, *testkit::x_of(*K), 3, affine_a(conv.codomain).to_mpz(), {5, 77}, imgs));
  // A wrong codomain is rejected by the oracle.
  CHECK_FALSE(testkit::velu_matches(419, 0, *testkit::x_of(*K), 3, affine_a(conv.codomain).to_mpz() + 1, {5, 77}, imgs));
}

TEST_CASE("property: engine equivalence for ell <= 101, 3 curves each") {
  std::mt19937_64 rng(71);
  CHECK_PROPERTY(checks::engine_equivalence(101, 3, rng));
}

TEST_CASE("ell = 587 cross-engine on a toy field") {
  const Setting s = setting(587, 72, 30, 40);
  OpTally t;
  const Field F(*s.ctx, t);
  std::mt19937_64 rng(73);
  const std::vector<XPoint> push{affine_point(*s.ctx, s.ctx->random(rng)), affine_point(*s.ctx, s.ctx->random(rng))};
  const EngineChoice conv = choice(Engine::Conventional), sq = choice(Engine::Sqrt);
  CHECK(same_output(isogeny_eval(F, s.curve, s.K, 587, push, conv), isogeny_eval(F, s.curve, s.K, 587, push, sq)));
}

TEST_CASE("auto engine selection") {
  EngineChoice autoc;
  CHECK(autoc.crossover_ell == 113);
  CHECK_FALSE(uses_sqrt(autoc, 3));
  CHECK_FALSE(uses_sqrt(autoc, 109));
  CHECK(uses_sqrt(autoc, 113));
  CHECK(uses_sqrt(choice(Engine::Sqrt), 3));
  CHECK_FALSE(uses_sqrt(choice(Engine::Conventional), 587));

  // The path taken is visible in the tally.
  for (std::int64_t ell : {3, 113}) {
    const Setting s = setting(ell, 74);
    OpTally ta, tc, ts;
    const std::vector<XPoint> push{affine_point(*s.ctx, s.ctx->element(5))};
    isogeny_eval(Field(*s.ctx, ta), s.curve, s.K, ell, push, autoc);
    velu_conventional(Field(*s.ctx, tc), s.curve, s.K, ell, push);
    velu_sqrt(Field(*s.ctx, ts), s.curve, s.K, ell, push);
    CHECK(ta == (ell == 3 ? tc : ts));
    CHECK_FALSE(tc == ts);
  }
}

TEST_CASE("engine names") {
  CHECK(parse_engine("conventional") == Engine::Conventional);
  CHECK(parse_engine("sqrt") == Engine::Sqrt);
  CHECK(parse_engine("auto") == Engine::Auto);
  CHECK_ERRC(parse_engine("fast"), Errc::Parse);
  CHECK(std::string(engine_name(Engine::Sqrt)) == "sqrt");
}

TEST_CASE("kernel errors") {
  const Setting s = setting(13, 75);
  OpTally t;
  const Field F(*s.ctx, t);
  for (Engine_fn fn : {&run_conv, &run_sqrt}) {
    CHECK_ERRC(fn(F, s.curve, s.K, 12, {}), Errc::InvalidDegree);
    CHECK_ERRC(fn(F, s.curve, infinity(*s.ctx), 13, {}), Errc::KernelPointIsIdentity);
    CHECK_ERRC(fn(F, s.curve, s.K, 11, {}), Errc::WrongOrder);
  }
  const MontgomeryCurve singular = affine_curve(*s.ctx, s.ctx->element(2));
  CHECK_ERRC(velu_conventional(F, singular, s.K, 13, {}, false), Errc::SingularCodomain);
}

TEST_CASE("isogeny law: points of order 4 ell map to points of order dividing 4") {
  for (std::int64_t ell : {5, 19, 61}) {
    const Setting s = setting(ell, 76 + static_cast<std::uint64_t>(ell));
    OpTally t;
    const Field F(*s.ctx, t);
    std::mt19937_64 rng(77);
    const mpz_class cof = (s.ctx->modulus() + 1) / (4 * ell);
    // Sample on the same side (curve or twist) as the kernel.
    const FieldElement a = affine_a(s.curve);
    auto side = [&](const FieldElement& x) { return F.is_square(F.mul(x, F.add(F.mul(x, F.add(x, a)), F.one()))); };
    const bool kernel_side = side(affine_x(s.K));
    std::vector<XPoint> push;
    while (push.size() < 3) {
      const FieldElement x = s.ctx->random(rng);
      if (side(x) == kernel_side) push.push_back(ladder(F, cof, affine_point(*s.ctx, x), s.curve));
    }
    for (Engine_fn fn : {&run_conv, &run_sqrt}) {
      const IsogenyOutput out = fn(F, s.curve, s.K, ell, push);
      for (const auto& q : out.images) CHECK(ladder(F, 4, q, out.codomain).is_infinity());
    }
  }
}

TEST_CASE("codomain does not depend on the chosen generator") {
  for (std::int64_t ell : {7, 29, 103}) {
    const Setting s = setting(ell, 78 + static_cast<std::uint64_t>(ell));
    OpTally t;
    const Field F(*s.ctx, t);
    const FieldElement a = affine_a(velu_sqrt(F, s.curve, s.K, ell, {}).codomain);
    for (std::int64_t k : {std::int64_t{2}, std::int64_t{3}, ell - 1}) {
      const XPoint G = ladder(F, k, s.K, s.curve);
      CHECK(affine_a(velu_sqrt(F, s.curve, G, ell, {}).codomain) == a);
      CHECK(affine_a(velu_conventional(F, s.curve, G, ell, {}).codomain) == a);
    }
  }
}

TEST_CASE("b override and projective inputs give the same result") {
  const Setting s = setting(197, 79);
  OpTally t;
  const Field F(*s.ctx, t);
  std::mt19937_64 rng(80);
  const FieldElement lam = s.ctx->element(987654), mu = s.ctx->element(1234);
  const std::vector<XPoint> push{{F.mul(s.ctx->random(rng), lam), lam}};
  const MontgomeryCurve scaled{F.mul(s.curve.A, mu), F.mul(s.curve.C, mu)};
  const XPoint K2{F.mul(s.K.X, lam), F.mul(s.K.Z, lam)};
  const IsogenyOutput ref = velu_conventional(F, s.curve, s.K, 197, push);
  for (std::int64_t b : {0, 3, 5, 7, 9})
    CHECK(same_output(velu_sqrt(F, scaled, K2, 197, push, b), ref));
}
