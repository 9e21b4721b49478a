#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sqrtvelu/curve.hpp"
#include "sqrtvelu/field.hpp"

namespace sqrtvelu {

struct IsogenyOutput {
  MontgomeryCurve codomain;
  std::vector<XPoint> images;
};

enum class Engine { Conventional, Sqrt, Auto };

struct EngineChoice {
  Engine mode = Engine::Auto;
  // Auto uses the sqrt engine iff ell >= crossover_ell.
  std::int64_t crossover_ell = 113;
  // Per-degree b for the sqrt engine; missing entries use the default split.
  std::map<std::int64_t, std::int64_t> b_table;
  // Verify [ell]P = identity with a ladder before evaluating.
  bool check_order = true;
};

// Errors: InvalidDegree, KernelPointIsIdentity, WrongOrder, SingularCodomain.
IsogenyOutput velu_conventional(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                                const std::vector<XPoint>& push, bool check_order = true);
IsogenyOutput velu_sqrt(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                        const std::vector<XPoint>& push, std::optional<std::int64_t> b = {},
                        bool check_order = true);
IsogenyOutput isogeny_eval(const Field& F, const MontgomeryCurve& curve, const XPoint& P, std::int64_t ell,
                           const std::vector<XPoint>& push, const EngineChoice& engine);

// True iff isogeny_eval would take the sqrt path.
bool uses_sqrt(const EngineChoice& engine, std::int64_t ell);

const char* engine_name(Engine e);
// "conventional", "sqrt" or "auto"; throws Parse otherwise.
Engine parse_engine(const std::string& name);

}  // namespace sqrtvelu
