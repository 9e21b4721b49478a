#pragma once

#include <stdexcept>
#include <string>

namespace sqrtvelu {

enum class Errc {
  EvenModulus,
  CompositeModulus,
  ContextMismatch,
  DivisionByZero,
  EmptyInput,
  InvalidIndexPair,
  InvalidTuning,
  InvalidDegree,
  WrongOrder,
  IndexHitsIdentity,
  IdentityMultiple,
  KernelPointIsIdentity,
  SingularCodomain,
  UnknownParams,
  SharedSecretMismatch,
  Parse,
};

const char* errc_name(Errc code);

// All library failures are reported through this type; code() identifies
// the failure class so callers (and the CLI exit-code mapping) can branch.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sqrtvelu
