#pragma once

#include <gmp.h>
#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "sqrtvelu/error.hpp"

namespace sqrtvelu {

// Largest supported modulus is kMaxLimbs * 64 bits.
inline constexpr std::size_t kMaxLimbs = 16;

// Counts of semantic field operations. Owned by the caller; merge with +=.
struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t sqr = 0;
  std::uint64_t add_sub = 0;
  std::uint64_t inv = 0;

  // Headline metric: multiplications including squarings.
  std::uint64_t mults() const { return mul + sqr; }

  OpTally& operator+=(const OpTally& o) {
    mul += o.mul;
    sqr += o.sqr;
    add_sub += o.add_sub;
    inv += o.inv;
    return *this;
  }
  friend OpTally operator+(OpTally a, const OpTally& b) { return a += b; }
  friend OpTally operator-(const OpTally& a, const OpTally& b) {
    return {a.mul - b.mul, a.sqr - b.sqr, a.add_sub - b.add_sub, a.inv - b.inv};
  }
  friend bool operator==(const OpTally&, const OpTally&) = default;
};

class FieldContext;

// A residue in [0, n) bound to one FieldContext. Plain data; copies are cheap
// (no allocation). The bound context must outlive the element.
class FieldElement {
 public:
  FieldElement() = default;

  const FieldContext* context() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;
  mpz_class to_mpz() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.ctx_ == b.ctx_ && a.limbs_ == b.limbs_;
  }

 private:
  friend class FieldContext;
  friend class Field;

  const FieldContext* ctx_ = nullptr;
  std::array<mp_limb_t, kMaxLimbs> limbs_{};
};

// Immutable modulus description. A field context requires an odd prime;
// a ring context (Z/nZ, any n >= 2) supports everything except inversion.
class FieldContext {
 public:
  static std::shared_ptr<const FieldContext> create(const mpz_class& p);
  static std::shared_ptr<const FieldContext> create_ring(const mpz_class& n);

  const mpz_class& modulus() const { return modulus_; }
  std::size_t bit_length() const { return bits_; }
  std::size_t limbs() const { return nlimbs_; }
  bool is_field() const { return is_field_; }

  // Uncounted conversions.
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(const mpz_class& v) const;  // reduced mod n
  FieldElement element(std::int64_t v) const;
  FieldElement random(std::mt19937_64& rng) const;

 private:
  FieldContext(const mpz_class& n, bool is_field);

  friend class Field;
  friend class FieldElement;

  mpz_class modulus_;
  std::array<mp_limb_t, kMaxLimbs> mod_limbs_{};
  std::size_t nlimbs_ = 0;
  std::size_t bits_ = 0;
  bool is_field_ = false;
};

// Element of F_p[eps]/(eps^2): value plus first-order part.
struct Jet {
  FieldElement v;
  FieldElement d;
};

// Counted arithmetic: binds one context to one caller-owned tally. Every
// operation charges exactly one unit to the matching tally category,
// except pow/is_square/batch_inv which charge their internal operations.
class Field {
 public:
  Field(const FieldContext& ctx, OpTally& tally) : ctx_(&ctx), tally_(&tally) {}

  const FieldContext& context() const { return *ctx_; }
  OpTally& tally() const { return *tally_; }

  FieldElement zero() const { return ctx_->zero(); }
  FieldElement one() const { return ctx_->one(); }
  FieldElement element(std::int64_t v) const { return ctx_->element(v); }
  FieldElement element(const mpz_class& v) const { return ctx_->element(v); }

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement dbl(const FieldElement& a) const { return add(a, a); }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement sqr(const FieldElement& a) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& x, const mpz_class& e) const;
  FieldElement pow(const FieldElement& x, std::uint64_t e) const { return pow(x, mpz_class(static_cast<unsigned long>(e))); }
  // Euler criterion; zero counts as a square.
  bool is_square(const FieldElement& x) const;

  // Montgomery's trick: one inversion and 3(n-1) multiplications.
  void batch_inv(std::span<FieldElement> xs) const;

  Jet jet_add(const Jet& u, const Jet& w) const;
  Jet jet_sub(const Jet& u, const Jet& w) const;
  Jet jet_mul(const Jet& u, const Jet& w) const;
  Jet jet_inv(const Jet& u) const;

 private:
  void check(const FieldElement& a) const {
    if (a.ctx_ != ctx_) throw Error(Errc::ContextMismatch, "operand bound to a different context");
  }

  const FieldContext* ctx_;
  OpTally* tally_;
};

// Hex I/O: lowercase, no leading zeros, optional 0x prefix on input.
mpz_class parse_hex(std::string_view s);
std::string to_hex(const mpz_class& v);
std::string to_hex(const FieldElement& x);
FieldElement parse_element(const FieldContext& ctx, std::string_view hex);

}  // namespace sqrtvelu
