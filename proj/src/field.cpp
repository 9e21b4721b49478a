#include "sqrtvelu/field.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace sqrtvelu {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EvenModulus: return "EvenModulus";
    case Errc::CompositeModulus: return "CompositeModulus";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidIndexPair: return "InvalidIndexPair";
    case Errc::InvalidTuning: return "InvalidTuning";
    case Errc::InvalidDegree: return "InvalidDegree";
    case Errc::WrongOrder: return "WrongOrder";
    case Errc::IndexHitsIdentity: return "IndexHitsIdentity";
    case Errc::IdentityMultiple: return "IdentityMultiple";
    case Errc::KernelPointIsIdentity: return "KernelPointIsIdentity";
    case Errc::SingularCodomain: return "SingularCodomain";
    case Errc::UnknownParams: return "UnknownParams";
    case Errc::SharedSecretMismatch: return "SharedSecretMismatch";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void limbs_from_mpz(std::array<mp_limb_t, kMaxLimbs>& out, const mpz_class& v) {
  out.fill(0);
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(mp_limb_t), 0, 0, v.get_mpz_t());
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldContext

FieldContext::FieldContext(const mpz_class& n, bool is_field) : modulus_(n), is_field_(is_field) {
  bits_ = mpz_sizeinbase(n.get_mpz_t(), 2);
  nlimbs_ = mpz_size(n.get_mpz_t());
  limbs_from_mpz(mod_limbs_, n);
}

std::shared_ptr<const FieldContext> FieldContext::create(const mpz_class& p) {
  if (mpz_even_p(p.get_mpz_t())) throw Error(Errc::EvenModulus, "modulus " + p.get_str() + " is even");
  if (p < 3) throw Error(Errc::CompositeModulus, "modulus must be an odd prime >= 3");
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > kMaxLimbs * GMP_NUMB_BITS)
    throw Error(Errc::CompositeModulus, "modulus too large");
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw Error(Errc::CompositeModulus, "modulus " + p.get_str() + " is not prime");
  return std::shared_ptr<const FieldContext>(new FieldContext(p, true));
}

std::shared_ptr<const FieldContext> FieldContext::create_ring(const mpz_class& n) {
  if (n < 2) throw Error(Errc::CompositeModulus, "ring modulus must be >= 2");
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > kMaxLimbs * GMP_NUMB_BITS)
    throw Error(Errc::CompositeModulus, "modulus too large");
  return std::shared_ptr<const FieldContext>(new FieldContext(n, mpz_probab_prime_p(n.get_mpz_t(), 30) != 0 && n > 2));
}

FieldElement FieldContext::zero() const {
  FieldElement r;
  r.ctx_ = this;
  return r;
}

FieldElement FieldContext::one() const { return element(std::int64_t{1}); }

FieldElement FieldContext::element(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
  FieldElement e;
  e.ctx_ = this;
  limbs_from_mpz(e.limbs_, r);
  return e;
}

FieldElement FieldContext::element(std::int64_t v) const { return element(mpz_class(static_cast<long>(v))); }

FieldElement FieldContext::random(std::mt19937_64& rng) const {
  // Rejection sampling on bits_ random bits.
  FieldElement e;
  e.ctx_ = this;
  const std::size_t top_bits = bits_ - (nlimbs_ - 1) * GMP_NUMB_BITS;
  const mp_limb_t top_mask = top_bits == GMP_NUMB_BITS ? ~mp_limb_t{0} : ((mp_limb_t{1} << top_bits) - 1);
  for (;;) {
    for (std::size_t i = 0; i < nlimbs_; ++i) e.limbs_[i] = rng();
    e.limbs_[nlimbs_ - 1] &= top_mask;
    if (mpn_cmp(e.limbs_.data(), mod_limbs_.data(), static_cast<mp_size_t>(nlimbs_)) < 0) return e;
  }
}

// ---------------------------------------------------------------------------
// FieldElement

bool FieldElement::is_zero() const {
  return std::all_of(limbs_.begin(), limbs_.end(), [](mp_limb_t l) { return l == 0; });
}

bool FieldElement::is_one() const {
  if (limbs_[0] != 1) return false;
  return std::all_of(limbs_.begin() + 1, limbs_.end(), [](mp_limb_t l) { return l == 0; });
}

mpz_class FieldElement::to_mpz() const {
  mpz_class r;
  const std::size_t n = ctx_ ? ctx_->nlimbs_ : kMaxLimbs;
  mpz_import(r.get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0, limbs_.data());
  return r;
}

// ---------------------------------------------------------------------------
// Field

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  ++tally_->add_sub;
  FieldElement r;
  r.ctx_ = ctx_;
  const auto n = static_cast<mp_size_t>(ctx_->nlimbs_);
  const mp_limb_t* p = ctx_->mod_limbs_.data();
  if (n == 1) {
    const unsigned __int128 s = static_cast<unsigned __int128>(a.limbs_[0]) + b.limbs_[0];
    r.limbs_[0] = static_cast<mp_limb_t>(s >= p[0] ? s - p[0] : s);
    return r;
  }
  const mp_limb_t carry = mpn_add_n(r.limbs_.data(), a.limbs_.data(), b.limbs_.data(), n);
  if (carry || mpn_cmp(r.limbs_.data(), p, n) >= 0) mpn_sub_n(r.limbs_.data(), r.limbs_.data(), p, n);
  return r;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  ++tally_->add_sub;
  FieldElement r;
  r.ctx_ = ctx_;
  const auto n = static_cast<mp_size_t>(ctx_->nlimbs_);
  const mp_limb_t* p = ctx_->mod_limbs_.data();
  if (n == 1) {
    r.limbs_[0] = a.limbs_[0] >= b.limbs_[0] ? a.limbs_[0] - b.limbs_[0] : a.limbs_[0] + (p[0] - b.limbs_[0]);
    return r;
  }
  const mp_limb_t borrow = mpn_sub_n(r.limbs_.data(), a.limbs_.data(), b.limbs_.data(), n);
  if (borrow) mpn_add_n(r.limbs_.data(), r.limbs_.data(), p, n);
  return r;
}

FieldElement Field::neg(const FieldElement& a) const {
  check(a);
  ++tally_->add_sub;
  FieldElement r;
  r.ctx_ = ctx_;
  if (a.is_zero()) return r;
  mpn_sub_n(r.limbs_.data(), ctx_->mod_limbs_.data(), a.limbs_.data(), static_cast<mp_size_t>(ctx_->nlimbs_));
  return r;
}

namespace {

void mulmod(const mp_limb_t* a, const mp_limb_t* b, const mp_limb_t* p, mp_size_t n,
            mp_limb_t* out, bool square) {
  if (n == 1) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a[0]) * b[0];
    out[0] = static_cast<mp_limb_t>(prod % p[0]);
    return;
  }
  std::array<mp_limb_t, 2 * kMaxLimbs> wide;
  std::array<mp_limb_t, kMaxLimbs + 1> quot;
  if (square)
    mpn_sqr(wide.data(), a, n);
  else
    mpn_mul_n(wide.data(), a, b, n);
  mpn_tdiv_qr(quot.data(), out, 0, wide.data(), 2 * n, p, n);
}

}  // namespace

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  check(a);
  check(b);
  ++tally_->mul;
  FieldElement r;
  r.ctx_ = ctx_;
  mulmod(a.limbs_.data(), b.limbs_.data(), ctx_->mod_limbs_.data(), static_cast<mp_size_t>(ctx_->nlimbs_),
         r.limbs_.data(), false);
  return r;
}

FieldElement Field::sqr(const FieldElement& a) const {
  check(a);
  ++tally_->sqr;
  FieldElement r;
  r.ctx_ = ctx_;
  mulmod(a.limbs_.data(), a.limbs_.data(), ctx_->mod_limbs_.data(), static_cast<mp_size_t>(ctx_->nlimbs_),
         r.limbs_.data(), true);
  return r;
}

FieldElement Field::inv(const FieldElement& a) const {
  check(a);
  if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.to_mpz().get_mpz_t(), ctx_->modulus_.get_mpz_t()) == 0)
    throw Error(Errc::DivisionByZero, "element is not a unit");
  ++tally_->inv;
  return ctx_->element(r);
}

FieldElement Field::pow(const FieldElement& x, const mpz_class& e) const {
  check(x);
  if (e < 0) throw Error(Errc::DivisionByZero, "negative exponent");
  if (e == 0) return one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  FieldElement r = x;
  for (std::size_t i = bits - 1; i-- > 0;) {
    r = sqr(r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
  }
  return r;
}

bool Field::is_square(const FieldElement& x) const {
  const mpz_class half = (ctx_->modulus_ - 1) / 2;
  const FieldElement r = pow(x, half);
  return r.is_zero() || r.is_one();
}

void Field::batch_inv(std::span<FieldElement> xs) const {
  if (xs.empty()) return;
  std::vector<FieldElement> prefix(xs.size());
  prefix[0] = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) prefix[i] = mul(prefix[i - 1], xs[i]);
  FieldElement acc = inv(prefix.back());
  for (std::size_t i = xs.size(); i-- > 1;) {
    const FieldElement xi = xs[i];
    xs[i] = mul(acc, prefix[i - 1]);
    acc = mul(acc, xi);
  }
  xs[0] = acc;
}

Jet Field::jet_add(const Jet& u, const Jet& w) const { return {add(u.v, w.v), add(u.d, w.d)}; }

Jet Field::jet_sub(const Jet& u, const Jet& w) const { return {sub(u.v, w.v), sub(u.d, w.d)}; }

Jet Field::jet_mul(const Jet& u, const Jet& w) const {
  return {mul(u.v, w.v), add(mul(u.v, w.d), mul(u.d, w.v))};
}

Jet Field::jet_inv(const Jet& u) const {
  if (u.v.is_zero()) throw Error(Errc::DivisionByZero, "jet with zero value part");
  const FieldElement iv = inv(u.v);
  return {iv, neg(mul(sqr(iv), u.d))};
}

// ---------------------------------------------------------------------------
// Hex I/O

mpz_class parse_hex(std::string_view s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  if (s.empty()) throw Error(Errc::Parse, "empty hex string");
  for (char c : s)
    if (!std::isxdigit(static_cast<unsigned char>(c))) throw Error(Errc::Parse, "invalid hex digit in '" + std::string(s) + "'");
  return mpz_class(std::string(s), 16);
}

std::string to_hex(const mpz_class& v) { return v.get_str(16); }

std::string to_hex(const FieldElement& x) { return to_hex(x.to_mpz()); }

FieldElement parse_element(const FieldContext& ctx, std::string_view hex) {
  const mpz_class v = parse_hex(hex);
  if (v >= ctx.modulus()) throw Error(Errc::Parse, "residue not reduced modulo p");
  return ctx.element(v);
}

}  // namespace sqrtvelu
