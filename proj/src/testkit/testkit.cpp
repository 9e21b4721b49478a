#include "sqrtvelu/testkit.hpp"

#include <stdexcept>

#include "sqrtvelu/isogeny.hpp"

namespace sqrtvelu::testkit {

mpz_class mod(const mpz_class& v, const mpz_class& p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return r;
}

mpz_class inv_mod(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), mod(v, p).get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("inv_mod: not invertible");
  return r;
}

namespace {

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& p) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), mod(b, p).get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r;
}

bool is_residue(const mpz_class& v, const mpz_class& p) {
  const mpz_class r = mod(v, p);
  return r == 0 || powm(r, (p - 1) / 2, p) == 1;
}

mpz_class non_residue(const mpz_class& p) {
  for (mpz_class z = 2;; ++z)
    if (!is_residue(z, p)) return z;
}

}  // namespace

std::optional<mpz_class> sqrt_mod(const mpz_class& v, const mpz_class& p) {
  const mpz_class n = mod(v, p);
  if (n == 0) return mpz_class(0);
  if (!is_residue(n, p)) return std::nullopt;
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  const mpz_class z = non_residue(p);
  mpz_class m = s, c = powm(z, q, p), t = powm(n, q, p), r = powm(n, (q + 1) / 2, p);
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long k = 0; k + i + 1 < m.get_ui(); ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

mpz_class AffineCurve::rhs(const mpz_class& x) const { return mod(x * x * x + a_ * x * x + x, p_); }

AffineCurve AffineCurve::containing(const mpz_class& p, const mpz_class& a, const mpz_class& x) {
  AffineCurve E(p, a);
  if (is_residue(E.rhs(x), p)) return E;
  return AffineCurve(p, a, non_residue(p));
}

AffinePoint AffineCurve::lift(const mpz_class& x) const {
  const auto y = sqrt_mod(rhs(x) * inv_mod(B_, p_), p_);
  if (!y) throw std::domain_error("lift: x is not on this curve");
  return {false, mod(x, p_), *y};
}

bool AffineCurve::on_curve(const AffinePoint& P) const {
  return P.inf || mod(B_ * P.y * P.y - rhs(P.x), p_) == 0;
}

AffinePoint AffineCurve::neg(const AffinePoint& P) const {
  if (P.inf) return P;
  return {false, P.x, mod(-P.y, p_)};
}

AffinePoint AffineCurve::add(const AffinePoint& P, const AffinePoint& Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  mpz_class lambda;
  if (P.x == Q.x) {
    if (mod(P.y + Q.y, p_) == 0) return {};
    lambda = mod((3 * P.x * P.x + 2 * a_ * P.x + 1) * inv_mod(2 * B_ * P.y, p_), p_);
  } else {
    lambda = mod((Q.y - P.y) * inv_mod(Q.x - P.x, p_), p_);
  }
  const mpz_class x3 = mod(B_ * lambda * lambda - a_ - P.x - Q.x, p_);
  const mpz_class y3 = mod(lambda * (P.x - x3) - P.y, p_);
  return {false, x3, y3};
}

AffinePoint AffineCurve::mul(mpz_class k, const AffinePoint& P) const {
  AffinePoint base = P, acc;
  if (k < 0) {
    k = -k;
    base = neg(P);
  }
  while (k > 0) {
    if (k % 2 == 1) acc = add(acc, base);
    base = add(base, base);
    k /= 2;
  }
  return acc;
}

AffinePoint AffineCurve::random_point(std::mt19937_64& rng) const {
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (;;) {
    const mpz_class x = gen.get_z_range(p_);
    const auto y = sqrt_mod(rhs(x) * inv_mod(B_, p_), p_);
    if (y) return {false, x, *y};
  }
}

mpz_class AffineCurve::order_dividing(const AffinePoint& P, const mpz_class& n) const {
  // Strip prime factors of n while [n/q]P stays the identity.
  mpz_class order = n;
  std::vector<mpz_class> primes;
  mpz_class m = n;
  for (mpz_class q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) primes.push_back(m);
  for (const auto& q : primes)
    while (order % q == 0 && mul(order / q, P).inf) order /= q;
  return order;
}

std::uint64_t AffineCurve::brute_order(const AffinePoint& P) const {
  std::uint64_t n = 1;
  for (AffinePoint Q = P; !Q.inf; Q = add(Q, P)) ++n;
  return n;
}

mpz_class montgomery_j(const mpz_class& a, const mpz_class& p) {
  const mpz_class t = mod(a * a - 3, p);
  return mod(256 * t * t * t * inv_mod(a * a - 4, p), p);
}

namespace {

struct Weierstrass {
  mpz_class A4, A6, shift;  // u = x + shift
};

Weierstrass to_weierstrass(const mpz_class& a, const mpz_class& p) {
  const mpz_class i3 = inv_mod(3, p), i27 = inv_mod(27, p);
  return {mod(1 - a * a * i3, p), mod(2 * a * a * a * i27 - a * i3, p), mod(a * i3, p)};
}

mpz_class weierstrass_j(const mpz_class& A4, const mpz_class& A6, const mpz_class& p) {
  const mpz_class c = 4 * A4 * A4 * A4;
  return mod(1728 * c * inv_mod(c + 27 * A6 * A6, p), p);
}

}  // namespace

bool velu_matches(const mpz_class& p, const mpz_class& a, const mpz_class& kernel_x, std::uint64_t ell,
                  const mpz_class& a_out, const std::vector<mpz_class>& pushed_x,
                  const std::vector<std::optional<mpz_class>>& x_images) {
  const AffineCurve E = AffineCurve::containing(p, a, kernel_x);
  const AffinePoint K = E.lift(kernel_x);
  if (E.brute_order(K) != ell) return false;
  const Weierstrass W = to_weierstrass(a, p);

  // Half of the kernel, u-coordinates and Velu's v_Q, u_Q (no 2-torsion).
  std::vector<mpz_class> uq, vq, wq;
  AffinePoint Q = K;
  for (std::uint64_t s = 1; s <= (ell - 1) / 2; ++s, Q = E.add(Q, K)) {
    const mpz_class u = mod(Q.x + W.shift, p);
    const mpz_class y2 = mod(u * u * u + W.A4 * u + W.A6, p);  // on the Weierstrass model
    uq.push_back(u);
    vq.push_back(mod(2 * (3 * u * u + W.A4), p));
    wq.push_back(mod(4 * y2, p));
  }
  mpz_class v = 0, w = 0;
  for (std::size_t t = 0; t < uq.size(); ++t) {
    v += vq[t];
    w += wq[t] + uq[t] * vq[t];
  }
  const mpz_class A4p = mod(W.A4 - 5 * v, p), A6p = mod(W.A6 - 7 * w, p);
  const mpz_class jv = weierstrass_j(A4p, A6p, p);
  if (jv != montgomery_j(a_out, p)) return false;
  if (jv == 0 || jv == 1728 % p) return true;

  const Weierstrass Wo = to_weierstrass(a_out, p);
  // (A4', A6') = (mu^4 A4o, mu^6 A6o).
  const mpz_class mu2 = mod(A6p * Wo.A4 * inv_mod(A4p * Wo.A6, p), p);
  if (mod(mu2 * mu2 * Wo.A4 - A4p, p) != 0) return false;

  if (pushed_x.size() != x_images.size()) return false;
  for (std::size_t t = 0; t < pushed_x.size(); ++t) {
    const mpz_class u = mod(pushed_x[t] + W.shift, p);
    mpz_class image = u;
    bool in_kernel = false;
    for (std::size_t s = 0; s < uq.size(); ++s) {
      const mpz_class d = mod(u - uq[s], p);
      if (d == 0) {
        in_kernel = true;
        break;
      }
      const mpz_class di = inv_mod(d, p);
      image += vq[s] * di + wq[s] * di * di;
    }
    if (in_kernel) {
      if (x_images[t]) return false;
      continue;
    }
    if (!x_images[t]) return false;
    const mpz_class expected = mod(mod(image, p) * inv_mod(mu2, p) - Wo.shift, p);
    if (expected != *x_images[t]) return false;
  }
  return true;
}

mpz_class find_toy_prime(std::uint64_t ell, unsigned min_bits, unsigned max_bits, std::mt19937_64& rng) {
  const mpz_class step = mpz_class(12) * static_cast<unsigned long>(ell);
  mpz_class lo = mpz_class(1) << (min_bits - 1), hi = mpz_class(1) << max_bits;
  const mpz_class cmin = lo / step + 1, cmax = (hi + 1) / step - 1;
  if (cmax < cmin) throw std::domain_error("find_toy_prime: range too small");
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (;;) {
    const mpz_class c = cmin + gen.get_z_range(cmax - cmin + 1);
    const mpz_class p = step * c - 1;
    if (is_prime(p)) return p;
  }
}

XPoint point_of_order(const FieldContext& ctx, const MontgomeryCurve& curve, std::uint64_t ell,
                      std::mt19937_64& rng) {
  OpTally scratch;
  const Field F(ctx, scratch);
  const mpz_class cofactor = (ctx.modulus() + 1) / static_cast<unsigned long>(ell);
  for (;;) {
    const XPoint K = ladder(F, cofactor, affine_point(ctx, ctx.random(rng)), curve);
    if (!K.is_infinity()) return K;
  }
}

FieldElement random_supersingular_a(const FieldContext& ctx, std::mt19937_64& rng, int steps) {
  OpTally scratch;
  const Field F(ctx, scratch);
  FieldElement a = ctx.zero();
  for (int i = 0; i < steps; ++i) {
    const MontgomeryCurve curve = affine_curve(ctx, a);
    const XPoint K = point_of_order(ctx, curve, 3, rng);
    a = affine_a(velu_conventional(F, curve, K, 3, {}).codomain);
  }
  return a;
}

std::optional<mpz_class> x_of(const XPoint& P) {
  if (P.is_infinity()) return std::nullopt;
  const mpz_class& p = P.X.context()->modulus();
  return mod(P.X.to_mpz() * inv_mod(P.Z.to_mpz(), p), p);
}

std::optional<FieldElement> multiple_x(const FieldContext& ctx, const MontgomeryCurve& curve, const XPoint& P,
                                       std::int64_t k) {
  OpTally scratch;
  const Field F(ctx, scratch);
  const XPoint Q = ladder(F, mpz_class(static_cast<long>(k < 0 ? -k : k)), P, curve);
  const auto x = x_of(Q);
  if (!x) return std::nullopt;
  return ctx.element(*x);
}

FieldElement naive_hs(const FieldContext& ctx, const MontgomeryCurve& curve, const XPoint& P,
                      const std::vector<std::int64_t>& S, const FieldElement& alpha) {
  const mpz_class& p = ctx.modulus();
  mpz_class acc = 1;
  for (auto s : S) {
    const auto x = multiple_x(ctx, curve, P, s);
    if (!x) throw std::domain_error("naive_hs: index hits the identity");
    acc = mod(acc * (alpha.to_mpz() - x->to_mpz()), p);
  }
  return ctx.element(acc);
}

mpz_class sylvester_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g, const mpz_class& p) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, 0));
  // Rows of shifted coefficients, highest degree first.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= m; ++c) M[r][r + c] = mod(f[m - c], p);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= n; ++c) M[n + r][r + c] = mod(g[n - c], p);
  mpz_class det = 1;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    while (piv < N && M[piv][c] == 0) ++piv;
    if (piv == N) return 0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = mod(-det, p);
    }
    det = mod(det * M[c][c], p);
    const mpz_class ic = inv_mod(M[c][c], p);
    for (std::size_t r = c + 1; r < N; ++r) {
      if (M[r][c] == 0) continue;
      const mpz_class factor = mod(M[r][c] * ic, p);
      for (std::size_t k = c; k < N; ++k) M[r][k] = mod(M[r][k] - factor * M[c][k], p);
    }
  }
  return det;
}

mpz_class naive_factorial(std::uint64_t ell, const mpz_class& n) {
  mpz_class acc = 1 % n;
  for (std::uint64_t k = 2; k <= ell; ++k) acc = acc * static_cast<unsigned long>(k) % n;
  return acc;
}

std::uint64_t trial_smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

}  // namespace sqrtvelu::testkit
