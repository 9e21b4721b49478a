#include "sqrtvelu/poly.hpp"

#include <algorithm>
#include <atomic>

namespace sqrtvelu {

namespace {

std::atomic<std::size_t> g_karatsuba_threshold{32};

using Coeffs = std::vector<FieldElement>;
using CSpan = std::span<const FieldElement>;

void schoolbook(const Field& F, CSpan a, CSpan b, Coeffs& out) {
  // Row 0 and the last column write fresh slots; everything else accumulates.
  out.assign(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const FieldElement t = F.mul(a[i], b[j]);
      out[i + j] = (i == 0 || j + 1 == b.size()) ? t : F.add(out[i + j], t);
    }
  }
}

void add_into(const Field& F, Coeffs& acc, CSpan x, std::size_t shift) {
  if (acc.size() < x.size() + shift) acc.resize(x.size() + shift, F.zero());
  for (std::size_t i = 0; i < x.size(); ++i) acc[i + shift] = F.add(acc[i + shift], x[i]);
}

Coeffs sum(const Field& F, CSpan a, CSpan b) {
  Coeffs r(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = F.add(a[i], b[i]);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  return r;
}

void karatsuba(const Field& F, CSpan a, CSpan b, Coeffs& out) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) {
    out.clear();
    return;
  }
  if (b.size() < g_karatsuba_threshold.load(std::memory_order_relaxed) || b.size() < 2) {
    schoolbook(F, a, b, out);
    return;
  }
  const std::size_t h = (a.size() + 1) / 2;
  if (b.size() <= h) {
    // Unbalanced: multiply b against consecutive blocks of a.
    out.assign(a.size() + b.size() - 1, F.zero());
    Coeffs part;
    bool first = true;
    for (std::size_t off = 0; off < a.size(); off += b.size()) {
      const std::size_t len = std::min(b.size(), a.size() - off);
      karatsuba(F, a.subspan(off, len), b, part);
      if (first) {
        std::copy(part.begin(), part.end(), out.begin());
        first = false;
      } else {
        add_into(F, out, part, off);
      }
    }
    return;
  }
  const CSpan a0 = a.first(h), a1 = a.subspan(h), b0 = b.first(h), b1 = b.subspan(h);
  Coeffs z0, z2, z1;
  karatsuba(F, a0, b0, z0);
  karatsuba(F, a1, b1, z2);
  const Coeffs sa = sum(F, a0, a1), sb = sum(F, b0, b1);
  karatsuba(F, sa, sb, z1);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = F.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = F.sub(z1[i], z2[i]);
  out.assign(a.size() + b.size() - 1, F.zero());
  std::copy(z0.begin(), z0.end(), out.begin());
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = z2[i];
  add_into(F, out, z1, h);
  out.resize(a.size() + b.size() - 1);
}

Coeffs low_product(const Field& F, CSpan a, CSpan b, std::size_t n) {
  a = a.first(std::min(a.size(), n));
  b = b.first(std::min(b.size(), n));
  if (a.empty() || b.empty() || n == 0) return {};
  const std::size_t len = std::min(n, a.size() + b.size() - 1);
  if (std::min(a.size(), b.size()) >= g_karatsuba_threshold.load(std::memory_order_relaxed)) {
    Coeffs full;
    karatsuba(F, a, b, full);
    full.resize(len);
    return full;
  }
  Coeffs out(len, F.zero());
  std::vector<bool> touched(len, false);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      const FieldElement t = F.mul(a[i], b[j]);
      out[i + j] = touched[i + j] ? F.add(out[i + j], t) : t;
      touched[i + j] = true;
    }
  }
  return out;
}

}  // namespace

std::size_t karatsuba_threshold() { return g_karatsuba_threshold.load(); }

void set_karatsuba_threshold(std::size_t n) { g_karatsuba_threshold.store(std::max<std::size_t>(n, 2)); }

Poly add(const Field& F, const Poly& f, const Poly& g) { return Poly(sum(F, f.coeffs(), g.coeffs())); }

Poly sub(const Field& F, const Poly& f, const Poly& g) {
  Coeffs r(std::max(f.size(), g.size()), F.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < f.size() && i < g.size())
      r[i] = F.sub(f[i], g[i]);
    else
      r[i] = i < f.size() ? f[i] : F.neg(g[i]);
  }
  return Poly(std::move(r));
}

Poly mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  Coeffs out;
  karatsuba(F, f.coeffs(), g.coeffs(), out);
  return Poly(std::move(out));
}

Poly mul_low(const Field& F, const Poly& f, const Poly& g, std::size_t n) {
  return Poly(low_product(F, f.coeffs(), g.coeffs(), n));
}

Poly reversed(const Poly& f, std::size_t n) {
  if (n == 0) return {};
  const FieldElement zero = f.is_zero() ? FieldElement{} : f[0].context()->zero();
  Coeffs r(n, zero);
  for (std::size_t i = 0; i < n && i < f.size(); ++i) r[n - 1 - i] = f[i];
  return Poly(std::move(r));
}

Poly derivative(const Field& F, const Poly& f) {
  if (f.size() <= 1) return {};
  Coeffs r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(F.element(static_cast<std::int64_t>(i)), f[i]);
  return Poly(std::move(r));
}

FieldElement eval(const Field& F, const Poly& f, const FieldElement& x) {
  if (f.is_zero()) return F.zero();
  FieldElement acc = f.leading();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

Jet eval_jet(const Field& F, const Poly& f, const Jet& at) {
  if (f.is_zero()) return {F.zero(), F.zero()};
  Jet acc{f.leading(), F.zero()};
  for (std::size_t i = f.size() - 1; i-- > 0;) {
    acc = F.jet_mul(acc, at);
    acc.v = F.add(acc.v, f[i]);
  }
  return acc;
}

namespace {

Coeffs series_inverse(const Field& F, const Poly& f, std::size_t n) {
  if (f.is_zero() || f[0].is_zero()) throw Error(Errc::DivisionByZero, "series with zero constant term");
  if (n == 0) return {};
  Coeffs r{f[0].is_one() ? F.one() : F.inv(f[0])};
  std::size_t prec = 1;
  while (prec < n) {
    const std::size_t next = std::min(2 * prec, n);
    // r <- r - r * (f*r - 1), where f*r - 1 vanishes below Z^prec.
    Coeffs t = low_product(F, f.coeffs(), r, next);
    t.resize(next, F.zero());
    const CSpan err = CSpan(t).subspan(prec);
    Coeffs corr = low_product(F, r, err, next - prec);
    r.resize(next, F.zero());
    for (std::size_t i = 0; i < corr.size(); ++i) r[prec + i] = F.neg(corr[i]);
    prec = next;
  }
  return r;
}

// f mod g for monic g of degree m, given 1/rev(g) to at least k = deg f - m + 1 terms.
Poly rem_with_recip(const Field& F, const Poly& f, const Poly& g, CSpan recip) {
  const int m = g.degree();
  const int n = f.degree();
  if (n < m) return f;
  const auto k = static_cast<std::size_t>(n - m + 1);
  Coeffs frev(k);
  for (std::size_t i = 0; i < k; ++i) frev[i] = f[static_cast<std::size_t>(n) - i];
  Coeffs qrev = low_product(F, frev, recip, k);
  qrev.resize(k, F.zero());
  std::reverse(qrev.begin(), qrev.end());
  const auto mm = static_cast<std::size_t>(m);
  Coeffs qg = low_product(F, qrev, g.coeffs(), mm);
  qg.resize(mm, F.zero());
  Coeffs r(mm);
  for (std::size_t i = 0; i < mm; ++i) r[i] = F.sub(f[i], qg[i]);
  return Poly(std::move(r));
}

}  // namespace

Poly inverse_series(const Field& F, const Poly& f, std::size_t n) { return Poly(series_inverse(F, f, n)); }

Poly rem_monic(const Field& F, const Poly& f, const Poly& g) {
  if (g.is_zero() || !g.leading().is_one()) throw Error(Errc::DivisionByZero, "divisor must be monic");
  if (f.degree() < g.degree()) return f;
  const auto k = static_cast<std::size_t>(f.degree() - g.degree() + 1);
  const Coeffs recip = series_inverse(F, reversed(g, g.size()), k);
  return rem_with_recip(F, f, g, recip);
}

ProductTree product_tree(const Field& F, std::vector<Poly> factors) {
  if (factors.empty()) throw Error(Errc::EmptyInput, "product tree needs at least one factor");
  ProductTree t;
  t.levels.push_back(std::move(factors));
  while (t.levels.back().size() > 1) {
    const auto& prev = t.levels.back();
    std::vector<Poly> next;
    next.reserve((prev.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(mul(F, prev[i], prev[i + 1]));
    if (prev.size() % 2 == 1) next.push_back(prev.back());
    t.levels.push_back(std::move(next));
  }
  return t;
}

Poly product(const Field& F, std::vector<Poly> factors) {
  if (factors.empty()) return Poly({F.one()});
  // Same pairing as product_tree without retaining the levels.
  while (factors.size() > 1) {
    std::vector<Poly> next;
    next.reserve((factors.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(mul(F, factors[i], factors[i + 1]));
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

namespace {

std::atomic<std::size_t> g_tree_cutoff{64};

std::vector<Poly> linear_factors(const Field& F, std::span<const FieldElement> roots) {
  std::vector<Poly> leaves;
  leaves.reserve(roots.size());
  for (const auto& r : roots) leaves.emplace_back(Coeffs{F.neg(r), F.one()});
  return leaves;
}

// Product of monic f and g without multiplying by the leading ones:
// (f' + Z^m)(g' + Z^n) = f'g' + Z^m g' + Z^n f' + Z^(m+n).
Poly mul_monic(const Field& F, const Poly& f, const Poly& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  const CSpan fl = CSpan(f.coeffs()).first(m), gl = CSpan(g.coeffs()).first(n);
  Coeffs out;
  if (m > 0 && n > 0) karatsuba(F, fl, gl, out);
  out.resize(m + n + 1, F.zero());
  std::vector<bool> used(m + n + 1, false);
  for (std::size_t i = 0; i + 1 < m + n && m > 0 && n > 0; ++i) used[i] = true;
  auto put = [&](std::size_t i, const FieldElement& v) {
    out[i] = used[i] ? F.add(out[i], v) : v;
    used[i] = true;
  };
  for (std::size_t i = 0; i < n; ++i) put(m + i, gl[i]);
  for (std::size_t i = 0; i < m; ++i) put(n + i, fl[i]);
  out[m + n] = F.one();
  return Poly(std::move(out));
}

ProductTree monic_product_tree(const Field& F, std::vector<Poly> leaves) {
  ProductTree t;
  t.levels.push_back(std::move(leaves));
  while (t.levels.back().size() > 1) {
    const auto& prev = t.levels.back();
    std::vector<Poly> next;
    next.reserve((prev.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(mul_monic(F, prev[i], prev[i + 1]));
    if (prev.size() % 2 == 1) next.push_back(prev.back());
    t.levels.push_back(std::move(next));
  }
  return t;
}

}  // namespace

std::size_t remainder_tree_cutoff() { return g_tree_cutoff.load(); }

void set_remainder_tree_cutoff(std::size_t n) { g_tree_cutoff.store(std::max<std::size_t>(n, 2)); }

Poly poly_from_roots(const Field& F, std::span<const FieldElement> roots) {
  if (roots.empty()) return Poly({F.one()});
  return monic_product_tree(F, linear_factors(F, roots)).root();
}

RemainderTree::RemainderTree(const Field& F, std::span<const FieldElement> points, std::size_t max_input_degree)
    : points_(points.begin(), points.end()), max_degree_(max_input_degree) {
  if (points.empty()) throw Error(Errc::EmptyInput, "remainder tree needs at least one point");
  cutoff_ = remainder_tree_cutoff();
  if (points.size() < cutoff_) return;
  tree_ = monic_product_tree(F, linear_factors(F, points));
  // Reciprocals for every node at or above the cutoff whose incoming dividend
  // can reach its degree: the root sees inputs up to max_input_degree, any
  // other node sees remainders of degree < deg(parent).
  const std::size_t top = tree_.levels.size() - 1;
  recips_.resize(tree_.levels.size());
  for (std::size_t level = top; level >= 1; --level) {
    const auto& nodes = tree_.levels[level];
    recips_[level].resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto m = static_cast<std::size_t>(nodes[k].degree());
      if (m < cutoff_) continue;
      const std::size_t incoming = level == top
                                       ? max_input_degree
                                       : static_cast<std::size_t>(tree_.levels[level + 1][k / 2].degree()) - 1;
      if (incoming >= m) recips_[level][k] = series_inverse(F, reversed(nodes[k], m + 1), incoming - m + 1);
    }
  }
}

Poly RemainderTree::reduce(const Field& F, const Poly& f, std::size_t level, std::size_t index) const {
  const Poly& node = tree_.levels[level][index];
  if (f.degree() < node.degree()) return f;
  const auto& recip = recips_[level][index];
  if (static_cast<int>(recip.size()) < f.degree() - node.degree() + 1) return rem_monic(F, f, node);
  return rem_with_recip(F, f, node, recip);
}

void RemainderTree::descend(const Field& F, const Poly& f, std::size_t level, std::size_t index,
                            std::vector<FieldElement>& out) const {
  const std::size_t first = index << level;
  const std::size_t last = std::min(points_.size(), (index + 1) << level);
  // Small nodes: Horner on each point. With schoolbook division this costs
  // exactly as much as descending further, so nothing is lost.
  if (level == 0 || static_cast<std::size_t>(tree_.levels[level][index].degree()) < cutoff_) {
    for (std::size_t i = first; i < last; ++i) out[i] = eval(F, f, points_[i]);
    return;
  }
  const Poly r = reduce(F, f, level, index);
  const std::size_t left = 2 * index;
  descend(F, r, level - 1, left, out);
  if (left + 1 < tree_.levels[level - 1].size()) descend(F, r, level - 1, left + 1, out);
}

std::vector<FieldElement> RemainderTree::evaluate(const Field& F, const Poly& f) const {
  std::vector<FieldElement> out(points_.size());
  if (!has_tree()) {
    for (std::size_t i = 0; i < points_.size(); ++i) out[i] = eval(F, f, points_[i]);
    return out;
  }
  descend(F, f, tree_.levels.size() - 1, 0, out);
  return out;
}

std::vector<FieldElement> multipoint_eval(const Field& F, const Poly& f, std::span<const FieldElement> points) {
  if (points.empty()) throw Error(Errc::EmptyInput, "no evaluation points");
  const RemainderTree tree(F, points, static_cast<std::size_t>(std::max(f.degree(), 0)));
  return tree.evaluate(F, f);
}

FieldElement resultant_via_roots(const Field& F, std::span<const FieldElement> roots, const Poly& g) {
  if (roots.empty()) throw Error(Errc::EmptyInput, "resultant against an empty root list");
  const auto values = multipoint_eval(F, g, roots);
  FieldElement acc = values[0];
  for (std::size_t i = 1; i < values.size(); ++i) acc = F.mul(acc, values[i]);
  return acc;
}

}  // namespace sqrtvelu
