#include "gf.hpp"

#include <numeric>

namespace hk {

namespace {

// Dense little-endian polynomials over F_p, used only for modulus selection
// and field arithmetic; degrees stay tiny (<= 8 for the test corpus).
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (int)((c[i + j] + (long long)a[i] * b[j]) % p);
  trim(c);
  return c;
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  int dm = (int)m.size() - 1;
  while ((int)a.size() - 1 >= dm) {
    int k = (int)a.size() - 1 - dm;
    int c = a.back();
    for (int i = 0; i <= dm; ++i) {
      a[k + i] = ((a[k + i] - (long long)c * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, int p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic before reducing
    int lead = b.back();
    if (lead != 1) {
      int inv = 1;  // p is tiny; find the inverse by scan
      for (int c = 1; c < p; ++c)
        if ((c * lead) % p == 1) { inv = c; break; }
      for (auto& c : b) c = (c * inv) % p;
    }
    Poly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^k) mod m via repeated p-th powers.
Poly x_p_power(int k, const Poly& m, int p) {
  Poly x = {0, 1};
  Poly r = poly_mod(x, m, p);
  for (int i = 0; i < k; ++i) {
    // r = r^p mod m
    Poly acc = {1};
    Poly base = r;
    int e = p;
    while (e > 0) {
      if (e & 1) acc = poly_mod(poly_mul(acc, base, p), m, p);
      base = poly_mod(poly_mul(base, base, p), m, p);
      e >>= 1;
    }
    r = acc;
  }
  return r;
}

bool is_irreducible(const Poly& m, int p) {
  int d = (int)m.size() - 1;
  // x^(p^d) == x mod m
  Poly xpd = x_p_power(d, m, p);
  Poly x = poly_mod({0, 1}, m, p);
  if (poly_sub(xpd, x, p) != Poly{}) return false;
  // gcd(x^(p^(d/r)) - x, m) == 1 for each prime r | d
  for (int r = 2; r <= d; ++r) {
    if (d % r != 0) continue;
    bool rprime = true;
    for (int s = 2; s * s <= r; ++s)
      if (r % s == 0) { rprime = false; break; }
    if (!rprime) continue;
    Poly g = poly_gcd(m, poly_sub(x_p_power(d / r, m, p), x, p), p);
    if ((int)g.size() - 1 != 0) return false;
  }
  return true;
}

}  // namespace

GF::GF(int p, int deg) : p_(p), deg_(deg) {
  uint64_t s = 1;
  for (int i = 0; i < deg; ++i) s *= (uint64_t)p;
  if (s > (1u << 30)) throw std::runtime_error("field too large");
  size_ = (uint32_t)s;
  if (deg == 1) {
    mod_ = {0};  // f = t
    return;
  }
  // Least encoding of (c_0..c_{d-1}) with t^d + sum c_i t^i irreducible.
  for (uint32_t code = 0;; ++code) {
    if (code >= size_) throw std::runtime_error("no irreducible found");
    std::vector<int> lo(deg);
    uint32_t c = code;
    for (int i = 0; i < deg; ++i) { lo[i] = (int)(c % (uint32_t)p); c /= (uint32_t)p; }
    Poly m(lo.begin(), lo.end());
    m.push_back(1);
    if (is_irreducible(m, p)) {
      mod_ = lo;
      return;
    }
  }
}

std::vector<int> GF::decode(uint32_t a) const {
  std::vector<int> v(deg_);
  for (int i = 0; i < deg_; ++i) { v[i] = (int)(a % (uint32_t)p_); a /= (uint32_t)p_; }
  return v;
}

uint32_t GF::encode(const std::vector<int>& v) const {
  uint32_t a = 0;
  for (int i = deg_ - 1; i >= 0; --i) a = a * (uint32_t)p_ + (uint32_t)(i < (int)v.size() ? v[i] : 0);
  return a;
}

uint32_t GF::from_int(long long c) const {
  long long r = ((c % p_) + p_) % p_;
  return (uint32_t)r;
}

uint32_t GF::add(uint32_t a, uint32_t b) const {
  auto va = decode(a), vb = decode(b);
  for (int i = 0; i < deg_; ++i) va[i] = (va[i] + vb[i]) % p_;
  return encode(va);
}

uint32_t GF::sub(uint32_t a, uint32_t b) const {
  auto va = decode(a), vb = decode(b);
  for (int i = 0; i < deg_; ++i) va[i] = ((va[i] - vb[i]) % p_ + p_) % p_;
  return encode(va);
}

uint32_t GF::neg(uint32_t a) const { return sub(0, a); }

uint32_t GF::mul(uint32_t a, uint32_t b) const {
  auto va = decode(a), vb = decode(b);
  std::vector<int> c(2 * deg_ - 1, 0);
  for (int i = 0; i < deg_; ++i)
    for (int j = 0; j < deg_; ++j)
      c[i + j] = (int)((c[i + j] + (long long)va[i] * vb[j]) % p_);
  // reduce by t^d = -sum c_i t^i
  for (int k = 2 * deg_ - 2; k >= deg_; --k) {
    int coef = c[k];
    if (coef == 0) continue;
    c[k] = 0;
    for (int i = 0; i < deg_; ++i)
      c[k - deg_ + i] = ((c[k - deg_ + i] - coef * mod_[i]) % p_ + p_) % p_;
  }
  c.resize(deg_);
  return encode(c);
}

uint32_t GF::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

uint32_t GF::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, (uint64_t)size_ - 2);
}

uint32_t GF::embed_root(const GF& sub) const {
  if (deg_ % sub.deg() != 0 || p_ != sub.p())
    throw std::domain_error("not a subfield");
  if (sub.deg() == 1) return 0;  // unused: prime subfield embeds via from_int
  for (uint32_t r = 0; r < size_; ++r) {
    // evaluate sub's modulus at r
    uint32_t acc = pow(r, (uint64_t)sub.deg());
    for (int i = 0; i < sub.deg(); ++i)
      acc = add(acc, mul(from_int(sub.modulus()[i]), pow(r, (uint64_t)i)));
    if (acc == 0) return r;
  }
  throw std::runtime_error("no root of subfield modulus");
}

uint32_t GF::embed(const GF& sub, uint32_t elem, uint32_t root) const {
  uint32_t acc = 0;
  uint32_t rp = 1;
  for (int i = 0; i < sub.deg(); ++i) {
    int digit = (int)(elem % (uint32_t)p_);
    elem /= (uint32_t)p_;
    acc = add(acc, mul(from_int(digit), rp));
    rp = mul(rp, root);
  }
  return acc;
}

}  // namespace hk
