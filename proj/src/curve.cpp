#include "curve.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace hk {

Curve::Curve(std::string name, int p, int e, std::array<uint32_t, 5> a, Pt x0)
    : name_(std::move(name)), p_(p), e_(e), a_(a), x0_(x0) {
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  guard_ = 1000000;
  if (const char* g = std::getenv("HECKE_ATLAS_GUARD")) {
    long long v = std::atoll(g);
    if (v > 0) guard_ = v;
  }
  const Level& L1 = level(1);
  a_trace_ = (int)(q_ + 1 - (long long)L1.pts.size());
  // Hasse bound sanity
  if ((long long)a_trace_ * a_trace_ > 4 * q_)
    throw std::runtime_error("curve violates the Hasse bound (singular?)");
}

long long Curve::N(int n) const {
  // N_n = q^n + 1 - t_n with t_0 = 2, t_1 = a, t_{k+1} = a t_k - q t_{k-1}.
  long long t0 = 2, t1 = a_trace_;
  long long qn = q_;
  if (n == 1) return q_ + 1 - t1;
  for (int k = 2; k <= n; ++k) {
    long long t2 = a_trace_ * t1 - q_ * t0;
    t0 = t1;
    t1 = t2;
    qn *= q_;
  }
  return qn + 1 - t1;
}

uint64_t Curve::key(int n, const Pt& P) const {
  if (P.inf) return 0;
  const GF& F = level(n).F;
  return 1 + (uint64_t)P.x * F.size() + P.y;
}

bool Curve::on_curve(const Level& L, const Pt& P) const {
  if (P.inf) return true;
  const GF& F = L.F;
  uint32_t lhs = F.add(F.mul(P.y, P.y),
                       F.mul(P.y, F.add(F.mul(L.a1, P.x), L.a3)));
  uint32_t x2 = F.mul(P.x, P.x);
  uint32_t rhs = F.add(F.add(F.mul(P.x, x2), F.mul(L.a2, x2)),
                       F.add(F.mul(L.a4, P.x), L.a6));
  return lhs == rhs;
}

const Curve::Level& Curve::level(int n) const {
  auto it = levels_.find(n);
  if (it != levels_.end()) return *it->second;
  long long size = 1;
  for (int i = 0; i < e_ * n; ++i) {
    size *= p_;
    if (size > guard_) throw std::runtime_error("enumeration guard exceeded");
  }
  auto L = std::make_unique<Level>(GF(p_, e_ * n));
  const GF& F = L->F;
  // embed base-field coefficients
  if (n == 1) {
    L->a1 = a_[0]; L->a2 = a_[1]; L->a3 = a_[2]; L->a4 = a_[3]; L->a6 = a_[4];
    L->x0 = x0_;
  } else {
    GF base(p_, e_);
    uint32_t r = F.embed_root(base);
    if (e_ == 1) {
      // prime base field: digits are constants
      L->a1 = F.from_int((long long)a_[0]);
      L->a2 = F.from_int((long long)a_[1]);
      L->a3 = F.from_int((long long)a_[2]);
      L->a4 = F.from_int((long long)a_[3]);
      L->a6 = F.from_int((long long)a_[4]);
      L->x0 = x0_.inf ? Pt{} : Pt{false, F.from_int((long long)x0_.x),
                                  F.from_int((long long)x0_.y)};
    } else {
      L->a1 = F.embed(base, a_[0], r);
      L->a2 = F.embed(base, a_[1], r);
      L->a3 = F.embed(base, a_[2], r);
      L->a4 = F.embed(base, a_[3], r);
      L->a6 = F.embed(base, a_[4], r);
      L->x0 = x0_.inf ? Pt{} : Pt{false, F.embed(base, x0_.x, r),
                                  F.embed(base, x0_.y, r)};
    }
  }
  // enumerate points
  L->pts.push_back(Pt{});  // infinity
  for (uint32_t x = 0; x < F.size(); ++x)
    for (uint32_t y = 0; y < F.size(); ++y) {
      Pt P{false, x, y};
      if (on_curve(*L, P)) L->pts.push_back(P);
    }
  if (!on_curve(*L, L->x0)) throw std::runtime_error("base point not on curve");
  auto* raw = L.get();
  levels_[n] = std::move(L);
  // cross-verify against the Hasse recursion (only meaningful for n > 1;
  // for n = 1 the recursion is seeded from this enumeration)
  if (a_trace_ != 0 || n > 1) {
    if ((long long)raw->pts.size() != N(n) && n > 1)
      throw std::runtime_error("point count disagrees with Hasse recursion");
  }
  return *raw;
}

Pt Curve::std_neg(int n, Pt P) const {
  if (P.inf) return P;
  const Level& L = level(n);
  const GF& F = L.F;
  // -(x,y) = (x, -y - a1 x - a3)
  return Pt{false, P.x, F.sub(F.neg(P.y), F.add(F.mul(L.a1, P.x), L.a3))};
}

Pt Curve::std_add(int n, Pt P, Pt Q) const {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const Level& L = level(n);
  const GF& F = L.F;
  if (P.x == Q.x && Q == std_neg(n, P)) return Pt{};  // P + (-P)
  uint32_t lam, nu;
  if (P.x != Q.x) {
    uint32_t dx = F.sub(Q.x, P.x);
    lam = F.mul(F.sub(Q.y, P.y), F.inv(dx));
    nu = F.mul(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), F.inv(dx));
  } else {
    // tangent: lambda = (3x^2 + 2a2 x + a4 - a1 y) / (2y + a1 x + a3)
    uint32_t den = F.add(F.add(P.y, P.y), F.add(F.mul(L.a1, P.x), L.a3));
    uint32_t x2 = F.mul(P.x, P.x);
    uint32_t num = F.sub(F.add(F.add(F.add(x2, x2), x2),
                               F.add(F.add(F.mul(L.a2, P.x), F.mul(L.a2, P.x)), L.a4)),
                         F.mul(L.a1, P.y));
    lam = F.mul(num, F.inv(den));
    // nu = (-x^3 + a4 x + 2 a6 - a3 y) / (2y + a1 x + a3)
    uint32_t nun = F.sub(F.add(F.add(F.mul(L.a4, P.x), F.add(L.a6, L.a6)),
                               F.neg(F.mul(P.x, x2))),
                         F.mul(L.a3, P.y));
    nu = F.mul(nun, F.inv(den));
  }
  uint32_t x3 = F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(L.a1, lam)),
                            F.add(L.a2, F.add(P.x, Q.x))), 0);
  uint32_t y3 = F.sub(F.neg(F.mul(F.add(lam, L.a1), x3)), F.add(nu, L.a3));
  return Pt{false, x3, y3};
}

Pt Curve::add(int n, const Pt& P, const Pt& Q) const {
  // class(P - x0) + class(Q - x0) = class(R - x0) with R = P + Q - x0
  return std_add(n, std_add(n, P, Q), std_neg(n, zero(n)));
}

Pt Curve::neg(int n, const Pt& P) const {
  // R with R - x0 ~ x0 - P, i.e. R = 2 x0 - P
  Pt two_x0 = std_add(n, zero(n), zero(n));
  return std_add(n, two_x0, std_neg(n, P));
}

Pt Curve::smul(int n, long long k, Pt P) const {
  if (k < 0) { P = neg(n, P); k = -k; }
  Pt acc = zero(n);
  while (k > 0) {
    if (k & 1) acc = add(n, acc, P);
    P = add(n, P, P);
    k >>= 1;
  }
  return acc;
}

Pt Curve::frob(int n, Pt P) const {
  if (P.inf) return P;
  const GF& F = level(n).F;
  for (int i = 0; i < e_; ++i) {
    P.x = F.frob_p(P.x);
    P.y = F.frob_p(P.y);
  }
  return P;
}

uint32_t Curve::embed_root(int m, int n) const {
  auto k = std::make_pair(m, n);
  auto it = embed_roots_.find(k);
  if (it != embed_roots_.end()) return it->second;
  GF sub(p_, e_ * m);
  uint32_t r = level(n).F.embed_root(sub);
  embed_roots_[k] = r;
  return r;
}

Pt Curve::lift(int m, int n, const Pt& P) const {
  if (m == n || P.inf) return P;
  if (n % m != 0) throw std::domain_error("lift: m must divide n");
  const GF& F = level(n).F;
  GF sub(p_, e_ * m);
  uint32_t r = embed_root(m, n);
  return Pt{false, F.embed(sub, P.x, r), F.embed(sub, P.y, r)};
}

Pt Curve::descend(int n, int m, const Pt& P) const {
  if (m == n || P.inf) return P;
  for (const Pt& Q : level(m).pts)
    if (lift(m, n, Q) == P) return Q;
  throw std::domain_error("descend: point not defined at the lower level");
}

Pt Curve::norm(int n, int m, Pt P) const {
  if (n % m != 0) throw std::domain_error("norm: m must divide n");
  Pt acc = zero(n);
  Pt cur = P;
  for (int i = 0; i < n / m; ++i) {
    for (int j = 0; j < m; ++j) cur = frob(n, cur);
    acc = add(n, acc, cur);
  }
  return descend(n, m, acc);
}

Curve Curve::named(const std::string& name) {
  if (name == "E2")  // y^2 + y = x^3 + x + 1 over F_2
    return Curve("E2", 2, 1, {0, 0, 1, 1, 1}, Pt{});
  if (name == "E3")  // y^2 = x^3 + 2x + 2 over F_3
    return Curve("E3", 3, 1, {0, 0, 0, 2, 2}, Pt{});
  if (name == "E4") {  // y^2 + y = x^3 + alpha over F_4, alpha a generator
    GF F4(2, 2);
    uint32_t alpha = 2;  // encoding of t in F_2[t]/(t^2+t+1)
    return Curve("E4", 2, 2, {0, 0, 1, 0, alpha}, Pt{});
  }
  if (name == "E2b")  // y^2 + xy = x^3 + 1 over F_2 (N_1 = 4)
    return Curve("E2b", 2, 1, {1, 0, 0, 0, 1}, Pt{});
  if (name == "E3b")  // y^2 = x^3 + x over F_3 (N_1 = 4)
    return Curve("E3b", 3, 1, {0, 0, 0, 1, 0}, Pt{});
  throw std::domain_error("unknown curve name: " + name);
}

}  // namespace hk
