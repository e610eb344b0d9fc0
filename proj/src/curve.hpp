#pragma once
// Weierstrass curves over small finite fields, with the group structure on
// X(F_{q^n}) transported from Pic^0(X_n) via the base point x0 (x0 is the
// neutral element), Frobenius, relative norms, and Hasse point counts.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gf.hpp"

namespace hk {

struct Pt {
  bool inf = true;
  uint32_t x = 0, y = 0;
};

inline bool operator==(const Pt& a, const Pt& b) {
  return a.inf == b.inf && (a.inf || (a.x == b.x && a.y == b.y));
}
inline bool operator!=(const Pt& a, const Pt& b) { return !(a == b); }

class Curve {
public:
  // Coefficients a1..a6 are encodings in the base field F_{p^e}; x0 is the
  // distinguished rational base point (usually the point at infinity).
  Curve(std::string name, int p, int e, std::array<uint32_t, 5> a /*a1,a2,a3,a4,a6*/,
        Pt x0);
  static Curve named(const std::string& name);  // E2, E3, E4, E2b, E3b

  const std::string& name() const { return name_; }
  int p() const { return p_; }
  int e() const { return e_; }
  long long q() const { return q_; }
  int trace_a() const { return a_trace_; }
  long long N(int n) const;  // #X(F_{q^n}) via Hasse recursion

  struct Level {
    GF F;
    uint32_t a1, a2, a3, a4, a6;
    Pt x0;
    std::vector<Pt> pts;  // sorted by encoding key
    Level(GF f) : F(std::move(f)) {}
  };
  const Level& level(int n) const;  // built lazily; size guarded

  uint64_t key(int n, const Pt& P) const;  // canonical encoding for ordering

  // Standard chord-tangent law with the point at infinity as identity.
  Pt std_add(int n, Pt P, Pt Q) const;
  Pt std_neg(int n, Pt P) const;

  // Transported law: x0 is the neutral element.
  Pt zero(int n) const { return level(n).x0; }
  Pt add(int n, const Pt& P, const Pt& Q) const;
  Pt neg(int n, const Pt& P) const;
  Pt sub(int n, const Pt& P, const Pt& Q) const { return add(n, P, neg(n, Q)); }
  Pt smul(int n, long long k, Pt P) const;

  Pt frob(int n, Pt P) const;                 // q-power Frobenius
  Pt lift(int m, int n, const Pt& P) const;   // X(F_{q^m}) -> X(F_{q^n}), m | n
  Pt descend(int n, int m, const Pt& P) const;  // inverse of lift on its image
  Pt norm(int n, int m, Pt P) const;          // Norm_m^n, lands in X(F_{q^m})

  long long guard() const { return guard_; }

private:
  std::string name_;
  int p_, e_;
  long long q_;
  int a_trace_ = 0;
  std::array<uint32_t, 5> a_;
  Pt x0_;
  long long guard_;
  mutable std::map<int, std::unique_ptr<Level>> levels_;
  mutable std::map<std::pair<int, int>, uint32_t> embed_roots_;

  uint32_t embed_root(int m, int n) const;
  bool on_curve(const Level& L, const Pt& P) const;
};

}  // namespace hk
