#pragma once
// Closed points (Frobenius orbits), Picard-class arithmetic modulo <x0>,
// brute-force solvers for the divisor-class equations that parametrize edge
// families, and characters of Pic^0(X_n).

#include <complex>
#include <map>
#include <vector>

#include "curve.hpp"

namespace hk {

struct Place {
  int deg = 0;
  int idx = 0;  // position in the deterministic per-degree list
  friend bool operator==(const Place& a, const Place& b) {
    return a.deg == b.deg && a.idx == b.idx;
  }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
  friend bool operator<(const Place& a, const Place& b) {
    return a.deg != b.deg ? a.deg < b.deg : a.idx < b.idx;
  }
};

// Shared context: a curve plus cached place lists and class arithmetic.
class Ctx {
public:
  explicit Ctx(Curve c) : C(std::move(c)) {}
  Curve C;

  const std::vector<Place>& places(int d);
  const Pt& rep(const Place& y);                 // canonical orbit representative
  const std::vector<Pt>& orbit(const Place& y);  // points above y in X(F_{q^d})
  Pt cls(const Place& y);                        // level-1 class of y - |y| x0
  Place neg_place(const Place& y);
  Place place_of_point(int d, const Pt& P);      // orbit lookup (must have size d)

  // Degree-1 places are in bijection with Pic^0 classes.
  Place place1_of_class(const Pt& c);
  std::vector<Place> places_with_class(int d, const Pt& c);

  // Level-1 class arithmetic shorthands.
  Pt czero() { return C.zero(1); }
  Pt cadd(const Pt& a, const Pt& b) { return C.add(1, a, b); }
  Pt csub(const Pt& a, const Pt& b) { return C.sub(1, a, b); }
  Pt cneg(const Pt& a) { return C.neg(1, a); }
  Pt cmul(long long k, const Pt& a) { return C.smul(1, k, a); }
  Place x0_place() { return place1_of_class(czero()); }

  // Generic class-equation solver: variables are (degree, coefficient) pairs;
  // returns all tuples of places with sum coeff_i * cls(y_i) = target,
  // optionally pairwise distinct; tuples unordered within groups of positions
  // sharing the same (degree, coefficient).
  std::vector<std::vector<Place>> solve_class_eq(
      const std::vector<std::pair<int, int>>& vars, const Pt& target,
      bool pairwise_distinct);

private:
  struct PlaceData {
    Pt rep;
    std::vector<Pt> orb;
    Pt cls1;
  };
  std::map<int, std::vector<PlaceData>> pdata_;
  std::map<int, std::vector<Place>> plists_;
  std::map<int, std::map<uint64_t, int>> point_to_place_;  // key at level d -> idx
  void build(int d);
};

// Characters of Pic^0(X_n) ~ X(F_{q^n}) = Z/a x Z/b (b | a).
struct CharTable {
  int n = 1;
  long long N = 0, a = 1, b = 1;
  Pt g, h;  // generators at level n
  std::map<uint64_t, std::pair<long long, long long>> dlog;
  // Frobenius images of the generators, in (i,j) coordinates.
  std::pair<long long, long long> frg, frh;

  long long count() const { return N; }
  // chi indexed by (s,t), 0 <= s < a, 0 <= t < b; flattened chi = s*b + t.
  std::complex<double> eval(const Ctx& ctx, long long chi, const Pt& P) const;
  long long frob_act(long long chi) const;  // index of chi o Fr
  bool primitive(long long chi) const;      // Frobenius orbit size == n
};

CharTable characters(Ctx& ctx, int n);

}  // namespace hk
