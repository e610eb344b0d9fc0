#pragma once
// Brute-force Hall-algebra oracle for torsion sheaves supported at a single
// place: Hall numbers by exhaustive submodule enumeration, the T_{(0,m),y}
// generators with coefficients in Q[v]/(v^2 - 1/q), and the numerical
// character-average decomposition of K_y at a degree-2 place.
//
// This layer never consumes the Hecke edge generators; it is an independent
// verification path.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "places.hpp"

namespace hk {

using bigrat = boost::multiprecision::cpp_rational;

// Weakly decreasing positive parts; {} is the empty partition.
using Partition = std::vector<int>;

std::vector<Partition> partitions_of(int n);

// Coefficient a + b*v in Q[v]/(v^2 - 1/q).
struct QV {
  bigrat a = 0, b = 0;
  friend bool operator==(const QV& x, const QV& y) { return x.a == y.a && x.b == y.b; }
};
QV qv_add(const QV& x, const QV& y);
QV qv_mul(const QV& x, const QV& y, long long q);
QV qv_scale(const QV& x, const bigrat& c);
bool qv_zero(const QV& x);
QV qv_vpow(long long e, long long q);   // v^e
QV qv_bracket(long long m, long long q);  // [m] = (v^m - v^{-m}) / (v - v^{-1})

// Number of submodules N of M_lambda over a DVR with residue field F_{q_y}
// with N iso M_nu and M_lambda/N iso M_mu.  Returns 0 when |mu|+|nu| != |lambda|.
// Enumeration guard: |lambda| <= 4 (raise via HECKE_ATLAS_GUARD).
long long hall_number(const Partition& lam, const Partition& mu, const Partition& nu,
                      long long q_y);

// Finitely supported combination of symbols K_y^{(lambda)} at a fixed place.
struct TorsionElement {
  long long q = 0;  // constant-field size (for the v-arithmetic)
  Place y;
  std::map<Partition, QV> terms;
};

// T_{(0,m),y} = ([m]|y|/m) sum_{|lambda| = m/|y|} n_{u_y}(l(lambda)-1) K_y^{(lambda)}
// when |y| divides m, and 0 otherwise; n_u(l) = prod_{i=1}^{l} (1 - u^{-2i})
// with u_y^{-2} = q_y = q^{|y|}.
TorsionElement torsion_generator(Ctx& ctx, int m, const Place& y);

// A * B = sum_lambda h^{lambda}_{mu,nu} K^{(lambda)} (the torsion Euler form
// vanishes, so there is no twist).  A is the quotient side, B the sub side.
TorsionElement hall_multiply(const TorsionElement& A, const TorsionElement& B);

// Expansion of 2 N_2^{-c} [2]^{-1} sum_{sigma in P_2} sigma~(-y) T_{(0,2)}^{sigma~}
// over the symbols K_z^{(lambda)}, |z| <= 2, by numerical character sums.
using SymbolCoeffs = std::map<std::pair<Place, Partition>, std::complex<double>>;
SymbolCoeffs character_rhs(Ctx& ctx, const Place& y, int c);

struct CharDecompReport {
  Place y;
  double residual_c1 = 0, residual_c2 = 0;  // max | rhs - delta_{K_y} | per symbol
  std::string note;
};
CharDecompReport verify_character_decomposition(Ctx& ctx, const Place& y);

}  // namespace hk
