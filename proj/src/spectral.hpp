#pragma once
// Exact eigenvalue extraction for the cusp / toroidal period conditions on
// the degree-1 PGL_2 graph of a one-point curve (Figure-1 shape).
//
// Unknown order throughout: f(O+O), f(N_{y_1})..f(N_{y_q}), f(M_{x,1}),
// f(M_{x,0}), f(O+L_x) -- q+4 values tied by the q+3 head equations read off
// the graph, plus the appended period row(s).

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hk {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Polynomial in lambda over Z, coefficients in ascending degree, normalized
// (no trailing zeros; empty vector = 0).
using PolyZ = std::vector<bigint>;

struct SpectralResult {
  long long q = 0;
  std::vector<bigrat> roots;       // sorted ascending
  std::vector<std::string> notes;  // analysis surfaced in reports
};

// The period polynomial T(lambda) of the generic head-kernel family: signed
// maximal minors of the (q+3)x(q+4) head system, divided by their common
// polynomial content, contracted with the toroidal period row
// f(O+O) + 2*sum_i f(N_{y_i}).  Proportional to (lambda^2 - q^2).
// `nperm`, when nonempty, permutes the N_{y_i} unknowns (root sets must not
// depend on it).
PolyZ toroidal_polynomial(long long q, const std::vector<int>& nperm = {});

// Eigenvalues admitting a nonzero toroidal (resp. cusp) eigenfunction.
// Toroidal: roots of the generic period polynomial, each certified by an
// exact nonzero-kernel check of the appended square system.  Cusp: the head
// system plus the cusp row f(O+O) + (q-1) f(M_{x,0}) = 0 plus the
// finite-support row f(O+L_x) = 0; roots are the common rational roots of
// the two square subsystem determinants, certified by an exact rank check of
// the full rectangular system.
SpectralResult toroidal_lambdas(long long q, const std::vector<int>& nperm = {});
SpectralResult cusp_lambdas(long long q, const std::vector<int>& nperm = {});

// Kernel basis of the full appended system ("toroidal" or "cusp") at a fixed
// rational lambda, in the unknown order documented above.
std::vector<std::vector<bigrat>> spectral_kernel_at(long long q,
                                                    const std::string& condition,
                                                    const bigrat& lambda);

}  // namespace hk
