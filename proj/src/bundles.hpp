#pragma once
// Atiyah labels E_{(y,l)}^{(n,d)} for indecomposable bundles of rank <= 3,
// multiset bundle classes, enumeration, duals, twists, PGL canonicalization
// and delta-invariants of decomposable bundles.
//
// Label semantics are pinned by the determinant rule: det E_{(y,l)}^{(n,d)}
// has Pic^0 class l*class(y).  Legal shapes (n,|y|,l): lines (1,1,1);
// rank 2: (2,1,1) gcd 1, (2,1,2) self-extension, (2,2,1) trace;
// rank 3: (3,1,1) gcd 1, (3,1,3) self-extension, (3,3,1) trace.

#include <string>
#include <vector>

#include "places.hpp"

namespace hk {

struct Label {
  int n = 1, d = 0, l = 1;
  Place y;
};

Label make_label(Ctx& ctx, int n, int d, int l, Place y);  // validates shape

bool label_lt(const Label& a, const Label& b);  // (rank desc, degree desc, place, l)
bool label_eq(const Label& a, const Label& b);

struct BClass {
  std::vector<Label> s;  // canonically sorted summands
  int rank() const;
  int deg() const;
  friend bool operator==(const BClass& a, const BClass& b);
  friend bool operator<(const BClass& a, const BClass& b);
};

BClass make_class(std::vector<Label> labels);  // sorts

Label dual_label(Ctx& ctx, const Label& L);
BClass dual_class(Ctx& ctx, const BClass& E);

// Twist by the line bundle of degree k and Pic^0 class c.
Label twist_label(Ctx& ctx, const Label& L, int k, const Pt& c);
BClass twist_class(Ctx& ctx, const BClass& E, int k, const Pt& c);

// Canonical representative of the Pic-twist orbit: total degree in [0, rank),
// least class over the N_1 degree-0 twists.
BClass pbun_canonical(Ctx& ctx, const BClass& E);

std::vector<Label> line_labels(Ctx& ctx, int d);
std::vector<Label> indec_labels(Ctx& ctx, int n, int d);
// All rank-`rank` classes of total degree `deg` whose summand degrees all lie
// in [lo, hi] (the window keeps the list finite).
std::vector<BClass> enumerate_classes(Ctx& ctx, int rank, int deg, int lo, int hi);

// delta_1(E) = max over line summands L of rank(E) deg(L) - deg(E);
// only defined when every summand is a line bundle.
int delta1_decomposable(const BClass& E);

std::string label_text(const Label& L);
std::string class_text(const BClass& E);

}  // namespace hk
