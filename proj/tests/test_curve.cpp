#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "curve.hpp"

using hk::Curve;
using hk::Pt;

TEST_CASE("point counts of the named curves") {
  Curve E2 = Curve::named("E2");
  CHECK(E2.level(1).pts.size() == 1);   // only the point at infinity
  CHECK(E2.level(2).pts.size() == 5);   // 2q+1
  CHECK(E2.level(3).pts.size() == 13);  // 3q^2+1
  CHECK(E2.N(2) == 5);
  CHECK(E2.N(3) == 13);

  Curve E3 = Curve::named("E3");
  CHECK(E3.level(1).pts.size() == 1);
  CHECK(E3.N(2) == 7);    // 2q+1
  CHECK(E3.N(3) == 28);   // 3q^2+1
  CHECK(E3.level(2).pts.size() == 7);
  CHECK(E3.level(3).pts.size() == 28);

  Curve E4 = Curve::named("E4");
  CHECK(E4.level(1).pts.size() == 1);
  CHECK(E4.N(2) == 9);    // 2q+1
  CHECK(E4.N(3) == 49);   // 3q^2+1
  CHECK(E4.level(2).pts.size() == 9);
  CHECK(E4.level(3).pts.size() == 49);

  Curve E2b = Curve::named("E2b");
  CHECK(E2b.level(1).pts.size() == 4);
  CHECK(E2b.N(2) == (long long)E2b.level(2).pts.size());

  Curve E3b = Curve::named("E3b");
  CHECK(E3b.level(1).pts.size() == 4);
  CHECK(E3b.N(2) == (long long)E3b.level(2).pts.size());
}

TEST_CASE("hasse eigenvalue bound") {
  for (const char* n : {"E2", "E3", "E4", "E2b", "E3b"}) {
    Curve C = Curve::named(n);
    CHECK((long long)C.trace_a() * C.trace_a() <= 4 * C.q());
  }
}

static void check_group_axioms(const Curve& C, int n) {
  const auto& pts = C.level(n).pts;
  Pt z = C.zero(n);
  for (const Pt& P : pts) {
    CHECK(C.add(n, P, z) == P);
    CHECK(C.add(n, P, C.neg(n, P)) == z);
  }
  for (const Pt& P : pts)
    for (const Pt& Q : pts) {
      CHECK(C.add(n, P, Q) == C.add(n, Q, P));
      for (const Pt& R : pts)
        CHECK(C.add(n, C.add(n, P, Q), R) == C.add(n, P, C.add(n, Q, R)));
    }
}

TEST_CASE("transported group law axioms") {
  check_group_axioms(Curve::named("E2"), 2);
  check_group_axioms(Curve::named("E3"), 2);
  check_group_axioms(Curve::named("E2b"), 1);
  check_group_axioms(Curve::named("E3b"), 1);
}

TEST_CASE("group order annihilates") {
  for (const char* name : {"E2", "E3", "E4", "E2b", "E3b"}) {
    Curve C = Curve::named(name);
    for (int n : {1, 2}) {
      long long Nn = C.N(n);
      for (const Pt& P : C.level(n).pts)
        CHECK(C.smul(n, Nn, P) == C.zero(n));
    }
  }
}

TEST_CASE("frobenius is a group automorphism") {
  Curve E2 = Curve::named("E2");
  const auto& pts = E2.level(2).pts;
  for (const Pt& P : pts) {
    CHECK(E2.frob(2, E2.frob(2, P)) == P);  // Fr^2 = id on X(F_4)
    for (const Pt& Q : pts)
      CHECK(E2.frob(2, E2.add(2, P, Q)) ==
            E2.add(2, E2.frob(2, P), E2.frob(2, Q)));
  }
  // Fr fixes rational points
  Curve E2b = Curve::named("E2b");
  for (const Pt& P : E2b.level(1).pts) CHECK(E2b.frob(1, P) == P);
}

TEST_CASE("lift and descend") {
  Curve E4 = Curve::named("E4");
  for (const Pt& P : E4.level(1).pts) {
    Pt L = E4.lift(1, 2, P);
    CHECK(E4.frob(2, L) == L);
    CHECK(E4.descend(2, 1, L) == P);
  }
  // lifts respect the group law
  Curve E2b = Curve::named("E2b");
  for (const Pt& P : E2b.level(1).pts)
    for (const Pt& Q : E2b.level(1).pts)
      CHECK(E2b.lift(1, 2, E2b.add(1, P, Q)) ==
            E2b.add(2, E2b.lift(1, 2, P), E2b.lift(1, 2, Q)));
}

TEST_CASE("norm maps") {
  Curve E2 = Curve::named("E2");
  // Norm_1^2 is trivial on E2 since X(F_2) = {x0}
  for (const Pt& P : E2.level(2).pts)
    CHECK(E2.norm(2, 1, P) == E2.zero(1));
  // Norm_n^n = id
  for (const Pt& P : E2.level(2).pts) CHECK(E2.norm(2, 2, P) == P);
  // Norm_1^2(P) = P + Fr(P) (descended)
  Curve E2b = Curve::named("E2b");
  for (const Pt& P : E2b.level(2).pts) {
    Pt s = E2b.add(2, P, E2b.frob(2, P));
    CHECK(E2b.lift(1, 2, E2b.norm(2, 1, P)) == s);
  }
}
