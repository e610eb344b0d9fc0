#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bundles.hpp"

using namespace hk;

TEST_CASE("label legality") {
  Ctx E2(Curve::named("E2"));
  Place x0 = E2.x0_place();
  Place y2 = E2.places(2)[0];
  Place z3 = E2.places(3)[0];
  CHECK_NOTHROW(make_label(E2, 1, 5, 1, x0));
  CHECK_NOTHROW(make_label(E2, 2, 1, 1, x0));
  CHECK_NOTHROW(make_label(E2, 2, 0, 2, x0));
  CHECK_NOTHROW(make_label(E2, 2, -2, 1, y2));
  CHECK_NOTHROW(make_label(E2, 3, 2, 1, x0));
  CHECK_NOTHROW(make_label(E2, 3, 0, 3, x0));
  CHECK_NOTHROW(make_label(E2, 3, 3, 1, z3));
  CHECK_THROWS(make_label(E2, 2, 0, 1, x0));   // l|y| != gcd
  CHECK_THROWS(make_label(E2, 2, 1, 1, y2));   // gcd(2,1)=1 but |y|=2
  CHECK_THROWS(make_label(E2, 3, 1, 1, z3));
  CHECK_THROWS(make_label(E2, 3, 0, 1, y2));   // |y|=2 does not divide 3
}

TEST_CASE("enumeration counts on E2") {
  Ctx E2(Curve::named("E2"));
  // indecomposable rank-3 degree-0: 4 traces + 1 self-extension
  CHECK(indec_labels(E2, 3, 0).size() == 5);
  CHECK(indec_labels(E2, 3, 1).size() == 1);
  CHECK(line_labels(E2, 0).size() == 1);
  // rank-3 degree-0 classes, summands within [-4,4]
  auto all = enumerate_classes(E2, 3, 0, -4, 4);
  // indec: 5; rank2+line: dm in [-4,4], dl = -dm; indec2 count: odd->1, even->3
  // line triples: a<=b<=c sum 0 in [-4,4]
  int pairs = 0;
  for (int dm = -4; dm <= 4; ++dm)
    if (-dm >= -4 && -dm <= 4) pairs += (dm % 2 == 0) ? 3 : 1;
  int triples = 0;
  for (int a = -4; a <= 4; ++a)
    for (int b = a; b <= 4; ++b) {
      int c = -a - b;
      if (c >= b && c <= 4) ++triples;
    }
  CHECK((int)all.size() == 5 + pairs + triples);
}

TEST_CASE("dualize is an involution") {
  for (const char* name : {"E2", "E2b"}) {
    Ctx ctx(Curve::named(name));
    for (int d = -2; d <= 2; ++d)
      for (const BClass& E : enumerate_classes(ctx, 3, d, -3, 3)) {
        CHECK(dual_class(ctx, dual_class(ctx, E)) == E);
        CHECK(dual_class(ctx, E).deg() == -E.deg());
      }
  }
}

TEST_CASE("twist bookkeeping") {
  Ctx E2b(Curve::named("E2b"));
  Pt c0 = E2b.czero();
  for (int d = -2; d <= 2; ++d)
    for (const BClass& E : enumerate_classes(E2b, 3, d, -2, 2)) {
      CHECK(twist_class(E2b, E, 0, c0) == E);  // trivial twist
      // twist by O(x0) then by its inverse
      BClass T = twist_class(E2b, E, 1, c0);
      CHECK(T.deg() == E.deg() + 3);
      CHECK(twist_class(E2b, T, -1, c0) == E);
      // twists by degree-0 classes compose
      for (const Pt& c : E2b.C.level(1).pts) {
        BClass A = twist_class(E2b, twist_class(E2b, E, 0, c), 0, E2b.cneg(c));
        CHECK(A == E);
      }
      // dual and twist commute: (E (x) L)^v = E^v (x) L^v
      for (const Pt& c : E2b.C.level(1).pts) {
        BClass lhs = dual_class(E2b, twist_class(E2b, E, 1, c));
        BClass rhs = twist_class(E2b, dual_class(E2b, E), -1, E2b.cneg(c));
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("determinant rule under twists") {
  // l * class(label) shifts by n * class(twist) for every summand
  Ctx E3b(Curve::named("E3b"));
  for (const BClass& E : enumerate_classes(E3b, 3, 1, -2, 2))
    for (const Pt& c : E3b.C.level(1).pts) {
      BClass T = twist_class(E3b, E, 0, c);
      // compare summand-wise determinant classes (both sides sorted the same
      // way only if the twist preserves summand order; compare total det)
      Pt detE = E3b.czero(), detT = E3b.czero();
      for (const Label& L : E.s) {
        Pt lc = (L.y.deg == L.n && L.n > 1) ? E3b.cls(L.y) : E3b.cls(L.y);
        detE = E3b.cadd(detE, E3b.cmul(L.l, lc));
      }
      for (const Label& L : T.s)
        detT = E3b.cadd(detT, E3b.cmul(L.l, E3b.cls(L.y)));
      CHECK(detT == E3b.cadd(detE, E3b.cmul(3, c)));
    }
}

TEST_CASE("pbun canonicalization") {
  Ctx E2(Curve::named("E2"));
  Place x0 = E2.x0_place();
  // O + O + O and O(x0)^3 are twist equivalent
  BClass O3 = make_class({make_label(E2, 1, 0, 1, x0), make_label(E2, 1, 0, 1, x0),
                          make_label(E2, 1, 0, 1, x0)});
  BClass O3x = make_class({make_label(E2, 1, 1, 1, x0), make_label(E2, 1, 1, 1, x0),
                           make_label(E2, 1, 1, 1, x0)});
  CHECK(pbun_canonical(E2, O3) == pbun_canonical(E2, O3x));
  // orbit invariance under arbitrary twists (deterministic sample)
  Ctx E2b(Curve::named("E2b"));
  int cnt = 0;
  for (const BClass& E : enumerate_classes(E2b, 3, 0, -2, 2)) {
    for (int k : {-2, -1, 0, 1, 2})
      for (const Pt& c : E2b.C.level(1).pts)
        CHECK(pbun_canonical(E2b, twist_class(E2b, E, k, c)) ==
              pbun_canonical(E2b, E));
    if (++cnt > 20) break;
  }
  // distinct orbits stay distinct: degree-0 indecomposables on E2
  auto indecs = indec_labels(E2, 3, 0);
  std::set<BClass> canon;
  for (const Label& L : indecs) canon.insert(pbun_canonical(E2, make_class({L})));
  CHECK(canon.size() == indecs.size());
}

TEST_CASE("delta1 for decomposable classes") {
  Ctx E2(Curve::named("E2"));
  Place x0 = E2.x0_place();
  auto Lx = [&](int d) { return make_label(E2, 1, d, 1, x0); };
  CHECK(delta1_decomposable(make_class({Lx(0), Lx(0), Lx(0)})) == 0);
  CHECK(delta1_decomposable(make_class({Lx(0), Lx(0), Lx(2)})) == 4);
  CHECK(delta1_decomposable(make_class({Lx(0), Lx(1)})) == 1);
  CHECK_THROWS(delta1_decomposable(make_class({make_label(E2, 2, 1, 1, x0), Lx(0)})));
}

TEST_CASE("label text is stable") {
  Ctx E2(Curve::named("E2"));
  Place y = E2.places(2)[1];
  CHECK(label_text(make_label(E2, 2, -2, 1, y)) == "E[(2:1,1)]^(2,-2)");
}
