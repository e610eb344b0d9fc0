#include "places.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hk {

void Ctx::build(int d) {
  if (pdata_.count(d)) return;
  const auto& pts = C.level(d).pts;
  std::set<uint64_t> seen;
  std::vector<PlaceData> data;
  for (const Pt& P : pts) {
    if (seen.count(C.key(d, P))) continue;
    // collect the Frobenius orbit
    std::vector<Pt> orb;
    Pt cur = P;
    do {
      orb.push_back(cur);
      seen.insert(C.key(d, cur));
      cur = C.frob(d, cur);
    } while (cur != P);
    if ((int)orb.size() != d) continue;  // defined over a proper subfield
    // canonical representative: least encoding key
    Pt rep = *std::min_element(orb.begin(), orb.end(), [&](const Pt& A, const Pt& B) {
      return C.key(d, A) < C.key(d, B);
    });
    // rotate the orbit to start at the representative
    std::vector<Pt> rot;
    cur = rep;
    for (int i = 0; i < d; ++i) { rot.push_back(cur); cur = C.frob(d, cur); }
    // level-1 class: the trace of the orbit, descended
    Pt acc = C.zero(d);
    for (const Pt& Q : rot) acc = C.add(d, acc, Q);
    PlaceData pd;
    pd.rep = rep;
    pd.orb = rot;
    pd.cls1 = C.descend(d, 1, acc);
    data.push_back(std::move(pd));
  }
  std::sort(data.begin(), data.end(), [&](const PlaceData& A, const PlaceData& B) {
    return C.key(d, A.rep) < C.key(d, B.rep);
  });
  std::vector<Place> list;
  std::map<uint64_t, int> lookup;
  for (int i = 0; i < (int)data.size(); ++i) {
    list.push_back(Place{d, i});
    for (const Pt& Q : data[i].orb) lookup[C.key(d, Q)] = i;
  }
  pdata_[d] = std::move(data);
  plists_[d] = std::move(list);
  point_to_place_[d] = std::move(lookup);
}

const std::vector<Place>& Ctx::places(int d) {
  build(d);
  return plists_[d];
}

const Pt& Ctx::rep(const Place& y) {
  build(y.deg);
  return pdata_[y.deg][y.idx].rep;
}

const std::vector<Pt>& Ctx::orbit(const Place& y) {
  build(y.deg);
  return pdata_[y.deg][y.idx].orb;
}

Pt Ctx::cls(const Place& y) {
  build(y.deg);
  return pdata_[y.deg][y.idx].cls1;
}

Place Ctx::place_of_point(int d, const Pt& P) {
  build(d);
  auto it = point_to_place_[d].find(C.key(d, P));
  if (it == point_to_place_[d].end())
    throw std::domain_error("point does not lie on a degree-d place");
  return Place{d, it->second};
}

Place Ctx::neg_place(const Place& y) {
  return place_of_point(y.deg, C.neg(y.deg, rep(y)));
}

Place Ctx::place1_of_class(const Pt& c) {
  // degree-1 places <-> rational points <-> Pic^0 classes (class = the point)
  return place_of_point(1, c);
}

std::vector<Place> Ctx::places_with_class(int d, const Pt& c) {
  std::vector<Place> out;
  for (const Place& y : places(d))
    if (cls(y) == c) out.push_back(y);
  return out;
}

std::vector<std::vector<Place>> Ctx::solve_class_eq(
    const std::vector<std::pair<int, int>>& vars, const Pt& target,
    bool pairwise_distinct) {
  std::set<std::vector<Place>> sols;
  std::vector<Place> cur(vars.size());
  // brute-force nested enumeration
  auto rec = [&](auto&& self, size_t i, Pt acc) -> void {
    if (i == vars.size()) {
      if (acc != target) return;
      if (pairwise_distinct) {
        for (size_t u = 0; u < cur.size(); ++u)
          for (size_t v = u + 1; v < cur.size(); ++v)
            if (cur[u] == cur[v]) return;
      }
      // canonicalize: sort positions within runs of equal (deg, coeff)
      std::vector<Place> canon = cur;
      size_t s = 0;
      while (s < vars.size()) {
        size_t t = s;
        while (t < vars.size() && vars[t] == vars[s]) ++t;
        std::sort(canon.begin() + s, canon.begin() + t);
        s = t;
      }
      sols.insert(canon);
      return;
    }
    for (const Place& y : places(vars[i].first)) {
      cur[i] = y;
      self(self, i + 1, cadd(acc, cmul(vars[i].second, cls(y))));
    }
  };
  rec(rec, 0, czero());
  return {sols.begin(), sols.end()};
}

// ---------------------------------------------------------------------------
// Characters

static long long point_order(const Curve& C, int n, const Pt& P, long long N) {
  for (long long k = 1; k <= N; ++k)
    if (N % k == 0 && C.smul(n, k, P) == C.zero(n)) return k;
  throw std::logic_error("order not found");
}

CharTable characters(Ctx& ctx, int n) {
  const Curve& C = ctx.C;
  const auto& pts = C.level(n).pts;
  CharTable T;
  T.n = n;
  T.N = (long long)pts.size();
  if (T.N > 10000) throw std::runtime_error("character table guard exceeded");
  // invariant factors: X(F_{q^n}) = Z/a x Z/b with b | a, a = exponent
  long long a = 1;
  Pt g = C.zero(n);
  for (const Pt& P : pts) {
    long long o = point_order(C, n, P, T.N);
    if (o > a) { a = o; g = P; }
  }
  T.a = a;
  T.b = T.N / a;
  T.g = g;
  T.h = C.zero(n);
  if (T.b > 1) {
    bool found = false;
    for (const Pt& Hc : pts) {
      if (point_order(C, n, Hc, T.N) != T.b) continue;
      // test that (i,j) -> i g + j Hc is a bijection
      std::set<uint64_t> span;
      Pt gi = C.zero(n);
      for (long long i = 0; i < T.a && !found; ++i) {
        Pt cur = gi;
        for (long long j = 0; j < T.b; ++j) {
          span.insert(C.key(n, cur));
          cur = C.add(n, cur, Hc);
        }
        gi = C.add(n, gi, g);
      }
      if ((long long)span.size() == T.N) {
        T.h = Hc;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no complement generator found");
  }
  // discrete logs
  Pt gi = C.zero(n);
  for (long long i = 0; i < T.a; ++i) {
    Pt cur = gi;
    for (long long j = 0; j < T.b; ++j) {
      T.dlog[C.key(n, cur)] = {i, j};
      cur = C.add(n, cur, T.h);
    }
    gi = C.add(n, gi, T.g);
  }
  T.frg = T.dlog.at(C.key(n, C.frob(n, T.g)));
  T.frh = T.dlog.at(C.key(n, C.frob(n, T.h)));
  return T;
}

std::complex<double> CharTable::eval(const Ctx& ctx, long long chi, const Pt& P) const {
  long long s = chi / b, t = chi % b;
  auto [i, j] = dlog.at(ctx.C.key(n, P));
  double arg = 2.0 * M_PI * ((double)(s * i % a) / (double)a +
                             (double)(t * j % b) / (double)b);
  return {std::cos(arg), std::sin(arg)};
}

long long CharTable::frob_act(long long chi) const {
  long long s = chi / b, t = chi % b;
  auto [i1, j1] = frg;
  auto [i2, j2] = frh;
  // (chi o Fr)(g) = e(s i1/a + t j1/b) => s' = s i1 + t (a/b) j1 (mod a)
  long long sp = ((s * i1 + t * (a / b) * j1) % a + a) % a;
  // (chi o Fr)(h) = e(s i2/a + t j2/b); b Fr(h) = 0 forces a | b i2
  if ((s * i2 * b) % a != 0)
    throw std::logic_error("character Frobenius action not integral");
  long long tp = ((s * i2 * b / a + t * j2) % b + b) % b;
  return sp * b + tp;
}

bool CharTable::primitive(long long chi) const {
  long long cur = chi;
  for (int k = 1; k <= n; ++k) {
    cur = frob_act(cur);
    if (cur == chi) return k == n;
  }
  return false;
}

}  // namespace hk
