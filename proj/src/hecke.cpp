#include "hecke.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace hk {

namespace {

int fdiv(int a, int b) {
  int qd = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --qd;
  return qd;
}

// Label shorthands: lines, gcd-1 indecomposables, l = n self-extensions and
// traces.  Classes are Pic^0 classes (points at level 1).
Label Lline(Ctx& c, int d, const Pt& u) { return make_label(c, 1, d, 1, c.place1_of_class(u)); }
Label Lgi2(Ctx& c, int d, const Pt& u) { return make_label(c, 2, d, 1, c.place1_of_class(u)); }
Label Lsx2(Ctx& c, int d, const Pt& u) { return make_label(c, 2, d, 2, c.place1_of_class(u)); }
Label Lgi3(Ctx& c, int d, const Pt& u) { return make_label(c, 3, d, 1, c.place1_of_class(u)); }
Label Lsx3(Ctx& c, int d, const Pt& u) { return make_label(c, 3, d, 3, c.place1_of_class(u)); }
Label Ltr2(Ctx& c, int d, const Place& y) { return make_label(c, 2, d, 1, y); }
Label Ltr3(Ctx& c, int d, const Place& y) { return make_label(c, 3, d, 1, y); }

bool vert_lt(const BClass& a, const BClass& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return class_text(a) < class_text(b);
}

std::vector<Edge> finish(Ctx& ctx, std::map<BClass, long long>& acc, int k) {
  std::vector<Edge> out;
  out.reserve(acc.size());
  for (auto& [dst, w] : acc)
    out.push_back({twist_class(ctx, dst, -k, ctx.czero()), w});
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return a.dst < b.dst; });
  return out;
}

}  // namespace

std::vector<Edge> neighbors_r3(Ctx& ctx, const BClass& E0, const Place& x) {
  if (x.deg != 1) throw std::invalid_argument("neighbors_r3: place must have degree 1");
  if (E0.rank() != 3) throw std::invalid_argument("neighbors_r3: class must have rank 3");
  const long long q = ctx.C.q();
  const Pt cx = ctx.cls(x);

  // Normalize degrees by an O(k x0) twist so each table case applies verbatim.
  int k = 0;
  if (E0.s.size() == 1) {
    k = -fdiv(E0.s[0].d, 3);
  } else if (E0.s.size() == 2) {
    int dm = E0.s[0].d;
    if (E0.s[0].l == 1 && E0.s[0].y.deg == 1)
      k = -fdiv(dm - 1, 2);  // gcd-1 rank 2 -> degree 1
    else
      k = -fdiv(dm, 2);  // self-extension / trace -> degree 0
  } else {
    int a = E0.s[2].d, b = E0.s[1].d, c = E0.s[0].d;  // ascending
    int g1 = b - a, g2 = c - b;
    k = ((g1 == 1 && g2 == 0) || (g1 >= 2 && g2 <= 1)) ? -b : -a;
  }
  BClass E = twist_class(ctx, E0, k, ctx.czero());

  std::map<BClass, long long> acc;
  auto add = [&](std::vector<Label> ls, long long w) {
    if (w < 0) throw std::logic_error("neighbors_r3: negative edge weight");
    if (w == 0) return;
    acc[make_class(std::move(ls))] += w;
  };
  auto cadd = [&](const Pt& a, const Pt& b) { return ctx.cadd(a, b); };
  auto csub = [&](const Pt& a, const Pt& b) { return ctx.csub(a, b); };
  auto cmul = [&](long long m, const Pt& a) { return ctx.cmul(m, a); };

  if (E.s.size() == 1) {
    const Label& L = E.s[0];
    if (L.d == 0 && L.y.deg == 3) {
      // trace of a degree-3 line
      add({Lgi3(ctx, -1, csub(ctx.cls(L.y), cx))}, q * q + q + 1);
    } else if (L.d == 0) {
      // self-extension, l = 3
      Pt cy = ctx.cls(L.y);
      add({Lgi3(ctx, -1, csub(cmul(3, cy), cx))}, q * q);
      add({Lgi2(ctx, -1, csub(cmul(2, cy), cx)), Lline(ctx, 0, cy)}, q);
      add({Lline(ctx, -1, csub(cy, cx)), Lsx2(ctx, 0, cy)}, 1);
    } else if (L.d == 1) {
      Pt t = csub(ctx.cls(L.y), cx);
      for (auto& s : ctx.solve_class_eq({{1, 3}}, t, false))
        add({Lsx3(ctx, 0, ctx.cls(s[0]))}, 1);
      for (const Place& w : ctx.places_with_class(3, t)) add({Ltr3(ctx, 0, w)}, 1);
      for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 1}, {1, 1}}, t, true))
        add({Lline(ctx, 0, ctx.cls(s[0])), Lline(ctx, 0, ctx.cls(s[1])),
             Lline(ctx, 0, ctx.cls(s[2]))},
            1);
      for (const Place& z2 : ctx.places(2))
        add({Lline(ctx, 0, csub(t, ctx.cls(z2))), Ltr2(ctx, 0, z2)}, 1);
      for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 2}}, t, true))
        add({Lline(ctx, 0, ctx.cls(s[0])), Lsx2(ctx, 0, ctx.cls(s[1]))}, 1);
    } else {  // L.d == 2
      Pt t = csub(ctx.cls(L.y), cx);
      long long N1 = (long long)ctx.places(1).size();
      add({Lgi3(ctx, 1, t)}, q * q + q + 1 - N1);
      for (const Place& xp : ctx.places(1))
        add({Lline(ctx, 0, ctx.cls(xp)), Lgi2(ctx, 1, csub(t, ctx.cls(xp)))}, 1);
    }
  } else if (E.s.size() == 2) {
    const Label& M = E.s[0];
    const Label& Ll = E.s[1];
    const int d = Ll.d;
    const Pt cl = ctx.cls(Ll.y);
    if (M.y.deg == 2) {
      // trace summand
      const Place Y = M.y;
      Pt cy = ctx.cls(Y);
      if (d == 0) {
        add({Lgi3(ctx, -1, csub(cadd(cl, cy), cx))}, q * q - 1);
        add({Ltr2(ctx, 0, Y), Lline(ctx, -1, csub(cl, cx))}, 1);
        add({Lgi2(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cl)}, q + 1);
      } else {
        add({Ltr2(ctx, 0, Y), Lline(ctx, d - 1, csub(cl, cx))}, d >= 1 ? q * q : 1);
        add({Lgi2(ctx, -1, csub(cy, cx)), Lline(ctx, d, cl)},
            d >= 1 ? q + 1 : q * q + q);
      }
    } else if (M.l == 2) {
      // self-extension summand sx2(0, y)
      Pt cy = ctx.cls(M.y);
      if (d == 0) {
        if (cl == cy) {
          add({Lline(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cy), Lline(ctx, 0, cy)}, 1);
          add({Lgi2(ctx, -1, csub(cmul(2, cy), cx)), Lline(ctx, 0, cy)}, q * q);
          add({Lline(ctx, -1, csub(cy, cx)), Lsx2(ctx, 0, cy)}, q);
        } else {
          add({Lgi3(ctx, -1, csub(cadd(cl, cmul(2, cy)), cx))}, q * q - q);
          add({Lline(ctx, -1, csub(cl, cx)), Lsx2(ctx, 0, cy)}, 1);
          add({Lgi2(ctx, -1, csub(cmul(2, cy), cx)), Lline(ctx, 0, cl)}, q);
          add({Lgi2(ctx, -1, csub(cadd(cy, cl), cx)), Lline(ctx, 0, cy)}, q - 1);
          add({Lline(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cy), Lline(ctx, 0, cl)}, 1);
        }
      } else if (d == 1) {
        add({Lgi2(ctx, -1, csub(cmul(2, cy), cx)), Lline(ctx, 1, cl)}, q);
        add({Lline(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cy), Lline(ctx, 1, cl)}, 1);
        if (cy == csub(cl, cx)) {
          add({Lsx3(ctx, 0, cy)}, q * q - q);
          add({Lsx2(ctx, 0, cy), Lline(ctx, 0, cy)}, q);
        } else {
          add({Lsx2(ctx, 0, cy), Lline(ctx, 0, csub(cl, cx))}, q * q);
        }
      } else if (d == -1) {
        add({Lline(ctx, -1, cl), Lgi2(ctx, -1, csub(cmul(2, cy), cx))}, q * q);
        add({Lline(ctx, -2, csub(cl, cx)), Lsx2(ctx, 0, cy)}, 1);
        if (cy == cadd(cl, cx)) {
          add({Lsx2(ctx, -2, cl), Lline(ctx, 0, cy)}, q - 1);
          add({Lline(ctx, -1, cl), Lline(ctx, -1, cl), Lline(ctx, 0, cy)}, 1);
        } else {
          add({Lline(ctx, -1, cl), Lline(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cy)}, q);
        }
      } else {
        bool up = d >= 2;
        add({Lsx2(ctx, 0, cy), Lline(ctx, d - 1, csub(cl, cx))}, up ? q * q : 1);
        add({Lgi2(ctx, -1, csub(cmul(2, cy), cx)), Lline(ctx, d, cl)}, up ? q : q * q);
        add({Lline(ctx, -1, csub(cy, cx)), Lline(ctx, 0, cy), Lline(ctx, d, cl)},
            up ? 1 : q);
      }
    } else {
      // gcd-1 summand gi2(1, y)
      Pt cy = ctx.cls(M.y);
      Pt t = csub(cy, cx);
      if (d == 0) {
        for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 1}}, t, true)) {
          if (s[0] == Ll.y || s[1] == Ll.y) continue;
          add({Lline(ctx, 0, cl), Lline(ctx, 0, ctx.cls(s[0])),
               Lline(ctx, 0, ctx.cls(s[1]))},
              q);
        }
        for (const Place& z : ctx.places_with_class(2, t))
          add({Lline(ctx, 0, cl), Ltr2(ctx, 0, z)}, q);
        for (auto& s : ctx.solve_class_eq({{1, 2}}, t, false)) {
          if (s[0] == Ll.y) continue;
          add({Lline(ctx, 0, cl), Lsx2(ctx, 0, ctx.cls(s[0]))}, q);
        }
        // the pair {x', y'} with x' = y - y' - x carries split weights 1 and
        // q - 1; when x' = y' it degenerates into the self-extension block
        Pt u3 = csub(t, cl);
        if (!(u3 == cl)) {
          add({Lline(ctx, 0, u3), Lsx2(ctx, 0, cl)}, q - 1);
          add({Lline(ctx, 0, cl), Lline(ctx, 0, cl), Lline(ctx, 0, u3)}, 1);
        }
        add({Lgi2(ctx, 1, cy), Lline(ctx, -1, csub(cl, cx))}, 1);
        if (cy == cadd(cmul(2, cl), cx)) {
          add({Lline(ctx, 0, cl), Lsx2(ctx, 0, cl)}, 1);
          add({Lsx3(ctx, 0, cl)}, q - 1);
        }
      } else if (d == 1) {
        for (const Place& z : ctx.places_with_class(2, t))
          add({Ltr2(ctx, 0, z), Lline(ctx, 1, cl)}, 1);
        for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 1}}, t, true))
          add({Lline(ctx, 0, ctx.cls(s[0])), Lline(ctx, 0, ctx.cls(s[1])),
               Lline(ctx, 1, cl)},
              1);
        for (auto& s : ctx.solve_class_eq({{1, 2}}, t, false))
          add({Lsx2(ctx, 0, ctx.cls(s[0])), Lline(ctx, 1, cl)}, 1);
        add({Lgi2(ctx, 1, cy), Lline(ctx, 0, csub(cl, cx))}, q);
        add({Lgi3(ctx, 1, csub(cadd(cy, cl), cx))}, q * q - q);
      } else {
        long long wf = d >= 2 ? 1 : q, wl = d >= 2 ? q * q : 1;
        for (const Place& z : ctx.places_with_class(2, t))
          add({Ltr2(ctx, 0, z), Lline(ctx, d, cl)}, wf);
        for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 1}}, t, true))
          add({Lline(ctx, 0, ctx.cls(s[0])), Lline(ctx, 0, ctx.cls(s[1])),
               Lline(ctx, d, cl)},
              wf);
        for (auto& s : ctx.solve_class_eq({{1, 2}}, t, false))
          add({Lsx2(ctx, 0, ctx.cls(s[0])), Lline(ctx, d, cl)}, wf);
        add({Lgi2(ctx, 1, cy), Lline(ctx, d - 1, csub(cl, cx))}, wl);
      }
    }
  } else {
    // three line summands, ascending degrees a <= b <= c
    int a = E.s[2].d, b = E.s[1].d, c = E.s[0].d;
    Pt ua = ctx.cls(E.s[2].y), ub = ctx.cls(E.s[1].y), uc = ctx.cls(E.s[0].y);
    int g1 = b - a, g2 = c - b;
    if (g1 == 0 && g2 == 0) {
      if (ua == ub && ub == uc) {
        add({Lline(ctx, -1, csub(ua, cx)), Lline(ctx, 0, ua), Lline(ctx, 0, ua)},
            q * q + q + 1);
      } else if (ua == ub || ub == uc || ua == uc) {
        Pt u = (ua == ub) ? ua : uc;  // repeated class
        Pt up = (ua == ub) ? uc : ((ub == uc) ? ua : ub);  // the single one
        if (ua == uc) u = ua, up = ub;
        add({Lline(ctx, 0, u), Lline(ctx, 0, u), Lline(ctx, -1, csub(up, cx))}, 1);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u), Lline(ctx, 0, up)}, q + 1);
        add({Lgi2(ctx, -1, csub(cadd(u, up), cx)), Lline(ctx, 0, u)}, q * q - 1);
      } else {
        add({Lgi3(ctx, -1, csub(cadd(cadd(ua, ub), uc), cx))}, q * q - 2 * q + 1);
        const Pt us[3] = {ua, ub, uc};
        for (int i = 0; i < 3; ++i) {
          Pt ui = us[i], uj = us[(i + 1) % 3], uk = us[(i + 2) % 3];
          add({Lline(ctx, -1, csub(ui, cx)), Lline(ctx, 0, uj), Lline(ctx, 0, uk)}, 1);
          add({Lgi2(ctx, -1, csub(cadd(uj, uk), cx)), Lline(ctx, 0, ui)}, q - 1);
        }
      }
    } else if (g1 == 0 && g2 == 1) {
      Pt u = ua, u1 = ub, u2 = uc;
      if (!(u == u1) && csub(u2, cx) == u) std::swap(u, u1);
      Pt u2s = csub(u2, cx);
      if (u == u1 && u2s == u) {
        add({Lline(ctx, 0, u), Lsx2(ctx, 0, u)}, q * q - 1);
        add({Lline(ctx, 0, u), Lline(ctx, 0, u), Lline(ctx, 0, u)}, 1);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u), Lline(ctx, 1, u2)}, q + 1);
      } else if (u == u1) {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u), Lline(ctx, 0, u2s)}, q * q);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u), Lline(ctx, 1, u2)}, q + 1);
      } else if (u2s == u1) {
        add({Lline(ctx, 0, u), Lsx2(ctx, 0, u1)}, q * q - q);
        add({Lline(ctx, 0, u), Lline(ctx, 0, u1), Lline(ctx, 0, u1)}, q);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u1), Lline(ctx, 1, u2)}, 1);
        add({Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u), Lline(ctx, 1, u2)}, 1);
        add({Lgi2(ctx, -1, csub(cadd(u, u1), cx)), Lline(ctx, 1, u2)}, q - 1);
      } else {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u1), Lline(ctx, 0, u2s)}, q * q);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u1), Lline(ctx, 1, u2)}, 1);
        add({Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u), Lline(ctx, 1, u2)}, 1);
        add({Lgi2(ctx, -1, csub(cadd(u, u1), cx)), Lline(ctx, 1, u2)}, q - 1);
      }
    } else if (g1 == 1 && g2 == 0) {
      Pt u2 = ua, u = ub, u1 = uc;
      if (!(u == u1) && u1 == cadd(u2, cx)) std::swap(u, u1);
      bool eq = (u == u1), hit = (u == cadd(u2, cx));
      if (eq && !hit) {
        add({Lline(ctx, 0, u), Lline(ctx, -1, csub(u, cx)), Lline(ctx, -1, u2)},
            q * q + q);
        add({Lline(ctx, -2, csub(u2, cx)), Lline(ctx, 0, u), Lline(ctx, 0, u)}, 1);
      } else if (eq) {
        add({Lsx2(ctx, -2, u2), Lline(ctx, 0, u)}, q * q - 1);
        add({Lline(ctx, -1, u2), Lline(ctx, -1, u2), Lline(ctx, 0, u)}, q + 1);
        add({Lline(ctx, -2, csub(u2, cx)), Lline(ctx, 0, u), Lline(ctx, 0, u)}, 1);
      } else if (hit) {
        add({Lline(ctx, -1, u2), Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u)}, q);
        add({Lsx2(ctx, -2, u2), Lline(ctx, 0, u1)}, q - 1);
        add({Lline(ctx, -1, u2), Lgi2(ctx, -1, csub(cadd(u, u1), cx))}, q * q - q);
        add({Lline(ctx, -1, u2), Lline(ctx, -1, u2), Lline(ctx, 0, u1)}, 1);
        add({Lline(ctx, -2, csub(u2, cx)), Lline(ctx, 0, u), Lline(ctx, 0, u1)}, 1);
      } else {
        add({Lline(ctx, -1, u2), Lgi2(ctx, -1, csub(cadd(u, u1), cx))}, q * q - q);
        add({Lline(ctx, -1, u2), Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u)}, q);
        add({Lline(ctx, -1, u2), Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u1)}, q);
        add({Lline(ctx, -2, csub(u2, cx)), Lline(ctx, 0, u), Lline(ctx, 0, u1)}, 1);
      }
    } else if (g2 == 0) {
      // degrees (d, 0, 0), d = -g1 <= -2
      int d = -g1;
      Pt u = ub, u1 = uc, u2 = ua;
      if (!(u == u1)) {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u1), Lline(ctx, d - 1, csub(u2, cx))}, 1);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u1), Lline(ctx, d, u2)}, q);
        add({Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u), Lline(ctx, d, u2)}, q);
        add({Lgi2(ctx, -1, csub(cadd(u, u1), cx)), Lline(ctx, d, u2)}, q * q - q);
      } else {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u), Lline(ctx, d - 1, csub(u2, cx))}, 1);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u), Lline(ctx, d, u2)},
            q * q + q);
      }
    } else if (g1 == 0) {
      // degrees (0, 0, d), d = g2 >= 2
      int d = g2;
      Pt u = ua, u1 = ub, u2 = uc;
      if (!(u == u1)) {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u1), Lline(ctx, d - 1, csub(u2, cx))},
            q * q);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u1), Lline(ctx, d, u2)}, 1);
        add({Lline(ctx, -1, csub(u1, cx)), Lline(ctx, 0, u), Lline(ctx, d, u2)}, 1);
        add({Lgi2(ctx, -1, csub(cadd(u, u1), cx)), Lline(ctx, d, u2)}, q - 1);
      } else {
        add({Lline(ctx, 0, u), Lline(ctx, 0, u), Lline(ctx, d - 1, csub(u2, cx))},
            q * q);
        add({Lline(ctx, -1, csub(u, cx)), Lline(ctx, 0, u), Lline(ctx, d, u2)}, q + 1);
      }
    } else if ((g1 == 1 && g2 >= 1) || (g1 >= 2 && g2 == 1)) {
      // degrees (0, 1, d) with d >= 2, or (d, 0, 1) with d <= -2
      int d;
      Pt u, u1, u2;
      if (g1 == 1) {
        d = 1 + g2;
        u = ua, u1 = ub, u2 = uc;
      } else {
        d = -g1;
        u = ub, u1 = uc, u2 = ua;
      }
      bool A = (u1 == cadd(u, cx));
      std::vector<Label> S1 = {Lline(ctx, 0, u), Lline(ctx, 1, u1),
                               Lline(ctx, d - 1, csub(u2, cx))};
      std::vector<Label> S2 = {Lline(ctx, -1, csub(u, cx)), Lline(ctx, 1, u1),
                               Lline(ctx, d, u2)};
      std::vector<Label> S3 = {Lline(ctx, 0, u), Lline(ctx, 0, csub(u1, cx)),
                               Lline(ctx, d, u2)};
      if (d >= 2) {
        bool B2 = (d == 2) && (u1 == csub(u2, cx));
        add(S1, B2 ? q : q * q);
        add(S2, 1);
        add(S3, A ? 1 : q);
        if (A) add({Lsx2(ctx, 0, u), Lline(ctx, d, u2)}, q - 1);
        if (B2) add({Lline(ctx, 0, u), Lsx2(ctx, 2, u1)}, q * q - q);
      } else {
        bool Bm1 = (d == -1) && (u == cadd(u2, cx));
        add(S1, 1);
        add(S2, Bm1 ? 1 : q);
        add(S3, A ? q : q * q);
        if (Bm1) add({Lsx2(ctx, -2, u2), Lline(ctx, 1, u1)}, q - 1);
        if (A) add({Lsx2(ctx, 0, u), Lline(ctx, d, u2)}, q * q - q);
      }
    } else {
      // both gaps >= 2
      add({Lline(ctx, a - 1, csub(ua, cx)), Lline(ctx, b, ub), Lline(ctx, c, uc)}, 1);
      add({Lline(ctx, a, ua), Lline(ctx, b - 1, csub(ub, cx)), Lline(ctx, c, uc)}, q);
      add({Lline(ctx, a, ua), Lline(ctx, b, ub), Lline(ctx, c - 1, csub(uc, cx))},
          q * q);
    }
  }
  return finish(ctx, acc, k);
}

std::vector<Edge> neighbors_r3_r2(Ctx& ctx, const BClass& E, const Place& x) {
  // m_{x,2}(E, E') = m_{x,1}(E^v(x), E'^v)
  BClass S = twist_class(ctx, dual_class(ctx, E), 1, ctx.cls(x));
  auto es = neighbors_r3(ctx, S, x);
  std::vector<Edge> out;
  out.reserve(es.size());
  for (auto& e : es) out.push_back({dual_class(ctx, e.dst), e.w});
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return a.dst < b.dst; });
  return out;
}

std::vector<Edge> neighbors_r2(Ctx& ctx, const BClass& M, const Place& x,
                               int depth_extra) {
  if (M.rank() != 2) throw std::invalid_argument("neighbors_r2: class must have rank 2");
  if (x.deg != 1) throw std::invalid_argument("neighbors_r2: place must have degree 1");
  const long long q = ctx.C.q();
  int K;
  if (M.s.size() == 1) {
    K = fdiv(M.deg() + 2, 2) + 1 + depth_extra;  // 2K - deg M > 2
  } else {
    K = M.s[0].d + 2 + depth_extra;  // deeper than every line summand + 1
  }
  const Place x0 = ctx.x0_place();
  Label deep = make_label(ctx, 1, K, 1, x0);
  std::vector<Label> labs = M.s;
  labs.push_back(deep);
  auto edges = neighbors_r3(ctx, make_class(labs), x);

  std::vector<Label> dl = M.s;
  dl.push_back(Lline(ctx, K - 1, ctx.cneg(ctx.cls(x))));
  const BClass dropped_target = make_class(dl);

  std::vector<Edge> out;
  bool dropped = false;
  for (auto& e : edges) {
    if (e.dst == dropped_target) {
      if (e.w != q * q)
        throw std::logic_error("neighbors_r2: stable-range weight mismatch");
      dropped = true;
      continue;
    }
    std::vector<Label> t;
    bool stripped = false;
    for (const Label& lab : e.dst.s) {
      if (!stripped && lab.n == 1 && lab.d == K && lab.l == 1 && lab.y == x0) {
        stripped = true;
        continue;
      }
      t.push_back(lab);
    }
    if (!stripped)
      throw std::logic_error("neighbors_r2: deep line missing from a target");
    out.push_back({make_class(std::move(t)), e.w});
  }
  if (!dropped) throw std::logic_error("neighbors_r2: modified-line edge missing");
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return a.dst < b.dst; });
  return out;
}

std::vector<Edge> neighbors_even(Ctx& ctx, const BClass& M, const Place& y) {
  if (y.deg != 2) throw std::invalid_argument("neighbors_even: place must have degree 2");
  if (ctx.places(1).size() != 1)
    throw std::domain_error("neighbors_even: requires class number one");
  if (M.rank() != 2 || ((M.deg() % 2) + 2) % 2 != 0)
    throw std::invalid_argument("neighbors_even: class must have rank 2, even degree");
  const long long q = ctx.C.q();
  const Pt cy = ctx.cls(y);
  std::map<BClass, long long> acc;
  auto add = [&](std::vector<Label> ls, long long w) {
    if (w < 0) throw std::logic_error("neighbors_even: negative edge weight");
    if (w == 0) return;
    acc[make_class(std::move(ls))] += w;
  };
  int k = 0;

  if (M.s.size() == 2) {
    int d1 = M.s[1].d, d2 = M.s[0].d;  // d1 <= d2
    Pt c1 = ctx.cls(M.s[1].y), c2 = ctx.cls(M.s[0].y);
    if (d2 > d1 + 2) {
      add({Lline(ctx, d1 - 2, ctx.csub(c1, cy)), Lline(ctx, d2, c2)}, 1);
      add({Lline(ctx, d1, c1), Lline(ctx, d2 - 2, ctx.csub(c2, cy))}, q * q);
    } else if (d2 == d1 + 2) {
      add({Lline(ctx, d1 - 2, ctx.csub(c1, cy)), Lline(ctx, d2, c2)}, 1);
      add({Lline(ctx, d1, c1), Lline(ctx, d2 - 2, ctx.csub(c2, cy))}, q);
      add({Lsx2(ctx, 2 * d1, c1)}, q * q - q);
    } else if (c1 == c2) {
      add({Lline(ctx, d1 - 2, ctx.csub(c1, cy)), Lline(ctx, d1, c1)}, q + 1);
      add({Ltr2(ctx, 2 * d1 - 2, y)}, q * q - q);
    } else {
      // distinct equal-degree lines cannot occur with class number one
      add({Lline(ctx, d1 - 2, ctx.csub(c1, cy)), Lline(ctx, d1, c2)}, 1);
      add({Lline(ctx, d1, c1), Lline(ctx, d1 - 2, ctx.csub(c2, cy))}, 1);
      Pt s = ctx.csub(ctx.cadd(c1, c2), cy);
      add({Lsx2(ctx, 2 * d1 - 2, s)}, q - 1);
      for (const Place& yp : ctx.places(2))
        if (ctx.cls(yp) == s) add({Ltr2(ctx, 2 * d1 - 2, yp)}, q - 1);
    }
  } else {
    const Label& A = M.s[0];
    k = -A.d / 2;
    if (A.l == 2) {
      // self-extension E_{(x,2)}^{(2,0)}
      Pt cxa = ctx.cls(A.y);
      add({Lline(ctx, -2, ctx.csub(cxa, cy)), Lline(ctx, 0, cxa)}, 1);
      for (auto& s : ctx.solve_class_eq({{1, 1}, {1, 1}}, ctx.cadd(cxa, cy), true))
        add({Lline(ctx, -1, ctx.cls(s[0])), Lline(ctx, -1, ctx.cls(s[1]))}, q);
      add({Lsx2(ctx, -2, cxa)}, q);
      for (const Place& yp : ctx.places(2))
        if (yp != y && ctx.cls(yp) == ctx.csub(ctx.cmul(2, cxa), cy))
          add({Ltr2(ctx, -2, yp)}, q);
    } else {
      // trace E_{(Y,1)}^{(2,0)}
      const Place Y = A.y;
      const auto& orbY = ctx.orbit(y);  // points above the Hecke place
      auto exists_dbl = [&](const Place& Pa, const Place& Pb) {
        // exists a above Pa and b above Pb with a = 2b in Pic^0(X_2)
        for (const Pt& a2 : ctx.orbit(Pa))
          for (const Pt& b2 : ctx.orbit(Pb))
            if (a2 == ctx.C.smul(2, 2, b2)) return true;
        return false;
      };
      if (Y == y) {
        add({Lline(ctx, -1, ctx.czero()), Lline(ctx, -1, ctx.czero())}, 1);
        bool triv3 = false;
        for (const Pt& z : orbY)
          if (ctx.C.smul(2, 3, z) == ctx.C.zero(2)) triv3 = true;
        add({Ltr2(ctx, -2, y)}, triv3 ? 1 : q + 1);
        for (const Place& yp : ctx.places(2))
          if (yp != y) add({Ltr2(ctx, -2, yp)}, exists_dbl(yp, y) ? 1 : q + 1);
      } else {
        for (const Place& ypp : ctx.places(2)) {
          if (ypp == y || ypp == Y) continue;
          bool c = false;
          for (const Pt& v : ctx.orbit(ypp))
            for (const Pt& z : orbY)
              for (const Pt& w : ctx.orbit(Y))
                if (v == ctx.C.add(2, z, w)) c = true;
          if (c) add({Ltr2(ctx, -2, ypp)}, 1);
        }
        add({Ltr2(ctx, -2, Y)}, exists_dbl(y, Y) ? 1 : q + 1);
        add({Ltr2(ctx, -2, y)}, exists_dbl(Y, y) ? 1 : q + 1);
        add({Lsx2(ctx, -2, ctx.csub(cy, ctx.cls(Y)))}, q + 1);
        for (auto& s :
             ctx.solve_class_eq({{1, 1}, {1, 1}}, ctx.csub(ctx.cls(Y), cy), true))
          add({Lline(ctx, -1, ctx.cls(s[0])), Lline(ctx, -1, ctx.cls(s[1]))}, q + 1);
      }
    }
  }
  return finish(ctx, acc, k);
}

std::vector<Edge> neighbors_O3_deg2(Ctx& ctx, const Label& line, const Place& y) {
  if (y.deg != 2)
    throw std::invalid_argument("neighbors_O3_deg2: place must have degree 2");
  if (ctx.places(1).size() != 1)
    throw std::domain_error("neighbors_O3_deg2: requires class number one");
  if (line.n != 1) throw std::invalid_argument("neighbors_O3_deg2: summand must be a line");
  const long long q = ctx.C.q();
  const int d = line.d;
  const Pt u = ctx.cls(line.y);
  std::vector<Edge> out;
  out.push_back({make_class({Lline(ctx, d - 2, ctx.csub(u, ctx.cls(y))), line, line}),
                 q * q + q + 1});
  out.push_back({make_class({Ltr2(ctx, 2 * d - 2, y), line}), q * q * q * q - q});
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return a.dst < b.dst; });
  return out;
}

std::vector<SEdge> reverse_edges_idL2(Ctx& ctx, const BClass& Ep, const Place& y) {
  if (y.deg != 2)
    throw std::invalid_argument("reverse_edges_idL2: place must have degree 2");
  if (ctx.places(1).size() != 1)
    throw std::domain_error("reverse_edges_idL2: requires class number one");
  if (Ep.s.size() != 3 || Ep.s[0].n != 1 || Ep.s[2].n != 1 ||
      !label_eq(Ep.s[0], Ep.s[1]) || Ep.s[2].d != Ep.s[0].d - 2)
    throw std::invalid_argument(
        "reverse_edges_idL2: expected line(D-2) + line(D) + line(D)");
  const long long q = ctx.C.q();
  const int D = Ep.s[0].d;  // work at the normalized degree D = 0
  const Pt cxp = ctx.cls(Ep.s[0].y);  // class of the repeated line
  const Pt cxm = ctx.cls(Ep.s[2].y);  // class of the lower line
  const Pt cy = ctx.cls(y);
  std::vector<SEdge> out;
  auto emit = [&](std::vector<Label> ls, long long w) {
    out.push_back({twist_class(ctx, make_class(std::move(ls)), D, ctx.czero()), w});
  };
  Pt sum = ctx.cadd(cxm, cy);
  if (!(sum == cxp)) {
    emit({Lline(ctx, 0, sum), Lline(ctx, 0, cxp), Lline(ctx, 0, cxp)}, 1);
  } else {
    emit({Lline(ctx, 0, cxp), Lsx2(ctx, 0, cxp)}, 1);
    emit({Lline(ctx, 0, cxp), Lline(ctx, 0, cxp), Lline(ctx, 0, cxp)}, q * q + q + 1);
  }
  emit({Lline(ctx, -2, cxm), Lline(ctx, 0, cxp), Lline(ctx, 2, ctx.cadd(cxp, cy))},
       q * q * q);
  emit({Lline(ctx, -2, cxm), Ltr2(ctx, 2, y)}, q * q);
  std::sort(out.begin(), out.end(),
            [](const SEdge& a, const SEdge& b) { return a.src < b.src; });
  return out;
}

int Graph::index_of(const BClass& v) const {
  auto it = std::lower_bound(verts.begin(), verts.end(), v, vert_lt);
  if (it == verts.end() || !(*it == v))
    throw std::logic_error("Graph::index_of: vertex not found");
  return (int)(it - verts.begin());
}

namespace {

Graph assemble(Ctx& ctx, const Place& x, int r, int rank, int lo, int hi,
               const std::vector<BClass>& seeds,
               const std::function<std::vector<Edge>(const BClass&)>& nbr) {
  Graph g;
  g.curve = ctx.C.name();
  g.x = x;
  g.r = r;
  g.rank = rank;
  g.lo = lo;
  g.hi = hi;
  std::set<BClass> vs(seeds.begin(), seeds.end());
  std::vector<std::pair<BClass, std::vector<Edge>>> all;
  all.reserve(seeds.size());
  for (const BClass& s : seeds) {
    auto es = nbr(s);
    for (const Edge& e : es) vs.insert(e.dst);
    all.emplace_back(s, std::move(es));
  }
  g.verts.assign(vs.begin(), vs.end());
  std::sort(g.verts.begin(), g.verts.end(), vert_lt);
  std::set<BClass> seedset(seeds.begin(), seeds.end());
  g.is_seed.assign(g.verts.size(), 0);
  for (size_t i = 0; i < g.verts.size(); ++i)
    g.is_seed[i] = seedset.count(g.verts[i]) ? 1 : 0;
  for (auto& [s, es] : all) {
    long long si = g.index_of(s);
    for (const Edge& e : es)
      g.edges.push_back({si, (long long)g.index_of(e.dst), e.w});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace

Graph build_graph_r3(Ctx& ctx, const Place& x, int r, int lo, int hi) {
  if (r != 1 && r != 2) throw std::invalid_argument("build_graph_r3: r must be 1 or 2");
  if (lo > hi) throw std::invalid_argument("build_graph_r3: empty window");
  std::vector<BClass> seeds;
  for (int d = 3 * lo; d <= 3 * hi; ++d)
    for (BClass& c : enumerate_classes(ctx, 3, d, lo, hi)) seeds.push_back(std::move(c));
  auto nbr = [&](const BClass& E) {
    return r == 1 ? neighbors_r3(ctx, E, x) : neighbors_r3_r2(ctx, E, x);
  };
  return assemble(ctx, x, r, 3, lo, hi, seeds, nbr);
}

Graph build_graph_r2_deg1(Ctx& ctx, const Place& x, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("build_graph_r2_deg1: empty window");
  std::vector<BClass> seeds;
  for (int d = 2 * lo; d <= 2 * hi; ++d)
    for (BClass& c : enumerate_classes(ctx, 2, d, lo, hi)) seeds.push_back(std::move(c));
  auto nbr = [&](const BClass& M) { return neighbors_r2(ctx, M, x); };
  return assemble(ctx, x, 1, 2, lo, hi, seeds, nbr);
}

Graph build_graph_even(Ctx& ctx, const Place& y, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("build_graph_even: empty window");
  std::vector<BClass> seeds;
  for (int d = 2 * lo; d <= 2 * hi; ++d) {
    if (((d % 2) + 2) % 2 != 0) continue;
    for (BClass& c : enumerate_classes(ctx, 2, d, lo, hi)) seeds.push_back(std::move(c));
  }
  auto nbr = [&](const BClass& M) { return neighbors_even(ctx, M, y); };
  return assemble(ctx, y, 1, 2, lo, hi, seeds, nbr);
}

Graph project_pgl(Ctx& ctx, const Graph& g) {
  Graph p;
  p.curve = g.curve;
  p.x = g.x;
  p.r = g.r;
  p.rank = g.rank;
  p.pgl = true;
  p.lo = g.lo;
  p.hi = g.hi;
  std::vector<BClass> canon(g.verts.size());
  std::set<BClass> vs;
  for (size_t i = 0; i < g.verts.size(); ++i) {
    canon[i] = pbun_canonical(ctx, g.verts[i]);
    vs.insert(canon[i]);
  }
  p.verts.assign(vs.begin(), vs.end());
  std::sort(p.verts.begin(), p.verts.end(), vert_lt);
  p.is_seed.assign(p.verts.size(), 0);
  std::map<long long, std::vector<std::array<long long, 3>>> by_src;
  for (const auto& e : g.edges) by_src[e[0]].push_back(e);
  std::set<BClass> covered;
  std::map<std::pair<int, int>, long long> emap;
  for (size_t i = 0; i < g.verts.size(); ++i) {
    if (!g.is_seed[i]) continue;
    int ci = p.index_of(canon[i]);
    p.is_seed[ci] = 1;
    if (covered.count(canon[i])) continue;  // twist-equivalent source already emitted
    covered.insert(canon[i]);
    for (const auto& e : by_src[(long long)i])
      emap[{ci, p.index_of(canon[(size_t)e[1]])}] += e[2];
  }
  for (const auto& [key, w] : emap)
    p.edges.push_back({(long long)key.first, (long long)key.second, w});
  std::sort(p.edges.begin(), p.edges.end());
  return p;
}

std::vector<GoldenEdge> golden_fig1(long long q, int kmax) {
  std::vector<GoldenEdge> e;
  auto ol = [](int k) { return "OL" + std::to_string(k); };
  e.push_back({"OO", ol(1), q + 1});
  e.push_back({ol(1), "OO", 1});
  e.push_back({ol(1), "Mx0", q - 1});
  if (kmax >= 2) e.push_back({ol(1), ol(2), 1});
  for (int k = 2; k <= kmax; ++k) {
    e.push_back({ol(k), ol(k - 1), q});
    if (k + 1 <= kmax) e.push_back({ol(k), ol(k + 1), 1});
  }
  e.push_back({"Mx0", "Mx1", q});
  e.push_back({"Mx0", ol(1), 1});
  e.push_back({"Mx1", "Mx0", 1});
  for (int i = 1; i <= q; ++i) e.push_back({"Mx1", "Ny" + std::to_string(i), 1});
  for (int i = 1; i <= q; ++i) e.push_back({"Ny" + std::to_string(i), "Mx1", q + 1});
  return e;
}

bool CheckReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

bool fully_decomposable(const BClass& E) {
  for (const Label& L : E.s)
    if (L.n != 1) return false;
  return true;
}

bool contains_edge(const std::vector<Edge>& es, const BClass& dst) {
  for (const auto& e : es)
    if (e.dst == dst) return true;
  return false;
}

}  // namespace

CheckReport check_suite(Ctx& ctx, const Graph& g1, const Graph& g2, uint64_t seed) {
  CheckReport rep;
  const long long q = ctx.C.q();
  const Place x = g1.x;

  // (a) out-weight sums: #Gr(r,3)(F_q) = q^2 + q + 1 for r = 1 and r = 2
  {
    bool ok = true;
    std::string detail;
    for (const Graph* g : {&g1, &g2}) {
      std::vector<long long> s(g->verts.size(), 0);
      for (const auto& e : g->edges) s[(size_t)e[0]] += e[2];
      for (size_t i = 0; i < g->verts.size(); ++i)
        if (g->is_seed[i] && s[i] != q * q + q + 1) {
          ok = false;
          detail = "r=" + std::to_string(g->r) + " " + class_text(g->verts[i]) +
                   " sum " + std::to_string(s[i]);
        }
    }
    rep.results.push_back({"out-sums", ok, detail});
  }

  // (b) derived duality: edge (E, E') implies edge (E'^v, E^v)
  {
    bool ok = true;
    std::string detail;
    for (const auto& e : g1.edges) {
      const BClass &E = g1.verts[(size_t)e[0]], &Ep = g1.verts[(size_t)e[1]];
      auto back = neighbors_r3(ctx, dual_class(ctx, Ep), x);
      if (!contains_edge(back, dual_class(ctx, E))) {
        ok = false;
        detail = class_text(E) + " -> " + class_text(Ep);
        break;
      }
    }
    rep.results.push_back({"derived-duality", ok, detail});
  }

  // (c) first duality: m_{x,1}(E,E') != 0 iff m_{x,2}(E'(x), E) != 0, both ways
  {
    bool ok = true;
    std::string detail;
    for (const auto& e : g1.edges) {
      const BClass &E = g1.verts[(size_t)e[0]], &Ep = g1.verts[(size_t)e[1]];
      auto up = neighbors_r3_r2(ctx, twist_class(ctx, Ep, 1, ctx.cls(x)), x);
      if (!contains_edge(up, E)) {
        ok = false;
        detail = "r=1 edge " + class_text(E) + " -> " + class_text(Ep);
        break;
      }
    }
    if (ok)
      for (const auto& e : g2.edges) {
        const BClass &E = g2.verts[(size_t)e[0]], &Ep = g2.verts[(size_t)e[1]];
        auto up = neighbors_r3(ctx, twist_class(ctx, Ep, 1, ctx.cls(x)), x);
        if (!contains_edge(up, E)) {
          ok = false;
          detail = "r=2 edge " + class_text(E) + " -> " + class_text(Ep);
          break;
        }
      }
    rep.results.push_back({"first-duality", ok, detail});
  }

  // (d) stable range: for M + L with L deep enough, the r=1 list is
  // {(M + L(-x), q^2)} plus the rank-2 list of M with L carried along
  {
    bool ok = true;
    std::string detail;
    std::map<long long, std::vector<std::array<long long, 3>>> by_src;
    for (const auto& e : g1.edges) by_src[e[0]].push_back(e);
    for (size_t i = 0; i < g1.verts.size() && ok; ++i) {
      if (!g1.is_seed[i]) continue;
      const BClass& E = g1.verts[i];
      std::vector<Label> Ms;
      Label L = E.s[0];
      bool qualifies = false;
      if (E.s.size() == 2 && E.s[0].n == 1) continue;  // impossible (sorted)
      if (E.s.size() == 2) {
        L = E.s[1];
        Ms = {E.s[0]};
        qualifies = 2 * L.d - E.s[0].d > 2;
      } else if (E.s.size() == 3) {
        L = E.s[0];
        Ms = {E.s[1], E.s[2]};
        qualifies = L.d > E.s[1].d + 1;
      }
      if (!qualifies) continue;
      std::map<BClass, long long> expect;
      std::vector<Label> drop = Ms;
      drop.push_back(Lline(ctx, L.d - 1, ctx.csub(ctx.cls(L.y), ctx.cls(x))));
      expect[make_class(drop)] += q * q;
      for (const auto& me : neighbors_r2(ctx, make_class(Ms), x)) {
        std::vector<Label> t = me.dst.s;
        t.push_back(L);
        expect[make_class(t)] += me.w;
      }
      std::map<BClass, long long> got;
      for (const auto& e : by_src[(long long)i])
        got[g1.verts[(size_t)e[1]]] += e[2];
      if (got != expect) {
        ok = false;
        detail = class_text(E);
      }
    }
    rep.results.push_back({"stable-range", ok, detail});
  }

  // (e) delta congruences on fully decomposable pairs
  {
    bool ok = true;
    std::string detail;
    auto congr = [&](long long diff, int m, int lo_b, int hi_b) {
      return ((diff - m) % 3 + 3) % 3 == 0 && diff >= lo_b && diff <= hi_b;
    };
    for (const Graph* g : {&g1, &g2}) {
      for (const auto& e : g->edges) {
        const BClass &E = g->verts[(size_t)e[0]], &Ep = g->verts[(size_t)e[1]];
        if (!fully_decomposable(E) || !fully_decomposable(Ep)) continue;
        long long d1 = delta1_decomposable(Ep) - delta1_decomposable(E);
        long long d2 = delta1_decomposable(dual_class(ctx, Ep)) -
                       delta1_decomposable(dual_class(ctx, E));
        bool good = g->r == 1 ? (congr(d1, 1, -2, 1) && congr(d2, 2, -1, 2))
                              : (congr(d1, 2, -1, 2) && congr(d2, 1, -2, 1));
        if (!good) {
          ok = false;
          detail = "r=" + std::to_string(g->r) + " " + class_text(E) + " -> " +
                   class_text(Ep);
        }
      }
    }
    rep.results.push_back({"delta-congruence", ok, detail});
  }

  // (f) twist invariance on sampled seeds
  {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<size_t> seed_idx;
    for (size_t i = 0; i < g1.verts.size(); ++i)
      if (g1.is_seed[i]) seed_idx.push_back(i);
    const auto& cls1 = ctx.C.level(1).pts;
    for (int trial = 0; trial < 16 && ok && !seed_idx.empty(); ++trial) {
      const BClass& E = g1.verts[seed_idx[rng() % seed_idx.size()]];
      int kk = (int)(rng() % 3) - 1;
      const Pt& c = cls1[rng() % cls1.size()];
      auto base = neighbors_r3(ctx, E, x);
      auto twisted = neighbors_r3(ctx, twist_class(ctx, E, kk, c), x);
      std::set<std::pair<BClass, long long>> a, b;
      for (const auto& e : base) a.insert({twist_class(ctx, e.dst, kk, c), e.w});
      for (const auto& e : twisted) b.insert({e.dst, e.w});
      if (a != b) {
        ok = false;
        detail = class_text(E);
      }
    }
    rep.results.push_back({"twist-invariance", ok, detail});
  }

  return rep;
}

}  // namespace hk
