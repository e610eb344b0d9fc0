#include "bundles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hk {

static int gcd_nd(int n, int d) {
  int g = std::gcd(n, std::abs(d));
  return g == 0 ? n : g;
}

Label make_label(Ctx& ctx, int n, int d, int l, Place y) {
  (void)ctx;
  int g = gcd_nd(n, d);
  if (l * y.deg != g || n % y.deg != 0)
    throw std::logic_error("illegal Atiyah label shape");
  bool ok = (n == 1 && y.deg == 1 && l == 1) ||
            (n == 2 && ((y.deg == 1 && (l == 1 || l == 2)) || (y.deg == 2 && l == 1))) ||
            (n == 3 && ((y.deg == 1 && (l == 1 || l == 3)) || (y.deg == 3 && l == 1)));
  if (!ok) throw std::logic_error("illegal Atiyah label shape");
  return Label{n, d, l, y};
}

bool label_lt(const Label& a, const Label& b) {
  if (a.n != b.n) return a.n > b.n;
  if (a.d != b.d) return a.d > b.d;
  if (a.y.deg != b.y.deg) return a.y.deg < b.y.deg;
  if (a.y.idx != b.y.idx) return a.y.idx < b.y.idx;
  return a.l < b.l;
}

bool label_eq(const Label& a, const Label& b) {
  return a.n == b.n && a.d == b.d && a.l == b.l && a.y == b.y;
}

int BClass::rank() const {
  int r = 0;
  for (const Label& L : s) r += L.n;
  return r;
}

int BClass::deg() const {
  int d = 0;
  for (const Label& L : s) d += L.d;
  return d;
}

bool operator==(const BClass& a, const BClass& b) {
  if (a.s.size() != b.s.size()) return false;
  for (size_t i = 0; i < a.s.size(); ++i)
    if (!label_eq(a.s[i], b.s[i])) return false;
  return true;
}

bool operator<(const BClass& a, const BClass& b) {
  if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
  for (size_t i = 0; i < a.s.size(); ++i) {
    if (label_lt(a.s[i], b.s[i])) return true;
    if (label_lt(b.s[i], a.s[i])) return false;
  }
  return false;
}

BClass make_class(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end(), label_lt);
  return BClass{std::move(labels)};
}

Label dual_label(Ctx& ctx, const Label& L) {
  return Label{L.n, -L.d, L.l, ctx.neg_place(L.y)};
}

BClass dual_class(Ctx& ctx, const BClass& E) {
  std::vector<Label> out;
  for (const Label& L : E.s) out.push_back(dual_label(ctx, L));
  return make_class(std::move(out));
}

Label twist_label(Ctx& ctx, const Label& L, int k, const Pt& c) {
  Label out = L;
  out.d = L.d + L.n * k;
  if (L.y.deg == L.n && L.n > 1) {
    // trace label: shift the X_n-level orbit point by the lifted class
    int n = L.n;
    Pt shifted = ctx.C.add(n, ctx.rep(L.y), ctx.C.lift(1, n, c));
    out.y = ctx.place_of_point(n, shifted);
  } else {
    // line (weight 1), gcd-1 label (weight n), self-extension l=n (weight 1)
    int w = (L.l == 1 && L.n > 1) ? L.n : 1;
    out.y = ctx.place1_of_class(ctx.cadd(ctx.cls(L.y), ctx.cmul(w, c)));
  }
  return out;
}

BClass twist_class(Ctx& ctx, const BClass& E, int k, const Pt& c) {
  std::vector<Label> out;
  for (const Label& L : E.s) out.push_back(twist_label(ctx, L, k, c));
  return make_class(std::move(out));
}

BClass pbun_canonical(Ctx& ctx, const BClass& E) {
  int n = E.rank();
  if (n < 2) throw std::domain_error("pbun_canonical needs rank >= 2");
  int d = E.deg();
  // unique k with d + n k in [0, n)
  int k = -(d >= 0 ? d / n : -((-d + n - 1) / n));
  while (d + n * k < 0) ++k;
  while (d + n * k >= n) --k;
  bool first = true;
  BClass best;
  for (const Pt& c : ctx.C.level(1).pts) {
    BClass cand = twist_class(ctx, E, k, c);
    if (first || cand < best) { best = cand; first = false; }
  }
  return best;
}

std::vector<Label> line_labels(Ctx& ctx, int d) {
  std::vector<Label> out;
  for (const Place& y : ctx.places(1)) out.push_back(make_label(ctx, 1, d, 1, y));
  return out;
}

std::vector<Label> indec_labels(Ctx& ctx, int n, int d) {
  if (n == 1) return line_labels(ctx, d);
  std::vector<Label> out;
  int g = gcd_nd(n, d);
  if (g == 1) {
    for (const Place& y : ctx.places(1)) out.push_back(make_label(ctx, n, d, 1, y));
  } else {
    // g == n: self-extension labels and trace labels
    for (const Place& y : ctx.places(1)) out.push_back(make_label(ctx, n, d, n, y));
    for (const Place& y : ctx.places(n)) out.push_back(make_label(ctx, n, d, 1, y));
  }
  return out;
}

std::vector<BClass> enumerate_classes(Ctx& ctx, int rank, int deg, int lo, int hi) {
  std::set<BClass> out;
  auto inw = [&](int d) { return lo <= d && d <= hi; };
  if (rank == 1) {
    if (inw(deg))
      for (const Label& L : line_labels(ctx, deg)) out.insert(make_class({L}));
  } else if (rank == 2) {
    if (inw(deg))
      for (const Label& L : indec_labels(ctx, 2, deg)) out.insert(make_class({L}));
    for (int d1 = lo; d1 <= hi; ++d1) {
      int d2 = deg - d1;
      if (d2 < d1 || !inw(d2)) continue;
      for (const Label& A : line_labels(ctx, d1))
        for (const Label& B : line_labels(ctx, d2))
          out.insert(make_class({A, B}));
    }
  } else if (rank == 3) {
    if (inw(deg))
      for (const Label& L : indec_labels(ctx, 3, deg)) out.insert(make_class({L}));
    for (int dm = lo; dm <= hi; ++dm) {
      int dl = deg - dm;
      if (!inw(dl)) continue;
      for (const Label& M : indec_labels(ctx, 2, dm))
        for (const Label& L : line_labels(ctx, dl))
          out.insert(make_class({M, L}));
    }
    for (int a = lo; a <= hi; ++a)
      for (int b = a; b <= hi; ++b) {
        int c = deg - a - b;
        if (c < b || !inw(c)) continue;
        for (const Label& A : line_labels(ctx, a))
          for (const Label& B : line_labels(ctx, b))
            for (const Label& Cc : line_labels(ctx, c))
              out.insert(make_class({A, B, Cc}));
      }
  } else {
    throw std::domain_error("rank must be 1, 2, or 3");
  }
  return {out.begin(), out.end()};
}

int delta1_decomposable(const BClass& E) {
  int n = E.rank(), d = E.deg();
  int best = 0;
  bool any = false;
  for (const Label& L : E.s) {
    if (L.n != 1)
      throw std::domain_error("delta1 is only defined here for fully decomposable classes");
    int v = n * L.d - d;
    if (!any || v > best) { best = v; any = true; }
  }
  return best;
}

std::string label_text(const Label& L) {
  return "E[(" + std::to_string(L.y.deg) + ":" + std::to_string(L.y.idx) + "," +
         std::to_string(L.l) + ")]^(" + std::to_string(L.n) + "," +
         std::to_string(L.d) + ")";
}

std::string class_text(const BClass& E) {
  std::string out;
  for (size_t i = 0; i < E.s.size(); ++i) {
    if (i) out += " + ";
    out += label_text(E.s[i]);
  }
  return out;
}

}  // namespace hk
