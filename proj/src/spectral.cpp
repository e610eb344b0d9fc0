#include "spectral.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hk {
namespace {

using std::vector;

using Mat = vector<vector<PolyZ>>;

PolyZ pnorm(PolyZ p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool pzero(const PolyZ& p) { return p.empty(); }

PolyZ pconst(const bigint& c) { return c == 0 ? PolyZ{} : PolyZ{c}; }

PolyZ padd(const PolyZ& a, const PolyZ& b) {
  PolyZ r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return pnorm(r);
}

PolyZ pneg(PolyZ a) {
  for (auto& c : a) c = -c;
  return a;
}

PolyZ psub(const PolyZ& a, const PolyZ& b) { return padd(a, pneg(b)); }

PolyZ pmul(const PolyZ& a, const PolyZ& b) {
  if (pzero(a) || pzero(b)) return {};
  PolyZ r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return pnorm(r);
}

PolyZ pscale(const PolyZ& a, const bigint& c) { return pmul(a, pconst(c)); }

bigint icontent(const PolyZ& p) {
  bigint g = 0;
  for (const bigint& c : p) g = gcd(g, abs(c));
  return g;
}

PolyZ pdiv_int(PolyZ p, const bigint& d) {
  for (auto& c : p) {
    if (c % d != 0) throw std::logic_error("inexact integer division of polynomial");
    c /= d;
  }
  return p;
}

// Exact division a / b in Z[lambda]; throws if the division is not exact.
PolyZ pdivexact(PolyZ a, const PolyZ& b) {
  a = pnorm(a);
  if (pzero(b)) throw std::logic_error("polynomial division by zero");
  if (pzero(a)) return {};
  if (a.size() < b.size()) throw std::logic_error("inexact polynomial division");
  PolyZ quo(a.size() - b.size() + 1, 0);
  for (int i = (int)quo.size() - 1; i >= 0; --i) {
    bigint lead = a[i + b.size() - 1];
    if (lead % b.back() != 0) throw std::logic_error("inexact polynomial division");
    bigint c = lead / b.back();
    quo[i] = c;
    for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  for (const bigint& c : a)
    if (c != 0) throw std::logic_error("inexact polynomial division");
  return pnorm(quo);
}

PolyZ pprim(PolyZ p) {
  bigint c = icontent(p);
  return c > 1 ? pdiv_int(std::move(p), c) : p;
}

// Scaled remainder of a by b (enough for a primitive-part PRS).
PolyZ pprem(PolyZ a, const PolyZ& b) {
  bigint lb = b.back();
  while (!pzero(a) && a.size() >= b.size()) {
    size_t shift = a.size() - b.size();
    bigint la = a.back();
    a = pscale(a, lb);
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
    a = pnorm(a);
  }
  return a;
}

PolyZ pgcd(PolyZ a, PolyZ b) {
  a = pnorm(a);
  b = pnorm(b);
  if (pzero(a)) return b;
  if (pzero(b)) return a;
  bigint cg = gcd(icontent(a), icontent(b));
  a = pprim(std::move(a));
  b = pprim(std::move(b));
  while (!pzero(b)) {
    if (a.size() < b.size()) std::swap(a, b);
    PolyZ r = pprim(pprem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0) a = pneg(a);
  return pscale(a, cg);
}

bigrat peval(const PolyZ& p, const bigrat& x) {
  bigrat v = 0;
  for (int i = (int)p.size() - 1; i >= 0; --i) v = v * x + bigrat(p[i]);
  return v;
}

// Determinant by fraction-free (Bareiss) elimination.
PolyZ det_bareiss(Mat M) {
  int n = (int)M.size();
  if (n == 0) return pconst(1);
  int sign = 1;
  PolyZ prev = pconst(1);
  for (int k = 0; k + 1 < n; ++k) {
    if (pzero(M[k][k])) {
      int r = -1;
      for (int i = k + 1; i < n; ++i)
        if (!pzero(M[i][k])) { r = i; break; }
      if (r < 0) return {};
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        M[i][j] = pdivexact(psub(pmul(M[i][j], M[k][k]), pmul(M[i][k], M[k][j])), prev);
    prev = M[k][k];
  }
  PolyZ d = M[n - 1][n - 1];
  return sign < 0 ? pneg(d) : d;
}

// Determinant by cofactor expansion along the first row (independent path).
PolyZ det_cofactor(const Mat& M) {
  int n = (int)M.size();
  if (n == 0) return pconst(1);
  if (n == 1) return M[0][0];
  PolyZ d;
  for (int j = 0; j < n; ++j) {
    if (pzero(M[0][j])) continue;
    Mat sub(n - 1, vector<PolyZ>(n - 1));
    for (int i = 1; i < n; ++i)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) sub[i - 1][cc++] = M[i][c];
    PolyZ t = pmul(M[0][j], det_cofactor(sub));
    d = (j % 2 == 0) ? padd(d, t) : psub(d, t);
  }
  return d;
}

PolyZ det_checked(const Mat& M) {
  PolyZ a = det_bareiss(M), b = det_cofactor(M);
  if (a != b) throw std::logic_error("determinant cross-check failed");
  return a;
}

vector<bigint> divisors(bigint n) {
  n = abs(n);
  vector<bigint> out;
  for (bigint d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

// Rational roots of a nonzero integer polynomial.
vector<bigrat> rational_roots(PolyZ p) {
  p = pnorm(p);
  if (pzero(p)) throw std::logic_error("rational_roots of the zero polynomial");
  vector<bigrat> out;
  size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  if (k > 0) {
    out.push_back(0);
    p.erase(p.begin(), p.begin() + k);
  }
  if (p.size() > 1) {
    for (const bigint& u : divisors(p.front()))
      for (const bigint& w : divisors(p.back()))
        for (int s : {1, -1}) {
          bigrat r(s * u, w);
          if (peval(p, r) == 0 && std::find(out.begin(), out.end(), r) == out.end())
            out.push_back(r);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- the eigenvalue systems -------------------------------------------------
// Columns: 0 = f(O+O), 1..q = f(N_{y_i}), q+1 = f(M_{x,1}), q+2 = f(M_{x,0}),
// q+3 = f(O+L_x).

vector<int> resolve_perm(long long q, const vector<int>& nperm) {
  vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  if (!nperm.empty()) {
    if ((long long)nperm.size() != q) throw std::invalid_argument("bad N-permutation size");
    vector<char> seen(q, 0);
    for (int v : nperm) {
      if (v < 0 || v >= q || seen[v]) throw std::invalid_argument("bad N-permutation");
      seen[v] = 1;
    }
    perm = nperm;
  }
  return perm;
}

Mat head_system(long long q, const vector<int>& nperm) {
  vector<int> perm = resolve_perm(q, nperm);
  int cols = (int)q + 4, cm1 = (int)q + 1, cm0 = (int)q + 2, ca = (int)q + 3;
  PolyZ L{0, 1};  // lambda
  Mat M;
  // lambda f(O+O) = (q+1) f(O+L_x)
  {
    vector<PolyZ> r(cols);
    r[0] = L;
    r[ca] = pconst(-(q + 1));
    M.push_back(r);
  }
  // lambda f(N_{y_i}) = (q+1) f(M_{x,1})
  for (int i = 0; i < q; ++i) {
    vector<PolyZ> r(cols);
    r[1 + perm[i]] = L;
    r[cm1] = pconst(-(q + 1));
    M.push_back(r);
  }
  // lambda f(M_{x,1}) = f(M_{x,0}) + sum_i f(N_{y_i})
  {
    vector<PolyZ> r(cols);
    r[cm1] = L;
    for (int i = 1; i <= q; ++i) r[i] = pconst(-1);
    r[cm0] = pconst(-1);
    M.push_back(r);
  }
  // lambda f(M_{x,0}) = q f(M_{x,1}) + f(O+L_x)
  {
    vector<PolyZ> r(cols);
    r[cm0] = L;
    r[cm1] = pconst(-q);
    r[ca] = pconst(-1);
    M.push_back(r);
  }
  return M;
}

vector<PolyZ> toroidal_row(long long q) {
  vector<PolyZ> r(q + 4);
  r[0] = pconst(1);
  for (int i = 1; i <= q; ++i) r[i] = pconst(2);
  return r;
}

vector<PolyZ> cusp_row(long long q) {
  vector<PolyZ> r(q + 4);
  r[0] = pconst(1);
  r[q + 2] = pconst(q - 1);
  return r;
}

vector<PolyZ> support_row(long long q) {
  vector<PolyZ> r(q + 4);
  r[q + 3] = pconst(1);
  return r;
}

// Signed maximal minors of the (q+3)x(q+4) head system: the kernel direction
// over Q(lambda), up to a polynomial factor.
vector<PolyZ> head_minors(const Mat& H) {
  int cols = (int)H[0].size();
  vector<PolyZ> v(cols);
  for (int j = 0; j < cols; ++j) {
    Mat sub(H.size(), vector<PolyZ>(cols - 1));
    for (size_t i = 0; i < H.size(); ++i)
      for (int c = 0, cc = 0; c < cols; ++c)
        if (c != j) sub[i][cc++] = H[i][c];
    PolyZ d = det_checked(sub);
    v[j] = (j % 2 == 0) ? d : pneg(d);
  }
  return v;
}

void check_q(long long q) {
  if (q != 2 && q != 3 && q != 4) throw std::invalid_argument("q must be 2, 3 or 4");
}

Mat at_lambda_rows(long long q, const std::string& condition) {
  Mat M = head_system(q, {});
  if (condition == "toroidal") {
    M.push_back(toroidal_row(q));
  } else if (condition == "cusp") {
    M.push_back(cusp_row(q));
    M.push_back(support_row(q));
  } else {
    throw std::invalid_argument("condition must be 'toroidal' or 'cusp'");
  }
  return M;
}

vector<vector<bigrat>> eval_matrix(const Mat& M, const bigrat& lambda) {
  vector<vector<bigrat>> A(M.size(), vector<bigrat>(M[0].size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M[0].size(); ++j) A[i][j] = peval(M[i][j], lambda);
  return A;
}

// Row-reduce in place; returns pivot column per reduced row.
vector<int> rref(vector<vector<bigrat>>& A) {
  int rows = (int)A.size(), cols = rows ? (int)A[0].size() : 0;
  vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(A[r], A[p]);
    bigrat inv = A[r][c];
    for (int j = 0; j < cols; ++j) A[r][j] /= inv;
    for (int i = 0; i < rows; ++i)
      if (i != r && A[i][c] != 0) {
        bigrat f = A[i][c];
        for (int j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
      }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank_at(const Mat& M, const bigrat& lambda) {
  auto A = eval_matrix(M, lambda);
  return (int)rref(A).size();
}

}  // namespace

PolyZ toroidal_polynomial(long long q, const std::vector<int>& nperm) {
  check_q(q);
  Mat H = head_system(q, nperm);
  vector<PolyZ> v = head_minors(H);
  PolyZ g;
  for (const PolyZ& p : v) g = pgcd(g, p);
  if (pzero(g)) throw std::logic_error("head system has identically zero minors");
  PolyZ T;
  vector<PolyZ> period = toroidal_row(q);
  for (size_t j = 0; j < v.size(); ++j) T = padd(T, pmul(period[j], pdivexact(v[j], g)));
  return T;
}

SpectralResult toroidal_lambdas(long long q, const std::vector<int>& nperm) {
  check_q(q);
  SpectralResult out;
  out.q = q;
  PolyZ T = toroidal_polynomial(q, nperm);
  // Determinant of the appended square system, two ways (consistency check),
  // kept for the lambda = 0 analysis below.
  Mat A = head_system(q, nperm);
  A.push_back(toroidal_row(q));
  PolyZ D = det_checked(A);
  for (const bigrat& r : rational_roots(T)) {
    // certify: the appended square system drops rank at r
    if (rank_at(A, r) < (int)q + 4) out.roots.push_back(r);
  }
  if (peval(D, 0) == 0 && peval(T, 0) != 0)
    out.notes.push_back(
        "lambda=0 is a root of the appended determinant but not of the period "
        "polynomial: the head system drops rank at lambda=0 (f(M_{x,1}) = "
        "f(O+L_x) = 0 with f(O+O), f(N_{y_i}) free), while the period "
        "condition on the generic solution family forces lambda^2 = q^2; the "
        "degenerate lambda=0 kernel carries no toroidal eigenform of the "
        "generic family.");
  return out;
}

SpectralResult cusp_lambdas(long long q, const std::vector<int>& nperm) {
  check_q(q);
  SpectralResult out;
  out.q = q;
  Mat H = head_system(q, nperm);
  Mat A1 = H, A2 = H;
  A1.push_back(cusp_row(q));
  A2.push_back(support_row(q));
  PolyZ d1 = det_checked(A1), d2 = det_checked(A2);
  vector<bigrat> cand;
  if (!pzero(d1) && !pzero(d2)) {
    for (const bigrat& r : rational_roots(d1))
      if (peval(d2, r) == 0) cand.push_back(r);
  } else if (!pzero(d1)) {
    cand = rational_roots(d1);
  } else if (!pzero(d2)) {
    cand = rational_roots(d2);
  } else {
    throw std::logic_error("both cusp subsystem determinants vanish identically");
  }
  Mat F = H;
  F.push_back(cusp_row(q));
  F.push_back(support_row(q));
  for (const bigrat& r : cand)
    if (rank_at(F, r) < (int)q + 4) out.roots.push_back(r);
  out.notes.push_back(
      "cusp condition f(O+O) + (q-1) f(M_{x,0}) = 0 imposed together with the "
      "finite-support constraint f(O+L_{kx}) = 0 for k >= 1 (the tail "
      "recursion reduces it to f(O+L_x) = 0); without the support row the "
      "head+cusp system alone does not force lambda = 0.");
  return out;
}

std::vector<std::vector<bigrat>> spectral_kernel_at(long long q,
                                                    const std::string& condition,
                                                    const bigrat& lambda) {
  check_q(q);
  Mat M = at_lambda_rows(q, condition);
  auto A = eval_matrix(M, lambda);
  vector<int> pivots = rref(A);
  int cols = (int)q + 4;
  vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<bigrat>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<bigrat> v(cols, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][c];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace hk
