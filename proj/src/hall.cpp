#include "hall.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "gf.hpp"

namespace hk {

using bigint = boost::multiprecision::cpp_int;

namespace {

using std::vector;

int pweight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

void check_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i && p[i] > p[i - 1]) throw std::invalid_argument("partition parts must decrease");
  }
}

long long weight_guard() {
  long long g = 4;
  if (const char* e = std::getenv("HECKE_ATLAS_GUARD")) g = std::max(g, atoll(e));
  return g;
}

// F_{q_y} for the prime powers reachable from the test curves.
GF field_of(long long q_y) {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    long long m = q_y;
    int e = 0;
    while (m % p == 0) { m /= p; ++e; }
    if (m == 1 && e > 0) return GF(p, e);
  }
  throw std::invalid_argument("q_y is not a small prime power");
}

// The finite module M_lambda = (+)_i F[t]/(t^{lambda_i}) with precomputed
// operation tables; elements are indices into a flat enumeration.
struct Module {
  GF F;
  Partition lam;
  int dim = 0;                 // |lambda| = F-dimension
  long long size = 0;          // q_y^{|lambda|}
  vector<int> off;             // coefficient offset of each component
  vector<vector<int>> addt;    // addition table
  vector<int> tmult;           // multiplication by t
  vector<vector<int>> smult;   // scalar multiplication [c][elem]

  explicit Module(GF f, Partition l) : F(std::move(f)), lam(std::move(l)) {
    dim = pweight(lam);
    size = 1;
    for (int i = 0; i < dim; ++i) size *= F.size();
    if (size > 200000) throw std::domain_error("hall enumeration guard exceeded");
    off.resize(lam.size());
    for (size_t i = 0, o = 0; i < lam.size(); ++i) { off[i] = (int)o; o += lam[i]; }
    // digits of element e: base-|F| little-endian over the dim coefficients
    auto digit = [&](long long e, int k) { return (uint32_t)((e / ipow(k)) % F.size()); };
    addt.assign(size, vector<int>(size));
    for (long long a = 0; a < size; ++a)
      for (long long b = 0; b < size; ++b) {
        long long r = 0;
        for (int k = dim - 1; k >= 0; --k) r = r * F.size() + F.add(digit(a, k), digit(b, k));
        addt[a][b] = (int)r;
      }
    tmult.assign(size, 0);
    for (long long a = 0; a < size; ++a) {
      long long r = 0;
      for (int k = dim - 1; k >= 0; --k) {
        int comp = comp_of(k);
        uint32_t c = (k == off[comp]) ? 0 : digit(a, k - 1);  // t * t^{k-1}
        r = r * F.size() + c;
      }
      tmult[a] = (int)r;
    }
    smult.assign(F.size(), vector<int>(size));
    for (uint32_t c = 0; c < F.size(); ++c)
      for (long long a = 0; a < size; ++a) {
        long long r = 0;
        for (int k = dim - 1; k >= 0; --k) r = r * F.size() + F.mul(c, digit(a, k));
        smult[c][a] = (int)r;
      }
  }

  long long ipow(int k) const {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= F.size();
    return r;
  }
  int comp_of(int k) const {
    for (size_t i = 0; i < lam.size(); ++i)
      if (k < off[i] + lam[i]) return (int)i;
    throw std::logic_error("bad coefficient index");
  }

  // all r*g for r in F[t]/(t^{lam_1}) (the ring orbit of g)
  vector<int> ring_orbit(int g) const {
    int k = lam.empty() ? 0 : lam[0];
    vector<int> tg(k);
    int cur = g;
    for (int j = 0; j < k; ++j) { tg[j] = cur; cur = tmult[cur]; }
    vector<char> mask(size, 0);
    vector<int> out;
    long long rsize = ipow(k);
    for (long long r = 0; r < rsize; ++r) {
      int acc = 0;
      long long rr = r;
      for (int j = 0; j < k; ++j) {
        uint32_t c = (uint32_t)(rr % F.size());
        rr /= F.size();
        if (c) acc = addt[acc][smult[c][tg[j]]];
      }
      if (!mask[acc]) { mask[acc] = 1; out.push_back(acc); }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int logq(long long n) const {
    int l = 0;
    while (n > 1) { n /= F.size(); ++l; }
    return l;
  }

  vector<int> t_image(const vector<int>& S) const {
    vector<char> mask(size, 0);
    vector<int> out;
    for (int e : S) {
      int v = tmult[e];
      if (!mask[v]) { mask[v] = 1; out.push_back(v); }
    }
    return out;
  }

  long long sumset_size(const vector<int>& A, const vector<int>& S) const {
    vector<char> mask(size, 0);
    long long n = 0;
    for (int a : A)
      for (int s : S) {
        int v = addt[a][s];
        if (!mask[v]) { mask[v] = 1; ++n; }
      }
    return n;
  }

  // isomorphism type of a submodule given as a sorted element list:
  // conjugate of (dim t^{i-1}S / t^i S)_i
  Partition type_of(vector<int> S) const {
    vector<int> d;
    while (S.size() > 1) {
      vector<int> nxt = t_image(S);
      d.push_back(logq((long long)S.size() / (long long)nxt.size()));
      S = std::move(nxt);
    }
    return conjugate(d);
  }

  // type of M / S via the filtration t^i M + S
  Partition cotype_of(const vector<int>& S) const {
    int k = lam.empty() ? 0 : lam[0];
    vector<int> pw(size);
    std::iota(pw.begin(), pw.end(), 0);  // t^0 M = M
    vector<long long> s;
    for (int i = 0; i <= k; ++i) {
      s.push_back(sumset_size(pw, S));
      pw = t_image(pw);
    }
    vector<int> d;
    for (int i = 1; i <= k; ++i) d.push_back(logq(s[i - 1] / s[i]));
    return conjugate(d);
  }

  static Partition conjugate(const vector<int>& d) {
    Partition out;
    int h = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    for (int i = 1; i <= h; ++i) {
      int c = 0;
      for (int v : d)
        if (v >= i) ++c;
      out.push_back(c);
    }
    return out;
  }
};

// per-(lambda, q_y) census: (cotype, type) -> count over all submodules
using Census = std::map<std::pair<Partition, Partition>, long long>;

const Census& census(const Partition& lam, long long q_y) {
  static std::map<std::pair<Partition, long long>, Census> cache;
  auto key = std::make_pair(lam, q_y);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Module M(field_of(q_y), lam);
  Census out;
  std::set<vector<int>> seen;
  std::queue<vector<int>> work;
  vector<int> zero{0};
  seen.insert(zero);
  work.push(zero);
  while (!work.empty()) {
    vector<int> S = work.front();
    work.pop();
    out[{M.cotype_of(S), M.type_of(S)}] += 1;
    vector<char> in(M.size, 0);
    for (int s : S) in[s] = 1;
    for (int g = 0; g < (int)M.size; ++g) {
      if (in[g]) continue;
      // S is already a submodule, so <S, g> = S + R*g
      vector<int> orb = M.ring_orbit(g);
      vector<char> mask(M.size, 0);
      vector<int> Tv;
      for (int s : S)
        for (int r : orb) {
          int v = M.addt[s][r];
          if (!mask[v]) { mask[v] = 1; Tv.push_back(v); }
        }
      std::sort(Tv.begin(), Tv.end());
      if (seen.insert(Tv).second) work.push(Tv);
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  // standard descent enumeration
  std::function<void(int, int)> rec = [&](int rem, int maxp) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rem, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

QV qv_add(const QV& x, const QV& y) { return {x.a + y.a, x.b + y.b}; }

QV qv_mul(const QV& x, const QV& y, long long q) {
  // (a1 + b1 v)(a2 + b2 v) with v^2 = 1/q
  return {x.a * y.a + x.b * y.b / q, x.a * y.b + x.b * y.a};
}

QV qv_scale(const QV& x, const bigrat& c) { return {x.a * c, x.b * c}; }

bool qv_zero(const QV& x) { return x.a == 0 && x.b == 0; }

QV qv_vpow(long long e, long long q) {
  // v^e: even e -> q^{-e/2}, odd e = 2h+1 -> q^{-h} v
  long long h = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
  bigint pw = 1;
  for (long long i = 0; i < (h >= 0 ? h : -h); ++i) pw *= q;
  bigrat s = h >= 0 ? bigrat(bigint(1), pw) : bigrat(pw);
  if (e % 2 == 0) return {s, 0};
  return {0, s};
}

QV qv_bracket(long long m, long long q) {
  // [m] = v^{m-1} + v^{m-3} + ... + v^{1-m}
  QV r;
  for (long long i = 0; i < m; ++i) r = qv_add(r, qv_vpow(m - 1 - 2 * i, q));
  return r;
}

long long hall_number(const Partition& lam, const Partition& mu, const Partition& nu,
                      long long q_y) {
  check_partition(lam);
  check_partition(mu);
  check_partition(nu);
  if (pweight(mu) + pweight(nu) != pweight(lam)) return 0;
  if (pweight(lam) > weight_guard()) throw std::domain_error("hall weight guard exceeded");
  const Census& c = census(lam, q_y);
  auto it = c.find({mu, nu});
  return it == c.end() ? 0 : it->second;
}

TorsionElement torsion_generator(Ctx& ctx, int m, const Place& y) {
  TorsionElement out;
  out.q = ctx.C.q();
  out.y = y;
  if (m <= 0) throw std::invalid_argument("m must be positive");
  if (m % y.deg != 0) return out;
  int k = m / y.deg;
  bigint qy = 1;
  for (int i = 0; i < y.deg; ++i) qy *= out.q;
  QV front = qv_scale(qv_bracket(m, out.q), bigrat(y.deg, m));
  for (const Partition& lam : partitions_of(k)) {
    bigrat n_u = 1;
    bigint p = 1;
    for (int i = 1; i <= (int)lam.size() - 1; ++i) {
      p *= qy;
      n_u *= (1 - bigrat(p));
    }
    QV coeff = qv_scale(front, n_u);
    if (!qv_zero(coeff)) out.terms[lam] = coeff;
  }
  return out;
}

TorsionElement hall_multiply(const TorsionElement& A, const TorsionElement& B) {
  if (A.y != B.y || A.q != B.q)
    throw std::invalid_argument("hall_multiply needs a common supporting place");
  long long q_y = 1;
  for (int i = 0; i < A.y.deg; ++i) q_y *= A.q;
  TorsionElement out;
  out.q = A.q;
  out.y = A.y;
  for (const auto& [mu, ca] : A.terms)
    for (const auto& [nu, cb] : B.terms) {
      QV c = qv_mul(ca, cb, A.q);
      if (qv_zero(c)) continue;
      for (const Partition& lam : partitions_of(pweight(mu) + pweight(nu))) {
        long long h = hall_number(lam, mu, nu, q_y);
        if (h == 0) continue;
        QV& t = out.terms[lam];
        t = qv_add(t, qv_scale(c, bigrat(h)));
      }
    }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = qv_zero(it->second) ? out.terms.erase(it) : std::next(it);
  return out;
}

SymbolCoeffs character_rhs(Ctx& ctx, const Place& y, int c) {
  if (y.deg != 2) throw std::invalid_argument("character_rhs needs a degree-2 place");
  long long q = ctx.C.q();
  CharTable P2 = characters(ctx, 2);
  long long N2 = P2.count();
  // sigma~(z) per the Frobenius-orbit average; the x0-normalization is built
  // into the transported group law (x0 is the neutral element)
  auto st = [&](long long chi, const Place& z) -> std::complex<double> {
    if (z.deg == 1) return P2.eval(ctx, chi, ctx.C.lift(1, 2, ctx.rep(z)));
    Pt a = ctx.rep(z);
    return 0.5 * (P2.eval(ctx, chi, a) + P2.eval(ctx, chi, ctx.C.frob(2, a)));
  };
  double scale = 2.0;
  for (int i = 0; i < c; ++i) scale /= (double)N2;
  SymbolCoeffs out;
  for (long long chi = 0; chi < N2; ++chi) {
    std::complex<double> w = scale * std::conj(st(chi, y));
    // [2]^{-1} T_{(0,2),z} is v-free: (K^{(2)} + (1-q) K^{(1,1)})/2 at
    // degree-1 z, and K_z at degree-2 z
    for (const Place& z : ctx.places(1)) {
      std::complex<double> f = w * st(chi, z);
      out[{z, Partition{2}}] += f * 0.5;
      out[{z, Partition{1, 1}}] += f * 0.5 * (double)(1 - q);
    }
    for (const Place& z : ctx.places(2)) out[{z, Partition{1}}] += w * st(chi, z);
  }
  return out;
}

CharDecompReport verify_character_decomposition(Ctx& ctx, const Place& y) {
  CharDecompReport rep;
  rep.y = y;
  for (int c : {1, 2}) {
    SymbolCoeffs rhs = character_rhs(ctx, y, c);
    double res = 0;
    std::pair<Place, Partition> target{y, Partition{1}};
    if (!rhs.count(target)) rhs[target] = 0.0;
    for (const auto& [sym, v] : rhs) {
      std::complex<double> want = (sym == target) ? 1.0 : 0.0;
      res = std::max(res, std::abs(v - want));
    }
    (c == 1 ? rep.residual_c1 : rep.residual_c2) = res;
  }
  rep.note = rep.residual_c1 < 1e-9
                 ? "normalization 2 N2^{-1} [2]^{-1} reproduces K_y"
                 : (rep.residual_c2 < 1e-9
                        ? "normalization 2 N2^{-2} [2]^{-1} reproduces K_y"
                        : "neither normalization constant reproduces K_y");
  return rep;
}

}  // namespace hk
