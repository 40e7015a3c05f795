#include "pcx/lorentzian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pcx {

// ------------------------------------------------------------ dual numbers

namespace {

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.e + b.e}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.e - b.e}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.e + a.e * b.v}; }
Dual operator*(const Rational& c, const Dual& a) { return {c * a.v, c * a.e}; }
Dual operator/(const Dual& a, const Rational& c) { return {a.v / c, a.e / c}; }

}  // namespace

bool operator<(const Dual& a, const Dual& b) { return a.v != b.v ? a.v < b.v : a.e < b.e; }
bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.e == b.e; }

namespace {

template <class S>
S lift(const Rational& x);
template <>
Rational lift<Rational>(const Rational& x) {
  return x;
}
template <>
Dual lift<Dual>(const Rational& x) {
  return {x, 0};
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Coefficients (lowest first) of the polynomial of degree <= n through (x, vals[x]), x = 0..n.
std::vector<Rational> interpolate(const std::vector<Rational>& vals) {
  int n = static_cast<int>(vals.size());
  // Newton forward differences, then expand the falling factorial basis.
  std::vector<Rational> diff = vals;
  std::vector<Rational> newton(n);
  for (int k = 0; k < n; ++k) {
    newton[k] = diff[0] / factorial(k);
    for (int i = 0; i + 1 < n - k; ++i) diff[i] = diff[i + 1] - diff[i];
  }
  std::vector<Rational> coeff(n, 0), basis(1, 1);  // basis = x(x-1)...(x-k+1)
  for (int k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) coeff[i] += newton[k] * basis[i];
    std::vector<Rational> next(basis.size() + 1, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      next[i + 1] += basis[i];
      next[i] -= basis[i] * k;
    }
    basis = std::move(next);
  }
  return coeff;
}

int missing_count(const Face& f) { return static_cast<int>(std::count(f.begin(), f.end(), -1)); }

std::vector<Face> sample(std::vector<Face> faces, std::size_t max, std::mt19937_64& rng) {
  if (max == 0 || faces.size() <= max) return faces;
  std::shuffle(faces.begin(), faces.end(), rng);
  faces.resize(max);
  return faces;
}

Rational random_entry(std::mt19937_64& rng) { return ratio(1 + static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 5)); }

std::string vlabel(const PathComplex& X, int v) {
  if (v == BOTTOM) return "0^";
  if (v == TOP) return "1^";
  return X.vertex(v).label;
}

}  // namespace

// ------------------------------------------------------------ PolyContext

PolyContext::PolyContext(const PathComplex& X, AlphaBeta ab, std::size_t face_cap) : X_(X), ab_(std::move(ab)) {
  int n = X.num_vertices();
  comparable_.assign(n, std::vector<char>(n, 0));
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    const auto& F = X.facet(f);
    for (int a : F)
      for (int b : F) comparable_[a][b] = 1;
  }
  try {
    face_count_ = X.all_faces(face_cap).size();
  } catch (const Error& e) {
    if (e.name() != "SizeLimitExceeded") throw;
    throw Error("ExponentialBlowup", "more than " + std::to_string(face_cap) + " faces");
  }
}

bool PolyContext::comparable(int a, int b) const {
  if (a < 0 || b < 0) return true;
  return comparable_[a][b];
}

const std::vector<int>& PolyContext::link_vertices(const Face& sigma) const {
  auto it = link_cache_.find(sigma);
  if (it != link_cache_.end()) return it->second;
  std::vector<int> out;
  auto fs = X_.facets_containing(sigma);
  if (fs.empty()) throw Error("NotAFace", X_.face_label(sigma) + " is not a face");
  for (int i = 0; i < X_.d(); ++i) {
    if (sigma[i] >= 0) continue;
    std::set<int> here;
    for (std::size_t f : fs) here.insert(X_.facet(f)[i]);
    out.insert(out.end(), here.begin(), here.end());
  }
  return link_cache_.emplace(sigma, std::move(out)).first->second;
}

std::pair<int, int> PolyContext::neighbours(const Face& sigma, int F) const {
  int p = X_.vertex(F).part;
  int lo = BOTTOM, hi = TOP;
  for (int i = p - 1; i >= 0; --i)
    if (sigma[i] >= 0) {
      lo = sigma[i];
      break;
    }
  for (int i = p + 1; i < X_.d(); ++i)
    if (sigma[i] >= 0) {
      hi = sigma[i];
      break;
    }
  return {lo, hi};
}

template <class S>
std::vector<S> PolyContext::pi_apply_t(const Face& sigma, int F, const std::vector<S>& t) const {
  const auto& lv = link_vertices(sigma);
  if (F < 0 || !std::binary_search(lv.begin(), lv.end(), F, [&](int a, int b) {
        int pa = X_.vertex(a).part, pb = X_.vertex(b).part;
        return pa != pb ? pa < pb : a < b;
      }))
    throw Error("NotInLink", (F < 0 ? std::string("?") : X_.vertex(F).label) + " is not in the link of " +
                                 X_.face_label(sigma));
  auto [lo, hi] = neighbours(sigma, F);
  Face next = sigma;
  int pF = X_.vertex(F).part;
  next[pF] = F;
  int plo = lo == BOTTOM ? -1 : X_.vertex(lo).part;
  int phi = hi == TOP ? X_.d() : X_.vertex(hi).part;
  std::vector<S> u = t;
  for (int H : link_vertices(next)) {
    int pH = X_.vertex(H).part;
    if (pH > plo && pH < pF)
      u[H] = t[H] - ab_.alpha(lo, F, H) * t[F];
    else if (pH > pF && pH < phi)
      u[H] = t[H] - ab_.beta(F, hi, H) * t[F];
  }
  return u;
}

RVec PolyContext::pi_apply(const Face& sigma, int F, const RVec& t) const { return pi_apply_t<Rational>(sigma, F, t); }

RVec PolyContext::pi_face(const Face& sigma, const std::vector<int>& tau_order, const RVec& t) const {
  Face cur = sigma;
  RVec u = t;
  for (int v : tau_order) {
    u = pi_apply(cur, v, u);
    cur[X_.vertex(v).part] = v;
  }
  return u;
}

RVec PolyContext::pi_sigma(const Face& sigma, const RVec& t) const {
  std::vector<int> order;
  for (int v : sigma)
    if (v >= 0) order.push_back(v);
  return pi_face(X_.empty_face(), order, t);
}

template <class S>
S PolyContext::eval_rec(const Face& sigma, const std::vector<S>& t, Memo<S>& memo) {
  const auto& lv = link_vertices(sigma);
  if (lv.empty()) {
    auto w = weight_cache_.find(sigma);
    if (w == weight_cache_.end()) w = weight_cache_.emplace(sigma, X_.face_weight(sigma)).first;
    return lift<S>(w->second);
  }
  std::vector<S> key;
  key.reserve(lv.size());
  for (int v : lv) key.push_back(t[v]);
  auto& slot = memo[sigma];
  for (const auto& [k, val] : slot)
    if (k == key) return val;
  S sum = lift<S>(0);
  std::vector<S> u(t.size());
  for (int F : lv) {
    Face next = sigma;
    int pF = X_.vertex(F).part;
    next[pF] = F;
    // only the entries on the link of next are read below
    auto [lo, hi] = neighbours(sigma, F);
    int plo = lo == BOTTOM ? -1 : X_.vertex(lo).part;
    int phi = hi == TOP ? X_.d() : X_.vertex(hi).part;
    for (int H : link_vertices(next)) {
      int pH = X_.vertex(H).part;
      if (pH > plo && pH < pF)
        u[H] = t[H] - ab_.alpha(lo, F, H) * t[F];
      else if (pH > pF && pH < phi)
        u[H] = t[H] - ab_.beta(F, hi, H) * t[F];
      else
        u[H] = t[H];
    }
    sum = sum + t[F] * eval_rec(next, u, memo);
  }
  S out = sum / Rational(missing_count(sigma));
  memo[sigma].emplace_back(std::move(key), out);
  return out;
}

Rational PolyContext::eval_p(const Face& sigma, const RVec& t) { return eval_rec<Rational>(sigma, t, memo_); }

Dual PolyContext::eval_p_dual(const Face& sigma, const std::vector<Dual>& t) {
  return eval_rec<Dual>(sigma, t, memo_dual_);
}

Rational PolyContext::directional_derivative(const Face& sigma, const RVec& t, const RVec& v) {
  std::vector<Dual> td(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) td[i] = {t[i], v[i]};
  return eval_p_dual(sigma, td).e;
}

RVec PolyContext::grad_p(const Face& sigma, const RVec& t) {
  RVec g(X_.num_vertices(), 0);
  for (int F : link_vertices(sigma)) {
    Face next = sigma;
    next[X_.vertex(F).part] = F;
    g[F] = eval_p(next, pi_apply(sigma, F, t));
  }
  return g;
}

Rational PolyContext::eval_q(const Face& sigma, const RVec& t) { return eval_p(sigma, pi_sigma(sigma, t)); }

void PolyContext::clear_memo() {
  memo_.clear();
  memo_dual_.clear();
}

// ------------------------------------------------------------ vectors

RVec alpha_vector(const PolyContext& ctx, int K, int L) {
  const auto& X = ctx.complex();
  const auto& ab = ctx.system();
  RVec v(X.num_vertices(), 0);
  for (int H = 0; H < X.num_vertices(); ++H) {
    int t = ab.type(H);
    if (t > ab.type(K) && t < ab.type(L) && ctx.comparable(K, H) && ctx.comparable(H, L)) v[H] = ab.alpha(K, L, H);
  }
  return v;
}

RVec beta_vector(const PolyContext& ctx, int K, int L) {
  const auto& X = ctx.complex();
  const auto& ab = ctx.system();
  RVec v(X.num_vertices(), 0);
  for (int H = 0; H < X.num_vertices(); ++H) {
    int t = ab.type(H);
    if (t > ab.type(K) && t < ab.type(L) && ctx.comparable(K, H) && ctx.comparable(H, L)) v[H] = ab.beta(K, L, H);
  }
  return v;
}

// ------------------------------------------------------------ Hessians

HessianReport hessian_quadratic(PolyContext& ctx, const Face& sigma) {
  HessianReport r;
  r.matrix = colored_quadratic(ctx.complex(), ctx.system(), sigma, &r.vertices);
  int n = static_cast<int>(r.vertices.size());
  int N = ctx.complex().num_vertices();
  std::vector<Rational> single(n);
  for (int a = 0; a < n; ++a) {
    RVec e(N, 0);
    e[r.vertices[a]] = 1;
    single[a] = ctx.eval_p(sigma, e);
  }
  r.by_evaluation.assign(n, std::vector<Rational>(n, 0));
  for (int a = 0; a < n; ++a) {
    r.by_evaluation[a][a] = 2 * single[a];
    for (int b = a + 1; b < n; ++b) {
      RVec e(N, 0);
      e[r.vertices[a]] = 1;
      e[r.vertices[b]] = 1;
      r.by_evaluation[a][b] = r.by_evaluation[b][a] = ctx.eval_p(sigma, e) - single[a] - single[b];
    }
  }
  r.agree = r.matrix == r.by_evaluation;
  return r;
}

// ------------------------------------------------------------ cones

ConeVector cone_point(const PolyContext& ctx, const Face& sigma) {
  const auto& X = ctx.complex();
  const auto& ab = ctx.system();
  ConeVector c;
  c.sigma = sigma;
  c.v.assign(X.num_vertices(), 0);
  c.fallback_s1 = !ab.from_coloring();
  for (int H : ctx.link_vertices(sigma)) {
    auto [lo, hi] = ctx.neighbours(sigma, H);
    if (c.fallback_s1) {
      Rational a = ratio(ab.type(H) - ab.type(lo), ab.type(hi) - ab.type(lo));
      c.v[H] = a * (1 - a);
    } else {
      c.v[H] = ab.alpha(lo, hi, H) * ab.beta(lo, hi, H);
    }
  }
  c.positive = is_pi_nonnegative(ctx, sigma, c.v, true);
  c.checked = true;
  return c;
}

bool is_pi_nonnegative(const PolyContext& ctx, const Face& sigma, const RVec& v, bool strict, std::size_t face_cap) {
  const auto& X = ctx.complex();
  std::size_t visited = 0;
  std::function<bool(const Face&, int, const RVec&)> rec = [&](const Face& f, int last_part, const RVec& u) {
    if (++visited > face_cap) throw Error("ExponentialBlowup", "more than " + std::to_string(face_cap) + " faces");
    const auto& lv = ctx.link_vertices(f);
    for (int H : lv) {
      int s = sgn(u[H]);
      if (s < 0 || (strict && s == 0)) return false;
    }
    for (int H : lv) {
      int p = X.vertex(H).part;
      if (p <= last_part) continue;
      Face next = f;
      next[p] = H;
      if (!rec(next, p, ctx.pi_apply(f, H, u))) return false;
    }
    return true;
  };
  return rec(sigma, -1, v);
}

// ------------------------------------------------------------ mu_{alpha,beta} and derivatives

namespace {

// Occupied 1-based window [i, j] of a contiguous face.
std::optional<std::pair<int, int>> window(const Face& sigma) {
  int d = static_cast<int>(sigma.size());
  int lo = -1, hi = -1;
  for (int k = 0; k < d; ++k)
    if (sigma[k] >= 0) {
      if (lo < 0) lo = k;
      hi = k;
    }
  if (lo < 0) return std::nullopt;
  for (int k = lo; k <= hi; ++k)
    if (sigma[k] < 0) return std::nullopt;
  return std::make_pair(lo + 1, hi + 1);
}

Rational facet_mu_ab(const PathComplex& X, const AlphaBeta& ab, std::size_t f, int i, int j) {
  const auto& tau = X.facet(f);
  int d = X.d();
  Rational w = X.weight(f);
  for (int k = 1; k <= i - 1; ++k) w *= ab.beta(BOTTOM, tau[k], tau[k - 1]);
  for (int k = j + 1; k <= d; ++k) w *= ab.alpha(tau[k - 2], TOP, tau[k - 1]);
  return w;
}

}  // namespace

Rational mu_alpha_beta(const PolyContext& ctx, const Face& sigma) {
  auto win = window(sigma);
  if (!win) throw Error("NotContiguous", ctx.complex().face_label(sigma) + " is not contiguous");
  Rational s = 0;
  for (std::size_t f : ctx.complex().facets_containing(sigma))
    s += facet_mu_ab(ctx.complex(), ctx.system(), f, win->first, win->second);
  return s;
}

Rational mixed_derivative(PolyContext& ctx, const Face& sigma, const RVec& t, const RVec& u, int a, const RVec& w,
                          int b) {
  int deg = missing_count(sigma);
  if (a < 0 || b < 0) throw Error("InvalidArgument", "negative derivative order");
  if (a + b > deg) return 0;
  auto point = [&](const Rational& x, const Rational& y) {
    RVec p = t;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += x * u[k] + y * w[k];
    return ctx.eval_q(sigma, p);
  };
  if (a + b == deg) {
    // q(x u + w) has x^a coefficient equal to the x^a y^b coefficient of q(x u + y w)
    std::vector<Rational> vals;
    for (int x = 0; x <= deg; ++x) {
      RVec p(t.size(), 0);
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = x * u[k] + w[k];
      vals.push_back(ctx.eval_q(sigma, p));
    }
    return interpolate(vals)[a] * factorial(a) * factorial(b);
  }
  std::vector<Rational> cx;
  for (int x = 0; x <= deg; ++x) {
    std::vector<Rational> vals;
    for (int y = 0; y <= deg; ++y) vals.push_back(point(x, y));
    cx.push_back(interpolate(vals)[b]);
  }
  return interpolate(cx)[a] * factorial(a) * factorial(b);
}

Rational polarization(PolyContext& ctx, const Face& sigma, const std::vector<RVec>& dirs) {
  int k = static_cast<int>(dirs.size());
  if (k != missing_count(sigma)) throw Error("InvalidArgument", "polarization needs one direction per missing part");
  int N = ctx.complex().num_vertices();
  Rational total = 0;
  for (Mask m = 0; m < (Mask(1) << k); ++m) {
    RVec p(N, 0);
    for (int i = 0; i < k; ++i)
      if ((m >> i) & 1)
        for (int v = 0; v < N; ++v) p[v] += dirs[i][v];
    Rational q = ctx.eval_q(sigma, p);
    if ((k - popcount(m)) % 2) total -= q;
    else total += q;
  }
  return total;
}

// ------------------------------------------------------------ c_k sequences

SequenceReport ck_sequence(const PathComplex& X, const AlphaBeta& ab, bool poly_check) {
  SequenceReport r;
  int d = X.d();
  r.d = d;
  r.via_beta.assign(d + 1, 0);
  r.via_alpha.assign(d + 1, 0);
  std::vector<Rational> closed(d + 1, 0);
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    const auto& tau = X.facet(f);
    for (int k = 1; k <= d; ++k) {
      Rational m = facet_mu_ab(X, ab, f, k, k);
      int F = tau[k - 1];
      r.via_beta[k] += ab.beta(BOTTOM, TOP, F) * m;
      r.via_alpha[k - 1] += ab.alpha(BOTTOM, TOP, F) * m;
    }
    if (ab.from_coloring()) {
      std::vector<Rational> phi(d + 2);
      phi[0] = ab.phi(BOTTOM);
      phi[d + 1] = ab.phi(TOP);
      for (int i = 1; i <= d; ++i) phi[i] = ab.phi(tau[i - 1]);
      Rational num = X.weight(f);
      for (int i = 0; i <= d; ++i) num *= phi[i + 1] - phi[i];
      for (int k = 0; k <= d; ++k) {
        Rational den = phi[d + 1] - phi[0];
        for (int i = 1; i <= k; ++i) den *= phi[i] - phi[0];
        for (int i = k + 1; i <= d; ++i) den *= phi[d + 1] - phi[i];
        closed[k] += num / den;
      }
    }
  }
  r.c.assign(d + 1, 0);
  r.c[0] = r.via_alpha[0];
  r.c[d] = r.via_beta[d];
  for (int k = 1; k < d; ++k) {
    r.c[k] = r.via_beta[k];
    if (r.via_beta[k] != r.via_alpha[k]) r.expressions_agree = false;
  }
  if (ab.from_coloring()) {
    r.closed = closed;
    r.closed_agrees = closed == r.c;
  }
  if (poly_check) {
    PolyContext ctx(X, ab);
    RVec al = alpha_vector(ctx), be = beta_vector(ctx);
    Rational df = factorial(d);
    for (int x = 0; x <= d; ++x) {
      RVec t(X.num_vertices());
      for (int v = 0; v < X.num_vertices(); ++v) t[v] = be[v] * x + al[v];
      Rational lhs = df * ctx.eval_p(X.empty_face(), t);
      Rational rhs = 0, xp = 1;
      for (int k = 0; k <= d; ++k) {
        rhs += binom(d, k) * r.c[k] * xp;
        xp *= x;
      }
      if (lhs != rhs) r.polynomial_identity = false;
    }
  }
  r.certified = colored_toplink_check(X, ab).pass;
  int fail = -1;
  r.log_concave = log_concave(r.c, &fail);
  if (!r.log_concave) r.fails_at = fail;
  return r;
}

SequenceReport ck_sequence(const PathComplex& X, const Coloring& c, bool poly_check) {
  return ck_sequence(X, AlphaBeta::from_coloring(X, c), poly_check);
}

// ------------------------------------------------------------ ell vectors

EllSystem ell_system(const PolyContext& ctx) {
  const AlphaBeta* ab = &ctx.system();
  EllSystem E;
  if (ab->s()) {
    Rational s = *ab->s();
    E.integral_m = true;
    E.phi = [s](const Rational& a, const Rational& b) {
      Rational diff = b - a;
      if (diff.get_den() != 1) throw Error("InvalidArgument", "s-analog phi needs integer arguments");
      return s_analog(diff.get_num().get_si(), s);
    };
    E.psi = [ab](int v) { return Rational(ab->type(v)); };
  } else {
    E.phi = [](const Rational& a, const Rational& b) { return Rational(b - a); };
    E.psi = [ab](int v) { return ab->phi(v); };
  }
  return E;
}

void check_phi2(const PolyContext& ctx, const EllSystem& E) {
  std::set<Rational> vals{E.psi(BOTTOM), E.psi(TOP)};
  for (int v = 0; v < ctx.complex().num_vertices(); ++v) vals.insert(E.psi(v));
  std::vector<Rational> x(vals.begin(), vals.end());
  int n = static_cast<int>(x.size());
  std::mt19937_64 rng(12345);
  auto check = [&](int a, int b, int c, int e) {
    const Rational &k = x[a], &m = x[b], &f = x[c], &l = x[e];
    if (E.phi(k, f) * E.phi(m, l) - E.phi(k, l) * E.phi(m, f) != E.phi(k, m) * E.phi(f, l))
      throw Error("Phi2ConditionFailed", "phi2 identity fails at (" + to_string(k) + ", " + to_string(m) + ", " +
                                             to_string(f) + ", " + to_string(l) + ")");
  };
  if (n <= 30) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int e = c + 1; e < n; ++e) check(a, b, c, e);
  } else {
    for (int t = 0; t < 20000; ++t) {
      std::vector<int> idx(4);
      for (auto& i : idx) i = static_cast<int>(rng() % n);
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
      check(idx[0], idx[1], idx[2], idx[3]);
    }
  }
}

RVec ell_vector(const PolyContext& ctx, const EllSystem& E, const Rational& m, int K, int L) {
  const auto& X = ctx.complex();
  const auto& ab = ctx.system();
  Rational k = E.psi(K), l = E.psi(L);
  if (!(k < m && m < l))
    throw Error("InvalidArgument", "need psi(K) < m < psi(L), got m = " + to_string(m));
  RVec v(X.num_vertices(), 0);
  for (int H = 0; H < X.num_vertices(); ++H) {
    int t = ab.type(H);
    if (!(t > ab.type(K) && t < ab.type(L) && ctx.comparable(K, H) && ctx.comparable(H, L))) continue;
    Rational f = E.psi(H);
    if (f <= m) v[H] = E.phi(k, f) / E.phi(k, l) * E.phi(m, l);
    else v[H] = E.phi(f, l) / E.phi(k, l) * E.phi(k, m);
  }
  return v;
}

Rational c_phi(const EllSystem& E, const std::vector<int>& occupied, int d) {
  std::vector<int> a{0};
  a.insert(a.end(), occupied.begin(), occupied.end());
  a.push_back(d + 1);
  Rational c = 1;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    Rational num = 1;
    for (int i = a[j]; i < a[j + 1]; ++i) num *= E.phi(i, i + 1);
    c *= num / E.phi(a[j], a[j + 1]);
  }
  return c;
}

// ------------------------------------------------------------ identity reports

bool IdentityReport::pass() const {
  for (const auto& [k, n] : violations)
    if (n > 0) return false;
  return true;
}

void IdentityReport::merge(const IdentityReport& o) {
  for (const auto& [k, n] : o.checked) checked[k] += n;
  for (const auto& [k, n] : o.violations) violations[k] += n;
  for (const auto& w : o.witnesses)
    if (witnesses.size() < 20) witnesses.push_back(w);
}

void IdentityReport::record(const std::string& what, bool ok, const std::string& witness) {
  ++checked[what];
  violations[what] += ok ? 0 : 1;
  if (!ok && witnesses.size() < 20) witnesses.push_back(what + ": " + witness);
}

IdentityReport check_alpha_beta_identities(const PolyContext& ctx) {
  const auto& X = ctx.complex();
  const auto& ab = ctx.system();
  IdentityReport r;
  int d = X.d();
  std::unordered_set<std::uint64_t> seen;
  auto pack = [](int a, int b, int c, int e) {
    auto u = [](int x) { return static_cast<std::uint64_t>(x + 2) & 0xffff; };
    return (u(a) << 48) | (u(b) << 32) | (u(c) << 16) | u(e);
  };
  std::vector<int> ext(d + 2);
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    ext[0] = BOTTOM;
    ext[d + 1] = TOP;
    for (int i = 0; i < d; ++i) ext[i + 1] = X.facet(f)[i];
    for (int p = 0; p <= d + 1; ++p)
      for (int q = p + 1; q <= d + 1; ++q)
        for (int s = q + 1; s <= d + 1; ++s) {
          int K = ext[p], F = ext[q], L = ext[s];
          if (F == TOP) continue;
          // three-chains: range and, for colorings, alpha + beta = 1
          if (seen.insert(pack(K, F, L, -2 - 1)).second) {
            Rational a = ab.alpha(K, L, F), b = ab.beta(K, L, F);
            std::string w = vlabel(X, K) + " < " + vlabel(X, F) + " < " + vlabel(X, L);
            r.record("range", a >= 0 && a <= 1 && b >= 0 && b <= 1, w);
            if (ab.from_coloring()) r.record("alpha_plus_beta", a + b == 1, w);
          }
          for (int e = s + 1; e <= d + 1; ++e) {
            int G = L, L2 = ext[e];
            if (G == TOP) continue;
            if (!seen.insert(pack(K, F, G, L2)).second) continue;
            std::string w =
                vlabel(X, K) + " < " + vlabel(X, F) + " < " + vlabel(X, G) + " < " + vlabel(X, L2);
            r.record("identity1", ab.alpha(K, L2, F) == ab.alpha(K, G, F) * ab.alpha(K, L2, G), w);
            r.record("identity2", ab.beta(K, L2, G) == ab.beta(F, L2, G) * ab.beta(K, L2, F), w);
            r.record("identity3", ab.alpha(F, L2, G) == ab.alpha(K, L2, G) - ab.beta(F, L2, G) * ab.alpha(K, L2, F), w);
            r.record("identity4", ab.beta(K, G, F) == ab.beta(K, L2, F) - ab.alpha(K, G, F) * ab.beta(K, L2, G), w);
            // quadratic phi identity behind the system
            Rational pKF, pKG, pKL, pFG, pFL, pGL;
            if (ab.s()) {
              const Rational& s_ = *ab.s();
              auto P = [&](int x, int y) { return s_analog(ab.type(y) - ab.type(x), s_); };
              pKF = P(K, F), pKG = P(K, G), pKL = P(K, L2), pFG = P(F, G), pFL = P(F, L2), pGL = P(G, L2);
            } else {
              auto P = [&](int x, int y) { return Rational(ab.phi(y) - ab.phi(x)); };
              pKF = P(K, F), pKG = P(K, G), pKL = P(K, L2), pFG = P(F, G), pFL = P(F, L2), pGL = P(G, L2);
            }
            r.record("phi_quadratic", pKG * pFL - pKL * pFG == pKF * pGL, w);
          }
        }
  }
  return r;
}

IdentityReport check_commutativity(const PolyContext& ctx, std::size_t max_faces) {
  const auto& X = ctx.complex();
  IdentityReport r;
  std::mt19937_64 rng(99);
  int N = X.num_vertices();
  RVec rnd(N);
  for (auto& x : rnd) x = random_entry(rng);
  for (const Face& sigma : sample(X.all_faces(), max_faces, rng)) {
    if (missing_count(sigma) < 2) continue;
    const auto& lv = ctx.link_vertices(sigma);
    for (std::size_t a = 0; a < lv.size(); ++a)
      for (std::size_t b = a + 1; b < lv.size(); ++b) {
        int F = lv[a], G = lv[b];
        if (X.vertex(F).part == X.vertex(G).part) continue;
        Face both = sigma;
        both[X.vertex(F).part] = F;
        both[X.vertex(G).part] = G;
        if (!X.is_face(both)) continue;
        const auto& target = ctx.link_vertices(both);
        RVec eF(N, 0), eG(N, 0);
        eF[F] = 1;
        eG[G] = 1;
        bool ok = true;
        for (const RVec* t : {&eF, &eG, &rnd}) {
          RVec x = ctx.pi_face(sigma, {F, G}, *t), y = ctx.pi_face(sigma, {G, F}, *t);
          for (int H : target) ok &= x[H] == y[H];
        }
        r.record("pi_commutativity", ok, X.face_label(sigma) + " + {" + X.vertex(F).label + ", " + X.vertex(G).label + "}");
      }
  }
  return r;
}

IdentityReport check_derivatives(PolyContext& ctx, const PointOptions& opt) {
  const auto& X = ctx.complex();
  IdentityReport r;
  std::mt19937_64 rng(opt.seed);
  int N = X.num_vertices();
  int d = X.d();
  auto rand_vec = [&] {
    RVec t(N);
    for (auto& x : t) x = random_entry(rng);
    return t;
  };
  Face empty = X.empty_face();
  for (int pt = 0; pt < opt.points; ++pt) {
    ctx.clear_memo();
    RVec t = rand_vec(), v = rand_vec();
    Rational p = ctx.eval_p(empty, t);
    RVec g = ctx.grad_p(empty, t);
    Rational tg = 0, vg = 0;
    for (int F = 0; F < N; ++F) {
      tg += t[F] * g[F];
      vg += v[F] * g[F];
    }
    std::string w = "point " + std::to_string(pt);
    r.record("euler", ctx.directional_derivative(empty, t, t) == d * p && tg == d * p, w);
    r.record("derivative_identity", ctx.directional_derivative(empty, t, v) == vg, w);
    if (pt == 0) {
      RVec t2 = t;
      for (auto& x : t2) x *= 2;
      Rational scale = 1;
      for (int i = 0; i < d; ++i) scale *= 2;
      r.record("homogeneity", ctx.eval_p(empty, t2) == scale * p, w);
    }
    if (pt == 0 && N <= 12)
      for (int F = 0; F < N; ++F) {
        RVec e(N, 0);
        e[F] = 1;
        r.record("partial_identity", ctx.directional_derivative(empty, t, e) == g[F], w + " coordinate " + X.vertex(F).label);
      }
  }
  ctx.clear_memo();
  for (const Face& sigma : sample(X.all_faces(), opt.max_faces, rng)) {
    int k = missing_count(sigma);
    if (k == 0 || k == d) continue;
    RVec t = rand_vec(), v = rand_vec();
    Rational p = ctx.eval_p(sigma, t);
    RVec g = ctx.grad_p(sigma, t);
    Rational tg = 0, vg = 0;
    for (int F = 0; F < N; ++F) {
      tg += t[F] * g[F];
      vg += v[F] * g[F];
    }
    r.record("euler", ctx.directional_derivative(sigma, t, t) == k * p, X.face_label(sigma));
    r.record("derivative_identity", ctx.directional_derivative(sigma, t, v) == vg, X.face_label(sigma));
  }
  ctx.clear_memo();
  return r;
}

IdentityReport check_hessians(PolyContext& ctx, std::size_t max_faces) {
  const auto& X = ctx.complex();
  IdentityReport r;
  std::mt19937_64 rng(7);
  for (const Face& sigma : sample(X.faces_of_codim(2), max_faces, rng)) {
    HessianReport h = hessian_quadratic(ctx, sigma);
    r.record("hessian", h.agree, X.face_label(sigma));
    std::vector<int> miss;
    for (int i = 0; i < X.d(); ++i)
      if (sigma[i] < 0) miss.push_back(i);
    if (miss[1] > miss[0] + 1) {
      // zero diagonal and a rank-one off-diagonal block
      int n = static_cast<int>(h.vertices.size());
      bool ok = true;
      for (int a = 0; a < n; ++a) ok &= sgn(h.matrix[a][a]) == 0;
      std::vector<int> lo, hi;
      for (int a = 0; a < n; ++a) (X.vertex(h.vertices[a]).part == miss[0] ? lo : hi).push_back(a);
      for (std::size_t a = 0; a < lo.size(); ++a)
        for (std::size_t b = a + 1; b < lo.size(); ++b)
          for (std::size_t c = 0; c < hi.size(); ++c)
            for (std::size_t e = c + 1; e < hi.size(); ++e)
              ok &= h.matrix[lo[a]][hi[c]] * h.matrix[lo[b]][hi[e]] == h.matrix[lo[a]][hi[e]] * h.matrix[lo[b]][hi[c]];
      r.record("hessian_rank2", ok, X.face_label(sigma));
    }
  }
  ctx.clear_memo();
  return r;
}

IdentityReport check_mixed_derivatives(PolyContext& ctx, const PointOptions& opt) {
  const auto& X = ctx.complex();
  IdentityReport r;
  std::mt19937_64 rng(opt.seed + 17);
  int d = X.d();
  int N = X.num_vertices();
  RVec al = alpha_vector(ctx), be = beta_vector(ctx), zero(N, 0);
  for (const Face& sigma : sample(X.all_faces(), opt.max_faces, rng)) {
    int size = d - missing_count(sigma);
    if (size == 0) continue;
    auto win = window(sigma);
    // windows [i, j] of the same length: full-order derivatives, hence constants
    for (int i = 1; i + size - 1 <= d; ++i) {
      int j = i + size - 1;
      Rational got = mixed_derivative(ctx, sigma, zero, be, i - 1, al, d - j);
      bool exact_window = win && win->first == i && win->second == j;
      Rational want = exact_window ? mu_alpha_beta(ctx, sigma) : Rational(0);
      r.record(exact_window ? "mixed_derivative" : "mixed_derivative_zero", got == want,
               X.face_label(sigma) + " window [" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
    ctx.clear_memo();
  }
  return r;
}

IdentityReport check_ck_expressions(PolyContext& ctx) {
  IdentityReport r;
  SequenceReport s = ck_sequence(ctx.complex(), ctx.system(), true);
  r.record("ck_expressions", s.expressions_agree);
  if (s.closed) r.record("ck_closed_form", s.closed_agrees);
  r.record("ck_polynomial", s.polynomial_identity);
  return r;
}

IdentityReport check_ell_relations(PolyContext& ctx, std::size_t max_faces) {
  const auto& X = ctx.complex();
  IdentityReport r;
  EllSystem E = ell_system(ctx);
  try {
    check_phi2(ctx, E);
    r.record("phi2_condition", true);
  } catch (const Error& e) {
    r.record("phi2_condition", false, e.what());
    return r;
  }
  std::mt19937_64 rng(5);
  for (const Face& sigma : sample(X.all_faces(), max_faces, rng)) {
    if (missing_count(sigma) == 0) continue;
    std::vector<int> ext{BOTTOM};
    for (int v : sigma)
      if (v >= 0) ext.push_back(v);
    ext.push_back(TOP);
    const auto& lv = ctx.link_vertices(sigma);
    for (std::size_t q = 0; q + 1 < ext.size(); ++q) {
      int K = ext[q], L = ext[q + 1];
      std::vector<int> between;
      for (int F : lv) {
        auto nb = ctx.neighbours(sigma, F);
        if (nb.first == K && nb.second == L) between.push_back(F);
      }
      if (between.empty()) continue;
      Rational k = E.psi(K), l = E.psi(L);
      std::set<Rational> ms;
      if (E.integral_m) {
        for (Rational m = k + 1; m < l; m += 1) ms.insert(m);
      } else {
        std::set<Rational> pts{k, l};
        for (int F : between) pts.insert(E.psi(F));
        std::vector<Rational> sorted(pts.begin(), pts.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
          ms.insert((sorted[i] + sorted[i + 1]) / 2);
          if (i > 0) ms.insert(sorted[i]);
        }
      }
      for (const Rational& m : ms) {
        RVec ell = ell_vector(ctx, E, m, K, L);
        for (int F : between) {
          Rational f = E.psi(F);
          RVec got = ctx.pi_apply(sigma, F, ell);
          RVec want(X.num_vertices(), 0);
          if (f > m) want = ell_vector(ctx, E, m, K, F);
          else if (f < m) want = ell_vector(ctx, E, m, F, L);
          Face next = sigma;
          next[X.vertex(F).part] = F;
          bool ok = true;
          for (int H : ctx.link_vertices(next)) ok &= got[H] == want[H];
          std::string branch = f > m ? "ell_relation_above" : f < m ? "ell_relation_below" : "ell_relation_equal";
          r.record(branch, ok, X.face_label(sigma) + " + " + X.vertex(F).label + " m=" + to_string(m));
        }
      }
    }
  }
  return r;
}

namespace {

bool psi_is_part_index(const PolyContext& ctx, const EllSystem& E) {
  const auto& X = ctx.complex();
  if (E.psi(BOTTOM) != 0 || E.psi(TOP) != X.d() + 1) return false;
  for (int v = 0; v < X.num_vertices(); ++v)
    if (E.psi(v) != X.vertex(v).part + 1) return false;
  return true;
}

}  // namespace

IdentityReport check_ell_mixed(PolyContext& ctx, const PointOptions& opt) {
  const auto& X = ctx.complex();
  IdentityReport r;
  EllSystem E = ell_system(ctx);
  if (!psi_is_part_index(ctx, E))
    throw Error("UnsupportedSystem", "ell mixed derivatives need psi(F) = part index of F");
  int d = X.d();
  int N = X.num_vertices();
  std::vector<RVec> ell(d + 1);
  for (int i = 1; i <= d; ++i) ell[i] = ell_vector(ctx, E, i);
  std::mt19937_64 rng(opt.seed + 31);
  for (const Face& sigma : sample(X.all_faces(), opt.max_faces, rng)) {
    std::vector<int> occupied;
    std::vector<RVec> dirs;
    for (int i = 0; i < d; ++i) {
      if (sigma[i] >= 0) occupied.push_back(i + 1);
      else dirs.push_back(ell[i + 1]);
    }
    Rational got = polarization(ctx, sigma, dirs);
    Rational want = c_phi(E, occupied, d) * X.face_weight(sigma);
    r.record("ell_mixed_derivative", got == want, X.face_label(sigma));
    ctx.clear_memo();
  }
  // Hessian of prod_{k != i,j} grad_{ell(k)} p_empty lives on T_i + T_j
  if (d >= 2 && d <= 6) {
    Face empty = X.empty_face();
    for (int i = 1; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        std::vector<RVec> base;
        for (int k = 1; k <= d; ++k)
          if (k != i && k != j) base.push_back(ell[k]);
        Rational C = c_phi(E, {i, j}, d);
        std::vector<std::pair<int, int>> pairs;
        for (int F = 0; F < N; ++F)
          for (int G = F; G < N; ++G) pairs.emplace_back(F, G);
        if (pairs.size() > opt.hessian_entries) {
          std::shuffle(pairs.begin(), pairs.end(), rng);
          pairs.resize(opt.hessian_entries);
        }
        for (auto [F, G] : pairs) {
          std::vector<RVec> dirs = base;
          RVec eF(N, 0), eG(N, 0);
          eF[F] = 1;
          eG[G] = 1;
          dirs.push_back(eF);
          dirs.push_back(eG);
          Rational got = polarization(ctx, empty, dirs);
          int pF = X.vertex(F).part + 1, pG = X.vertex(G).part + 1;
          Rational want = 0;
          auto mu_l = [&](int a, int b) -> Rational {
            Face f = empty;
            f[X.vertex(a).part] = a;
            f[X.vertex(b).part] = b;
            return C * X.face_weight(f);
          };
          if (F == G && pF == i) {
            for (int H : X.part(j - 1))
              if (ctx.comparable(F, H)) want -= ctx.system().beta(F, TOP, H) * mu_l(F, H);
          } else if (F == G && pF == j) {
            for (int H : X.part(i - 1))
              if (ctx.comparable(F, H)) want -= ctx.system().alpha(BOTTOM, F, H) * mu_l(H, F);
          } else if (F != G && ((pF == i && pG == j) || (pF == j && pG == i)) && ctx.comparable(F, G)) {
            want = mu_l(F, G);
          }
          r.record("ell_hessian_support", got == want,
                   "(" + std::to_string(i) + "," + std::to_string(j) + ") " + X.vertex(F).label + ", " + X.vertex(G).label + " got " + to_string(got) + " want " + to_string(want));
        }
        ctx.clear_memo();
      }
  }
  return r;
}

IdentityReport check_cones(PolyContext& ctx) {
  const auto& X = ctx.complex();
  IdentityReport r;
  Face empty = X.empty_face();
  ConeVector c = cone_point(ctx, empty);
  r.record("cone_point", c.positive, "empty face");
  for (int v = 0; v < X.num_vertices(); ++v) {
    Face f = empty;
    f[X.vertex(v).part] = v;
    r.record("cone_point", cone_point(ctx, f).positive, X.vertex(v).label);
  }
  RVec al = alpha_vector(ctx), be = beta_vector(ctx);
  r.record("alpha_in_closure", is_pi_nonnegative(ctx, empty, al, false));
  r.record("beta_in_closure", is_pi_nonnegative(ctx, empty, be, false));
  if (X.d() >= 2) {
    r.record("alpha_not_interior", !is_pi_nonnegative(ctx, empty, al, true));
    r.record("beta_not_interior", !is_pi_nonnegative(ctx, empty, be, true));
  }
  EllSystem E = ell_system(ctx);
  std::set<Rational> ms;
  Rational lo = E.psi(BOTTOM), hi = E.psi(TOP);
  if (E.integral_m) {
    for (Rational m = lo + 1; m < hi; m += 1) ms.insert(m);
  } else {
    std::set<Rational> pts{lo, hi};
    for (int v = 0; v < X.num_vertices(); ++v) pts.insert(E.psi(v));
    std::vector<Rational> s(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      ms.insert((s[i] + s[i + 1]) / 2);
      if (i > 0) ms.insert(s[i]);
    }
  }
  for (const Rational& m : ms)
    r.record("ell_in_closure", is_pi_nonnegative(ctx, empty, ell_vector(ctx, E, m), false), "m=" + to_string(m));
  return r;
}

IdentityReport check_cone_monotonicity(const PathComplex& X, const std::vector<Rational>& s_values, int samples,
                                       std::uint64_t seed) {
  IdentityReport r;
  std::vector<Rational> ss = s_values;
  std::sort(ss.begin(), ss.end());
  std::vector<PolyContext> ctxs;
  ctxs.reserve(ss.size());
  for (const auto& s : ss) ctxs.emplace_back(X, AlphaBeta::s_rank(X, s));
  std::mt19937_64 rng(seed);
  Face empty = X.empty_face();
  RVec base = cone_point(ctxs.front(), empty).v;
  int N = X.num_vertices();
  for (int k = 0; k < samples; ++k) {
    RVec v(N);
    for (int i = 0; i < N; ++i) {
      // perturb the s = 1 cone point so that both outcomes occur
      Rational noise = ratio(static_cast<long>(rng() % 21) - 10, 20);
      v[i] = base[i] * (1 + noise * ratio(k, samples));
    }
    bool prev = false;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      bool now = is_pi_nonnegative(ctxs[i], empty, v, true);
      if (i > 0) r.record("cone_monotone", !prev || now, "sample " + std::to_string(k) + " s=" + to_string(ss[i]));
      prev = now;
    }
  }
  return r;
}

IdentityReport identity_suite(PolyContext& ctx, const PointOptions& opt) {
  IdentityReport r;
  r.merge(check_alpha_beta_identities(ctx));
  r.merge(check_commutativity(ctx, opt.max_faces));
  r.merge(check_derivatives(ctx, opt));
  r.merge(check_hessians(ctx, opt.max_faces));
  r.merge(check_mixed_derivatives(ctx, opt));
  r.merge(check_ck_expressions(ctx));
  r.merge(check_ell_relations(ctx, opt.max_faces));
  if (psi_is_part_index(ctx, ell_system(ctx))) r.merge(check_ell_mixed(ctx, opt));
  r.merge(check_cones(ctx));
  return r;
}

// ------------------------------------------------------------ certificate

Certificate lorentzian_certificate(const PathComplex& X, const AlphaBeta& ab, int exact_cap) {
  Certificate c;
  c.connected = check_connected(X);
  PolyContext ctx(X, ab);
  c.cone_ok = cone_point(ctx, X.empty_face()).positive;
  c.quadratics = colored_toplink_check(X, ab, exact_cap, true);
  c.granted = c.connected && c.cone_ok && c.quadratics.pass;
  c.verdict = c.granted ? "LORENTZIAN" : "NOT_CERTIFIED";
  return c;
}

}  // namespace pcx
