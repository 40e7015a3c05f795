#include "pcx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace pcx {

Eigen::MatrixXd to_eigen(const RMatrix& M) {
  int n = static_cast<int>(M.size());
  Eigen::MatrixXd E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E(i, j) = to_double(M[i][j]);
  return E;
}

Eigen::MatrixXd WalkMatrix::P() const {
  Eigen::MatrixXd out = Ad;
  for (int i = 0; i < size(); ++i) out.row(i) /= deg(i);
  return out;
}

Eigen::MatrixXd WalkMatrix::normalized() const {
  Eigen::VectorXd s = deg.array().rsqrt();
  return s.asDiagonal() * Ad * s.asDiagonal();
}

namespace {

void check_degrees(const WalkMatrix& W) {
  for (int i = 0; i < W.size(); ++i)
    if (!(W.deg(i) > 0)) throw Error("IsolatedVertex", "vertex " + std::to_string(i) + " has zero degree");
}

}  // namespace

WalkMatrix walk_matrix(const PathComplex& X, const Face& tau, bool exact) {
  auto fs = X.facets_containing(tau);
  if (fs.empty()) throw Error("NotAFace", X.face_label(tau) + " is not a face");
  std::vector<int> missing;
  for (int i = 0; i < X.d(); ++i)
    if (tau[i] < 0) missing.push_back(i);
  if (missing.size() < 2) throw Error("CodimTooSmall", "link walks need codimension at least 2");
  WalkMatrix W;
  W.tau = tau;
  std::vector<int> local(X.num_vertices(), -1);
  for (int p : missing) {
    std::vector<int> here;
    for (std::size_t f : fs) here.push_back(X.facet(f)[p]);
    std::sort(here.begin(), here.end());
    here.erase(std::unique(here.begin(), here.end()), here.end());
    for (int v : here) {
      local[v] = static_cast<int>(W.vertices.size());
      W.vertices.push_back(v);
      W.parts.push_back(p);
    }
  }
  int n = W.size();
  W.Ad = Eigen::MatrixXd::Zero(n, n);
  if (exact) W.A.assign(n, std::vector<Rational>(n, 0));
  Rational total = 0;
  for (std::size_t f : fs) total += X.weight(f);
  double total_d = to_double(total);
  for (std::size_t f : fs) {
    const auto& F = X.facet(f);
    double w = to_double(X.weight(f)) / total_d;
    for (std::size_t a = 0; a < missing.size(); ++a)
      for (std::size_t b = a + 1; b < missing.size(); ++b) {
        int x = local[F[missing[a]]], y = local[F[missing[b]]];
        W.Ad(x, y) += w;
        W.Ad(y, x) += w;
        if (exact) {
          W.A[x][y] += X.weight(f);
          W.A[y][x] = W.A[x][y];
        }
      }
  }
  W.deg = W.Ad.rowwise().sum();
  if (exact) {
    W.degree.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        W.A[i][j] /= total;
        W.degree[i] += W.A[i][j];
      }
    }
  }
  check_degrees(W);
  return W;
}

WalkMatrix walk_from_adjacency(const RMatrix& A) {
  WalkMatrix W;
  int n = static_cast<int>(A.size());
  W.A = A;
  W.Ad = to_eigen(A);
  W.degree.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    W.vertices.push_back(i);
    W.parts.push_back(0);
    for (int j = 0; j < n; ++j) {
      if (A[i][j] != A[j][i]) throw Error("NotSymmetric", "adjacency matrix is not symmetric");
      if (A[i][j] < 0) throw Error("InvalidWeight", "negative adjacency entry");
      W.degree[i] += A[i][j];
    }
  }
  W.deg = W.Ad.rowwise().sum();
  check_degrees(W);
  return W;
}

WalkMatrix walk_from_adjacency(const Eigen::MatrixXd& A) {
  WalkMatrix W;
  int n = static_cast<int>(A.rows());
  W.Ad = A;
  for (int i = 0; i < n; ++i) {
    W.vertices.push_back(i);
    W.parts.push_back(0);
  }
  W.deg = W.Ad.rowwise().sum();
  check_degrees(W);
  return W;
}

std::vector<double> walk_spectrum(const WalkMatrix& W) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W.normalized(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("NumericalFailure", "symmetric eigensolver did not converge");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + W.size());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

double lambda2(const WalkMatrix& W) {
  if (W.size() < 2) return 0;
  return walk_spectrum(W)[1];
}

// ------------------------------------------------------------ exact inertia

std::vector<Rational> char_poly(const RMatrix& M) {
  int n = static_cast<int>(M.size());
  RMatrix H = M;
  // similarity reduction to upper Hessenberg form
  for (int m = 1; m + 1 < n; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (sgn(H[i][m - 1]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      std::swap(H[piv], H[m]);
      for (int r = 0; r < n; ++r) std::swap(H[r][piv], H[r][m]);
    }
    Rational t = H[m][m - 1];
    for (int i = m + 1; i < n; ++i) {
      if (sgn(H[i][m - 1]) == 0) continue;
      Rational u = H[i][m - 1] / t;
      for (int j = 0; j < n; ++j) H[i][j] -= u * H[m][j];
      for (int r = 0; r < n; ++r) H[r][m] += u * H[r][i];
    }
  }
  // p_k = det(xI - H[0..k, 0..k]), coefficients lowest degree first
  std::vector<std::vector<Rational>> p(n + 1);
  p[0] = {Rational(1)};
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> q(k + 1, 0);
    for (int e = 0; e < k; ++e) {
      q[e + 1] += p[k - 1][e];
      q[e] -= H[k - 1][k - 1] * p[k - 1][e];
    }
    Rational t = 1;
    for (int i = k - 1; i >= 1; --i) {
      t *= H[i][i - 1];
      if (sgn(t) == 0) break;
      Rational c = H[i - 1][k - 1] * t;
      for (std::size_t e = 0; e < p[i - 1].size(); ++e) q[e] -= c * p[i - 1][e];
    }
    p[k] = std::move(q);
  }
  return p[n];
}

namespace {

void check_symmetric(const RMatrix& M) {
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (M[i].size() != M.size()) throw Error("NotSymmetric", "matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (M[i][j] != M[j][i]) throw Error("NotSymmetric", "matrix is not symmetric");
  }
}

}  // namespace

EigenCount positive_eigenvalue_count(const Eigen::MatrixXd& M, double tol) {
  EigenCount r;
  r.method = "float";
  if (M.rows() == 0) return r;
  if (!M.isApprox(M.transpose(), 1e-12)) throw Error("NotSymmetric", "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("NumericalFailure", "symmetric eigensolver did not converge");
  r.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < M.rows(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > tol) ++r.count;
    r.margin = std::min(r.margin, std::abs(l));
  }
  return r;
}

EigenCount positive_eigenvalue_count(const RMatrix& M, bool exact, int cap, double tol) {
  check_symmetric(M);
  int n = static_cast<int>(M.size());
  if (!exact) return positive_eigenvalue_count(to_eigen(M), tol);
  if (n > cap)
    throw Error("SizeLimitExceeded", "exact eigenvalue count limited to " + std::to_string(cap) + "x" +
                                         std::to_string(cap) + " matrices");
  EigenCount r;
  r.method = "exact";
  if (n == 0) return r;
  auto cp = char_poly(M);
  // all roots are real, so Descartes' rule counts positive roots exactly
  int last = 0;
  for (const auto& c : cp) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++r.count;
    last = s;
  }
  r.det = (n % 2 == 0) ? cp[0] : Rational(-cp[0]);
  return r;
}

namespace {

// Exact count when small enough, float otherwise.
EigenCount count_auto(const RMatrix& M, int cap) {
  return positive_eigenvalue_count(M, static_cast<int>(M.size()) <= cap, cap);
}

}  // namespace

// ------------------------------------------------------------ expansion

SpectralReport expansion_profile(const PathComplex& X, double alpha, bool top_link_only, double tol,
                                 bool keep_links) {
  SpectralReport rep;
  std::vector<Face> faces;
  if (top_link_only) {
    faces = X.faces_of_codim(2);
  } else {
    for (auto& f : X.all_faces()) {
      int codim = static_cast<int>(std::count(f.begin(), f.end(), -1));
      if (codim >= 2) faces.push_back(std::move(f));
    }
  }
  for (const auto& f : faces) {
    WalkMatrix W = walk_matrix(X, f, false);
    LinkRecord r;
    r.face = f;
    r.codim = static_cast<int>(std::count(f.begin(), f.end(), -1));
    r.lambda2 = lambda2(W);
    r.bound = alpha;
    r.pass = r.lambda2 <= alpha + tol;
    ++rep.checked;
    auto it = rep.max_by_codim.find(r.codim);
    if (it == rep.max_by_codim.end() || r.lambda2 > it->second) rep.max_by_codim[r.codim] = r.lambda2;
    if (r.lambda2 > rep.max_lambda2) {
      rep.max_lambda2 = r.lambda2;
      rep.worst = r;
    }
    if (!r.pass) rep.pass = false;
    if (keep_links) rep.links.push_back(std::move(r));
  }
  return rep;
}

RMatrix colored_quadratic(const PathComplex& X, const AlphaBeta& ab, const Face& sigma, std::vector<int>* vertices) {
  auto fs = X.facets_containing(sigma);
  if (fs.empty()) throw Error("NotAFace", X.face_label(sigma) + " is not a face");
  std::vector<int> missing;
  for (int i = 0; i < X.d(); ++i)
    if (sigma[i] < 0) missing.push_back(i);
  if (missing.size() != 2) throw Error("WrongCodim", "quadratic needs a face of codimension 2");
  std::vector<int> vs;
  std::vector<int> local(X.num_vertices(), -1);
  for (int p : missing) {
    std::vector<int> here;
    for (std::size_t f : fs) here.push_back(X.facet(f)[p]);
    std::sort(here.begin(), here.end());
    here.erase(std::unique(here.begin(), here.end()), here.end());
    for (int v : here) {
      local[v] = static_cast<int>(vs.size());
      vs.push_back(v);
    }
  }
  int n = static_cast<int>(vs.size());
  RMatrix H(n, std::vector<Rational>(n, 0));
  for (std::size_t f : fs) {
    int x = local[X.facet(f)[missing[0]]], y = local[X.facet(f)[missing[1]]];
    H[x][y] += X.weight(f);
    H[y][x] = H[x][y];
  }
  // neighbours of a vertex of type t within sigma
  auto below = [&](int t) {
    int best = BOTTOM;
    for (int v : sigma)
      if (v >= 0 && X.vertex(v).type < t && (best == BOTTOM || X.vertex(v).type > X.vertex(best).type)) best = v;
    return best;
  };
  auto above = [&](int t) {
    int best = TOP;
    for (int v : sigma)
      if (v >= 0 && X.vertex(v).type > t && (best == TOP || X.vertex(v).type < X.vertex(best).type)) best = v;
    return best;
  };
  std::vector<Rational> diag(n, 0);
  for (int a = 0; a < n; ++a) {
    int F = vs[a];
    int tF = X.vertex(F).type;
    int lo = below(tF), hi = above(tF);
    for (int b = 0; b < n; ++b) {
      if (sgn(H[a][b]) == 0) continue;
      int G = vs[b];
      int tG = X.vertex(G).type;
      if (tG > tF && tG < ab.type(hi)) diag[a] += ab.beta(F, hi, G) * H[a][b];
      if (tG < tF && tG > ab.type(lo)) diag[a] += ab.alpha(lo, F, G) * H[a][b];
    }
  }
  for (int a = 0; a < n; ++a) H[a][a] -= diag[a];
  if (vertices) *vertices = std::move(vs);
  return H;
}

ColoredReport colored_toplink_check(const PathComplex& X, const AlphaBeta& ab, int exact_cap, bool keep_records) {
  ColoredReport rep;
  for (const auto& f : X.faces_of_codim(2)) {
    std::vector<int> missing;
    for (int i = 0; i < X.d(); ++i)
      if (f[i] < 0) missing.push_back(i);
    if (missing[1] != missing[0] + 1) {
      ++rep.skipped;
      continue;
    }
    QuadraticRecord q;
    q.face = f;
    q.matrix = colored_quadratic(X, ab, f);
    EigenCount c = count_auto(q.matrix, exact_cap);
    q.positive_count = c.count;
    q.method = c.method;
    q.margin = c.margin;
    ++rep.checked;
    rep.max_count = std::max(rep.max_count, c.count);
    if (c.count > 1 && rep.pass) {
      rep.pass = false;
      rep.witness = q;
    }
    if (keep_records) rep.records.push_back(std::move(q));
  }
  return rep;
}

// ------------------------------------------------------------ bipartite bounds

MijReport bipartite_Mij_check(const PathComplex& X, int i, int j, const Rational& s, int exact_cap, double tol) {
  int d = X.d();
  if (!(1 <= i && i < j && j <= d))
    throw Error("IndexOutOfRange", "need 1 <= i < j <= d, got i=" + std::to_string(i) + " j=" + std::to_string(j));
  MijReport r;
  r.i = i;
  r.j = j;
  r.m_i = s_analog(d - j + 1, s) / s_analog(d - i + 1, s);
  r.m_j = s_analog(i, s) / s_analog(j, s);
  r.bound = std::sqrt(to_double(r.m_i * r.m_j));
  const auto& Ti = X.part(i - 1);
  const auto& Tj = X.part(j - 1);
  std::vector<int> local(X.num_vertices(), -1);
  int n = 0;
  for (int v : Ti) local[v] = n++;
  for (int v : Tj) local[v] = n++;
  RMatrix A(n, std::vector<Rational>(n, 0));
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    int x = local[X.facet(f)[i - 1]], y = local[X.facet(f)[j - 1]];
    A[x][y] += X.weight(f);
    A[y][x] = A[x][y];
  }
  WalkMatrix W = walk_from_adjacency(A);
  r.lambda2 = lambda2(W);
  int ni = static_cast<int>(Ti.size());
  if (n <= exact_cap) {
    RMatrix H = A;
    for (int a = 0; a < n; ++a) H[a][a] -= W.degree[a] * (a < ni ? r.m_i : r.m_j);
    EigenCount c = positive_eigenvalue_count(H, true, exact_cap);
    r.positive_count = c.count;
    r.method = c.method;
  } else {
    Eigen::MatrixXd S = W.normalized();
    for (int a = 0; a < n; ++a) S(a, a) -= to_double(a < ni ? r.m_i : r.m_j);
    EigenCount c = positive_eigenvalue_count(S, tol);
    r.positive_count = c.count;
    r.method = c.method;
  }
  r.pass = r.positive_count <= 1 && r.lambda2 <= r.bound + tol;
  return r;
}

std::vector<std::vector<Rational>> mij_table(int d, const Rational& s) {
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, 0));
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b) {
      if (a < b) m[a - 1][b - 1] = s_analog(d - b + 1, s) / s_analog(d - a + 1, s);
      if (a > b) m[a - 1][b - 1] = s_analog(b, s) / s_analog(a, s);
    }
  return m;
}

DPartiteReport dpartite_bound(const PathComplex& X, const std::vector<std::vector<Rational>>& m, double tol) {
  int d = X.d();
  if (d < 2) throw Error("CodimTooSmall", "d-partite bound needs d >= 2");
  WalkMatrix W = walk_matrix(X, X.empty_face(), true);
  int n = W.size();
  for (int x = 0; x < n; ++x) {
    std::vector<Rational> to_part(d, 0);
    for (int y = 0; y < n; ++y) to_part[W.parts[y]] += W.A[x][y];
    Rational want = W.degree[x] / (d - 1);
    for (int p = 0; p < d; ++p)
      if (p != W.parts[x] && to_part[p] != want)
        throw Error("RegularityViolated", "w(x,T_j) != d_w(x)/(d-1) for vertex " + X.vertex(W.vertices[x]).label);
  }
  DPartiteReport r;
  Rational best = 0;
  for (int i = 0; i < d; ++i) {
    Rational s = 0;
    for (int j = 0; j < d; ++j)
      if (j != i) s += m[i][j];
    s /= d - 1;
    if (i == 0 || s > best) best = s;
  }
  r.bound = to_double(best);
  r.lambda2 = lambda2(W);
  r.pass = r.lambda2 <= r.bound + tol;
  return r;
}

double oppenheim_bound(int d, int k, double eps) {
  if (!(eps > 0)) throw Error("DomainError", "eps must be positive");
  if (k < 2) throw Error("DomainError", "codimension must be at least 2");
  return (1 - eps) / (d - (k - 2) * (1 - eps));
}

double main_s_bound(int k, double s) {
  if (k < 2) throw Error("DomainError", "codimension must be at least 2");
  if (!(s >= 1)) throw Error("DomainError", "s must be at least 1");
  if (s - 1 < 1e-9) return 0.5;
  return 2 * s * (std::pow(s, (k - 1) / 2.0) - 1) / ((k - 1) * (s - 1) * (std::pow(s, (k + 1) / 2.0) + 1));
}

double main_s_bound_printed(int k, double s) {
  if (k < 2) throw Error("DomainError", "codimension must be at least 2");
  if (!(s >= 1)) throw Error("DomainError", "s must be at least 1");
  if (s - 1 < 1e-9) return 0.5;
  return 2 * (std::pow(s, (k - 1) / 2.0) - 1) / ((k - 1) * (s - 1) * (std::pow(s, (k + 1) / 2.0) + 1));
}

double main_s_table_bound(int k, const Rational& s) {
  if (k < 2) throw Error("DomainError", "codimension must be at least 2");
  auto m = mij_table(k, s);
  Rational best = 0;
  for (int i = 0; i < k; ++i) {
    Rational t = 0;
    for (int j = 0; j < k; ++j)
      if (j != i) t += m[i][j];
    t /= k - 1;
    if (t > best) best = t;
  }
  return to_double(best);
}

double concrete_bound(int k, double eps) {
  if (!(eps > 0)) throw Error("DomainError", "eps must be positive");
  if (k < 2) throw Error("DomainError", "codimension must be at least 2");
  return (1 - 2 * eps) / ((k - 1) * std::sqrt(eps));
}

// ------------------------------------------------------------ conductance

namespace {

void check_cut(const WalkMatrix& W, const std::vector<int>& S, std::vector<char>& in) {
  in.assign(W.size(), 0);
  for (int v : S) {
    if (v < 0 || v >= W.size()) throw Error("EmptyCut", "cut vertex out of range");
    in[v] = 1;
  }
  int k = static_cast<int>(std::count(in.begin(), in.end(), 1));
  if (k == 0 || k == W.size()) throw Error("EmptyCut", "cut must be a nonempty proper subset");
}

}  // namespace

Rational cut_conductance(const WalkMatrix& W, const std::vector<int>& S) {
  if (W.A.empty()) throw Error("NotExact", "exact conductance needs the exact adjacency matrix");
  std::vector<char> in;
  check_cut(W, S, in);
  Rational cut = 0, vol = 0;
  for (int x = 0; x < W.size(); ++x) {
    if (!in[x]) continue;
    vol += W.degree[x];
    for (int y = 0; y < W.size(); ++y)
      if (!in[y]) cut += W.A[x][y];
  }
  return cut / vol;
}

double cut_conductance_double(const WalkMatrix& W, const std::vector<int>& S) {
  std::vector<char> in;
  check_cut(W, S, in);
  double cut = 0, vol = 0;
  for (int x = 0; x < W.size(); ++x) {
    if (!in[x]) continue;
    vol += W.deg(x);
    for (int y = 0; y < W.size(); ++y)
      if (!in[y]) cut += W.Ad(x, y);
  }
  return cut / vol;
}

CheegerReport conductance_cheeger(const WalkMatrix& W, const std::vector<int>& S, bool exhaustive, double tol) {
  CheegerReport r;
  r.phi_S = cut_conductance_double(W, S);
  r.lambda2 = lambda2(W);
  r.lower = (1 - r.lambda2) / 2;
  r.upper = std::sqrt(std::max(0.0, 2 * (1 - r.lambda2)));
  int n = W.size();
  if (exhaustive && n <= 20 && n >= 2) {
    double total = W.deg.sum();
    std::vector<double> toS(n, 0.0);  // weight from each vertex into S
    std::vector<char> in(n, 0);
    double cut = 0, vol = 0, best = std::numeric_limits<double>::infinity();
    // Gray-code walk over all subsets
    for (std::uint64_t g = 1; g < (std::uint64_t(1) << n); ++g) {
      int v = __builtin_ctzll(g);
      if (in[v]) {
        in[v] = 0;
        vol -= W.deg(v);
        cut -= W.deg(v) - 2 * toS[v];
        for (int u = 0; u < n; ++u) toS[u] -= W.Ad(u, v);
      } else {
        in[v] = 1;
        vol += W.deg(v);
        cut += W.deg(v) - 2 * toS[v];
        for (int u = 0; u < n; ++u) toS[u] += W.Ad(u, v);
      }
      if (vol > 0 && vol <= total - vol + 1e-12) best = std::min(best, std::max(0.0, cut) / vol);
    }
    r.phi_G = best;
    r.sandwich = r.lower <= best + tol && best <= r.upper + tol;
  }
  return r;
}

// ------------------------------------------------------------ unique neighbour graphs

BipartiteGraph bipartite_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error("InvalidGraph", "edge endpoint out of range");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        if (color[y] < 0) {
          color[y] = 1 - color[x];
          q.push(y);
        } else if (color[y] == color[x]) {
          throw Error("NotBipartite", "odd cycle through vertex " + std::to_string(y));
        }
      }
    }
  }
  BipartiteGraph G;
  std::vector<int> id(n);
  for (int v = 0; v < n; ++v) id[v] = color[v] == 0 ? G.m++ : G.n++;
  for (auto [a, b] : edges) {
    if (color[a] == 0) G.edges.emplace_back(id[a], id[b]);
    else G.edges.emplace_back(id[b], id[a]);
  }
  return G;
}

RMatrix incidence_adjacency(const BipartiteGraph& G) {
  int N = G.m + G.n;
  RMatrix A(N, std::vector<Rational>(N, 0));
  for (auto [x, y] : G.edges) {
    if (x < 0 || x >= G.m || y < 0 || y >= G.n) throw Error("InvalidGraph", "edge endpoint out of range");
    A[x][G.m + y] = 1;
    A[G.m + y][x] = 1;
  }
  return A;
}

UniqueNeighborReport unique_neighbor_classify(const BipartiteGraph& G, int exact_cap) {
  RMatrix A = incidence_adjacency(G);
  int N = G.m + G.n;
  UniqueNeighborReport r;
  auto side_ok = [&](int lo, int hi) {
    for (int a = lo; a < hi; ++a)
      for (int b = a + 1; b < hi; ++b) {
        int common = 0;
        for (int c = 0; c < N; ++c)
          if (sgn(A[a][c]) && sgn(A[b][c])) ++common;
        if (common != 1) return false;
      }
    return true;
  };
  r.unique_neighbor = side_ok(0, G.m) && side_ok(G.m, N);
  std::vector<int> deg(N, 0);
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c)
      if (sgn(A[a][c])) ++deg[a];
  int cx = 0, cy = 0;
  for (int a = 0; a < N; ++a)
    if (deg[a] == 1) ++(a < G.m ? cx : cy);
  r.predicted_one_positive = cx == 0 || cy == 0 || (cx == 1 && cy == 1);
  RMatrix H = A;
  for (int a = 0; a < N; ++a) H[a][a] = ratio(-deg[a], 2);
  EigenCount c = count_auto(H, exact_cap);
  r.certified_count = c.count;
  r.method = c.method;
  r.agrees = (r.certified_count == 1) == r.predicted_one_positive;
  return r;
}

SweepReport unique_neighbor_sweep(int max_m, int max_n, int exact_cap) {
  SweepReport rep;
  for (int n = 1; n <= max_n; ++n) {
    Mask full = (Mask(1) << n) - 1;
    for (int m = 1; m <= max_m; ++m) {
      std::vector<Mask> rows;
      // rows in non-increasing order, pairwise sharing exactly one column
      auto rec = [&](auto&& self, Mask upper) -> void {
        if (static_cast<int>(rows.size()) == m) {
          Mask cover = 0;
          for (Mask r : rows) cover |= r;
          if (cover != full) return;
          for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
              int common = 0;
              for (Mask r : rows)
                if (((r >> a) & 1) && ((r >> b) & 1)) ++common;
              if (common != 1) return;
            }
          BipartiteGraph G;
          G.m = m;
          G.n = n;
          for (int x = 0; x < m; ++x)
            for (int y = 0; y < n; ++y)
              if ((rows[x] >> y) & 1) G.edges.emplace_back(x, y);
          auto r = unique_neighbor_classify(G, exact_cap);
          ++rep.graphs;
          if (!r.unique_neighbor || !r.agrees) {
            ++rep.mismatches;
            if (!rep.first_mismatch) rep.first_mismatch = G;
          }
          return;
        }
        for (Mask cand = upper; cand >= 1; --cand) {
          bool ok = true;
          for (Mask r : rows)
            if (popcount(r & cand) != 1) {
              ok = false;
              break;
            }
          if (!ok) continue;
          rows.push_back(cand);
          self(self, cand);
          rows.pop_back();
        }
      };
      rec(rec, full);
    }
  }
  return rep;
}

}  // namespace pcx
