#include "pcx/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "pcx/order.hpp"
#include "pcx/spectral.hpp"

namespace pcx {

namespace {

Face drop(const PathComplex& X, std::size_t facet, int i) {
  Face f = X.facet_face(facet);
  f[i] = -1;
  return f;
}

// Candidate moves per facet and part, with cumulative double weights.
struct Moves {
  std::vector<std::vector<std::vector<std::size_t>>> to;
  std::vector<std::vector<std::vector<double>>> cum;

  explicit Moves(const PathComplex& X) {
    std::size_t n = X.num_facets();
    int d = X.d();
    to.assign(n, std::vector<std::vector<std::size_t>>(d));
    cum.assign(n, std::vector<std::vector<double>>(d));
    for (int i = 0; i < d; ++i) {
      std::map<Face, std::vector<std::size_t>> groups;
      for (std::size_t f = 0; f < n; ++f) groups[drop(X, f, i)].push_back(f);
      for (const auto& [face, members] : groups) {
        std::vector<double> c;
        double s = 0;
        for (std::size_t g : members) c.push_back(s += to_double(X.weight(g)));
        for (std::size_t f : members) {
          to[f][i] = members;
          cum[f][i] = c;
        }
      }
    }
  }

  std::size_t step(std::size_t f, std::mt19937_64& rng) const {
    int d = static_cast<int>(to[f].size());
    int i = static_cast<int>(std::uniform_int_distribution<int>(0, d - 1)(rng));
    const auto& c = cum[f][i];
    double u = std::uniform_real_distribution<double>(0, c.back())(rng);
    std::size_t k = std::upper_bound(c.begin(), c.end(), u) - c.begin();
    return to[f][i][std::min(k, c.size() - 1)];
  }
};

double l1_distance(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

}  // namespace

std::size_t downup_step(const PathComplex& X, std::size_t facet, std::mt19937_64& rng) {
  int d = X.d();
  int i = static_cast<int>(std::uniform_int_distribution<int>(0, d - 1)(rng));
  auto members = X.facets_containing(drop(X, facet, i));
  std::vector<double> c;
  double s = 0;
  for (std::size_t g : members) c.push_back(s += to_double(X.weight(g)));
  double u = std::uniform_real_distribution<double>(0, c.back())(rng);
  std::size_t k = std::upper_bound(c.begin(), c.end(), u) - c.begin();
  return members[std::min(k, c.size() - 1)];
}

DownUpChain::DownUpChain(const PathComplex& X, std::size_t start, std::uint64_t seed) : X_(X), rng_(seed) {
  if (start >= X.num_facets()) throw Error("IndexOutOfRange", "no facet " + std::to_string(start));
  state_.facet = start;
  state_.seed = seed;
}

std::size_t DownUpChain::step() {
  state_.facet = downup_step(X_, state_.facet, rng_);
  ++state_.step;
  return state_.facet;
}

void DownUpChain::run(long steps) {
  for (long t = 0; t < steps; ++t) step();
}

std::vector<long> run_histogram(const PathComplex& X, std::size_t start, long steps, std::uint64_t seed) {
  Moves moves(X);
  std::mt19937_64 rng(seed);
  std::vector<long> counts(X.num_facets(), 0);
  std::size_t f = start;
  for (long t = 0; t < steps; ++t) {
    f = moves.step(f, rng);
    ++counts[f];
  }
  return counts;
}

std::size_t max_weight_facet(const PathComplex& X) {
  std::size_t best = 0;
  for (std::size_t f = 1; f < X.num_facets(); ++f)
    if (X.weight(f) > X.weight(best)) best = f;
  return best;
}

std::vector<Rational> stationary(const PathComplex& X) {
  std::vector<Rational> mu(X.num_facets());
  for (std::size_t f = 0; f < X.num_facets(); ++f) mu[f] = X.weight(f) / X.total_weight();
  return mu;
}

SparseRows downup_matrix(const PathComplex& X, std::size_t cap) {
  std::size_t n = X.num_facets();
  if (n > cap) throw Error("SizeLimitExceeded", std::to_string(n) + " facets exceed the cap " + std::to_string(cap));
  int d = X.d();
  SparseRows P(n);
  std::vector<std::map<std::size_t, Rational>> rows(n);
  for (int i = 0; i < d; ++i) {
    std::map<Face, std::vector<std::size_t>> groups;
    for (std::size_t f = 0; f < n; ++f) groups[drop(X, f, i)].push_back(f);
    for (const auto& [face, members] : groups) {
      Rational W = 0;
      for (std::size_t g : members) W += X.weight(g);
      for (std::size_t f : members)
        for (std::size_t g : members) rows[f][g] += X.weight(g) / (W * d);
    }
  }
  for (std::size_t f = 0; f < n; ++f) P[f].assign(rows[f].begin(), rows[f].end());
  return P;
}

bool is_reversible(const PathComplex& X, const SparseRows& P) {
  std::vector<std::map<std::size_t, Rational>> rows(P.size());
  for (std::size_t f = 0; f < P.size(); ++f) rows[f].insert(P[f].begin(), P[f].end());
  for (std::size_t f = 0; f < P.size(); ++f)
    for (const auto& [g, p] : P[f]) {
      auto it = rows[g].find(f);
      if (it == rows[g].end() || X.weight(f) * p != X.weight(g) * it->second) return false;
    }
  return true;
}

bool certified_half_toplink(const PathComplex& X, double tol) {
  return check_connected(X) && expansion_profile(X, 0.5, true, tol).pass;
}

double mixing_time_bound(int d, double eps, double mu_start) {
  return d * (d + 1.0) * (d + 1.0) / 4.0 * std::log(1.0 / (eps * mu_start));
}

MixingReport exact_downup_gap(const PathComplex& X, std::size_t cap) {
  MixingReport r;
  r.mode = "exact";
  r.facets = X.num_facets();
  r.d = X.d();
  r.gap_bound = 4.0 / (r.d * (r.d + 1.0) * (r.d + 1.0));
  SparseRows P = downup_matrix(X, cap);
  r.reversible = is_reversible(X, P);
  r.certified = certified_half_toplink(X);
  std::size_t n = r.facets;
  if (n == 1) {
    r.degenerate = true;
    r.gap = 1;
    r.lambda2 = 0;
    return r;
  }
  Eigen::VectorXd sq(n);
  for (std::size_t f = 0; f < n; ++f) sq[f] = std::sqrt(to_double(X.weight(f) / X.total_weight()));
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t f = 0; f < n; ++f)
    for (const auto& [g, p] : P[f]) S(f, g) = sq[f] * to_double(p) / sq[g];
  S = (S + S.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  r.lambda2 = es.eigenvalues()[n - 2];
  r.gap = 1 - r.lambda2;
  r.gap_ok = !r.certified || *r.gap >= r.gap_bound - 1e-9;
  return r;
}

MixingReport tv_mixing(const PathComplex& X, const TvOptions& opt) {
  MixingReport r;
  r.mode = opt.mode;
  r.facets = X.num_facets();
  r.d = X.d();
  r.eps = opt.eps;
  r.seed = opt.seed;
  r.start = opt.start ? *opt.start : max_weight_facet(X);
  if (r.start >= r.facets) throw Error("IndexOutOfRange", "no facet " + std::to_string(r.start));
  if (!(opt.eps > 0)) throw Error("InvalidArgument", "eps must be positive");
  std::size_t n = r.facets;
  std::vector<double> mu(n);
  for (std::size_t f = 0; f < n; ++f) mu[f] = to_double(X.weight(f) / X.total_weight());
  r.t_bound = mixing_time_bound(r.d, opt.eps, mu[r.start]);
  r.certified = certified_half_toplink(X);
  if (opt.mode == "exact") {
    SparseRows P = downup_matrix(X, opt.cap);
    std::vector<std::vector<std::pair<std::size_t, double>>> Pd(n);
    for (std::size_t f = 0; f < n; ++f)
      for (const auto& [g, p] : P[f]) Pd[f].emplace_back(g, to_double(p));
    std::vector<double> p(n, 0), next(n);
    p[r.start] = 1;
    for (long t = 0;; ++t) {
      double tv = l1_distance(p, mu);
      r.tv_curve.push_back(tv);
      if (tv <= opt.eps) {
        r.t_mix = t;
        break;
      }
      if (t >= opt.max_steps) break;
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t f = 0; f < n; ++f)
        if (p[f] != 0)
          for (const auto& [g, q] : Pd[f]) next[g] += p[f] * q;
      p.swap(next);
    }
    r.t_ok = r.t_mix && *r.t_mix <= r.t_bound;
  } else if (opt.mode == "empirical") {
    if (opt.chains < 100) throw Error("InvalidArgument", "empirical mode needs at least 100 chains");
    Moves moves(X);
    std::mt19937_64 rng(opt.seed);
    std::vector<std::size_t> state(opt.chains, r.start);
    long horizon = std::min<long>(opt.max_steps, static_cast<long>(std::ceil(r.t_bound)));
    // plug-in estimator noise: expected L1 error of a multinomial histogram is about sum sqrt(mu(1-mu)/n)
    double band = 0;
    for (double m : mu) band += std::sqrt(m * (1 - m) / opt.chains);
    r.noise_band = 3 * band;
    std::vector<double> hist(n);
    for (long t = 0;; ++t) {
      std::fill(hist.begin(), hist.end(), 0.0);
      for (std::size_t s : state) hist[s] += 1.0 / opt.chains;
      double tv = l1_distance(hist, mu);
      r.tv_curve.push_back(tv);
      if (!r.t_mix && tv <= opt.eps) r.t_mix = t;
      if (t >= horizon) break;
      for (auto& s : state) s = moves.step(s, rng);
    }
    r.t_ok = r.tv_curve.back() <= opt.eps + r.noise_band;
  } else {
    throw Error("InvalidArgument", "unknown mode " + opt.mode);
  }
  return r;
}

// ------------------------------------------------------------ variance checks

namespace {

struct Group {
  std::vector<std::size_t> members;
  Rational weight;
};

struct Moments {
  Rational w, wf, wff;
  void add(const Rational& weight, const Rational& f) {
    w += weight;
    wf += weight * f;
    wff += weight * f * f;
  }
  Rational mean() const { return wf / w; }
  Rational var() const {
    Rational m = wf / w;
    return wff / w - m * m;
  }
};

Rational group_var(const PathComplex& X, const std::vector<std::size_t>& members, const std::vector<Rational>& f) {
  Moments m;
  for (std::size_t g : members) m.add(X.weight(g), f[g]);
  return m.var();
}

}  // namespace

VarianceReport variance_decomposition_check(const PathComplex& X, int trials, std::uint64_t seed) {
  if (!certified_half_toplink(X))
    throw Error("NotCertified", "variance checks need a connected 1/2-top-link path complex");
  VarianceReport r;
  r.trials = trials;
  int d = X.d();
  std::size_t n = X.num_facets();
  const Rational& W = X.total_weight();

  // groups of facets sharing all coordinates but i, and facets through a vertex
  std::vector<std::vector<Group>> rest(d);
  std::vector<std::vector<Group>> through(d);
  std::vector<std::vector<std::pair<std::vector<Group>, std::vector<Group>>>> split(d);
  for (int i = 0; i < d; ++i) {
    std::map<Face, Group> g;
    for (std::size_t f = 0; f < n; ++f) {
      auto& e = g[drop(X, f, i)];
      e.members.push_back(f);
      e.weight += X.weight(f);
    }
    for (auto& [k, v] : g) rest[i].push_back(std::move(v));
    for (int F : X.part(i)) {
      Group G;
      std::map<std::vector<int>, Group> lower, upper;
      Face at = X.empty_face();
      at[i] = F;
      for (std::size_t f : X.facets_containing(at)) {
        const auto& tau = X.facet(f);
        G.members.push_back(f);
        G.weight += X.weight(f);
        auto& lo = lower[std::vector<int>(tau.begin(), tau.begin() + i)];
        lo.members.push_back(f);
        lo.weight += X.weight(f);
        auto& up = upper[std::vector<int>(tau.begin() + i + 1, tau.end())];
        up.members.push_back(f);
        up.weight += X.weight(f);
      }
      if (G.members.empty()) continue;
      // product structure: mu_F(a1, a2) = nu_1(a1) nu_2(a2)
      for (std::size_t f : G.members) {
        const auto& tau = X.facet(f);
        const Rational& wl = lower[std::vector<int>(tau.begin(), tau.begin() + i)].weight;
        const Rational& wu = upper[std::vector<int>(tau.begin() + i + 1, tau.end())].weight;
        if (X.weight(f) * G.weight != wl * wu) ++r.product_violations;
      }
      std::vector<Group> lo, up;
      for (auto& [k, v] : lower) lo.push_back(std::move(v));
      for (auto& [k, v] : upper) up.push_back(std::move(v));
      through[i].push_back(std::move(G));
      split[i].emplace_back(std::move(lo), std::move(up));
    }
  }

  Rational alpha;
  if (d >= 2) {
    r.alpha = lambda2(walk_matrix(X, X.empty_face(), false)) + 1e-9;
    alpha = from_double(r.alpha);
    r.eig_checked = alpha < 1;
  }

  std::mt19937_64 rng(seed);
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> f(n);
    for (auto& x : f) x = ratio(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
    Rational var = group_var(X, [&] {
      std::vector<std::size_t> all(n);
      for (std::size_t k = 0; k < n; ++k) all[k] = k;
      return all;
    }(), f);

    Rational local = 0;
    for (int i = 0; i < d; ++i) {
      Rational e = 0;
      for (const auto& g : rest[i]) e += g.weight / W * group_var(X, g.members, f);
      local += (i + 1) * (d - i) * e;
    }
    Rational slack = local - var;
    if (slack < 0) ++r.local_violations;

    // law of total variance over (i, F) and the eigenvalue inequality
    Rational ev = 0;
    Moments outer;
    for (int i = 0; i < d; ++i)
      for (std::size_t k = 0; k < through[i].size(); ++k) {
        const Group& G = through[i][k];
        Moments m;
        for (std::size_t g : G.members) m.add(X.weight(g), f[g]);
        Rational vF = m.var();
        ev += G.weight / (W * d) * vF;
        outer.add(G.weight / (W * d), m.mean());
        Rational fac = 0;
        for (const auto& lo : split[i][k].first) fac += lo.weight / G.weight * group_var(X, lo.members, f);
        for (const auto& up : split[i][k].second) fac += up.weight / G.weight * group_var(X, up.members, f);
        if (vF > fac) ++r.factorization_violations;
      }
    if (var != outer.var() + ev) ++r.total_variance_violations;
    Rational eslack = 0;
    if (r.eig_checked) {
      Rational rhs = Rational(d) / (d - 1) / (1 - alpha) * ev;
      eslack = rhs - var;
      if (eslack < 0) ++r.eig_violations;
    }
    if (first || slack < r.min_local_slack) r.min_local_slack = slack;
    if (first || eslack < r.min_eig_slack) r.min_eig_slack = eslack;
    first = false;
  }
  return r;
}

GapSearchReport extremal_gap_search(int n) {
  GapSearchReport r;
  bool first = true;
  for (const Poset& p : all_posets(n)) {
    PathComplex X = chain_complex(birkhoff_lattice(p));
    if (X.num_facets() < 2 || X.num_facets() > 2000) continue;
    MixingReport g = exact_downup_gap(X);
    ++r.searched;
    double ratio = *g.gap / g.gap_bound;
    if (first || ratio < r.best_ratio) {
      first = false;
      r.best_ratio = ratio;
      r.gap = *g.gap;
      r.d = g.d;
      r.poset_labels = p.labels();
      r.poset_covers.clear();
      for (auto [a, b] : p.cover_pairs()) r.poset_covers.emplace_back(p.label(a), p.label(b));
    }
  }
  return r;
}

// ------------------------------------------------------------ lower-bound instance

LowerBoundInstance lowerbound_instance(int d, const Rational& eps, bool check_path) {
  if (d < 2 || d % 2) throw Error("OddDimension", "the construction needs an even d >= 2, got " + std::to_string(d));
  if (eps <= 0) throw Error("InvalidArgument", "eps must be positive");
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int e = 1; e <= d + 1; ++e) labels.push_back(std::to_string(e));
  for (int e = 2; e <= d; ++e) covers.emplace_back(std::to_string(e), std::to_string(e + 1));
  Poset p = Poset::build(labels, covers);
  RankedLattice L = birkhoff_lattice(p);
  Mask one = p.mask_of({"1"});
  Rational e1 = 1 + eps;
  auto psi = [&](Mask flat) -> Rational {
    int i = popcount(flat);
    if (i == 0 || i == d + 1) return 1;
    bool G = (flat & one) != 0;
    bool low = i <= d / 2;
    return G == low ? e1 : Rational(1);
  };
  std::vector<Rational> w(L.size());
  for (int f = 0; f < L.size(); ++f) w[f] = psi(L.flat(f));

  LowerBoundInstance out{chain_complex(L, &w), {}};
  const PathComplex& X = out.X;
  LowerBoundReport& r = out.report;
  r.d = d;
  r.eps = eps;

  auto find = [&](bool G, int i) {
    for (int v = 0; v < X.num_vertices(); ++v) {
      Mask m = X.vertex(v).flat;
      if (popcount(m) == i && ((m & one) != 0) == G) return v;
    }
    throw Error("InvalidLattice", "missing flat");
  };
  r.sigma = X.empty_face();
  for (int k = 1; k <= d / 2 - 1; ++k) r.sigma[k - 1] = find(false, k);
  for (int k = d / 2 + 2; k <= d; ++k) r.sigma[k - 1] = find(true, k);

  if (check_path) r.path_ok = verify_path_complex(X).ok;
  r.expected = to_double(e1 / (2 + eps));
  r.worst_lambda2 = lambda2(walk_matrix(X, r.sigma, false));
  r.max_toplink_lambda2 = expansion_profile(X, 1.0, true).max_lambda2;
  WalkMatrix W0 = walk_matrix(X, X.empty_face(), true);
  r.lambda2_empty = lambda2(W0);
  r.lambda2_bound = 1 - 4 / (to_double(eps) * to_double(e1) * d);
  std::vector<int> S;
  for (int a = 0; a < W0.size(); ++a)
    if ((X.vertex(W0.vertices[a]).flat & one) == 0) S.push_back(a);
  r.phi_S = cut_conductance(W0, S);
  r.phi_bound = 2 / (eps * e1 * d);
  r.cheeger_lower = 1 - 2 * to_double(r.phi_S);

  Rational lhs = 0, rhs = 0;
  for (int i = 0; i <= d; ++i) lhs += std::min(i, d - i) * rpow(e1, std::abs(d / 2 - i));
  for (int i = 1; i <= d / 2; ++i) rhs += rpow(e1, d / 2 - i);
  rhs *= 2 / eps;
  r.fact_lhs = lhs;
  r.fact_rhs = rhs;
  Rational ah = rpow(e1, d / 2);
  r.phi_bound_corrected = 2 * ah / (eps * d * (ah - 1));
  r.lambda2_bound_corrected = 1 - 2 * to_double(r.phi_bound_corrected);

  // tau(i) is the facet with exactly i vertices on the F side
  r.chain_weights.assign(d + 1, 0);
  std::vector<Rational> raw(d + 1, 0);
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    int i = 0;
    for (int v : X.facet(f))
      if ((X.vertex(v).flat & one) == 0) ++i;
    raw[i] = X.weight(f);
  }
  r.weights_ok = true;
  for (int i = 0; i <= d; ++i) {
    r.chain_weights[i] = raw[i] / raw[d / 2];
    r.weights_ok &= r.chain_weights[i] == rpow(e1, std::abs(d / 2 - i));
  }
  r.worst_ok = std::abs(r.worst_lambda2 - r.expected) <= 1e-9 && std::abs(r.max_toplink_lambda2 - r.expected) <= 1e-9;
  r.lambda2_ok = r.lambda2_empty >= r.lambda2_bound - 1e-9;
  r.phi_ok = r.phi_S <= r.phi_bound;
  r.fact_ok = lhs <= rhs;
  r.corrected_ok = r.phi_S <= r.phi_bound_corrected && r.lambda2_empty >= r.cheeger_lower - 1e-9 &&
                   r.lambda2_empty >= r.lambda2_bound_corrected - 1e-9;
  return out;
}

}  // namespace pcx
