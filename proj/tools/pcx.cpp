#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "pcx/coloring.hpp"
#include "pcx/complex.hpp"
#include "pcx/io.hpp"
#include "pcx/lorentzian.hpp"
#include "pcx/matroid.hpp"
#include "pcx/order.hpp"
#include "pcx/sampler.hpp"
#include "pcx/spectral.hpp"

using namespace pcx;

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_USAGE = 1;
constexpr int EXIT_BOUND_FAILED = 2;

struct Params {
  std::string subcommand;
  std::string input;
  std::string out;
  std::string csv;
  std::uint64_t seed = 1;
  long steps = 10000;
  int chains = 1000;
  std::string eps;
  std::string s;
  std::string M = "1000000";
  std::string coloring = "trivial";
  std::string set;
  std::string start = "max-weight";
  std::size_t cap_facets = 200000;
  double tol = 1e-9;
  bool exact = true;
  bool empirical = false;
  int d = 4;
  int N = 0;
  std::string subspace;
  std::string sweep;
  bool check_path = true;
};

json manifest(const Params& p) {
  json m;
  m["subcommand"] = p.subcommand;
  if (!p.input.empty()) m["input"] = p.input;
  json params;
  params["seed"] = p.seed;
  params["steps"] = p.steps;
  params["chains"] = p.chains;
  if (!p.eps.empty()) params["eps"] = p.eps;
  if (!p.s.empty()) params["s"] = p.s;
  params["M"] = p.M;
  params["coloring"] = p.coloring;
  if (!p.set.empty()) params["set"] = p.set;
  params["start"] = p.start;
  params["cap_facets"] = p.cap_facets;
  params["tol"] = p.tol;
  params["mode"] = p.exact ? "exact" : "float";
  m["params"] = params;
  if (!p.out.empty()) m["out"] = p.out;
  return m;
}

// A complex together with the structure it was built from.
struct Loaded {
  std::string kind;
  std::optional<PosetInput> poset;
  std::optional<Matroid> matroid;
  std::optional<RankedLattice> lattice;
  PathComplex X;
  bool inexact = false;
};

Loaded load_input(const Params& p) {
  if (p.input.empty()) throw Error("UsageError", "an input file is required");
  json j = load_json(p.input);
  if (!j.is_object() || !j.contains("kind")) throw Error("ParseError", "input has no 'kind' field");
  Loaded r;
  r.kind = j.at("kind").get<std::string>();
  if (r.kind == "poset") {
    r.poset = parse_poset(j);
    r.inexact = r.poset->inexact;
    r.lattice = birkhoff_lattice(r.poset->poset);
    if (r.poset->psi) {
      if (!is_order_reversing(r.poset->poset, *r.poset->psi))
        throw Error("NotOrderReversing", "psi must satisfy psi(a) >= psi(b) whenever a < b");
      auto w = lift_element_weights(*r.lattice, *r.poset->psi);
      r.X = chain_complex(*r.lattice, &w, p.cap_facets);
    } else {
      r.X = chain_complex(*r.lattice, nullptr, p.cap_facets);
    }
  } else if (r.kind == "matroid") {
    r.matroid = parse_matroid(j);
    r.lattice = flat_lattice(*r.matroid);
    r.X = chain_complex(*r.lattice, nullptr, p.cap_facets);
  } else if (r.kind == "complex") {
    r.X = parse_complex(j);
    r.inexact = !r.X.exact();
  } else {
    throw Error("ParseError", "unsupported kind '" + r.kind + "'");
  }
  return r;
}

Mask parse_set(const Poset& P, const std::string& s) {
  std::vector<std::string> labels;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) labels.push_back(item);
  return P.mask_of(labels);
}

Coloring make_coloring(const Params& p, const Loaded& in) {
  if (p.coloring == "trivial") return Coloring::trivial();
  if (p.coloring == "card") return Coloring::cardinality();
  if (p.coloring == "psi") {
    if (!in.poset || !in.poset->psi) throw Error("UsageError", "--coloring psi needs a poset with psi weights");
    std::vector<Rational> w;
    for (const auto& l : in.lattice->ground_labels()) w.push_back(in.poset->psi->at(l));
    return Coloring::field_sum(w);
  }
  if (p.coloring == "spiked") {
    if (!in.poset) throw Error("UsageError", "--coloring spiked needs a poset input");
    if (p.set.empty()) throw Error("UsageError", "--coloring spiked needs --set");
    return Coloring::spiked(parse_set(in.poset->poset, p.set), parse_rational(p.M));
  }
  throw Error("UsageError", "unknown coloring '" + p.coloring + "'");
}

AlphaBeta make_system(const Params& p, const Loaded& in) {
  if (!p.s.empty()) return AlphaBeta::s_rank(in.X, parse_rational(p.s));
  return AlphaBeta::from_coloring(in.X, make_coloring(p, in));
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

json link_json(const PathComplex& X, const LinkRecord& l, const std::string& method) {
  return {{"link", {{"face", face_json(X, l.face)}, {"codim", l.codim}}},
          {"lambda2", l.lambda2},
          {"bound", l.bound},
          {"margin", l.bound - l.lambda2},
          {"method", method},
          {"verdict", verdict(l.pass)}};
}

json profile_json(const PathComplex& X, const SpectralReport& r) {
  json j;
  j["links_checked"] = r.checked;
  j["max_lambda2"] = r.max_lambda2;
  json by = json::object();
  for (auto [k, v] : r.max_by_codim) by[std::to_string(k)] = v;
  j["max_lambda2_by_codim"] = by;
  if (r.worst) j["worst"] = link_json(X, *r.worst, "float");
  j["verdict"] = verdict(r.pass);
  return j;
}

json quadratic_json(const PathComplex& X, const QuadraticRecord& q) {
  return {{"face", face_json(X, q.face)}, {"positive_count", q.positive_count}, {"method", q.method},
          {"margin", q.margin}};
}

json colored_json(const PathComplex& X, const ColoredReport& r) {
  json j;
  j["checked"] = r.checked;
  j["skipped_nonadjacent"] = r.skipped;
  j["max_positive_count"] = r.max_count;
  if (r.witness) j["witness"] = quadratic_json(X, *r.witness);
  j["verdict"] = verdict(r.pass);
  return j;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

json sequence_json(const SequenceReport& r) {
  json j;
  j["d"] = r.d;
  j["c"] = rationals(r.c);
  if (r.closed) j["closed_form"] = rationals(*r.closed);
  j["expressions_agree"] = r.expressions_agree;
  j["closed_agrees"] = r.closed_agrees;
  j["polynomial_identity"] = r.polynomial_identity;
  j["certified"] = r.certified;
  j["log_concave"] = r.log_concave;
  if (r.fails_at) j["fails_at"] = *r.fails_at;
  return j;
}

int eigen_cap(const Params& p) { return p.exact ? 16 : 0; }

// ---------------------------------------------------------------- subcommands

int cmd_verify(const Params& p, json& rep) {
  Loaded in = load_input(p);
  PathVerification v = verify_path_complex(in.X);
  bool connected = check_connected(in.X);
  rep["facets"] = in.X.num_facets();
  rep["d"] = in.X.d();
  rep["weights"] = in.X.exact() ? "exact" : "float";
  rep["path_complex"] = v.ok;
  rep["faces_checked"] = v.checked;
  if (!v.ok) {
    rep["witness"] = {{"F", in.X.vertex(v.F).label}, {"K", in.X.vertex(v.K).label},
                      {"face", face_json(in.X, v.tau)}, {"message", v.message}};
  }
  rep["connected"] = connected;
  bool ok = v.ok && connected;
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_expansion(const Params& p, json& rep) {
  Loaded in = load_input(p);
  const PathComplex& X = in.X;
  auto top = expansion_profile(X, 0.5, true, p.tol);
  auto local = expansion_profile(X, 0.5, false, p.tol);
  AlphaBeta ab = make_system(p, in);
  auto colored = colored_toplink_check(X, ab, eigen_cap(p));
  Certificate cert = lorentzian_certificate(X, ab, eigen_cap(p));
  rep["system"] = p.s.empty() ? p.coloring : "s-rank s=" + p.s;
  rep["top_link"] = profile_json(X, top);
  rep["local"] = profile_json(X, local);
  rep["colored"] = colored_json(X, colored);
  json c;
  c["connected"] = cert.connected;
  c["cone_point"] = cert.cone_ok ? "ok" : "failed";
  json qs = json::array();
  if (cert.quadratics.witness) qs.push_back(quadratic_json(X, *cert.quadratics.witness));
  c["quadratics"] = qs;
  c["quadratics_checked"] = cert.quadratics.checked;
  c["verdict"] = cert.verdict;
  rep["certificate"] = c;
  // A certificate implies the 1/2 profile for the trivial system.
  bool contradiction = cert.granted && p.s.empty() && p.coloring == "trivial" && !(top.pass && local.pass);
  rep["verdict"] = verdict(!contradiction && top.pass && local.pass && colored.pass);
  return rep["verdict"] == "PASS" ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_bounds(const Params& p, json& rep) {
  Loaded in = load_input(p);
  const PathComplex& X = in.X;
  int d = X.d();
  Rational s = p.s.empty() ? Rational(1) : parse_rational(p.s);
  // the bounds are asserted only when the top links are certified for this s
  AlphaBeta ab = p.s.empty() ? AlphaBeta::from_coloring(X, Coloring::trivial()) : AlphaBeta::s_rank(X, s);
  auto colored = colored_toplink_check(X, ab, eigen_cap(p));
  bool certified = colored.pass && check_connected(X);
  rep["s"] = rational_json(s);
  rep["certified"] = certified;
  rep["colored"] = colored_json(X, colored);
  bool ok = true;
  json mij = json::array();
  std::string csv = "i,j,lambda2,bound,positive_count,method,verdict\n";
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      MijReport r = bipartite_Mij_check(X, i, j, s, eigen_cap(p), p.tol);
      ok = ok && r.pass;
      mij.push_back({{"i", i}, {"j", j}, {"lambda2", r.lambda2}, {"bound", r.bound}, {"margin", r.bound - r.lambda2},
                     {"m_i", rational_json(r.m_i)}, {"m_j", rational_json(r.m_j)},
                     {"positive_count", r.positive_count}, {"method", r.method}, {"verdict", verdict(r.pass)}});
      csv += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(r.lambda2) + "," +
             std::to_string(r.bound) + "," + std::to_string(r.positive_count) + "," + r.method + "," +
             verdict(r.pass) + "\n";
    }
  rep["mij"] = mij;
  if (d >= 2) {
    DPartiteReport dp = dpartite_bound(X, mij_table(d, s), p.tol);
    rep["dpartite"] = {{"lambda2", dp.lambda2}, {"bound", dp.bound}, {"margin", dp.bound - dp.lambda2},
                       {"verdict", verdict(dp.pass)}};
    ok = ok && dp.pass;
  }
  // trickle-down: measured maxima per codimension against the formulas
  auto prof = expansion_profile(X, 1.0, false, p.tol);
  json td = json::array();
  double s_d = to_double(s);
  for (auto [k, l2] : prof.max_by_codim) {
    json row = {{"codim", k}, {"lambda2", l2}};
    if (k >= 2) {
      double b = main_s_bound(k, s_d);
      row["bound"] = b;
      row["margin"] = b - l2;
      if (s_d > 1) row["bound_without_leading_s"] = main_s_bound_printed(k, s_d);
      row["verdict"] = verdict(l2 <= b + p.tol);
      ok = ok && l2 <= b + p.tol;
    }
    td.push_back(row);
  }
  rep["trickle_down"] = td;
  if (!p.csv.empty()) save_text(p.csv, csv);
  if (!certified) {
    rep["verdict"] = "NOT_CERTIFIED";
    return EXIT_PASS;
  }
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

std::size_t start_facet(const Params& p, const PathComplex& X, std::mt19937_64& rng) {
  if (p.start == "max-weight") return max_weight_facet(X);
  if (p.start == "uniform") return std::uniform_int_distribution<std::size_t>(0, X.num_facets() - 1)(rng);
  std::size_t f = std::stoul(p.start);
  if (f >= X.num_facets()) throw Error("IndexOutOfRange", "start facet " + p.start + " does not exist");
  return f;
}

int cmd_sample(const Params& p, json& rep) {
  Loaded in = load_input(p);
  const PathComplex& X = in.X;
  std::mt19937_64 rng(p.seed);
  std::size_t start = start_facet(p, X, rng);
  std::vector<long> counts(X.num_facets(), 0);
  for (int c = 0; c < p.chains; ++c) {
    DownUpChain chain(X, start, p.seed + static_cast<std::uint64_t>(c));
    chain.run(p.steps);
    ++counts[chain.state().facet];
  }
  auto mu = stationary(X);
  double tv = 0, band = 0;
  std::string csv = "facet,label,count,frequency,mu\n";
  json rows = json::array();
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    double freq = double(counts[f]) / p.chains, m = to_double(mu[f]);
    tv += std::abs(freq - m);
    band += 3 * std::sqrt(m * (1 - m) / p.chains);
    csv += std::to_string(f) + "," + X.face_label(X.facet(f)) + "," + std::to_string(counts[f]) + "," +
           std::to_string(freq) + "," + std::to_string(m) + "\n";
    rows.push_back({{"facet", X.face_label(X.facet(f))}, {"count", counts[f]}, {"mu", rational_json(mu[f])}});
  }
  rep["start"] = X.face_label(X.facet(start));
  rep["histogram"] = rows;
  rep["tv_l1"] = tv;
  rep["noise_band"] = band;
  if (!p.csv.empty()) save_text(p.csv, csv);
  rep["verdict"] = "PASS";
  return EXIT_PASS;
}

int cmd_mix(const Params& p, json& rep) {
  Loaded in = load_input(p);
  const PathComplex& X = in.X;
  TvOptions opt;
  std::mt19937_64 rng(p.seed);
  opt.start = start_facet(p, X, rng);
  opt.eps = p.eps.empty() ? 0.01 : std::stod(p.eps);
  opt.mode = p.empirical ? "empirical" : "exact";
  opt.chains = p.chains;
  opt.seed = p.seed;
  MixingReport m = tv_mixing(X, opt);
  rep["facets"] = m.facets;
  rep["d"] = m.d;
  if (m.gap) rep["gap"] = *m.gap;
  rep["lambda2"] = m.lambda2;
  rep["gap_bound"] = m.gap_bound;
  rep["reversible"] = m.reversible;
  rep["certified"] = m.certified;
  rep["gap_ok"] = m.gap_ok;
  rep["mode"] = m.mode;
  rep["eps"] = m.eps;
  rep["seed"] = m.seed;
  rep["start"] = X.face_label(X.facet(m.start));
  if (m.t_mix) rep["t_mix"] = *m.t_mix;
  rep["t_bound"] = m.t_bound;
  rep["t_ok"] = m.t_ok;
  if (m.mode == "empirical") rep["noise_band"] = m.noise_band;
  if (!p.csv.empty()) {
    std::string csv = "t,tv_l1\n";
    for (std::size_t t = 0; t < m.tv_curve.size(); ++t)
      csv += std::to_string(t) + "," + std::to_string(m.tv_curve[t]) + "\n";
    save_text(p.csv, csv);
  }
  bool ok = m.gap_ok && m.t_ok;
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_logconcave(const Params& p, json& rep) {
  Loaded in = load_input(p);
  AlphaBeta ab = make_system(p, in);
  SequenceReport r = ck_sequence(in.X, ab, in.X.num_facets() <= 5000);
  rep["system"] = p.s.empty() ? p.coloring : "s-rank s=" + p.s;
  rep["sequence"] = sequence_json(r);
  bool ok = r.expressions_agree && r.closed_agrees && r.polynomial_identity && (!r.certified || r.log_concave);
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_charpoly(const Params& p, json& rep) {
  if (p.input.empty()) throw Error("UsageError", "charpoly needs --matroid");
  Matroid m = parse_matroid(load_json(p.input));
  auto chi = reduced_char_poly(m, 0);
  auto c = hrw_sequence(m);
  json coeff = json::array();
  std::vector<BigInt> abs_coeff;
  for (const auto& x : chi) {
    coeff.push_back(x.get_str());
    abs_coeff.push_back(abs(x));
  }
  int fail = -1;
  bool lc = log_concave(abs_coeff, &fail);
  rep["rank"] = m.rank();
  rep["reduced_char_poly"] = coeff;
  rep["abs_coefficients"] = rationals(std::vector<Rational>(abs_coeff.begin(), abs_coeff.end()));
  rep["hrw_sequence"] = rationals(c);
  bool match = c.size() == abs_coeff.size();
  for (std::size_t k = 0; match && k < c.size(); ++k) match = c[k] == Rational(abs_coeff[k]);
  rep["matches"] = match;
  rep["log_concave"] = lc;
  if (!lc) rep["fails_at"] = fail;
  bool ok = match && lc;
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_stanley(const Params& p, json& rep) {
  if (p.input.empty()) throw Error("UsageError", "stanley needs a poset input");
  PosetInput in = parse_poset(load_json(p.input));
  Poset P = p.N > 0 ? append_chains(in.poset, p.N) : in.poset;
  if (p.set.empty()) throw Error("UsageError", "stanley needs --set");
  Mask A = parse_set(P, p.set);
  LminReport l = lmin_distribution(P, A);
  PConsistency pc = p_consistency(P, A);
  rep["elements"] = P.size();
  rep["set"] = p.set;
  rep["extensions"] = l.extensions.get_str();
  rep["distribution"] = rationals(l.distribution);
  rep["log_concave"] = !l.fails_at.has_value();
  if (l.fails_at) rep["fails_at"] = *l.fails_at;
  rep["p_consistent"] = pc.consistent;
  if (pc.witness) {
    auto [a, b, c] = *pc.witness;
    rep["witness"] = {P.label(a), P.label(b), P.label(c)};
  }
  bool ok = !pc.consistent || !l.fails_at;
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_lowerbound(const Params& p, json& rep) {
  Rational eps = p.eps.empty() ? Rational(1) : parse_rational(p.eps);
  LowerBoundInstance inst = lowerbound_instance(p.d, eps, p.check_path);
  const auto& r = inst.report;
  rep["d"] = r.d;
  rep["eps"] = rational_json(r.eps);
  rep["facets"] = inst.X.num_facets();
  if (r.path_ok) rep["path_complex"] = *r.path_ok;
  rep["worst_link"] = {{"face", face_json(inst.X, r.sigma)}, {"lambda2", r.worst_lambda2}, {"expected", r.expected},
                       {"margin", std::abs(r.worst_lambda2 - r.expected)}, {"verdict", verdict(r.worst_ok)}};
  rep["max_top_link_lambda2"] = r.max_toplink_lambda2;
  rep["lambda2_empty"] = {{"lambda2", r.lambda2_empty}, {"bound", r.lambda2_bound},
                          {"margin", r.lambda2_empty - r.lambda2_bound}, {"verdict", verdict(r.lambda2_ok)}};
  rep["conductance"] = {{"phi_S", rational_json(r.phi_S)}, {"bound", rational_json(r.phi_bound)},
                        {"verdict", verdict(r.phi_ok)}};
  rep["cheeger_lower"] = r.cheeger_lower;
  rep["sum_inequality"] = {{"lhs", rational_json(r.fact_lhs)}, {"rhs", rational_json(r.fact_rhs)},
                           {"verdict", verdict(r.fact_ok)}};
  rep["corrected"] = {{"phi_bound", rational_json(r.phi_bound_corrected)},
                      {"lambda2_bound", r.lambda2_bound_corrected},
                      {"verdict", verdict(r.corrected_ok)}};
  rep["chain_weights"] = rationals(r.chain_weights);
  rep["weights_ok"] = r.weights_ok;
  rep["verdict"] = verdict(r.pass());
  return r.pass() ? EXIT_PASS : EXIT_BOUND_FAILED;
}

std::pair<int, int> parse_pair(const std::string& s, const char* what) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error("UsageError", std::string(what) + " expects two integers a,b");
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

json classifier_json(const UniqueNeighborReport& u) {
  return {{"unique_neighbor", u.unique_neighbor}, {"predicted_one_positive", u.predicted_one_positive},
          {"certified_count", u.certified_count}, {"method", u.method}, {"agrees", u.agrees}};
}

int cmd_modular(const Params& p, json& rep) {
  bool ok = true;
  std::optional<RankedLattice> L;
  if (!p.subspace.empty()) {
    auto [n, q] = parse_pair(p.subspace, "--subspace");
    L = subspace_lattice(n, q);
  } else if (!p.input.empty()) {
    json j = load_json(p.input);
    std::string kind = j.value("kind", "");
    if (kind == "graph") {
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      auto u = unique_neighbor_classify(bipartite_from_edges(j.at("vertices").get<int>(), edges));
      rep["graph"] = classifier_json(u);
      ok = !u.unique_neighbor || u.agrees;
    } else if (kind == "poset") {
      L = birkhoff_lattice(parse_poset(j).poset);
    } else if (kind == "matroid") {
      L = flat_lattice(parse_matroid(j));
    } else {
      throw Error("ParseError", "modular expects a poset, matroid or graph input");
    }
  }
  if (L) {
    LatticeClass c = classify_lattice(*L);
    rep["distributive"] = c.distributive;
    rep["modular"] = c.modular;
    rep["typical_modular"] = c.typical_modular;
    if (c.atypical_interval)
      rep["atypical_interval"] = {L->flat_label(c.atypical_interval->first), L->flat_label(c.atypical_interval->second)};
    // every rank-3 interval: incidence graph of its atoms and coatoms
    json intervals = json::array();
    for (int K = 0; K < L->size(); ++K)
      for (int G = 0; G < L->size(); ++G) {
        if (!L->leq(K, G) || L->rank(G) != L->rank(K) + 3) continue;
        std::vector<int> atoms, coatoms;
        for (int F : L->upper_covers(K))
          if (L->leq(F, G)) atoms.push_back(F);
        for (int F : L->lower_covers(G))
          if (L->leq(K, F)) coatoms.push_back(F);
        BipartiteGraph B;
        B.m = static_cast<int>(atoms.size());
        B.n = static_cast<int>(coatoms.size());
        for (int x = 0; x < B.m; ++x)
          for (int y = 0; y < B.n; ++y)
            if (L->leq(atoms[x], coatoms[y])) B.edges.emplace_back(x, y);
        auto u = unique_neighbor_classify(B);
        RMatrix A = incidence_adjacency(B);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(A), Eigen::EigenvaluesOnly);
        json spec = json::array();
        for (int i = static_cast<int>(A.size()) - 1; i >= 0; --i) spec.push_back(es.eigenvalues()(i));
        json row = classifier_json(u);
        row["interval"] = {L->flat_label(K), L->flat_label(G)};
        row["spectrum"] = spec;
        intervals.push_back(row);
        if (u.unique_neighbor && !u.agrees) ok = false;
        if (intervals.size() >= 50) break;
      }
    rep["rank3_intervals"] = intervals;
  }
  if (!p.sweep.empty()) {
    auto [m, n] = parse_pair(p.sweep, "--sweep");
    SweepReport s = unique_neighbor_sweep(m, n);
    rep["sweep"] = {{"graphs", s.graphs}, {"mismatches", s.mismatches}};
    ok = ok && s.mismatches == 0;
  }
  if (!L && p.sweep.empty() && !rep.contains("graph"))
    throw Error("UsageError", "modular needs an input, --subspace or --sweep");
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

int cmd_selftest(const Params& p, json& rep) {
  struct Case {
    std::string name;
    PathComplex X;
    std::function<AlphaBeta(const PathComplex&)> system;
  };
  Poset cp = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  std::vector<Case> cases = {
      {"boolean B3", chain_complex(boolean_lattice(3)),
       [](const PathComplex& X) { return AlphaBeta::from_coloring(X, Coloring::trivial()); }},
      {"boolean B4 cardinality", chain_complex(boolean_lattice(4)),
       [](const PathComplex& X) { return AlphaBeta::from_coloring(X, Coloring::cardinality()); }},
      {"four-element poset", chain_complex(birkhoff_lattice(cp)),
       [](const PathComplex& X) { return AlphaBeta::from_coloring(X, Coloring::trivial()); }},
      {"K4 flats cardinality",
       chain_complex(flat_lattice(Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))),
       [](const PathComplex& X) { return AlphaBeta::from_coloring(X, Coloring::cardinality()); }},
      {"PG(2,2) s=5/4", chain_complex(subspace_lattice(3, 2)),
       [](const PathComplex& X) { return AlphaBeta::s_rank(X, ratio(5, 4)); }},
  };
  bool ok = true;
  json rows = json::array();
  PointOptions opt;
  opt.seed = p.seed;
  for (auto& c : cases) {
    PolyContext ctx(c.X, c.system(c.X));
    IdentityReport r = identity_suite(ctx, opt);
    json checked = json::object(), viol = json::object();
    for (const auto& [k, v] : r.checked) checked[k] = v;
    for (const auto& [k, v] : r.violations) viol[k] = v;
    rows.push_back({{"instance", c.name}, {"checked", checked}, {"violations", viol}, {"witnesses", r.witnesses},
                    {"verdict", verdict(r.pass())}});
    ok = ok && r.pass();
  }
  rep["suites"] = rows;
  rep["verdict"] = verdict(ok);
  return ok ? EXIT_PASS : EXIT_BOUND_FAILED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path complexes from posets, lattices and matroids: expansion, sampling, log-concavity"};
  app.require_subcommand(1);
  app.fallthrough();
  Params p;
  app.add_option("--out", p.out, "Write the JSON report to this file");
  app.add_option("--seed", p.seed, "RNG seed");
  app.add_option("--tol", p.tol, "Float tolerance for eigenvalue comparisons");
  app.add_option("--cap-facets", p.cap_facets, "Maximum number of facets to materialize");
  auto* exact = app.add_flag("--exact", "Exact arithmetic for eigenvalue counts (default)");
  auto* flt = app.add_flag("--float", "Float eigenvalue counts");
  exact->excludes(flt);

  auto input_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("input,--input", p.input, "Input JSON (poset, matroid or complex)");
    if (required) o->required();
  };
  auto coloring_opts = [&](CLI::App* sub) {
    sub->add_option("--coloring", p.coloring, "Coloring: trivial, card, psi or spiked")
        ->check(CLI::IsMember({"trivial", "card", "psi", "spiked"}));
    sub->add_option("--s", p.s, "Use the s-rank system with this s >= 1");
    sub->add_option("--set", p.set, "Comma-separated element labels (spiked coloring)");
    sub->add_option("--M", p.M, "Spike height M (spiked coloring)");
  };

  std::map<std::string, std::function<int(const Params&, json&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Params&, json&)> h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, help);
  };

  auto* verify = add("verify", "Path-complex property and connectivity", cmd_verify);
  input_opt(verify);
  auto* expansion = add("expansion", "Top-link and local spectral profile, colored check, certificate", cmd_expansion);
  input_opt(expansion);
  coloring_opts(expansion);
  auto* bounds = add("bounds", "M_{i,j} bipartite bounds, d-partite bound, trickle-down formulas", cmd_bounds);
  input_opt(bounds);
  bounds->add_option("--s", p.s, "s for the s-analog tables (default 1)");
  bounds->add_option("--csv", p.csv, "Write the M_{i,j} table as CSV");
  auto* sample = add("sample", "Run down-up chains and compare the histogram with the stationary law", cmd_sample);
  input_opt(sample);
  sample->add_option("--steps", p.steps, "Steps per chain");
  sample->add_option("--chains", p.chains, "Number of chains");
  sample->add_option("--start", p.start, "max-weight, uniform or a facet index");
  sample->add_option("--csv", p.csv, "Write the histogram as CSV");
  auto* mix = add("mix", "Exact spectral gap and total-variation mixing time", cmd_mix);
  input_opt(mix);
  mix->add_option("--eps", p.eps, "TV threshold (default 0.01)");
  mix->add_option("--chains", p.chains, "Chains in empirical mode");
  mix->add_option("--start", p.start, "max-weight, uniform or a facet index");
  mix->add_flag("--empirical", p.empirical, "Estimate TV from independent chains");
  mix->add_option("--csv", p.csv, "Write the TV curve as CSV");
  auto* lc = add("logconcave", "c_k sequence of an alpha/beta system", cmd_logconcave);
  input_opt(lc);
  coloring_opts(lc);
  auto* cp = add("charpoly", "Reduced characteristic polynomial and its log-concavity", cmd_charpoly);
  cp->add_option("--matroid,input", p.input, "Matroid JSON")->required();
  auto* st = add("stanley", "l_min distribution and P-consistency", cmd_stanley);
  input_opt(st);
  st->add_option("--set", p.set, "Comma-separated element labels")->required();
  st->add_option("--N", p.N, "Append chains of length N below and above");
  auto* lb = add("lowerbound", "Near-tight lower-bound instance", cmd_lowerbound);
  lb->add_option("--d", p.d, "Even dimension d");
  lb->add_option("--eps", p.eps, "Rational eps > 0 (default 1)");
  lb->add_flag("!--skip-path-check", p.check_path, "Skip the exhaustive path-property check");
  auto* mod = add("modular", "Modular lattice typicality and unique-neighbour classifier", cmd_modular);
  input_opt(mod, false);
  mod->add_option("--subspace", p.subspace, "Subspace lattice of F_q^n as n,q");
  mod->add_option("--sweep", p.sweep, "Sweep unique-neighbour graphs with sides up to m,n");
  add("selftest", "Identity suites on built-in instances", cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? EXIT_PASS : EXIT_USAGE;
  }
  p.exact = !flt->as<bool>();
  CLI::App* sub = app.get_subcommands().front();
  p.subcommand = sub->get_name();
  json rep;
  rep["manifest"] = manifest(p);
  int rc;
  try {
    rc = handlers.at(p.subcommand)(p, rep);
  } catch (const Error& e) {
    json err = {{"manifest", manifest(p)}, {"error", e.name()}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    std::cout << err.dump(2) << "\n";
    return EXIT_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  }
  std::string text = rep.dump(2) + "\n";
  std::cout << text;
  if (!p.out.empty()) {
    try {
      save_text(p.out, text);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return EXIT_USAGE;
    }
  }
  return rc;
}
