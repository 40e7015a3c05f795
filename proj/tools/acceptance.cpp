#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "pcx/coloring.hpp"
#include "pcx/complex.hpp"
#include "pcx/corpus.hpp"
#include "pcx/lorentzian.hpp"
#include "pcx/matroid.hpp"
#include "pcx/order.hpp"
#include "pcx/sampler.hpp"
#include "pcx/spectral.hpp"

using namespace pcx;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

// Records the first failure of a criterion.
struct Tally {
  long checked = 0;
  long failures = 0;
  std::string first;
  void check(bool ok, const std::string& where) {
    ++checked;
    if (!ok && failures++ == 0) first = where;
  }
  std::string summary() const {
    std::string s = std::to_string(checked) + " checks, " + std::to_string(failures) + " failures";
    if (failures) s += "; first: " + first;
    return s;
  }
};

const std::vector<CorpusInstance>& corpus() {
  static const std::vector<CorpusInstance> c = acceptance_corpus();
  return c;
}

Outcome criterion1() {
  auto t0 = Clock::now();
  Tally t;
  for (const auto& c : corpus()) {
    PathVerification v = verify_path_complex(c.X);
    t.check(v.ok, c.name + " path property: " + v.message);
    ColoredReport q = colored_toplink_check(c.X, AlphaBeta::from_coloring(c.X, Coloring::trivial()), 16, true);
    bool exact = true;
    for (const auto& r : q.records) exact = exact && r.method == "exact";
    t.check(q.pass && q.max_count <= 1 && exact, c.name + " -D/2+A positive count " + std::to_string(q.max_count));
    SpectralReport top = expansion_profile(c.X, 0.5, true, 1e-9);
    t.check(top.pass, c.name + " top-link lambda2 " + fmt(top.max_lambda2, 12));
  }
  double secs = seconds_since(t0);
  std::set<std::string> posets;
  for (const auto& c : corpus()) posets.insert(c.name.substr(0, c.name.find("psi")));
  bool fast = secs < 300;
  return {t.failures == 0 && fast, std::to_string(posets.size()) + " posets, " + std::to_string(corpus().size()) +
                                       " weighted instances; " + t.summary() + "; " + fmt(secs) + " s (limit 300 s)"};
}

Outcome criterion2() {
  Tally t;
  double worst = 0;
  for (const auto& c : corpus()) {
    SpectralReport r = expansion_profile(c.X, 0.5, false, 1e-9);
    worst = std::max(worst, r.max_lambda2);
    t.check(r.pass, c.name + " local lambda2 " + fmt(r.max_lambda2, 12));
  }
  return {t.failures == 0, t.summary() + "; max link lambda2 " + fmt(worst, 12)};
}

Outcome criterion3() {
  Tally t;
  double min_ratio = 1e300;
  for (const auto& c : corpus()) {
    if (c.X.num_facets() > 2000) continue;
    MixingReport m = exact_downup_gap(c.X);
    double gap = m.degenerate ? 1.0 : *m.gap;
    if (!m.degenerate) min_ratio = std::min(min_ratio, gap / m.gap_bound);
    t.check(gap >= m.gap_bound - 1e-9, c.name + " gap " + fmt(gap, 12) + " < " + fmt(m.gap_bound, 12));
  }
  return {t.failures == 0, t.summary() + "; min gap/bound " + fmt(min_ratio, 6)};
}

Outcome criterion4() {
  Tally t;
  std::string failed;
  int corrected = 0, total = 0;
  for (int d : {4, 8, 16})
    for (Rational eps : {ratio(1, 2), Rational(1), Rational(2)}) {
      LowerBoundReport r = lowerbound_instance(d, eps).report;
      std::string tag = "(d=" + std::to_string(d) + ", eps=" + to_string(eps) + ")";
      t.check(r.path_ok.value_or(false), tag + " path property");
      t.check(r.worst_ok, tag + " worst link " + fmt(r.worst_lambda2, 12) + " vs " + fmt(r.expected, 12));
      t.check(r.lambda2_ok, tag + " lambda2(P_empty) " + fmt(r.lambda2_empty, 6) + " < " + fmt(r.lambda2_bound, 6));
      t.check(r.phi_ok, tag + " phi(S) " + to_string(r.phi_S) + " > " + to_string(r.phi_bound));
      if (!r.lambda2_ok || !r.phi_ok) failed += (failed.empty() ? "" : " ") + tag;
      ++total;
      if (r.corrected_ok) ++corrected;
    }
  std::string detail = t.summary();
  if (!failed.empty()) detail += "; stated bounds fail at " + failed;
  detail += "; corrected conductance bound holds at " + std::to_string(corrected) + "/" + std::to_string(total);
  return {t.failures == 0, detail};
}

Outcome criterion5() {
  Tally t;
  std::vector<std::pair<std::string, Matroid>> ms;
  for (int n = 2; n <= 7; ++n)
    for (int r = 2; r <= n; ++r) ms.emplace_back("U" + std::to_string(r) + "," + std::to_string(n), Matroid::uniform(r, n));
  std::vector<std::pair<int, int>> k5;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.emplace_back(a, b);
  ms.emplace_back("K4", Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  ms.emplace_back("K5", Matroid::graphic(5, k5));
  ms.emplace_back("K5-e", Matroid::graphic(5, std::vector<std::pair<int, int>>(k5.begin() + 1, k5.end())));
  std::string k4;
  for (const auto& [name, m] : ms) {
    PathComplex X = chain_complex(flat_lattice(m));
    SequenceReport s = ck_sequence(X, Coloring::cardinality(), X.num_facets() <= 1000);
    auto chi = reduced_char_poly(m, 0);
    std::vector<BigInt> a;
    for (const auto& x : chi) a.push_back(abs(x));
    bool eq = s.c.size() == a.size();
    // c_k is computed from raw facet weights; normalising by c_0 gives the monic polynomial
    for (std::size_t k = 0; eq && k < a.size(); ++k) eq = s.c[k] / s.c[0] == Rational(a[k]);
    t.check(eq && s.expressions_agree && s.closed_agrees, name + " c_k vs reduced characteristic polynomial");
    t.check(log_concave(a), name + " log-concavity");
    if (name == "K4") {
      for (std::size_t k = 0; k < a.size(); ++k) k4 += (k ? "," : "") + a[k].get_str();
      t.check(a == std::vector<BigInt>{1, 5, 6}, "K4 coefficients");
    }
  }
  return {t.failures == 0, std::to_string(ms.size()) + " matroids; " + t.summary() + "; K4 gives (" + k4 + ")"};
}

Outcome criterion6() {
  Poset p = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  Mask A = p.mask_of({"a", "d"});
  LminReport l = lmin_distribution(p, A);
  PConsistency pc = p_consistency(p, A);
  std::vector<Rational> want = {ratio(1, 4), ratio(1, 4), ratio(1, 2), 0};
  std::string dist, wit;
  for (std::size_t i = 0; i < l.distribution.size(); ++i) dist += (i ? "," : "") + to_string(l.distribution[i]);
  bool witness_ok = false;
  if (pc.witness) {
    auto [a, b, c] = *pc.witness;
    wit = p.label(a) + "," + p.label(b) + "," + p.label(c);
    witness_ok = wit == "a,c,d";
  }
  bool ok = l.distribution == want && l.fails_at == 2 && !pc.consistent && witness_ok;
  return {ok, "distribution (" + dist + "), fails at k=" + (l.fails_at ? std::to_string(*l.fails_at) : "none") +
                  ", P-consistent " + (pc.consistent ? "true" : "false") + ", witness (" + wit + ")"};
}

Outcome criterion7() {
  Tally t;
  long consistent = 0;
  for (int n = 1; n <= 6; ++n)
    for (const Poset& p : all_posets(n))
      for (Mask A = 1; A <= p.all(); ++A) {
        if (!is_p_consistent(p, A)) continue;
        ++consistent;
        LminReport l = lmin_distribution(p, A);
        std::string where = "poset with covers";
        for (auto [a, b] : p.cover_pairs()) where += " " + p.label(a) + "<" + p.label(b);
        t.check(!l.fails_at.has_value(), where + ", A mask " + std::to_string(A));
      }
  return {t.failures == 0, std::to_string(consistent) + " P-consistent sets over all posets on 1..6 elements; " +
                               std::to_string(t.failures) + " counterexamples"};
}

Outcome criterion8() {
  Tally t;
  RankedLattice pg = subspace_lattice(3, 2);
  BipartiteGraph G;
  auto pts = pg.flats_of_rank(1), lines = pg.flats_of_rank(2);
  G.m = static_cast<int>(pts.size());
  G.n = static_cast<int>(lines.size());
  for (int x = 0; x < G.m; ++x)
    for (int y = 0; y < G.n; ++y)
      if (pg.leq(pts[x], lines[y])) G.edges.emplace_back(x, y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(incidence_adjacency(G)), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  bool spec = ev.size() == 14 && std::abs(ev(0) + 3) < 1e-9 && std::abs(ev(13) - 3) < 1e-9;
  for (int i = 1; spec && i <= 6; ++i) spec = std::abs(ev(i) + std::sqrt(2.0)) < 1e-9;
  for (int i = 7; spec && i <= 12; ++i) spec = std::abs(ev(i) - std::sqrt(2.0)) < 1e-9;
  t.check(spec, "Fano spectrum");
  auto fano = unique_neighbor_classify(G);
  t.check(fano.certified_count == 1 && fano.method == "exact", "Fano positive count " + std::to_string(fano.certified_count));
  auto g5 = unique_neighbor_classify(bipartite_from_edges(5, {{0, 3}, {0, 4}, {1, 3}, {2, 3}}));
  t.check(g5.certified_count == 2 && g5.agrees, "5-vertex graph count " + std::to_string(g5.certified_count));
  SweepReport sw = unique_neighbor_sweep(9, 9);
  t.check(sw.mismatches == 0, "sweep mismatches " + std::to_string(sw.mismatches));
  return {t.failures == 0, t.summary() + "; Fano count " + std::to_string(fano.certified_count) + ", 5-vertex count " +
                               std::to_string(g5.certified_count) + ", sweep " + std::to_string(sw.graphs) +
                               " graphs with " + std::to_string(sw.mismatches) + " mismatches"};
}

Outcome criterion9() {
  Tally t;
  std::map<std::string, long> checked;
  PointOptions opt;
  opt.points = 10;
  opt.max_faces = 40;
  opt.hessian_entries = 0;
  for (const auto& c : corpus()) {
    PolyContext ctx(c.X, AlphaBeta::from_coloring(c.X, Coloring::trivial()));
    IdentityReport r = identity_suite(ctx, opt);
    for (const auto& [k, v] : r.checked) checked[k] += v;
    t.check(r.pass(), c.name + ": " + (r.witnesses.empty() ? std::string("?") : r.witnesses.front()));
  }
  long total = 0;
  for (const auto& [k, v] : checked) total += v;
  return {t.failures == 0, std::to_string(corpus().size()) + " instances, " + std::to_string(total) +
                               " identity checks over " + std::to_string(checked.size()) + " kinds; " +
                               std::to_string(t.failures) + " instances with violations" +
                               (t.failures ? "; first: " + t.first : "")};
}

Outcome criterion10() {
  Tally t;
  long certified = 0;
  for (const auto& c : corpus()) {
    if (!certified_half_toplink(c.X)) continue;
    ++certified;
    int d = c.X.d();
    for (int i = 1; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) {
        MijReport r = bipartite_Mij_check(c.X, i, j);
        double want = std::sqrt(double(i * (d - j + 1)) / double(j * (d - i + 1)));
        t.check(r.pass && r.lambda2 <= want + 1e-9 && std::abs(r.bound - want) < 1e-12,
                c.name + " M_{" + std::to_string(i) + "," + std::to_string(j) + "}");
      }
  }
  std::vector<PathComplex> extra = {chain_complex(subspace_lattice(3, 2)), chain_complex(subspace_lattice(3, 3))};
  std::string per_s;
  for (Rational s : {ratio(5, 4), ratio(3, 2), Rational(2)}) {
    long cert_s = 0;
    auto run = [&](const PathComplex& X, const std::string& name) {
      if (!check_connected(X) || !colored_toplink_check(X, AlphaBeta::s_rank(X, s)).pass) return;
      ++cert_s;
      SpectralReport prof = expansion_profile(X, 1.0, false, 1e-9, true);
      for (const auto& l : prof.links)
        t.check(l.lambda2 <= main_s_bound(l.codim, to_double(s)) + 1e-9,
                name + " s=" + to_string(s) + " codim " + std::to_string(l.codim) + " lambda2 " + fmt(l.lambda2, 12));
    };
    for (const auto& c : corpus()) run(c.X, c.name);
    run(extra[0], "PG(2,2)");
    run(extra[1], "PG(2,3)");
    per_s += (per_s.empty() ? "" : ", ") + std::string("s=") + to_string(s) + ": " + std::to_string(cert_s);
  }
  return {t.failures == 0, std::to_string(certified) + " 1/2-certified instances; s-certified instances " + per_s +
                               "; " + t.summary()};
}

Outcome criterion11() {
  Tally t;
  long trials = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& c = corpus()[i];
    VarianceReport r = variance_decomposition_check(c.X, 100, 1000 + i);
    trials += r.trials;
    t.check(r.pass(), c.name + ": local " + std::to_string(r.local_violations) + ", eig " +
                          std::to_string(r.eig_violations));
  }
  return {t.failures == 0, std::to_string(trials) + " random f over " + std::to_string(corpus().size()) +
                               " instances; " + t.summary()};
}

Outcome criterion12() {
  Tally t;
  long n = 0;
  double worst = 0;
  for (const auto& c : corpus()) {
    if (c.X.num_facets() > 500) continue;
    ++n;
    TvOptions opt;
    opt.eps = 0.01;
    MixingReport m = tv_mixing(c.X, opt);
    if (m.t_mix) worst = std::max(worst, *m.t_mix / m.t_bound);
    t.check(m.t_ok, c.name + " t_mix " + (m.t_mix ? std::to_string(*m.t_mix) : "none") + " > " + fmt(m.t_bound));
  }
  return {t.failures == 0, std::to_string(n) + " instances with at most 500 facets; " + t.summary() +
                               "; max t_mix/bound " + fmt(worst, 4)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks 1-12"};
  std::vector<int> only, known;
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--known-failures", known,
                 "Exit 0 when exactly these criteria fail (all lines are still printed)")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3,  criterion4,
                                               criterion5, criterion6, criterion7,  criterion8,
                                               criterion9, criterion10, criterion11, criterion12};
  std::set<int> failed;
  for (int i = 1; i <= 12; ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = all[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) failed.insert(i);
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(seconds_since(t0)) << " s) "
              << o.detail << std::endl;
  }
  std::set<int> expected(known.begin(), known.end());
  if (!only.empty()) {
    std::set<int> ran(only.begin(), only.end());
    std::set<int> e2;
    for (int k : expected)
      if (ran.count(k)) e2.insert(k);
    expected = e2;
  }
  if (failed == expected) return 0;
  return 1;
}
