#include "doctest.h"
#include "pcx/sampler.hpp"
#include "pcx/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace pcx;

namespace {

PathComplex four_facets() {
  Poset cp = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  return chain_complex(birkhoff_lattice(cp));
}

PathComplex weighted_four_facets() {
  Poset cp = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  RankedLattice L = birkhoff_lattice(cp);
  auto w = lift_element_weights(L, {{"a", 3}, {"b", 2}, {"c", 1}, {"d", ratio(1, 2)}});
  return chain_complex(L, &w);
}

// P(s, s') by direct enumeration over pairs of facets.
Rational oracle_entry(const PathComplex& X, std::size_t s, std::size_t t) {
  int d = X.d();
  const auto& a = X.facet(s);
  const auto& b = X.facet(t);
  Rational p = 0;
  for (int i = 0; i < d; ++i) {
    bool agree = true;
    for (int k = 0; k < d; ++k)
      if (k != i && a[k] != b[k]) agree = false;
    if (!agree) continue;
    Rational W = 0;
    for (std::size_t g = 0; g < X.num_facets(); ++g) {
      bool same = true;
      for (int k = 0; k < d; ++k)
        if (k != i && X.facet(g)[k] != a[k]) same = false;
      if (same) W += X.weight(g);
    }
    p += X.weight(t) / (W * d);
  }
  return p;
}

}  // namespace

TEST_CASE("single facet complexes are fixed points") {
  PathComplex one = PathComplex::make({{"x"}, {"u"}, {"p"}}, {{{"x", "u", "p"}, 2}});
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) CHECK(downup_step(one, 0, rng) == 0);
  MixingReport g = exact_downup_gap(one);
  CHECK(g.degenerate);
  REQUIRE(g.gap.has_value());
  CHECK(*g.gap == 1);
  MixingReport m = tv_mixing(one);
  REQUIRE(m.t_mix.has_value());
  CHECK(*m.t_mix == 0);
}

TEST_CASE("down-up transition matrix matches enumeration and is reversible") {
  for (const PathComplex& X : {four_facets(), weighted_four_facets()}) {
    SparseRows P = downup_matrix(X);
    std::size_t n = X.num_facets();
    REQUIRE(n == 4);
    for (std::size_t s = 0; s < n; ++s) {
      Rational row = 0;
      std::vector<Rational> dense(n, 0);
      for (const auto& [t, p] : P[s]) dense[t] = p;
      for (std::size_t t = 0; t < n; ++t) {
        CHECK(dense[t] == oracle_entry(X, s, t));
        row += dense[t];
      }
      CHECK(row == 1);
    }
    CHECK(is_reversible(X, P));
  }
  CHECK_THROWS_WITH_AS(downup_matrix(four_facets(), 3), doctest::Contains("SizeLimitExceeded"), Error);
}

TEST_CASE("one step from a facet resamples the free slot from the conditional") {
  PathComplex X = weighted_four_facets();
  SparseRows P = downup_matrix(X);
  std::mt19937_64 rng(5);
  std::vector<long> counts(4, 0);
  const long N = 200000;
  for (long t = 0; t < N; ++t) ++counts[downup_step(X, 0, rng)];
  for (const auto& [t, p] : P[0]) {
    double q = to_double(p);
    CHECK(std::abs(counts[t] / double(N) - q) <= 4 * std::sqrt(q * (1 - q) / N));
  }
  DownUpChain c(X, 0, 9);
  c.run(25);
  CHECK(c.state().step == 25);
  CHECK(c.state().seed == 9);
  CHECK_THROWS_WITH_AS(DownUpChain(X, 7, 1), doctest::Contains("IndexOutOfRange"), Error);
}

TEST_CASE("long runs match the stationary distribution") {
  PathComplex X = weighted_four_facets();
  auto mu = stationary(X);
  // thinned samples are close to independent draws
  const long steps = 1000000, thin = 50;
  std::mt19937_64 rng(11);
  std::vector<long> counts(X.num_facets(), 0);
  std::size_t f = 0;
  long samples = 0;
  for (long t = 1; t <= steps; ++t) {
    f = downup_step(X, f, rng);
    if (t % thin == 0) {
      ++counts[f];
      ++samples;
    }
  }
  for (std::size_t g = 0; g < X.num_facets(); ++g) {
    double m = to_double(mu[g]);
    CHECK(std::abs(counts[g] / double(samples) - m) <= 3 * std::sqrt(m * (1 - m) / samples));
  }
  auto h = run_histogram(X, 0, 100000, 3);
  long total = 0;
  for (long c : h) total += c;
  CHECK(total == 100000);
}

TEST_CASE("exact spectral gap") {
  PathComplex X = four_facets();
  MixingReport r = exact_downup_gap(X);
  CHECK(r.certified);
  CHECK(r.reversible);
  REQUIRE(r.gap.has_value());
  CHECK(r.gap_bound == doctest::Approx(1.0 / 12));
  CHECK(*r.gap >= 1.0 / 12);
  CHECK(r.gap_ok);
  // independent nonsymmetric eigensolve of the dense matrix
  SparseRows P = downup_matrix(X);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 4);
  for (std::size_t s = 0; s < 4; ++s)
    for (const auto& [t, p] : P[s]) D(s, t) = to_double(p);
  Eigen::EigenSolver<Eigen::MatrixXd> es(D);
  std::vector<double> ev;
  for (int i = 0; i < 4; ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.rbegin(), ev.rend());
  CHECK(std::abs(ev[1] - r.lambda2) < 1e-9);
  CHECK(std::abs(*r.gap - (1 - ev[1])) < 1e-9);

  PathComplex two = PathComplex::make({{"x", "y"}, {"u", "v"}}, {{{"x", "u"}, 1}, {{"y", "v"}, 1}});
  MixingReport dis = exact_downup_gap(two);
  CHECK_FALSE(dis.certified);
  CHECK(*dis.gap == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("mixing time bound and TV curves") {
  CHECK(mixing_time_bound(3, 0.01, 0.25) == doctest::Approx(12 * std::log(400.0)));
  CHECK(mixing_time_bound(3, 0.01, 0.25) == doctest::Approx(71.9).epsilon(1e-3));

  PathComplex X = weighted_four_facets();
  MixingReport m = tv_mixing(X);
  CHECK(m.start == max_weight_facet(X));
  for (std::size_t f = 0; f < X.num_facets(); ++f) CHECK(X.weight(m.start) >= X.weight(f));
  REQUIRE(m.t_mix.has_value());
  CHECK(m.t_ok);
  CHECK(*m.t_mix <= m.t_bound);
  CHECK(m.tv_curve.front() == doctest::Approx(2 * (1 - to_double(X.weight(m.start) / X.total_weight()))));
  for (std::size_t t = 1; t < m.tv_curve.size(); ++t) CHECK(m.tv_curve[t] <= m.tv_curve[t - 1] + 1e-12);

  TvOptions e;
  e.mode = "empirical";
  e.chains = 4000;
  e.seed = 2;
  MixingReport em = tv_mixing(X, e);
  CHECK(em.t_ok);
  CHECK(em.tv_curve.back() <= 0.01 + em.noise_band);
  e.chains = 50;
  CHECK_THROWS_WITH_AS(tv_mixing(X, e), doctest::Contains("InvalidArgument"), Error);
}

TEST_CASE("variance decompositions") {
  for (const PathComplex& X : {four_facets(), weighted_four_facets(), chain_complex(boolean_lattice(4))}) {
    VarianceReport r = variance_decomposition_check(X, 30, 4);
    CHECK(r.pass());
    CHECK(r.eig_checked);
    CHECK(r.min_local_slack >= 0);
    CHECK(r.min_eig_slack >= 0);
  }
  PathComplex two = PathComplex::make({{"x", "y"}, {"u", "v"}}, {{{"x", "u"}, 1}, {{"y", "v"}, 1}});
  CHECK_THROWS_WITH_AS(variance_decomposition_check(two, 5), doctest::Contains("NotCertified"), Error);
}

TEST_CASE("lower-bound instances") {
  LowerBoundInstance inst = lowerbound_instance(4, 1);
  const LowerBoundReport& r = inst.report;
  CHECK(r.pass());
  REQUIRE(r.path_ok.has_value());
  CHECK(*r.path_ok);
  CHECK(r.worst_lambda2 == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.lambda2_empty >= 0.5);
  // tau(i) weights (4,2,1,2,4): phi(S) = (2*3 + 1*4 + 2*3) / (13 * 6) = 8/39
  CHECK(r.phi_S == ratio(8, 39));
  CHECK(r.phi_bound == ratio(1, 4));
  std::vector<Rational> w = {4, 2, 1, 2, 4};
  CHECK(r.chain_weights == w);
  CHECK(inst.X.num_facets() == 5);

  // exact conductance by the closed sum over tau(i)
  auto phi_oracle = [](int d, const Rational& eps) -> Rational {
    Rational num = 0, mass = 0;
    for (int i = 0; i <= d; ++i) {
      Rational m = rpow(1 + eps, std::abs(d / 2 - i));
      num += m * i * (d - i);
      mass += m;
    }
    return num / (mass * d * (d - 1) / 2);
  };
  for (int d : {4, 8, 16})
    for (Rational eps : {ratio(1, 2), Rational(1), Rational(2)}) {
      auto li = lowerbound_instance(d, eps, d <= 8);
      INFO("d=" << d << " eps=" << to_string(eps));
      CHECK(li.report.worst_ok);
      CHECK(li.report.weights_ok);
      CHECK(li.report.corrected_ok);
      CHECK(li.report.phi_S == phi_oracle(d, eps));
      CHECK(li.report.path_ok.value_or(true));
    }
  // the stated 2/(eps(1+eps)d) conductance bound fails once d grows: at d = 16, eps = 1
  // phi(S) = 13132 / 122520 > 1/16, and the auxiliary sum reads 996 > 510
  auto big = lowerbound_instance(16, 1, false).report;
  CHECK(big.phi_S == ratio(3283, 30630));
  CHECK_FALSE(big.phi_ok);
  CHECK(big.fact_lhs == 996);
  CHECK(big.fact_rhs == 510);
  CHECK_FALSE(big.fact_ok);
  CHECK_FALSE(big.pass());
  CHECK_THROWS_WITH_AS(lowerbound_instance(3, 1), doctest::Contains("OddDimension"), Error);
}

TEST_CASE("near-extremal gap search over small distributive lattices") {
  GapSearchReport r = extremal_gap_search(4);
  CHECK(r.searched > 0);
  CHECK(r.best_ratio >= 1 - 1e-9);
  CHECK(r.gap > 0);
  // chains and antichains: the antichain on 4 elements has the Boolean lattice B_4
  Poset chain = chain_poset(4);
  CHECK(chain_complex(birkhoff_lattice(chain)).num_facets() == 1);
}
