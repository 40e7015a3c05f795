#ifndef PCX_SAMPLER_HPP
#define PCX_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pcx/complex.hpp"
#include "pcx/numeric.hpp"

namespace pcx {

// One step of the down-up walk: pick a part uniformly, then resample that
// coordinate from the facets agreeing elsewhere, proportionally to weight.
std::size_t downup_step(const PathComplex& X, std::size_t facet, std::mt19937_64& rng);

struct ChainState {
  std::size_t facet = 0;
  long step = 0;
  std::uint64_t seed = 0;
};

class DownUpChain {
 public:
  DownUpChain(const PathComplex& X, std::size_t start, std::uint64_t seed);
  std::size_t step();
  void run(long steps);
  const ChainState& state() const { return state_; }

 private:
  const PathComplex& X_;
  std::mt19937_64 rng_;
  ChainState state_;
};

// Visit counts of a single chain over `steps` steps (the start is not counted).
std::vector<long> run_histogram(const PathComplex& X, std::size_t start, long steps, std::uint64_t seed);

std::size_t max_weight_facet(const PathComplex& X);
std::vector<Rational> stationary(const PathComplex& X);  // mu(facet) = weight / total

// Exact transition matrix in sparse row form (SizeLimitExceeded above cap facets).
using SparseRows = std::vector<std::vector<std::pair<std::size_t, Rational>>>;
SparseRows downup_matrix(const PathComplex& X, std::size_t cap = 2000);
bool is_reversible(const PathComplex& X, const SparseRows& P);

// 1/2-top-link hypothesis: connected and every codim-2 link has lambda2 <= 1/2 + tol.
bool certified_half_toplink(const PathComplex& X, double tol = 1e-9);

// d (d+1)^2 / 4 * log(1 / (eps * mu_start))
double mixing_time_bound(int d, double eps, double mu_start);

struct MixingReport {
  std::size_t facets = 0;
  int d = 0;
  bool degenerate = false;      // a single facet: no non-constant functions
  std::optional<double> gap;    // 1 - lambda2(P), exact-mode eigensolve
  double lambda2 = 0;
  double gap_bound = 0;         // 4 / (d (d+1)^2)
  bool reversible = true;
  bool certified = false;
  bool gap_ok = true;           // asserted only on certified complexes
  std::string mode;             // "exact" or "empirical"
  std::size_t start = 0;
  std::uint64_t seed = 0;
  double eps = 0;
  std::vector<double> tv_curve;  // tv_curve[t] = ||P^t(start, .) - mu||_1
  std::optional<long> t_mix;
  double t_bound = 0;
  bool t_ok = true;
  double noise_band = 0;  // empirical mode: 3 sigma histogram error
};

MixingReport exact_downup_gap(const PathComplex& X, std::size_t cap = 2000);

struct TvOptions {
  std::optional<std::size_t> start;  // default: max-weight facet
  double eps = 0.01;
  std::string mode = "exact";        // "exact" or "empirical"
  int chains = 1000;
  std::uint64_t seed = 1;
  long max_steps = 1000000;
  std::size_t cap = 2000;
};
MixingReport tv_mixing(const PathComplex& X, const TvOptions& opt = {});

struct VarianceReport {
  long trials = 0;
  double alpha = 0;                 // measured lambda2(P_empty) + 1e-9
  bool eig_checked = false;         // needs d >= 2 and alpha < 1
  long local_violations = 0;        // Var <= sum_i i (d+1-i) E Var over codim-1 faces
  long eig_violations = 0;          // Var <= d/(d-1) 1/(1-alpha) E_i E_F Var_F
  long total_variance_violations = 0;
  long factorization_violations = 0;  // Var_F <= E_{lower} Var + E_{upper} Var
  long product_violations = 0;        // mu_F = nu_1 x nu_2
  Rational min_local_slack, min_eig_slack;
  bool pass() const {
    return local_violations + eig_violations + total_variance_violations + factorization_violations +
               product_violations ==
           0;
  }
};
// NotCertified unless certified_half_toplink holds.
VarianceReport variance_decomposition_check(const PathComplex& X, int trials, std::uint64_t seed = 1);

// Searches the distributive lattices of all posets on n elements (n <= 6, uniform
// weights) for the smallest ratio gap / (4 / (d (d+1)^2)).
struct GapSearchReport {
  long searched = 0;
  double best_ratio = 0;
  std::vector<std::string> poset_labels;
  std::vector<std::pair<std::string, std::string>> poset_covers;
  double gap = 0;
  int d = 0;
};
GapSearchReport extremal_gap_search(int n);

struct LowerBoundReport {
  int d = 0;
  Rational eps;
  Face sigma;                        // the named worst link
  double worst_lambda2 = 0;          // lambda2 at sigma
  double expected = 0;               // (1+eps)/(2+eps)
  double max_toplink_lambda2 = 0;    // over all codim-2 links
  double lambda2_empty = 0;          // direct eigensolve
  double lambda2_bound = 0;          // 1 - 4/(eps(1+eps)d)
  Rational phi_S, phi_bound;         // conductance of {F_1..F_d} and 2/(eps(1+eps)d)
  double cheeger_lower = 0;          // 1 - 2 phi(S)
  Rational fact_lhs, fact_rhs;       // sum min(i,d-i)(1+eps)^|d/2-i| and (2/eps) sum (1+eps)^(d/2-i)
  // Bounds from the same argument with sum_i i x^i <= x/(1-x)^2, x = 1/(1+eps):
  // phi(S) <= 2a^{d/2} / (eps d (a^{d/2} - 1)) with a = 1+eps, and lambda2 >= 1 - 2 phi.
  Rational phi_bound_corrected;
  double lambda2_bound_corrected = 0;
  std::optional<bool> path_ok;       // unset when the exhaustive check was skipped
  std::vector<Rational> chain_weights;  // weight of tau(i), i = 0..d, over the weight of tau(d/2)
  bool weights_ok = false;
  bool worst_ok = false;             // sigma and the top-link maximum equal (1+eps)/(2+eps)
  bool lambda2_ok = false;           // lambda2_empty >= lambda2_bound
  bool phi_ok = false;               // phi_S <= phi_bound
  bool fact_ok = false;              // fact_lhs <= fact_rhs
  bool corrected_ok = false;         // phi_S <= phi_bound_corrected, lambda2_empty >= both lower bounds
  bool pass() const { return path_ok.value_or(true) && weights_ok && worst_ok && lambda2_ok && phi_ok && fact_ok; }
};
struct LowerBoundInstance {
  PathComplex X;
  LowerBoundReport report;
};
// OddDimension unless d is even; eps > 0.  check_path runs the exhaustive
// path-property verification (all faces, slow for d >= 14).
LowerBoundInstance lowerbound_instance(int d, const Rational& eps, bool check_path = true);

}  // namespace pcx

#endif
