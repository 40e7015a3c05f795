#ifndef PCX_LORENTZIAN_HPP
#define PCX_LORENTZIAN_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcx/coloring.hpp"
#include "pcx/complex.hpp"
#include "pcx/numeric.hpp"
#include "pcx/spectral.hpp"

namespace pcx {

// Vectors over X(1): one entry per vertex id of the complex.  Entries outside
// the link under consideration are ignored.
using RVec = std::vector<Rational>;

// First-order dual number, used to differentiate p_sigma exactly.
struct Dual {
  Rational v, e;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : f) h = (h ^ static_cast<std::size_t>(v + 2)) * 1099511628211ULL;
    return h;
  }
};

// Recursive polynomials p_sigma of a path complex with the pi maps generated by
// an alpha/beta system.  Raw facet weights play the role of mu.
class PolyContext {
 public:
  PolyContext(const PathComplex& X, AlphaBeta ab, std::size_t face_cap = 2000000);

  const PathComplex& complex() const { return X_; }
  const AlphaBeta& system() const { return ab_; }

  // X_sigma(1), sorted by part then id.
  const std::vector<int>& link_vertices(const Face& sigma) const;
  // Neighbours of F inside sigma by type (BOTTOM / TOP when absent).
  std::pair<int, int> neighbours(const Face& sigma, int F) const;
  bool comparable(int a, int b) const;  // a, b lie on a common facet (BOTTOM/TOP compare with all)
  std::size_t face_count() const { return face_count_; }

  // pi_{sigma+F}; NotInLink unless F in X_sigma(1).
  RVec pi_apply(const Face& sigma, int F, const RVec& t) const;
  // pi_{sigma+tau} composed in the given order of tau's vertices.
  RVec pi_face(const Face& sigma, const std::vector<int>& tau_order, const RVec& t) const;
  // pi_sigma = pi_{empty+sigma}, in increasing part order.
  RVec pi_sigma(const Face& sigma, const RVec& t) const;

  Rational eval_p(const Face& sigma, const RVec& t);
  Dual eval_p_dual(const Face& sigma, const std::vector<Dual>& t);
  Rational directional_derivative(const Face& sigma, const RVec& t, const RVec& v);  // via dual numbers
  // Gradient by the identity d/dt_F p_sigma(t) = p_{sigma+F}(pi_{sigma+F}(t)), over X_sigma(1).
  RVec grad_p(const Face& sigma, const RVec& t);
  // q(t) = p_sigma(pi_sigma(t)) for t over X(1).
  Rational eval_q(const Face& sigma, const RVec& t);

  void clear_memo();

 private:
  // Per face: the points already evaluated there and their values.
  template <class S>
  using Memo = std::unordered_map<Face, std::vector<std::pair<std::vector<S>, S>>, FaceHash>;

  template <class S>
  S eval_rec(const Face& sigma, const std::vector<S>& t, Memo<S>& memo);
  template <class S>
  std::vector<S> pi_apply_t(const Face& sigma, int F, const std::vector<S>& t) const;

  const PathComplex& X_;
  AlphaBeta ab_;
  std::size_t face_count_ = 0;
  std::vector<std::vector<char>> comparable_;
  mutable std::unordered_map<Face, std::vector<int>, FaceHash> link_cache_;
  mutable std::unordered_map<Face, Rational, FaceHash> weight_cache_;
  Memo<Rational> memo_;
  Memo<Dual> memo_dual_;
};

// alpha_K^L and beta_K^L as vectors over X(1), zero outside (K, L).
RVec alpha_vector(const PolyContext& ctx, int K = BOTTOM, int L = TOP);
RVec beta_vector(const PolyContext& ctx, int K = BOTTOM, int L = TOP);

// Hessian of the quadratic p_sigma for a codim-2 face.  `matrix` is the A+D
// formula; `by_evaluation` comes from evaluations of p_sigma at basis vectors.
struct HessianReport {
  std::vector<int> vertices;
  RMatrix matrix;
  RMatrix by_evaluation;
  bool agree = true;
};
HessianReport hessian_quadratic(PolyContext& ctx, const Face& sigma);

struct ConeVector {
  Face sigma;
  RVec v;
  bool checked = false;
  bool positive = false;
  bool fallback_s1 = false;  // s-systems: the s = 1 point, which lies in every C^s
};
// Block vector alpha_{F_i}^{F_{i+1}} * beta_{F_i}^{F_{i+1}} on X_sigma(1).
ConeVector cone_point(const PolyContext& ctx, const Face& sigma);
// pi_{sigma+tau}(v) > 0 (or >= 0) on X_{sigma+tau}(1) for every face tau of the link.
bool is_pi_nonnegative(const PolyContext& ctx, const Face& sigma, const RVec& v, bool strict,
                       std::size_t face_cap = 2000000);

// mu_{alpha,beta}(sigma) for contiguous sigma (NotContiguous otherwise).
Rational mu_alpha_beta(const PolyContext& ctx, const Face& sigma);
// d^a/dx^a d^b/dy^b q(t + x u + y w) at 0, exact (q = p_sigma o pi_sigma).
Rational mixed_derivative(PolyContext& ctx, const Face& sigma, const RVec& t, const RVec& u, int a, const RVec& w,
                          int b);
// Full polarization of q along the given directions (count = degree of p_sigma).
Rational polarization(PolyContext& ctx, const Face& sigma, const std::vector<RVec>& dirs);

struct SequenceReport {
  int d = 0;
  std::vector<Rational> c;                       // c_0..c_d
  std::optional<std::vector<Rational>> closed;   // closed form (coloring systems only)
  std::vector<Rational> via_beta;                // index k: sum_{F in T_k} beta(F) mu_ab({F}), k = 1..d
  std::vector<Rational> via_alpha;               // index k: sum_{G in T_{k+1}} alpha(G) mu_ab({G}), k = 0..d-1
  bool expressions_agree = true;
  bool closed_agrees = true;
  bool polynomial_identity = true;  // d! p(beta x + alpha) = sum binom(d,k) c_k x^k
  bool certified = false;           // colored top-link check passed
  bool log_concave = true;
  std::optional<int> fails_at;
};
// c_k with raw facet weights.  poly_check evaluates p_empty (needs PolyContext).
SequenceReport ck_sequence(const PathComplex& X, const AlphaBeta& ab, bool poly_check = true);
SequenceReport ck_sequence(const PathComplex& X, const Coloring& c, bool poly_check = true);

// phi(a, b) for a < b, and the order-preserving psi on vertices.
struct EllSystem {
  std::function<Rational(const Rational&, const Rational&)> phi;
  std::function<Rational(int)> psi;  // vertex id, BOTTOM or TOP
  bool integral_m = false;           // m must be an integer (s-analog phi)
};
// phi(a,b) = b - a with psi = coloring value, or [b-a]_s with psi = type.
EllSystem ell_system(const PolyContext& ctx);
// Throws Phi2ConditionFailed unless the phi2 identity holds on all 4-tuples of psi values.
void check_phi2(const PolyContext& ctx, const EllSystem& E);
RVec ell_vector(const PolyContext& ctx, const EllSystem& E, const Rational& m, int K = BOTTOM, int L = TOP);
// C_phi(a_1..a_m) for the occupied 1-based parts a of sigma.
Rational c_phi(const EllSystem& E, const std::vector<int>& occupied, int d);

struct IdentityReport {
  std::map<std::string, long> checked;
  std::map<std::string, long> violations;
  std::vector<std::string> witnesses;  // first few violations
  bool pass() const;
  void merge(const IdentityReport& o);
  void record(const std::string& what, bool ok, const std::string& witness = "");
};

IdentityReport check_alpha_beta_identities(const PolyContext& ctx);
IdentityReport check_commutativity(const PolyContext& ctx, std::size_t max_faces = 0);
struct PointOptions {
  int points = 10;
  std::uint64_t seed = 1;
  std::size_t max_faces = 200;  // sampled faces for per-face checks (0 = all)
  std::size_t hessian_entries = 40;  // sampled entries per (i, j) in the ell Hessian support check
};
IdentityReport check_derivatives(PolyContext& ctx, const PointOptions& opt = {});
IdentityReport check_hessians(PolyContext& ctx, std::size_t max_faces = 0);
IdentityReport check_mixed_derivatives(PolyContext& ctx, const PointOptions& opt = {});
IdentityReport check_ck_expressions(PolyContext& ctx);
IdentityReport check_ell_relations(PolyContext& ctx, std::size_t max_faces = 0);
// Lemma on ell mixed derivatives and the Hessian support claim; needs psi(F) = part index.
IdentityReport check_ell_mixed(PolyContext& ctx, const PointOptions& opt = {});
IdentityReport check_cones(PolyContext& ctx);
// Vectors passing the pi test at s also pass at each larger s.
IdentityReport check_cone_monotonicity(const PathComplex& X, const std::vector<Rational>& s_values, int samples,
                                       std::uint64_t seed);
IdentityReport identity_suite(PolyContext& ctx, const PointOptions& opt = {});

struct Certificate {
  bool connected = false;
  bool cone_ok = false;
  ColoredReport quadratics;
  bool granted = false;
  std::string verdict;  // "LORENTZIAN" or "NOT_CERTIFIED"
};
Certificate lorentzian_certificate(const PathComplex& X, const AlphaBeta& ab, int exact_cap = 16);

}  // namespace pcx

#endif
