#ifndef PCX_SPECTRAL_HPP
#define PCX_SPECTRAL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcx/coloring.hpp"
#include "pcx/complex.hpp"
#include "pcx/numeric.hpp"

namespace pcx {

using RMatrix = std::vector<std::vector<Rational>>;

Eigen::MatrixXd to_eigen(const RMatrix& M);

// Weighted 1-skeleton of a link: A(F,G) = P[F,G in sigma | tau in sigma].
// The exact matrix is filled only when requested; the double copy always is.
struct WalkMatrix {
  Face tau;
  std::vector<int> vertices;  // vertex ids of the complex the walk was built from
  std::vector<int> parts;     // 0-based part of each vertex
  RMatrix A;                  // exact adjacency (empty in float mode)
  std::vector<Rational> degree;
  Eigen::MatrixXd Ad;
  Eigen::VectorXd deg;

  int size() const { return static_cast<int>(vertices.size()); }
  Eigen::MatrixXd P() const;          // D^{-1} A
  Eigen::MatrixXd normalized() const;  // D^{-1/2} A D^{-1/2}
};

WalkMatrix walk_matrix(const PathComplex& X, const Face& tau, bool exact = true);
// Walk of an arbitrary weighted graph (symmetric, non-negative, no isolated vertex).
WalkMatrix walk_from_adjacency(const RMatrix& A);
WalkMatrix walk_from_adjacency(const Eigen::MatrixXd& A);

std::vector<double> walk_spectrum(const WalkMatrix& W);  // descending
double lambda2(const WalkMatrix& W);

struct EigenCount {
  int count = 0;
  std::string method;  // "exact" or "float"
  double margin = 0;   // smallest |eigenvalue| (float mode) or 0 when exact
  Rational det;        // exact mode only
};

// Characteristic polynomial det(xI - M), lowest degree first.
std::vector<Rational> char_poly(const RMatrix& M);
// Number of positive eigenvalues of a symmetric matrix.  exact=true uses the
// characteristic polynomial and Descartes' rule (matrices up to `cap`);
// beyond that, or with exact=false, counts eigenvalues above tol.
EigenCount positive_eigenvalue_count(const RMatrix& M, bool exact = true, int cap = 16, double tol = 1e-9);
EigenCount positive_eigenvalue_count(const Eigen::MatrixXd& M, double tol = 1e-9);

struct LinkRecord {
  Face face;
  int codim = 0;
  double lambda2 = 0;
  double bound = 0;
  bool pass = true;
};

struct SpectralReport {
  bool pass = true;
  long checked = 0;
  double max_lambda2 = -1;
  std::map<int, double> max_by_codim;  // codim -> max lambda2
  std::optional<LinkRecord> worst;
  std::vector<LinkRecord> links;        // filled when keep_links is set
};

// lambda2 of every link of codim >= 2 (or exactly 2 with top_link_only)
// compared against alpha + tol.
SpectralReport expansion_profile(const PathComplex& X, double alpha, bool top_link_only = false,
                                 double tol = 1e-9, bool keep_links = false);

struct QuadraticRecord {
  Face face;
  int positive_count = 0;
  std::string method;
  double margin = 0;
  RMatrix matrix;
};

struct ColoredReport {
  bool pass = true;
  long checked = 0;
  long skipped = 0;  // codim-2 faces whose missing parts are not adjacent
  int max_count = 0;
  std::optional<QuadraticRecord> witness;  // first failing link
  std::vector<QuadraticRecord> records;     // filled when keep_records is set
};

// Matrix A - D for a codim-2 face sigma missing adjacent parts i, i+1:
// D(F,F) = sum_G beta_F^L(G) A(F,G) on part i, D(G,G) = sum_F alpha_K^G(F) A(F,G)
// on part i+1, with K, L the neighbours of the gap in sigma (or 0^, 1^).
// A is built from raw facet weights.
RMatrix colored_quadratic(const PathComplex& X, const AlphaBeta& ab, const Face& sigma,
                          std::vector<int>* vertices = nullptr);
ColoredReport colored_toplink_check(const PathComplex& X, const AlphaBeta& ab, int exact_cap = 16,
                                    bool keep_records = false);

struct MijReport {
  int i = 0, j = 0;
  double lambda2 = 0;          // second eigenvalue of P_{i,j}
  double bound = 0;            // sqrt(m_i m_j)
  Rational m_i, m_j;           // diagonal entries of M on T_i and T_j
  int positive_count = 0;      // positive eigenvalues of A - D M
  std::string method;
  bool pass = true;
};

// 1 <= i < j <= d (IndexOutOfRange otherwise).  s = 1 gives the integer entries.
MijReport bipartite_Mij_check(const PathComplex& X, int i, int j, const Rational& s = 1, int exact_cap = 16,
                              double tol = 1e-9);

struct DPartiteReport {
  double bound = 0;
  double lambda2 = 0;
  bool pass = true;
};

// m[i][j] (0-based, i != j) is the diagonal entry on T_i in the pair (i, j).
std::vector<std::vector<Rational>> mij_table(int d, const Rational& s = 1);
DPartiteReport dpartite_bound(const PathComplex& X, const std::vector<std::vector<Rational>>& m, double tol = 1e-9);

// Trickle-down formulas for a link of codimension k >= 2.
double oppenheim_bound(int d, int k, double eps);
double main_s_bound(int k, double s);          // 2s (s^{(k-1)/2}-1) / ((k-1)(s-1)(s^{(k+1)/2}+1))
double main_s_bound_printed(int k, double s);  // same without the leading factor s
double main_s_table_bound(int k, const Rational& s);  // max_i E_{j != i} m_i(j) for dimension k
double concrete_bound(int k, double eps);      // (1 - 2 eps) / ((k-1) sqrt(eps))

struct CheegerReport {
  double phi_S = 0;
  std::optional<double> phi_G;  // exhaustive, at most 20 vertices
  double lambda2 = 0;
  double lower = 0, upper = 0;  // (1 - lambda2)/2 and sqrt(2 (1 - lambda2))
  bool sandwich = true;
};

Rational cut_conductance(const WalkMatrix& W, const std::vector<int>& S);  // exact, needs W.A
double cut_conductance_double(const WalkMatrix& W, const std::vector<int>& S);
CheegerReport conductance_cheeger(const WalkMatrix& W, const std::vector<int>& S, bool exhaustive = true,
                                  double tol = 1e-9);

struct BipartiteGraph {
  int m = 0, n = 0;                 // |X|, |Y|
  std::vector<std::pair<int, int>> edges;  // (x, y)
};
// Two-colours a graph on n vertices; NotBipartite on an odd cycle.
BipartiteGraph bipartite_from_edges(int n, const std::vector<std::pair<int, int>>& edges);
RMatrix incidence_adjacency(const BipartiteGraph& G);  // X first, then Y

struct UniqueNeighborReport {
  bool unique_neighbor = false;
  bool predicted_one_positive = false;
  int certified_count = 0;
  std::string method;
  bool agrees = true;  // meaningful when unique_neighbor holds
};
UniqueNeighborReport unique_neighbor_classify(const BipartiteGraph& G, int exact_cap = 18);

struct SweepReport {
  long graphs = 0;
  long mismatches = 0;
  std::optional<BipartiteGraph> first_mismatch;
};
// Every bipartite graph with |X| <= max_m, |Y| <= max_n, no isolated vertex and the
// unique-neighbour property on both sides (rows listed in non-increasing order).
SweepReport unique_neighbor_sweep(int max_m, int max_n, int exact_cap = 18);

}  // namespace pcx

#endif
