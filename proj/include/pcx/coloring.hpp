#ifndef PCX_COLORING_HPP
#define PCX_COLORING_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pcx/complex.hpp"
#include "pcx/numeric.hpp"

namespace pcx {

// Vertex ids standing for the boundary elements 0^ and 1^.
constexpr int BOTTOM = -1;
constexpr int TOP = -2;

// Coloring phi on the vertices of a path complex plus 0^ and 1^.
class Coloring {
 public:
  enum class Kind { trivial, cardinality, field_sum, spiked, custom };

  static Coloring trivial();       // phi(F) = type of F, 0^ -> bottom type, 1^ -> top type
  static Coloring cardinality();   // phi(F) = |F| (needs flats)
  static Coloring field_sum(std::vector<Rational> point_weights);  // sum of point weights over F
  static Coloring spiked(Mask A, Rational M);                       // [F meets A] * M + |F|
  static Coloring custom(std::map<std::string, Rational> by_label, Rational bottom, Rational top);

  Kind kind() const { return kind_; }
  std::string name() const;
  Rational value(const PathComplex& X, int v) const;
  Rational diff(const PathComplex& X, int K, int F) const { return value(X, F) - value(X, K); }
  // Throws NotOrderPreserving unless phi strictly increases along every facet
  // (including 0^ below and 1^ above).
  void check_order_preserving(const PathComplex& X) const;

 private:
  Kind kind_ = Kind::trivial;
  std::vector<Rational> point_weights_;
  Mask spike_ = 0;
  Rational M_ = 0;
  std::map<std::string, Rational> by_label_;
  Rational bottom_ = 0, top_ = 0;
};

// The alpha/beta maps alpha_K^L(F), beta_K^L(F) for K < F < L, with K or L
// allowed to be BOTTOM / TOP.  Either derived from a coloring
//   alpha = phi(K,F)/phi(K,L),  beta = phi(F,L)/phi(K,L)
// or from the s-analog rank system
//   alpha = [r(K,F)]_s/[r(K,L)]_s,  beta = [r(F,L)]_s/[r(K,L)]_s.
class AlphaBeta {
 public:
  static AlphaBeta from_coloring(const PathComplex& X, const Coloring& c);
  static AlphaBeta s_rank(const PathComplex& X, const Rational& s);  // InvalidS unless s >= 1

  Rational alpha(int K, int L, int F) const;
  Rational beta(int K, int L, int F) const;
  int type(int v) const;  // type index, BOTTOM/TOP map to the boundary types
  bool from_coloring() const { return !s_.has_value(); }
  const std::optional<Rational>& s() const { return s_; }
  const Rational& phi(int v) const;

  // Replaces alpha_K^L(F) by a fixed value; used to exercise failure reporting.
  void override_alpha(int K, int L, int F, Rational value) { alpha_override_[{K, L, F}] = std::move(value); }

 private:
  std::vector<Rational> phi_;
  Rational phi_bottom_, phi_top_;
  std::vector<int> type_;
  int bottom_type_ = 0, top_type_ = 0;
  std::optional<Rational> s_;
  std::vector<Rational> sk_;  // [k]_s
  std::map<std::tuple<int, int, int>, Rational> alpha_override_;
};

}  // namespace pcx

#endif
