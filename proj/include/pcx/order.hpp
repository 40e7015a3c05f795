#ifndef PCX_ORDER_HPP
#define PCX_ORDER_HPP

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pcx/numeric.hpp"

namespace pcx {

struct Caps {
  int poset_elements = 12;       // linear extension enumeration
  std::size_t lattice_flats = 1000000;
  std::size_t facets = 200000;   // maximal chains materialized
  int matroid_ground = 12;
};

// Finite poset on at most 64 elements.  Elements are stored sorted by label so
// every enumeration below is deterministic.
class Poset {
 public:
  Poset() = default;
  static Poset build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& covers,
                     std::vector<std::string>* warnings = nullptr);
  // below[b] = mask of elements strictly below b (need not be closed).
  static Poset from_relation(const std::vector<std::string>& labels, const std::vector<Mask>& below);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  int index(const std::string& label) const;
  Mask below(int b) const { return below_[b]; }
  Mask above(int a) const;
  bool less(int a, int b) const { return (below_[b] >> a) & 1; }
  bool comparable(int a, int b) const { return a == b || less(a, b) || less(b, a); }
  bool covered_by(int a, int b) const;  // a < b with nothing in between
  std::vector<std::pair<int, int>> cover_pairs() const;
  Mask all() const { return size() == 64 ? ~Mask(0) : ((Mask(1) << size()) - 1); }
  Mask mask_of(const std::vector<std::string>& labels) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Mask> below_;
};

// Ranked lattice stored as a closure system: each flat is a subset of a ground
// set of at most 64 points, flats are closed under intersection, and the order
// is inclusion.  Birkhoff lattices (ground = poset elements), matroid flats
// (ground = matroid elements) and subspace lattices (ground = points) all fit.
class RankedLattice {
 public:
  RankedLattice() = default;
  static RankedLattice from_flats(int ground, std::vector<Mask> flats,
                                  std::vector<std::string> ground_labels = {},
                                  std::size_t cap = 1000000);

  int size() const { return static_cast<int>(flats_.size()); }
  int ground_size() const { return ground_; }
  const std::vector<std::string>& ground_labels() const { return ground_labels_; }
  Mask flat(int i) const { return flats_[i]; }
  int rank(int i) const { return rank_[i]; }
  int rank() const { return rank_[top_]; }
  // false when some cover F < G has rk(G) != rk(F) + 1 (ranks are longest chains)
  bool graded() const { return graded_; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  bool leq(int a, int b) const { return subset(flats_[a], flats_[b]); }
  int find(Mask m) const;
  int meet(int a, int b) const;
  int join(int a, int b) const;
  const std::vector<int>& upper_covers(int i) const { return up_[i]; }
  const std::vector<int>& lower_covers(int i) const { return down_[i]; }
  std::vector<int> flats_of_rank(int r) const;
  std::string flat_label(int i) const;
  // Enumerates maximal chains as lists of proper flats (ranks 1..rank-1).
  std::vector<std::vector<int>> maximal_chains(std::size_t cap = 200000) const;
  BigInt count_maximal_chains() const;

 private:
  int ground_ = 0;
  std::vector<std::string> ground_labels_;
  std::vector<Mask> flats_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> up_, down_;
  std::map<Mask, int> index_;
  int bottom_ = 0, top_ = 0;
  bool graded_ = true;
};

struct LatticeClass {
  bool distributive = false;
  bool modular = false;
  bool typical_modular = false;
  // first rank-3 interval violating typicality, as (bottom, top) flat ids
  std::optional<std::pair<int, int>> atypical_interval;
};

struct PConsistency {
  bool consistent = true;
  std::optional<std::array<int, 3>> witness;  // (a, b, c): b covered by c, a,c in A, b not in A
};

struct LminReport {
  std::vector<Rational> distribution;  // index k-1 holds P[lmin = k]
  std::optional<int> fails_at;         // first k with P[k]^2 < P[k-1] P[k+1]
  BigInt extensions;
};

using LinearExtension = std::vector<int>;  // ell[element] in 1..n

RankedLattice birkhoff_lattice(const Poset& p, std::size_t cap = 1000000);
std::vector<LinearExtension> linear_extensions(const Poset& p, int cap = 12,
                                              std::size_t max_count = 5000000);
// Element orders (ell^{-1}) in the same order as linear_extensions.
std::vector<std::vector<int>> extension_sequences(const Poset& p, int cap = 12,
                                                 std::size_t max_count = 5000000);

// Full Mobius table; entry [F][G] is meaningful when F <= G (zero otherwise).
std::vector<std::vector<BigInt>> moebius(const RankedLattice& L);
std::vector<BigInt> moebius_from(const RankedLattice& L, int F);

RankedLattice interval_sublattice(const RankedLattice& L, int F, int G);
LatticeClass classify_lattice(const RankedLattice& L, std::size_t cap = 600);

bool is_order_reversing(const Poset& p, const std::map<std::string, Rational>& psi);
PConsistency p_consistency(const Poset& p, Mask A);
inline bool is_p_consistent(const Poset& p, Mask A) { return p_consistency(p, A).consistent; }
LminReport lmin_distribution(const Poset& p, Mask A, int cap = 12);

// Appends a chain of N new elements below and N above every element of p.
Poset append_chains(const Poset& p, int N);

// All posets on n elements up to isomorphism (n <= 6), labelled a, b, c, ...
std::vector<Poset> all_posets(int n);
Poset random_poset(int n, double edge_prob, std::mt19937_64& rng);
Poset chain_poset(int n);
Poset antichain_poset(int n);

RankedLattice boolean_lattice(int n);
RankedLattice chain_lattice(int rank);
// Lattice of subspaces of F_q^n (q prime), flats as sets of projective points.
RankedLattice subspace_lattice(int n, int q);

}  // namespace pcx

#endif
