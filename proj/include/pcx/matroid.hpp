#ifndef PCX_MATROID_HPP
#define PCX_MATROID_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcx/numeric.hpp"
#include "pcx/order.hpp"

namespace pcx {

// Matroid on ground set {0,...,n-1}, n <= 64, given by bases or by a multigraph.
class Matroid {
 public:
  static Matroid from_bases(int n, std::vector<Mask> bases);
  static Matroid graphic(int vertices, const std::vector<std::pair<int, int>>& edges);
  static Matroid uniform(int r, int n);

  int ground_size() const { return n_; }
  int rank() const { return r_; }
  int rank_of(Mask s) const;
  Mask closure(Mask s) const;
  Mask loops() const { return closure(0); }
  Mask ground() const { return n_ == 64 ? ~Mask(0) : ((Mask(1) << n_) - 1); }
  bool is_graphic() const { return graphic_; }
  const std::vector<Mask>& bases() const { return bases_; }

 private:
  int n_ = 0, r_ = 0;
  bool graphic_ = false;
  int vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<Mask> bases_;
};

RankedLattice flat_lattice(const Matroid& m, int cap = 12);

// Coefficients of the reduced characteristic polynomial, highest degree first:
// entry k is the coefficient of x^{d-k}, summed over rank-k flats avoiding i.
std::vector<BigInt> reduced_char_poly(const Matroid& m, int i, int cap = 12);
// c_k = sum over rank-k flats F of (n-|F|)/(n-n0) |mu(0,F)|, k = 0..d.
std::vector<Rational> hrw_sequence(const Matroid& m, int cap = 12);

struct MatroidCheck {
  bool ok = true;
  std::string failure;  // empty when ok
  long checked = 0;
};

// Recomputes mu(K,L) via the cardinality-weighted recursion over lower covers of L
// and compares with the plain Mobius recursion.
MatroidCheck weisner_check(const RankedLattice& flats);
// Partition property at every flat plus the two telescoping identities
// (upward chains sum to 1, downward chains sum to |mu(0,F)|).
MatroidCheck partition_identities(const RankedLattice& flats);

// For each pair K < L of flats with rk(L) = rk(K) + 3, the matrix -D + A on the
// atoms and coatoms of [K, L] (A = cover adjacency, D from the cardinality
// coloring) is compared with J - sum_G v_G v_G^T.
struct ToplinkBlock {
  int K = 0, L = 0;
  std::vector<int> lower, upper;             // atoms (rank k) then coatoms (rank k+1)
  std::vector<std::vector<Rational>> matrix;  // -D + A, order lower then upper
};
std::vector<ToplinkBlock> matroid_toplink_blocks(const RankedLattice& flats);
MatroidCheck matroid_toplink_identity(const RankedLattice& flats);

}  // namespace pcx

#endif
