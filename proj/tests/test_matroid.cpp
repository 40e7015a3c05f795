#include "doctest.h"
#include "pcx/matroid.hpp"

using namespace pcx;

namespace {

Matroid K(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Matroid::graphic(n, e);
}

// Oracle: Whitney's subset expansion chi(x) = sum_S (-1)^|S| x^{r - rk S},
// divided by (x - 1); returned highest degree first.  Loops are deleted first,
// since the flat lattice starts at the loop set.
std::vector<BigInt> whitney_reduced(const Matroid& m) {
  int r = m.rank();
  std::vector<BigInt> chi(r + 1, 0);  // chi[j] = coefficient of x^j
  for (Mask s = 0; s < (Mask(1) << m.ground_size()); ++s)
    if (!(s & m.loops())) chi[r - m.rank_of(s)] += (popcount(s) % 2 ? -1 : 1);
  // synthetic division by (x - 1)
  std::vector<BigInt> q(r, 0);
  BigInt carry = 0;
  for (int j = r; j >= 1; --j) {
    carry = chi[j] + carry;
    q[j - 1] = carry;
  }
  CHECK(chi[0] + carry == 0);  // remainder
  return std::vector<BigInt>(q.rbegin(), q.rend());
}

}  // namespace

TEST_CASE("construct_matroid") {
  Matroid k4 = K(4);
  CHECK(k4.rank() == 3);
  CHECK(k4.ground_size() == 6);
  CHECK(k4.loops() == 0);
  Matroid u24 = Matroid::uniform(2, 4);
  CHECK(u24.rank() == 2);
  CHECK_THROWS_WITH_AS(Matroid::from_bases(4, {0b0011, 0b1100}), doctest::Contains("ExchangeAxiomViolation"), Error);
  CHECK_THROWS_WITH_AS(Matroid::from_bases(4, {}), doctest::Contains("EmptyBasesList"), Error);
  Matroid loopy = Matroid::graphic(2, {{0, 0}, {0, 1}});
  CHECK(loopy.loops() == 1);
  CHECK_THROWS_WITH_AS(reduced_char_poly(loopy, 0), doctest::Contains("LoopElement"), Error);
}

TEST_CASE("flat lattices") {
  RankedLattice k3 = flat_lattice(K(3));
  CHECK(k3.size() == 5);
  CHECK(k3.rank() == 2);
  RankedLattice k4 = flat_lattice(K(4));
  CHECK(k4.flats_of_rank(0).size() == 1);
  CHECK(k4.flats_of_rank(1).size() == 6);
  CHECK(k4.flats_of_rank(2).size() == 7);
  CHECK(k4.flats_of_rank(3).size() == 1);
  CHECK(flat_lattice(Matroid::uniform(1, 1)).size() == 2);
  auto c = classify_lattice(k4);
  CHECK_FALSE(c.modular);  // geometric lattices of K4 are semimodular only
  // semimodular inequality on all pairs
  for (int a = 0; a < k4.size(); ++a)
    for (int b = 0; b < k4.size(); ++b)
      CHECK(k4.rank(a) + k4.rank(b) >= k4.rank(k4.join(a, b)) + k4.rank(k4.meet(a, b)));
}

TEST_CASE("reduced characteristic polynomial and HRW sequence") {
  CHECK(reduced_char_poly(K(3), 0) == std::vector<BigInt>{1, -2});
  for (int i = 0; i < 6; ++i) CHECK(reduced_char_poly(K(4), i) == std::vector<BigInt>{1, -5, 6});
  CHECK(reduced_char_poly(Matroid::uniform(1, 4), 2) == std::vector<BigInt>{1});
  CHECK(hrw_sequence(K(4)) == std::vector<Rational>{1, 5, 6});
  CHECK(hrw_sequence(K(3)) == std::vector<Rational>{1, 2});
  CHECK(hrw_sequence(Matroid::uniform(1, 3)) == std::vector<Rational>{1});
  CHECK(log_concave(hrw_sequence(K(4))));

  std::vector<Matroid> ms{K(3), K(4), K(5), Matroid::uniform(2, 4), Matroid::uniform(3, 6),
                          Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {0, 1}}),
                          Matroid::graphic(3, {{0, 1}, {1, 2}, {1, 1}})};
  for (const auto& m : ms) {
    auto oracle = whitney_reduced(m);
    auto c = hrw_sequence(m);
    for (int i = 0; i < m.ground_size(); ++i) {
      if ((m.loops() >> i) & 1) continue;
      auto r = reduced_char_poly(m, i);
      CHECK(r == oracle);
      REQUIRE(r.size() == c.size());
      for (std::size_t k = 0; k < r.size(); ++k) CHECK(c[k] == Rational(abs(r[k])));
    }
    CHECK(log_concave(c));
  }
}

TEST_CASE("Weisner recursion, partition identities and the top-link identity") {
  for (const auto& m : {K(3), K(4), K(5), Matroid::uniform(3, 5), Matroid::graphic(3, {{0, 1}, {1, 2}, {1, 1}})}) {
    RankedLattice L = flat_lattice(m);
    auto w = weisner_check(L);
    CHECK_MESSAGE(w.ok, w.failure);
    auto p = partition_identities(L);
    CHECK_MESSAGE(p.ok, p.failure);
    auto t = matroid_toplink_identity(L);
    CHECK_MESSAGE(t.ok, t.failure);
  }
  CHECK(matroid_toplink_identity(flat_lattice(K(4))).checked > 0);
}

TEST_CASE("Weisner recursion is specific to geometric lattices") {
  // Birkhoff lattice of a 2-chain plus a free element is not a matroid lattice
  RankedLattice L = birkhoff_lattice(Poset::build({"a", "b", "c"}, {{"b", "c"}}));
  CHECK_FALSE(partition_identities(L).ok);
}
