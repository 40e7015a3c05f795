#include "doctest.h"
#include "pcx/order.hpp"

#include <algorithm>
#include <numeric>

using namespace pcx;

namespace {

Poset chan_pak() { return Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}}); }

// Oracle: all permutations filtered by the order relation.
std::size_t brute_extensions(const Poset& p) {
  std::vector<int> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < p.size() && ok; ++i)
      for (int j = i + 1; j < p.size() && ok; ++j)
        if (p.less(perm[j], perm[i])) ok = false;
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Oracle: subsets closed downward, by direct test on every subset.
std::size_t brute_downsets(const Poset& p) {
  std::size_t count = 0;
  for (Mask s = 0; s < (Mask(1) << p.size()); ++s) {
    bool ok = true;
    for (int b = 0; b < p.size(); ++b)
      if ((s >> b) & 1)
        for (int a = 0; a < p.size(); ++a)
          if (p.less(a, b) && !((s >> a) & 1)) ok = false;
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("build_poset: closure, errors and warnings") {
  Poset p = chan_pak();
  CHECK(p.size() == 4);
  int a = p.index("a"), b = p.index("b"), d = p.index("d");
  CHECK(p.less(b, d));
  for (int x = 0; x < 4; ++x)
    if (x != a) CHECK_FALSE(p.comparable(a, x));
  CHECK(Poset::build({"x"}, {}).size() == 1);
  CHECK_THROWS_WITH_AS(Poset::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}), doctest::Contains("CycleDetected"), Error);
  CHECK_THROWS_WITH_AS(Poset::build({"a", "b"}, {{"a", "z"}}), doctest::Contains("UnknownLabel"), Error);
  CHECK_THROWS_WITH_AS(Poset::build({"a", "a"}, {}), doctest::Contains("DuplicateLabel"), Error);
  std::vector<std::string> warn;
  Poset q = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, &warn);
  CHECK(warn.size() == 1);
  CHECK(q.cover_pairs().size() == 2);
}

TEST_CASE("birkhoff_lattice of the four-element example") {
  Poset p = chan_pak();
  RankedLattice L = birkhoff_lattice(p);
  CHECK(L.size() == 8);
  CHECK(L.size() == static_cast<int>(brute_downsets(p)));
  CHECK(L.rank() == 4);
  CHECK(L.graded());
  CHECK(L.maximal_chains().size() == 4);
  CHECK(L.count_maximal_chains() == 4);
  auto c = classify_lattice(L);
  CHECK(c.distributive);
  CHECK(c.modular);
  // chain and antichain
  CHECK(chain_lattice(3).size() == 4);
  CHECK(boolean_lattice(4).size() == 16);
}

TEST_CASE("linear extensions agree with brute force and maximal chains") {
  Poset p = chan_pak();
  auto ext = linear_extensions(p);
  CHECK(ext.size() == 4);
  CHECK(std::is_sorted(ext.begin(), ext.end()));
  CHECK(linear_extensions(chain_poset(5)).size() == 1);
  CHECK(linear_extensions(antichain_poset(3)).size() == 6);
  for (int n = 1; n <= 5; ++n)
    for (const auto& q : all_posets(n)) {
      auto e = linear_extensions(q);
      CHECK(e.size() == brute_extensions(q));
      CHECK(birkhoff_lattice(q).count_maximal_chains() == static_cast<unsigned long>(e.size()));
      CHECK(birkhoff_lattice(q).size() == static_cast<int>(brute_downsets(q)));
      for (const auto& ell : e)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (q.less(x, y)) CHECK(ell[x] < ell[y]);
    }
  CHECK_THROWS_WITH_AS(linear_extensions(antichain_poset(13)), doctest::Contains("SizeLimitExceeded"), Error);
}

TEST_CASE("all_posets counts match the known sequence") {
  // number of unlabeled posets: 1, 1, 2, 5, 16, 63, 318
  std::vector<std::size_t> expect{1, 1, 2, 5, 16, 63, 318};
  for (int n = 0; n <= 6; ++n) CHECK(all_posets(n).size() == expect[n]);
}

TEST_CASE("moebius values and row sums") {
  RankedLattice B2 = boolean_lattice(2);
  auto mu = moebius(B2);
  CHECK(mu[B2.bottom()][B2.bottom()] == 1);
  CHECK(mu[B2.bottom()][B2.top()] == 1);
  RankedLattice B4 = boolean_lattice(4);
  CHECK(moebius_from(B4, B4.bottom())[B4.top()] == 1);  // (-1)^4
  // U_{2,3}: flats {}, {0},{1},{2}, {0,1,2}
  RankedLattice U23 = RankedLattice::from_flats(3, {0, 1, 2, 4, 7});
  CHECK(moebius_from(U23, U23.bottom())[U23.top()] == 2);
  RankedLattice L = birkhoff_lattice(chan_pak());
  auto t = moebius(L);
  for (int f = 0; f < L.size(); ++f)
    for (int g = 0; g < L.size(); ++g) {
      if (!L.leq(f, g) || f == g) continue;
      BigInt s = 0;
      for (int h = 0; h < L.size(); ++h)
        if (L.leq(f, h) && L.leq(h, g)) s += t[f][h];
      CHECK(s == 0);
    }
}

TEST_CASE("interval sublattices") {
  Poset p = chan_pak();
  RankedLattice L = birkhoff_lattice(p);
  RankedLattice full = interval_sublattice(L, L.bottom(), L.top());
  CHECK(full.size() == L.size());
  CHECK(interval_sublattice(L, 3, 3).size() == 1);
  int fb = L.find(p.mask_of({"b"}));
  RankedLattice I = interval_sublattice(L, fb, L.top());
  CHECK(I.size() == 6);
  CHECK(I.rank() == 3);
  CHECK(classify_lattice(I).distributive);
  int fa = L.find(p.mask_of({"a"}));
  CHECK_THROWS_WITH_AS(interval_sublattice(L, fa, fb), doctest::Contains("NotComparable"), Error);
}

TEST_CASE("classify_lattice on modular, non-modular and atypical lattices") {
  auto c = classify_lattice(chain_lattice(4));
  CHECK((c.distributive && c.modular && c.typical_modular));
  // M3 (diamond) is modular, not distributive
  RankedLattice M3 = RankedLattice::from_flats(3, {0, 1, 2, 4, 7});
  c = classify_lattice(M3);
  CHECK(c.modular);
  CHECK_FALSE(c.distributive);
  // N5 is not modular: 0 < x < y < 1, 0 < z < 1
  RankedLattice N5 = RankedLattice::from_flats(3, {0, 1, 3, 4, 7});
  CHECK_FALSE(N5.graded());
  CHECK_THROWS_WITH_AS(classify_lattice(N5), doctest::Contains("NotRanked"), Error);
  // rank-3 modular lattice with atoms a1,a2,a3 and coatoms {a1,b5},{a1,a2,a3}:
  // the rank-1/rank-2 graph has two degree-1 atoms
  RankedLattice W = RankedLattice::from_flats(4, {0, 1, 2, 4, 1 | 8, 7, 15});
  c = classify_lattice(W);
  CHECK(c.modular);
  CHECK_FALSE(c.typical_modular);
  CHECK(c.atypical_interval.has_value());
  // projective plane over F_2 is modular and typical
  c = classify_lattice(subspace_lattice(3, 2));
  CHECK((c.modular && c.typical_modular && !c.distributive));
}

TEST_CASE("order reversing weights") {
  Poset chain = Poset::build({"b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  CHECK(is_order_reversing(chain, {{"b", 2}, {"c", 1}, {"d", 1}}));
  CHECK_FALSE(is_order_reversing(chain, {{"b", 1}, {"c", 2}, {"d", 1}}));
  Poset p = chan_pak();
  CHECK(is_order_reversing(p, {{"a", 100}, {"b", 2}, {"c", 1}, {"d", 1}}));
  CHECK_THROWS_WITH_AS(is_order_reversing(p, {{"a", 1}}), doctest::Contains("MissingWeight"), Error);
}

TEST_CASE("P-consistency and the lmin distribution") {
  Poset p = chan_pak();
  auto r = p_consistency(p, p.mask_of({"a", "d"}));
  CHECK_FALSE(r.consistent);
  REQUIRE(r.witness.has_value());
  CHECK(p.label((*r.witness)[0]) == "a");
  CHECK(p.label((*r.witness)[1]) == "c");
  CHECK(p.label((*r.witness)[2]) == "d");
  CHECK(is_p_consistent(p, p.mask_of({"c"})));
  CHECK(is_p_consistent(p, p.all()));

  auto lm = lmin_distribution(p, p.mask_of({"a", "d"}));
  REQUIRE(lm.distribution.size() == 4);
  CHECK(lm.distribution[0] == Rational(1, 4));
  CHECK(lm.distribution[1] == Rational(1, 4));
  CHECK(lm.distribution[2] == Rational(1, 2));
  CHECK(lm.distribution[3] == 0);
  CHECK(lm.fails_at == 2);
  auto two = lmin_distribution(antichain_poset(2), 1);
  CHECK(two.distribution == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  auto all = lmin_distribution(p, p.all());
  CHECK(all.distribution[0] == 1);
  CHECK_THROWS_WITH_AS(lmin_distribution(p, 0), doctest::Contains("EmptySet"), Error);
}

TEST_CASE("append_chains adds comparable chains below and above") {
  Poset p = append_chains(chan_pak(), 2);
  CHECK(p.size() == 8);
  CHECK(linear_extensions(p).size() == 4);
  int lo = p.index("_lo1"), hi = p.index("_hi2"), a = p.index("a");
  CHECK(p.less(lo, a));
  CHECK(p.less(a, hi));
}

TEST_CASE("subspace lattices") {
  auto pg2 = subspace_lattice(3, 2);
  CHECK(pg2.size() == 1 + 7 + 7 + 1);
  CHECK(pg2.rank() == 3);
  auto pg3 = subspace_lattice(3, 3);
  CHECK(pg3.flats_of_rank(1).size() == 13);
  CHECK(pg3.flats_of_rank(2).size() == 13);
  auto pg32 = subspace_lattice(4, 2);
  CHECK(pg32.flats_of_rank(2).size() == 35);
  CHECK_THROWS_AS(subspace_lattice(3, 4), Error);
}
