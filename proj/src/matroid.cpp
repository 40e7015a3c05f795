#include "pcx/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcx {

namespace {

Mask bit(int i) { return Mask(1) << i; }

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Matroid Matroid::from_bases(int n, std::vector<Mask> bases) {
  if (n < 0 || n > 64) throw Error("SizeLimitExceeded", "ground set limited to 64 elements");
  if (bases.empty()) throw Error("EmptyBasesList", "a matroid needs at least one basis");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  Matroid m;
  m.n_ = n;
  m.r_ = popcount(bases[0]);
  for (Mask b : bases) {
    if (n < 64 && (b >> n)) throw Error("InvalidArgument", "basis uses an element outside the ground set");
    if (popcount(b) != m.r_) throw Error("ExchangeAxiomViolation", "bases have different cardinalities");
  }
  std::set<Mask> lookup(bases.begin(), bases.end());
  for (Mask b1 : bases)
    for (Mask b2 : bases) {
      for (Mask rest = b1 & ~b2; rest; rest &= rest - 1) {
        int e = __builtin_ctzll(rest);
        bool found = false;
        for (Mask cand = b2 & ~b1; cand && !found; cand &= cand - 1) {
          int f = __builtin_ctzll(cand);
          found = lookup.count((b1 & ~bit(e)) | bit(f)) > 0;
        }
        if (!found)
          throw Error("ExchangeAxiomViolation", "no exchange for element " + std::to_string(e) +
                                                    " between two bases");
      }
    }
  m.bases_ = std::move(bases);
  return m;
}

Matroid Matroid::graphic(int vertices, const std::vector<std::pair<int, int>>& edges) {
  if (edges.size() > 64) throw Error("SizeLimitExceeded", "ground set limited to 64 edges");
  Matroid m;
  m.graphic_ = true;
  m.vertices_ = vertices;
  m.edges_ = edges;
  m.n_ = static_cast<int>(edges.size());
  for (auto [u, v] : edges)
    if (u < 0 || v < 0 || u >= vertices || v >= vertices)
      throw Error("InvalidArgument", "edge endpoint out of range");
  m.r_ = m.rank_of(m.ground());
  return m;
}

Matroid Matroid::uniform(int r, int n) {
  if (r < 0 || r > n || n > 20) throw Error("InvalidArgument", "uniform matroid needs 0 <= r <= n <= 20");
  std::vector<Mask> bases;
  for (Mask s = 0; s < (Mask(1) << n); ++s)
    if (popcount(s) == r) bases.push_back(s);
  return from_bases(n, std::move(bases));
}

int Matroid::rank_of(Mask s) const {
  if (graphic_) {
    std::vector<int> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    int r = 0;
    for (int e = 0; e < n_; ++e) {
      if (!((s >> e) & 1)) continue;
      int a = find_root(parent, edges_[e].first), b = find_root(parent, edges_[e].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    }
    return r;
  }
  int best = 0;
  for (Mask b : bases_) best = std::max(best, popcount(s & b));
  return best;
}

Mask Matroid::closure(Mask s) const {
  int r = rank_of(s);
  Mask c = s;
  for (int e = 0; e < n_; ++e)
    if (!((s >> e) & 1) && rank_of(s | bit(e)) == r) c |= bit(e);
  return c;
}

RankedLattice flat_lattice(const Matroid& m, int cap) {
  if (m.ground_size() > cap)
    throw Error("SizeLimitExceeded", "matroid ground set exceeds cap " + std::to_string(cap));
  std::set<Mask> flats{m.loops()};
  std::vector<Mask> frontier{m.loops()};
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask f : frontier)
      for (int e = 0; e < m.ground_size(); ++e) {
        if ((f >> e) & 1) continue;
        Mask g = m.closure(f | bit(e));
        if (flats.insert(g).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  std::vector<std::string> labels;
  for (int e = 0; e < m.ground_size(); ++e) labels.push_back(std::to_string(e));
  return RankedLattice::from_flats(m.ground_size(), {flats.begin(), flats.end()}, labels);
}

std::vector<BigInt> reduced_char_poly(const Matroid& m, int i, int cap) {
  if (i < 0 || i >= m.ground_size()) throw Error("InvalidArgument", "element out of range");
  if ((m.loops() >> i) & 1) throw Error("LoopElement", "element " + std::to_string(i) + " is a loop");
  RankedLattice L = flat_lattice(m, cap);
  auto mu = moebius_from(L, L.bottom());
  int d = L.rank() - 1;
  std::vector<BigInt> coef(d + 1, 0);
  for (int f = 0; f < L.size(); ++f)
    if (!((L.flat(f) >> i) & 1) && L.rank(f) <= d) coef[L.rank(f)] += mu[f];
  return coef;
}

std::vector<Rational> hrw_sequence(const Matroid& m, int cap) {
  RankedLattice L = flat_lattice(m, cap);
  if (L.rank() < 1) throw Error("DomainError", "matroid of rank 0 has no sequence");
  auto mu = moebius_from(L, L.bottom());
  int n = m.ground_size(), n0 = popcount(m.loops());
  int d = L.rank() - 1;
  std::vector<Rational> c(d + 1, 0);
  for (int f = 0; f < L.size(); ++f) {
    if (L.rank(f) > d) continue;
    BigInt a = abs(mu[f]);
    c[L.rank(f)] += ratio(n - popcount(L.flat(f)), n - n0) * Rational(a);
  }
  for (auto& x : c) x.canonicalize();
  return c;
}

MatroidCheck weisner_check(const RankedLattice& L) {
  MatroidCheck r;
  for (int K = 0; K < L.size(); ++K) {
    auto mu = moebius_from(L, K);
    std::vector<Rational> w(L.size(), 0);
    int cardK = popcount(L.flat(K));
    for (int M = 0; M < L.size(); ++M) {
      if (!L.leq(K, M)) continue;
      if (M == K) {
        w[M] = 1;
      } else {
        int cardM = popcount(L.flat(M));
        Rational s = 0;
        for (int G : L.lower_covers(M))
          if (L.leq(K, G)) s += ratio(cardM - popcount(L.flat(G)), cardM - cardK) * w[G];
        w[M] = -s;
      }
      ++r.checked;
      if (w[M] != Rational(mu[M])) {
        r.ok = false;
        r.failure = "weighted recursion differs at (" + L.flat_label(K) + ", " + L.flat_label(M) + ")";
        return r;
      }
    }
  }
  return r;
}

MatroidCheck partition_identities(const RankedLattice& L) {
  MatroidCheck r;
  int n = popcount(L.flat(L.top())), n0 = popcount(L.flat(L.bottom()));
  auto card = [&](int f) { return popcount(L.flat(f)); };
  // covers of F partition the complement of F
  for (int f = 0; f < L.size(); ++f) {
    if (f == L.top()) continue;
    Mask acc = 0;
    bool disjoint = true;
    for (int g : L.upper_covers(f)) {
      Mask part = L.flat(g) & ~L.flat(f);
      if (acc & part) disjoint = false;
      acc |= part;
    }
    ++r.checked;
    if (!disjoint || acc != (L.flat(L.top()) & ~L.flat(f))) {
      r.ok = false;
      r.failure = "covers of " + L.flat_label(f) + " do not partition its complement";
      return r;
    }
  }
  // upward telescoping: processed from the top down
  std::vector<Rational> up(L.size(), 0);
  for (int f = L.size() - 1; f >= 0; --f) {
    if (f == L.top()) {
      up[f] = 1;
      continue;
    }
    for (int g : L.upper_covers(f)) up[f] += ratio(card(g) - card(f), n - card(f)) * up[g];
    ++r.checked;
    if (up[f] != 1) {
      r.ok = false;
      r.failure = "upward chain sum at " + L.flat_label(f) + " is " + to_string(up[f]);
      return r;
    }
  }
  auto mu = moebius_from(L, L.bottom());
  std::vector<Rational> down(L.size(), 0);
  for (int f = 0; f < L.size(); ++f) {
    if (f == L.bottom()) {
      down[f] = 1;
    } else {
      for (int h : L.lower_covers(f)) down[f] += ratio(card(f) - card(h), card(f) - n0) * down[h];
    }
    ++r.checked;
    if (down[f] != Rational(abs(mu[f]))) {
      r.ok = false;
      r.failure = "downward chain sum at " + L.flat_label(f) + " is " + to_string(down[f]);
      return r;
    }
  }
  return r;
}

std::vector<ToplinkBlock> matroid_toplink_blocks(const RankedLattice& L) {
  std::vector<ToplinkBlock> out;
  auto card = [&](int f) { return popcount(L.flat(f)); };
  for (int K = 0; K < L.size(); ++K)
    for (int M = 0; M < L.size(); ++M) {
      if (L.rank(M) != L.rank(K) + 3 || !L.leq(K, M)) continue;
      ToplinkBlock b;
      b.K = K;
      b.L = M;
      for (int x : L.upper_covers(K))
        if (L.leq(x, M)) b.lower.push_back(x);
      for (int y : L.lower_covers(M))
        if (L.leq(K, y)) b.upper.push_back(y);
      std::vector<int> all = b.lower;
      all.insert(all.end(), b.upper.begin(), b.upper.end());
      std::size_t s = all.size(), nl = b.lower.size();
      b.matrix.assign(s, std::vector<Rational>(s, 0));
      for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = nl; j < s; ++j)
          if (L.leq(all[i], all[j])) b.matrix[i][j] = b.matrix[j][i] = 1;
      for (std::size_t i = 0; i < nl; ++i) {
        Rational dsum = 0;
        for (std::size_t j = nl; j < s; ++j)
          if (L.leq(all[i], all[j])) dsum += ratio(card(M) - card(all[j]), card(M) - card(all[i]));
        b.matrix[i][i] -= dsum;
      }
      for (std::size_t j = nl; j < s; ++j) {
        Rational dsum = 0;
        for (std::size_t i = 0; i < nl; ++i)
          if (L.leq(all[i], all[j])) dsum += ratio(card(all[i]) - card(K), card(all[j]) - card(K));
        b.matrix[j][j] -= dsum;
      }
      for (auto& row : b.matrix)
        for (auto& x : row) x.canonicalize();
      out.push_back(std::move(b));
    }
  return out;
}

MatroidCheck matroid_toplink_identity(const RankedLattice& L) {
  MatroidCheck r;
  for (const auto& b : matroid_toplink_blocks(L)) {
    std::size_t nl = b.lower.size(), s = nl + b.upper.size();
    std::vector<std::vector<Rational>> rhs(s, std::vector<Rational>(s, 0));
    for (std::size_t i = 0; i < nl; ++i)
      for (std::size_t j = 0; j < nl; ++j) rhs[i][j] = 1;
    for (std::size_t g = nl; g < s; ++g) {
      std::vector<Rational> v(s, 0);
      v[g] = 1;
      for (std::size_t f = 0; f < nl; ++f)
        if (L.leq(b.lower[f], b.upper[g - nl])) v[f] = -1;
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) rhs[i][j] -= v[i] * v[j];
    }
    ++r.checked;
    if (rhs != b.matrix) {
      r.ok = false;
      r.failure = "identity fails on interval [" + L.flat_label(b.K) + ", " + L.flat_label(b.L) + "]";
      return r;
    }
  }
  return r;
}

}  // namespace pcx
