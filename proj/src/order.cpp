#include "pcx/order.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace pcx {

namespace {

Mask bit(int i) { return Mask(1) << i; }

std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(__builtin_ctzll(m));
    m &= m - 1;
  }
  return out;
}

// Closes below[] transitively in place; returns false if a cycle exists.
bool close_relation(std::vector<Mask>& below) {
  int n = static_cast<int>(below.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = 0; b < n; ++b) {
      Mask acc = below[b];
      for (int a : bits_of(below[b])) acc |= below[a];
      if (acc != below[b]) {
        below[b] = acc;
        changed = true;
      }
    }
  }
  for (int b = 0; b < n; ++b)
    if ((below[b] >> b) & 1) return false;
  return true;
}

std::string letter_label(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i);
}

}  // namespace

// ---------------------------------------------------------------- Poset

Poset Poset::build(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& covers,
                   std::vector<std::string>* warnings) {
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 1; i < elements.size(); ++i)
    if (elements[i] == elements[i - 1]) throw Error("DuplicateLabel", "label '" + elements[i] + "' repeated");
  if (elements.size() > 64) throw Error("SizeLimitExceeded", "posets are limited to 64 elements");
  Poset p;
  p.labels_ = std::move(elements);
  int n = p.size();
  std::vector<Mask> direct(n, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : covers) {
    int ia = p.index(a), ib = p.index(b);
    if (ia == ib) throw Error("CycleDetected", "self cover on '" + a + "'");
    if (!seen.insert({ia, ib}).second) {
      if (warnings) warnings->push_back("duplicate cover (" + a + ", " + b + ") ignored");
      continue;
    }
    direct[ib] |= bit(ia);
  }
  std::vector<Mask> below = direct;
  if (!close_relation(below)) throw Error("CycleDetected", "cover relation contains a cycle");
  // a cover (a,b) is redundant when some c has a < c < b
  for (const auto& [ia, ib] : seen) {
    bool redundant = false;
    for (int c : bits_of(below[ib]))
      if (c != ia && ((below[c] >> ia) & 1)) redundant = true;
    if (redundant && warnings)
      warnings->push_back("redundant cover (" + p.labels_[ia] + ", " + p.labels_[ib] +
                          ") is implied transitively and was dropped");
  }
  p.below_ = std::move(below);
  return p;
}

Poset Poset::from_relation(const std::vector<std::string>& labels, const std::vector<Mask>& below) {
  if (labels.size() != below.size()) throw Error("InvalidArgument", "label/relation size mismatch");
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return labels[x] < labels[y]; });
  std::vector<int> pos(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::string> sorted;
  std::vector<std::pair<std::string, std::string>> rel;
  for (auto i : order) sorted.push_back(labels[i]);
  Poset p;
  p.labels_ = sorted;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw Error("DuplicateLabel", "label '" + sorted[i] + "' repeated");
  std::vector<Mask> b(labels.size(), 0);
  for (std::size_t j = 0; j < labels.size(); ++j)
    for (int i : bits_of(below[j])) b[pos[j]] |= bit(pos[i]);
  if (!close_relation(b)) throw Error("CycleDetected", "relation contains a cycle");
  p.below_ = std::move(b);
  return p;
}

int Poset::index(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw Error("UnknownLabel", "unknown element '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

Mask Poset::above(int a) const {
  Mask m = 0;
  for (int b = 0; b < size(); ++b)
    if (less(a, b)) m |= bit(b);
  return m;
}

bool Poset::covered_by(int a, int b) const {
  if (!less(a, b)) return false;
  for (int c : bits_of(below_[b]))
    if (less(a, c)) return false;
  return true;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (covered_by(a, b)) out.push_back({a, b});
  return out;
}

Mask Poset::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index(l));
  return m;
}

// ---------------------------------------------------------------- RankedLattice

RankedLattice RankedLattice::from_flats(int ground, std::vector<Mask> flats,
                                        std::vector<std::string> ground_labels, std::size_t cap) {
  if (ground < 0 || ground > 64) throw Error("SizeLimitExceeded", "ground set limited to 64 points");
  if (flats.empty()) throw Error("InvalidLattice", "no flats");
  if (flats.size() > cap) throw Error("SizeLimitExceeded", "lattice has more than " + std::to_string(cap) + " flats");
  std::sort(flats.begin(), flats.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
  RankedLattice L;
  L.ground_ = ground;
  if (ground_labels.empty())
    for (int i = 0; i < ground; ++i) ground_labels.push_back(std::to_string(i));
  if (static_cast<int>(ground_labels.size()) != ground) throw Error("InvalidLattice", "ground label count mismatch");
  L.ground_labels_ = std::move(ground_labels);
  L.flats_ = std::move(flats);
  int m = L.size();
  for (int i = 0; i < m; ++i) L.index_[L.flats_[i]] = i;

  Mask all = 0, inter = ~Mask(0);
  for (Mask f : L.flats_) {
    all |= f;
    inter &= f;
  }
  if (ground < 64 && (all >> ground)) throw Error("InvalidLattice", "flat uses a point outside the ground set");
  if (!L.index_.count(all)) throw Error("InvalidLattice", "no top element (union of flats is not a flat)");
  if (!L.index_.count(inter)) throw Error("InvalidLattice", "no bottom element");
  if (m <= 4000)
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (!L.index_.count(L.flats_[a] & L.flats_[b]))
          throw Error("InvalidLattice", "flats " + L.flat_label(a) + " and " + L.flat_label(b) +
                                            " have no meet (not closed under intersection)");
  L.bottom_ = L.index_[inter];
  L.top_ = L.index_[all];

  // upper covers: minimal elements among strict supersets
  L.up_.assign(m, {});
  L.down_.assign(m, {});
  for (int a = 0; a < m; ++a) {
    std::vector<int>& mins = L.up_[a];
    for (int b = a + 1; b < m; ++b) {
      if (!subset(L.flats_[a], L.flats_[b]) || L.flats_[a] == L.flats_[b]) continue;
      bool minimal = true;
      for (int c : mins)
        if (subset(L.flats_[c], L.flats_[b])) {
          minimal = false;
          break;
        }
      if (minimal) mins.push_back(b);
    }
    for (int b : mins) L.down_[b].push_back(a);
  }
  L.rank_.assign(m, 0);
  for (int b = 0; b < m; ++b)
    for (int a : L.down_[b]) L.rank_[b] = std::max(L.rank_[b], L.rank_[a] + 1);
  for (int b = 0; b < m; ++b)
    for (int a : L.down_[b])
      if (L.rank_[b] != L.rank_[a] + 1) L.graded_ = false;
  return L;
}

int RankedLattice::find(Mask m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int RankedLattice::meet(int a, int b) const { return find(flats_[a] & flats_[b]); }

int RankedLattice::join(int a, int b) const {
  Mask u = flats_[a] | flats_[b];
  // flats are sorted by cardinality, so the first flat containing u is the least one
  for (int c = std::max(a, b); c < size(); ++c)
    if (subset(u, flats_[c])) return c;
  return top_;
}

std::vector<int> RankedLattice::flats_of_rank(int r) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (rank_[i] == r) out.push_back(i);
  return out;
}

std::string RankedLattice::flat_label(int i) const {
  std::string s = "{";
  bool first = true;
  for (int b : bits_of(flats_[i])) {
    if (!first) s += ",";
    s += ground_labels_.empty() ? std::to_string(b) : ground_labels_[b];
    first = false;
  }
  return s + "}";
}

std::vector<std::vector<int>> RankedLattice::maximal_chains(std::size_t cap) const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int f) {
    if (f == top_) {
      if (out.size() >= cap)
        throw Error("SizeLimitExceeded", "more than " + std::to_string(cap) + " maximal chains");
      out.push_back(cur);
      return;
    }
    for (int g : up_[f]) {
      if (g != top_) cur.push_back(g);
      rec(g);
      if (g != top_) cur.pop_back();
    }
  };
  rec(bottom_);
  return out;
}

BigInt RankedLattice::count_maximal_chains() const {
  std::vector<BigInt> cnt(size(), 0);
  cnt[bottom_] = 1;
  for (int b = 0; b < size(); ++b)
    for (int a : down_[b]) cnt[b] += cnt[a];
  return cnt[top_];
}

// ---------------------------------------------------------------- constructions

RankedLattice birkhoff_lattice(const Poset& p, std::size_t cap) {
  int n = p.size();
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> stack{0};
  while (!stack.empty()) {
    Mask d = stack.back();
    stack.pop_back();
    for (int x = 0; x < n; ++x) {
      if ((d >> x) & 1) continue;
      if (!subset(p.below(x), d)) continue;
      Mask e = d | bit(x);
      if (seen.insert(e).second) {
        if (seen.size() > cap)
          throw Error("SizeLimitExceeded", "more than " + std::to_string(cap) + " downsets");
        stack.push_back(e);
      }
    }
  }
  return RankedLattice::from_flats(n, std::vector<Mask>(seen.begin(), seen.end()), p.labels(), cap);
}

std::vector<std::vector<int>> extension_sequences(const Poset& p, int cap, std::size_t max_count) {
  int n = p.size();
  if (n > cap) throw Error("SizeLimitExceeded", "poset has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(Mask)> rec = [&](Mask used) {
    if (static_cast<int>(cur.size()) == n) {
      if (out.size() >= max_count)
        throw Error("SizeLimitExceeded", "more than " + std::to_string(max_count) + " linear extensions");
      out.push_back(cur);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if ((used >> x) & 1 || !subset(p.below(x), used)) continue;
      cur.push_back(x);
      rec(used | bit(x));
      cur.pop_back();
    }
  };
  rec(0);
  // order by ell-images: ell[x] = position of x
  std::vector<std::pair<std::vector<int>, std::size_t>> keyed;
  keyed.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<int> ell(n);
    for (int k = 0; k < n; ++k) ell[out[i][k]] = k + 1;
    keyed.push_back({std::move(ell), i});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::vector<int>> sorted;
  sorted.reserve(out.size());
  for (auto& [ell, i] : keyed) sorted.push_back(std::move(out[i]));
  return sorted;
}

std::vector<LinearExtension> linear_extensions(const Poset& p, int cap, std::size_t max_count) {
  std::vector<LinearExtension> out;
  for (const auto& seq : extension_sequences(p, cap, max_count)) {
    LinearExtension ell(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) ell[seq[k]] = static_cast<int>(k) + 1;
    out.push_back(std::move(ell));
  }
  return out;
}

std::vector<BigInt> moebius_from(const RankedLattice& L, int F) {
  int m = L.size();
  std::vector<BigInt> mu(m, 0);
  std::vector<int> above;
  for (int g = 0; g < m; ++g)
    if (L.leq(F, g)) above.push_back(g);
  // above is sorted by cardinality, so every H < G precedes G
  for (std::size_t gi = 0; gi < above.size(); ++gi) {
    int g = above[gi];
    if (g == F) {
      mu[g] = 1;
      continue;
    }
    BigInt s = 0;
    for (std::size_t hi = 0; hi < gi; ++hi)
      if (L.leq(above[hi], g)) s += mu[above[hi]];
    mu[g] = -s;
  }
  return mu;
}

std::vector<std::vector<BigInt>> moebius(const RankedLattice& L) {
  std::vector<std::vector<BigInt>> t;
  t.reserve(L.size());
  for (int f = 0; f < L.size(); ++f) t.push_back(moebius_from(L, f));
  return t;
}

RankedLattice interval_sublattice(const RankedLattice& L, int F, int G) {
  if (!L.leq(F, G))
    throw Error("NotComparable", L.flat_label(F) + " is not below " + L.flat_label(G));
  Mask lo = L.flat(F), hi = L.flat(G);
  std::vector<int> pts = bits_of(hi & ~lo);
  std::vector<std::string> labels;
  for (int b : pts) labels.push_back(L.ground_labels()[b]);
  std::vector<Mask> flats;
  for (int k = 0; k < L.size(); ++k) {
    if (!L.leq(F, k) || !L.leq(k, G)) continue;
    Mask c = 0;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if ((L.flat(k) >> pts[j]) & 1) c |= bit(static_cast<int>(j));
    flats.push_back(c);
  }
  return RankedLattice::from_flats(static_cast<int>(pts.size()), flats, labels);
}

LatticeClass classify_lattice(const RankedLattice& L, std::size_t cap) {
  if (!L.graded()) throw Error("NotRanked", "lattice is not graded");
  int m = L.size();
  if (static_cast<std::size_t>(m) > cap)
    throw Error("SizeLimitExceeded", "classification limited to " + std::to_string(cap) + " flats");
  std::vector<int> meetT(m * m), joinT(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      meetT[a * m + b] = meetT[b * m + a] = L.meet(a, b);
      joinT[a * m + b] = joinT[b * m + a] = L.join(a, b);
    }
  LatticeClass c;
  c.modular = true;
  for (int a = 0; a < m && c.modular; ++a)
    for (int b = a + 1; b < m; ++b)
      if (L.rank(a) + L.rank(b) != L.rank(joinT[a * m + b]) + L.rank(meetT[a * m + b])) {
        c.modular = false;
        break;
      }
  c.distributive = c.modular;
  for (int f = 0; f < m && c.distributive; ++f)
    for (int g = 0; g < m && c.distributive; ++g)
      for (int k = g + 1; k < m; ++k) {
        int lhs = meetT[f * m + joinT[g * m + k]];
        int rhs = joinT[meetT[f * m + g] * m + meetT[f * m + k]];
        if (lhs != rhs) {
          c.distributive = false;
          break;
        }
      }
  bool typical = true;
  for (int f = 0; f < m && typical; ++f)
    for (int g = 0; g < m; ++g) {
      if (L.rank(g) != L.rank(f) + 3 || !L.leq(f, g)) continue;
      std::vector<int> X, Y;
      for (int x : L.upper_covers(f))
        if (L.leq(x, g)) X.push_back(x);
      for (int y : L.lower_covers(g))
        if (L.leq(f, y)) Y.push_back(y);
      int deg1x = 0, deg1y = 0;
      for (int x : X) {
        int d = 0;
        for (int y : Y) d += L.leq(x, y);
        deg1x += d == 1;
      }
      for (int y : Y) {
        int d = 0;
        for (int x : X) d += L.leq(x, y);
        deg1y += d == 1;
      }
      if (!(deg1x == 0 || deg1y == 0 || (deg1x == 1 && deg1y == 1))) {
        typical = false;
        c.atypical_interval = std::make_pair(f, g);
        break;
      }
    }
  c.typical_modular = c.modular && typical;
  return c;
}

// ---------------------------------------------------------------- predicates

bool is_order_reversing(const Poset& p, const std::map<std::string, Rational>& psi) {
  std::vector<Rational> w(p.size());
  for (int i = 0; i < p.size(); ++i) {
    auto it = psi.find(p.label(i));
    if (it == psi.end()) throw Error("MissingWeight", "no weight for '" + p.label(i) + "'");
    w[i] = it->second;
  }
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.less(a, b) && w[a] < w[b]) return false;
  return true;
}

PConsistency p_consistency(const Poset& p, Mask A) {
  if (!subset(A, p.all())) throw Error("UnknownLabel", "set contains an element outside the poset");
  PConsistency r;
  for (auto [b, c] : p.cover_pairs()) {
    if ((A >> b) & 1 || !((A >> c) & 1)) continue;
    for (int a : bits_of(A)) {
      if (a == c) continue;
      if (!p.comparable(a, b) && !p.comparable(a, c)) {
        r.consistent = false;
        r.witness = std::array<int, 3>{a, b, c};
        return r;
      }
    }
  }
  return r;
}

LminReport lmin_distribution(const Poset& p, Mask A, int cap) {
  if (A == 0) throw Error("EmptySet", "A must be nonempty");
  if (!subset(A, p.all())) throw Error("UnknownLabel", "set contains an element outside the poset");
  int n = p.size();
  std::vector<BigInt> cnt(n, 0);
  BigInt total = 0;
  for (const auto& seq : extension_sequences(p, cap)) {
    for (int k = 0; k < n; ++k)
      if ((A >> seq[k]) & 1) {
        cnt[k] += 1;
        break;
      }
    total += 1;
  }
  LminReport r;
  r.extensions = total;
  for (int k = 0; k < n; ++k) r.distribution.push_back(ratio(cnt[k], total));
  for (auto& q : r.distribution) q.canonicalize();
  for (int k = 2; k <= n - 1; ++k) {
    const Rational &a = r.distribution[k - 2], &b = r.distribution[k - 1], &c = r.distribution[k];
    if (b * b < a * c) {
      r.fails_at = k;
      break;
    }
  }
  return r;
}

Poset append_chains(const Poset& p, int N) {
  if (N < 0) throw Error("InvalidArgument", "chain length must be non-negative");
  int n = p.size();
  if (n + 2 * N > 64) throw Error("SizeLimitExceeded", "poset would exceed 64 elements");
  std::vector<std::string> labels = p.labels();
  std::vector<Mask> below(n + 2 * N, 0);
  for (int b = 0; b < n; ++b) below[b] = p.below(b);
  Mask lows = 0;
  for (int i = 0; i < N; ++i) {
    labels.push_back("_lo" + std::to_string(i + 1));
    below[n + i] = lows;
    lows |= bit(n + i);
  }
  for (int b = 0; b < n; ++b) below[b] |= lows;
  Mask all = lows | ((n == 64) ? ~Mask(0) : (bit(n) - 1));
  for (int i = 0; i < N; ++i) {
    labels.push_back("_hi" + std::to_string(i + 1));
    below[n + N + i] = all;
    all |= bit(n + N + i);
  }
  return Poset::from_relation(labels, below);
}

// ---------------------------------------------------------------- generators

namespace {

// Canonical code: lexicographically minimal relation matrix over all relabelings.
std::uint64_t canonical_code(int n, const std::vector<Mask>& below, std::vector<int>* best_perm) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t(0);
  do {
    // perm[new] = old
    std::uint64_t code = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        code <<= 1;
        code |= (below[perm[j]] >> perm[i]) & 1;
      }
    if (code < best) {
      best = code;
      if (best_perm) *best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Mask> downsets_of(int n, const std::vector<Mask>& below) {
  std::vector<Mask> out;
  for (Mask d = 0; d < (Mask(1) << n); ++d) {
    bool ok = true;
    for (int x : bits_of(d))
      if (!subset(below[x], d)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<Poset> all_posets(int n) {
  if (n < 0 || n > 6) throw Error("SizeLimitExceeded", "isomorphism-class enumeration supports n <= 6");
  std::vector<std::vector<Mask>> level{{}};
  for (int k = 1; k <= n; ++k) {
    std::map<std::uint64_t, std::vector<Mask>> next;
    for (const auto& rel : level) {
      for (Mask d : downsets_of(k - 1, rel)) {
        std::vector<Mask> r = rel;
        r.push_back(d);
        std::vector<int> perm;
        std::uint64_t code = canonical_code(k, r, &perm);
        if (next.count(code)) continue;
        std::vector<int> inv(k);
        for (int i = 0; i < k; ++i) inv[perm[i]] = i;
        std::vector<Mask> canon(k, 0);
        for (int j = 0; j < k; ++j)
          for (int i : bits_of(r[perm[j]])) canon[j] |= bit(inv[i]);
        next[code] = canon;
      }
    }
    level.clear();
    for (auto& [code, rel] : next) level.push_back(rel);
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(letter_label(i));
  std::vector<Poset> out;
  for (const auto& rel : level) out.push_back(Poset::from_relation(labels, rel));
  return out;
}

Poset random_poset(int n, double edge_prob, std::mt19937_64& rng) {
  if (n < 0 || n > 64) throw Error("SizeLimitExceeded", "posets are limited to 64 elements");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Mask> below(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) below[order[j]] |= bit(order[i]);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(letter_label(i));
  return Poset::from_relation(labels, below);
}

Poset chain_poset(int n) {
  std::vector<std::string> labels;
  std::vector<Mask> below(n, 0);
  for (int i = 0; i < n; ++i) {
    labels.push_back(letter_label(i));
    if (i) below[i] = bit(i - 1);
  }
  return Poset::from_relation(labels, below);
}

Poset antichain_poset(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(letter_label(i));
  return Poset::from_relation(labels, std::vector<Mask>(n, 0));
}

RankedLattice boolean_lattice(int n) { return birkhoff_lattice(antichain_poset(n)); }

RankedLattice chain_lattice(int rank) { return birkhoff_lattice(chain_poset(rank)); }

RankedLattice subspace_lattice(int n, int q) {
  if (q < 2) throw Error("DomainError", "q must be prime");
  for (int f = 2; f * f <= q; ++f)
    if (q % f == 0) throw Error("DomainError", "q must be prime (prime powers are not supported)");
  if (n < 1) throw Error("DomainError", "dimension must be positive");
  long npts = 0;
  {
    long qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    npts = (qn - 1) / (q - 1);
  }
  if (npts > 64) throw Error("SizeLimitExceeded", "projective space has more than 64 points");
  // normalized vectors: first nonzero coordinate equals 1
  std::vector<std::vector<int>> pts;
  std::map<std::vector<int>, int> idx;
  std::vector<int> v(n, 0);
  std::function<void(int)> gen = [&](int i) {
    if (i == n) {
      auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
      if (it != v.end() && *it == 1) {
        idx[v] = static_cast<int>(pts.size());
        pts.push_back(v);
      }
      return;
    }
    for (int x = 0; x < q; ++x) {
      v[i] = x;
      gen(i + 1);
    }
  };
  gen(0);
  auto normalize = [&](std::vector<int> w) {
    auto it = std::find_if(w.begin(), w.end(), [](int x) { return x != 0; });
    if (it == w.end()) return -1;
    int inv = 1;
    while ((*it * inv) % q != 1) ++inv;
    for (int& x : w) x = (x * inv) % q;
    return idx.at(w);
  };
  auto span = [&](Mask s) {
    bool changed = true;
    while (changed) {
      changed = false;
      auto members = bits_of(s);
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
          for (int c = 1; c < q; ++c) {
            std::vector<int> w(n);
            for (int i = 0; i < n; ++i) w[i] = (pts[members[a]][i] + c * pts[members[b]][i]) % q;
            int k = normalize(w);
            if (k >= 0 && !((s >> k) & 1)) {
              s |= bit(k);
              changed = true;
            }
          }
    }
    return s;
  };
  std::set<Mask> flats{0};
  std::vector<Mask> frontier{0};
  while (!frontier.empty()) {
    std::vector<Mask> nxt;
    for (Mask f : frontier)
      for (int x = 0; x < static_cast<int>(pts.size()); ++x) {
        if ((f >> x) & 1) continue;
        Mask g = span(f | bit(x));
        if (flats.insert(g).second) nxt.push_back(g);
      }
    frontier = std::move(nxt);
  }
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    std::string s;
    for (int x : p) s += std::to_string(x);
    labels.push_back(s);
  }
  return RankedLattice::from_flats(static_cast<int>(pts.size()), {flats.begin(), flats.end()}, labels);
}

}  // namespace pcx
