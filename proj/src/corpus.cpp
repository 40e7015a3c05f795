#include "pcx/corpus.hpp"

#include <algorithm>

namespace pcx {

std::map<std::string, Rational> random_order_reversing(const Poset& p, std::mt19937_64& rng) {
  int n = p.size();
  std::uniform_int_distribution<int> step(0, 6);
  std::vector<Rational> w(n);
  // every y > x has strictly more elements below it, so it is assigned before x
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = popcount(p.below(a)), cb = popcount(p.below(b));
    return ca != cb ? ca > cb : a < b;
  });
  // psi(x) = max(1, psi(y) for y > x) + step
  for (int x : order) {
    Rational base = 1;
    for (int y = 0; y < n; ++y)
      if (p.less(x, y)) base = std::max(base, w[y]);
    w[x] = base + ratio(step(rng), 2);
  }
  std::map<std::string, Rational> psi;
  for (int i = 0; i < n; ++i) psi[p.label(i)] = w[i];
  return psi;
}

CorpusInstance weighted_instance(const std::string& name, const Poset& p,
                                 const std::map<std::string, Rational>& psi) {
  RankedLattice L = birkhoff_lattice(p);
  std::vector<Rational> fw = lift_element_weights(L, psi);
  return {name, p, psi, chain_complex(L, &fw)};
}

std::vector<Poset> corpus_posets(const CorpusOptions& opt) {
  std::vector<Poset> out;
  for (int n = 3; n <= 5; ++n)
    for (Poset& p : all_posets(n)) out.push_back(std::move(p));
  auto six = all_posets(6);
  for (std::size_t i = 0; i < six.size(); i += std::max(1, opt.six_stride)) out.push_back(six[i]);
  std::mt19937_64 rng(opt.seed);
  for (int k = 0; k < opt.random_seven;) {
    Poset p = random_poset(7, 0.15 + 0.05 * (k % 6), rng);
    if (birkhoff_lattice(p).count_maximal_chains() > opt.max_extensions) continue;
    out.push_back(std::move(p));
    ++k;
  }
  return out;
}

std::vector<CorpusInstance> acceptance_corpus(const CorpusOptions& opt) {
  std::vector<CorpusInstance> out;
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  auto posets = corpus_posets(opt);
  for (std::size_t i = 0; i < posets.size(); ++i)
    for (int j = 0; j < opt.psi_per_poset; ++j)
      out.push_back(weighted_instance("P" + std::to_string(i) + "n" + std::to_string(posets[i].size()) + "psi" +
                                          std::to_string(j),
                                      posets[i], random_order_reversing(posets[i], rng)));
  return out;
}

}  // namespace pcx
