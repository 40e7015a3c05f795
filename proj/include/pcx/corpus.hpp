#ifndef PCX_CORPUS_HPP
#define PCX_CORPUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcx/complex.hpp"
#include "pcx/numeric.hpp"
#include "pcx/order.hpp"

namespace pcx {

// A weighted distributive-lattice complex: maximal chains of downsets of the
// poset, weighted by the product of psi over the elements of each downset.
struct CorpusInstance {
  std::string name;
  Poset poset;
  std::map<std::string, Rational> psi;
  PathComplex X;
};

// Random order-reversing weights with values in [1, 1 + 3 (n-1)] in steps of 1/2.
std::map<std::string, Rational> random_order_reversing(const Poset& p, std::mt19937_64& rng);
CorpusInstance weighted_instance(const std::string& name, const Poset& p, const std::map<std::string, Rational>& psi);

struct CorpusOptions {
  std::uint64_t seed = 20240601;
  int psi_per_poset = 3;
  int six_stride = 4;       // every k-th isomorphism class on 6 elements
  int random_seven = 40;    // random posets on 7 elements
  long max_extensions = 720;  // rejection bound on linear extensions of the random posets
};
// All posets on 3..5 elements, a stride of those on 6, and random 7-element posets
// with at most max_extensions linear extensions.
std::vector<Poset> corpus_posets(const CorpusOptions& opt = {});
std::vector<CorpusInstance> acceptance_corpus(const CorpusOptions& opt = {});

}  // namespace pcx

#endif
