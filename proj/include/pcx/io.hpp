#ifndef PCX_IO_HPP
#define PCX_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcx/complex.hpp"
#include "pcx/matroid.hpp"
#include "pcx/numeric.hpp"
#include "pcx/order.hpp"

namespace pcx {

using json = nlohmann::ordered_json;

// Rationals are written as "p/q" strings.  Reading also accepts integers and
// floats; a float sets *inexact.
json rational_json(const Rational& q);
Rational json_rational(const json& j, bool* inexact = nullptr);

// Reads and parses a file; IoError on failure.
json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

struct PosetInput {
  Poset poset;
  std::optional<std::map<std::string, Rational>> psi;
  bool inexact = false;
  std::vector<std::string> warnings;
};
// {"kind":"poset","elements":[...],"covers":[["b","c"],...],"psi":{"a":"2/1",...}}
PosetInput parse_poset(const json& j);
json poset_json(const Poset& p, const std::map<std::string, Rational>* psi = nullptr);

// {"kind":"matroid","format":"graphic","vertices":4,"edges":[[0,1],...]} or
// {"kind":"matroid","format":"bases","ground":6,"bases":[[0,1,2],...]}
Matroid parse_matroid(const json& j);

// {"kind":"complex","d":3,"parts":[[...],...],"facets":[{"v":[...],"w":"1/4"},...]}
// Float weights give a complex with exact() == false.
PathComplex parse_complex(const json& j);
json complex_json(const PathComplex& X);

json face_json(const PathComplex& X, const Face& f);

}  // namespace pcx

#endif
