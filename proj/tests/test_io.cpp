#include "doctest.h"
#include "pcx/corpus.hpp"
#include "pcx/io.hpp"
#include "pcx/matroid.hpp"

#include <cstdio>

using namespace pcx;

TEST_CASE("rationals in JSON") {
  CHECK(rational_json(ratio(6, 4)) == "3/2");
  CHECK(rational_json(Rational(2)) == "2");
  bool inexact = false;
  CHECK(json_rational(json("2/1"), &inexact) == 2);
  CHECK(json_rational(json(3), &inexact) == 3);
  CHECK_FALSE(inexact);
  CHECK(json_rational(json(0.25), &inexact) == ratio(1, 4));
  CHECK(inexact);
  CHECK_THROWS_WITH_AS(json_rational(json::array()), doctest::Contains("ParseError"), Error);
}

TEST_CASE("poset format") {
  auto j = json::parse(R"({"kind":"poset","elements":["a","b","c","d"],"covers":[["b","c"],["c","d"]],
                           "psi":{"a":"2/1","b":3,"c":1,"d":0.5}})");
  PosetInput in = parse_poset(j);
  CHECK(in.poset.size() == 4);
  CHECK(in.poset.less(in.poset.index("b"), in.poset.index("d")));
  CHECK_FALSE(in.poset.comparable(in.poset.index("a"), in.poset.index("b")));
  REQUIRE(in.psi.has_value());
  CHECK(in.psi->at("a") == 2);
  CHECK(in.psi->at("d") == ratio(1, 2));
  CHECK(in.inexact);

  json back = poset_json(in.poset, &*in.psi);
  PosetInput again = parse_poset(json::parse(back.dump()));
  CHECK(again.poset.labels() == in.poset.labels());
  CHECK(again.poset.cover_pairs() == in.poset.cover_pairs());
  CHECK(*again.psi == *in.psi);
  CHECK_FALSE(again.inexact);

  CHECK_THROWS_WITH_AS(parse_poset(json::parse(R"({"kind":"poset","elements":["a","b"],"covers":[["a","b"],["b","a"]]})")),
                       doctest::Contains("CycleDetected"), Error);
  CHECK_THROWS_WITH_AS(parse_poset(json::parse(R"({"kind":"poset","elements":["a"],"psi":{"z":1}})")),
                       doctest::Contains("UnknownLabel"), Error);
  CHECK_THROWS_WITH_AS(parse_poset(json::parse(R"({"kind":"matroid"})")), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_poset(json::parse(R"({"kind":"poset"})")), doctest::Contains("ParseError"), Error);
}

TEST_CASE("matroid formats") {
  Matroid k4 = parse_matroid(
      json::parse(R"({"kind":"matroid","format":"graphic","vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})"));
  CHECK(k4.rank() == 3);
  CHECK(hrw_sequence(k4) == std::vector<Rational>{1, 5, 6});
  Matroid u = parse_matroid(json::parse(R"({"kind":"matroid","format":"bases","ground":3,"bases":[[0,1],[0,2],[1,2]]})"));
  CHECK(u.rank() == 2);
  CHECK(u.bases().size() == 3);
  CHECK_THROWS_WITH_AS(parse_matroid(json::parse(R"({"kind":"matroid","format":"bases","ground":2,"bases":[[0,5]]})")),
                       doctest::Contains("IndexOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(parse_matroid(json::parse(R"({"kind":"matroid","format":"vector"})")),
                       doctest::Contains("ParseError"), Error);
}

TEST_CASE("complex format round trip") {
  auto j = json::parse(R"({"kind":"complex","d":3,"parts":[["F1","G1"],["F2","G2"],["F3","G3"]],
    "facets":[{"v":["F1","F2","F3"],"w":"1/4"},{"v":["G1","F2","F3"],"w":"3/4"},{"v":["G1","G2","G3"]}]})");
  PathComplex X = parse_complex(j);
  CHECK(X.d() == 3);
  CHECK(X.num_facets() == 3);
  CHECK(X.exact());
  CHECK(X.total_weight() == 2);
  PathComplex Y = parse_complex(json::parse(complex_json(X).dump()));
  CHECK(Y.num_facets() == X.num_facets());
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    CHECK(Y.face_label(Y.facet(f)) == X.face_label(X.facet(f)));
    CHECK(Y.weight(f) == X.weight(f));
  }
  auto jf = j;
  jf["facets"][0]["w"] = 0.1;
  CHECK_FALSE(parse_complex(jf).exact());
  auto bad = j;
  bad["facets"][0]["v"] = {"F1", "F2", "Q"};
  CHECK_THROWS_WITH_AS(parse_complex(bad), doctest::Contains("UnknownLabel"), Error);
  bad = j;
  bad["d"] = 2;
  CHECK_THROWS_WITH_AS(parse_complex(bad), doctest::Contains("ParseError"), Error);
}

TEST_CASE("files") {
  CHECK_THROWS_WITH_AS(load_json("/nonexistent/x.json"), doctest::Contains("IoError"), Error);
  std::string path = "test_io_tmp.json";
  save_text(path, "{ not json");
  CHECK_THROWS_WITH_AS(load_json(path), doctest::Contains("ParseError"), Error);
  save_text(path, poset_json(chain_poset(3)).dump());
  CHECK(parse_poset(load_json(path)).poset.size() == 3);
  std::remove(path.c_str());
}

TEST_CASE("corpus") {
  CorpusOptions opt;
  auto posets = corpus_posets(opt);
  CHECK(posets.size() >= 200);
  for (const Poset& p : posets) {
    CHECK(p.size() >= 3);
    CHECK(p.size() <= 7);
  }
  std::mt19937_64 rng(3);
  for (const Poset& p : all_posets(4))
    for (int k = 0; k < 5; ++k) CHECK(is_order_reversing(p, random_order_reversing(p, rng)));
  CorpusInstance c = weighted_instance("x", chain_poset(3), {{"a", 1}, {"b", 1}, {"c", 1}});
  CHECK(c.X.num_facets() == 1);
}
