#include "doctest.h"
#include "pcx/lorentzian.hpp"
#include "pcx/matroid.hpp"

#include <cmath>
#include <random>

using namespace pcx;

namespace {

PathComplex poset_complex(const Poset& p, const std::map<std::string, Rational>& psi) {
  RankedLattice L = birkhoff_lattice(p);
  auto w = lift_element_weights(L, psi);
  return chain_complex(L, &w);
}

PathComplex boolean_complex(int n) { return chain_complex(boolean_lattice(n)); }

PathComplex k4_complex() {
  return chain_complex(flat_lattice(Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
}

int vertex_by_label(const PathComplex& X, const std::string& l) {
  for (int v = 0; v < X.num_vertices(); ++v)
    if (X.vertex(v).label == l) return v;
  FAIL("missing vertex " << l);
  return -1;
}

Face with(const PathComplex& X, std::initializer_list<int> vs) {
  Face f = X.empty_face();
  for (int v : vs) f[X.vertex(v).part] = v;
  return f;
}

void require_pass(const IdentityReport& r) {
  for (const auto& w : r.witnesses) INFO(w);
  for (const auto& [k, n] : r.violations) {
    INFO(k);
    CHECK(n == 0);
  }
}

}  // namespace

TEST_CASE("alpha and beta vectors of the trivial and s-rank systems") {
  PathComplex X = boolean_complex(4);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  RVec a = alpha_vector(ctx), b = beta_vector(ctx);
  for (int v = 0; v < X.num_vertices(); ++v) {
    int r = X.vertex(v).part + 1;
    CHECK(a[v] == ratio(r, 4));
    CHECK(b[v] == ratio(4 - r, 4));
  }

  PathComplex Y = boolean_complex(2);
  Rational s = 2;
  PolyContext cs(Y, AlphaBeta::s_rank(Y, s));
  RVec as = alpha_vector(cs);
  for (int v = 0; v < Y.num_vertices(); ++v) CHECK(as[v] == 1 / (s + 1 / s));

  PathComplex K = k4_complex();
  PolyContext ck(K, AlphaBeta::from_coloring(K, Coloring::cardinality()));
  RVec ak = alpha_vector(ck);
  for (int v = 0; v < K.num_vertices(); ++v) CHECK(ak[v] == ratio(popcount(K.vertex(v).flat), 6));
  // alpha_K^L(F) = |F \ K| / |L \ K| inside an interval
  for (int L = 0; L < K.num_vertices(); ++L) {
    if (K.vertex(L).part != 1) continue;
    RVec in = alpha_vector(ck, BOTTOM, L);
    for (int F = 0; F < K.num_vertices(); ++F) {
      bool below = K.vertex(F).part == 0 && subset(K.vertex(F).flat, K.vertex(L).flat);
      CHECK(in[F] == (below ? ratio(popcount(K.vertex(F).flat), popcount(K.vertex(L).flat)) : Rational(0)));
    }
  }
}

TEST_CASE("pi maps subtract alpha below and beta above") {
  PathComplex X = boolean_complex(3);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  int F = vertex_by_label(X, "{a,b}");
  RVec t(X.num_vertices());
  for (int v = 0; v < X.num_vertices(); ++v) t[v] = v + 1;
  RVec u = ctx.pi_apply(X.empty_face(), F, t);
  for (int H : X.part(0)) {
    bool below = subset(X.vertex(H).flat, X.vertex(F).flat);
    if (below) CHECK(u[H] == t[H] - t[F] / 2);
  }
  int G = vertex_by_label(X, "{a}");
  u = ctx.pi_apply(X.empty_face(), G, t);
  for (int H : X.part(1))
    if (subset(X.vertex(G).flat, X.vertex(H).flat)) CHECK(u[H] == t[H] - t[G] / 2);
  int other = vertex_by_label(X, "{c}");
  CHECK_THROWS_WITH_AS(ctx.pi_apply(with(X, {F}), other, t), doctest::Contains("NotInLink"), Error);
}

TEST_CASE("p on facets is the weight and on codim-1 faces is linear") {
  Poset p = Poset::build({"a", "b", "c"}, {{"b", "c"}});
  PathComplex X = poset_complex(p, {{"a", 3}, {"b", 2}, {"c", 1}});
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  std::mt19937_64 rng(3);
  RVec t(X.num_vertices());
  for (auto& x : t) x = ratio(1 + rng() % 7, 1 + rng() % 3);
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    Face tau = X.facet_face(f);
    CHECK(ctx.eval_p(tau, t) == X.weight(f));
    for (int i = 0; i < X.d(); ++i) {
      Face sigma = tau;
      sigma[i] = -1;
      Rational want = 0;
      for (int F : ctx.link_vertices(sigma)) {
        Face g = sigma;
        g[i] = F;
        want += t[F] * X.face_weight(g);
      }
      CHECK(ctx.eval_p(sigma, t) == want);
    }
  }
}

TEST_CASE("derivative, Euler and homogeneity identities hold exactly") {
  std::vector<PathComplex> cases = {boolean_complex(3), boolean_complex(4), k4_complex()};
  for (auto& X : cases) {
    Coloring c = X.num_vertices() == 14 ? Coloring::cardinality() : Coloring::trivial();
    PolyContext ctx(X, AlphaBeta::from_coloring(X, c));
    IdentityReport r = check_derivatives(ctx, {10, 4, 0});
    require_pass(r);
    CHECK(r.checked["euler"] >= 10);
    CHECK(r.checked["derivative_identity"] >= 10);
    CHECK(r.checked["homogeneity"] == 1);
  }
}

TEST_CASE("Hessian of codim-2 links matches basis evaluations") {
  Poset p = Poset::build({"a", "b", "c"}, {{"b", "c"}});
  PathComplex X = poset_complex(p, {{"a", 1}, {"b", 2}, {"c", 1}});
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  HessianReport h = hessian_quadratic(ctx, X.empty_face());
  CHECK(h.agree);
  REQUIRE(h.vertices.size() == 4);
  // H(F,F) = 2 p(e_F): on {a} the polynomial is a^2 b t^2 / 4 with a = 1, b = 2
  int a = vertex_by_label(X, "{a}");
  for (std::size_t i = 0; i < 4; ++i)
    if (h.vertices[i] == a) CHECK(h.matrix[i][i] == -1);

  PathComplex B = boolean_complex(4);
  PolyContext cb(B, AlphaBeta::s_rank(B, ratio(3, 2)));
  IdentityReport r = check_hessians(cb, 0);
  require_pass(r);
  CHECK(r.checked["hessian_rank2"] > 0);
}

TEST_CASE("cone point, alpha and beta in the closed cone") {
  PathComplex X = boolean_complex(3);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  ConeVector c = cone_point(ctx, X.empty_face());
  for (int v = 0; v < X.num_vertices(); ++v) CHECK(c.v[v] == ratio(2, 9));
  CHECK(c.positive);
  CHECK_FALSE(c.fallback_s1);
  RVec a = alpha_vector(ctx), b = beta_vector(ctx);
  CHECK(is_pi_nonnegative(ctx, X.empty_face(), a, false));
  CHECK_FALSE(is_pi_nonnegative(ctx, X.empty_face(), a, true));
  CHECK(is_pi_nonnegative(ctx, X.empty_face(), b, false));
  CHECK_FALSE(is_pi_nonnegative(ctx, X.empty_face(), b, true));
  RVec neg = c.v;
  neg[0] = -1;
  CHECK_FALSE(is_pi_nonnegative(ctx, X.empty_face(), neg, false));

  PathComplex P = chain_complex(subspace_lattice(3, 2));
  PolyContext cp(P, AlphaBeta::s_rank(P, 2));
  ConeVector cs = cone_point(cp, P.empty_face());
  CHECK(cs.fallback_s1);
  CHECK(cs.positive);
  require_pass(check_cones(cp));
  IdentityReport mono = check_cone_monotonicity(P, {1, ratio(5, 4), ratio(3, 2), 2, 3}, 20, 9);
  require_pass(mono);
  CHECK(mono.checked["cone_monotone"] == 80);
}

TEST_CASE("mu_alpha_beta and mixed derivatives") {
  PathComplex X = boolean_complex(4);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  for (std::size_t f = 0; f < X.num_facets(); ++f) CHECK(mu_alpha_beta(ctx, X.facet_face(f)) == X.weight(f));
  Face gap = X.facet_face(0);
  gap[1] = -1;
  CHECK_THROWS_WITH_AS(mu_alpha_beta(ctx, gap), doctest::Contains("NotContiguous"), Error);
  // mu_ab({F}) for F of rank 1 in B_4: sum over the 6 facets above F of prod_{k>1} alpha = (1/3)(1/2)... per flag
  int F = vertex_by_label(X, "{a}");
  Rational want = 0;
  // alpha_{tau_{k-1}}^{1^}(tau_k) = 1/(4 - k + 1) for trivial types, k = 2, 3
  want = 6 * ratio(1, 3) * ratio(1, 2);
  CHECK(mu_alpha_beta(ctx, with(X, {F})) == want);
  IdentityReport r = check_mixed_derivatives(ctx, {10, 1, 0});
  require_pass(r);
  CHECK(r.checked["mixed_derivative"] > 0);
  CHECK(r.checked["mixed_derivative_zero"] > 0);

  PathComplex K = k4_complex();
  PolyContext ck(K, AlphaBeta::from_coloring(K, Coloring::cardinality()));
  require_pass(check_mixed_derivatives(ck, {10, 1, 0}));
}

TEST_CASE("polarization agrees with mixed derivatives") {
  PathComplex X = boolean_complex(3);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  RVec a = alpha_vector(ctx), b = beta_vector(ctx), zero(X.num_vertices(), 0);
  Face e = X.empty_face();
  CHECK(polarization(ctx, e, {b, a}) == mixed_derivative(ctx, e, zero, b, 1, a, 1));
  CHECK(polarization(ctx, e, {a, a}) == mixed_derivative(ctx, e, zero, a, 2, a, 0));
  CHECK_THROWS_WITH_AS(polarization(ctx, e, {a}), doctest::Contains("InvalidArgument"), Error);
}

TEST_CASE("c_k sequences") {
  for (int n : {3, 4, 5}) {
    PathComplex X = boolean_complex(n);
    SequenceReport s = ck_sequence(X, Coloring::trivial());
    int d = X.d();
    CHECK(s.expressions_agree);
    CHECK(s.closed_agrees);
    CHECK(s.polynomial_identity);
    CHECK(s.certified);
    CHECK(s.log_concave);
    // c_k k! (d-k)! is constant: c_k is proportional to binom(d, k)
    auto norm = [&](int k) {
      Rational f = s.c[k];
      for (int i = 2; i <= k; ++i) f *= i;
      for (int i = 2; i <= d - k; ++i) f *= i;
      return f;
    };
    for (int k = 1; k <= d; ++k) CHECK(norm(k) == norm(0));
  }

  PathComplex K = k4_complex();
  SequenceReport s = ck_sequence(K, Coloring::cardinality());
  REQUIRE(s.c.size() == 3);
  CHECK(s.c[1] / s.c[0] == 5);
  CHECK(s.c[2] / s.c[0] == 6);
  CHECK(s.expressions_agree);
  CHECK(s.closed_agrees);
  CHECK(s.polynomial_identity);

  // large M: c_k k!(d-k)! tends to the counts of lmin(A) = k+1
  Poset cp = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  PathComplex X = chain_complex(birkhoff_lattice(cp));
  Mask A = cp.mask_of({"a", "d"});
  SequenceReport sp = ck_sequence(X, Coloring::spiked(A, 100000000), false);
  LminReport lm = lmin_distribution(cp, A);
  int d = X.d();
  std::vector<double> got, want;
  double gs = 0, ws = 0;
  for (int k = 0; k <= d; ++k) {
    Rational f = sp.c[k];
    for (int i = 2; i <= k; ++i) f *= i;
    for (int i = 2; i <= d - k; ++i) f *= i;
    got.push_back(to_double(f));
    want.push_back(to_double(lm.distribution[k]));
    gs += got.back();
    ws += want.back();
  }
  for (int k = 0; k <= d; ++k) CHECK(got[k] / gs == doctest::Approx(want[k] / ws).epsilon(1e-5));
  CHECK(sp.closed_agrees);
  CHECK(sp.expressions_agree);
}

TEST_CASE("ell vectors: relations, C_phi and mixed derivatives") {
  PathComplex X = boolean_complex(4);
  PolyContext ctx(X, AlphaBeta::from_coloring(X, Coloring::trivial()));
  EllSystem E = ell_system(ctx);
  CHECK(c_phi(E, {}, 3) == ratio(1, 4));
  CHECK(c_phi(E, {1, 2, 3}, 3) == 1);
  CHECK(c_phi(E, {2}, 3) == ratio(1, 2) * ratio(1, 2));
  // f <= m branch on T_1 with m = 2: phi(0,1)/phi(0,4) * phi(2,4) = 1/2
  RVec l2 = ell_vector(ctx, E, 2);
  for (int v : X.part(0)) CHECK(l2[v] == ratio(1, 2));
  for (int v : X.part(1)) CHECK(l2[v] == 1);
  for (int v : X.part(2)) CHECK(l2[v] == ratio(1, 2));
  CHECK_THROWS_WITH_AS(ell_vector(ctx, E, 0), doctest::Contains("InvalidArgument"), Error);

  IdentityReport rel = check_ell_relations(ctx, 0);
  require_pass(rel);
  CHECK(rel.checked["ell_relation_equal"] > 0);
  CHECK(rel.checked["ell_relation_above"] > 0);
  CHECK(rel.checked["ell_relation_below"] > 0);
  IdentityReport mix = check_ell_mixed(ctx, {10, 2, 0});
  require_pass(mix);
  CHECK(mix.checked["ell_hessian_support"] > 0);

  PathComplex P = chain_complex(subspace_lattice(3, 2));
  PolyContext cs(P, AlphaBeta::s_rank(P, ratio(3, 2)));
  require_pass(check_ell_relations(cs, 0));
  require_pass(check_ell_mixed(cs, {5, 2, 0}));

  PathComplex K = k4_complex();
  PolyContext ck(K, AlphaBeta::from_coloring(K, Coloring::cardinality()));
  require_pass(check_ell_relations(ck, 0));
  CHECK_THROWS_WITH_AS(check_ell_mixed(ck), doctest::Contains("UnsupportedSystem"), Error);

  EllSystem bad = E;
  bad.phi = [](const Rational& a, const Rational& b) { return Rational((b - a) * (b - a)); };
  CHECK_THROWS_WITH_AS(check_phi2(ctx, bad), doctest::Contains("Phi2ConditionFailed"), Error);
}

TEST_CASE("identity suites pass and a corrupted alpha is caught") {
  std::mt19937_64 rng(21);
  std::vector<std::pair<PathComplex, AlphaBeta>> cases;
  PathComplex B = boolean_complex(4);
  cases.emplace_back(B, AlphaBeta::from_coloring(B, Coloring::trivial()));
  PathComplex K = k4_complex();
  cases.emplace_back(K, AlphaBeta::from_coloring(K, Coloring::cardinality()));
  PathComplex P = chain_complex(subspace_lattice(3, 2));
  cases.emplace_back(P, AlphaBeta::s_rank(P, ratio(5, 4)));
  Poset p = Poset::build({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}});
  PathComplex D = poset_complex(p, {{"a", 3}, {"b", 2}, {"c", 1}, {"d", 2}});
  cases.emplace_back(D, AlphaBeta::from_coloring(D, Coloring::trivial()));
  for (auto& [X, ab] : cases) {
    PolyContext ctx(X, ab);
    IdentityReport r = identity_suite(ctx, {5, 1, 60});
    require_pass(r);
    CHECK(r.checked["identity1"] > 0);
    CHECK(r.checked["pi_commutativity"] > 0);
  }

  AlphaBeta bad = AlphaBeta::from_coloring(B, Coloring::trivial());
  int G = vertex_by_label(B, "{a,b}"), H = vertex_by_label(B, "{a}");
  bad.override_alpha(BOTTOM, G, H, ratio(1, 3));
  PolyContext cb(B, bad);
  IdentityReport ids = check_alpha_beta_identities(cb);
  CHECK_FALSE(ids.pass());
  CHECK_FALSE(ids.witnesses.empty());
  IdentityReport com = check_commutativity(cb);
  CHECK_FALSE(com.pass());
  CHECK_FALSE(com.witnesses.empty());
}

TEST_CASE("Lorentzian certificates") {
  std::mt19937_64 rng(5);
  Poset p = Poset::build({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "d"}});
  PathComplex D = poset_complex(p, {{"a", 1}, {"b", 1}, {"c", ratio(1, 2)}, {"d", ratio(1, 3)}});
  Certificate c = lorentzian_certificate(D, AlphaBeta::from_coloring(D, Coloring::trivial()));
  CHECK(c.verdict == "LORENTZIAN");
  CHECK(c.connected);
  CHECK(c.cone_ok);
  CHECK(c.quadratics.pass);

  PathComplex P = chain_complex(subspace_lattice(3, 2));
  CHECK(lorentzian_certificate(P, AlphaBeta::s_rank(P, ratio(5, 4))).granted);

  PathComplex K = k4_complex();
  Certificate ck = lorentzian_certificate(K, AlphaBeta::from_coloring(K, Coloring::cardinality()));
  CHECK(ck.granted);
  CHECK_FALSE(ck.quadratics.records.empty());
  for (const auto& q : ck.quadratics.records) CHECK(q.positive_count <= 1);

  Poset cp = Poset::build({"a", "b", "c", "d"}, {{"b", "c"}, {"c", "d"}});
  PathComplex X = chain_complex(birkhoff_lattice(cp));
  Certificate bad = lorentzian_certificate(X, AlphaBeta::from_coloring(X, Coloring::spiked(cp.mask_of({"a", "d"}), 1000)));
  CHECK(bad.verdict == "NOT_CERTIFIED");
  CHECK(bad.connected);
  CHECK(bad.cone_ok);
  CHECK_FALSE(bad.quadratics.pass);
}
