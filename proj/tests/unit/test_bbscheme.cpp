#include "bbs/bbscheme.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace bbs;

namespace {

OrderIdeal planar(std::vector<Exps> t) { return OrderIdeal::validate(2, std::move(t)); }
OrderIdeal lshape() { return planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}}); }
OrderIdeal ex1232() { return planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {0, 3}, {1, 2}}); }

std::set<std::string> names(const BBScheme& S, const std::vector<std::size_t>& v) {
  std::set<std::string> out;
  for (auto i : v) out.insert(S.vars().name(i));
  return out;
}

}  // namespace

TEST_CASE("multiplication matrices") {
  BBScheme one(planar({{0, 0}}));
  auto A = mult_matrix(one, 0);
  CHECK(A[0][0] == one.c(0, 1));
  BBScheme b21(make_box({2, 1}));
  auto Y = mult_matrix(b21, 1);
  CHECK(Y[0][0] == b21.c(0, 0));
  CHECK(Y[1][1] == b21.c(1, 1));
}

TEST_CASE("commutators and natural generators") {
  CHECK(commutator_generators(BBScheme(planar({{0, 0}}))).empty());
  BBScheme L(lshape());
  CHECK(commutator_generators(L).size() == 20);
  BBScheme b23(make_box({2, 3}));
  auto f = parse_polynomial("-c22c41 - c24c61 - c11 + c23", b23.vars());
  bool found = false;
  for (auto& g : natural_generators(b23))
    if (g.poly == f || g.poly == -f) found = true;
  CHECK(found);
}

TEST_CASE("commutator entries are natural generators up to sign") {
  for (auto& O : {make_box({2, 2}), lshape(), make_simplicial(3, 1)}) {
    BBScheme S(O);
    auto nat = natural_generators(S);
    for (auto& c : commutator_generators(S)) {
      bool hit = std::any_of(nat.begin(), nat.end(), [&](const Generator& g) { return g.poly == c.poly || g.poly == -c.poly; });
      CHECK(hit);
    }
  }
}

TEST_CASE("arrow grading") {
  BBScheme L(lshape());
  CHECK(arrow_grading(L).W ==
        std::vector<int>{2, 3, 3, 3, 3, 1, 2, 2, 2, 2, 1, 2, 2, 2, 2, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1});
  CHECK(arrow_grading(BBScheme(planar({{0, 0}}))).W == std::vector<int>{1, 1});
  for (std::size_t mu = 1; mu <= 8; ++mu)
    for (auto& O : planar_order_ideals(mu)) {
      BBScheme S(O);
      auto g = arrow_grading(S);
      for (auto& gen : natural_generators(S)) {
        CHECK(is_arrow_homogeneous(g, gen.poly));
        CHECK(gen.poly.coefficient(Term(S.num_vars())) == 0);
      }
    }
}

TEST_CASE("C0 census") {
  BBScheme L(lshape());
  auto c = c0_census(L);
  CHECK(names(L, c.C0) == std::set<std::string>{"c41", "c51"});
  CHECK(c.count == c.formula);
  CHECK(c0_census(BBScheme(make_simplicial(2, 2))).count == 0);
  auto b = c0_census(BBScheme(make_box({2, 3})));
  CHECK(b.count == 2);
  CHECK(b.formula == 2);
  CHECK_FALSE(b.maxdeg);
}

TEST_CASE("homogeneous matrices commute") {
  BBScheme L(lshape());
  auto H = homogeneous_matrices(L);
  for (std::size_t i = 0; i < L.mu(); ++i)
    for (std::size_t j = 0; j < L.mu(); ++j) {
      PolyBuilder a(L.num_vars()), b(L.num_vars());
      for (std::size_t k = 0; k < L.mu(); ++k) {
        a.add(H[0][i][k] * H[1][k][j]);
        b.add(H[1][i][k] * H[0][k][j]);
      }
      CHECK(a.build() == b.build());
    }
}

TEST_CASE("degree filtered and fiber ideals") {
  BBScheme S(planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {0, 3}}));
  auto G = degree_filtered_ideal(S);
  REQUIRE(G.back().kind == Generator::Filter);
  CHECK(G.back().poly == parse_polynomial("c61", S.vars()));
  CHECK(G.size() == natural_generators(S).size() + 1);
  BBScheme L(lshape());
  auto F = fiber_ideal(L, {0, 0});
  for (auto& g : F) {
    CHECK_FALSE(g.poly.contains_var(L.var(3, 0)));
    CHECK_FALSE(g.poly.contains_var(L.var(4, 0)));
  }
  CHECK_THROWS_AS(fiber_ideal(L, {1}), StructuralError);
}

TEST_CASE("exposed indeterminates") {
  BBScheme b21(make_box({2, 1}));
  auto e21 = exposure(b21);
  CHECK(names(b21, e21.exposed_vars()) == std::set<std::string>{"c13", "c21", "c22", "c23"});
  BBScheme b23(make_box({2, 3}));
  CHECK(names(b23, exposure(b23).exposed_vars()) ==
        std::set<std::string>{"c32", "c34", "c52", "c54", "c62", "c64", "c41", "c43", "c45", "c61", "c63", "c65"});
  BBScheme S(ex1232());
  CHECK(names(S, exposure(S).exposed_vars()) ==
        std::set<std::string>{"c51", "c53", "c54", "c61", "c62", "c63", "c64", "c65", "c71", "c72", "c73", "c74",
                              "c75", "c81", "c82", "c83", "c84", "c85"});
  for (std::size_t mu = 1; mu <= 8; ++mu)
    for (auto& O : planar_order_ideals(mu)) {
      BBScheme T(O);
      auto e = exposure(T);
      for (std::size_t v = 0; v < T.num_vars(); ++v)
        if (e.exposed[v]) CHECK(e.rim[v]);
    }
}

TEST_CASE("cotangent classes") {
  BBScheme S(ex1232());
  auto cc = cotangent_classes(S);
  CHECK(names(S, cc.E0) == std::set<std::string>{"c11", "c12", "c13", "c14", "c15", "c21", "c22", "c23", "c24", "c25",
                                                 "c31", "c32", "c33", "c34", "c35", "c42", "c44", "c45", "c55", "c65"});
  std::set<std::set<std::string>> classes;
  for (auto& k : cc.proper) classes.insert(names(S, k));
  CHECK(classes == std::set<std::set<std::string>>{{"c51", "c85"}, {"c43", "c54"}, {"c41", "c52", "c75"}});
  CHECK(cotangent_dim(S) == 16);
  BBScheme s31(make_simplicial(3, 1));
  CHECK(cotangent_dim(s31) == 18);
  BBScheme s22(make_simplicial(2, 2));
  auto c22 = cotangent_classes(s22);
  // The span of linear parts is spanned by the interior indeterminates.
  auto ri = rim_interior_split(s22.O());
  std::set<std::size_t> interior;
  for (auto i : ri.interior)
    for (std::size_t j = 0; j < s22.nu(); ++j) interior.insert(s22.var(i, j));
  CHECK(std::set<std::size_t>(c22.E0.begin(), c22.E0.end()) == interior);
  CHECK(c22.rank == interior.size());
}
