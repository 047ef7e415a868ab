#include "bbs/polyring.hpp"

#include <random>

#include "doctest.h"

using namespace bbs;

namespace {

VarTable xyz() { return VarTable({"x", "y", "z"}); }

Polynomial P(const char* s, const VarTable& vt) { return parse_polynomial(s, vt); }

Polynomial random_poly(std::mt19937& rng, std::size_t n, int terms, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(-5, 5);
  PolyBuilder b(n);
  for (int k = 0; k < terms; ++k) {
    std::vector<Term::Exp> ex(n);
    for (auto& v : ex) v = static_cast<Term::Exp>(e(rng));
    Rational q(c(rng), 1 + std::abs(c(rng)));
    q.canonicalize();
    b.add(Term(ex), q);
  }
  return b.build();
}

}  // namespace

TEST_CASE("parse and print round trip") {
  auto vt = xyz();
  auto f = P("3x^2y - 1/2z + 7", vt);
  CHECK(f.size() == 3);
  CHECK(f.to_string(vt) == "3*x^2*y - 1/2*z + 7");
  CHECK(P(f.to_string(vt).c_str(), vt) == f);
  CHECK_THROWS_AS(P("3q", vt), DomainError);
}

TEST_CASE("concatenated variable names parse") {
  VarTable vt({"c21", "c41", "c51", "c2"});
  auto f = P("-c21^2c41^3c51 + 2c2c21", vt);
  CHECK(f.size() == 2);
  CHECK(f.coefficient(Term(std::vector<Term::Exp>{1, 0, 0, 1})) == 2);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(7);
  for (int it = 0; it < 30; ++it) {
    auto f = random_poly(rng, 3, 5, 3), g = random_poly(rng, 3, 5, 3), h = random_poly(rng, 3, 4, 2);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f - f == Polynomial(3));
    CHECK(Polynomial::from_terms(3, f.terms()) == f);
  }
}

TEST_CASE("compare_terms") {
  auto lex = OrderingMatrix::lex(2);
  CHECK(compare_terms(lex, Term({2, 0}), Term({1, 1})) == Cmp::Greater);
  CHECK(compare_terms(lex, Term({1, 1}), Term({1, 1})) == Cmp::Equal);
  auto drl = OrderingMatrix::degrevlex(3);
  CHECK(drl.is_term_ordering());
  CHECK(compare_terms(drl, Term({0, 2, 0}), Term({1, 0, 1})) == Cmp::Greater);
  CHECK_THROWS_AS(compare_terms(drl, Term({1, 0}), Term({1, 0})), StructuralError);
  CHECK_FALSE(OrderingMatrix({{1, -1}, {0, 1}}).is_term_ordering());
}

TEST_CASE("orderings are multiplicative") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 3), w(0, 4);
  for (int it = 0; it < 200; ++it) {
    std::vector<std::int64_t> row(4);
    for (auto& v : row) v = w(rng);
    auto M = OrderingMatrix::with_tiebreak({row}, 4);
    auto rnd = [&] {
      std::vector<Term::Exp> x(4);
      for (auto& v : x) v = static_cast<Term::Exp>(e(rng));
      return Term(x);
    };
    Term t = rnd(), u = rnd(), v = rnd();
    CHECK(M.compare(t, u) == M.compare(t * v, u * v));
    CHECK(M.compare(t, u) == -M.compare(u, t));
  }
}

TEST_CASE("leading_term with a dominant weight") {
  VarTable vt({"c21", "c43", "c51"});
  auto f = P("c21 - c43c51", vt);
  auto M = OrderingMatrix::with_tiebreak({{5, 0, 0}}, 3);
  CHECK(leading_term(M, f).first == Term::var(3, 0));
  CHECK_THROWS_AS(leading_term(M, Polynomial(3)), DomainError);
}

TEST_CASE("substitute") {
  VarTable vt({"c21", "c31", "c41"});
  SubstitutionMap s(3);
  s.assign(0, P("c41 + 1", vt));
  CHECK(substitute(P("c21^2 + c31", vt), s) == P("c41^2 + 2c41 + c31 + 1", vt));
  SubstitutionMap z(3);
  z.assign(0, Polynomial(3));
  CHECK(substitute(P("c21", vt), z).is_zero());
  std::mt19937 rng(11);
  SubstitutionMap r(3);
  r.assign(1, random_poly(rng, 3, 3, 2));
  for (int it = 0; it < 10; ++it) {
    auto f = random_poly(rng, 3, 4, 2), g = random_poly(rng, 3, 4, 2);
    CHECK(substitute(f * g, r) == substitute(f, r) * substitute(g, r));
  }
}

TEST_CASE("coherentize") {
  VarTable vt({"z1", "z2", "a", "b"});
  std::vector<Polynomial> F{P("z1 - a", vt), P("z2 - z1b", vt)};
  std::vector<Rational> w{1, 2, 0, 0};
  auto s = coherentize(F, {0, 1}, w);
  CHECK(s.is_coherent());
  CHECK(s.image(0) == P("a", vt));
  CHECK(s.image(1) == P("ab", vt));
  CHECK_THROWS_AS(coherentize({P("z1 - z2", vt)}, {0}, w), DomainError);
}

TEST_CASE("groebner basis basics") {
  VarTable vt({"x", "y"});
  auto G = groebner_basis(OrderingMatrix::lex(2), {P("x - 1", vt), P("y - x", vt)});
  REQUIRE(G.size() == 2);
  CHECK(G[0] == P("y - 1", vt));
  CHECK(G[1] == P("x - 1", vt));
  auto vt3 = xyz();
  std::vector<Polynomial> F{P("x^2 - y", vt3), P("xy - z", vt3), P("y^2 - xz", vt3)};
  auto M = OrderingMatrix::degrevlex(3);
  auto H = groebner_basis(M, F);
  for (auto& f : F) CHECK(normal_form(M, f, H).is_zero());
  CHECK(groebner_basis(M, F) == H);
  for (std::size_t i = 0; i < H.size(); ++i) {
    std::vector<Polynomial> rest;
    for (std::size_t j = 0; j < H.size(); ++j)
      if (j != i) rest.push_back(H[j]);
    CHECK(normal_form(M, H[i], rest) == H[i]);
  }
  CHECK(ideal_equal(F, H));
  CHECK_FALSE(ideal_contains(F, P("x", vt3)));
}

TEST_CASE("groebner budget") {
  auto vt = xyz();
  GroebnerOptions opt;
  opt.step_budget = 1;
  CHECK_THROWS_AS(groebner_basis(OrderingMatrix::degrevlex(3), {P("x^2 - y", vt), P("xy - z", vt), P("y^2 - xz", vt)}, opt),
                  BudgetExceeded);
}

TEST_CASE("lp_realizable") {
  auto w = lp_realizable({{Term::var(2, 0), {Term(2)}}}, 2);
  REQUIRE(w);
  CHECK((*w)[0] >= 1);
  CHECK_FALSE(lp_realizable({{Term::var(2, 0), {Term::var(2, 0, 2)}}}, 2));
  // z beats ab while a beats z
  CHECK_FALSE(lp_realizable({{Term::var(3, 0), {Term({0, 1, 1})}}, {Term::var(3, 1), {Term::var(3, 0)}}}, 3));
}

TEST_CASE("lp soundness against random weights") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(0, 2);
  for (int it = 0; it < 40; ++it) {
    std::vector<WeightConstraint> cs;
    for (int k = 0; k < 3; ++k) {
      WeightConstraint c{Term::var(4, static_cast<std::size_t>(k)), {}};
      for (int l = 0; l < 2; ++l) {
        std::vector<Term::Exp> x(4);
        for (auto& v : x) v = static_cast<Term::Exp>(e(rng));
        c.losers.emplace_back(x);
      }
      cs.push_back(c);
    }
    auto w = lp_realizable(cs, 4);
    auto ok = [&](const std::vector<double>& wt) {
      for (auto& c : cs)
        for (auto& l : c.losers) {
          double s = 0;
          for (std::size_t i = 0; i < 4; ++i) s += wt[i] * (c.winner[i] - l[i]);
          if (s <= 0) return false;
        }
      return true;
    };
    if (w) {
      std::vector<double> wd;
      for (auto& q : *w) wd.push_back(q.get_d());
      CHECK(ok(wd));
    } else {
      std::uniform_real_distribution<double> u(0, 10);
      for (int t = 0; t < 300; ++t) {
        std::vector<double> wd(4);
        for (auto& v : wd) v = u(rng);
        CHECK_FALSE(ok(wd));
      }
    }
  }
}
