#include "bbs/orderideal.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace bbs;

namespace {

OrderIdeal planar(std::vector<Exps> t) { return OrderIdeal::validate(2, std::move(t)); }

OrderIdeal lshape() { return planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}}); }

// Degree <= 4 plus the given degree-5 terms.
OrderIdeal top5(const std::vector<Exps>& extra) {
  std::vector<Exps> t;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) t.push_back({i, j});
  t.insert(t.end(), extra.begin(), extra.end());
  return planar(t);
}

}  // namespace

TEST_CASE("validate") {
  CHECK(planar({{0, 0}}).mu() == 1);
  CHECK(lshape().mu() == 5);
  try {
    planar({{0, 0}, {2, 0}});
    FAIL("accepted a non order ideal");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("[1,0]") != std::string::npos);
  }
  CHECK_THROWS_AS(planar({{0, 1}}), DomainError);
  auto O = planar({{1, 0}, {0, 0}, {0, 1}});
  CHECK(O.terms() == std::vector<Exps>{{0, 0}, {0, 1}, {1, 0}});
}

TEST_CASE("border") {
  CHECK(border(planar({{0, 0}})) == std::vector<Exps>{{0, 1}, {1, 0}});
  CHECK(border(make_box({2, 2})) == std::vector<Exps>{{0, 2}, {2, 0}, {1, 2}, {2, 1}});
  CHECK(border(lshape()) == std::vector<Exps>{{1, 1}, {0, 3}, {1, 2}, {2, 1}, {3, 0}});
}

TEST_CASE("rim and interior") {
  auto r = rim_interior_split(make_box({2, 2}));
  CHECK(r.rim == std::vector<std::size_t>{1, 2, 3});
  CHECK(r.interior == std::vector<std::size_t>{0});
  auto s = rim_interior_split(make_simplicial(2, 2));
  CHECK(s.rim.size() == 3);
  CHECK(s.interior.size() == 3);
  CHECK(rim_interior_split(planar({{0, 0}})).interior.empty());
}

TEST_CASE("neighbor pairs of the (2,1)-box") {
  auto pairs = neighbor_pairs(make_box({2, 1}));
  // border: y, xy, x^2
  bool nd = false, ar = false;
  for (auto& p : pairs) {
    if (p.kind == NeighborPair::NextDoor && p.j == 0 && p.j2 == 1 && p.k == 0) nd = true;
    if (p.kind == NeighborPair::AcrossRim && p.j == 1 && p.j2 == 2) ar = true;
  }
  CHECK(nd);
  CHECK(ar);
  auto one = neighbor_pairs(planar({{0, 0}}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == NeighborPair::AcrossRim);
}

TEST_CASE("neighbor pairs match a brute-force scan") {
  for (auto& O : {lshape(), make_box({2, 3}), make_simplicial(3, 1)}) {
    auto B = border(O);
    std::set<std::tuple<int, std::size_t, std::size_t>> scan, got;
    for (std::size_t j = 0; j < B.size(); ++j)
      for (std::size_t j2 = 0; j2 < B.size(); ++j2)
        for (std::size_t k = 0; k < O.n(); ++k) {
          Exps u = B[j];
          ++u[k];
          if (u == B[j2]) scan.insert({0, j, j2});
          for (std::size_t l = 0; l < O.n(); ++l)
            for (std::size_t m = 0; m < O.mu(); ++m) {
              if (k == l || j >= j2) continue;
              Exps a = O.term(m), b = O.term(m);
              ++a[k];
              ++b[l];
              if (a == B[j] && b == B[j2]) scan.insert({1, j, j2});
            }
        }
    for (auto& p : neighbor_pairs(O)) got.insert({p.kind == NeighborPair::NextDoor ? 0 : 1, p.j, p.j2});
    CHECK(scan == got);
  }
}

TEST_CASE("MaxDeg and simplicial recognition") {
  CHECK(is_maxdeg(lshape()));
  CHECK_FALSE(is_simplicial(lshape()));
  auto O = planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {0, 3}});
  CHECK_FALSE(is_maxdeg(O));
  CHECK(is_simplicial(make_simplicial(2, 2)) == 2);
  for (std::size_t mu = 1; mu <= 9; ++mu)
    for (auto& P : planar_order_ideals(mu)) CHECK(is_maxdeg(P) == has_generic_hilbert_function(P));
}

TEST_CASE("constructors") {
  CHECK(make_box({2, 2}).terms() == std::vector<Exps>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  auto b = make_box({2, 3});
  CHECK(b.mu() == 6);
  CHECK(border(b).size() == 5);
  auto s = make_simplicial(3, 1);
  CHECK(s.terms() == std::vector<Exps>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(border(s).size() == 6);
  CHECK_THROWS_AS(make_box({0, 2}), DomainError);
}

TEST_CASE("simplicial counts") {
  auto a = simplicial_counts(2, 2);
  CHECK(std::vector<std::uint64_t>{a.mu, a.nu, a.o_int, a.o_rim, a.c, a.c_int, a.c_rim} ==
        std::vector<std::uint64_t>{6, 4, 3, 3, 24, 12, 12});
  auto b = simplicial_counts(3, 1);
  CHECK(std::vector<std::uint64_t>{b.mu, b.nu, b.o_int, b.o_rim, b.c, b.c_int, b.c_rim} ==
        std::vector<std::uint64_t>{4, 6, 1, 3, 24, 6, 18});
  for (std::size_t n = 1; n <= 4; ++n)
    for (int d = 1; d <= 4; ++d) {
      auto O = make_simplicial(n, d);
      auto c = simplicial_counts(n, d);
      auto ri = rim_interior_split(O);
      std::uint64_t nu = border(O).size();
      CHECK(c.mu == O.mu());
      CHECK(c.nu == nu);
      CHECK(c.o_int == ri.interior.size());
      CHECK(c.o_rim == ri.rim.size());
      CHECK(c.c_int == ri.interior.size() * nu);
      CHECK(is_maxdeg(O));
      int mind = 1 << 20;
      for (auto& t : border(O)) mind = std::min(mind, exps_degree(t));
      CHECK(mind == d + 1);
    }
}

TEST_CASE("plateaus and legs") {
  auto O = planar({{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}});
  auto P = plateaus_and_legs(O);
  REQUIRE(P.size() == 1);
  CHECK(P[0].plateau == std::vector<std::size_t>{1, 2, 3});
  CHECK(P[0].y_leg == std::vector<std::size_t>{0});
  CHECK(P[0].x_leg.empty());
  // Every border term is on a plateau, on a leg, or has an up-neighbor.
  for (std::size_t mu = 1; mu <= 8; ++mu)
    for (auto& Q : planar_order_ideals(mu)) {
      auto B = border(Q);
      std::vector<bool> covered(B.size(), false);
      for (auto& p : plateaus_and_legs(Q)) {
        for (auto j : p.plateau) covered[j] = true;
        for (auto j : p.x_leg) covered[j] = true;
        for (auto j : p.y_leg) covered[j] = true;
      }
      for (std::size_t j = 0; j < B.size(); ++j) {
        bool up = border_index(B, {B[j][0] + 1, B[j][1]}) || border_index(B, {B[j][0], B[j][1] + 1});
        CHECK((covered[j] || up));
      }
    }
  CHECK_THROWS_AS(plateaus_and_legs(make_simplicial(3, 1)), DomainError);
}

TEST_CASE("segments and counting") {
  auto a = planar({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {1, 2}});
  auto sa = segments(a);
  CHECK(sa.s == 1);
  CHECK(sa.lengths == std::vector<int>{2});
  auto b = planar({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {2, 1}});
  auto sb = segments(b);
  CHECK(sb.s == 2);
  CHECK(sb.lengths == std::vector<int>{1, 1});
  auto O = top5({{2, 3}, {3, 2}, {4, 1}});
  auto Op = top5({{1, 4}, {3, 2}, {4, 1}});
  CHECK(O.mu() == 18);
  auto c = maxdeg_counts(O), cp = maxdeg_counts(Op);
  CHECK(c.nu == 7);
  CHECK(c.nu * O.mu() == 126);
  CHECK(cp.nu == 8);
  CHECK(cp.nu * Op.mu() == 144);
  CHECK(c.mu_ok);
  CHECK(cp.mu_ok);
  for (std::size_t mu = 2; mu <= 10; ++mu)
    for (auto& Q : planar_order_ideals(mu)) {
      if (!is_maxdeg(Q) || is_simplicial(Q)) continue;
      auto m = maxdeg_counts(Q);
      CHECK(m.nu_ok);
      CHECK(m.mu_ok);
    }
}

TEST_CASE("border properties on random order ideals") {
  std::mt19937 rng(1);
  for (std::size_t mu = 1; mu <= 9; ++mu)
    for (auto& O : planar_order_ideals(mu)) {
      auto B = border(O);
      std::vector<Exps> all = O.terms();
      for (auto& b : B) CHECK_FALSE(O.contains(b));
      all.insert(all.end(), B.begin(), B.end());
      CHECK_NOTHROW(OrderIdeal::validate(2, all));
      auto perm = O.terms();
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(OrderIdeal::validate(2, perm) == O);
    }
}
