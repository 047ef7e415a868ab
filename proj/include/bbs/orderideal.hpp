#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbs/polyring.hpp"

namespace bbs {

using Exps = std::vector<int>;

// Canonical order: degree first, then lexicographic with x_1 compared first.
bool canonical_less(const Exps& a, const Exps& b);
int exps_degree(const Exps& e);

// Raised for a set of terms that is not an order ideal; `witness` is a missing divisor.
struct OrderIdealError : DomainError {
  OrderIdealError(const std::string& what, Exps w) : DomainError(what), witness(std::move(w)) {}
  Exps witness;
};

class OrderIdeal {
 public:
  OrderIdeal() = default;
  // Validates and canonicalizes; throws DomainError naming the first missing divisor.
  static OrderIdeal validate(std::size_t n, std::vector<Exps> terms);

  std::size_t n() const { return n_; }
  std::size_t mu() const { return t_.size(); }
  const std::vector<Exps>& terms() const { return t_; }
  const Exps& term(std::size_t i) const { return t_[i]; }
  std::optional<std::size_t> index_of(const Exps& e) const;
  bool contains(const Exps& e) const { return index_of(e).has_value(); }
  int max_degree() const;
  bool operator==(const OrderIdeal& o) const { return n_ == o.n_ && t_ == o.t_; }

 private:
  std::size_t n_ = 0;
  std::vector<Exps> t_;
};

std::vector<Exps> border(const OrderIdeal& O);
std::optional<std::size_t> border_index(const std::vector<Exps>& B, const Exps& e);

struct RimInterior {
  std::vector<std::size_t> rim, interior;  // indices into O.terms()
};
RimInterior rim_interior_split(const OrderIdeal& O);

struct NeighborPair {
  enum Kind { NextDoor, AcrossRim } kind;
  // NextDoor: b[j2] = x_k * b[j].  AcrossRim: b[j] = x_k * t_m, b[j2] = x_l * t_m, j < j2.
  std::size_t j, j2, k, l, m;
};
std::vector<NeighborPair> neighbor_pairs(const OrderIdeal& O);

bool is_maxdeg(const OrderIdeal& O);
std::vector<std::size_t> hilbert_function(const OrderIdeal& O);
bool has_generic_hilbert_function(const OrderIdeal& O);
std::optional<int> is_simplicial(const OrderIdeal& O);

OrderIdeal make_box(const std::vector<int>& a);
OrderIdeal make_simplicial(std::size_t n, int d);

struct SimplicialCounts {
  std::uint64_t mu, nu, o_int, o_rim, c, c_int, c_rim;
};
SimplicialCounts simplicial_counts(std::size_t n, int d);

// Planar only. Border indices refer to border(O).
struct PlateauInfo {
  std::vector<std::size_t> plateau;  // left to right: x*b[p_l] = y*b[p_{l+1}]
  std::vector<std::size_t> x_leg, y_leg;
};
std::vector<PlateauInfo> plateaus_and_legs(const OrderIdeal& O);

struct SegmentInfo {
  int d = 0;
  std::vector<std::pair<int, int>> segments;  // runs of x-exponents [i, j] in O_d
  std::vector<int> lengths;
  std::size_t s = 0;
};
SegmentInfo segments(const OrderIdeal& O);

struct MaxDegCounts {
  bool mu_ok = false, nu_ok = false;
  std::size_t mu, mu_formula, nu, nu_formula;
};
MaxDegCounts maxdeg_counts(const OrderIdeal& O);

// All planar order ideals with mu terms, one per partition of mu.
std::vector<OrderIdeal> planar_order_ideals(std::size_t mu);

}  // namespace bbs
