#pragma once

#include <map>
#include <string>
#include <vector>

#include "bbs/orderideal.hpp"
#include "bbs/polyring.hpp"

namespace bbs {

class BBScheme {
 public:
  explicit BBScheme(OrderIdeal O);

  const OrderIdeal& O() const { return O_; }
  const std::vector<Exps>& B() const { return B_; }
  std::size_t n() const { return O_.n(); }
  std::size_t mu() const { return O_.mu(); }
  std::size_t nu() const { return B_.size(); }
  std::size_t num_vars() const { return mu() * nu(); }
  const VarTable& vars() const { return vt_; }

  // 0-based (i, j) for c_{i+1, j+1}.
  std::size_t var(std::size_t i, std::size_t j) const { return i * nu() + j; }
  std::size_t row_of(std::size_t v) const { return v / nu(); }
  std::size_t col_of(std::size_t v) const { return v % nu(); }
  Polynomial c(std::size_t i, std::size_t j) const { return Polynomial::variable(num_vars(), var(i, j)); }

  // Where x_k * t_i lands: an O index or a border index.
  struct Shift {
    bool in_border;
    std::size_t index;
  };
  Shift shift(std::size_t k, std::size_t i) const { return shifts_[k][i]; }

 private:
  OrderIdeal O_;
  std::vector<Exps> B_;
  VarTable vt_;
  std::vector<std::vector<Shift>> shifts_;
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Column j holds x_r * t_j expressed in the O basis.
PolyMatrix mult_matrix(const BBScheme& S, std::size_t r);

struct Generator {
  enum Kind { Commutator, ND, AR, Filter } kind;
  // Commutator: (r, s, row, col).  ND/AR: (j, j2, m, -).  Filter: (v, -, -, -).  All 0-based.
  std::size_t a, b, c, d;
  Polynomial poly;
  std::string label() const;
};
using GeneratorCatalog = std::vector<Generator>;

GeneratorCatalog commutator_generators(const BBScheme& S);
GeneratorCatalog natural_generators(const BBScheme& S);
std::vector<Polynomial> polys(const GeneratorCatalog& G);

struct ArrowGrading {
  std::vector<std::vector<int>> A;  // n rows, one column per variable
  std::vector<int> W;
};
ArrowGrading arrow_grading(const BBScheme& S);
bool is_arrow_homogeneous(const ArrowGrading& g, const Polynomial& f);

// Variables c_ij with deg t_i = deg b_j = max degree of O.
struct C0Census {
  bool maxdeg = false;
  std::vector<std::size_t> C0;
  std::size_t count = 0;
  std::size_t formula = 0;
};
C0Census c0_census(const BBScheme& S);

std::vector<PolyMatrix> homogeneous_matrices(const BBScheme& S);
GeneratorCatalog degree_filtered_ideal(const BBScheme& S);
// Gamma assigns a value to each variable of C0 in c0_census order.
GeneratorCatalog fiber_ideal(const BBScheme& S, const std::vector<Rational>& gamma);

struct ExposureInfo {
  std::vector<bool> exposed;
  std::vector<int> direction;  // witnessing x_l for exposed variables, -1 otherwise
  std::vector<bool> rim;
  std::vector<std::size_t> exposed_vars() const;
  std::vector<std::size_t> non_exposed_vars() const;
};
ExposureInfo exposure(const BBScheme& S);
// Border terms b = x_k * t with t in O.
std::vector<std::size_t> exposed_border_terms(const BBScheme& S, std::size_t k);

Polynomial linear_part(const Polynomial& f);

struct CotangentClasses {
  std::vector<std::size_t> E0;
  std::vector<std::vector<std::size_t>> proper;
  std::vector<std::size_t> singletons;
  std::vector<std::size_t> basic;
  std::size_t rank = 0;
  // class_of[v]: 0 for E0, k >= 1 for proper class k, -1 for singletons.
  std::vector<int> class_of;
};
CotangentClasses cotangent_classes(const BBScheme& S);
std::size_t cotangent_dim(const BBScheme& S);

}  // namespace bbs
