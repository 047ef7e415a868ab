#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bbs {

using Rational = mpq_class;

struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown when a Buchberger or search budget runs out.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

class Term {
 public:
  using Exp = std::uint16_t;

  Term() = default;
  explicit Term(std::size_t arity) : e_(arity, 0) {}
  explicit Term(std::vector<Exp> e);
  static Term var(std::size_t arity, std::size_t i, unsigned power = 1);

  std::size_t arity() const { return e_.size(); }
  unsigned degree() const { return deg_; }
  Exp operator[](std::size_t i) const { return e_[i]; }
  std::vector<Exp> exps() const { return {e_.begin(), e_.end()}; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned v);
  Term operator*(const Term& o) const;
  bool divides(const Term& o) const;
  // Requires divides(o); returns o / *this.
  Term quotient_of(const Term& o) const;
  Term lcm(const Term& o) const;
  bool coprime(const Term& o) const;

  bool operator==(const Term& o) const { return e_ == o.e_; }
  bool operator!=(const Term& o) const { return e_ != o.e_; }
  std::size_t hash() const;

 private:
  // Inline storage avoids a heap allocation per term in the common case.
  boost::container::small_vector<Exp, 32> e_;
  unsigned deg_ = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Graded reverse lexicographic comparison in VarTable order.
int degrevlex_cmp(const Term& a, const Term& b);

class Polynomial {
 public:
  struct Mono {
    Term term;
    Rational coef;
  };

  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}
  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t i);
  static Polynomial monomial(const Term& t, const Rational& c);
  // Builds from unsorted, possibly repeated monomials.
  static Polynomial from_terms(std::size_t arity, std::vector<Mono> terms);

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  // Sorted by decreasing degrevlex.
  const std::vector<Mono>& terms() const { return m_; }
  int total_degree() const;
  bool is_constant() const;
  Rational coefficient(const Term& t) const;
  std::vector<std::size_t> support_vars() const;
  bool contains_var(std::size_t v) const;
  // Homogeneous component of the given standard degree.
  Polynomial component(unsigned deg) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial mul_term(const Term& t, const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial pow(unsigned k) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Divide by the coefficient of the degrevlex-leading term.
  Polynomial monic() const;

  std::string to_string(const VarTable& vt) const;

 private:
  std::size_t arity_ = 0;
  std::vector<Mono> m_;
  friend class PolyBuilder;
};

// Accumulates monomials and normalizes once.
class PolyBuilder {
 public:
  explicit PolyBuilder(std::size_t arity) : arity_(arity) {}
  void add(const Term& t, const Rational& c);
  void add(Term&& t, Rational&& c);
  void add(const Polynomial& p, const Rational& scale = 1);
  void add_product(const Polynomial& p, const Term& t, const Rational& c);
  Polynomial build();

 private:
  std::size_t arity_;
  std::unordered_map<Term, Rational, TermHash> acc_;
};

Polynomial parse_polynomial(std::string_view text, const VarTable& vt);

// Integer matrix defining the term ordering Ord(M).
class OrderingMatrix {
 public:
  OrderingMatrix() = default;
  explicit OrderingMatrix(std::vector<std::vector<std::int64_t>> rows);

  static OrderingMatrix degrevlex(std::size_t arity);
  static OrderingMatrix lex(std::size_t arity);
  // Weight rows followed by the degrevlex tie-break.
  static OrderingMatrix with_tiebreak(const std::vector<std::vector<std::int64_t>>& rows, std::size_t arity);
  static OrderingMatrix from_weights(const std::vector<Rational>& w);
  // Block ordering: any term containing a variable of `elim` beats any term without.
  static OrderingMatrix elimination(const std::vector<bool>& elim);

  std::size_t arity() const { return arity_; }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }
  // Full column rank and first nonzero entry of each column positive.
  bool is_term_ordering() const;

  int compare(const Term& t, const Term& u) const;
  // Rows not covered by a recognized tie-break tail.
  std::size_t prefix_rows() const { return prefix_; }
  int tie_kind() const { return tie_; }

 private:
  void compile();
  std::vector<std::vector<std::int64_t>> rows_;
  std::size_t arity_ = 0;
  std::size_t prefix_ = 0;
  int tie_ = 0;  // 0 none, 1 degrevlex, 2 lex
};

enum class Cmp { Less, Equal, Greater };

Cmp compare_terms(const OrderingMatrix& M, const Term& t, const Term& u);
std::pair<Term, Rational> leading_term(const OrderingMatrix& M, const Polynomial& f);

class SubstitutionMap {
 public:
  explicit SubstitutionMap(std::size_t arity) : arity_(arity) {}
  void assign(std::size_t var, Polynomial image);
  bool has(std::size_t var) const { return img_.count(var) != 0; }
  const Polynomial& image(std::size_t var) const { return img_.at(var); }
  const std::unordered_map<std::size_t, Polynomial>& assignments() const { return img_; }
  std::vector<std::size_t> domain() const;
  bool is_coherent() const;
  std::size_t arity() const { return arity_; }

 private:
  std::size_t arity_;
  std::unordered_map<std::size_t, Polynomial> img_;
};

Polynomial substitute(const Polynomial& f, const SubstitutionMap& s);

// Iterated substitution turning F (with LT_sigma(f_i) = z_i) into coherent assignments z_i -> h_i.
SubstitutionMap coherentize(const std::vector<Polynomial>& F, const std::vector<std::size_t>& Z,
                            const OrderingMatrix& sigma);
SubstitutionMap coherentize(const std::vector<Polynomial>& F, const std::vector<std::size_t>& Z,
                            const std::vector<Rational>& w);

struct GroebnerOptions {
  std::uint64_t step_budget = 10'000'000;
  // Module mode: every input is linear in these variables; pairs with different
  // leading positions are skipped.
  std::vector<bool> positions;
  // Module mode: basis elements whose leading position is flagged here are dropped.
  std::vector<bool> discard_positions;
  // Truncation for inputs homogeneous w.r.t. `grading`: pairs whose lcm has larger degree are skipped.
  std::optional<std::int64_t> degree_bound;
  std::vector<std::int64_t> grading;
  // Select pairs by sugar degree first (better for elimination orderings).
  bool sugar = false;
  // When nonempty, pairs are selected by this (positive) degree of their lcm first.
  std::vector<std::int64_t> selection;
};

struct GroebnerStats {
  std::uint64_t steps = 0;
  std::uint64_t pairs = 0;
};

std::vector<Polynomial> groebner_basis(const OrderingMatrix& M, const std::vector<Polynomial>& F,
                                       const GroebnerOptions& opt = {}, GroebnerStats* stats = nullptr);

// Full normal form of f modulo G (G need not be a Groebner basis).
Polynomial normal_form(const OrderingMatrix& M, const Polynomial& f, const std::vector<Polynomial>& G,
                       std::uint64_t step_budget = 10'000'000);

// Membership by direct division first, then by a Groebner basis.
bool ideal_contains(const std::vector<Polynomial>& F, const Polynomial& g,
                    std::uint64_t step_budget = 10'000'000);
// A nonempty positive `grading` under which F and G are homogeneous speeds up the comparison.
bool ideal_equal(const std::vector<Polynomial>& F, const std::vector<Polynomial>& G,
                 std::uint64_t step_budget = 10'000'000, const std::vector<std::int64_t>& grading = {});

// Exact feasibility of {w >= 0, w . (log winner - log loser) >= 1}.
struct WeightConstraint {
  Term winner;
  std::vector<Term> losers;
};
std::optional<std::vector<Rational>> lp_realizable(const std::vector<WeightConstraint>& constraints,
                                                   std::size_t arity);

// General exact feasibility: A x >= b (rows with eq[i] use =), x >= 0.
std::optional<std::vector<Rational>> lp_feasible(const std::vector<std::vector<Rational>>& A,
                                                 const std::vector<Rational>& b,
                                                 const std::vector<bool>& eq);

// Row echelon helpers over Q.
struct Rref {
  std::vector<std::vector<Rational>> rows;  // reduced rows
  std::vector<std::size_t> pivots;          // pivot column per row
};
Rref rref(std::vector<std::vector<Rational>> m);

std::string rational_str(const Rational& q);

}  // namespace bbs
