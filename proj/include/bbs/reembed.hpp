#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbs/bbscheme.hpp"
#include "bbs/orderideal.hpp"
#include "bbs/polyring.hpp"

namespace bbs {

struct SearchOptions {
  std::uint64_t gb_budget = 10'000'000;
  std::uint64_t search_budget = 1'000'000;  // DFS nodes
  unsigned workers = 1;
};

struct SeparatingWitness {
  std::vector<std::size_t> Z;
  std::vector<Polynomial> F;
  std::vector<std::string> sources;  // how each f_i was obtained
  std::vector<Rational> w;
  OrderingMatrix sigma;
};

// LT_sigma(f_i) = z_i for all i.
bool verify_witness(const SeparatingWitness& wit);

enum class SearchStatus { Found, NotFound, Nonexistent, Budget };
const char* status_name(SearchStatus s);

struct CheckResult {
  SearchStatus status = SearchStatus::NotFound;
  std::string reason;
  std::optional<SeparatingWitness> witness;
};

// MaxDeg O: exact module criterion.  Otherwise a DFS over generator pools with LP checks.
CheckResult check_separating(const BBScheme& S, const std::vector<std::size_t>& Z, const SearchOptions& opt = {});

struct BestTuples {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> tuples;  // sorted variable lists, sorted
  std::vector<std::size_t> per_degree_count;
};
BestTuples best_separating_tuples(const BBScheme& S, const SearchOptions& opt = {});

// Largest separating size; stops early once `target` is reached (MaxDeg only).
std::size_t max_separating_size(const BBScheme& S, const SearchOptions& opt = {});

struct ReembeddingResult {
  std::vector<std::size_t> eliminated;
  std::vector<std::size_t> remaining;
  SubstitutionMap substitution{0};
  // Rewritten catalog without zeros, linearly interreduced per arrow degree.
  std::vector<Polynomial> new_generators;
  // A minimal generating subset of new_generators (homogeneous case) or new_generators itself.
  std::vector<Polynomial> minimal_generators;
  std::size_t presentation_dim = 0;
};

ReembeddingResult zsep_reembed(const BBScheme& S, const SeparatingWitness& wit, const SearchOptions& opt = {});

// Greedy minimal generators of a W-homogeneous ideal with W >= 0, by increasing W-degree.
std::vector<Polynomial> minimal_homogeneous_generators(std::vector<Polynomial> gens,
                                                       const std::vector<std::int64_t>& W,
                                                       std::uint64_t gb_budget);

struct WeightAssignment {
  std::vector<std::int64_t> wt;
  // Catalog index of the generator chosen for each non-exposed variable, -1 otherwise.
  std::vector<long> chosen;
  std::vector<std::string> rule;
  std::vector<std::string> inequalities;
  std::string method;  // "algorithm" or "lp"
  GeneratorCatalog catalog;
  ExposureInfo exposure;
};

WeightAssignment weight_assignment(const BBScheme& S, const SearchOptions& opt = {});
// Each non-exposed variable is the unique heaviest term of its chosen generator.
bool weight_property_holds(const BBScheme& S, const WeightAssignment& wa);
ReembeddingResult eliminate_non_exposed(const BBScheme& S, const SearchOptions& opt = {});

struct OptimalPlanarResult {
  CotangentClasses classes;
  std::vector<std::vector<std::size_t>> exposed_classes;  // E_i intersected with the exposed set
  std::size_t candidates = 0;
  std::size_t target = 0;  // #C - 2 mu
  std::vector<std::pair<std::vector<std::size_t>, ReembeddingResult>> found;
  bool budget = false;  // some candidate ran out of budget
};
OptimalPlanarResult optimal_planar_reembed(const BBScheme& S, const SearchOptions& opt = {});

SeparatingWitness simplicial_separating_tuple(const BBScheme& S);
// Number of minimal generators of an ideal generated by homogeneous quadrics.
std::size_t minimal_quadric_count(const std::vector<Polynomial>& gens);

struct LShapeReport {
  bool ok = false;
  std::vector<std::string> checks;  // "name: ok" or "name: FAIL ..."
  std::vector<std::size_t> Z;
  Polynomial f1, f2;
  bool f1_sign_flipped = false;
  bool f1_matches = false, f2_matches = false;
  bool psi_matches_matrices = false;
  bool det_b1_unit = false, det_b2_unit = false;
  bool psi_f1_is_c21 = false, separating = false;
  std::vector<std::size_t> final_vars;
  std::vector<Polynomial> images;  // image of every c_ij
  std::vector<std::size_t> support_lengths;
};
LShapeReport verify_lshape_pipeline(const SearchOptions& opt = {});
const std::vector<std::size_t>& lshape_printed_support_lengths();

struct SurveyRow {
  OrderIdeal O;
  std::size_t mu = 0;
  int d = 0;
  std::size_t s = 0;
  std::size_t best = 0;
  std::size_t target = 0;
  bool optimal = false;
  bool budget = false;
  std::vector<std::size_t> witness;  // an optimal Z, if one was found
};
struct SurveyReport {
  std::vector<SurveyRow> rows;
  bool consistent = true;
  std::vector<std::string> inconsistencies;
};
SurveyReport conjecture_survey(std::size_t mu_max, const SearchOptions& opt = {});

// Generators of <F> intersected with the subring of variables not flagged in `elim`.  A nonempty
// positive `grading` making F homogeneous refines the ordering and drives pair selection.
std::vector<Polynomial> gb_elimination(const std::vector<Polynomial>& F, const std::vector<bool>& elim,
                                       std::uint64_t gb_budget, const std::vector<std::int64_t>& grading = {});
// A strictly positive integer combination of the arrow grading, if one exists.
std::optional<std::vector<std::int64_t>> positive_arrow_grading(const BBScheme& S);
// I(B_O) (degree-filtered when O is not MaxDeg) intersected with K[C0], via a truncated Groebner basis.
std::vector<Polynomial> c0_intersection(const BBScheme& S, std::uint64_t gb_budget);

struct EliminationComparison {
  std::vector<std::size_t> Z;
  ReembeddingResult substitution;
  std::vector<Polynomial> groebner;  // generators of I(B_O) intersected with K[C \ Z]
  bool equal = false;
};
// Substitution-based elimination of a separating Z against Groebner-based elimination.
EliminationComparison compare_eliminations(const BBScheme& S, const std::vector<std::size_t>& Z,
                                           const SearchOptions& opt = {});
// A nonempty random subset of a separating tuple: a best tuple for MaxDeg O, the non-exposed
// variables for planar O.
std::vector<std::size_t> random_separating_subset(const BBScheme& S, std::uint64_t seed, const SearchOptions& opt = {});

}  // namespace bbs
