// Optimal Z-separating re-embeddings of planar schemes and the segmentation-type survey.
#include <algorithm>
#include <mutex>

#include "bbs/reembed.hpp"
#include "parallel.hpp"

namespace bbs {

namespace {

void require_planar(const BBScheme& S) {
  if (S.n() != 2) throw DomainError("planar order ideal required");
}

std::string tuple_str(const BBScheme& S, const std::vector<std::size_t>& Z) {
  std::string s = "(";
  for (std::size_t i = 0; i < Z.size(); ++i) s += (i ? "," : "") + S.vars().name(Z[i]);
  return s + ")";
}

}  // namespace

OptimalPlanarResult optimal_planar_reembed(const BBScheme& S, const SearchOptions& opt) {
  require_planar(S);
  OptimalPlanarResult out;
  const std::size_t N = S.num_vars();
  out.classes = cotangent_classes(S);
  out.target = N - 2 * S.mu();
  ExposureInfo ex = exposure(S);
  std::vector<bool> base(N, false);
  for (auto v : out.classes.E0) base[v] = true;
  for (std::size_t v = 0; v < N; ++v)
    if (!ex.exposed[v]) base[v] = true;
  std::vector<std::vector<std::size_t>> choices;
  for (auto& E : out.classes.proper) {
    std::vector<std::size_t> Et;
    for (auto v : E)
      if (ex.exposed[v]) Et.push_back(v);
    out.exposed_classes.push_back(Et);
    if (!Et.empty()) choices.push_back(std::move(Et));
  }
  // One candidate per choice of the element left out of every nonempty exposed class.
  std::vector<std::vector<std::size_t>> cands{{}};
  for (auto& Et : choices) {
    std::vector<std::vector<std::size_t>> next;
    for (auto& c : cands)
      for (auto drop : Et) {
        auto d = c;
        for (auto v : Et)
          if (v != drop) d.push_back(v);
        next.push_back(std::move(d));
      }
    cands = std::move(next);
  }
  for (auto& c : cands) {
    for (std::size_t v = 0; v < N; ++v)
      if (base[v] && std::find(c.begin(), c.end(), v) == c.end()) c.push_back(v);
    std::sort(c.begin(), c.end());
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  out.candidates = cands.size();
  std::vector<std::optional<ReembeddingResult>> res(cands.size());
  std::vector<char> budget(cands.size(), 0);
  detail::parallel_for(cands.size(), opt.workers, [&](std::size_t i) {
    CheckResult r = check_separating(S, cands[i], opt);
    if (r.status == SearchStatus::Budget) budget[i] = 1;
    if (r.status != SearchStatus::Found) return;
    try {
      res[i] = zsep_reembed(S, *r.witness, opt);
    } catch (const BudgetExceeded&) {
      budget[i] = 1;
    }
  });
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (budget[i]) out.budget = true;
    if (res[i]) out.found.emplace_back(cands[i], std::move(*res[i]));
  }
  return out;
}

SurveyReport conjecture_survey(std::size_t mu_max, const SearchOptions& opt) {
  std::vector<OrderIdeal> ideals;
  for (std::size_t mu = 1; mu <= mu_max; ++mu)
    for (auto& O : planar_order_ideals(mu))
      if (is_maxdeg(O) && !is_simplicial(O)) ideals.push_back(O);
  SurveyReport rep;
  rep.rows.resize(ideals.size());
  SearchOptions inner = opt;
  inner.workers = 1;
  detail::parallel_for(ideals.size(), opt.workers, [&](std::size_t k) {
    BBScheme S(ideals[k]);
    SurveyRow& row = rep.rows[k];
    row.O = ideals[k];
    row.mu = S.mu();
    auto sg = segments(S.O());
    row.d = sg.d;
    row.s = sg.s;
    row.target = S.num_vars() - 2 * S.mu();
    try {
      auto opr = optimal_planar_reembed(S, inner);
      row.budget = opr.budget;
      for (auto& [Z, r] : opr.found)
        if (Z.size() == row.target && r.new_generators.empty()) {
          row.optimal = true;
          row.witness = Z;
          break;
        }
    } catch (const BudgetExceeded&) {
      row.budget = true;
    }
    if (row.optimal) {
      row.best = row.target;
      return;
    }
    try {
      row.best = max_separating_size(S, inner);
    } catch (const BudgetExceeded&) {
      row.budget = true;
    }
  });
  for (auto& row : rep.rows) {
    if (row.budget) {
      rep.consistent = false;
      rep.inconsistencies.push_back("budget exhausted for O with mu=" + std::to_string(row.mu));
      continue;
    }
    if ((row.s == 1) != row.optimal) {
      rep.consistent = false;
      BBScheme S(row.O);
      std::string t;
      for (auto& e : row.O.terms()) t += " (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
      rep.inconsistencies.push_back("O =" + t + ": s=" + std::to_string(row.s) + ", optimal=" +
                                    (row.optimal ? "yes " + tuple_str(S, row.witness) : std::string("no")) +
                                    ", best=" + std::to_string(row.best) + ", target=" + std::to_string(row.target));
    }
  }
  return rep;
}

}  // namespace bbs
