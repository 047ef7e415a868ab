// Separating tuples of simplicial schemes built from across-the-rim generators.
#include <algorithm>

#include "bbs/reembed.hpp"

namespace bbs {

SeparatingWitness simplicial_separating_tuple(const BBScheme& S) {
  if (!is_simplicial(S.O())) throw DomainError("simplicial order ideal required");
  const std::size_t N = S.num_vars(), n = S.n();
  if (n < 2) throw DomainError("simplicial separating tuples need at least two variables");
  auto grading = arrow_grading(S);
  auto cat = natural_generators(S);
  auto split = rim_interior_split(S.O());
  std::vector<bool> inZ(N, false);
  SeparatingWitness wit;
  for (auto i : split.interior)
    for (std::size_t j = 0; j < S.nu(); ++j) {
      inZ[S.var(i, j)] = true;
      wit.Z.push_back(S.var(i, j));
    }
  std::sort(wit.Z.begin(), wit.Z.end());
  // First positive component of the arrow degree of each variable.
  auto first_positive = [&](std::size_t v) {
    for (std::size_t k = 0; k < n; ++k)
      if (grading.A[k][v] > 0) return k;
    throw StructuralError("interior variable without a positive arrow component");
  };
  std::vector<std::int64_t> r1(N), r2(N, 0), r3(N, 0);
  for (std::size_t v = 0; v < N; ++v) {
    r1[v] = 2 * static_cast<std::int64_t>(grading.W[v]) - 1;
    if (!inZ[v]) continue;
    r2[v] = S.O().term(S.row_of(v))[first_positive(v)];
    r3[v] = 1;
  }
  wit.sigma = OrderingMatrix::with_tiebreak({r1, r2, r3}, N);
  std::vector<WeightConstraint> cons;
  for (auto z : wit.Z) {
    std::size_t i = S.row_of(z), j = S.col_of(z);
    std::size_t k = first_positive(z);
    std::size_t l = k == 0 ? 1 : 0;
    Exps bj2 = S.B()[j];
    --bj2[k];
    ++bj2[l];
    auto j2 = border_index(S.B(), bj2);
    Exps tm = S.O().term(i);
    ++tm[l];
    auto m = S.O().index_of(tm);
    if (!j2 || !m) throw StructuralError("missing across-the-rim partner for " + S.vars().name(z));
    const Generator* pick = nullptr;
    for (auto& g : cat)
      if (g.kind == Generator::AR && g.c == *m && ((g.a == j && g.b == *j2) || (g.a == *j2 && g.b == j))) pick = &g;
    if (!pick) throw StructuralError("across-the-rim generator not found for " + S.vars().name(z));
    if (leading_term(wit.sigma, pick->poly).first != Term::var(N, z))
      throw StructuralError("leading term of " + pick->label() + " is not " + S.vars().name(z));
    wit.F.push_back(pick->poly);
    wit.sources.push_back(pick->label());
    WeightConstraint wc{Term::var(N, z), {}};
    for (auto& mo : pick->poly.terms())
      if (mo.term != wc.winner) wc.losers.push_back(mo.term);
    cons.push_back(std::move(wc));
  }
  auto w = lp_realizable(cons, N);
  if (!w) throw StructuralError("no weight vector realizes the simplicial ordering");
  wit.w = *w;
  return wit;
}

std::size_t minimal_quadric_count(const std::vector<Polynomial>& gens) {
  // For an ideal generated by quadrics and without linear part, the count is dim I_2, which the
  // degree-2 components of any homogeneous-in-W generating set span.
  std::vector<Polynomial> q;
  for (auto& f : gens) {
    for (auto& m : f.terms())
      if (m.term.degree() < 2) throw DomainError("minimal_quadric_count needs generators without linear part");
    Polynomial c = f.component(2);
    if (!c.is_zero()) q.push_back(std::move(c));
  }
  if (q.empty()) return 0;
  std::vector<Term> cols;
  for (auto& f : q)
    for (auto& m : f.terms())
      if (std::find(cols.begin(), cols.end(), m.term) == cols.end()) cols.push_back(m.term);
  std::vector<std::vector<Rational>> rows;
  for (auto& f : q) {
    std::vector<Rational> r(cols.size(), 0);
    for (auto& m : f.terms())
      r[static_cast<std::size_t>(std::find(cols.begin(), cols.end(), m.term) - cols.begin())] = m.coef;
    rows.push_back(std::move(r));
  }
  return rref(std::move(rows)).pivots.size();
}

}  // namespace bbs
