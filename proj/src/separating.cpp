// Separating tuples: the MaxDeg module criterion, pool search, best tuples and Z-separating re-embeddings.
#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bbs/reembed.hpp"

namespace bbs {

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::NotFound:
      return "not found";
    case SearchStatus::Nonexistent:
      return "nonexistent";
    case SearchStatus::Budget:
      return "budget";
  }
  return "";
}

bool verify_witness(const SeparatingWitness& wit) {
  if (wit.F.size() != wit.Z.size()) return false;
  for (std::size_t i = 0; i < wit.Z.size(); ++i) {
    if (wit.F[i].is_zero()) return false;
    auto lt = leading_term(wit.sigma, wit.F[i]).first;
    if (lt != Term::var(wit.F[i].arity(), wit.Z[i])) return false;
  }
  return true;
}

namespace {

// The K[C0]-linear parts of the natural generators, grouped by total arrow degree.
struct ModuleBlock {
  std::int64_t w = 0;
  std::vector<std::size_t> pos;    // variables of C+ with this degree
  std::vector<std::size_t> gens;   // catalog indices
  // lin[k][p]: coefficient of pos[p] in generator gens[k], a polynomial in the C0 variables.
  std::vector<std::vector<std::vector<Polynomial::Mono>>> lin;
};

struct MaxDegContext {
  const BBScheme& S;
  GeneratorCatalog catalog;
  ArrowGrading grading;
  std::vector<std::size_t> C0;
  std::vector<long> c0_local;  // global var -> C0 index or -1
  std::map<std::int64_t, ModuleBlock> blocks;
  std::int64_t wmax = 0;

  explicit MaxDegContext(const BBScheme& s) : S(s), catalog(natural_generators(s)), grading(arrow_grading(s)) {
    const std::size_t N = S.num_vars();
    c0_local.assign(N, -1);
    for (std::size_t v = 0; v < N; ++v) {
      if (grading.W[v] == 0) {
        c0_local[v] = static_cast<long>(C0.size());
        C0.push_back(v);
      } else {
        auto& b = blocks[grading.W[v]];
        b.w = grading.W[v];
        b.pos.push_back(v);
        wmax = std::max<std::int64_t>(wmax, grading.W[v]);
      }
    }
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      const Polynomial& g = catalog[k].poly;
      std::int64_t w = 0;
      const Term& t0 = g.terms()[0].term;
      for (std::size_t v = 0; v < N; ++v) w += static_cast<std::int64_t>(grading.W[v]) * t0[v];
      auto it = blocks.find(w);
      if (it == blocks.end()) continue;
      ModuleBlock& b = it->second;
      std::vector<std::vector<Polynomial::Mono>> row(b.pos.size());
      bool any = false;
      for (auto& m : g.terms()) {
        long p = -1;
        bool linear = true;
        for (std::size_t v = 0; v < N && linear; ++v) {
          if (!m.term[v] || c0_local[v] >= 0) continue;
          if (m.term[v] > 1 || p >= 0) linear = false;
          p = static_cast<long>(v);
        }
        if (!linear || p < 0) continue;
        auto pit = std::find(b.pos.begin(), b.pos.end(), static_cast<std::size_t>(p));
        std::size_t pi = static_cast<std::size_t>(pit - b.pos.begin());
        Term c(C0.size());
        for (std::size_t v = 0; v < N; ++v)
          if (m.term[v] && c0_local[v] >= 0) c.set(static_cast<std::size_t>(c0_local[v]), m.term[v]);
        row[pi].push_back({c, m.coef});
        any = true;
      }
      if (!any) continue;
      b.gens.push_back(k);
      b.lin.push_back(std::move(row));
    }
  }

  std::int64_t lambda() const { return wmax + 2; }

  // For each z in Zw (all of one degree), q_k with sum q_k lin_k = e_z + (non-Z coordinates); empty if none.
  std::optional<std::vector<std::vector<Polynomial>>> surjective(const ModuleBlock& b, const std::vector<std::size_t>& Zw,
                                                                 std::uint64_t budget) const {
    if (Zw.empty()) return std::vector<std::vector<Polynomial>>{};
    const std::size_t g = C0.size(), P = b.pos.size(), R = b.gens.size();
    const std::size_t L = g + P + R;
    std::vector<long> zrank(P, -1);
    for (std::size_t a = 0; a < Zw.size(); ++a) {
      auto it = std::find(b.pos.begin(), b.pos.end(), Zw[a]);
      if (it == b.pos.end()) return std::nullopt;
      zrank[static_cast<std::size_t>(it - b.pos.begin())] = static_cast<long>(a);
    }
    std::vector<std::int64_t> row(L, 0);
    std::int64_t next = 1;
    for (std::size_t r = 0; r < R; ++r) row[g + P + r] = next++;
    for (std::size_t p = 0; p < P; ++p)
      if (zrank[p] < 0) row[g + p] = next++;
    for (std::size_t a = Zw.size(); a-- > 0;)
      for (std::size_t p = 0; p < P; ++p)
        if (zrank[p] == static_cast<long>(a)) row[g + p] = next++;
    auto M = OrderingMatrix::with_tiebreak({row}, L);
    std::vector<Polynomial> in;
    for (std::size_t k = 0; k < R; ++k) {
      std::vector<Polynomial::Mono> ms;
      for (std::size_t p = 0; p < P; ++p)
        for (auto& m : b.lin[k][p]) {
          Term t(L);
          for (std::size_t v = 0; v < g; ++v) t.set(v, m.term[v]);
          t.set(g + p, 1);
          ms.push_back({t, m.coef});
        }
      ms.push_back({Term::var(L, g + P + k), 1});
      in.push_back(Polynomial::from_terms(L, std::move(ms)));
    }
    GroebnerOptions opt;
    opt.step_budget = budget;
    opt.positions.assign(L, false);
    opt.discard_positions.assign(L, false);
    for (std::size_t v = g; v < L; ++v) opt.positions[v] = true;
    for (std::size_t v = g + P; v < L; ++v) opt.discard_positions[v] = true;
    auto G = groebner_basis(M, in, opt);
    std::vector<std::vector<Polynomial>> out;
    const std::size_t N = S.num_vars();
    for (std::size_t a = 0; a < Zw.size(); ++a) {
      std::size_t p = static_cast<std::size_t>(std::find(b.pos.begin(), b.pos.end(), Zw[a]) - b.pos.begin());
      Term ez = Term::var(L, g + p);
      const Polynomial* hit = nullptr;
      for (auto& e : G)
        if (leading_term(M, e).first == ez) hit = &e;
      if (!hit) return std::nullopt;
      std::vector<PolyBuilder> q(R, PolyBuilder(N));
      for (auto& m : hit->terms()) {
        for (std::size_t r = 0; r < R; ++r) {
          if (!m.term[g + P + r]) continue;
          Term c(N);
          for (std::size_t v = 0; v < g; ++v)
            if (m.term[v]) c.set(C0[v], m.term[v]);
          q[r].add(c, m.coef);
        }
      }
      std::vector<Polynomial> qs;
      for (auto& qb : q) qs.push_back(qb.build());
      out.push_back(std::move(qs));
    }
    return out;
  }

  // Whether the Z-coordinates of the linear parts generate K[C0]^Z; same answer as surjective() without cofactors.
  bool projects_onto(const ModuleBlock& b, const std::vector<std::size_t>& Zw, std::uint64_t budget) const {
    const std::size_t g = C0.size(), L = g + Zw.size();
    std::vector<long> col(b.pos.size(), -1);
    for (std::size_t a = 0; a < Zw.size(); ++a) {
      auto it = std::find(b.pos.begin(), b.pos.end(), Zw[a]);
      if (it == b.pos.end()) return false;
      col[static_cast<std::size_t>(it - b.pos.begin())] = static_cast<long>(a);
    }
    std::vector<Polynomial> in;
    for (auto& row : b.lin) {
      std::vector<Polynomial::Mono> ms;
      for (std::size_t p = 0; p < b.pos.size(); ++p) {
        if (col[p] < 0) continue;
        for (auto& m : row[p]) {
          Term t(L);
          for (std::size_t v = 0; v < g; ++v) t.set(v, m.term[v]);
          t.set(g + static_cast<std::size_t>(col[p]), 1);
          ms.push_back({t, m.coef});
        }
      }
      if (!ms.empty()) in.push_back(Polynomial::from_terms(L, std::move(ms)));
    }
    auto M = OrderingMatrix::degrevlex(L);
    GroebnerOptions opt;
    opt.step_budget = budget;
    opt.positions.assign(L, false);
    for (std::size_t v = g; v < L; ++v) opt.positions[v] = true;
    auto G = groebner_basis(M, in, opt);
    for (std::size_t a = 0; a < Zw.size(); ++a) {
      Term ez = Term::var(L, g + a);
      bool hit = false;
      for (auto& e : G)
        if (leading_term(M, e).first == ez) hit = true;
      if (!hit) return false;
    }
    return true;
  }

  std::vector<Rational> witness_weights(const std::vector<std::size_t>& Z) const {
    std::vector<Rational> w(S.num_vars(), 0);
    for (std::size_t v = 0; v < w.size(); ++v)
      if (grading.W[v] > 0) w[v] = lambda() * (2 * grading.W[v] - 1);
    for (auto z : Z) w[z] += 1;
    return w;
  }
};

CheckResult maxdeg_check(const MaxDegContext& ctx, const std::vector<std::size_t>& Z, const SearchOptions& opt) {
  CheckResult res;
  std::map<std::int64_t, std::vector<std::size_t>> byw;
  for (auto z : Z) {
    if (ctx.grading.W[z] <= 0) {
      res.status = SearchStatus::Nonexistent;
      res.reason = "variable " + ctx.S.vars().name(z) + " has non-positive total arrow degree";
      return res;
    }
    byw[ctx.grading.W[z]].push_back(z);
  }
  SeparatingWitness wit;
  wit.Z = Z;
  wit.F.assign(Z.size(), Polynomial(ctx.S.num_vars()));
  wit.sources.assign(Z.size(), "");
  for (auto& [w, Zw] : byw) {
    const ModuleBlock& b = ctx.blocks.at(w);
    std::optional<std::vector<std::vector<Polynomial>>> q;
    try {
      q = ctx.surjective(b, Zw, opt.gb_budget);
    } catch (const BudgetExceeded&) {
      res.status = SearchStatus::Budget;
      res.reason = "Groebner budget exhausted in arrow degree " + std::to_string(w);
      return res;
    }
    if (!q) {
      res.status = SearchStatus::Nonexistent;
      res.reason = "linear parts in arrow degree " + std::to_string(w) + " do not project onto Z";
      return res;
    }
    for (std::size_t a = 0; a < Zw.size(); ++a) {
      PolyBuilder f(ctx.S.num_vars());
      std::size_t used = 0;
      for (std::size_t k = 0; k < b.gens.size(); ++k) {
        const Polynomial& qk = (*q)[a][k];
        if (qk.is_zero()) continue;
        ++used;
        for (auto& m : qk.terms()) f.add_product(ctx.catalog[b.gens[k]].poly, m.term, m.coef);
      }
      std::size_t idx = static_cast<std::size_t>(std::find(Z.begin(), Z.end(), Zw[a]) - Z.begin());
      wit.F[idx] = f.build();
      wit.sources[idx] = "module combination of " + std::to_string(used) + " generators";
    }
  }
  wit.w = ctx.witness_weights(Z);
  wit.sigma = OrderingMatrix::from_weights(wit.w);
  if (!verify_witness(wit)) throw StructuralError("module criterion produced an invalid witness");
  res.status = SearchStatus::Found;
  res.witness = std::move(wit);
  return res;
}

std::vector<int> arrow_key(const ArrowGrading& g, const Polynomial& f) {
  std::vector<int> d(g.A.size(), 0);
  const Term& t = f.terms()[0].term;
  for (std::size_t v = 0; v < t.arity(); ++v)
    if (t[v])
      for (std::size_t k = 0; k < g.A.size(); ++k) d[k] += g.A[k][v] * t[v];
  return d;
}

struct PoolEntry {
  Polynomial f;
  std::string source;
};

CheckResult pool_check(const BBScheme& S, const std::vector<std::size_t>& Z, const SearchOptions& opt) {
  CheckResult res;
  const std::size_t N = S.num_vars();
  auto cat = natural_generators(S);
  auto grading = arrow_grading(S);
  std::vector<bool> inZ(N, false);
  for (auto z : Z) inZ[z] = true;
  std::vector<std::vector<PoolEntry>> pools(Z.size());
  auto zindex = [&](std::size_t v) {
    return static_cast<std::size_t>(std::find(Z.begin(), Z.end(), v) - Z.begin());
  };
  for (auto& g : cat) {
    Polynomial l = linear_part(g.poly);
    for (auto& m : l.terms())
      for (std::size_t v = 0; v < N; ++v)
        if (m.term[v] && inZ[v]) pools[zindex(v)].push_back({g.poly, g.label()});
  }
  // Gaussian combinations inside each arrow-degree block, Z columns first.
  std::map<std::vector<int>, std::vector<std::size_t>> blocks;
  for (std::size_t k = 0; k < cat.size(); ++k) blocks[arrow_key(grading, cat[k].poly)].push_back(k);
  std::vector<std::size_t> colvars(Z.begin(), Z.end());
  for (std::size_t v = 0; v < N; ++v)
    if (!inZ[v]) colvars.push_back(v);
  for (auto& [_, ks] : blocks) {
    if (ks.size() < 2) continue;
    std::vector<std::vector<Rational>> m;
    for (std::size_t r = 0; r < ks.size(); ++r) {
      std::vector<Rational> row(N + ks.size(), 0);
      Polynomial l = linear_part(cat[ks[r]].poly);
      for (auto& mo : l.terms())
        for (std::size_t c = 0; c < N; ++c)
          if (mo.term[colvars[c]]) row[c] = mo.coef;
      row[N + r] = 1;
      m.push_back(std::move(row));
    }
    Rref R = rref(m);
    for (std::size_t r = 0; r < R.pivots.size(); ++r) {
      std::size_t pc = R.pivots[r];
      if (pc >= Z.size()) continue;
      bool clean = true;
      for (std::size_t c = 0; c < Z.size(); ++c)
        if (c != pc && R.rows[r][c] != 0) clean = false;
      if (!clean) continue;
      PolyBuilder f(N);
      for (std::size_t k = 0; k < ks.size(); ++k)
        if (R.rows[r][N + k] != 0) f.add(cat[ks[k]].poly, R.rows[r][N + k]);
      Polynomial p = f.build();
      if (!p.is_zero()) pools[pc].push_back({p, "linear combination in one arrow degree"});
    }
  }
  for (std::size_t a = 0; a < Z.size(); ++a)
    if (pools[a].empty()) {
      res.status = SearchStatus::NotFound;
      res.reason = "no ideal element with " + S.vars().name(Z[a]) + " in its linear part";
      return res;
    }
  // Order each pool by size so that short candidates are tried first.
  for (auto& p : pools)
    std::stable_sort(p.begin(), p.end(), [](const PoolEntry& x, const PoolEntry& y) { return x.f.size() < y.f.size(); });
  std::vector<WeightConstraint> cons;
  std::vector<std::size_t> choice(Z.size());
  std::uint64_t nodes = 0;
  bool budget = false;
  std::optional<std::vector<Rational>> found;
  std::function<bool(std::size_t)> dfs = [&](std::size_t a) -> bool {
    if (a == Z.size()) {
      found = lp_realizable(cons, N);
      return found.has_value();
    }
    for (std::size_t c = 0; c < pools[a].size(); ++c) {
      if (++nodes > opt.search_budget) {
        budget = true;
        return false;
      }
      const Polynomial& f = pools[a][c].f;
      Term z = Term::var(N, Z[a]);
      WeightConstraint wc{z, {}};
      for (auto& m : f.terms())
        if (m.term != z) wc.losers.push_back(m.term);
      cons.push_back(wc);
      if (lp_realizable(cons, N)) {
        choice[a] = c;
        if (dfs(a + 1)) return true;
      }
      cons.pop_back();
      if (budget) return false;
    }
    return false;
  };
  if (dfs(0)) {
    SeparatingWitness wit;
    wit.Z = Z;
    for (std::size_t a = 0; a < Z.size(); ++a) {
      wit.F.push_back(pools[a][choice[a]].f);
      wit.sources.push_back(pools[a][choice[a]].source);
    }
    wit.w = *found;
    wit.sigma = OrderingMatrix::from_weights(wit.w);
    if (!verify_witness(wit)) throw StructuralError("pool search produced an invalid witness");
    res.status = SearchStatus::Found;
    res.witness = std::move(wit);
    return res;
  }
  res.status = budget ? SearchStatus::Budget : SearchStatus::NotFound;
  res.reason = budget ? "search budget exhausted" : "pool search exhausted without a feasible ordering";
  return res;
}

}  // namespace

CheckResult check_separating(const BBScheme& S, const std::vector<std::size_t>& Z, const SearchOptions& opt) {
  std::set<std::size_t> seen;
  for (auto z : Z) {
    if (z >= S.num_vars()) throw StructuralError("variable index out of range");
    if (!seen.insert(z).second) throw StructuralError("repeated variable in Z");
  }
  if (Z.empty()) {
    CheckResult r;
    r.status = SearchStatus::Found;
    SeparatingWitness w;
    w.w.assign(S.num_vars(), 0);
    w.sigma = OrderingMatrix::degrevlex(S.num_vars());
    r.witness = w;
    return r;
  }
  if (is_maxdeg(S.O())) {
    MaxDegContext ctx(S);
    return maxdeg_check(ctx, Z, opt);
  }
  return pool_check(S, Z, opt);
}

namespace {

// All maximum-size subsets of `cand` accepted by `ok`, assuming the accepted family is closed under subsets.
// Sizes are tried from `cap` downwards.  `bound(cur, from)` caps the size of any accepted set extending
// `cur` by candidates from index `from` on.  Every rejected set is shrunk to a minimal rejected core, and
// sets containing a known core are skipped without calling `ok`.
std::vector<std::vector<std::size_t>> maximum_sets(
    const std::vector<std::size_t>& cand, std::size_t cap, const std::function<bool(const std::vector<std::size_t>&)>& ok,
    const std::function<std::size_t(const std::vector<std::size_t>&, std::size_t)>& bound, bool first_only) {
  using Mask = std::vector<bool>;
  const std::size_t n = cand.size();
  std::vector<Mask> cores;
  auto contains_core = [&](const Mask& m) {
    for (auto& c : cores) {
      bool in = true;
      for (std::size_t i = 0; i < n && in; ++i)
        if (c[i] && !m[i]) in = false;
      if (in) return true;
    }
    return false;
  };
  auto vars_of = [&](const Mask& m) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) v.push_back(cand[i]);
    return v;
  };
  auto learn = [&](Mask m) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i]) continue;
      m[i] = false;
      if (ok(vars_of(m))) m[i] = true;
    }
    cores.push_back(std::move(m));
  };
  for (std::size_t k = cap + 1; k-- > 0;) {
    std::vector<std::vector<std::size_t>> found;
    Mask cur(n, false);
    std::vector<std::size_t> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
      if (chosen.size() == k) {
        auto vs = vars_of(cur);
        if (ok(vs)) {
          found.push_back(std::move(vs));
          return first_only;
        }
        learn(cur);
        return false;
      }
      for (std::size_t i = from; i + (k - chosen.size()) <= n; ++i) {
        if (bound(vars_of(cur), i) < k) return false;
        cur[i] = true;
        chosen.push_back(i);
        bool stop = false;
        if (!contains_core(cur)) stop = rec(i + 1);
        chosen.pop_back();
        cur[i] = false;
        if (stop) return true;
      }
      return false;
    };
    rec(0);
    if (!found.empty()) return found;
  }
  return {};
}

// The linear-part matrix of a block evaluated at C0 = 0 and at a few fixed pseudo-random points.
// A separating set is linearly independent at every point, so column ranks give upper bounds.
struct PointRanks {
  std::vector<std::vector<std::vector<Rational>>> mats;  // [point][generator][position]
  std::map<std::size_t, std::size_t> col_of;             // variable -> position

  PointRanks(const MaxDegContext& ctx, const ModuleBlock& b) {
    for (std::size_t p = 0; p < b.pos.size(); ++p) col_of[b.pos[p]] = p;
    for (int trial = -1; trial < 3; ++trial) {
      std::vector<Rational> pt(ctx.C0.size(), 0);
      if (trial >= 0)
        for (std::size_t v = 0; v < pt.size(); ++v)
          pt[v] = Rational(static_cast<long>((v * 7919 + 31 * static_cast<std::size_t>(trial) + 13) % 97) + 2);
      std::vector<std::vector<Rational>> m;
      for (auto& row : b.lin) {
        std::vector<Rational> r(b.pos.size(), 0);
        for (std::size_t p = 0; p < b.pos.size(); ++p)
          for (auto& mo : row[p]) {
            Rational v = mo.coef;
            for (std::size_t c = 0; c < pt.size(); ++c)
              for (unsigned e = 0; e < mo.term[c]; ++e) v *= pt[c];
            r[p] += v;
          }
        m.push_back(std::move(r));
      }
      mats.push_back(std::move(m));
    }
  }

  // Minimum over the points of the rank of the given columns.
  std::size_t rank(const std::vector<std::size_t>& vars) const {
    std::size_t best = vars.size();
    for (auto& m : mats) {
      if (m.empty()) return 0;
      std::vector<std::vector<Rational>> sub;
      for (auto& row : m) {
        std::vector<Rational> r;
        for (auto v : vars) r.push_back(row[col_of.at(v)]);
        sub.push_back(std::move(r));
      }
      best = std::min(best, rref(std::move(sub)).pivots.size());
    }
    return best;
  }

  // Rank over the fraction field of K[C0], from the random points.
  std::size_t generic_rank() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < mats.size(); ++k)
      if (!mats[k].empty()) best = std::max(best, rref(mats[k]).pivots.size());
    return best;
  }
};

std::vector<std::vector<std::size_t>> product(const std::vector<std::vector<std::vector<std::size_t>>>& parts) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (auto& part : parts) {
    std::vector<std::vector<std::size_t>> next;
    for (auto& a : out)
      for (auto& b : part) {
        auto c = a;
        c.insert(c.end(), b.begin(), b.end());
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  for (auto& z : out) std::sort(z.begin(), z.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> per_degree_best(const MaxDegContext& ctx, const SearchOptions& opt,
                                                                   bool first_only) {
  std::vector<std::vector<std::vector<std::size_t>>> parts;
  std::uint64_t nodes = 0;
  for (auto& [w, b] : ctx.blocks) {
    PointRanks pr(ctx, b);
    std::vector<std::size_t> cand;
    for (auto v : b.pos) {
      if (++nodes > opt.search_budget) throw BudgetExceeded("search budget exhausted");
      if (pr.rank({v}) == 1 && ctx.projects_onto(b, {v}, opt.gb_budget)) cand.push_back(v);
    }
    std::size_t cap = std::min(pr.generic_rank(), cand.size());
    auto ok = [&](const std::vector<std::size_t>& Zw) {
      if (++nodes > opt.search_budget) throw BudgetExceeded("search budget exhausted");
      if (pr.rank(Zw) < Zw.size()) return false;
      return ctx.projects_onto(b, Zw, opt.gb_budget);
    };
    auto bound = [&](const std::vector<std::size_t>& cur, std::size_t from) {
      std::vector<std::size_t> all = cur;
      all.insert(all.end(), cand.begin() + static_cast<long>(from), cand.end());
      return pr.rank(all);
    };
    parts.push_back(maximum_sets(cand, cap, ok, bound, first_only));
  }
  return parts;
}

}  // namespace

BestTuples best_separating_tuples(const BBScheme& S, const SearchOptions& opt) {
  if (!is_maxdeg(S.O())) throw DomainError("best separating tuples require a MaxDeg border");
  MaxDegContext ctx(S);
  auto parts = per_degree_best(ctx, opt, false);
  BestTuples out;
  for (auto& p : parts) {
    out.per_degree_count.push_back(p.size());
    out.size += p.empty() ? 0 : p[0].size();
  }
  out.tuples = product(parts);
  return out;
}

std::size_t max_separating_size(const BBScheme& S, const SearchOptions& opt) {
  if (!is_maxdeg(S.O())) throw DomainError("best separating tuples require a MaxDeg border");
  MaxDegContext ctx(S);
  std::size_t total = 0;
  for (auto& p : per_degree_best(ctx, opt, true)) total += p.empty() ? 0 : p[0].size();
  return total;
}

namespace {

std::vector<int> arrow_degree_of(const ArrowGrading& g, const Term& t) {
  std::vector<int> d(g.A.size(), 0);
  for (std::size_t v = 0; v < t.arity(); ++v)
    if (t[v])
      for (std::size_t k = 0; k < g.A.size(); ++k) d[k] += g.A[k][v] * t[v];
  return d;
}

// Reduced row echelon basis of the K-span of each arrow-degree block.
std::vector<Polynomial> interreduce_linear(const std::vector<Polynomial>& gens, const ArrowGrading& g) {
  std::map<std::vector<int>, std::vector<const Polynomial*>> blocks;
  for (auto& f : gens)
    if (!f.is_zero()) blocks[arrow_degree_of(g, f.terms()[0].term)].push_back(&f);
  std::vector<Polynomial> out;
  for (auto& [_, fs] : blocks) {
    std::map<Term, std::size_t, std::function<bool(const Term&, const Term&)>> cols(
        [](const Term& a, const Term& b) { return degrevlex_cmp(a, b) > 0; });
    for (auto* f : fs)
      for (auto& m : f->terms()) cols.emplace(m.term, 0);
    std::vector<Term> terms;
    for (auto& [t, idx] : cols) {
      idx = terms.size();
      terms.push_back(t);
    }
    std::vector<std::vector<Rational>> m;
    for (auto* f : fs) {
      std::vector<Rational> row(terms.size(), 0);
      for (auto& mo : f->terms()) row[cols.at(mo.term)] = mo.coef;
      m.push_back(std::move(row));
    }
    Rref R = rref(std::move(m));
    std::size_t n = gens[0].arity();
    for (auto& row : R.rows) {
      std::vector<Polynomial::Mono> ms;
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) ms.push_back({terms[c], row[c]});
      out.push_back(Polynomial::from_terms(n, std::move(ms)));
    }
  }
  return out;
}

std::int64_t wdeg(const std::vector<std::int64_t>& W, const Term& t) {
  std::int64_t s = 0;
  for (std::size_t v = 0; v < t.arity(); ++v) s += W[v] * t[v];
  return s;
}

}  // namespace

std::vector<Polynomial> minimal_homogeneous_generators(std::vector<Polynomial> gens, const std::vector<std::int64_t>& W,
                                                       std::uint64_t gb_budget) {
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Polynomial& f) { return f.is_zero(); }), gens.end());
  if (gens.empty()) return {};
  for (auto w : W)
    if (w < 0) throw DomainError("minimal generators need a non-negative grading");
  std::stable_sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
    auto da = wdeg(W, a.terms()[0].term), db = wdeg(W, b.terms()[0].term);
    if (da != db) return da < db;
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.size() < b.size();
  });
  const std::size_t n = gens[0].arity();
  auto M = OrderingMatrix::degrevlex(n);
  std::vector<Polynomial> kept, basis;
  std::int64_t basis_deg = -1;
  for (auto& f : gens) {
    std::int64_t d = wdeg(W, f.terms()[0].term);
    if (kept.empty()) {
      kept.push_back(f);
      continue;
    }
    if (normal_form(M, f, kept, gb_budget).is_zero()) continue;
    if (basis_deg != d || basis.empty()) {
      GroebnerOptions opt;
      opt.step_budget = gb_budget;
      opt.degree_bound = d;
      opt.grading = W;
      basis = groebner_basis(M, kept, opt);
      basis_deg = d;
    }
    if (normal_form(M, f, basis, gb_budget).is_zero()) continue;
    kept.push_back(f);
    basis.clear();
  }
  return kept;
}

ReembeddingResult zsep_reembed(const BBScheme& S, const SeparatingWitness& wit, const SearchOptions& opt) {
  ReembeddingResult out;
  const std::size_t N = S.num_vars();
  out.eliminated = wit.Z;
  std::sort(out.eliminated.begin(), out.eliminated.end());
  std::vector<bool> gone(N, false);
  for (auto z : wit.Z) gone[z] = true;
  for (std::size_t v = 0; v < N; ++v)
    if (!gone[v]) out.remaining.push_back(v);
  out.substitution = wit.Z.empty() ? SubstitutionMap(N) : coherentize(wit.F, wit.Z, wit.w);
  if (!out.substitution.is_coherent()) throw StructuralError("incoherent substitution");
  std::vector<Polynomial> rewritten;
  for (auto& g : natural_generators(S)) {
    Polynomial f = substitute(g.poly, out.substitution);
    if (f.is_zero()) continue;
    for (auto z : wit.Z)
      if (f.contains_var(z)) throw StructuralError("eliminated variable survived the rewrite");
    rewritten.push_back(std::move(f));
  }
  auto grading = arrow_grading(S);
  out.new_generators = interreduce_linear(rewritten, grading);
  out.presentation_dim = out.remaining.size();
  std::vector<std::int64_t> W(grading.W.begin(), grading.W.end());
  bool nonneg = std::all_of(W.begin(), W.end(), [](std::int64_t w) { return w >= 0; });
  out.minimal_generators = nonneg ? minimal_homogeneous_generators(out.new_generators, W, opt.gb_budget)
                                  : out.new_generators;
  return out;
}

namespace {

OrderingMatrix elimination_order(const std::vector<bool>& elim, const std::vector<std::int64_t>& grading) {
  if (grading.empty()) return OrderingMatrix::elimination(elim);
  std::vector<std::int64_t> row(elim.size());
  for (std::size_t i = 0; i < elim.size(); ++i) row[i] = elim[i] ? 1 : 0;
  return OrderingMatrix::with_tiebreak({row, grading}, elim.size());
}

}  // namespace

std::vector<Polynomial> gb_elimination(const std::vector<Polynomial>& F, const std::vector<bool>& elim,
                                       std::uint64_t gb_budget, const std::vector<std::int64_t>& grading) {
  if (F.empty()) return {};
  auto M = elimination_order(elim, grading);
  GroebnerOptions opt;
  opt.step_budget = gb_budget;
  opt.sugar = true;
  opt.selection = grading;
  std::vector<Polynomial> out;
  for (auto& g : groebner_basis(M, F, opt)) {
    bool free = true;
    for (auto v : g.support_vars())
      if (elim[v]) free = false;
    if (free) out.push_back(g);
  }
  return out;
}

std::optional<std::vector<std::int64_t>> positive_arrow_grading(const BBScheme& S) {
  auto g = arrow_grading(S);
  const std::size_t n = S.n(), N = S.num_vars();
  std::vector<WeightConstraint> cons;
  for (std::size_t v = 0; v < N; ++v) {
    Term win(n), lose(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (g.A[k][v] > 0) win.set(k, static_cast<unsigned>(g.A[k][v]));
      if (g.A[k][v] < 0) lose.set(k, static_cast<unsigned>(-g.A[k][v]));
    }
    cons.push_back({win, {lose}});
  }
  auto lam = lp_realizable(cons, n);
  if (!lam) return std::nullopt;
  mpz_class l = 1;
  for (auto& q : *lam) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<std::int64_t> out(N, 0);
  for (std::size_t v = 0; v < N; ++v) {
    mpz_class s = 0;
    for (std::size_t k = 0; k < n; ++k) s += mpz_class((*lam)[k].get_num() * (l / (*lam)[k].get_den())) * g.A[k][v];
    if (s <= 0 || !s.fits_slong_p()) return std::nullopt;
    out[v] = s.get_si();
  }
  return out;
}

std::vector<Polynomial> c0_intersection(const BBScheme& S, std::uint64_t gb_budget) {
  const std::size_t N = S.num_vars();
  auto grading = arrow_grading(S);
  SubstitutionMap kill(N);
  for (std::size_t v = 0; v < N; ++v)
    if (grading.W[v] < 0) kill.assign(v, Polynomial(N));
  std::vector<Polynomial> F;
  for (auto& g : natural_generators(S)) {
    Polynomial f = substitute(g.poly, kill);
    if (!f.is_zero()) F.push_back(std::move(f));
  }
  std::vector<bool> elim(N);
  std::vector<std::int64_t> W(N);
  for (std::size_t v = 0; v < N; ++v) {
    elim[v] = grading.W[v] != 0;
    W[v] = std::max(grading.W[v], 0);
  }
  if (F.empty()) return {};
  auto M = OrderingMatrix::elimination(elim);
  GroebnerOptions opt;
  opt.step_budget = gb_budget;
  opt.degree_bound = 0;
  opt.grading = W;
  std::vector<Polynomial> out;
  for (auto& g : groebner_basis(M, F, opt)) {
    bool free = true;
    for (auto v : g.support_vars())
      if (elim[v]) free = false;
    if (free) out.push_back(g);
  }
  return out;
}

}  // namespace bbs

namespace bbs {

EliminationComparison compare_eliminations(const BBScheme& S, const std::vector<std::size_t>& Z,
                                           const SearchOptions& opt) {
  auto chk = check_separating(S, Z, opt);
  if (chk.status == SearchStatus::Budget) throw BudgetExceeded("separating check: " + chk.reason);
  if (chk.status != SearchStatus::Found) throw DomainError("Z is not separating: " + chk.reason);
  EliminationComparison out;
  out.Z = chk.witness->Z;
  std::sort(out.Z.begin(), out.Z.end());
  out.substitution = zsep_reembed(S, *chk.witness, opt);
  std::vector<bool> elim(S.num_vars(), false);
  for (auto z : out.Z) elim[z] = true;
  auto grading = positive_arrow_grading(S).value_or(std::vector<std::int64_t>{});
  out.groebner = gb_elimination(polys(natural_generators(S)), elim, opt.gb_budget, grading);
  // out.groebner is a Groebner basis of the elimination ideal for the order restricted to the kept variables,
  // so membership in it is a normal form; the other direction needs a basis of the substitution generators.
  auto M = elimination_order(elim, grading);
  const auto& F = out.substitution.new_generators;
  out.equal = true;
  for (auto& f : F)
    if (!normal_form(M, f, out.groebner, opt.gb_budget).is_zero()) out.equal = false;
  if (out.equal && !out.groebner.empty()) {
    GroebnerOptions go;
    go.step_budget = opt.gb_budget;
    go.selection = grading;
    auto GF = F.empty() ? F : groebner_basis(M, F, go);
    for (auto& g : out.groebner)
      if (!normal_form(M, g, GF, opt.gb_budget).is_zero()) out.equal = false;
  }
  return out;
}

std::vector<std::size_t> random_separating_subset(const BBScheme& S, std::uint64_t seed, const SearchOptions& opt) {
  std::vector<std::size_t> pool;
  if (is_maxdeg(S.O())) {
    auto best = best_separating_tuples(S, opt);
    if (!best.tuples.empty()) pool = best.tuples.front();
  } else if (S.n() == 2) {
    pool = exposure(S).non_exposed_vars();
  } else {
    throw DomainError("random separating subsets need a MaxDeg or planar order ideal");
  }
  if (pool.empty()) throw DomainError("no separating variables available");
  // At least half of a separating tuple: small subsets leave nearly all variables and stall Buchberger.
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t lo = (pool.size() + 1) / 2;
  std::size_t k = lo + rng() % (pool.size() - lo + 1);
  std::vector<std::size_t> Z(pool.begin(), pool.begin() + k);
  std::sort(Z.begin(), Z.end());
  return Z;
}

}  // namespace bbs
