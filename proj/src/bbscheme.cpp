#include "bbs/bbscheme.hpp"

#include <algorithm>
#include <map>

namespace bbs {

namespace {

std::vector<std::string> coefficient_names(std::size_t mu, std::size_t nu) {
  bool wide = mu >= 10 || nu >= 10;
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= mu; ++i)
    for (std::size_t j = 1; j <= nu; ++j)
      out.push_back("c" + std::to_string(i) + (wide ? "_" : "") + std::to_string(j));
  return out;
}

}  // namespace

BBScheme::BBScheme(OrderIdeal O) : O_(std::move(O)), B_(border(O_)), vt_(coefficient_names(O_.mu(), B_.size())) {
  shifts_.resize(n());
  for (std::size_t k = 0; k < n(); ++k) {
    for (std::size_t i = 0; i < mu(); ++i) {
      Exps u = O_.term(i);
      ++u[k];
      if (auto m = O_.index_of(u))
        shifts_[k].push_back({false, *m});
      else
        shifts_[k].push_back({true, *border_index(B_, u)});
    }
  }
}

PolyMatrix mult_matrix(const BBScheme& S, std::size_t r) {
  const std::size_t mu = S.mu(), N = S.num_vars();
  PolyMatrix A(mu, std::vector<Polynomial>(mu, Polynomial(N)));
  for (std::size_t j = 0; j < mu; ++j) {
    auto sh = S.shift(r, j);
    if (!sh.in_border)
      A[sh.index][j] = Polynomial::constant(N, 1);
    else
      for (std::size_t i = 0; i < mu; ++i) A[i][j] = S.c(i, sh.index);
  }
  return A;
}

std::string Generator::label() const {
  auto s = [](std::size_t v) { return std::to_string(v + 1); };
  switch (kind) {
    case Commutator:
      return "Comm(" + s(a) + "," + s(b) + ")[" + s(c) + "," + s(d) + "]";
    case ND:
      return "ND(" + s(a) + "," + s(b) + ")_" + s(c);
    case AR:
      return "AR(" + s(a) + "," + s(b) + ")_" + s(c);
    case Filter:
      return "var(" + s(a) + ")";
  }
  return {};
}

std::vector<Polynomial> polys(const GeneratorCatalog& G) {
  std::vector<Polynomial> out;
  for (auto& g : G) out.push_back(g.poly);
  return out;
}

namespace {

PolyMatrix matmul(const PolyMatrix& A, const PolyMatrix& B, std::size_t N) {
  std::size_t m = A.size();
  PolyMatrix C(m, std::vector<Polynomial>(m, Polynomial(N)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      PolyBuilder b(N);
      for (std::size_t k = 0; k < m; ++k)
        if (!A[i][k].is_zero() && !B[k][j].is_zero()) b.add(A[i][k] * B[k][j]);
      C[i][j] = b.build();
    }
  return C;
}

}  // namespace

GeneratorCatalog commutator_generators(const BBScheme& S) {
  GeneratorCatalog out;
  std::vector<PolyMatrix> A;
  for (std::size_t r = 0; r < S.n(); ++r) A.push_back(mult_matrix(S, r));
  for (std::size_t r = 0; r < S.n(); ++r)
    for (std::size_t s = r + 1; s < S.n(); ++s) {
      auto P = matmul(A[r], A[s], S.num_vars());
      auto Q = matmul(A[s], A[r], S.num_vars());
      for (std::size_t i = 0; i < S.mu(); ++i)
        for (std::size_t j = 0; j < S.mu(); ++j) {
          Polynomial e = P[i][j] - Q[i][j];
          if (!e.is_zero()) out.push_back({Generator::Commutator, r, s, i, j, std::move(e)});
        }
    }
  return out;
}

namespace {

// Accumulates sum_i coef * c_{i,j} * x_k t_i rewritten in the O basis, per coordinate.
void add_shifted(const BBScheme& S, std::vector<PolyBuilder>& coords, std::size_t k, std::size_t j,
                 const Rational& sign) {
  const std::size_t N = S.num_vars();
  for (std::size_t i = 0; i < S.mu(); ++i) {
    auto sh = S.shift(k, i);
    Term cij = Term::var(N, S.var(i, j));
    if (!sh.in_border) {
      coords[sh.index].add(cij, sign);
    } else {
      for (std::size_t m = 0; m < S.mu(); ++m) coords[m].add(cij * Term::var(N, S.var(m, sh.index)), sign);
    }
  }
}

}  // namespace

GeneratorCatalog natural_generators(const BBScheme& S) {
  GeneratorCatalog out;
  const std::size_t N = S.num_vars();
  for (auto& p : neighbor_pairs(S.O())) {
    std::vector<PolyBuilder> coords(S.mu(), PolyBuilder(N));
    if (p.kind == NeighborPair::NextDoor) {
      // x_k g_j - g_{j2} with b_{j2} = x_k b_j.
      add_shifted(S, coords, p.k, p.j, -1);
      for (std::size_t m = 0; m < S.mu(); ++m) coords[m].add(Term::var(N, S.var(m, p.j2)), 1);
    } else {
      // x_l g_j - x_k g_{j2} with b_j = x_k t_m, b_{j2} = x_l t_m.
      add_shifted(S, coords, p.l, p.j, -1);
      add_shifted(S, coords, p.k, p.j2, 1);
    }
    for (std::size_t m = 0; m < S.mu(); ++m) {
      Polynomial f = coords[m].build();
      if (f.is_zero()) continue;
      out.push_back({p.kind == NeighborPair::NextDoor ? Generator::ND : Generator::AR, p.j, p.j2, m, 0, std::move(f)});
    }
  }
  return out;
}

ArrowGrading arrow_grading(const BBScheme& S) {
  ArrowGrading g;
  g.A.assign(S.n(), std::vector<int>(S.num_vars(), 0));
  g.W.assign(S.num_vars(), 0);
  for (std::size_t i = 0; i < S.mu(); ++i)
    for (std::size_t j = 0; j < S.nu(); ++j) {
      bool pos = false;
      for (std::size_t k = 0; k < S.n(); ++k) {
        int v = S.B()[j][k] - S.O().term(i)[k];
        g.A[k][S.var(i, j)] = v;
        g.W[S.var(i, j)] += v;
        if (v > 0) pos = true;
      }
      if (!pos) throw StructuralError("arrow degree without positive component");
    }
  return g;
}

bool is_arrow_homogeneous(const ArrowGrading& g, const Polynomial& f) {
  if (f.is_zero()) return true;
  auto deg = [&](const Term& t) {
    std::vector<long> d(g.A.size(), 0);
    for (std::size_t v = 0; v < t.arity(); ++v)
      if (t[v])
        for (std::size_t k = 0; k < g.A.size(); ++k) d[k] += static_cast<long>(g.A[k][v]) * t[v];
    return d;
  };
  auto d0 = deg(f.terms()[0].term);
  for (auto& m : f.terms())
    if (deg(m.term) != d0) return false;
  return true;
}

C0Census c0_census(const BBScheme& S) {
  C0Census c;
  c.maxdeg = is_maxdeg(S.O());
  int d = S.O().max_degree();
  std::size_t nt = 0, nb = 0;
  for (auto& t : S.O().terms()) nt += exps_degree(t) == d;
  for (auto& b : S.B()) nb += exps_degree(b) == d;
  c.formula = nt * nb;
  for (std::size_t i = 0; i < S.mu(); ++i)
    for (std::size_t j = 0; j < S.nu(); ++j)
      if (exps_degree(S.O().term(i)) == d && exps_degree(S.B()[j]) == d) c.C0.push_back(S.var(i, j));
  c.count = c.C0.size();
  if (c.maxdeg) {
    // For MaxDeg borders these are exactly the variables of total arrow degree zero.
    auto g = arrow_grading(S);
    std::size_t zeros = static_cast<std::size_t>(std::count(g.W.begin(), g.W.end(), 0));
    if (zeros != c.count) throw StructuralError("C0 census disagrees with the arrow grading");
  }
  return c;
}

std::vector<PolyMatrix> homogeneous_matrices(const BBScheme& S) {
  if (!is_maxdeg(S.O())) throw DomainError("homogeneous matrices require a MaxDeg border");
  auto g = arrow_grading(S);
  SubstitutionMap kill(S.num_vars());
  for (std::size_t v = 0; v < S.num_vars(); ++v)
    if (g.W[v] > 0) kill.assign(v, Polynomial(S.num_vars()));
  std::vector<PolyMatrix> out;
  for (std::size_t r = 0; r < S.n(); ++r) {
    auto A = mult_matrix(S, r);
    for (auto& row : A)
      for (auto& e : row) e = substitute(e, kill);
    out.push_back(std::move(A));
  }
  return out;
}

GeneratorCatalog degree_filtered_ideal(const BBScheme& S) {
  auto G = natural_generators(S);
  auto g = arrow_grading(S);
  for (std::size_t v = 0; v < S.num_vars(); ++v)
    if (g.W[v] < 0)
      G.push_back({Generator::Filter, v, 0, 0, 0, Polynomial::variable(S.num_vars(), v)});
  return G;
}

GeneratorCatalog fiber_ideal(const BBScheme& S, const std::vector<Rational>& gamma) {
  if (!is_maxdeg(S.O())) throw DomainError("fiber ideals require a MaxDeg border");
  auto census = c0_census(S);
  if (gamma.size() != census.C0.size()) throw StructuralError("fiber point has wrong dimension");
  SubstitutionMap at(S.num_vars());
  for (std::size_t k = 0; k < gamma.size(); ++k)
    at.assign(census.C0[k], Polynomial::constant(S.num_vars(), gamma[k]));
  GeneratorCatalog out;
  for (auto& g : natural_generators(S)) {
    Polynomial f = substitute(g.poly, at);
    if (!f.is_zero()) out.push_back({g.kind, g.a, g.b, g.c, g.d, std::move(f)});
  }
  return out;
}

std::vector<std::size_t> ExposureInfo::exposed_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < exposed.size(); ++v)
    if (exposed[v]) out.push_back(v);
  return out;
}

std::vector<std::size_t> ExposureInfo::non_exposed_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < exposed.size(); ++v)
    if (!exposed[v]) out.push_back(v);
  return out;
}

ExposureInfo exposure(const BBScheme& S) {
  ExposureInfo e;
  const std::size_t N = S.num_vars(), n = S.n();
  e.exposed.assign(N, false);
  e.direction.assign(N, -1);
  e.rim.assign(N, false);
  auto rimint = rim_interior_split(S.O());
  for (auto i : rimint.rim)
    for (std::size_t j = 0; j < S.nu(); ++j) e.rim[S.var(i, j)] = true;
  for (std::size_t i = 0; i < S.mu(); ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (!S.shift(l, i).in_border) continue;
      for (std::size_t j = 0; j < S.nu(); ++j) {
        std::size_t v = S.var(i, j);
        if (e.exposed[v]) continue;
        const Exps& b = S.B()[j];
        Exps u = b;
        ++u[l];
        bool ok = border_index(S.B(), u).has_value();
        for (std::size_t k = 0; k < n && !ok; ++k) {
          if (k == l || b[k] == 0) continue;
          Exps t = b;
          --t[k];
          if (!S.O().contains(t)) continue;
          ++t[l];
          ok = border_index(S.B(), t).has_value();
        }
        if (ok) {
          e.exposed[v] = true;
          e.direction[v] = static_cast<int>(l);
        }
      }
    }
  return e;
}

std::vector<std::size_t> exposed_border_terms(const BBScheme& S, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < S.nu(); ++j) {
    const Exps& b = S.B()[j];
    if (!b[k]) continue;
    Exps t = b;
    --t[k];
    if (S.O().contains(t)) out.push_back(j);
  }
  return out;
}

Polynomial linear_part(const Polynomial& f) { return f.component(1); }

CotangentClasses cotangent_classes(const BBScheme& S) {
  const std::size_t N = S.num_vars();
  std::vector<std::vector<Rational>> rows;
  std::vector<bool> occurs(N, false);
  for (auto& g : natural_generators(S)) {
    Polynomial l = linear_part(g.poly);
    if (l.is_zero()) continue;
    std::vector<Rational> row(N, 0);
    for (auto& m : l.terms())
      for (std::size_t v = 0; v < N; ++v)
        if (m.term[v]) {
          row[v] = m.coef;
          occurs[v] = true;
        }
    rows.push_back(std::move(row));
  }
  Rref R = rref(rows);
  CotangentClasses out;
  out.rank = R.pivots.size();
  out.class_of.assign(N, -1);
  // Residue of c_v modulo the span: e_v minus the pivot-row contributions.
  std::vector<std::vector<Rational>> residue(N);
  for (std::size_t v = 0; v < N; ++v) {
    std::vector<Rational> r(N, 0);
    r[v] = 1;
    for (std::size_t k = 0; k < R.pivots.size(); ++k) {
      std::size_t p = R.pivots[k];
      if (r[p] == 0) continue;
      Rational f = r[p];
      for (std::size_t c = 0; c < N; ++c)
        if (R.rows[k][c] != 0) r[c] -= f * R.rows[k][c];
    }
    residue[v] = std::move(r);
  }
  auto normalized = [&](std::vector<Rational> r) {
    for (auto& x : r)
      if (x != 0) {
        Rational inv = 1 / x;
        for (auto& y : r) y *= inv;
        break;
      }
    return r;
  };
  std::map<std::vector<Rational>, std::vector<std::size_t>> groups;
  std::vector<std::vector<Rational>> key(N);
  for (std::size_t v = 0; v < N; ++v) {
    bool zero = std::all_of(residue[v].begin(), residue[v].end(), [](const Rational& q) { return q == 0; });
    if (zero) {
      out.E0.push_back(v);
      out.class_of[v] = 0;
      continue;
    }
    key[v] = normalized(residue[v]);
    groups[key[v]].push_back(v);
  }
  std::vector<std::vector<std::size_t>> proper;
  for (auto& [_, vs] : groups)
    if (vs.size() >= 2) proper.push_back(vs);
  std::sort(proper.begin(), proper.end());
  for (std::size_t k = 0; k < proper.size(); ++k)
    for (auto v : proper[k]) out.class_of[v] = static_cast<int>(k + 1);
  out.proper = std::move(proper);
  for (std::size_t v = 0; v < N; ++v) {
    if (out.class_of[v] == -1) out.singletons.push_back(v);
    if (!occurs[v]) out.basic.push_back(v);
  }
  return out;
}

std::size_t cotangent_dim(const BBScheme& S) { return S.num_vars() - cotangent_classes(S).rank; }

}  // namespace bbs
