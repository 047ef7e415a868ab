#include "bbs/orderideal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bbs {

int exps_degree(const Exps& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

bool canonical_less(const Exps& a, const Exps& b) {
  int da = exps_degree(a), db = exps_degree(b);
  if (da != db) return da < db;
  return a < b;
}

namespace {

std::string show(const Exps& e) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << "]";
  return os.str();
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

OrderIdeal OrderIdeal::validate(std::size_t n, std::vector<Exps> terms) {
  if (terms.empty()) throw DomainError("order ideal must be nonempty");
  for (auto& t : terms) {
    if (t.size() != n) throw DomainError("term " + show(t) + " has wrong length");
    for (int v : t)
      if (v < 0) throw DomainError("negative exponent in " + show(t));
  }
  std::sort(terms.begin(), terms.end(), canonical_less);
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] == terms[i - 1]) throw DomainError("duplicate term " + show(terms[i]));
  std::set<Exps> all(terms.begin(), terms.end());
  if (!all.count(Exps(n, 0))) throw OrderIdealError("order ideal must contain 1; witness " + show(Exps(n, 0)), Exps(n, 0));
  for (auto& t : terms) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!t[k]) continue;
      Exps d = t;
      --d[k];
      if (!all.count(d)) throw OrderIdealError("not divisibility-closed; witness " + show(d), d);
    }
  }
  OrderIdeal O;
  O.n_ = n;
  O.t_ = std::move(terms);
  return O;
}

std::optional<std::size_t> OrderIdeal::index_of(const Exps& e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e, canonical_less);
  if (it != t_.end() && *it == e) return static_cast<std::size_t>(it - t_.begin());
  return std::nullopt;
}

int OrderIdeal::max_degree() const { return exps_degree(t_.back()); }

std::vector<Exps> border(const OrderIdeal& O) {
  std::set<Exps> out;
  for (auto& t : O.terms()) {
    for (std::size_t k = 0; k < O.n(); ++k) {
      Exps u = t;
      ++u[k];
      if (!O.contains(u)) out.insert(u);
    }
  }
  std::vector<Exps> B(out.begin(), out.end());
  std::sort(B.begin(), B.end(), canonical_less);
  return B;
}

std::optional<std::size_t> border_index(const std::vector<Exps>& B, const Exps& e) {
  auto it = std::lower_bound(B.begin(), B.end(), e, canonical_less);
  if (it != B.end() && *it == e) return static_cast<std::size_t>(it - B.begin());
  return std::nullopt;
}

RimInterior rim_interior_split(const OrderIdeal& O) {
  RimInterior r;
  for (std::size_t i = 0; i < O.mu(); ++i) {
    bool rim = false;
    for (std::size_t k = 0; k < O.n() && !rim; ++k) {
      Exps u = O.term(i);
      ++u[k];
      rim = !O.contains(u);
    }
    (rim ? r.rim : r.interior).push_back(i);
  }
  return r;
}

std::vector<NeighborPair> neighbor_pairs(const OrderIdeal& O) {
  auto B = border(O);
  std::vector<NeighborPair> out;
  for (std::size_t j = 0; j < B.size(); ++j) {
    for (std::size_t k = 0; k < O.n(); ++k) {
      Exps u = B[j];
      ++u[k];
      if (auto j2 = border_index(B, u)) out.push_back({NeighborPair::NextDoor, j, *j2, k, k, 0});
    }
  }
  for (std::size_t m = 0; m < O.mu(); ++m) {
    for (std::size_t k = 0; k < O.n(); ++k) {
      for (std::size_t l = k + 1; l < O.n(); ++l) {
        Exps a = O.term(m), b = O.term(m);
        ++a[k];
        ++b[l];
        auto ja = border_index(B, a), jb = border_index(B, b);
        if (!ja || !jb) continue;
        if (*ja < *jb)
          out.push_back({NeighborPair::AcrossRim, *ja, *jb, k, l, m});
        else
          out.push_back({NeighborPair::AcrossRim, *jb, *ja, l, k, m});
      }
    }
  }
  return out;
}

std::vector<std::size_t> hilbert_function(const OrderIdeal& O) {
  std::vector<std::size_t> hf(static_cast<std::size_t>(O.max_degree()) + 1, 0);
  for (auto& t : O.terms()) ++hf[static_cast<std::size_t>(exps_degree(t))];
  return hf;
}

bool is_maxdeg(const OrderIdeal& O) {
  int mb = 1 << 30;
  for (auto& b : border(O)) mb = std::min(mb, exps_degree(b));
  return mb >= O.max_degree();
}

bool has_generic_hilbert_function(const OrderIdeal& O) {
  auto hf = hilbert_function(O);
  for (std::size_t i = 0; i + 1 < hf.size(); ++i)
    if (hf[i] != binom(i + O.n() - 1, O.n() - 1)) return false;
  return true;
}

std::optional<int> is_simplicial(const OrderIdeal& O) {
  auto hf = hilbert_function(O);
  for (std::size_t i = 0; i < hf.size(); ++i)
    if (hf[i] != binom(i + O.n() - 1, O.n() - 1)) return std::nullopt;
  return O.max_degree();
}

OrderIdeal make_box(const std::vector<int>& a) {
  if (a.empty()) throw DomainError("box needs at least one side");
  for (int v : a)
    if (v < 1) throw DomainError("box sides must be positive");
  std::vector<Exps> terms;
  Exps cur(a.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == a.size()) {
      terms.push_back(cur);
      return;
    }
    for (int e = 0; e < a[k]; ++e) {
      cur[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  return OrderIdeal::validate(a.size(), std::move(terms));
}

OrderIdeal make_simplicial(std::size_t n, int d) {
  if (n < 1 || d < 0) throw DomainError("simplicial needs n >= 1 and d >= 0");
  std::vector<Exps> terms;
  Exps cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == n) {
      terms.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e);
    }
    cur[k] = 0;
  };
  rec(0, d);
  return OrderIdeal::validate(n, std::move(terms));
}

SimplicialCounts simplicial_counts(std::size_t n, int d) {
  if (n < 1 || d < 1) throw DomainError("simplicial_counts needs n >= 1 and d >= 1");
  std::uint64_t N = n, D = static_cast<std::uint64_t>(d);
  SimplicialCounts c{};
  c.mu = binom(D + N, N);
  c.nu = binom(D + N, N - 1);
  c.o_int = binom(D - 1 + N, N);
  c.o_rim = binom(D + N - 1, N - 1);
  c.c = c.mu * c.nu;
  c.c_int = c.o_int * c.nu;
  c.c_rim = c.o_rim * c.nu;
  return c;
}

namespace {

void require_planar(const OrderIdeal& O) {
  if (O.n() != 2) throw DomainError("operation requires a planar order ideal (n = 2)");
}

}  // namespace

std::vector<PlateauInfo> plateaus_and_legs(const OrderIdeal& O) {
  require_planar(O);
  auto B = border(O);
  auto up = [&](const Exps& b) {
    return border_index(B, {b[0] + 1, b[1]}).has_value() || border_index(B, {b[0], b[1] + 1}).has_value();
  };
  // next[j]: b_j = y t and x t in the border with t in O.
  std::vector<std::optional<std::size_t>> next(B.size()), prev(B.size());
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (!B[j][1]) continue;
    Exps t{B[j][0], B[j][1] - 1};
    if (!O.contains(t)) continue;
    if (auto j2 = border_index(B, {t[0] + 1, t[1]})) {
      next[j] = *j2;
      prev[*j2] = j;
    }
  }
  std::vector<PlateauInfo> out;
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (prev[j]) continue;
    PlateauInfo p;
    for (std::optional<std::size_t> c = j; c; c = next[*c]) p.plateau.push_back(*c);
    if (up(B[p.plateau.front()]) || up(B[p.plateau.back()])) continue;
    // x-leg: b_{j1} = x b'_1, then x b'_{l+1} in {b'_l, y b'_l}.
    const Exps& first = B[p.plateau.front()];
    if (first[0] > 0) {
      if (auto s = border_index(B, {first[0] - 1, first[1]})) {
        p.x_leg.push_back(*s);
        while (true) {
          const Exps& c = B[p.x_leg.back()];
          std::optional<std::size_t> nx;
          if (c[0] > 0) nx = border_index(B, {c[0] - 1, c[1]});
          if (!nx && c[0] > 0) nx = border_index(B, {c[0] - 1, c[1] + 1});
          if (!nx) break;
          p.x_leg.push_back(*nx);
        }
      }
    }
    const Exps& last = B[p.plateau.back()];
    if (last[1] > 0) {
      if (auto s = border_index(B, {last[0], last[1] - 1})) {
        p.y_leg.push_back(*s);
        while (true) {
          const Exps& c = B[p.y_leg.back()];
          std::optional<std::size_t> ny;
          if (c[1] > 0) ny = border_index(B, {c[0], c[1] - 1});
          if (!ny && c[1] > 0) ny = border_index(B, {c[0] + 1, c[1] - 1});
          if (!ny) break;
          p.y_leg.push_back(*ny);
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

SegmentInfo segments(const OrderIdeal& O) {
  require_planar(O);
  SegmentInfo s;
  s.d = O.max_degree();
  int start = -1;
  for (int i = 0; i <= s.d + 1; ++i) {
    bool in = i <= s.d && O.contains({i, s.d - i});
    if (in && start < 0) start = i;
    if (!in && start >= 0) {
      s.segments.emplace_back(start, i - 1);
      s.lengths.push_back(i - start);
      start = -1;
    }
  }
  s.s = s.segments.size();
  return s;
}

MaxDegCounts maxdeg_counts(const OrderIdeal& O) {
  require_planar(O);
  if (!is_maxdeg(O)) throw DomainError("maxdeg_counts requires a MaxDeg border");
  if (is_simplicial(O)) throw DomainError("maxdeg_counts requires a non-simplicial order ideal");
  auto sg = segments(O);
  MaxDegCounts c{};
  c.mu = O.mu();
  std::size_t d = static_cast<std::size_t>(sg.d);
  std::size_t sum = 0;
  for (int l : sg.lengths) sum += static_cast<std::size_t>(l);
  c.mu_formula = d * (d + 1) / 2 + sum;
  c.nu = border(O).size();
  c.nu_formula = d + 1 + sg.s;
  c.mu_ok = c.mu == c.mu_formula;
  c.nu_ok = c.nu == c.nu_formula;
  return c;
}

std::vector<OrderIdeal> planar_order_ideals(std::size_t mu) {
  std::vector<OrderIdeal> out;
  std::vector<int> parts;
  // Partitions in decreasing lexicographic order; row j holds x^0 .. x^{parts[j]-1} y^j.
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      std::vector<Exps> terms;
      for (std::size_t j = 0; j < parts.size(); ++j)
        for (int i = 0; i < parts[j]; ++i) terms.push_back({i, static_cast<int>(j)});
      out.push_back(OrderIdeal::validate(2, std::move(terms)));
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  if (mu > 0) rec(static_cast<int>(mu), static_cast<int>(mu));
  return out;
}

}  // namespace bbs
