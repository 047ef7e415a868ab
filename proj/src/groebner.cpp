// Buchberger with the normal strategy and Gebauer-Moeller pair elimination.
#include <algorithm>
#include <array>
#include <limits>
#include <memory>
#include <numeric>

#include "bbs/polyring.hpp"

namespace bbs {

namespace {

// Rational coefficient that stays in machine words while it fits and falls back to GMP otherwise.
class Coef {
 public:
  Coef() = default;
  explicit Coef(const Rational& r) {
    if (mpz_fits_slong_p(r.get_num_mpz_t()) && mpz_fits_slong_p(r.get_den_mpz_t()) &&
        r.get_num().get_si() != kMin)
      n_ = r.get_num().get_si(), d_ = r.get_den().get_si();
    else
      big_ = std::make_unique<Rational>(r);
  }
  Coef(const Coef& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? std::make_unique<Rational>(*o.big_) : nullptr) {}
  Coef(Coef&&) noexcept = default;
  Coef& operator=(Coef&&) noexcept = default;
  Coef& operator=(const Coef& o) {
    if (this != &o) *this = Coef(o);
    return *this;
  }

  bool is_zero() const { return big_ ? *big_ == 0 : n_ == 0; }
  bool is_one() const { return big_ ? *big_ == 1 : n_ == 1 && d_ == 1; }
  Rational rational() const {
    if (big_) return *big_;
    return Rational(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
  }

  friend Coef operator*(const Coef& a, const Coef& b) {
    if (a.big_ || b.big_) return Coef(Rational(a.rational() * b.rational()));
    std::int64_t g1 = std::gcd(a.n_, b.d_), g2 = std::gcd(b.n_, a.d_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return make(static_cast<__int128>(a.n_ / g1) * (b.n_ / g2), static_cast<__int128>(a.d_ / g2) * (b.d_ / g1));
  }
  friend Coef operator/(const Coef& a, const Coef& b) {
    if (a.big_ || b.big_) return Coef(Rational(a.rational() / b.rational()));
    Coef inv;
    inv.n_ = b.n_ < 0 ? -b.d_ : b.d_;
    inv.d_ = b.n_ < 0 ? -b.n_ : b.n_;
    return a * inv;
  }
  // a - c * b
  static Coef msub(const Coef& a, const Coef& c, const Coef& b) {
    Coef cb = c * b;
    if (a.big_ || cb.big_) return Coef(Rational(a.rational() - cb.rational()));
    std::int64_t g = std::gcd(a.d_, cb.d_);
    __int128 num = static_cast<__int128>(a.n_) * (cb.d_ / g) - static_cast<__int128>(cb.n_) * (a.d_ / g);
    return make(num, static_cast<__int128>(a.d_) * (cb.d_ / g));
  }
  Coef operator-() const {
    if (big_) return Coef(Rational(-*big_));
    Coef r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }

 private:
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  static bool fits(__int128 v) { return v > kMin && v <= std::numeric_limits<std::int64_t>::max(); }

  // num/den with den > 0, not necessarily in lowest terms.
  static Coef make(__int128 num, __int128 den) {
    if (num == 0) return Coef();
    if (fits(num) && fits(den)) {
      std::int64_t nn = static_cast<std::int64_t>(num), dd = static_cast<std::int64_t>(den);
      std::int64_t g = std::gcd(nn, dd);
      Coef r;
      r.n_ = nn / g;
      r.d_ = dd / g;
      return r;
    }
    return Coef(Rational(big_int(num), big_int(den)));
  }

  static mpz_class big_int(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  std::int64_t n_ = 0, d_ = 1;
  std::unique_ptr<Rational> big_;
};

constexpr std::size_t kKeyRows = 4;
using Key = std::array<std::int64_t, kKeyRows>;

struct Mono {
  Term term;
  Coef coef;
  Key key{};  // leading weight rows of the ordering, cached
};
using OPoly = std::vector<Mono>;  // sorted decreasing w.r.t. the active ordering

// Compares terms through their cached weight rows, falling back to the tie-break.
class Keyed {
 public:
  explicit Keyed(const OrderingMatrix& M) : M_(M), rows_(std::min(M.prefix_rows(), kKeyRows)) {}

  Key key(const Term& t) const {
    Key k{};
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& row = M_.rows()[r];
      std::int64_t s = 0;
      for (std::size_t i = 0; i < t.arity(); ++i) s += row[i] * t[i];
      k[r] = s;
    }
    return k;
  }

  static Key add(const Key& a, const Key& b) {
    Key k;
    for (std::size_t r = 0; r < kKeyRows; ++r) k[r] = a[r] + b[r];
    return k;
  }

  int compare(const Term& t, const Key& kt, const Term& u, const Key& ku) const {
    for (std::size_t r = 0; r < rows_; ++r)
      if (kt[r] != ku[r]) return kt[r] > ku[r] ? 1 : -1;
    if (M_.prefix_rows() > kKeyRows) return M_.compare(t, u);
    if (M_.tie_kind() == 1) return degrevlex_cmp(t, u);
    if (M_.tie_kind() == 2)
      for (std::size_t i = 0; i < t.arity(); ++i)
        if (t[i] != u[i]) return t[i] > u[i] ? 1 : -1;
    return 0;
  }
  int compare(const Mono& a, const Mono& b) const { return compare(a.term, a.key, b.term, b.key); }

  const OrderingMatrix& matrix() const { return M_; }

 private:
  const OrderingMatrix& M_;
  std::size_t rows_;
};

OPoly to_opoly(const Keyed& K, const Polynomial& f) {
  OPoly p;
  p.reserve(f.terms().size());
  for (auto& m : f.terms()) p.push_back({m.term, Coef(m.coef), K.key(m.term)});
  const auto& M = K.matrix();
  if (M.tie_kind() != 1 || M.prefix_rows() != 0)
    std::sort(p.begin(), p.end(), [&](const Mono& a, const Mono& b) { return K.compare(a, b) > 0; });
  return p;
}

Polynomial to_poly(std::size_t n, OPoly p) {
  std::vector<Polynomial::Mono> out;
  out.reserve(p.size());
  for (auto& m : p) out.push_back({std::move(m.term), m.coef.rational()});
  return Polynomial::from_terms(n, std::move(out));
}

void make_monic(OPoly& p) {
  if (p.empty() || p[0].coef.is_one()) return;
  Coef lc = p[0].coef;
  for (auto& m : p) m.coef = m.coef / lc;
}

// p[from..] - c * t * g; consumes p.
OPoly sub_mul(const Keyed& K, OPoly&& p, std::size_t from, const Coef& c, const Term& t, const OPoly& g) {
  OPoly out;
  out.reserve(p.size() - from + g.size());
  Key kt = K.key(t);
  std::size_t i = from, j = 0;
  Term tg;
  Key kg{};
  bool have = false;
  while (i < p.size() || j < g.size()) {
    if (j < g.size() && !have) {
      tg = g[j].term * t;
      kg = Keyed::add(g[j].key, kt);
      have = true;
    }
    int cmp = i == p.size() ? -1 : j == g.size() ? 1 : K.compare(p[i].term, p[i].key, tg, kg);
    if (cmp > 0) {
      out.push_back(std::move(p[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(tg), -(c * g[j].coef), kg});
      ++j;
      have = false;
    } else {
      Coef s = Coef::msub(p[i].coef, c, g[j].coef);
      if (!s.is_zero()) out.push_back({std::move(p[i].term), std::move(s), p[i].key});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

struct Engine {
  const OrderingMatrix& M;
  Keyed K;
  const GroebnerOptions& opt;
  std::size_t n;
  std::uint64_t steps = 0;
  std::vector<OPoly> polys;
  std::vector<bool> active;
  std::vector<int> pos;  // module position of each LT, -1 if none
  std::vector<unsigned> sug;

  Engine(const OrderingMatrix& m, const GroebnerOptions& o, std::size_t arity) : M(m), K(m), opt(o), n(arity) {}

  void tick() {
    if (++steps > opt.step_budget) throw BudgetExceeded("Groebner step budget exhausted");
  }

  int position_of(const Term& t) const {
    if (opt.positions.empty()) return -1;
    for (std::size_t i = 0; i < n; ++i)
      if (t[i] && opt.positions[i]) return static_cast<int>(i);
    return -1;
  }

  std::int64_t grade(const Term& t) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += opt.grading[i] * t[i];
    return s;
  }

  const OPoly* find_reducer(const Term& t) const {
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k] && polys[k][0].term.divides(t)) return &polys[k];
    return nullptr;
  }

  // Full reduction against the active basis.
  OPoly reduce(OPoly p, bool full) {
    OPoly done;
    std::size_t i = 0;
    while (i < p.size()) {
      const OPoly* g = find_reducer(p[i].term);
      if (!g) {
        if (!full) {
          done.insert(done.end(), std::make_move_iterator(p.begin() + static_cast<std::ptrdiff_t>(i)),
                      std::make_move_iterator(p.end()));
          return done;
        }
        done.push_back(std::move(p[i++]));
        continue;
      }
      tick();
      Term t = (*g)[0].term.quotient_of(p[i].term);
      Coef c = p[i].coef / (*g)[0].coef;
      p = sub_mul(K, std::move(p), i, c, t, *g);
      i = 0;
    }
    return done;
  }

  struct Pair {
    std::size_t i, j;
    Term lcm;
    unsigned sugar = 0;
  };

  static unsigned max_degree(const OPoly& p) {
    unsigned d = 0;
    for (auto& m : p) d = std::max(d, m.term.degree());
    return d;
  }

  std::int64_t select_degree(const Term& t) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += opt.selection[i] * t[i];
    return s;
  }

  unsigned pair_sugar(std::size_t i, std::size_t j, const Term& lcm) const {
    if (!opt.selection.empty()) return static_cast<unsigned>(select_degree(lcm));
    unsigned d = lcm.degree();
    return std::max(sug[i] + d - polys[i][0].term.degree(), sug[j] + d - polys[j][0].term.degree());
  }
  std::vector<Pair> pairs;

  void update(std::size_t h) {
    const Term& lh = polys[h][0].term;
    int ph = pos[h];
    std::vector<Pair> C, D;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g] || pos[g] != ph) continue;
      Term l = polys[g][0].term.lcm(lh);
      C.push_back({g, h, l, pair_sugar(g, h, l)});
    }
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Term& lg = polys[C[a].i][0].term;
      bool keep = lg.coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(C[a].lcm)) keep = false;
        for (auto& d : D)
          if (keep && d.lcm.divides(C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(C[a]);
    }
    std::vector<Pair> E;
    for (auto& d : D)
      if (!polys[d.i][0].term.coprime(lh)) E.push_back(d);
    std::vector<Pair> kept;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && polys[p.i][0].term.lcm(lh) != p.lcm && polys[p.j][0].term.lcm(lh) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    for (auto& e : E) pairs.push_back(std::move(e));
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && lh.divides(polys[g][0].term)) active[g] = false;
  }

  void add(OPoly p, unsigned sugar) {
    make_monic(p);
    if (!opt.discard_positions.empty()) {
      int ps = position_of(p[0].term);
      if (ps >= 0 && opt.discard_positions[static_cast<std::size_t>(ps)]) return;
    }
    sug.push_back(std::max(sugar, max_degree(p)));
    polys.push_back(std::move(p));
    active.push_back(true);
    pos.push_back(position_of(polys.back()[0].term));
    update(polys.size() - 1);
  }

  bool within_bound(const Term& t) const { return !opt.degree_bound || grade(t) <= *opt.degree_bound; }

  void run(const std::vector<Polynomial>& F, GroebnerStats* stats) {
    std::vector<OPoly> in;
    for (auto& f : F)
      if (!f.is_zero()) in.push_back(to_opoly(K, f));
    std::sort(in.begin(), in.end(), [&](const OPoly& a, const OPoly& b) { return M.compare(a[0].term, b[0].term) < 0; });
    for (auto& f : in) {
      OPoly r = reduce(std::move(f), false);
      if (!r.empty()) add(std::move(r), 0);
    }
    std::uint64_t npairs = 0;
    while (!pairs.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs.size(); ++k) {
        if ((opt.sugar || !opt.selection.empty()) && pairs[k].sugar != pairs[best].sugar) {
          if (pairs[k].sugar < pairs[best].sugar) best = k;
        } else if (M.compare(pairs[k].lcm, pairs[best].lcm) < 0) {
          best = k;
        }
      }
      Pair pr = pairs[best];
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
      if (!within_bound(pr.lcm)) continue;
      ++npairs;
      tick();
      const OPoly& a = polys[pr.i];
      const OPoly& b = polys[pr.j];
      Term ta = a[0].term.quotient_of(pr.lcm), tb = b[0].term.quotient_of(pr.lcm);
      OPoly s;
      Key ka = K.key(ta);
      for (std::size_t k = 1; k < a.size(); ++k) s.push_back({a[k].term * ta, a[k].coef, Keyed::add(a[k].key, ka)});
      s = sub_mul(K, std::move(s), 0, Coef(Rational(1)), tb, OPoly(b.begin() + 1, b.end()));
      OPoly r = reduce(std::move(s), false);
      if (!r.empty()) add(std::move(r), pr.sugar);
    }
    if (stats) {
      stats->steps = steps;
      stats->pairs = npairs;
    }
  }

  std::vector<Polynomial> reduced() {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k]) idx.push_back(k);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return M.compare(polys[a][0].term, polys[b][0].term) < 0; });
    std::vector<Polynomial> out;
    for (auto k : idx) {
      active[k] = false;
      OPoly tail(polys[k].begin() + 1, polys[k].end());
      OPoly r = reduce(std::move(tail), true);
      OPoly full;
      full.push_back(polys[k][0]);
      full.insert(full.end(), r.begin(), r.end());
      active[k] = true;
      polys[k] = full;
      out.push_back(to_poly(n, std::move(full)));
    }
    return out;
  }
};

}  // namespace

std::vector<Polynomial> groebner_basis(const OrderingMatrix& M, const std::vector<Polynomial>& F,
                                       const GroebnerOptions& opt, GroebnerStats* stats) {
  std::size_t n = M.arity();
  for (auto& f : F)
    if (f.arity() != n && !f.is_zero()) throw StructuralError("arity mismatch in groebner_basis");
  if (opt.degree_bound && opt.grading.size() != n) throw StructuralError("grading arity mismatch");
  Engine e(M, opt, n);
  e.run(F, stats);
  return e.reduced();
}

Polynomial normal_form(const OrderingMatrix& M, const Polynomial& f, const std::vector<Polynomial>& G,
                       std::uint64_t step_budget) {
  GroebnerOptions opt;
  opt.step_budget = step_budget;
  Engine e(M, opt, M.arity());
  for (auto& g : G) {
    if (g.is_zero()) continue;
    e.polys.push_back(to_opoly(e.K, g));
    e.active.push_back(true);
    e.pos.push_back(-1);
    e.sug.push_back(0);
  }
  return to_poly(M.arity(), e.reduce(to_opoly(e.K, f), true));
}

bool ideal_contains(const std::vector<Polynomial>& F, const Polynomial& g, std::uint64_t step_budget) {
  if (g.is_zero()) return true;
  auto M = OrderingMatrix::degrevlex(g.arity());
  if (normal_form(M, g, F, step_budget).is_zero()) return true;
  GroebnerOptions opt;
  opt.step_budget = step_budget;
  auto G = groebner_basis(M, F, opt);
  return normal_form(M, g, G, step_budget).is_zero();
}

bool ideal_equal(const std::vector<Polynomial>& F, const std::vector<Polynomial>& G, std::uint64_t step_budget,
                 const std::vector<std::int64_t>& grading) {
  std::size_t n = 0;
  for (auto& f : F) n = std::max(n, f.arity());
  for (auto& f : G) n = std::max(n, f.arity());
  if (n == 0) return true;
  if (!grading.empty() && grading.size() != n) throw StructuralError("grading arity mismatch");
  auto M = grading.empty() ? OrderingMatrix::degrevlex(n) : OrderingMatrix::with_tiebreak({grading}, n);
  GroebnerOptions opt;
  opt.step_budget = step_budget;
  opt.selection = grading;
  std::vector<Polynomial> gf, gg;
  auto in = [&](const std::vector<Polynomial>& A, std::vector<Polynomial>& gA, const Polynomial& p) {
    if (p.is_zero() || normal_form(M, p, A, step_budget).is_zero()) return true;
    if (gA.empty()) gA = groebner_basis(M, A, opt);
    return normal_form(M, p, gA, step_budget).is_zero();
  };
  for (auto& g : G)
    if (!in(F, gf, g)) return false;
  for (auto& f : F)
    if (!in(G, gg, f)) return false;
  return true;
}

}  // namespace bbs
