#include "bbs/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace bbs {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) throw StructuralError("duplicate variable name " + names_[i]);
  }
}

std::optional<std::size_t> VarTable::index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Term::Term(std::vector<Exp> e) : e_(e.begin(), e.end()) {
  for (auto v : e_) deg_ += v;
}

Term Term::var(std::size_t arity, std::size_t i, unsigned power) {
  Term t(arity);
  t.set(i, power);
  return t;
}

void Term::set(std::size_t i, unsigned v) {
  deg_ -= e_[i];
  e_[i] = static_cast<Exp>(v);
  deg_ += v;
}

Term Term::operator*(const Term& o) const {
  if (o.e_.size() != e_.size()) throw StructuralError("term arity mismatch");
  Term r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<Exp>(r.e_[i] + o.e_[i]);
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Term::divides(const Term& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Term Term::quotient_of(const Term& o) const {
  Term r(o);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<Exp>(r.e_[i] - e_[i]);
  r.deg_ = o.deg_ - deg_;
  return r;
}

Term Term::lcm(const Term& o) const {
  Term r(*this);
  r.deg_ = 0;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool Term::coprime(const Term& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

std::size_t Term::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : e_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

int degrevlex_cmp(const Term& a, const Term& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

namespace {

bool desc(const Polynomial::Mono& a, const Polynomial::Mono& b) { return degrevlex_cmp(a.term, b.term) > 0; }

}  // namespace

Polynomial Polynomial::constant(std::size_t arity, const Rational& c) {
  Polynomial p(arity);
  if (c != 0) p.m_.push_back({Term(arity), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t i) { return monomial(Term::var(arity, i), 1); }

Polynomial Polynomial::monomial(const Term& t, const Rational& c) {
  Polynomial p(t.arity());
  if (c != 0) p.m_.push_back({t, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t arity, std::vector<Mono> terms) {
  PolyBuilder b(arity);
  for (auto& m : terms) b.add(std::move(m.term), std::move(m.coef));
  return b.build();
}

int Polynomial::total_degree() const { return m_.empty() ? -1 : static_cast<int>(m_.front().term.degree()); }

bool Polynomial::is_constant() const { return m_.empty() || (m_.size() == 1 && m_[0].term.is_one()); }

Rational Polynomial::coefficient(const Term& t) const {
  auto it = std::lower_bound(m_.begin(), m_.end(), t,
                             [](const Mono& m, const Term& u) { return degrevlex_cmp(m.term, u) > 0; });
  if (it != m_.end() && it->term == t) return it->coef;
  return 0;
}

std::vector<std::size_t> Polynomial::support_vars() const {
  std::vector<bool> seen(arity_, false);
  for (auto& m : m_)
    for (std::size_t i = 0; i < arity_; ++i)
      if (m.term[i]) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arity_; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

bool Polynomial::contains_var(std::size_t v) const {
  return std::any_of(m_.begin(), m_.end(), [v](const Mono& m) { return m.term[v] != 0; });
}

Polynomial Polynomial::component(unsigned deg) const {
  Polynomial r(arity_);
  for (auto& m : m_)
    if (m.term.degree() == deg) r.m_.push_back(m);
  return r;
}

namespace {

std::vector<Polynomial::Mono> merge_add(const std::vector<Polynomial::Mono>& a, const std::vector<Polynomial::Mono>& b,
                                        bool negate_b) {
  std::vector<Polynomial::Mono> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : degrevlex_cmp(a[i].term, b[j].term);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coef = -out.back().coef;
    } else {
      Rational s = negate_b ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (s != 0) out.push_back({a[i].term, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(std::max(arity_, o.arity_));
  r.m_ = merge_add(m_, o.m_, false);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r(std::max(arity_, o.arity_));
  r.m_ = merge_add(m_, o.m_, true);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& m : r.m_) m.coef = -m.coef;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) { return *this = *this + o; }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this = *this - o; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (m_.empty() || o.m_.empty()) return Polynomial(std::max(arity_, o.arity_));
  if (o.m_.size() == 1) return mul_term(o.m_[0].term, o.m_[0].coef);
  if (m_.size() == 1) return o.mul_term(m_[0].term, m_[0].coef);
  PolyBuilder b(arity_);
  for (auto& x : m_)
    for (auto& y : o.m_) b.add(x.term * y.term, x.coef * y.coef);
  return b.build();
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(arity_);
  Polynomial r(*this);
  for (auto& m : r.m_) m.coef *= c;
  return r;
}

Polynomial Polynomial::mul_term(const Term& t, const Rational& c) const {
  Polynomial r(arity_);
  if (c == 0) return r;
  r.m_.reserve(m_.size());
  // degrevlex is multiplicative, so the order is preserved.
  for (auto& m : m_) r.m_.push_back({m.term * t, m.coef * c});
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(arity_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (m_.size() != o.m_.size()) return false;
  for (std::size_t i = 0; i < m_.size(); ++i)
    if (m_[i].term != o.m_[i].term || m_[i].coef != o.m_[i].coef) return false;
  return true;
}

Polynomial Polynomial::monic() const {
  if (m_.empty()) return *this;
  Rational inv = 1 / m_.front().coef;
  return *this * inv;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Polynomial::to_string(const VarTable& vt) const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& m : m_) {
    Rational c = m.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1 && !m.term.is_one();
    if (!unit) os << rational_str(c);
    bool need_star = !unit;
    for (std::size_t i = 0; i < m.term.arity(); ++i) {
      if (!m.term[i]) continue;
      if (need_star) os << "*";
      need_star = true;
      os << vt.name(i);
      if (m.term[i] > 1) os << "^" << m.term[i];
    }
  }
  return os.str();
}

void PolyBuilder::add(const Term& t, const Rational& c) {
  if (c == 0) return;
  auto [it, ins] = acc_.try_emplace(t, c);
  if (!ins) it->second += c;
}

void PolyBuilder::add(Term&& t, Rational&& c) {
  if (c == 0) return;
  auto it = acc_.find(t);
  if (it == acc_.end())
    acc_.emplace(std::move(t), std::move(c));
  else
    it->second += c;
}

void PolyBuilder::add(const Polynomial& p, const Rational& scale) {
  for (auto& m : p.terms()) add(m.term, m.coef * scale);
}

void PolyBuilder::add_product(const Polynomial& p, const Term& t, const Rational& c) {
  for (auto& m : p.terms()) add(m.term * t, m.coef * c);
}

Polynomial PolyBuilder::build() {
  Polynomial p(arity_);
  p.m_.reserve(acc_.size());
  for (auto& [t, c] : acc_)
    if (c != 0) p.m_.push_back({t, c});
  std::sort(p.m_.begin(), p.m_.end(), desc);
  acc_.clear();
  return p;
}

Polynomial parse_polynomial(std::string_view s, const VarTable& vt) {
  const std::size_t n = vt.arity();
  PolyBuilder b(n);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::string {
    std::size_t st = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(st, pos - st));
  };
  auto fail = [&](const std::string& why) {
    throw DomainError("cannot parse polynomial at offset " + std::to_string(pos) + ": " + why);
  };
  skip();
  if (pos == s.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == s.size()) break;
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coef = 1;
    bool have_factor = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::string num = read_int();
      std::string den = "1";
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_int();
        if (den.empty()) fail("bad denominator");
      }
      coef = Rational(mpz_class(num), mpz_class(den));
      coef.canonicalize();
      have_factor = true;
    }
    Term t(n);
    while (true) {
      skip();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip();
      }
      if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])))) break;
      // Longest variable name matching here; names may be concatenated without '*'.
      std::size_t best = 0, best_len = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const auto& nm = vt.name(v);
        if (nm.size() > best_len && s.substr(pos, nm.size()) == nm) {
          best = v;
          best_len = nm.size();
        }
      }
      if (!best_len) fail("unknown variable");
      pos += best_len;
      unsigned e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string d = read_int();
        if (d.empty()) fail("bad exponent");
        e = static_cast<unsigned>(std::stoul(d));
      }
      t.set(best, t[best] + e);
      have_factor = true;
    }
    if (!have_factor) fail("empty term");
    b.add(t, coef * sign);
  }
  return b.build();
}

// ---- orderings ----

OrderingMatrix::OrderingMatrix(std::vector<std::vector<std::int64_t>> rows) : rows_(std::move(rows)) {
  arity_ = rows_.empty() ? 0 : rows_[0].size();
  for (auto& r : rows_)
    if (r.size() != arity_) throw StructuralError("ragged ordering matrix");
  prefix_ = rows_.size();
  tie_ = 0;
  compile();
}

namespace {

std::vector<std::vector<std::int64_t>> degrevlex_rows(std::size_t n) {
  std::vector<std::vector<std::int64_t>> r;
  r.emplace_back(n, 1);
  for (std::size_t i = n; i-- > 1;) {
    std::vector<std::int64_t> row(n, 0);
    row[i] = -1;
    r.push_back(std::move(row));
  }
  return r;
}

}  // namespace

void OrderingMatrix::compile() {
  // Recognize a degrevlex or lex tail so comparisons can skip the dense rows.
  auto dr = degrevlex_rows(arity_);
  if (rows_.size() >= dr.size() && arity_ > 0 &&
      std::equal(dr.begin(), dr.end(), rows_.end() - static_cast<std::ptrdiff_t>(dr.size()))) {
    prefix_ = rows_.size() - dr.size();
    tie_ = 1;
    return;
  }
  if (rows_.size() >= arity_ && arity_ > 0) {
    bool lex = true;
    for (std::size_t i = 0; i < arity_ && lex; ++i) {
      auto& row = rows_[rows_.size() - arity_ + i];
      for (std::size_t j = 0; j < arity_; ++j)
        if (row[j] != (i == j ? 1 : 0)) lex = false;
    }
    if (lex) {
      prefix_ = rows_.size() - arity_;
      tie_ = 2;
    }
  }
}

OrderingMatrix OrderingMatrix::degrevlex(std::size_t n) { return OrderingMatrix(degrevlex_rows(n)); }

OrderingMatrix OrderingMatrix::lex(std::size_t n) {
  std::vector<std::vector<std::int64_t>> r(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return OrderingMatrix(std::move(r));
}

OrderingMatrix OrderingMatrix::with_tiebreak(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n) {
  auto r = rows;
  for (auto& row : degrevlex_rows(n)) r.push_back(std::move(row));
  return OrderingMatrix(std::move(r));
}

OrderingMatrix OrderingMatrix::from_weights(const std::vector<Rational>& w) {
  mpz_class l = 1;
  for (auto& q : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<std::int64_t> row;
  for (auto& q : w) {
    mpz_class v = q.get_num() * (l / q.get_den());
    if (!v.fits_slong_p()) throw DomainError("weight too large");
    row.push_back(v.get_si());
  }
  return with_tiebreak({row}, w.size());
}

OrderingMatrix OrderingMatrix::elimination(const std::vector<bool>& elim) {
  std::vector<std::int64_t> row(elim.size());
  for (std::size_t i = 0; i < elim.size(); ++i) row[i] = elim[i] ? 1 : 0;
  return with_tiebreak({row}, elim.size());
}

bool OrderingMatrix::is_term_ordering() const {
  for (std::size_t j = 0; j < arity_; ++j) {
    for (auto& r : rows_) {
      if (r[j] < 0) return false;
      if (r[j] > 0) break;
    }
  }
  std::vector<std::vector<Rational>> m;
  for (auto& r : rows_) m.emplace_back(r.begin(), r.end());
  return rref(m).pivots.size() == arity_;
}

int OrderingMatrix::compare(const Term& t, const Term& u) const {
  for (std::size_t r = 0; r < prefix_; ++r) {
    const auto& row = rows_[r];
    std::int64_t a = 0;
    for (std::size_t i = 0; i < arity_; ++i) a += row[i] * (static_cast<std::int64_t>(t[i]) - u[i]);
    if (a) return a > 0 ? 1 : -1;
  }
  if (tie_ == 1) return degrevlex_cmp(t, u);
  if (tie_ == 2) {
    for (std::size_t i = 0; i < arity_; ++i)
      if (t[i] != u[i]) return t[i] > u[i] ? 1 : -1;
    return 0;
  }
  return 0;
}

Cmp compare_terms(const OrderingMatrix& M, const Term& t, const Term& u) {
  if (t.arity() != u.arity() || t.arity() != M.arity()) throw StructuralError("arity mismatch in compare_terms");
  int c = M.compare(t, u);
  return c > 0 ? Cmp::Greater : c < 0 ? Cmp::Less : Cmp::Equal;
}

std::pair<Term, Rational> leading_term(const OrderingMatrix& M, const Polynomial& f) {
  if (f.is_zero()) throw DomainError("leading term of zero polynomial");
  const auto& ts = f.terms();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (M.compare(ts[i].term, ts[best].term) > 0) best = i;
  return {ts[best].term, ts[best].coef};
}

// ---- substitution ----

void SubstitutionMap::assign(std::size_t var, Polynomial image) {
  if (var >= arity_) throw StructuralError("substitution variable out of range");
  img_[var] = std::move(image);
}

std::vector<std::size_t> SubstitutionMap::domain() const {
  std::vector<std::size_t> d;
  for (auto& [v, _] : img_) d.push_back(v);
  std::sort(d.begin(), d.end());
  return d;
}

bool SubstitutionMap::is_coherent() const {
  for (auto& [v, p] : img_)
    for (auto& [u, _] : img_)
      if (p.contains_var(u)) return false;
  return true;
}

Polynomial substitute(const Polynomial& f, const SubstitutionMap& s) {
  const std::size_t n = f.arity();
  std::vector<bool> assigned(n, false);
  for (auto& [v, _] : s.assignments())
    if (v < n) assigned[v] = true;
  // powers[v][e] caches image(v)^e.
  std::unordered_map<std::size_t, std::vector<Polynomial>> powers;
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& vec = powers[v];
    if (vec.empty()) {
      vec.push_back(Polynomial::constant(n, 1));
      vec.push_back(s.image(v));
    }
    while (vec.size() <= e) vec.push_back(vec.back() * vec[1]);
    return vec[e];
  };
  PolyBuilder out(n);
  for (auto& m : f.terms()) {
    Term rest(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!m.term[i]) continue;
      if (assigned[i])
        any = true;
      else
        rest.set(i, m.term[i]);
    }
    if (!any) {
      out.add(m.term, m.coef);
      continue;
    }
    Polynomial acc = Polynomial::monomial(rest, m.coef);
    for (std::size_t i = 0; i < n; ++i)
      if (m.term[i] && assigned[i]) acc = acc * power(i, m.term[i]);
    out.add(acc);
  }
  return out.build();
}

namespace {

template <class Weigh>
SubstitutionMap coherentize_impl(const std::vector<Polynomial>& F, const std::vector<std::size_t>& Z, Weigh cmp) {
  if (F.size() != Z.size()) throw StructuralError("coherentize: |F| != |Z|");
  const std::size_t n = F.empty() ? 0 : F[0].arity();
  SubstitutionMap out(n);
  std::vector<std::pair<std::size_t, Polynomial>> hs;
  for (std::size_t i = 0; i < F.size(); ++i) {
    Term z = Term::var(n, Z[i]);
    Rational lc = F[i].coefficient(z);
    if (lc == 0) throw DomainError("not Z-separating under w");
    for (auto& m : F[i].terms())
      if (m.term != z && cmp(m.term, z) >= 0) throw DomainError("not Z-separating under w");
    Polynomial h = Polynomial::monomial(z, 1) - F[i] * (1 / lc);
    hs.emplace_back(Z[i], std::move(h));
  }
  // Every z occurring in h_i is strictly lighter than z_i, so one pass in increasing order suffices.
  std::vector<std::size_t> ord(hs.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
    return cmp(Term::var(n, hs[a].first), Term::var(n, hs[b].first)) < 0;
  });
  for (auto i : ord) {
    Polynomial h = substitute(hs[i].second, out);
    out.assign(hs[i].first, std::move(h));
  }
  return out;
}

}  // namespace

SubstitutionMap coherentize(const std::vector<Polynomial>& F, const std::vector<std::size_t>& Z,
                            const OrderingMatrix& sigma) {
  return coherentize_impl(F, Z, [&](const Term& a, const Term& b) { return sigma.compare(a, b); });
}

SubstitutionMap coherentize(const std::vector<Polynomial>& F, const std::vector<std::size_t>& Z,
                            const std::vector<Rational>& w) {
  auto weight = [&](const Term& t) {
    Rational s = 0;
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (t[i]) s += w[i] * t[i];
    return s;
  };
  return coherentize_impl(F, Z, [&](const Term& a, const Term& b) {
    Rational x = weight(a), y = weight(b);
    return x > y ? 1 : x < y ? -1 : 0;
  });
}

}  // namespace bbs
