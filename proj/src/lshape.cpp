// The L-shape pipeline: best Z-separating re-embedding, the unimodular change of coordinates and the final affine cell.
#include <algorithm>
#include <functional>

#include "bbs/reembed.hpp"

namespace bbs {

namespace {

const char* kF1 =
    "c21c41^2c51^2 +c41^2c43c51^2 +c41c45c51^3 +c41^2c42c51 -c41^3c52 -c41^2c51c54 +c21c41c51 +c45c51^2 "
    "-c41c51c55 +c41c42 +c41c54 +c21 -c43";

const char* kF2 =
    "-c21^2c41^3c51^5 -2c21c41^3c43c51^5 -c41^3c43^2c51^5 -2c21c41^2c45c51^6 -2c41^2c43c45c51^6 "
    "-c41c45^2c51^7 -c21c41^3c42c51^4 -c41^3c42c43c51^4 -c41^2c42c45c51^5 +c21c41^3c51^4c54 "
    "+c41^3c43c51^4c54 +c41^2c45c51^5c54 -c41^4c42c51^2c52 +c41^5c51c52^2 +c41^4c51^2c52c54 "
    "-c41^2c42c43c51^3 -c21c41^3c51^2c52 +c41^3c43c51^2c52 -c41^2c45c51^3c52 -2c21c41^2c51^3c54 "
    "-c41^2c43c51^3c54 -2c41c45c51^4c54 -c41^2c42c51^3c55 +2c41^3c51^2c52c55 +c41^2c51^3c54c55 "
    "+2c21c41c43c51^3 +3c41c43^2c51^3 +2c43c45c51^4 -c41^4c52^2 -2c41^3c51c52c54 +2c41c43c51^3c55 "
    "+c41c51^3c55^2 +c41c42c43c51^2 -c42c45c51^3 +c21c41^2c51c52 +3c41c45c51^2c52 -3c41c43c51^2c54 "
    "+c45c51^3c54 +c41c42c51^2c55 -3c41^2c51c52c55 -3c41c51^2c54c55 +c22c41c51 -2c33c41c51 +c21^2c51^2 "
    "-c35c51^2 -c43^2c51^2 +c41^2c42c52 +c41^2c52c54 +c41c51c54^2 -2c43c51^2c55 -c51^2c55^2 -c41c43c52 "
    "-c45c51c52 +2c43c51c54 +c41c52c55 +2c51c54c55 +c33 -c54^2";

const char* kPsi21 =
    "-c41^2c43c51^2 -c41c45c51^3 +c41^2c42c51 +c41^3c52 +c41^2c51c54 -c45c51^2 +c41c51c55 +c41c42 -c41c54 -c21 +c43";
const char* kPsi22 = "2c33c41c51 +2c35c51^2 +2c22 -c33";
const char* kPsi33 = "c33c41c51 +c35c51^2 +c22";
const char* kPsi42 =
    "c41^2c43c51^3 +c41c45c51^4 -c41^2c42c51^2 -c41^3c51c52 -c41^2c51^2c54 +c45c51^3 "
    "-c41c51^2c55 -c41c42c51 +c41c51c54 +c21c51 -c43c51 -c42";

// Rows 1 and 2 of B1; rows 3 to 7 are the identity.  Entry (2,2) reads c41^2c51^2 where the printed
// matrix repeats c41 (only this reading gives determinant 1 and agrees with psi(c42)).
const char* kB1[2][7] = {
    {"-1", "c41^2c51 +c41", "-c41^2c51^2 +1", "-c41c51^3 -c51^2", "c41^3", "c41^2c51 -c41", "c41c51"},
    {"c51", "-c41^2c51^2 -c41c51 -1", "c41^2c51^3 -c51", "c41c51^4 +c51^3", "-c41^3c51", "-c41^2c51^2 +c41c51",
     "-c41c51^2"}};
const char* kB1Cols[7] = {"c21", "c42", "c43", "c45", "c52", "c54", "c55"};
const char* kB2[3][3] = {{"2", "2c41c51 -1", "2c51^2"}, {"1", "c41c51", "c51^2"}, {"0", "0", "1"}};
const char* kB2Cols[3] = {"c22", "c33", "c35"};

const char* kZ[13] = {"c11", "c12", "c13", "c14", "c15", "c23", "c24", "c25", "c31", "c32", "c34", "c44", "c53"};
const char* kFinal[10] = {"c33", "c35", "c41", "c42", "c43", "c45", "c51", "c52", "c54", "c55"};

Polynomial determinant(const std::vector<std::vector<Polynomial>>& M) {
  const std::size_t n = M.size();
  const std::size_t arity = M[0][0].arity();
  std::vector<bool> used(n, false);
  std::function<Polynomial(std::size_t)> rec = [&](std::size_t r) -> Polynomial {
    if (r == n) return Polynomial::constant(arity, 1);
    PolyBuilder acc(arity);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      if (!M[r][c].is_zero()) {
        used[c] = true;
        acc.add(M[r][c] * rec(r + 1), sign);
        used[c] = false;
      }
      sign = -sign;
    }
    return acc.build();
  };
  return rec(0);
}

}  // namespace

const std::vector<std::size_t>& lshape_printed_support_lengths() {
  static const std::vector<std::size_t> v{78, 329, 375, 372, 419, 10, 87, 87, 95, 109, 8, 90, 86,
                                          99, 1,   1,   11,  1,   11, 1,  1,  1,  9,   1,  1};
  return v;
}

LShapeReport verify_lshape_pipeline(const SearchOptions& opt) {
  LShapeReport rep;
  BBScheme S(OrderIdeal::validate(2, {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}}));
  const VarTable& vt = S.vars();
  const std::size_t N = S.num_vars();
  auto var = [&](const char* name) { return *vt.index(name); };
  auto P = [&](const char* s) { return parse_polynomial(s, vt); };
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back(name + (ok ? ": ok" : ": FAIL" + (detail.empty() ? "" : " " + detail)));
    return ok;
  };
  bool all = true;

  // Step 1: the best Z-separating re-embedding.
  for (auto z : kZ) rep.Z.push_back(var(z));
  CheckResult cr = check_separating(S, rep.Z, opt);
  if (!check("Z separating", cr.status == SearchStatus::Found, cr.reason)) return rep;
  ReembeddingResult rr = zsep_reembed(S, *cr.witness, opt);
  all &= check("presentation in 12 variables", rr.remaining.size() == 12);
  all &= check("two minimal generators", rr.minimal_generators.size() == 2,
               std::to_string(rr.minimal_generators.size()));
  Polynomial pf1 = P(kF1), pf2 = P(kF2);
  auto up_to_sign = [](const Polynomial& a, const Polynomial& b) { return a == b || a == -b; };
  for (auto& g : rr.minimal_generators) {
    if (up_to_sign(g, pf1)) rep.f1_matches = true;
    if (up_to_sign(g, pf2)) rep.f2_matches = true;
  }
  all &= check("f1 equals the printed polynomial up to sign", rep.f1_matches);
  all &= check("f2 equals the printed polynomial up to sign", rep.f2_matches);

  // Step 2: psi from the unimodular matrices.
  SubstitutionMap psi(N);
  psi.assign(var("c21"), P(kPsi21));
  psi.assign(var("c22"), P(kPsi22));
  psi.assign(var("c33"), P(kPsi33));
  psi.assign(var("c42"), P(kPsi42));
  std::vector<std::vector<Polynomial>> B1(7, std::vector<Polynomial>(7, Polynomial(N)));
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 7; ++c) B1[r][c] = P(kB1[r][c]);
  for (std::size_t r = 2; r < 7; ++r) B1[r][r] = Polynomial::constant(N, 1);
  std::vector<std::vector<Polynomial>> B2(3, std::vector<Polynomial>(3, Polynomial(N)));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      if (std::string(kB2[r][c]) != "0") B2[r][c] = P(kB2[r][c]);
    }
  Polynomial d1 = determinant(B1), d2 = determinant(B2);
  rep.det_b1_unit = d1.is_constant() && !d1.is_zero();
  rep.det_b2_unit = d2.is_constant() && !d2.is_zero();
  all &= check("det B1 is a nonzero constant", rep.det_b1_unit, d1.to_string(vt));
  all &= check("det B2 is a nonzero constant", rep.det_b2_unit, d2.to_string(vt));
  auto image_of = [&](const std::vector<std::vector<Polynomial>>& B, const char* const* cols, std::size_t n) {
    std::vector<Polynomial> out;
    for (std::size_t r = 0; r < n; ++r) {
      Polynomial s(N);
      for (std::size_t c = 0; c < n; ++c) s += B[r][c] * P(cols[c]);
      out.push_back(s);
    }
    return out;
  };
  auto b1 = image_of(B1, kB1Cols, 7), b2 = image_of(B2, kB2Cols, 3);
  auto img = [&](const char* v) { return psi.has(var(v)) ? psi.image(var(v)) : P(v); };
  bool match = true;
  for (std::size_t r = 0; r < 7; ++r) match &= b1[r] == img(kB1Cols[r]);
  for (std::size_t r = 0; r < 3; ++r) match &= b2[r] == img(kB2Cols[r]);
  rep.psi_matches_matrices = match;
  all &= check("psi agrees with B1 and B2", match);

  Polynomial c21 = P("c21"), c22 = P("c22");
  Polynomial q1 = substitute(pf1, psi);
  if (q1 == -c21) {
    pf1 = -pf1;
    q1 = -q1;
    rep.f1_sign_flipped = true;
  }
  rep.f1 = pf1;
  rep.f2 = pf2;
  rep.psi_f1_is_c21 = q1 == c21;
  all &= check("psi(f1) = c21", rep.psi_f1_is_c21, q1.to_string(vt));
  Polynomial q2 = substitute(pf2, psi);
  std::vector<WeightConstraint> cons{{c21.terms()[0].term, {}}, {c22.terms()[0].term, {}}};
  for (auto& m : q1.terms())
    if (m.term != cons[0].winner) cons[0].losers.push_back(m.term);
  for (auto& m : q2.terms())
    if (m.term != cons[1].winner) cons[1].losers.push_back(m.term);
  auto w = lp_realizable(cons, N);
  rep.separating = w.has_value();
  all &= check("(psi(f1), psi(f2)) is (c21,c22)-separating", rep.separating);
  if (!w) return rep;

  // Step 3: eliminate c21 and c22.
  SubstitutionMap kill21(N);
  kill21.assign(var("c21"), Polynomial(N));
  Polynomial h2 = substitute(q2, kill21);
  SubstitutionMap theta = coherentize({c21, h2}, {var("c21"), var("c22")}, *w);
  std::vector<bool> gone(N, false);
  for (auto z : rep.Z) gone[z] = true;
  gone[var("c21")] = gone[var("c22")] = true;
  for (std::size_t v = 0; v < N; ++v)
    if (!gone[v]) rep.final_vars.push_back(v);
  std::vector<std::size_t> expect;
  for (auto v : kFinal) expect.push_back(var(v));
  all &= check("final ring has the 10 printed variables", rep.final_vars == expect);

  bool clean = true;
  for (std::size_t v = 0; v < N; ++v) {
    Polynomial p = rr.substitution.has(v) ? rr.substitution.image(v) : Polynomial::variable(N, v);
    p = substitute(substitute(p, psi), theta);
    for (auto u : p.support_vars()) clean &= !gone[u];
    rep.support_lengths.push_back(p.size());
    rep.images.push_back(std::move(p));
  }
  all &= check("images use only the final variables", clean);
  // The composite must kill the defining ideal.
  SubstitutionMap comp(N);
  for (std::size_t v = 0; v < N; ++v) comp.assign(v, rep.images[v]);
  bool kills = true;
  for (auto& g : natural_generators(S)) kills &= substitute(g.poly, comp).is_zero();
  all &= check("composite map kills every natural generator", kills);
  all &= check("support lengths equal the printed tuple", rep.support_lengths == lshape_printed_support_lengths());
  rep.ok = all;
  return rep;
}

}  // namespace bbs
