// Dispatch, ideal parsing and report assembly for the bbs command line.
#include "bbs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbs/reembed.hpp"

namespace bbs::cli {

namespace {

bool needs_ideal(const std::string& cmd) { return cmd != "lshape-verify" && cmd != "survey"; }

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& w, const std::string& source) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(w, &pos);
    if (pos == w.size()) return v;
  } catch (const std::exception&) {
  }
  throw CliError(Usage, "malformed_input", "expected an integer in ideal shorthand: " + source);
}

OrderIdeal ideal_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") || !j["n"].is_number_integer() ||
      !j["terms"].is_array())
    throw CliError(Usage, "malformed_input", "ideal JSON must be {\"n\": int, \"terms\": [[...], ...]}");
  long n = j["n"].get<long>();
  if (n < 1) throw CliError(Usage, "malformed_input", "ideal JSON needs n >= 1");
  std::vector<Exps> terms;
  for (auto& t : j["terms"]) {
    if (!t.is_array()) throw CliError(Usage, "malformed_input", "each term must be an exponent array");
    Exps e;
    for (auto& v : t) {
      if (!v.is_number_integer()) throw CliError(Usage, "malformed_input", "exponents must be integers");
      e.push_back(v.get<int>());
    }
    terms.push_back(std::move(e));
  }
  return OrderIdeal::validate(static_cast<std::size_t>(n), std::move(terms));
}

OrderIdeal ideal_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(Usage, "malformed_input", std::string("malformed ideal JSON: ") + e.what());
  }
  return ideal_from_json(j);
}

json names(const BBScheme& S, const std::vector<std::size_t>& vars) {
  json a = json::array();
  for (auto v : vars) a.push_back(S.vars().name(v));
  return a;
}

json terms_json(const std::vector<Exps>& ts) {
  json a = json::array();
  for (auto& t : ts) a.push_back(t);
  return a;
}

json polys_json(const std::vector<Polynomial>& fs, const VarTable& vt) {
  json a = json::array();
  for (auto& f : fs) a.push_back(poly_json(f, vt));
  return a;
}

json reembedding_json(const BBScheme& S, const ReembeddingResult& r) {
  json sub = json::object();
  for (auto z : r.eliminated)
    if (r.substitution.has(z)) sub[S.vars().name(z)] = poly_json(r.substitution.image(z), S.vars());
  return {{"eliminated", names(S, r.eliminated)},
          {"remaining", names(S, r.remaining)},
          {"presentation_dim", r.presentation_dim},
          {"substitution", sub},
          {"generators", polys_json(r.new_generators, S.vars())},
          {"minimal_generators", polys_json(r.minimal_generators, S.vars())},
          {"affine_cell", r.new_generators.empty()}};
}

std::vector<std::size_t> parse_vars(const BBScheme& S, const std::string& list) {
  std::vector<std::size_t> out;
  std::string s = list;
  std::replace(s.begin(), s.end(), ',', ' ');
  for (auto& w : split_ws(s)) {
    auto v = S.vars().index(w);
    if (!v) throw CliError(Usage, "unknown_variable", "unknown variable " + w);
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw CliError(Usage, "usage_error", "--eliminate needs at least one variable");
  return out;
}

SearchOptions search_options(const JobSpec& spec) {
  SearchOptions o;
  o.gb_budget = spec.gb_budget;
  o.search_budget = spec.search_budget;
  o.workers = std::max(1u, spec.workers);
  return o;
}

struct Payload {
  Payload(json r = json::object()) : result(std::move(r)) {}
  json result;
  bool budget = false;
  int exit_code = Ok;
  std::string reason;
};

Payload cmd_border(const BBScheme& S) {
  auto split = rim_interior_split(S.O());
  std::vector<Exps> rim, interior;
  for (auto i : split.rim) rim.push_back(S.O().term(i));
  for (auto i : split.interior) interior.push_back(S.O().term(i));
  auto simp = is_simplicial(S.O());
  return {{{"border", terms_json(S.B())},
           {"rim", terms_json(rim)},
           {"interior", terms_json(interior)},
           {"maxdeg", is_maxdeg(S.O())},
           {"simplicial_degree", simp ? json(*simp) : json(nullptr)}}};
}

Payload cmd_generators(const BBScheme& S) {
  json nat = json::array();
  auto cat = natural_generators(S);
  for (auto& g : cat) nat.push_back({{"label", g.label()}, {"poly", poly_json(g.poly, S.vars())}});
  return {{{"natural_count", cat.size()},
           {"natural", nat},
           {"commutator_nonzero", commutator_generators(S).size()}}};
}

Payload cmd_grading(const BBScheme& S) {
  auto g = arrow_grading(S);
  json arrow = json::array();
  for (std::size_t v = 0; v < S.num_vars(); ++v) {
    json col = json::array();
    for (std::size_t k = 0; k < S.n(); ++k) col.push_back(g.A[k][v]);
    arrow.push_back(col);
  }
  return {{{"variables", S.vars().names()}, {"arrow", arrow}, {"W", g.W}}};
}

Payload cmd_exposure(const BBScheme& S) {
  auto ex = exposure(S);
  json dir = json::object();
  for (auto v : ex.exposed_vars()) dir[S.vars().name(v)] = "x" + std::to_string(ex.direction[v] + 1);
  return {{{"exposed", names(S, ex.exposed_vars())},
           {"non_exposed", names(S, ex.non_exposed_vars())},
           {"direction", dir}}};
}

Payload cmd_cotangent(const BBScheme& S) {
  auto cc = cotangent_classes(S);
  json classes = json::array();
  for (auto& E : cc.proper) classes.push_back(names(S, E));
  return {{{"dim", cotangent_dim(S)},
           {"rank", cc.rank},
           {"E0", names(S, cc.E0)},
           {"classes", classes},
           {"singletons", names(S, cc.singletons)}}};
}

Payload cmd_weights(const BBScheme& S, const SearchOptions& opt) {
  auto wa = weight_assignment(S, opt);
  json w = json::object(), chosen = json::object();
  for (std::size_t v = 0; v < S.num_vars(); ++v) {
    w[S.vars().name(v)] = wa.wt[v];
    if (wa.chosen[v] >= 0) chosen[S.vars().name(v)] = wa.catalog[static_cast<std::size_t>(wa.chosen[v])].label();
  }
  return {{{"method", wa.method},
           {"weights", w},
           {"chosen", chosen},
           {"property_holds", weight_property_holds(S, wa)}}};
}

Payload cmd_eliminate(const BBScheme& S, const JobSpec& spec, const SearchOptions& opt) {
  if (!spec.eliminate) return {{{"reembedding", reembedding_json(S, eliminate_non_exposed(S, opt))}}};
  auto Z = parse_vars(S, *spec.eliminate);
  auto chk = check_separating(S, Z, opt);
  Payload p;
  p.result["status"] = status_name(chk.status);
  p.result["reason"] = chk.reason;
  if (chk.status == SearchStatus::Found) {
    p.result["sources"] = chk.witness->sources;
    p.result["reembedding"] = reembedding_json(S, zsep_reembed(S, *chk.witness, opt));
  } else if (chk.status == SearchStatus::Budget) {
    p.budget = true;
    p.exit_code = Budget;
    p.reason = "budget_exhausted";
  } else {
    p.exit_code = Rejected;
    p.reason = "not_separating";
  }
  return p;
}

Payload cmd_best(const BBScheme& S, const SearchOptions& opt) {
  auto bt = best_separating_tuples(S, opt);
  json tuples = json::array();
  for (auto& t : bt.tuples) tuples.push_back(names(S, t));
  return {{{"size", bt.size},
           {"count", bt.tuples.size()},
           {"per_degree_count", bt.per_degree_count},
           {"tuples", tuples}}};
}

Payload cmd_optimal(const BBScheme& S, const SearchOptions& opt) {
  auto r = optimal_planar_reembed(S, opt);
  json classes = json::array(), exposed = json::array(), found = json::array();
  for (auto& E : r.classes.proper) classes.push_back(names(S, E));
  for (auto& E : r.exposed_classes) exposed.push_back(names(S, E));
  for (auto& [Z, re] : r.found)
    found.push_back({{"Z", names(S, Z)},
                     {"remaining", names(S, re.remaining)},
                     {"generators", polys_json(re.new_generators, S.vars())},
                     {"optimal", Z.size() == r.target && re.new_generators.empty()}});
  Payload p{{{"target", r.target},
             {"E0", names(S, r.classes.E0)},
             {"classes", classes},
             {"exposed_classes", exposed},
             {"candidates", r.candidates},
             {"found", found}}};
  p.budget = r.budget;
  return p;
}

Payload cmd_simplicial(const BBScheme& S, const SearchOptions& opt) {
  auto wit = simplicial_separating_tuple(S);
  if (!verify_witness(wit)) throw StructuralError("simplicial witness fails its leading-term check");
  auto re = zsep_reembed(S, wit, opt);
  json quadrics = nullptr;
  try {
    quadrics = minimal_quadric_count(re.minimal_generators);
  } catch (const DomainError&) {
  }
  std::size_t cdim = cotangent_dim(S);
  return {{{"degree", *is_simplicial(S.O())},
           {"Z", names(S, wit.Z)},
           {"sources", wit.sources},
           {"reembedding", reembedding_json(S, re)},
           {"minimal_generator_count", re.minimal_generators.size()},
           {"quadric_count", quadrics},
           {"cotangent_dim", cdim},
           {"hilbert_dim", S.n() * S.mu()},
           {"singular_monomial_point", cdim > S.n() * S.mu()}}};
}

Payload cmd_lshape(const SearchOptions& opt) {
  auto r = verify_lshape_pipeline(opt);
  BBScheme L(parse_ideal("lshape"));
  Payload p{{{"ok", r.ok},
             {"checks", r.checks},
             {"Z", names(L, r.Z)},
             {"f1", poly_json(r.f1, L.vars())},
             {"f2", poly_json(r.f2, L.vars())},
             {"f1_sign_flipped", r.f1_sign_flipped},
             {"final_vars", names(L, r.final_vars)},
             {"support_lengths", r.support_lengths},
             {"printed_support_lengths", lshape_printed_support_lengths()}}};
  if (!r.ok) {
    p.exit_code = Rejected;
    p.reason = "verification_failed";
  }
  return p;
}

Payload cmd_survey(const JobSpec& spec, const SearchOptions& opt) {
  auto rep = conjecture_survey(spec.mu_max, opt);
  json rows = json::array();
  Payload p;
  for (auto& r : rep.rows) {
    BBScheme S(r.O);
    rows.push_back({{"terms", terms_json(r.O.terms())},
                    {"mu", r.mu},
                    {"d", r.d},
                    {"s", r.s},
                    {"target", r.target},
                    {"best", r.best},
                    {"optimal", r.optimal},
                    {"witness", names(S, r.witness)},
                    {"budget", r.budget}});
    p.budget = p.budget || r.budget;
  }
  p.result = {{"mu_max", spec.mu_max},
              {"count", rep.rows.size()},
              {"consistent", rep.consistent},
              {"inconsistencies", rep.inconsistencies},
              {"rows", rows}};
  return p;
}

Payload cmd_gb_elim(const BBScheme& S, const JobSpec& spec, const SearchOptions& opt) {
  auto Z = spec.eliminate ? parse_vars(S, *spec.eliminate) : random_separating_subset(S, spec.seed, opt);
  auto cmp = compare_eliminations(S, Z, opt);
  return {{{"Z", names(S, cmp.Z)},
           {"substitution_generators", polys_json(cmp.substitution.new_generators, S.vars())},
           {"groebner_generators", polys_json(cmp.groebner, S.vars())},
           {"equal", cmp.equal}}};
}

json input_echo(const JobSpec& spec, const OrderIdeal* O) {
  json in = json::object();
  in["ideal"] = spec.ideal ? json(*spec.ideal) : json(nullptr);
  if (O) {
    BBScheme S(*O);
    in["n"] = O->n();
    in["t"] = terms_json(O->terms());
    in["b"] = terms_json(S.B());
  }
  in["options"] = {{"workers", spec.workers},
                   {"gb_budget", spec.gb_budget},
                   {"search_budget", spec.search_budget},
                   {"seed", spec.seed}};
  if (spec.command == "survey") in["options"]["mu_max"] = spec.mu_max;
  if (spec.eliminate) in["options"]["eliminate"] = *spec.eliminate;
  return in;
}

Payload dispatch(const JobSpec& spec, const OrderIdeal* O) {
  auto opt = search_options(spec);
  const std::string& c = spec.command;
  if (c == "lshape-verify") return cmd_lshape(opt);
  if (c == "survey") return cmd_survey(spec, opt);
  BBScheme S(*O);
  if (c == "border") return cmd_border(S);
  if (c == "generators") return cmd_generators(S);
  if (c == "grading") return cmd_grading(S);
  if (c == "exposure") return cmd_exposure(S);
  if (c == "cotangent") return cmd_cotangent(S);
  if (c == "weights") return cmd_weights(S, opt);
  if (c == "eliminate") return cmd_eliminate(S, spec, opt);
  if (c == "best") return cmd_best(S, opt);
  if (c == "optimal") return cmd_optimal(S, opt);
  if (c == "simplicial") return cmd_simplicial(S, opt);
  if (c == "gb-elim") return cmd_gb_elim(S, spec, opt);
  throw CliError(Usage, "unknown_command", "unknown command " + c);
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"border", "generators", "grading", "exposure", "cotangent",
                                          "weights", "eliminate", "best", "optimal", "simplicial",
                                          "lshape-verify", "survey", "gb-elim"};
  return c;
}

OrderIdeal parse_ideal(const std::string& source) {
  auto words = split_ws(source);
  if (words.empty()) throw CliError(Usage, "malformed_input", "empty ideal source");
  const std::string& head = words[0];
  if (head == "box") {
    if (words.size() < 2) throw CliError(Usage, "malformed_input", "box needs side lengths");
    std::vector<int> a;
    for (std::size_t i = 1; i < words.size(); ++i) a.push_back(to_int(words[i], source));
    return make_box(a);
  }
  if (head == "simplicial") {
    if (words.size() != 3) throw CliError(Usage, "malformed_input", "simplicial needs n and d");
    int n = to_int(words[1], source);
    if (n < 1) throw CliError(Usage, "malformed_input", "simplicial needs n >= 1");
    return make_simplicial(static_cast<std::size_t>(n), to_int(words[2], source));
  }
  if (head == "lshape") {
    if (words.size() != 1) throw CliError(Usage, "malformed_input", "lshape takes no arguments");
    return OrderIdeal::validate(2, {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}});
  }
  if (head.front() == '{') return ideal_from_json_text(source);
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    std::stringstream buf;
    buf << in.rdbuf();
    return ideal_from_json_text(buf.str());
  }
  throw CliError(Usage, "malformed_input", "unrecognized ideal source: " + source);
}

json ideal_json(const OrderIdeal& O) { return {{"n", O.n()}, {"terms", terms_json(O.terms())}}; }

std::string rational_str(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

json poly_json(const Polynomial& f, const VarTable& vt) {
  json terms = json::array();
  for (auto& m : f.terms()) {
    json mono = json::object();
    for (std::size_t v = 0; v < m.term.arity(); ++v)
      if (m.term[v]) mono[vt.name(v)] = m.term[v];
    terms.push_back({{"coef", rational_str(m.coef)}, {"term", mono}});
  }
  return {{"text", f.is_zero() ? std::string("0") : f.to_string(vt)}, {"terms", terms}};
}

Report run(const JobSpec& spec) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  json& d = rep.doc;
  std::optional<OrderIdeal> O;
  bool budget = false;
  try {
    if (std::find(commands().begin(), commands().end(), spec.command) == commands().end())
      throw CliError(Usage, "unknown_command", "unknown command " + spec.command);
    if (spec.out != "json" && spec.out != "text")
      throw CliError(Usage, "usage_error", "--out must be json or text");
    if (needs_ideal(spec.command) && !spec.ideal)
      throw CliError(Usage, "usage_error", spec.command + " needs --ideal");
    if (!needs_ideal(spec.command) && spec.ideal)
      throw CliError(Usage, "usage_error", spec.command + " takes no --ideal");
    if (spec.ideal) O = parse_ideal(*spec.ideal);
    if (spec.command == "lshape-verify") O = parse_ideal("lshape");
    d["input"] = input_echo(spec, O ? &*O : nullptr);
    Payload p = dispatch(spec, O ? &*O : nullptr);
    d["result"] = std::move(p.result);
    budget = p.budget;
    rep.exit_code = p.exit_code != Ok ? p.exit_code : (budget ? Budget : Ok);
    if (rep.exit_code != Ok)
      d["error"] = {{"reason", p.reason.empty() ? std::string("budget_exhausted") : p.reason},
                    {"message", "see result"}};
  } catch (const CliError& e) {
    rep.exit_code = e.code;
    d["error"] = {{"reason", e.reason}, {"message", e.what()}};
    for (auto& [k, v] : e.detail.items()) d["error"][k] = v;
  } catch (const OrderIdealError& e) {
    rep.exit_code = Rejected;
    d["error"] = {{"reason", "invalid_order_ideal"}, {"message", e.what()}, {"witness", e.witness}};
  } catch (const BudgetExceeded& e) {
    rep.exit_code = Budget;
    budget = true;
    d["error"] = {{"reason", "budget_exhausted"}, {"message", e.what()}};
  } catch (const DomainError& e) {
    rep.exit_code = Rejected;
    d["error"] = {{"reason", "domain_error"}, {"message", e.what()}};
  } catch (const StructuralError& e) {
    rep.exit_code = Rejected;
    d["error"] = {{"reason", "structural_error"}, {"message", e.what()}};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json out = {{"schema", 1}, {"command", spec.command}};
  out["input"] = d.contains("input") ? d["input"] : input_echo(spec, nullptr);
  if (d.contains("result")) out["result"] = std::move(d["result"]);
  if (d.contains("error")) out["error"] = std::move(d["error"]);
  out["timing"] = {{"seconds", secs}};
  out["budget"] = {{"gb_budget", spec.gb_budget}, {"search_budget", spec.search_budget}, {"exhausted", budget}};
  d = std::move(out);
  return rep;
}

namespace {

bool scalar(const json& v) { return !v.is_array() && !v.is_object(); }

std::string scalar_str(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(std::ostringstream& os, const std::string& key, const json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object() && v.contains("text") && v.contains("terms")) {
    os << pad << key << ": " << v["text"].get<std::string>() << "\n";
  } else if (scalar(v)) {
    os << pad << key << ": " << scalar_str(v) << "\n";
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return scalar(x); })) {
    os << pad << key << ":";
    for (auto& x : v) os << " " << scalar_str(x);
    os << "\n";
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) {
               return x.is_array() && std::all_of(x.begin(), x.end(), scalar);
             })) {
    os << pad << key << ":";
    for (auto& x : v) os << " " << x.dump();
    os << "\n";
  } else if (v.is_array()) {
    os << pad << key << ": (" << v.size() << ")\n";
    std::size_t i = 0;
    for (auto& x : v) render(os, std::to_string(++i), x, indent + 2);
  } else {
    os << pad << key << ":\n";
    for (auto& [k, x] : v.items()) render(os, k, x, indent + 2);
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  os << "command: " << doc.value("command", std::string()) << "\n";
  if (doc.contains("error")) render(os, "error", doc["error"], 0);
  if (doc.contains("result"))
    for (auto& [k, v] : doc["result"].items()) render(os, k, v, 0);
  os << "seconds: " << doc["timing"]["seconds"].get<double>() << "\n";
  return os.str();
}

namespace {

// Indented JSON with arrays of scalars (and arrays of such arrays) kept on one line.
void pretty(std::ostringstream& os, const json& v, int indent) {
  auto flat = [](const json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const json& x) {
             return scalar(x) || (x.is_array() && std::all_of(x.begin(), x.end(), scalar));
           });
  };
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (scalar(v) || (flat(v) && v.dump().size() <= 100)) {
    os << v.dump();
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << pad;
      pretty(os, v[i], indent + 2);
      os << (i + 1 < v.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto& [k, x] : v.items()) {
      os << pad << json(k).dump() << ": ";
      pretty(os, x, indent + 2);
      os << (++i < v.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  }
}

}  // namespace

std::string format(const Report& r, const std::string& out) {
  if (out == "text") return render_text(r.doc);
  std::ostringstream os;
  pretty(os, r.doc, 0);
  os << "\n";
  return os.str();
}

}  // namespace bbs::cli
