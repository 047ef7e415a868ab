#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bbs/bbscheme.hpp"
#include "bbs/orderideal.hpp"
#include "bbs/polyring.hpp"

namespace bbs::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { Ok = 0, Rejected = 1, Budget = 2, Usage = 3 };

const std::vector<std::string>& commands();

struct JobSpec {
  std::string command;
  std::optional<std::string> ideal;  // shorthand, inline JSON or file path
  std::string out = "json";
  unsigned workers = 1;
  std::uint64_t gb_budget = 10'000'000;
  std::uint64_t search_budget = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t mu_max = 8;                     // survey
  std::optional<std::string> eliminate;       // eliminate, gb-elim: comma-separated variable names
};

// Carries an exit code and a machine-readable reason.
struct CliError : std::runtime_error {
  CliError(int code, std::string reason, const std::string& what, json detail = json::object())
      : std::runtime_error(what), code(code), reason(std::move(reason)), detail(std::move(detail)) {}
  int code;
  std::string reason;
  json detail;
};

// "box a b ...", "simplicial n d", "lshape", inline {"n":..,"terms":[..]} or a path to such a file.
OrderIdeal parse_ideal(const std::string& source);
json ideal_json(const OrderIdeal& O);

// Terms in decreasing degrevlex order with coefficients "p/q".
json poly_json(const Polynomial& f, const VarTable& vt);
std::string rational_str(const Rational& q);

struct Report {
  int exit_code = Ok;
  json doc;
};

Report run(const JobSpec& spec);
// Human-readable rendering of a report.
std::string render_text(const json& doc);
// Serializes a report in the requested format.
std::string format(const Report& r, const std::string& out);

}  // namespace bbs::cli
