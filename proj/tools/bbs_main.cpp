#include <iostream>

#include "CLI11.hpp"
#include "bbs/cli.hpp"

int main(int argc, char** argv) {
  using namespace bbs::cli;
  CLI::App app{"Border basis schemes: generators, gradings and re-embeddings"};
  app.require_subcommand(1);
  JobSpec spec;
  for (auto& name : commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--ideal", spec.ideal, "\"box a b\", \"simplicial n d\", \"lshape\", inline JSON or a file");
    sub->add_option("--out", spec.out, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--workers", spec.workers, "worker threads for searches");
    sub->add_option("--gb-budget", spec.gb_budget, "Groebner reduction step budget");
    sub->add_option("--search-budget", spec.search_budget, "search node budget");
    sub->add_option("--seed", spec.seed, "seed for randomized choices");
    if (name == "survey") sub->add_option("--mu-max", spec.mu_max, "largest number of terms");
    if (name == "eliminate" || name == "gb-elim")
      sub->add_option("--eliminate", spec.eliminate, "comma-separated variables to eliminate");
    sub->callback([&spec, name] { spec.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    Report r;
    r.exit_code = Usage;
    r.doc = {{"schema", 1},
             {"command", spec.command},
             {"error", {{"reason", "usage_error"}, {"message", e.what()}}}};
    std::cout << r.doc.dump(2) << "\n";
    return Usage;
  }
  Report r = run(spec);
  std::cout << format(r, spec.out);
  return r.exit_code;
}
