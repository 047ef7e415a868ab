#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bbs/cli.hpp"

namespace py = pybind11;
using namespace bbs::cli;

namespace {

// Runs one command and returns the exit code with the JSON report.
std::pair<int, std::string> run_command(const std::string& command, std::optional<std::string> ideal,
                                        std::uint64_t gb_budget, std::uint64_t search_budget, std::uint64_t seed,
                                        std::size_t mu_max, std::optional<std::string> eliminate) {
  JobSpec spec;
  spec.command = command;
  spec.ideal = std::move(ideal);
  spec.gb_budget = gb_budget;
  spec.search_budget = search_budget;
  spec.seed = seed;
  spec.mu_max = mu_max;
  spec.eliminate = std::move(eliminate);
  Report r;
  {
    py::gil_scoped_release release;
    r = run(spec);
  }
  return {r.exit_code, r.doc.dump()};
}

}  // namespace

PYBIND11_MODULE(_bbs, m) {
  m.doc() = "Border basis schemes";
  m.def("commands", &commands);
  m.def("run", &run_command, py::arg("command"), py::arg("ideal") = py::none(), py::arg("gb_budget") = 10'000'000,
        py::arg("search_budget") = 1'000'000, py::arg("seed") = 0, py::arg("mu_max") = 8,
        py::arg("eliminate") = py::none());
}
