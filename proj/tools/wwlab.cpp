#include <iostream>

#include "CLI11.hpp"
#include "wwlab/errors.hpp"
#include "wwlab/runner.hpp"

namespace {

// Exit codes: 0 success, 1 invalid config, 2 numerical failure.
int load(const std::string& path, wwlab::RunConfig& c) {
  std::vector<std::string> v;
  c = wwlab::load_config(path, v);
  if (v.empty()) v = wwlab::validate(c);
  for (const auto& m : v) std::cerr << "invalid config: " << m << "\n";
  return v.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wwlab: spectral lab for one-dimensional gravity water waves"};
  app.require_subcommand(1);
  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "run an experiment and write run.json, series.csv, summary.json");
  run->add_option("config", run_path, "JSON config")->required();
  auto* val = app.add_subcommand("validate", "check a config and list violations");
  val->add_option("config", validate_path, "JSON config")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  wwlab::RunConfig c;
  if (*val) {
    int rc = load(validate_path, c);
    if (rc == 0) std::cout << "ok\n";
    return rc;
  }
  if (int rc = load(run_path, c); rc != 0) return rc;
  try {
    wwlab::run(c);
  } catch (const wwlab::NumericalError& e) {
    std::cerr << "numerical failure in " << e.operation() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
