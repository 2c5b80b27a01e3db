#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "credalkit/errors.hpp"
#include "credalkit/model.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) credalkit::fail(credalkit::errc::invalid_input, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interval-valued belief calculator"};
  app.require_subcommand(1);

  std::string model_path;
  credalkit::RunOptions opts;

  CLI::App* run = app.add_subcommand("run", "evaluate the queries in a model file");
  run->add_option("-m,--model", model_path, "model file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", opts.seed, "base seed for simulation queries");
  run->add_option("--decimals", opts.decimals, "digits after the decimal point")
      ->check(CLI::Range(1, 12));
  run->add_flag("--pretty", opts.pretty, "aligned tables instead of TSV");

  CLI::App* check = app.add_subcommand("check", "validate a model file and exit");
  check->add_option("-m,--model", model_path, "model file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    const credalkit::ModelFile model = credalkit::parse_model(slurp(model_path));
    if (check->parsed()) {
      std::cout << "model OK: " << model.frame.size() << " outcomes, " << model.priors.size()
                << " priors, " << model.evidence.size() << " evidence sets, "
                << model.queries.size() << " queries\n";
      return 0;
    }
    credalkit::run_model(model, opts, std::cout, std::cerr);
    return 0;
  } catch (const credalkit::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return credalkit::exit_code_for(err.code());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
