#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "widthlab/errors.hpp"
#include "widthlab/harness.hpp"

using namespace widthlab;

namespace {

int to_int(ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"width-lab: reproducible width, norm and finite-field experiments"};
  app.set_version_flag("--version", std::string("width-lab v") + kWidthLabVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path, format = "csv", config_path;
  std::vector<std::string> params;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "csv or jsonl");
    sub->add_option("--params", params, "key=value, repeatable")->allow_extra_args(false);
    sub->add_option("--config", config_path, "key=value file; --params override it");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : to_int(ExitCode::ConfigError);
  }

  ExperimentConfig cfg;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.seed = seed;
  cfg.format = format;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::ConfigError, "cannot read config '" + config_path + "'");
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      cfg.params = parse_config_text(text);
    }
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ConfigError, "expected key=value, got '" + kv + "'");
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  } catch (const Error& e) {
    std::cerr << "width-lab: " << e.what() << '\n';
    return to_int(ExitCode::ConfigError);
  }

  if (out_path.empty()) return to_int(run_experiment(cfg, std::cout, std::cerr));
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "width-lab: cannot write '" << out_path << "'\n";
    return to_int(ExitCode::ConfigError);
  }
  return to_int(run_experiment(cfg, out, std::cerr));
}
