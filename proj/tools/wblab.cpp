#include <iostream>

#include "CLI11.hpp"
#include "wblab/app.hpp"
#include "wblab/error.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"wblab: Whitham and Whitham-Boussinesq numerical experiments"};
  cli.require_subcommand(1);
  std::string config, out;
  std::uint64_t seed = 0;
  bool have_seed = false;
  for (const auto& name : wblab::subcommands()) {
    auto* sub = cli.add_subcommand(name, "run " + name + " from a config file");
    sub->add_option("config", config, "YAML config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides run.out)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s, have_seed = true; }, "seed (overrides run.seed)");
  }
  CLI11_PARSE(cli, argc, argv);
  const std::string sub = cli.get_subcommands().front()->get_name();
  try {
    wblab::RunConfig cfg = wblab::parse_config(config);
    if (!out.empty()) cfg.out = out;
    if (have_seed) cfg.seed = seed;
    wblab::finalize_config(cfg);
    return wblab::run(sub, cfg, std::cout);
  } catch (const wblab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
