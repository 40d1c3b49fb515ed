#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mplab/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::string format = "both";
  unsigned seed = 20240611;
  bool quiet = false;
};

bool write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int run(const std::string& sub, const Options& o) {
  mplab::ExperimentConfig cfg;
  try {
    cfg = mplab::load_config(o.config);
  } catch (const mplab::Error& e) {
    std::cerr << "mplab: " << e.what() << "\n";
    return mplab::exit_code_for(e.code());
  }
  mplab::RunOutcome r = mplab::run_experiment(sub, cfg, o.seed);

  std::error_code ec;
  fs::create_directories(o.out, ec);
  const fs::path base = fs::path(o.out) / sub;
  bool ok = true;
  if (o.format != "csv") ok = write_file(base.string() + ".json", r.report.dump(2) + "\n") && ok;
  if (o.format != "json") ok = write_file(base.string() + ".csv", mplab::to_csv(r.table)) && ok;
  if (!ok) {
    std::cerr << "mplab: cannot write reports under " << o.out << "\n";
    return 2;
  }

  if (r.report.contains("error")) std::cerr << "mplab: " << r.report["error"]["message"].get<std::string>() << "\n";
  if (!o.quiet) {
    std::cout << sub << ": ";
    if (r.exit_code == 0)
      std::cout << "pass";
    else if (r.exit_code == 1)
      std::cout << "comparison failed";
    else
      std::cout << "error";
    std::cout << " (" << base.string() << ")\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Euler operator and Fock quantization lab"};
  app.set_version_flag("--version", std::string(mplab::kVersion));
  app.require_subcommand(1);

  Options o;
  std::string chosen;
  for (const std::string& name : mplab::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_option("--seed", o.seed, "seed for randomized probes");
    sub->add_flag("--quiet", o.quiet, "no summary on stdout");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, o);
}
