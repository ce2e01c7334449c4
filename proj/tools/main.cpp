// lcg: CGFEM pressure, conservative post-processing and FV saturation transport.

#include <lcg/driver.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

const char* const kKeys[] = {"example", "n", "order", "scheme", "nct", "nft", "iters", "tfinal", "out",
                             "gate-lce", "limiter-variant", "snapshots", "levels", "metric", "ref-n"};

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool cfl = false;
  bool vtk = false;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "INI-style file; flags override it");
  for (const char* key : kKeys) f.options[key] = app->add_option(std::string("--") + key, f.values[key]);
  f.options["example"]->description("example name (ex1-1 .. ex2-3, mms-linear, mms-quadratic, mms-sine)");
  f.options["scheme"]->description("upwind | limited");
  f.options["limiter-variant"]->description("as-written | minmod");
  f.options["gate-lce"]->description("on | off");
  f.options["snapshots"]->description("comma-separated snapshot times");
  f.options["levels"]->description("comma-separated study resolutions for V1 (V2 uses n/2)");
  f.options["metric"]->description("study metric: saturation | h1 | pressure");
  f.options["n"]->description("cells per side");
  f.options["order"]->description("polynomial order, 1 or 2");
  f.options["nct"]->description("coarse (pressure) time steps");
  f.options["nft"]->description("fine transport steps per coarse step");
  f.options["iters"]->description("pressure-transport iterations per coarse step");
  f.options["tfinal"]->description("final time; 0 uses the example's");
  f.options["out"]->description("output directory");
  f.options["ref-n"]->description("study reference resolution");
  app->add_flag("--cfl", f.cfl, "CFL-derived fine steps");
  app->add_flag("--vtk", f.vtk, "write VTK fields");
}

lcg::RunConfig resolve(const Flags& f) {
  std::map<std::string, std::string> kv;
  if (!f.config.empty()) {
    std::ifstream is(f.config);
    if (!is) throw lcg::Error(lcg::ErrorKind::Config, "cannot open config file " + f.config);
    kv = lcg::parse_ini(is);
  }
  for (const auto& [key, opt] : f.options)
    if (opt->count() > 0) kv[key] = f.values.at(key);
  if (f.cfl) kv["cfl"] = "true";
  if (f.vtk) kv["vtk"] = "true";
  lcg::RunConfig cfg;
  lcg::apply_config(cfg, kv);
  lcg::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CGFEM + conservative post-processing + FV saturation transport"};
  app.require_subcommand(1);
  Flags darcy_flags, simulate_flags, study_flags;
  auto* darcy = app.add_subcommand("darcy", "pressure solve, post-processing and LCE report");
  auto* simulate = app.add_subcommand("simulate", "time march");
  auto* study = app.add_subcommand("study", "refinement study");
  add_flags(darcy, darcy_flags);
  add_flags(simulate, simulate_flags);
  add_flags(study, study_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (darcy->parsed()) lcg::cmd_darcy(resolve(darcy_flags), std::cout);
    if (simulate->parsed()) lcg::cmd_simulate(resolve(simulate_flags), std::cout);
    if (study->parsed()) lcg::cmd_study(resolve(study_flags), std::cout);
  } catch (const lcg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lcg::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
