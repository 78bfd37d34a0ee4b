#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ff/scenario.hpp"

namespace {

struct Flags {
  std::string config;
  std::string scenario;
  std::string k;
  std::string f;
  std::vector<std::string> casimirs;
  std::string grid;
  std::string out;
  uint64_t seed = 0;
  std::string radii;
  std::string h;
  std::string x0;
  double T = 1.0;
  double dt = 1e-3;
  int output_every = 10;
  std::string base;
  std::string direction;
};

void add_options(CLI::App* sub, Flags& o) {
  sub->set_help_flag("--help", "print help and exit");
  sub->add_option("--config", o.config, "JSON config file; flags override its fields");
  sub->add_option("--scenario", o.scenario,
                  "lefschetz | fold | fold-nonorientable | custom-casimirs | "
                  "near-symplectic | contrast");
  sub->add_option("--k", o.k, "conformal factor as polynomial text");
  sub->add_option("--f", o.f, "Morse-type function for the near-symplectic form");
  sub->add_option("--casimir", o.casimirs, "Casimir polynomial (repeat for each)");
  sub->add_option("--grid", o.grid, "per-axis node counts, e.g. 21,21,21,21");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--seed", o.seed, "seed for the randomized suites");
  sub->add_option("--radii", o.radii, "radius ladder: 'hi..lo' or explicit list");
  sub->add_option("--h", o.h, "Hamiltonian as polynomial text");
  sub->add_option("--x0", o.x0, "flow start point, e.g. 0,1,0,0");
  sub->add_option("--T", o.T, "flow time horizon");
  sub->add_option("--dt", o.dt, "flow base step");
  sub->add_option("--output-every", o.output_every, "trajectory sampling stride");
  sub->add_option("--base", o.base, "scaling path base point");
  sub->add_option("--direction", o.direction, "scaling path direction");
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> counts;
  size_t start = 0;
  while (start <= text.size()) {
    size_t pos = text.find(',', start);
    std::string part = text.substr(start, pos == std::string::npos ? pos : pos - start);
    try {
      size_t used = 0;
      counts.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ff::ConfigError("grid: bad count '" + part + "'");
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return counts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foliation-forge: builds singular rank-2 Poisson structures on 4-dimensional "
               "charts from fibration data and verifies their model identities"};
  app.require_subcommand(1);

  Flags o;
  for (const char* name : {"verify", "flow", "scaling", "near-symplectic", "contrast", "all"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_options(sub, o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    ff::ScenarioConfig cfg;
    if (sub->count("--config")) cfg = ff::load_config(o.config);
    cfg.command = sub->get_name();
    if (cfg.command == "near-symplectic") cfg.scenario = "near-symplectic";
    if (cfg.command == "contrast") cfg.scenario = "contrast";
    if (sub->count("--scenario")) cfg.scenario = o.scenario;
    if (sub->count("--k")) cfg.k_text = o.k;
    if (sub->count("--f")) cfg.f_text = o.f;
    if (sub->count("--casimir")) cfg.casimir_texts = o.casimirs;
    if (sub->count("--grid")) cfg.grid_counts = parse_counts(o.grid);
    if (sub->count("--out")) cfg.output_dir = o.out;
    if (sub->count("--seed")) cfg.seed = o.seed;
    if (sub->count("--radii")) cfg.radii = ff::parse_radii(o.radii);
    if (sub->count("--h") || sub->count("--x0") || sub->count("--T") || sub->count("--dt") ||
        sub->count("--output-every")) {
      ff::FlowSpec flow = cfg.flow.value_or(ff::FlowSpec{});
      if (sub->count("--h")) flow.h = o.h;
      if (sub->count("--x0")) flow.x0 = ff::parse_point(o.x0);
      if (sub->count("--T")) flow.T = o.T;
      if (sub->count("--dt")) flow.dt = o.dt;
      if (sub->count("--output-every")) flow.output_every = o.output_every;
      cfg.flow = std::move(flow);
    }
    if (sub->count("--base") || sub->count("--direction")) {
      ff::FitSpec fit = cfg.fit.value_or(ff::FitSpec{});
      if (sub->count("--base")) fit.base = ff::parse_point(o.base);
      if (sub->count("--direction")) fit.direction = ff::parse_point(o.direction);
      cfg.fit = std::move(fit);
    }

    ff::RunResult result = ff::run_scenario(cfg, std::cout);
    return ff::exit_code(result);
  } catch (const ff::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
