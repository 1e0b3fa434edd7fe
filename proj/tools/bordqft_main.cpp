#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bordqft/suites.hpp"

using namespace bordqft;

namespace {

int run_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open '" << path << "'\n";
    return 2;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    LatticeSpacetime m = text.find('{') != std::string::npos
                             ? spacetime_from_json(Json::parse(text))
                             : LatticeSpacetime::from_text(text);
    std::cout << "valid region: L=" << m.circumference() << ", " << m.num_sites()
              << " sites, rows " << m.min_t() << ".." << m.max_t() << "\n";
    std::cout << "causally convex: yes (validated on construction)\n";
    std::cout << "spatially full rows: " << (m.is_slab() ? "yes" : "no") << "\n";
    std::cout << "Cauchy rows:";
    for (int t : m.cauchy_rows()) std::cout << " " << t;
    std::cout << "\n";
    return 0;
  } catch (const Error& e) {
    std::cout << "invalid region: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "malformed literal: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification suites for lattice bordism and free-field constructions"};
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::string mass = "0";
  std::string validate_path;
  SuiteConfig config;

  std::string export_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "report output path (default: stdout)");
  app.add_option("--export-instance", export_path,
                 "write the bounded bordism instance in the interchange format");
  app.add_option("-L,--circumference", config.circumference, "spatial circumference");
  app.add_option("-T,--t-max", config.t_max, "maximal time extent");
  app.add_option("--mass-squared", mass, "mass parameter m0^2 as p/q");
  app.add_option("--seed", config.seed, "random seed for the probe suites");
  app.add_option("--max-degree", config.max_degree, "degree cap for random algebra elements");

  for (const char* name : {"coherence", "adjunction", "bordism", "kg", "compare", "all"})
    app.add_subcommand(name, std::string("run the ") + name + " suite");
  CLI::App* validate = app.add_subcommand("validate", "diagnose a spacetime literal file");
  validate->add_option("file", validate_path, "literal file (text or JSON)")->required();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (validate->parsed()) return run_validate(validate_path);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("cannot open config file '" + config_path + "'");
      Json j = Json::parse(in);
      if (j.contains("L")) config.circumference = j["L"].get<int>();
      if (j.contains("T_max")) config.t_max = j["T_max"].get<int>();
      if (j.contains("mass_squared")) mass = j["mass_squared"].get<std::string>();
      if (j.contains("seed")) config.seed = j["seed"].get<uint64_t>();
      if (j.contains("max_degree")) config.max_degree = j["max_degree"].get<int>();
    }
    config.mass_squared = rat_parse(mass);
    if (config.mass_squared < 0) throw ValidationError("mass-squared must be nonnegative");
    if (config.circumference != 0 && config.circumference < 3)
      throw ValidationError("circumference must be 0 (one-dimensional) or at least 3");
    if (config.t_max < 4) throw ValidationError("t-max must be at least 4");
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  std::string selector = app.get_subcommands().front()->get_name();
  try {
    if (!export_path.empty()) {
      LbordInstance instance = generate_instance(verification_instance_config());
      Json payload{{"pseudo_category", pseudocat_to_json(instance.pseudo)},
                   {"bordisms", Json::array()}};
      for (const Bordism& b : instance.bordisms)
        payload["bordisms"].push_back(bordism_to_json(b));
      std::ofstream out(export_path);
      out << payload.dump(2) << "\n";
    }
    std::vector<SuiteResult> results = run_suites(selector, config);
    Json report = report_json(results, config, true);
    if (out_path.empty()) {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ofstream out(out_path);
      out << report.dump(2) << "\n";
      for (const SuiteResult& s : results)
        std::cout << s.name << ": " << (s.passed() ? "pass" : "FAIL") << " ("
                  << s.checks.size() << " checks, " << s.failed_count() << " failed, "
                  << s.seconds << " s)\n";
    }
    for (const SuiteResult& s : results)
      if (!s.passed()) return 1;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
