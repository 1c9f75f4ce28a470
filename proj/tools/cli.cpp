#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "shearlab/errors.hpp"
#include "shearlab/parallel.hpp"

namespace shearlab::cli {

namespace {

bool nonnegative_integer(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

const std::set<std::string> kTopLevelKeys = {"experiment", "seed", "output", "threads", "params"};

const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : experiments()) {
    if (e.name == name) return e;
  }
  throw ConfigInvalid("unknown experiment '" + name + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

Json check_json(const Check& c) {
  Json j = Json::object();
  j["name"] = c.name;
  j["value"] = c.value;
  if (std::isfinite(c.lo)) j["min"] = c.lo;
  j["max"] = c.hi;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

std::vector<std::string> catalog_lines() {
  std::vector<std::string> out;
  for (const auto& e : experiments()) {
    std::string name = e.name;
    name.resize(std::max<std::size_t>(name.size(), 18), ' ');
    out.push_back(name + " " + e.claim + " [anchor: " + e.anchor + "]");
  }
  return out;
}

Json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigInvalid("cannot read config file " + path);
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
}

RunOutcome run_config(const Json& config, const RunOptions& options) {
  RunOutcome out;
  const Experiment* exp = nullptr;
  Json params;
  std::uint64_t seed = 1;
  std::string dir;
  Result result;
  try {
    if (!config.is_object()) throw ConfigInvalid("config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
      if (!kTopLevelKeys.count(key)) throw ConfigInvalid("unknown key '" + key + "'");
    }
    if (!config.contains("experiment") || !config["experiment"].is_string()) {
      throw ConfigInvalid("config needs a string 'experiment'");
    }
    exp = &find_experiment(config["experiment"].get<std::string>());
    if (config.contains("seed")) {
      if (!nonnegative_integer(config["seed"])) throw ConfigInvalid("'seed' must be a nonnegative integer");
      seed = config["seed"].get<std::uint64_t>();
    }
    if (options.seed) seed = *options.seed;
    unsigned threads = 1;
    if (config.contains("threads")) {
      if (!nonnegative_integer(config["threads"])) throw ConfigInvalid("'threads' must be a nonnegative integer");
      threads = config["threads"].get<unsigned>();
    }
    if (options.threads) threads = *options.threads;
    if (config.contains("output") && !config["output"].is_string()) throw ConfigInvalid("'output' must be a string");
    dir = options.out_dir ? *options.out_dir
                          : config.value("output", std::string("out/") + exp->name);
    params = merge_params(config.contains("params") ? config["params"] : Json::object(), exp->defaults);
    set_thread_count(threads);
    result = exp->run(Params(params), seed);
  } catch (const ConfigInvalid& e) {
    out.exit_code = 2;
    out.error = e.what();
    return out;
  } catch (const std::invalid_argument& e) {
    // Parameter combinations the library refuses are configuration errors too.
    out.exit_code = 2;
    out.error = e.what();
    return out;
  } catch (const std::domain_error& e) {
    out.exit_code = 2;
    out.error = e.what();
    return out;
  }

  Json report = Json::object();
  report["experiment"] = exp->name;
  report["anchor"] = exp->anchor;
  report["seed"] = seed;
  report["params"] = params;
  Json tables = Json::array();
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  for (const auto& t : result.tables) {
    Json tj = Json::object();
    tj["name"] = t.name;
    tj["columns"] = t.columns;
    tj["rows"] = t.rows.size();
    const std::string csv = t.name + ".csv";
    write_file(base / csv, to_csv(t));
    out.files.push_back(csv);
    tj["csv"] = csv;
    const std::string svg = to_svg(t);
    if (!svg.empty()) {
      const std::string name = "plot-" + t.name + ".svg";
      write_file(base / name, svg);
      out.files.push_back(name);
      tj["svg"] = name;
    }
    tables.push_back(tj);
  }
  report["tables"] = tables;
  Json checks = Json::array();
  for (const auto& c : result.checks) {
    checks.push_back(check_json(c));
    if (!c.pass) out.failed.push_back(c.name);
  }
  report["checks"] = checks;
  report["summary"] = result.summary;
  report["pass"] = out.failed.empty();
  report["failed"] = out.failed;
  out.files.push_back("report.json");
  report["artifacts"] = out.files;
  write_file(base / "report.json", report.dump(2) + "\n");
  out.report = report;
  out.exit_code = out.failed.empty() ? 0 : 1;
  return out;
}

int main(int argc, char** argv) {
  ::CLI::App app{"Numerical checks for shear flows, vortex sheets and Kelvin-Helmholtz stability"};
  app.require_subcommand(1);
  auto* list = app.add_subcommand("list", "List the available experiments");
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  run->add_option("--config", config_path, "Path to the JSON config")->required();
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides the config)");
  auto* seed_opt = run->add_option("--seed", seed, "Seed (overrides the config)");
  auto* threads_opt = run->add_option("--threads", threads, "Worker threads, 0 for all cores");
  try {
    app.parse(argc, argv);
  } catch (const ::CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& line : catalog_lines()) std::cout << line << '\n';
    return 0;
  }

  RunOptions options;
  if (*out_opt) options.out_dir = out_dir;
  if (*seed_opt) options.seed = seed;
  if (*threads_opt) options.threads = threads;
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    outcome = run_config(load_config(config_path), options);
  } catch (const ConfigInvalid& e) {
    outcome.exit_code = 2;
    outcome.error = e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (outcome.exit_code == 2) {
    std::cerr << "invalid config: " << outcome.error << '\n';
    return 2;
  }
  for (const auto& c : outcome.report["checks"]) {
    std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " = "
              << format_number(c["value"].get<double>()) << '\n';
  }
  std::cout << "wall_clock_seconds " << seconds << '\n';
  if (outcome.exit_code == 1) {
    std::cerr << "experiment failed:";
    for (const auto& f : outcome.failed) std::cerr << " [" << f << "]";
    std::cerr << '\n';
  }
  return outcome.exit_code;
}

}  // namespace shearlab::cli
