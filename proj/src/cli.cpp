#include "diamond/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <nlohmann/json.hpp>

#include "diamond/asymptotics.hpp"
#include "diamond/energy.hpp"
#include "diamond/io.hpp"
#include "diamond/montecarlo.hpp"

namespace diamond {

namespace {

constexpr const char* kSpecHelp =
    "Profile spec: name:key=value[,key=value]\n"
    "  simple:K=<int>,M=<int>    r(x) = K x on [0, M]\n"
    "  elaborated:m=<int>        3-piece profile, N = 82 m^2 + 2\n"
    "  quasioptimal:m=<int>      6-piece profile, N = 239 m^2 + 2\n"
    "  file:<path>               JSON {\"M\":int, \"knots\":[...], \"pieces\":[[alpha,beta],...]}\n"
    "Environment: DIAMOND_THREADS caps internal parallelism.";

struct Options {
  std::string spec;
  std::string points_file;
  std::string family;
  std::string suite;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::uint64_t base_seed = 0;
  std::int64_t trials = 0;
  std::optional<double> riesz_s;
  std::vector<std::int64_t> params;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << contents;
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const Profile profile = parse_profile_spec(opt.spec);
  const PointSet set = sample(layout_from_profile(profile), opt.seed, profile.name);
  if (opt.out_path.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
  nlohmann::json summary = {{"N", set.layout.N()}, {"p", set.layout.p()}, {"seed", opt.seed}};
  if (opt.format == "json") {
    write_file(opt.out_path, point_set_json(set).dump(1) + "\n");
    summary["points_file"] = opt.out_path;
  } else {
    std::ostringstream csv;
    write_points_csv(csv, set.points);
    write_file(opt.out_path, csv.str());
    const std::string sidecar = opt.out_path + ".json";
    write_file(sidecar, sidecar_json(set).dump(1) + "\n");
    summary["points_file"] = opt.out_path;
    summary["sidecar_file"] = sidecar;
  }
  out << summary.dump() << "\n";
  return 0;
}

int cmd_energy(const Options& opt, std::ostream& out) {
  std::ifstream file(opt.points_file);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + opt.points_file + "'");
  const auto points = read_points_csv(file);
  nlohmann::json result = {{"N", points.size()}};
  if (opt.riesz_s) {
    result["kind"] = "riesz";
    result["s"] = *opt.riesz_s;
    result["energy"] = riesz_energy(points, *opt.riesz_s);
  } else {
    result["kind"] = "log";
    result["energy"] = log_energy(points);
  }
  out << result.dump() << "\n";
  return 0;
}

int cmd_expect(const Options& opt, std::ostream& out) {
  const Profile profile = parse_profile_spec(opt.spec);
  const ParallelLayout layout = layout_from_profile(profile);
  const EnergyBreakdown general = expected_energy_general(layout);
  nlohmann::json result = {{"profile", profile.name}, {"breakdown", to_json(general)},
                           {"single_sum", expected_energy_single_sum(layout)}};
  const double symmetric = expected_energy_symmetric(layout);
  result["symmetric"] = symmetric;
  result["difference"] = general.total - symmetric;
  result["relative_difference"] = std::abs(general.total - symmetric) / std::abs(symmetric);
  result["c_N"] = extract_constant(symmetric, layout.N());
  if (opt.trials > 0) result["montecarlo"] = to_json(mc_expected_energy(layout, opt.trials, opt.base_seed));
  out << result.dump() << "\n";
  return 0;
}

int cmd_asymptote(const Options& opt, std::ostream& out, std::ostream& err) {
  const ProfileFamily family = parse_family(opt.family);
  const auto study = convergence_study(family, opt.params);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& report : study) rows.push_back(to_json(report));
  out << rows.dump(1) << "\n";
  err << "verdict: " << (errors_strictly_decreasing(study) ? "converging" : "not monotone") << " (|c_N - target| at "
      << study.back().m << ": " << study.back().abs_error.value_or(NAN) << ")\n";
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto results = run_suite(opt.suite);
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.passed;
  }
  out << (all ? "suite passed" : "suite FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diamond-ensemble point sets on the sphere and their logarithmic energies"};
  app.footer(kSpecHelp);
  app.require_subcommand(1);
  Options opt;

  auto* generate = app.add_subcommand("generate", "Sample a point set; writes CSV plus a JSON sidecar");
  generate->add_option("spec", opt.spec, "Profile spec")->required();
  generate->add_option("--seed", opt.seed, "RNG seed");
  generate->add_option("--out", opt.out_path, "Output path")->required();
  generate->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* energy = app.add_subcommand("energy", "Log (default) or Riesz energy of a CSV point file");
  energy->add_option("points", opt.points_file, "CSV with header x,y,z")->required();
  energy->add_option("--s", opt.riesz_s, "Riesz exponent s > 0");

  auto* expect = app.add_subcommand("expect", "Closed-form expected log-energy of a profile");
  expect->add_option("spec", opt.spec, "Profile spec")->required();
  expect->add_option("--trials", opt.trials, "Also run a Monte Carlo check with this many trials");
  expect->add_option("--base-seed", opt.base_seed, "Base seed of the Monte Carlo trials");

  auto* asymptote = app.add_subcommand("asymptote", "Extract the order-N constant along a profile family");
  asymptote->add_option("family", opt.family, "quasioptimal | elaborated | simple:K=<int>")->required();
  asymptote->add_option("--m", opt.params, "Comma-separated family parameters")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Run an invariant suite: formulas | heights | montecarlo | asymptotics");
  verify->add_option("suite", opt.suite, "Suite name")->required();

  auto* constants = app.add_subcommand("constants", "Print the reference constant table");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (generate->parsed()) return cmd_generate(opt, out);
    if (energy->parsed()) return cmd_energy(opt, out);
    if (expect->parsed()) return cmd_expect(opt, out);
    if (asymptote->parsed()) return cmd_asymptote(opt, out, err);
    if (verify->parsed()) {
      if (std::find(suite_names().begin(), suite_names().end(), opt.suite) == suite_names().end()) {
        err << "error: unknown suite '" << opt.suite << "'\n" << verify->help();
        return 2;
      }
      return cmd_verify(opt, out);
    }
    if (constants->parsed()) {
      out << reference_constants_json().dump(1) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace diamond
