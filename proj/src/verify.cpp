#include <cmath>
#include <numbers>
#include <sstream>

#include "diamond/asymptotics.hpp"
#include "diamond/cli.hpp"
#include "diamond/energy.hpp"
#include "diamond/montecarlo.hpp"
#include "diamond/rng.hpp"

namespace diamond {

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::vector<std::int64_t> random_symmetric_counts(SplitMix64& rng, std::int64_t max_half, std::int64_t max_r) {
  const auto half = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(max_half));
  std::vector<std::int64_t> r(static_cast<std::size_t>(2 * half - 1));
  for (std::int64_t j = 0; j < half; ++j) {
    const auto v = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(max_r));
    r[static_cast<std::size_t>(j)] = v;
    r[r.size() - 1 - static_cast<std::size_t>(j)] = v;
  }
  return r;
}

std::vector<CheckResult> formulas_suite() {
  std::vector<CheckResult> out;
  auto agree = [&](const std::string& name, const Profile& profile) {
    const ParallelLayout layout = layout_from_profile(profile);
    const double general = expected_energy_general(layout).total;
    const double single = expected_energy_single_sum(layout);
    const double symmetric = expected_energy_symmetric(layout);
    const double trapezoid = trapezoid_energy(profile);
    const double worst = std::max({rel_diff(general, symmetric), rel_diff(general, trapezoid),
                                   rel_diff(symmetric, trapezoid), rel_diff(general, single)});
    out.push_back({name, worst <= 1e-11, "max relative difference " + fmt(worst)});
  };
  for (std::int64_t m = 1; m <= 4; ++m) {
    agree("quasioptimal:m=" + std::to_string(m), builtin_quasioptimal(m));
    agree("elaborated:m=" + std::to_string(m), builtin_elaborated(m));
    agree("simple:K=4,M=" + std::to_string(2 * m), builtin_simple(4, 2 * m));
  }

  SplitMix64 rng(20240611);
  bool random_ok = true;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const ParallelLayout layout = optimal_heights(random_symmetric_counts(rng, 11, 40));
    const double d = rel_diff(expected_energy_general(layout).total, expected_energy_symmetric(layout));
    worst = std::max(worst, d);
    random_ok = random_ok && d <= 1e-11;
  }
  out.push_back({"random symmetric counts", random_ok, "max relative difference " + fmt(worst)});

  const std::vector<std::int64_t> one{1};
  const double three_point = expected_energy_general(optimal_heights(one)).total;
  out.push_back({"three-point configuration", std::abs(three_point + 4.0 * std::numbers::ln2) <= 1e-13,
                 "E = " + fmt(three_point)});
  return out;
}

std::vector<CheckResult> heights_suite() {
  std::vector<CheckResult> out;
  SplitMix64 rng(77);
  for (int t = 0; t < 5; ++t) {
    const auto p = 1 + rng.next() % 11;
    std::vector<std::int64_t> r(p);
    for (auto& v : r) v = 1 + static_cast<std::int64_t>(rng.next() % 40);
    const ParallelLayout optimal = optimal_heights(r);
    std::vector<double> z(optimal.heights().begin(), optimal.heights().end());
    auto energy_at = [&](const std::vector<double>& heights) {
      return expected_energy_general(layout_with_heights(r, heights)).total;
    };
    const double base = energy_at(z);
    double max_grad = 0.0;
    bool local_min = true;
    for (std::size_t l = 0; l < p; ++l) {
      auto zp = z;
      auto zm = z;
      zp[l] += 1e-6;
      zm[l] -= 1e-6;
      max_grad = std::max(max_grad, std::abs(energy_at(zp) - energy_at(zm)) / 2e-6);
      zp = z;
      zm = z;
      zp[l] += 1e-3;
      zm[l] -= 1e-3;
      local_min = local_min && energy_at(zp) >= base && energy_at(zm) >= base;
    }
    const auto n = static_cast<double>(optimal.N());
    out.push_back({"random counts #" + std::to_string(t) + " (p=" + std::to_string(p) + ")",
                   max_grad <= 1e-6 * n * n && local_min, "max |dE/dz| = " + fmt(max_grad)});
  }
  return out;
}

std::vector<CheckResult> montecarlo_suite() {
  std::vector<CheckResult> out;
  const std::vector<std::int64_t> two{2, 2};
  const McReport small = mc_expected_energy(optimal_heights(two), 5000, 1);
  out.push_back({"counts [2,2], 5000 trials", std::abs(small.z_score) <= 4.0, "z = " + fmt(small.z_score)});
  const McReport quasi = mc_expected_energy(layout_from_profile(builtin_quasioptimal(1)), 400, 2);
  out.push_back({"quasioptimal:m=1, 400 trials", std::abs(quasi.z_score) <= 4.0, "z = " + fmt(quasi.z_score)});
  return out;
}

std::vector<CheckResult> asymptotics_suite() {
  std::vector<CheckResult> out;
  const std::vector<std::int64_t> ms{16, 32, 64, 128, 256};
  for (const char* family : {"quasioptimal", "elaborated"}) {
    const auto study = convergence_study(parse_family(family), ms);
    const bool ok = errors_strictly_decreasing(study) && *study.back().abs_error <= 5e-3;
    out.push_back({family, ok, "|c_N - c| at m=256: " + fmt(*study.back().abs_error)});
  }
  const auto simple = convergence_study(parse_family("simple:K=4"), {128, 256, 512, 1024, 2048});
  out.push_back({"simple:K=4", errors_strictly_decreasing(simple) && *simple.back().abs_error <= 5e-3,
                 "|c_N - c| at M=2048: " + fmt(*simple.back().abs_error)});
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"formulas", "heights", "montecarlo", "asymptotics"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view name) {
  if (name == "formulas") return formulas_suite();
  if (name == "heights") return heights_suite();
  if (name == "montecarlo") return montecarlo_suite();
  if (name == "asymptotics") return asymptotics_suite();
  throw Error(ErrorCode::BadSpec, "unknown suite '" + std::string(name) + "'");
}

}  // namespace diamond
