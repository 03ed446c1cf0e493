#include "diamond/montecarlo.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "diamond/compensated_sum.hpp"
#include "diamond/energy.hpp"
#include "diamond/parallel.hpp"
#include "diamond/rng.hpp"

namespace diamond {

nlohmann::json to_json(const McReport& r) {
  return {{"trials", r.trials},     {"mean_energy", r.mean_energy}, {"stderr", r.stderr_energy},
          {"closed_form", r.closed_form}, {"z_score", r.z_score},  {"base_seed", r.base_seed},
          {"generator_id", SplitMix64::kGeneratorId}};
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::int64_t k) {
  return SplitMix64::split(base_seed, static_cast<std::uint64_t>(k));
}

std::vector<double> sampled_log_energies(const ParallelLayout& layout, std::int64_t trials, std::uint64_t base_seed) {
  if (trials < 2) throw Error(ErrorCode::InvalidArgument, "at least two trials are required");
  std::vector<double> energies(static_cast<std::size_t>(trials));
  parallel_for(energies.size(), [&](std::size_t k) {
    const PointSet set = sample(layout, trial_seed(base_seed, static_cast<std::int64_t>(k)), {}, 1);
    energies[k] = log_energy(set.points, 1);
  });
  return energies;
}

McReport summarize(const std::vector<double>& energies, double closed_form, std::uint64_t base_seed) {
  const auto n = static_cast<double>(energies.size());
  McReport out;
  out.trials = static_cast<std::int64_t>(energies.size());
  out.base_seed = base_seed;
  out.closed_form = closed_form;
  out.mean_energy = pairwise_total(energies) / n;
  std::vector<double> sq(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k) {
    const double d = energies[k] - out.mean_energy;
    sq[k] = d * d;
  }
  const double variance = pairwise_total(sq) / (n - 1.0);
  out.stderr_energy = std::sqrt(variance / n);
  // Energies carry rounding noise of about 1e-12 relative, so the z-score
  // denominator never drops below that resolution.
  const double resolution = 1e-12 * std::max(1.0, std::abs(closed_form));
  out.z_score = (out.mean_energy - closed_form) / std::max(out.stderr_energy, resolution);
  return out;
}

McReport mc_expected_energy(const ParallelLayout& layout, std::int64_t trials, std::uint64_t base_seed) {
  const auto energies = sampled_log_energies(layout, trials, base_seed);
  return summarize(energies, expected_energy_general(layout).total, base_seed);
}

}  // namespace diamond
