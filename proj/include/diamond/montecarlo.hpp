#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "diamond/ensemble.hpp"

namespace diamond {

struct McReport {
  std::int64_t trials = 0;
  double mean_energy = 0.0;
  double stderr_energy = 0.0;
  double closed_form = 0.0;
  double z_score = 0.0;
  std::uint64_t base_seed = 0;
};

nlohmann::json to_json(const McReport& report);

/// Seed used for trial k: SplitMix64::split(base_seed, k).
std::uint64_t trial_seed(std::uint64_t base_seed, std::int64_t k);

/// Log-energies of `trials` independent realizations of the layout, in trial
/// order. Trials run in parallel; each energy kernel runs single-threaded.
std::vector<double> sampled_log_energies(const ParallelLayout& layout, std::int64_t trials, std::uint64_t base_seed);

/// Sample mean, standard error of the mean, and z-score against the closed-form
/// expectation. The mean is a pairwise-tree reduction over trial order, so
/// reports are bit-identical for a given base seed at any thread count. The
/// z-score divides by max(stderr, 1e-12 * max(1, |closed_form|)), so it stays
/// finite when the configuration does not depend on the phases.
McReport mc_expected_energy(const ParallelLayout& layout, std::int64_t trials, std::uint64_t base_seed);

McReport summarize(const std::vector<double>& energies, double closed_form, std::uint64_t base_seed);

}  // namespace diamond
