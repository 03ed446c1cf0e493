// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "diamond/asymptotics.hpp"
#include "diamond/cli.hpp"
#include "diamond/energy.hpp"
#include "diamond/io.hpp"
#include "diamond/montecarlo.hpp"
#include "diamond/parallel.hpp"

using namespace diamond;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void constant_criterion(int id, const char* family, const std::vector<std::int64_t>& params, bool timed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto study = convergence_study(parse_family(family), params);
  const double elapsed = seconds_since(t0);
  const bool monotone = errors_strictly_decreasing(study);
  const double last = *study.back().abs_error;
  std::ostringstream detail;
  detail << "|c_N - c| = ";
  for (const auto& row : study) detail << fmt("%.3e", *row.abs_error) << (&row == &study.back() ? "" : " > ");
  detail << (monotone ? " (strictly decreasing)" : " (NOT monotone)") << ", final " << fmt("%.3e", last)
         << " <= 5e-3, " << fmt("%.3f", elapsed) << " s";
  const bool ok = monotone && last <= 5e-3 && (!timed || elapsed < 1.0);
  report(id, std::string("constant reproduction, ") + family, ok, detail.str());
}

Profile random_profile(std::mt19937_64& rng) {
  Profile p;
  p.M = 1 + static_cast<std::int64_t>(rng() % 11);
  const auto pieces = 1 + static_cast<std::int64_t>(rng() % std::min<std::int64_t>(p.M, 4));
  std::vector<std::int64_t> inner;
  while (static_cast<std::int64_t>(inner.size()) < pieces - 1) {
    const auto t = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.M - 1));
    if (std::find(inner.begin(), inner.end(), t) == inner.end()) inner.push_back(t);
  }
  std::sort(inner.begin(), inner.end());
  p.knots.push_back(0);
  p.knots.insert(p.knots.end(), inner.begin(), inner.end());
  p.knots.push_back(p.M);
  p.pieces.push_back({0, 1 + static_cast<std::int64_t>(rng() % 6)});
  for (std::size_t l = 1; l + 1 < p.knots.size(); ++l) {
    const std::int64_t t = p.knots[l];
    const std::int64_t at = p.pieces.back().alpha + p.pieces.back().beta * t;
    const std::int64_t beta = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(at / t + 1));
    p.pieces.push_back({at - beta * t, beta});
  }
  p.name = "random";
  ensure_valid(p);
  return p;
}

void formula_equivalence() {
  double worst = 0.0;
  std::size_t cases = 0;
  auto three_way = [&](const Profile& p) {
    const ParallelLayout layout = layout_from_profile(p);
    const double g = expected_energy_general(layout).total;
    const double s = expected_energy_symmetric(layout);
    const double t = trapezoid_energy(p);
    worst = std::max({worst, rel(g, s), rel(g, t), rel(s, t)});
    ++cases;
  };
  for (std::int64_t m = 1; m <= 8; ++m) {
    three_way(builtin_quasioptimal(m));
    three_way(builtin_elaborated(m));
    for (std::int64_t K : {1, 2, 3, 4, 8}) three_way(builtin_simple(K, m));
  }
  std::mt19937_64 rng(404);
  for (int t = 0; t < 50; ++t) three_way(random_profile(rng));

  double worst_vectors = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t half = 1 + rng() % 11;
    std::vector<std::int64_t> r(2 * half - 1);
    for (std::size_t j = 0; j < half; ++j) r[j] = r[r.size() - 1 - j] = 1 + static_cast<std::int64_t>(rng() % 40);
    const ParallelLayout layout = optimal_heights(r);
    worst_vectors = std::max(worst_vectors, rel(expected_energy_general(layout).total, expected_energy_symmetric(layout)));
  }
  const bool ok = worst <= 1e-11 && worst_vectors <= 1e-11;
  report(4, "formula equivalence", ok,
         std::to_string(cases) + " profiles (general/symmetric/trapezoid) max rel diff " + fmt("%.2e", worst) +
             "; 50 symmetric count vectors (general/symmetric) max rel diff " + fmt("%.2e", worst_vectors) +
             "; tolerance 1e-11");
}

void monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  const McReport r = mc_expected_energy(layout_from_profile(builtin_quasioptimal(2)), 1000, 20240611);
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "quasioptimal:m=2, 1000 trials, mean " << fmt("%.6f", r.mean_energy) << " vs " << fmt("%.6f", r.closed_form)
         << ", stderr " << fmt("%.3e", r.stderr_energy) << ", z = " << fmt("%.3f", r.z_score) << " (|z| <= 4), "
         << fmt("%.1f", elapsed) << " s";
  report(5, "Monte Carlo consistency", std::isfinite(r.z_score) && std::abs(r.z_score) <= 4.0, detail.str());
}

void optimal_heights_check() {
  std::mt19937_64 rng(606);
  bool ok = true;
  double worst_ratio = 0.0;
  double worst_drop = -INFINITY;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::int64_t> r(1 + rng() % 11);
    for (auto& v : r) v = 1 + static_cast<std::int64_t>(rng() % 40);
    const ParallelLayout optimal = optimal_heights(r);
    const std::vector<double> z(optimal.heights().begin(), optimal.heights().end());
    auto energy = [&](const std::vector<double>& h) { return expected_energy_general(layout_with_heights(r, h)).total; };
    const double base = energy(z);
    const double n2 = static_cast<double>(optimal.N()) * static_cast<double>(optimal.N());
    for (std::size_t l = 0; l < r.size(); ++l) {
      auto shifted = [&](double d) {
        auto h = z;
        h[l] += d;
        return energy(h);
      };
      const double grad = std::abs(shifted(1e-6) - shifted(-1e-6)) / 2e-6;
      worst_ratio = std::max(worst_ratio, grad / n2);
      const double drop = base - std::min(shifted(1e-3), shifted(-1e-3));
      worst_drop = std::max(worst_drop, drop);
      ok = ok && grad <= 1e-6 * n2 && drop <= 0.0;
    }
  }
  report(6, "optimal heights are a local minimum", ok,
         "20 count vectors, max |dE/dz| / N^2 = " + fmt("%.2e", worst_ratio) + " (<= 1e-6), max energy decrease under +-1e-3 = " +
             fmt("%.2e", worst_drop) + " (<= 0)");
}

void exact_small_cases() {
  const std::vector<std::int64_t> one{1};
  const double e = expected_energy_general(optimal_heights(one)).total;
  const double err = std::abs(e + 4.0 * std::numbers::ln2);
  double worst = 0.0;
  for (std::int64_t n = 2; n <= 64; ++n) {
    std::vector<Vec3> pts;
    for (std::int64_t i = 0; i < n; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      pts.push_back({std::cos(a), std::sin(a), 0.0});
    }
    worst = std::max(worst, std::abs(roots_of_unity_energy(n, 1.0) - log_energy(pts)));
  }
  report(7, "exact small cases", err <= 1e-13 && worst <= 1e-10,
         "|E(layout[1]) + 4 log 2| = " + fmt("%.2e", err) + " (<= 1e-13); n-gons 2..64 max |closed - direct| = " + fmt("%.2e", worst) +
             " (<= 1e-10)");
}

void euler_maclaurin() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_fraction = 0.0;
  auto all_pieces = [&](const Profile& p) {
    for (std::size_t l = 0; l < p.piece_count(); ++l) {
      for (PieceFunction which : {PieceFunction::g, PieceFunction::h}) {
        const EmCheck c = em_error_check(p, l, which);
        ++checked;
        if (!c.ok()) ++violations;
        if (c.bound > 0.0) worst_fraction = std::max(worst_fraction, c.observed / c.bound);
      }
    }
  };
  for (std::int64_t m = 1; m <= 20; ++m) {
    all_pieces(builtin_quasioptimal(m));
    all_pieces(builtin_elaborated(m));
    for (std::int64_t K : {1, 2, 4, 8}) all_pieces(builtin_simple(K, m));
  }

  double min_ratio = INFINITY;
  for (const char* family : {"quasioptimal", "elaborated", "simple:K=4"}) {
    const ProfileFamily fam = parse_family(family);
    std::vector<Profile> ps{fam.make(10), fam.make(20), fam.make(40)};
    for (std::size_t l = 0; l < ps[0].piece_count(); ++l) {
      for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
        const double a = em_error_check(ps[k], l, PieceFunction::g).observed;
        const double b = em_error_check(ps[k + 1], l, PieceFunction::g).observed;
        min_ratio = std::min(min_ratio, a / b);
      }
    }
  }
  report(8, "Euler-Maclaurin remainder bound", violations == 0 && min_ratio >= 1.5,
         std::to_string(checked) + " piece checks for m <= 20, " + std::to_string(violations) +
             " violations, max observed/bound = " + fmt("%.3f", worst_fraction) +
             "; smallest g-error shrink factor per doubling over m = 10, 20, 40: " + fmt("%.2f", min_ratio) + " (>= 1.5)");
}

std::string generate_csv(unsigned threads) {
  set_thread_count(threads);
  const char* path = "acceptance_points.csv";
  std::ostringstream out, err;
  const int code = run_cli({"diamond", "generate", "quasioptimal:m=4", "--seed", "31337", "--out", path}, out, err);
  set_thread_count(0);
  if (code != 0) return "generate failed: " + err.str();
  std::FILE* f = std::fopen(path, "rb");
  std::string bytes;
  char buf[4096];
  std::size_t n = 0;
  while (f && (n = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.append(buf, n);
  if (f) std::fclose(f);
  std::remove(path);
  std::remove((std::string(path) + ".json").c_str());
  return bytes;
}

void determinism() {
  const std::string a = generate_csv(1);
  const std::string b = generate_csv(1);
  const std::string c = generate_csv(4);
  const bool ok = !a.empty() && a.rfind("x,y,z\n", 0) == 0 && a == b && a == c;
  report(9, "deterministic generation", ok,
         "quasioptimal:m=4 seed 31337, " + std::to_string(a.size()) + " bytes; repeat run " + (a == b ? "identical" : "DIFFERS") +
             ", 4 threads vs 1 " + (a == c ? "identical" : "DIFFERS"));
}

template <typename F>
void guarded(int id, const char* title, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const std::vector<std::int64_t> ms{16, 32, 64, 128, 256};
  guarded(1, "constant reproduction, quasioptimal", [&] { constant_criterion(1, "quasioptimal", ms, true); });
  guarded(2, "constant reproduction, simple:K=4",
          [&] { constant_criterion(2, "simple:K=4", {128, 256, 512, 1024, 2048}, false); });
  guarded(3, "constant reproduction, elaborated", [&] { constant_criterion(3, "elaborated", ms, false); });
  guarded(4, "formula equivalence", formula_equivalence);
  guarded(5, "Monte Carlo consistency", monte_carlo);
  guarded(6, "optimal heights are a local minimum", optimal_heights_check);
  guarded(7, "exact small cases", exact_small_cases);
  guarded(8, "Euler-Maclaurin remainder bound", euler_maclaurin);
  guarded(9, "deterministic generation", determinism);
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
