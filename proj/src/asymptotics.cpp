#include "diamond/asymptotics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include "diamond/compensated_sum.hpp"
#include "diamond/energy.hpp"

namespace diamond {

PieceFunctions fgh_pieces(const Profile& profile, std::size_t ell) { return PieceFunctions{piece_height(profile, ell)}; }

double integrate(const std::function<double(double)>& fn, double a, double b) {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  double l1 = 0.0;
  const double value = Quadrature::integrate(fn, a, b, 30, 1e-12, &error, &l1);
  if (!std::isfinite(value) || error > 1e-12 * std::max(1.0, l1)) {
    throw Error(ErrorCode::QuadratureFailure, "estimated error " + std::to_string(error) + " on [" +
                                                  std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return value;
}

namespace {

std::vector<PieceFunctions> all_pieces(const Profile& profile) {
  std::vector<PieceFunctions> out;
  for (std::size_t ell = 0; ell < profile.piece_count(); ++ell) out.push_back(fgh_pieces(profile, ell));
  return out;
}

}  // namespace

double trapezoid_energy(const Profile& profile) {
  const auto n1 = static_cast<double>(total_points(profile) - 1);
  CompensatedSum tf;
  CompensatedSum tg;
  CompensatedSum th;
  for (const PieceFunctions& fn : all_pieces(profile)) {
    const auto a = static_cast<std::int64_t>(fn.a());
    const auto b = static_cast<std::int64_t>(fn.b());
    tf.add(trapezoid_sum([&](double x) { return fn.f(x); }, a, b));
    tg.add(trapezoid_sum([&](double x) { return fn.g(x); }, a, b));
    th.add(trapezoid_sum([&](double x) { return fn.h(x); }, a, b));
  }
  CompensatedSum total(-n1 * 2.0 * std::numbers::ln2);
  total.add(-2.0 * tf.value());
  total.add(-n1 * tg.value());
  total.add(-n1 * th.value());
  return total.value();
}

double continuum_estimate(const Profile& profile) {
  const auto n1 = static_cast<double>(total_points(profile) - 1);
  CompensatedSum sf;
  CompensatedSum sg;
  CompensatedSum sh;
  for (const PieceFunctions& fn : all_pieces(profile)) {
    const double a = fn.a();
    const double b = fn.b();
    sf.add(integrate([&](double x) { return fn.f(x); }, a, b));
    sg.add(integrate([&](double x) { return fn.g(x); }, a, b));
    sg.add((fn.dg(b) - fn.dg(a)) / 12.0);
    sh.add(integrate([&](double x) { return fn.h(x); }, a, b));
    sh.add((fn.dh(b) - fn.dh(a)) / 12.0);
  }
  CompensatedSum total(-n1 * 2.0 * std::numbers::ln2);
  total.add(-2.0 * sf.value());
  total.add(-n1 * sg.value());
  total.add(-n1 * sh.value());
  return total.value();
}

EmCheck em_check(const std::function<double(double)>& fn, const std::function<double(double)>& d1,
                 const std::function<double(double)>& d3, std::int64_t a, std::int64_t b) {
  const double lo = static_cast<double>(a);
  const double hi = static_cast<double>(b);
  const double trap = trapezoid_sum(fn, a, b);
  const double exact = integrate(fn, lo, hi);
  EmCheck out;
  out.observed = std::abs(trap - exact - (d1(hi) - d1(lo)) / 12.0);
  out.floor = 1e-12 * std::max(1.0, std::abs(trap));
  const std::int64_t samples = 64 * (b - a);
  for (std::int64_t k = 0; k <= samples; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples);
    out.third_derivative = std::max(out.third_derivative, std::abs(d3(x)));
  }
  out.bound = out.third_derivative * (hi - lo) / (24.0 * std::numbers::pi);
  return out;
}

EmCheck em_error_check(const Profile& profile, std::size_t ell, PieceFunction which) {
  const PieceFunctions fn = fgh_pieces(profile, ell);
  const auto a = static_cast<std::int64_t>(fn.a());
  const auto b = static_cast<std::int64_t>(fn.b());
  if (which == PieceFunction::g) {
    return em_check([&](double x) { return fn.g(x); }, [&](double x) { return fn.dg(x); },
                    [&](double x) { return fn.d3g(x); }, a, b);
  }
  return em_check([&](double x) { return fn.h(x); }, [&](double x) { return fn.dh(x); },
                  [&](double x) { return fn.d3h(x); }, a, b);
}

double extract_constant(double energy, std::int64_t N) {
  if (N < 3) throw Error(ErrorCode::InvalidArgument, "extract_constant needs N >= 3");
  const auto n = static_cast<double>(N);
  const double w_log = 0.5 - std::numbers::ln2;
  return (energy - w_log * n * n + 0.5 * n * std::log(n)) / n;
}

const ReferenceConstants& reference_constants() {
  static const ReferenceConstants table = [] {
    const double ln2 = std::numbers::ln2;
    const double pi = std::numbers::pi;
    ReferenceConstants c{};
    c.w_log = 0.5 - ln2;
    c.c_log_lower = -0.2232823526;
    c.c_log_upper = 2.0 * ln2 + 0.5 * std::log(2.0 / 3.0) + 3.0 * std::log(std::sqrt(pi) / std::tgamma(1.0 / 3.0));
    c.c1 = ln2 - std::numbers::egamma / 2.0;
    c.c2 = -c.w_log;
    c.c_elaborated = -0.048033870622806;
    c.c_quasioptimal = -0.0492220914515784;
    c.heuristic_k0 = 3.0 / pi;
    c.heuristic_min = (1.0 - std::log(3.0)) / 2.0;
    return c;
  }();
  return table;
}

double c_simple(double K) {
  const double ln2 = std::numbers::ln2;
  return ln2 / 6.0 * K - 0.5 + ln2 - std::log(K) / 2.0;
}

double heuristic_constant(double K0) {
  return K0 * std::numbers::pi / 6.0 - std::log(K0) / 2.0 - std::log(std::numbers::pi) / 2.0;
}

nlohmann::json reference_constants_json() {
  const auto& c = reference_constants();
  return {{"W_log", c.w_log},
          {"C_log_lower", c.c_log_lower},
          {"C_log_upper", c.c_log_upper},
          {"c1_spherical_ensemble", c.c1},
          {"c2_random_polynomials", c.c2},
          {"c_simple_K4", c_simple(4.0)},
          {"c_elaborated", c.c_elaborated},
          {"c_quasioptimal", c.c_quasioptimal},
          {"heuristic_K0", c.heuristic_k0},
          {"heuristic_min", c.heuristic_min}};
}

nlohmann::json to_json(const AsymptoticReport& r) {
  nlohmann::json out = {{"profile", r.profile}, {"m", r.m}, {"N", r.N}, {"E_exact", r.energy}, {"c_N", r.c_N}};
  out["target"] = r.target ? nlohmann::json(*r.target) : nlohmann::json(nullptr);
  out["abs_error"] = r.abs_error ? nlohmann::json(*r.abs_error) : nlohmann::json(nullptr);
  return out;
}

AsymptoticReport asymptotic_report(const Profile& profile, std::int64_t m, std::optional<double> target) {
  const ParallelLayout layout = layout_from_profile(profile);
  AsymptoticReport out;
  out.profile = profile.name;
  out.m = m;
  out.N = layout.N();
  out.energy = expected_energy_symmetric(layout);
  out.c_N = extract_constant(out.energy, out.N);
  out.target = target;
  if (target) out.abs_error = std::abs(out.c_N - *target);
  return out;
}

ProfileFamily parse_family(std::string_view text) {
  const auto& c = reference_constants();
  if (text == "quasioptimal") return {"quasioptimal", builtin_quasioptimal, c.c_quasioptimal};
  if (text == "elaborated") return {"elaborated", builtin_elaborated, c.c_elaborated};
  constexpr std::string_view prefix = "simple:K=";
  if (text.starts_with(prefix)) {
    std::int64_t K = 0;
    const auto digits = text.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), K);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && K >= 1) {
      return {std::string(text), [K](std::int64_t M) { return builtin_simple(K, M); }, c_simple(static_cast<double>(K))};
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown family '" + std::string(text) +
                                      "' (expected quasioptimal, elaborated or simple:K=<int>)");
}

std::vector<AsymptoticReport> convergence_study(const ProfileFamily& family, const std::vector<std::int64_t>& params) {
  if (params.empty()) throw Error(ErrorCode::BadSpec, "parameter list is empty");
  std::vector<AsymptoticReport> out;
  out.reserve(params.size());
  for (std::int64_t m : params) {
    if (m < 1) throw Error(ErrorCode::BadSpec, "family parameters must be >= 1");
    out.push_back(asymptotic_report(family.make(m), m, family.target));
  }
  return out;
}

bool errors_strictly_decreasing(const std::vector<AsymptoticReport>& study) {
  for (std::size_t i = 1; i < study.size(); ++i) {
    if (!study[i].abs_error || !study[i - 1].abs_error) return false;
    if (!(*study[i].abs_error < *study[i - 1].abs_error)) return false;
  }
  return true;
}

}  // namespace diamond
