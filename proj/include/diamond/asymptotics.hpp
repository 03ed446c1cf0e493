#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "diamond/compensated_sum.hpp"
#include "diamond/ensemble.hpp"
#include "diamond/profile.hpp"

namespace diamond {

/// Composite trapezoidal rule with unit step on the integers of [a, b].
template <typename F>
double trapezoid_sum(F&& f, std::int64_t a, std::int64_t b) {
  if (b <= a) throw Error(ErrorCode::InvalidArgument, "trapezoid_sum needs a < b");
  CompensatedSum sum(0.5 * (f(static_cast<double>(a)) + f(static_cast<double>(b))));
  for (std::int64_t j = a + 1; j < b; ++j) sum.add(f(static_cast<double>(j)));
  return sum.value();
}

/// x log x with the continuous extension 0 at x = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// The three summands of the trapezoid form of the symmetric energy on one
/// profile piece:
///   f(x) = r(x) log r(x)
///   g(x) = r(x) (1 - z(x)) log(1 - z(x))
///   h(x) = r(x) (1 + z(x)) log(1 + z(x))
/// with r and z the piece's linear count and quadratic height. Derivatives are
/// analytic: with v = 1 - z = u / (N - 1), v' = 2 r / (N - 1), v'' = 2 beta / (N - 1).
struct PieceFunctions {
  PieceHeight piece;

  double a() const { return piece.t_lo; }
  double b() const { return piece.t_hi; }

  double f(double x) const { return xlogx(piece.r(x)); }
  double g(double x) const { return piece.r(x) * xlogx(v(x)); }
  double h(double x) const { return piece.r(x) * xlogx(2.0 - v(x)); }

  double dg(double x) const { return first_derivative(x, v(x), dv(x)); }
  double dh(double x) const { return first_derivative(x, 2.0 - v(x), -dv(x)); }
  double d3g(double x) const { return third_derivative(x, v(x), dv(x), d2v()); }
  double d3h(double x) const { return third_derivative(x, 2.0 - v(x), -dv(x), -d2v()); }

 private:
  double v(double x) const { return piece.u(x) / piece.n_minus_1; }
  double dv(double x) const { return 2.0 * piece.r(x) / piece.n_minus_1; }
  double d2v() const { return 2.0 * piece.beta / piece.n_minus_1; }

  // (r * w log w)' for w(x) with derivative w1.
  double first_derivative(double x, double w, double w1) const {
    return piece.beta * xlogx(w) + piece.r(x) * w1 * (std::log(w) + 1.0);
  }
  // (r * w log w)''' = r (w log w)''' + 3 beta (w log w)'' with w''' = 0.
  double third_derivative(double x, double w, double w1, double w2) const {
    const double phi2 = w2 * (std::log(w) + 1.0) + w1 * w1 / w;
    const double phi3 = 3.0 * w1 * w2 / w - w1 * w1 * w1 / (w * w);
    return piece.r(x) * phi3 + 3.0 * piece.beta * phi2;
  }
};

/// Piece `ell` is 0-based.
PieceFunctions fgh_pieces(const Profile& profile, std::size_t ell);

/// Adaptive Gauss-Kronrod integral of fn over [a, b]. The estimated error
/// must be at most 1e-12 * max(1, integral of |fn|); otherwise throws
/// QuadratureFailure.
double integrate(const std::function<double(double)>& fn, double a, double b);

/// -(N-1) log 4 - 2 sum_l T(f_l) - (N-1) sum_l T(g_l) - (N-1) sum_l T(h_l).
///
/// This equals the symmetric closed form exactly: the half weights at interior
/// knots add up to one, f(0) = g(0) = h(0) = 0 because r(0) = 0, and
/// g(M) = h(M) = 0 because z(M) = 0. What remains is the half weight of f at
/// x = M, which is the + r(M) log r(M) term of the closed form.
double trapezoid_energy(const Profile& profile);

/// Continuum estimate: every trapezoid sum replaced by the integral, with the
/// Euler-Maclaurin endpoint correction (F'(b) - F'(a)) / 12 for g and h.
double continuum_estimate(const Profile& profile);

struct EmCheck {
  double observed = 0.0;      // |T - integral - (F'(b) - F'(a)) / 12|
  double bound = 0.0;         // max|F'''| * (b - a) / (24 pi)
  double third_derivative = 0.0;
  double floor = 0.0;         // quadrature and rounding allowance, 1e-12 * max(1, |T|)
  bool ok() const { return observed <= bound + floor; }
};

/// Euler-Maclaurin remainder of a generic function with known F' and F'''.
/// max|F'''| is sampled at 64 points per unit length plus the endpoints.
EmCheck em_check(const std::function<double(double)>& fn, const std::function<double(double)>& d1,
                 const std::function<double(double)>& d3, std::int64_t a, std::int64_t b);

enum class PieceFunction { g, h };

/// em_check on g_ell or h_ell (0-based ell).
EmCheck em_error_check(const Profile& profile, std::size_t ell, PieceFunction which);

/// c = (E - (1/2 - log 2) N^2 + (1/2) N log N) / N.
double extract_constant(double energy, std::int64_t N);

struct ReferenceConstants {
  double w_log;           // 1/2 - log 2
  double c_log_lower;     // known lower bound of C_log
  double c_log_upper;     // 2 log 2 + log(2/3)/2 + 3 log(sqrt(pi) / Gamma(1/3))
  double c1;              // log 2 - gamma / 2
  double c2;              // -W_log
  double c_elaborated;
  double c_quasioptimal;
  double heuristic_k0;    // 3 / pi
  double heuristic_min;   // (1 - log 3) / 2
};

const ReferenceConstants& reference_constants();

/// (log 2 / 6) K - 1/2 + log 2 - (log K) / 2
double c_simple(double K);

/// K0 pi / 6 - (log K0) / 2 - (log pi) / 2
double heuristic_constant(double K0);

nlohmann::json reference_constants_json();

struct AsymptoticReport {
  std::string profile;
  std::int64_t m = 0;
  std::int64_t N = 0;
  double energy = 0.0;
  double c_N = 0.0;
  std::optional<double> target;
  std::optional<double> abs_error;
};

nlohmann::json to_json(const AsymptoticReport& report);

AsymptoticReport asymptotic_report(const Profile& profile, std::int64_t m, std::optional<double> target);

/// A one-parameter family of built-ins: "quasioptimal", "elaborated", or
/// "simple:K=<K>" (the parameter is then M).
struct ProfileFamily {
  std::string name;
  std::function<Profile(std::int64_t)> make;
  std::optional<double> target;
};

ProfileFamily parse_family(std::string_view text);

std::vector<AsymptoticReport> convergence_study(const ProfileFamily& family, const std::vector<std::int64_t>& params);

/// True when |c_N - target| is strictly decreasing along the study.
bool errors_strictly_decreasing(const std::vector<AsymptoticReport>& study);

}  // namespace diamond
