#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "diamond/ensemble.hpp"
#include "support.hpp"

using namespace diamond;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Expected log-energy of the general construction, assembled pair class by
// pair class from first principles.
double oracle_expected_energy(const std::vector<std::int64_t>& r, const std::vector<double>& z) {
  double e = -2.0 * std::log(2.0);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double rj = static_cast<double>(r[j]);
    const double radius2 = 1.0 - z[j] * z[j];
    e -= rj * (std::log(2.0 * (1.0 - z[j])) + std::log(2.0 * (1.0 + z[j])));
    e -= rj * std::log(rj) + 0.5 * rj * (rj - 1.0) * std::log(radius2);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k == j) continue;
      e -= 0.5 * rj * static_cast<double>(r[k]) * std::log(1.0 - z[j] * z[k] + std::abs(z[j] - z[k]));
    }
  }
  return e;
}

// Cyclic coordinate descent with golden-section line searches.
std::vector<double> minimize_heights(const std::vector<std::int64_t>& r, std::vector<double> z) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (std::size_t l = 0; l < z.size(); ++l) {
      const double hi = l == 0 ? 1.0 - 1e-12 : z[l - 1] - 1e-12;
      const double lo = l + 1 == z.size() ? -1.0 + 1e-12 : z[l + 1] + 1e-12;
      double a = lo;
      double b = hi;
      auto at = [&](double v) {
        auto t = z;
        t[l] = v;
        return oracle_expected_energy(r, t);
      };
      while (b - a > 1e-13) {
        const double c = b - phi * (b - a);
        const double d = a + phi * (b - a);
        if (at(c) < at(d)) {
          b = d;
        } else {
          a = c;
        }
      }
      z[l] = 0.5 * (a + b);
    }
  }
  return z;
}

double distance(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

TEST_CASE("optimal heights for small count vectors") {
  const std::vector<std::int64_t> one{1};
  CHECK(optimal_heights(one).z(0) == 0.0);

  const std::vector<std::int64_t> r121{1, 2, 1};
  const ParallelLayout a = optimal_heights(r121);
  CHECK(a.N() == 6);
  CHECK(a.z(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(a.z(1) == 0.0);
  CHECK(a.z(2) == doctest::Approx(-0.6).epsilon(1e-15));

  const std::vector<std::int64_t> r222{2, 2, 2};
  const ParallelLayout b = optimal_heights(r222);
  CHECK(b.z(0) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(b.z(1) == 0.0);
  CHECK(b.z(2) == doctest::Approx(-4.0 / 7.0).epsilon(1e-15));

  for (const auto& r : {r121, r222, std::vector<std::int64_t>{3, 1, 4, 1, 5}}) {
    const ParallelLayout closed = optimal_heights(r);
    std::vector<double> start(r.size());
    for (std::size_t l = 0; l < r.size(); ++l) start[l] = 0.9 - 1.8 * static_cast<double>(l) / static_cast<double>(r.size());
    if (r.size() == 1) start[0] = 0.3;
    const auto numeric = minimize_heights(r, start);
    for (std::size_t l = 0; l < r.size(); ++l) CHECK(numeric[l] == doctest::Approx(closed.z(l)).epsilon(1e-6));
  }
}

TEST_CASE("both expressions of the optimal heights agree exactly") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::int64_t> r(1 + rng() % 30);
    for (auto& v : r) v = 1 + static_cast<std::int64_t>(rng() % 100);
    const ParallelLayout layout = optimal_heights(r);
    const auto u = layout.numerators();
    std::int64_t before = 0;
    std::int64_t after = 0;
    for (auto v : r) after += v;
    for (std::size_t l = 0; l < r.size(); ++l) {
      after -= r[l];
      CHECK(layout.N() - 1 - u[l] == after - before);
      CHECK(u[l] > 0);
      CHECK(u[l] < 2 * (layout.N() - 1));
      before += r[l];
      if (l > 0) CHECK(layout.z(l) < layout.z(l - 1));
    }
  }
}

TEST_CASE("symmetric counts give antisymmetric heights") {
  for (const Profile& p : {builtin_quasioptimal(3), builtin_elaborated(5), builtin_simple(3, 11)}) {
    const ParallelLayout layout = layout_from_profile(p);
    const auto u = layout.numerators();
    const std::size_t P = layout.p();
    for (std::size_t j = 0; j < P; ++j) {
      CHECK(u[j] + u[P - 1 - j] == 2 * (layout.N() - 1));
      CHECK(layout.z(j) == -layout.z(P - 1 - j));
    }
    CHECK(layout.z(static_cast<std::size_t>(p.M - 1)) == 0.0);
  }
}

TEST_CASE("layout_from_profile") {
  const ParallelLayout s = layout_from_profile(builtin_simple(1, 2));
  CHECK(s.N() == 6);
  CHECK(std::vector<std::int64_t>(s.counts().begin(), s.counts().end()) == std::vector<std::int64_t>{1, 2, 1});
  CHECK(s.numerators()[0] == 2);
  CHECK(s.z(0) == doctest::Approx(0.6).epsilon(1e-15));

  const ParallelLayout q = layout_from_profile(builtin_quasioptimal(1));
  CHECK(q.N() == 241);
  CHECK(q.numerators()[0] == 7);
  CHECK(q.z(0) == doctest::Approx(233.0 / 240.0).epsilon(1e-15));
  CHECK(q.one_minus_z(0) == 7.0 / 240.0);
}

TEST_CASE("layout errors") {
  const std::vector<std::int64_t> none;
  CHECK_CODE(optimal_heights(none), EmptyCounts);
  const std::vector<std::int64_t> hole{1, 0, 1};
  CHECK_CODE(optimal_heights(hole), EmptyParallel);
  const std::vector<std::int64_t> r{1, 1};
  const std::vector<double> rising{-0.2, 0.2};
  CHECK_CODE(layout_with_heights(r, rising), InvalidHeights);
  const std::vector<double> pole{1.0, 0.2};
  CHECK_CODE(layout_with_heights(r, pole), InvalidHeights);
  const std::vector<double> short_list{0.5};
  CHECK_CODE(layout_with_heights(r, short_list), InvalidHeights);
  const std::vector<std::int64_t> huge{std::numeric_limits<std::int64_t>::max() / 2, std::numeric_limits<std::int64_t>::max() / 2};
  CHECK_CODE(optimal_heights(huge), IntegerOverflow);
}

TEST_CASE("radius from exact numerators matches the naive form") {
  for (const Profile& p : {builtin_quasioptimal(4), builtin_elaborated(4), builtin_simple(4, 20)}) {
    const ParallelLayout layout = layout_from_profile(p);
    for (std::size_t j = 0; j < layout.p(); ++j) {
      CHECK(std::abs(layout.radius(j) - std::sqrt(1.0 - layout.z(j) * layout.z(j))) <= 1e-12);
      CHECK(layout.radius(j) > 0.0);
      CHECK(std::abs(layout.log_one_minus_z2(j) - std::log1p(-layout.z(j) * layout.z(j))) <= 1e-12);
    }
  }
}

TEST_CASE("height polynomial") {
  for (std::int64_t m : {1, 2, 5}) {
    const Profile q = builtin_quasioptimal(m);
    const double d = 239.0 * static_cast<double>(m * m) + 1.0;
    CHECK(height_polynomial(q, 0, 0.0) == doctest::Approx((d - 1.0) / d).epsilon(1e-15));
    for (double x = 0.0; x <= 2.0 * static_cast<double>(m); x += 0.25) {
      CHECK(height_polynomial(q, 0, x) == doctest::Approx((d - 1.0 - 6.0 * x * x) / d).epsilon(1e-14));
    }
  }

  const Profile e1 = builtin_elaborated(1);
  CHECK(height_polynomial(e1, 0, 2.0) == doctest::Approx(58.0 / 83.0).epsilon(1e-15));
  CHECK(height_polynomial(e1, 1, 2.0) == doctest::Approx(58.0 / 83.0).epsilon(1e-15));

  const Profile s = builtin_simple(4, 20);
  CHECK(std::abs(height_polynomial(s, 0, 20.0)) <= 1e-15);
  CHECK(height_polynomial(s, 0, 7.5) == doctest::Approx(1.0 - (1.0 + 4.0 * 56.25) / 1601.0).epsilon(1e-15));

  for (const Profile& p : {builtin_quasioptimal(3), builtin_elaborated(3), builtin_simple(2, 9)}) {
    const ParallelLayout layout = layout_from_profile(p);
    for (std::size_t l = 0; l < p.piece_count(); ++l) {
      for (std::int64_t j = std::max<std::int64_t>(1, p.knots[l]); j <= p.knots[l + 1]; ++j) {
        CHECK(std::abs(height_polynomial(p, l, static_cast<double>(j)) - layout.z(static_cast<std::size_t>(j - 1))) <= 1e-14);
        CHECK(piece_height(p, l).u(static_cast<double>(j)) == static_cast<double>(layout.numerators()[static_cast<std::size_t>(j - 1)]));
      }
    }
  }

  CHECK_CODE(height_polynomial(e1, 0, 2.5), OutOfPiece);
  CHECK_CODE(height_polynomial(e1, 2, 2.0), OutOfPiece);
}

TEST_CASE("height polynomial derivative is twice the population") {
  const Profile q = builtin_quasioptimal(2);
  for (std::size_t l = 0; l < q.piece_count(); ++l) {
    const PieceHeight ph = piece_height(q, l);
    for (double x = ph.t_lo + 0.1; x < ph.t_hi; x += 0.37) {
      const double h = 1e-4;
      CHECK((ph.u(x + h) - ph.u(x - h)) / (2.0 * h) == doctest::Approx(2.0 * ph.r(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sampled point sets") {
  const std::vector<std::int64_t> one{1};
  const PointSet tiny = sample(optimal_heights(one), 99);
  REQUIRE(tiny.points.size() == 3);
  CHECK(tiny.points[0] == Vec3{0.0, 0.0, 1.0});
  CHECK(tiny.points[2] == Vec3{0.0, 0.0, -1.0});
  CHECK(tiny.points[1][2] == 0.0);

  const ParallelLayout layout = layout_from_profile(builtin_quasioptimal(2));
  const PointSet set = sample(layout, 2024, "quasioptimal:m=2");
  REQUIRE(set.points.size() == 958);
  REQUIRE(set.phases.size() == layout.p());
  for (const Vec3& x : set.points) CHECK(std::abs(std::hypot(x[0], x[1], x[2]) - 1.0) <= 1e-12);
  for (double theta : set.phases) CHECK((theta >= 0.0 && theta < kTwoPi));

  for (std::size_t j = 0; j < layout.p(); ++j) {
    const std::size_t off = parallel_offset(layout, j);
    const auto r = static_cast<std::size_t>(layout.count(j));
    for (std::size_t i = 0; i < r; ++i) {
      const Vec3& x = set.points[off + i];
      CHECK(x[2] == layout.z(j));
      const Vec3& y = set.points[off + (i + 1) % r];
      double gap = std::atan2(y[1], y[0]) - std::atan2(x[1], x[0]);
      gap = std::fmod(gap + 2.0 * kTwoPi, kTwoPi);
      if (r > 1) CHECK(std::abs(gap - kTwoPi / static_cast<double>(r)) <= 1e-12);
    }
  }

  const PointSet again = sample(layout, 2024, "quasioptimal:m=2");
  CHECK(again.phases == set.phases);
  CHECK(again.points == set.points);
  const PointSet threaded = sample(layout, 2024, "quasioptimal:m=2", 4);
  CHECK(threaded.points == set.points);
  CHECK(sample(layout, 2025).phases != set.phases);
}

TEST_CASE("global rotations preserve pairwise distances") {
  const PointSet set = sample(layout_from_profile(builtin_elaborated(1)), 5);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  double q[4] = {g(rng), g(rng), g(rng), g(rng)};
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& v : q) v /= n;
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  const double R[3][3] = {{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                          {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                          {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
  std::vector<Vec3> rotated;
  for (const Vec3& p : set.points) {
    rotated.push_back({R[0][0] * p[0] + R[0][1] * p[1] + R[0][2] * p[2], R[1][0] * p[0] + R[1][1] * p[1] + R[1][2] * p[2],
                       R[2][0] * p[0] + R[2][1] * p[1] + R[2][2] * p[2]});
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rotated.size(); ++i) {
    for (std::size_t j = i + 1; j < rotated.size(); ++j) {
      worst = std::max(worst, std::abs(distance(rotated[i], rotated[j]) - distance(set.points[i], set.points[j])));
    }
  }
  CHECK(worst <= 1e-12);
}
