#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cellscale/channel.hpp"
#include "cellscale/geometry.hpp"
#include "cellscale/rng.hpp"
#include "doctest.h"

using namespace cellscale;

namespace {

// Independent reference for sum_{x>=0} (x+a)^-s: one million explicit terms
// plus the integral tail bound (X+a)^{1-s}/(s-1).  The neglected remainder
// is below (X+a)^{-s}, i.e. ~1e-12 for s=2, so the reference is good to
// ~1e-11 where it is used.
double zeta_reference(double s, double a) {
  const int terms = 1000000;
  double sum = 0.0;
  for (int x = terms - 1; x >= 0; --x) sum += std::pow(x + a, -s);
  sum += std::pow(terms + a, 1.0 - s) / (s - 1.0);
  return sum;
}

// Worst-case same-schedule interference accumulated ring by ring: ring j
// holds 6j transmitters, each at least (3/2)(j - 2/3) r away.
double ring_sum_reference(double r, double alpha, int rings) {
  double sum = 0.0;
  for (int j = 1; j <= rings; ++j)
    sum += 6.0 * j * std::pow(1.5 * (j - 2.0 / 3.0) * r, -alpha);
  return sum;
}

}  // namespace

TEST_CASE("path_gain is the inverse power law") {
  CHECK(path_gain(1.0, 2.5) == doctest::Approx(1.0));
  CHECK(path_gain(1.0, 4.0) == doctest::Approx(1.0));
  CHECK(path_gain(2.0, 4.0) == doctest::Approx(0.0625));
  CHECK(path_gain(3.0, 3.0) == doctest::Approx(1.0 / 27.0));
  CHECK_THROWS_AS((void)path_gain(0.0, 4.0), std::domain_error);
  CHECK_THROWS_AS((void)path_gain(-1.0, 4.0), std::domain_error);
}

TEST_CASE("link_rate implements duty * W * log2(1 + SINR)") {
  LinkBudget b;
  b.signal_power = 1.0;
  b.interference_power = 0.0;
  b.noise_power = 1.0;
  b.link_bandwidth = 1.0;
  b.duty = 1.0;
  CHECK(link_rate(b) == doctest::Approx(1.0));  // log2(2)

  b.signal_power = 0.0;
  CHECK(link_rate(b) == 0.0);

  b.signal_power = 3.0;
  b.link_bandwidth = 7.0;
  b.duty = 1.0 / 7.0;
  CHECK(link_rate(b) == doctest::Approx(2.0));  // (7/7) * log2(4)
}

TEST_CASE("link_rate is monotone in signal and interference") {
  LinkBudget b;
  b.signal_power = 2.0;
  b.interference_power = 1.0;
  b.noise_power = 0.5;
  b.link_bandwidth = 3.0;
  const double base = link_rate(b);
  LinkBudget stronger = b;
  stronger.signal_power = 2.5;
  CHECK(link_rate(stronger) > base);
  LinkBudget noisier = b;
  noisier.interference_power = 1.5;
  CHECK(link_rate(noisier) < base);
  // Longer distance -> smaller gain -> smaller rate, via path_gain.
  LinkBudget nearer = b;
  nearer.signal_power = 4.0 * path_gain(1.0, 4.0);
  LinkBudget farther = b;
  farther.signal_power = 4.0 * path_gain(1.5, 4.0);
  CHECK(link_rate(nearer) > link_rate(farther));
}

TEST_CASE("hurwitz_zeta matches classical values and the partial-sum oracle") {
  CHECK(std::abs(hurwitz_zeta(2.0, 1.0) -
                 std::numbers::pi * std::numbers::pi / 6.0) < 1e-9);
  CHECK(std::abs(hurwitz_zeta(3.0, 1.0) - 1.2020569032) < 1e-9);

  // Frozen via the reference at s=2, a=1/3 (the ring-bound argument).
  const double ref = zeta_reference(2.0, 1.0 / 3.0);
  CHECK(ref == doctest::Approx(10.1).epsilon(0.01));
  CHECK(std::abs(hurwitz_zeta(2.0, 1.0 / 3.0) - ref) < 1e-10);

  for (double s : {1.5, 2.0, 2.5, 3.0, 4.0})
    for (double a : {1.0 / 3.0, 0.5, 1.0, 2.7})
      CHECK(std::abs(hurwitz_zeta(s, a) - zeta_reference(s, a)) < 1e-9);

  CHECK_THROWS_AS((void)hurwitz_zeta(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)hurwitz_zeta(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)hurwitz_zeta(2.0, 0.0), std::domain_error);
}

TEST_CASE("hurwitz_zeta satisfies the shift recurrence") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const double s = 1.1 + 3.0 * uniform01(rng);
    const double a = 0.1 + 2.0 * uniform01(rng);
    const double lhs = hurwitz_zeta(s, a);
    const double rhs = std::pow(a, -s) + hurwitz_zeta(s, a + 1.0);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, lhs));
    CHECK(hurwitz_zeta(s, a) > hurwitz_zeta(s, a + 0.5));  // decreasing in a
  }
}

TEST_CASE("interference_psd adds powers over the bandwidth") {
  const Point2D rx{0.0, 0.0};
  const double n0 = 0.25;
  CHECK(interference_psd(rx, {}, 2.0, 4.0, n0) == doctest::Approx(n0));

  // One interferer with P=16 at distance 2, alpha=4, W=1: excess 16/16 = 1.
  std::vector<std::pair<Point2D, double>> one = {{{2.0, 0.0}, 16.0}};
  CHECK(interference_psd(rx, one, 1.0, 4.0, 0.0) == doctest::Approx(1.0));

  std::vector<std::pair<Point2D, double>> two = {{{0.0, 3.0}, 5.0},
                                                 {{3.0, 0.0}, 5.0}};
  const double single =
      interference_psd(rx, {{{0.0, 3.0}, 5.0}}, 2.0, 3.0, n0) - n0;
  CHECK(interference_psd(rx, two, 2.0, 3.0, n0) ==
        doctest::Approx(n0 + 2.0 * single));
  CHECK(interference_psd(rx, two, 2.0, 3.0, n0) >= n0);

  CHECK_THROWS_AS(
      (void)interference_psd(rx, {{{0.0, 0.0}, 1.0}}, 1.0, 4.0, 0.0),
      std::domain_error);
  CHECK_THROWS_AS((void)interference_psd(rx, one, 0.0, 4.0, 0.0),
                  std::domain_error);
}

TEST_CASE("ring interference bound: closed form, homogeneity, dominance") {
  // alpha=3, r=1 reduces to 27 * zeta(2, 1/3).
  CHECK(ring_interference_bound(1.0, 3.0) ==
        doctest::Approx(27.0 * hurwitz_zeta(2.0, 1.0 / 3.0)).epsilon(1e-12));

  for (double alpha : {2.5, 3.0, 4.0}) {
    CHECK(ring_interference_bound(2.0, alpha) ==
          doctest::Approx(ring_interference_bound(1.0, alpha) *
                          std::pow(2.0, -alpha)));
    for (double r : {0.5, 1.0, 3.0})
      CHECK(ring_sum_reference(r, alpha, 30) <=
            ring_interference_bound(r, alpha));
  }
  CHECK_THROWS_AS((void)ring_interference_bound(1.0, 2.0), std::domain_error);
}

TEST_CASE("ring bound dominates cross-cell BS interference on real layouts") {
  // Every same-subchannel interfering BS is at least one ring pitch away
  // from any point of the receiver's cell, so the per-unit-power worst-case
  // ring sum must dominate the exact sum over the actual BS lattice.
  std::mt19937_64 rng(11);
  for (std::uint64_t m : {9ULL, 25ULL, 64ULL}) {
    const HexLayout layout = hex_layout(m, 1.0, false);
    for (double alpha : {2.5, 3.0, 4.0}) {
      const double bound = ring_interference_bound(layout.r_cell, alpha);
      for (int trial = 0; trial < 20; ++trial) {
        const std::size_t t = rng() % m;
        // Receiver anywhere in cell t (rejection-sample near the BS).
        Point2D p;
        do {
          p = {layout.centers[t].x +
                   2.0 * layout.r_cell * (uniform01(rng) - 0.5),
               layout.centers[t].y +
                   2.0 * layout.r_cell * (uniform01(rng) - 0.5)};
        } while (layout.nearest_center(p) != t);
        double exact = 0.0;
        for (std::size_t o = 0; o < m; ++o)
          if (o != t)
            exact += path_gain(layout.distance(p, layout.centers[o]), alpha);
        CHECK(exact <= bound);
      }
    }
  }
}

TEST_CASE("stripping bound evaluates its closed form") {
  const double e_const = std::numbers::e;
  CHECK(stripping_bound(1024, 0.0, 3.0) ==
        doctest::Approx(e_const * (std::log(1024.0) + 1.0) *
                        std::pow(1024.0, 1.5)));
  CHECK(stripping_bound(1024, 0.0, 3.0) == doctest::Approx(7.065e5).epsilon(1e-3));
  CHECK(stripping_bound(5000, 1.0, 3.5) ==
        doctest::Approx(e_const * (std::log(5000.0) + 1.0)));
  CHECK_THROWS_AS((void)stripping_bound(2, 0.0, 3.0), std::domain_error);
}

TEST_CASE("stripping bound holds for centered-BS gain sums (smoke)") {
  // Full 500-seed version lives in the acceptance gate; this is a quick
  // regression at 100 seeds (expected violation rate ~1e-4 per seed).
  ScalingExponents e;
  e.alpha = 3.0;
  e.beta = 0.0;
  e.gamma = 0.0;
  e.rho = 0.0;
  ModelConstants c;
  int ok = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    const NetworkRealization real = build_realization(4096, e, c, 1000 + s);
    double sum = 0.0;
    for (const Point2D& node : real.nodes)
      sum += path_gain(real.link_distance(real.layout.centers[0], node), 3.0);
    if (sum <= stripping_bound(4096, 0.0, 3.0)) ++ok;
  }
  CHECK(ok >= seeds - 2);
}
