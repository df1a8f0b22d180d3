#include "cellscale/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cellscale {

double path_gain(double d, double alpha) {
  if (!(d > 0.0)) throw std::domain_error("path_gain: distance must be > 0");
  const double d2 = d * d;
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}

double link_rate(const LinkBudget& b) {
  if (b.signal_power <= 0.0) return 0.0;
  const double denom = b.interference_power + b.noise_power;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  constexpr double kInvLn2 = 1.4426950408889634;
  return b.duty * b.link_bandwidth *
         std::log1p(b.signal_power / denom) * kInvLn2;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw std::domain_error("hurwitz_zeta: need s > 1");
  if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: need a > 0");
  // Partial sum plus Euler-Maclaurin tail; with this X the first omitted
  // correction term is below 1e-13 for every s > 1.
  constexpr int kTerms = 4096;
  double sum = 0.0;
  for (int x = kTerms - 1; x >= 0; --x) sum += std::pow(x + a, -s);
  const double xa = kTerms + a;
  sum += std::pow(xa, 1.0 - s) / (s - 1.0);  // integral tail
  sum += 0.5 * std::pow(xa, -s);             // trapezoid correction
  sum += s * std::pow(xa, -s - 1.0) / 12.0;  // first Bernoulli term
  return sum;
}

double interference_psd(
    const Point2D& receiver,
    const std::vector<std::pair<Point2D, double>>& interferers, double W,
    double alpha, double n0) {
  if (!(W > 0.0)) throw std::domain_error("interference_psd: need W > 0");
  double power = 0.0;
  for (const auto& [pos, p] : interferers) {
    const double d = std::hypot(receiver.x - pos.x, receiver.y - pos.y);
    power += p * path_gain(d, alpha);  // throws on zero distance
  }
  return n0 + power / W;
}

double ring_interference_bound(double r_cell, double alpha) {
  if (!(alpha > 2.0))
    throw std::domain_error(
        "ring_interference_bound: diverges unless alpha > 2");
  return 12.0 * std::pow(r_cell, -alpha) * std::pow(1.5, alpha - 1.0) *
         hurwitz_zeta(alpha - 1.0, 1.0 / 3.0);
}

double stripping_bound(std::uint64_t n, double nu, double alpha) {
  if (n < 3) throw std::domain_error("stripping_bound: need n >= 3");
  const double nd = static_cast<double>(n);
  return std::numbers::e * (std::log(nd) + 1.0) *
         std::pow(nd, (1.0 - nu) * alpha / 2.0);
}

}  // namespace cellscale
