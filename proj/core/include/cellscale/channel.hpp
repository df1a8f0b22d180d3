#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cellscale/geometry.hpp"

namespace cellscale {

// One link's power budget.  noise_power is already integrated over the
// link bandwidth; duty carries time-division shares (1/7 slots, head-link
// multiplexing shares, ...).
struct LinkBudget {
  double signal_power = 0.0;        // received, after array gains
  double interference_power = 0.0;  // total in-band
  double noise_power = 0.0;         // N0 * link bandwidth
  double link_bandwidth = 0.0;      // Hz
  double duty = 1.0;                // (0, 1]
};

// Power gain d^-alpha.  d <= 0 violates the far-field model.
double path_gain(double d, double alpha);

// duty * bandwidth * log2(1 + S / (I + N)); 0 when the signal is 0.
double link_rate(const LinkBudget& b);

// sum_{x >= 0} (x + a)^-s for s > 1, a > 0; absolute error well below 1e-10.
double hurwitz_zeta(double s, double a);

// Noise-plus-interference PSD at a receiver: n0 + sum_j P_j d_j^-alpha / W.
double interference_psd(const Point2D& receiver,
                        const std::vector<std::pair<Point2D, double>>& interferers,
                        double W, double alpha, double n0);

// Closed-form bound on same-schedule interference from all concentric hex
// rings, per unit interferer power: 12 r^-alpha (3/2)^(alpha-1) zeta(alpha-1, 1/3).
double ring_interference_bound(double r_cell, double alpha);

// Upper bound on sum_r d_r^-alpha over n uniform nodes (concentric-ring
// stripping): e (ln n + 1) n^((1-nu) alpha / 2).
double stripping_bound(std::uint64_t n, double nu, double alpha);

}  // namespace cellscale
