#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellscale/params.hpp"

namespace cellscale {

enum class RegimeLabel { BandwidthLimitedI, BandwidthLimitedII, PowerLimited };

const char* to_string(RegimeLabel r);

// Closed-form per-node rate scaling exponent for one protocol/direction.
// active_branch records which arm of each min()/switch was taken
// ("psi" = bandwidth-limited arm, "cap" = the saturated arm; IRH results
// are prefixed with "rn+" or "ish+" according to the switching decision).
struct ExponentResult {
  Protocol protocol = Protocol::CAPACITY;
  Direction direction = Direction::DL;
  double exponent = 0.0;
  std::string active_branch;
  bool rn_used = false;  // meaningful for IRH only
};

ExponentResult theoretical_exponent(Protocol proto, Direction dir,
                                    const ScalingExponents& e);

// Whether the relay-assisted protocol actually exploits its relay stations
// (ties resolve to using them).
bool rn_switch_decision(Direction dir, const ScalingExponents& e);

// Bandwidth-limited type I / type II / power-limited, with boundary ties on
// the bandwidth-limited side.
RegimeLabel classify_regime(const ScalingExponents& e);

// Scaling exponents of the cell and subcell radii, and the distance at
// which a bandwidth-W link stops being power-limited.
struct CharacteristicRadii {
  double r_cell_exponent = 0.0;  // (nu - beta) / 2
  double r_s_exponent = 0.0;     // (nu - 1) / 2
  double r_v = 0.0;              // W^(-1/alpha)
};

CharacteristicRadii characteristic_radii(const ScalingExponents& e,
                                         std::uint64_t n, double W);

// theoretical_exponent with psi overridden (the curves of the exponent
// diagrams are functions of psi with everything else fixed).
double exponent_vs_psi(Protocol proto, Direction dir,
                       const ScalingExponents& e, double psi);

// psi values (> 0) where the exponent-vs-psi curve changes slope or jumps.
std::vector<double> breakpoints(Protocol proto, Direction dir,
                                const ScalingExponents& e);

}  // namespace cellscale
