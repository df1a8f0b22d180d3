#include "cellscale/theory.hpp"

#include <algorithm>
#include <cmath>

namespace cellscale {

namespace {

inline double pos_part(double x) { return std::max(x, 0.0); }

// min with the tie going to the first (bandwidth-limited) arm.
inline double min_branch(double psi_arm, double cap_arm, bool& took_psi) {
  took_psi = psi_arm <= cap_arm;
  return took_psi ? psi_arm : cap_arm;
}

}  // namespace

const char* to_string(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::BandwidthLimitedI: return "bandwidth-limited-I";
    case RegimeLabel::BandwidthLimitedII: return "bandwidth-limited-II";
    case RegimeLabel::PowerLimited: return "power-limited";
  }
  return "?";
}

bool rn_switch_decision(Direction dir, const ScalingExponents& e) {
  validate(e);
  const double half_alpha = e.alpha / 2.0;
  if (dir == Direction::DL)
    return e.rho >= e.beta + e.gamma + (e.beta - e.nu) * half_alpha - e.psi;
  const double c1 = pos_part(e.beta + e.gamma - e.rho);
  const double lhs = std::min(e.psi - c1, (e.rho - e.nu) * half_alpha);
  const double rhs =
      std::min(e.psi, (e.beta - e.nu) * half_alpha + 1.0 - e.beta);
  return lhs >= rhs;
}

ExponentResult theoretical_exponent(Protocol proto, Direction dir,
                                    const ScalingExponents& e) {
  validate(e);
  const double half_alpha = e.alpha / 2.0;
  const double bg = e.beta + e.gamma;

  ExponentResult res;
  res.protocol = proto;
  res.direction = dir;

  bool took_psi = true;
  switch (proto) {
    case Protocol::UB:
    case Protocol::CAPACITY: {
      const double cap = (1.0 - e.nu) * half_alpha;
      if (dir == Direction::DL)
        res.exponent = bg - 1.0 + min_branch(e.psi, cap, took_psi);
      else
        res.exponent = min_branch(e.psi, cap, took_psi);
      res.active_branch = took_psi ? "psi" : "cap";
      break;
    }
    case Protocol::IMH: {
      const double cap = (1.0 - e.nu) * half_alpha;
      res.exponent = bg - 1.0 + min_branch(e.psi, cap, took_psi);
      res.active_branch = took_psi ? "psi" : "cap";
      break;
    }
    case Protocol::ISH: {
      const double cap = (dir == Direction::DL)
                             ? (e.beta - e.nu) * half_alpha
                             : (e.beta - e.nu) * half_alpha + 1.0 - e.beta;
      res.exponent = bg - 1.0 + min_branch(e.psi, cap, took_psi);
      res.active_branch = took_psi ? "psi" : "cap";
      break;
    }
    case Protocol::IRH: {
      res.rn_used = rn_switch_decision(dir, e);
      if (!res.rn_used) {
        ExponentResult ish = theoretical_exponent(Protocol::ISH, dir, e);
        res.exponent = ish.exponent;
        res.active_branch = "ish+" + ish.active_branch;
        break;
      }
      const double cap =
          (dir == Direction::DL)
              ? (e.rho - e.nu) * half_alpha
              : (e.rho - e.nu) * half_alpha + pos_part(bg - e.rho);
      res.exponent =
          std::min(bg, e.rho) - 1.0 + min_branch(e.psi, cap, took_psi);
      res.active_branch = std::string("rn+") + (took_psi ? "psi" : "cap");
      break;
    }
  }
  return res;
}

RegimeLabel classify_regime(const ScalingExponents& e) {
  validate(e);
  const double half_alpha = e.alpha / 2.0;
  if (e.psi < (e.beta - e.nu) * half_alpha)
    return RegimeLabel::BandwidthLimitedI;
  if (e.psi <= (1.0 - e.nu) * half_alpha)
    return RegimeLabel::BandwidthLimitedII;
  return RegimeLabel::PowerLimited;
}

CharacteristicRadii characteristic_radii(const ScalingExponents& e,
                                         std::uint64_t n, double W) {
  validate(e);
  (void)n;
  CharacteristicRadii r;
  r.r_cell_exponent = (e.nu - e.beta) / 2.0;
  r.r_s_exponent = (e.nu - 1.0) / 2.0;
  r.r_v = std::pow(W, -1.0 / e.alpha);
  return r;
}

double exponent_vs_psi(Protocol proto, Direction dir,
                       const ScalingExponents& e, double psi) {
  ScalingExponents shifted = e;
  shifted.psi = psi;
  return theoretical_exponent(proto, dir, shifted).exponent;
}

std::vector<double> breakpoints(Protocol proto, Direction dir,
                                const ScalingExponents& e) {
  validate(e);
  const double half_alpha = e.alpha / 2.0;
  const double bg = e.beta + e.gamma;

  std::vector<double> cand;
  switch (proto) {
    case Protocol::UB:
    case Protocol::CAPACITY:
    case Protocol::IMH:
      cand.push_back((1.0 - e.nu) * half_alpha);
      break;
    case Protocol::ISH:
      cand.push_back(dir == Direction::DL
                         ? (e.beta - e.nu) * half_alpha
                         : (e.beta - e.nu) * half_alpha + 1.0 - e.beta);
      break;
    case Protocol::IRH: {
      const double ish_knee = (dir == Direction::DL)
                                  ? (e.beta - e.nu) * half_alpha
                                  : (e.beta - e.nu) * half_alpha + 1.0 - e.beta;
      const double c1 = pos_part(bg - e.rho);
      const double c2 = (e.rho - e.nu) * half_alpha;
      cand.push_back(ish_knee);
      cand.push_back(c1 + c2);  // relay-arm knee
      cand.push_back(c2);
      cand.push_back(c1 + ish_knee);
      if (dir == Direction::DL)
        cand.push_back(bg + (e.beta - e.nu) * half_alpha - e.rho);
      break;
    }
  }

  std::sort(cand.begin(), cand.end());
  std::vector<double> out;
  constexpr double eps = 1e-6;
  for (const double c : cand) {
    if (c <= 1e-12) continue;
    if (!out.empty() && std::abs(out.back() - c) < 1e-9) continue;
    const double fl = exponent_vs_psi(proto, dir, e, std::max(0.0, c - eps));
    const double f0 = exponent_vs_psi(proto, dir, e, c);
    const double fr = exponent_vs_psi(proto, dir, e, c + eps);
    const double slope_l = (f0 - fl) / eps;
    const double slope_r = (fr - f0) / eps;
    if (std::abs(slope_l - slope_r) > 1e-3) out.push_back(c);
  }
  return out;
}

}  // namespace cellscale
