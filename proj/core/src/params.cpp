#include "cellscale/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cellscale {

std::uint64_t round_half_up(double x) {
  return static_cast<std::uint64_t>(std::floor(x + 0.5));
}

void validate(const ScalingExponents& e) {
  if (!(e.alpha > 2.0))
    throw std::invalid_argument("alpha must be > 2, got " +
                                std::to_string(e.alpha));
  if (!(e.psi >= 0.0))
    throw std::invalid_argument("psi must be >= 0, got " +
                                std::to_string(e.psi));
  if (!(e.nu >= 0.0 && e.nu <= 1.0))
    throw std::invalid_argument("nu must be in [0,1], got " +
                                std::to_string(e.nu));
  if (!(e.beta >= 0.0 && e.beta <= 1.0))
    throw std::invalid_argument("beta must be in [0,1], got " +
                                std::to_string(e.beta));
  if (!(e.gamma >= 0.0 && e.gamma <= 1.0 - e.beta))
    throw std::invalid_argument("gamma must be in [0,1-beta], got " +
                                std::to_string(e.gamma));
  if (!(e.rho >= e.beta && e.rho <= 1.0))
    throw std::invalid_argument("rho must be in [beta,1], got " +
                                std::to_string(e.rho));
}

void validate(const ModelConstants& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string(name) + " must be > 0, got " +
                                  std::to_string(v));
  };
  positive(c.W0, "W0");
  positive(c.A0, "A0");
  positive(c.m0, "m0");
  positive(c.l0, "l0");
  positive(c.k0, "k0");
  positive(c.P, "P");
  positive(c.P_BS, "P_BS");
  positive(c.P_RN, "P_RN");
  positive(c.N0, "N0");
}

InstanceParams instantiate(std::uint64_t n, const ScalingExponents& e,
                           const ModelConstants& c) {
  validate(e);
  validate(c);
  if (n == 0) throw std::invalid_argument("n must be >= 1");

  const double nd = static_cast<double>(n);
  InstanceParams p;
  p.n = n;
  p.W = c.W0 * std::pow(nd, e.psi);
  p.A = c.A0 * std::pow(nd, e.nu);
  p.m = std::max<std::uint64_t>(1, round_half_up(c.m0 * std::pow(nd, e.beta)));
  p.ell =
      std::max<std::uint64_t>(1, round_half_up(c.l0 * std::pow(nd, e.gamma)));
  p.k = std::max<std::uint64_t>(
      p.m, round_half_up(c.k0 * std::pow(nd, e.rho)));

  if (p.ell > n / p.m)
    throw std::invalid_argument(
        "n too small: need ell <= floor(n/m) but ell=" + std::to_string(p.ell) +
        ", floor(n/m)=" + std::to_string(n / p.m));
  return p;
}

const char* to_string(Protocol p) {
  switch (p) {
    case Protocol::UB: return "ub";
    case Protocol::ISH: return "ish";
    case Protocol::IMH: return "imh";
    case Protocol::IRH: return "irh";
    case Protocol::CAPACITY: return "capacity";
  }
  return "?";
}

const char* to_string(Direction d) {
  return d == Direction::DL ? "dl" : "ul";
}

const char* to_string(LoadMode m) {
  return m == LoadMode::paper_faithful ? "paper" : "exact";
}

Protocol parse_protocol(const std::string& s) {
  if (s == "ub") return Protocol::UB;
  if (s == "ish") return Protocol::ISH;
  if (s == "imh") return Protocol::IMH;
  if (s == "irh") return Protocol::IRH;
  if (s == "capacity") return Protocol::CAPACITY;
  throw std::invalid_argument("unknown protocol: " + s);
}

Direction parse_direction(const std::string& s) {
  if (s == "dl") return Direction::DL;
  if (s == "ul") return Direction::UL;
  throw std::invalid_argument("unknown direction: " + s);
}

LoadMode parse_load_mode(const std::string& s) {
  if (s == "paper") return LoadMode::paper_faithful;
  if (s == "exact") return LoadMode::exact_load;
  throw std::invalid_argument("unknown load mode: " + s);
}

}  // namespace cellscale
