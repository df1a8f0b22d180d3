#pragma once

#include <cstdint>
#include <string>

namespace cellscale {

// Exponents driving how system resources grow with the node count n.
//   bandwidth  W = W0 * n^psi
//   area       A = A0 * n^nu
//   base stations m ~ n^beta, streams per station l ~ n^gamma,
//   relay stations k ~ n^rho, path loss d^-alpha.
struct ScalingExponents {
  double alpha = 4.0;
  double psi = 0.0;
  double nu = 0.0;
  double beta = 0.5;
  double gamma = 0.25;
  double rho = 0.75;
};

// Dimensionful prefactors. Unit values reproduce the normalized model.
struct ModelConstants {
  double W0 = 1.0;    // bandwidth at n = 1
  double A0 = 1.0;    // area at n = 1
  double m0 = 1.0;    // base-station count prefactor
  double l0 = 1.0;    // per-station stream count prefactor
  double k0 = 1.0;    // relay-station count prefactor
  double P = 1.0;     // per-node transmit power
  double P_BS = 1.0;  // per-base-station transmit power
  double P_RN = 1.0;  // per-relay-station transmit power
  double N0 = 1.0;    // noise power spectral density
};

// Concrete system sizes for one network instance.
struct InstanceParams {
  std::uint64_t n = 0;    // nodes
  double W = 0.0;         // total bandwidth
  double A = 0.0;         // deployment area
  std::uint64_t m = 0;    // base stations
  std::uint64_t ell = 0;  // effective array dimensions per base station
  std::uint64_t k = 0;    // relay stations (>= m)
};

enum class Protocol { UB, ISH, IMH, IRH, CAPACITY };
enum class Direction { DL, UL };
enum class LoadMode { paper_faithful, exact_load };

const char* to_string(Protocol p);
const char* to_string(Direction d);
const char* to_string(LoadMode m);
// Parse the CLI spellings ("ub", "ish", ..., "dl", "paper", "exact").
Protocol parse_protocol(const std::string& s);
Direction parse_direction(const std::string& s);
LoadMode parse_load_mode(const std::string& s);

// Round-half-up used for every count derived from a power law, so that
// instance sizes are platform-independent.
std::uint64_t round_half_up(double x);

// Throws std::invalid_argument naming the offending field.
void validate(const ScalingExponents& e);
void validate(const ModelConstants& c);

// Materializes counts/area/bandwidth for a given n. Throws if the
// resulting instance is infeasible (needs l <= floor(n/m)).
InstanceParams instantiate(std::uint64_t n, const ScalingExponents& e,
                           const ModelConstants& c);

}  // namespace cellscale
