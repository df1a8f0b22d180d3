#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellscale/params.hpp"
#include "doctest.h"

using namespace cellscale;

namespace {

// Runs f and returns the exception message ("" when nothing was thrown).
template <typename F>
std::string thrown_message(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("round_half_up rounds .5 upward") {
  CHECK(round_half_up(0.0) == 0);
  CHECK(round_half_up(0.49999999) == 0);
  CHECK(round_half_up(0.5) == 1);
  CHECK(round_half_up(1.5) == 2);
  CHECK(round_half_up(2.5) == 3);
  CHECK(round_half_up(2.4999999) == 2);
  CHECK(round_half_up(7.0) == 7);
}

TEST_CASE("instantiate reproduces the documented sizes") {
  ModelConstants c;  // all 1.0

  SUBCASE("n=4096 with growing bandwidth and area") {
    ScalingExponents e;
    e.psi = 0.5;
    e.nu = 1.0;
    e.beta = 0.5;
    e.gamma = 0.25;
    const InstanceParams p = instantiate(4096, e, c);
    CHECK(p.W == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(p.A == doctest::Approx(4096.0).epsilon(1e-12));
    CHECK(p.m == 64);
    CHECK(p.ell == 8);
    CHECK(p.n / p.m >= p.ell);
  }

  SUBCASE("n=1 collapses every quantity to 1") {
    ScalingExponents e;
    e.psi = 2.0;
    e.gamma = 0.5;
    e.rho = 0.9;
    const InstanceParams p = instantiate(1, e, c);
    CHECK(p.W == doctest::Approx(1.0));
    CHECK(p.A == doctest::Approx(1.0));
    CHECK(p.m == 1);
    CHECK(p.ell == 1);
    CHECK(p.k == 1);
  }

  SUBCASE("stream count exceeding the per-cell load is rejected") {
    // beta=1 with gamma>0 is already rejected by validate (gamma > 1-beta),
    // so the load check is exercised with beta=gamma=0.5: n=3 gives m=2,
    // ell=2, floor(n/m)=1.
    ScalingExponents e;
    e.beta = 0.5;
    e.gamma = 0.5;
    const std::string msg =
        thrown_message([&] { (void)instantiate(3, e, c); });
    CHECK(msg.find("n too small") != std::string::npos);
    CHECK_THROWS_AS((void)instantiate(3, e, c), std::invalid_argument);
    // n=4 with one BS per node leaves floor(n/m)=1 < ell=2.
    ScalingExponents e2;
    e2.beta = 1.0;
    e2.gamma = 0.0;
    e2.rho = 1.0;
    ModelConstants c2;
    c2.l0 = 2.0;
    CHECK_THROWS_AS((void)instantiate(4, e2, c2), std::invalid_argument);
  }

  SUBCASE("defaults at n=4096") {
    ScalingExponents e;
    const InstanceParams p = instantiate(4096, e, c);
    CHECK(p.W == doctest::Approx(1.0));
    CHECK(p.A == doctest::Approx(1.0));
    CHECK(p.m == 64);
    CHECK(p.ell == 8);
    CHECK(p.k == 512);
  }

  SUBCASE("n=0 is rejected") {
    ScalingExponents e;
    CHECK_THROWS_AS((void)instantiate(0, e, c), std::invalid_argument);
  }
}

TEST_CASE("instantiated sizes are non-decreasing in n") {
  ScalingExponents e;  // defaults
  ModelConstants c;
  InstanceParams prev = instantiate(1, e, c);
  for (std::uint64_t n : {2ULL, 3ULL, 5ULL, 8ULL, 16ULL, 37ULL, 64ULL, 128ULL,
                          1000ULL, 4096ULL, 65536ULL, 1048576ULL}) {
    const InstanceParams p = instantiate(n, e, c);
    CHECK(p.W >= prev.W);
    CHECK(p.A >= prev.A);
    CHECK(p.m >= prev.m);
    CHECK(p.ell >= prev.ell);
    CHECK(p.k >= prev.k);
    prev = p;
  }
}

TEST_CASE("configured exponents are recoverable from instantiated sizes") {
  ScalingExponents e;
  e.psi = 0.5;
  e.nu = 0.3;
  ModelConstants c;
  for (std::uint64_t n : {1048576ULL, 1000000ULL}) {
    const InstanceParams p = instantiate(n, e, c);
    const double ln_n = std::log(static_cast<double>(n));
    CHECK(std::log(p.W) / ln_n == doctest::Approx(e.psi).epsilon(1e-9));
    CHECK(std::log(p.A) / ln_n == doctest::Approx(e.nu).epsilon(1e-9));
    CHECK(std::log(static_cast<double>(p.m)) / ln_n ==
          doctest::Approx(e.beta).epsilon(0.01));
    CHECK(std::log(static_cast<double>(p.ell)) / ln_n ==
          doctest::Approx(e.gamma).epsilon(0.01));
    CHECK(std::log(static_cast<double>(p.k)) / ln_n ==
          doctest::Approx(e.rho).epsilon(0.01));
  }
}

TEST_CASE("exponent validation names the offending field") {
  auto with = [](auto mutate) {
    ScalingExponents e;
    mutate(e);
    return thrown_message([&] { validate(e); });
  };
  CHECK(with([](ScalingExponents& e) { e.alpha = 2.0; }).find("alpha") !=
        std::string::npos);
  CHECK(with([](ScalingExponents& e) { e.psi = -0.1; }).find("psi") !=
        std::string::npos);
  CHECK(with([](ScalingExponents& e) { e.nu = 1.2; }).find("nu") !=
        std::string::npos);
  CHECK(with([](ScalingExponents& e) { e.beta = -0.01; }).find("beta") !=
        std::string::npos);
  CHECK(with([](ScalingExponents& e) { e.gamma = 0.6; }).find("gamma") !=
        std::string::npos);  // default beta 0.5 makes 0.6 > 1-beta
  CHECK(with([](ScalingExponents& e) { e.rho = 0.4; }).find("rho") !=
        std::string::npos);  // below beta
  ScalingExponents ok;
  CHECK_NOTHROW(validate(ok));
  ok.gamma = 0.5;  // exactly 1-beta is allowed
  CHECK_NOTHROW(validate(ok));
  ok.rho = 0.5;  // exactly beta is allowed
  CHECK_NOTHROW(validate(ok));
}

TEST_CASE("constants validation requires positive values") {
  auto with = [](auto mutate) {
    ModelConstants c;
    mutate(c);
    return thrown_message([&] { validate(c); });
  };
  CHECK(with([](ModelConstants& c) { c.W0 = 0.0; }).find("W0") !=
        std::string::npos);
  CHECK(with([](ModelConstants& c) { c.A0 = -1.0; }).find("A0") !=
        std::string::npos);
  CHECK(with([](ModelConstants& c) { c.N0 = 0.0; }).find("N0") !=
        std::string::npos);
  CHECK(with([](ModelConstants& c) { c.P = 0.0; }).find("P") !=
        std::string::npos);
  ModelConstants ok;
  CHECK_NOTHROW(validate(ok));
}

TEST_CASE("enum spellings round-trip through parse and to_string") {
  for (Protocol p : {Protocol::UB, Protocol::ISH, Protocol::IMH, Protocol::IRH,
                     Protocol::CAPACITY})
    CHECK(parse_protocol(to_string(p)) == p);
  for (Direction d : {Direction::DL, Direction::UL})
    CHECK(parse_direction(to_string(d)) == d);
  for (LoadMode m : {LoadMode::paper_faithful, LoadMode::exact_load})
    CHECK(parse_load_mode(to_string(m)) == m);
  CHECK_THROWS_AS((void)parse_protocol("both"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_direction("down"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_load_mode("fast"), std::invalid_argument);
}
