#include "crvn/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace crvn;

namespace {

Channel make_channel(double rho, double snr_mean_db = 10.0, double bw = 1e6) {
  Channel c;
  c.id = "ch";
  c.bandwidth_hz = bw;
  c.pu_arrival_rate = rho;
  c.pu_service_rate = 1.0;
  c.snr_mean_db = snr_mean_db;
  return c;
}

}  // namespace

TEST_CASE("utilization is the arrival/service ratio") {
  Channel c = make_channel(0.0);
  c.pu_arrival_rate = 0.4;
  c.pu_service_rate = 0.8;
  CHECK(utilization(c) == doctest::Approx(0.5).epsilon(1e-15));
  c.pu_arrival_rate = 0.0;
  CHECK(utilization(c) == 0.0);
  c.pu_arrival_rate = 0.6;
  c.pu_service_rate = 1.0;
  CHECK(utilization(c) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("shannon capacity in decibel scale") {
  CHECK(shannon_capacity(1e6, 0.0) == doctest::Approx(1e6).epsilon(1e-12));
  CHECK(shannon_capacity(1e6, 10.0) ==
        doctest::Approx(1e6 * std::log2(11.0)).epsilon(1e-12));
  // vanishing snr -> vanishing rate
  CHECK(shannon_capacity(1e6, -100.0) < 200.0);
  CHECK(shannon_capacity(1e6, -100.0) > 0.0);
  // monotone in snr
  double prev = 0.0;
  for (double db = -20.0; db <= 30.0; db += 1.0) {
    const double r = shannon_capacity(1e6, db);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("expected spectral efficiency under exponential snr fading") {
  // reference values computed with an independent adaptive integrator
  const struct {
    double mean_db;
    double expected;
  } cases[] = {
      {0.001, 1.000166115527},
      {1.0, 1.184756757870},
      {5.0, 2.181972014620},
      {10.0, 3.669231397830},
      {20.0, 6.851621366209},
  };
  for (const auto& c : cases)
    CHECK(expected_spectral_efficiency(c.mean_db) ==
          doctest::Approx(c.expected).epsilon(1e-7));
}

TEST_CASE("expected efficiency grows with the mean snr") {
  CHECK(expected_spectral_efficiency(5.0) < expected_spectral_efficiency(10.0));
  CHECK(expected_spectral_efficiency(10.0) < expected_spectral_efficiency(20.0));
}

TEST_CASE("mean capacity scales exactly with bandwidth") {
  const Channel one = make_channel(0.3, 10.0, 1e6);
  const Channel two = make_channel(0.3, 10.0, 2e6);
  CHECK(mean_capacity(two) == 2.0 * mean_capacity(one));
  CHECK(mean_capacity(one) ==
        doctest::Approx(1e6 * expected_spectral_efficiency(10.0)).epsilon(1e-14));
}

TEST_CASE("profile ties the pieces together") {
  const Channel c = make_channel(0.25, 10.0, 1e6);
  const ChannelProfile p = profile_channel(c);
  CHECK(p.channel_id == "ch");
  CHECK(p.rho == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.p_off == 1.0 - p.rho);
  CHECK(p.effective_rate_bps == p.p_off * p.mean_capacity_bps);
  CHECK(p.mean_capacity_bps > 0.0);
}

TEST_CASE("profiles preserve order and reject unstable channels") {
  std::vector<Channel> channels{make_channel(0.1), make_channel(0.7)};
  const auto profiles = profile_channels(channels);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].rho == doctest::Approx(0.1));
  CHECK(profiles[1].rho == doctest::Approx(0.7));

  Channel unstable = make_channel(1.0);
  CHECK_THROWS_AS(profile_channel(unstable), std::invalid_argument);
}

TEST_CASE("effective rate discounts by the idle probability") {
  const ChannelProfile busy = profile_channel(make_channel(0.8));
  const ChannelProfile idle = profile_channel(make_channel(0.0));
  CHECK(busy.effective_rate_bps ==
        doctest::Approx(0.2 * busy.mean_capacity_bps).epsilon(1e-15));
  CHECK(idle.effective_rate_bps == idle.mean_capacity_bps);
}
