#include "crvn/channel_model.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace crvn {

namespace {

constexpr double kLn10Over10 = 0.23025850929940457;  // ln(10)/10
constexpr double kLn2 = 0.6931471805599453;

// log2(1 + 10^(x/10)) without overflow for large x (softplus form).
double spectral_efficiency_db(double snr_db) {
  const double t = snr_db * kLn10Over10;
  if (t > 0.0) return (t + std::log1p(std::exp(-t))) / kLn2;
  return std::log1p(std::exp(t)) / kLn2;
}

}  // namespace

double utilization(const Channel& c) {
  if (!(c.pu_service_rate > 0.0))
    throw std::invalid_argument("utilization: pu_service_rate must be positive");
  return c.pu_arrival_rate / c.pu_service_rate;
}

double shannon_capacity(double bandwidth_hz, double snr_db) {
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("shannon_capacity: bandwidth must be positive");
  return bandwidth_hz * spectral_efficiency_db(snr_db);
}

double expected_spectral_efficiency(double snr_mean_db) {
  if (!(snr_mean_db > 0.0))
    throw std::invalid_argument("expected_spectral_efficiency: snr_mean_db must be positive");

  static std::mutex cache_mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(snr_mean_db); it != cache.end()) return it->second;
  }

  // Integrate the efficiency against the exponential density, truncated where
  // the remaining tail mass drops below 1e-12. The neglected tail contributes
  // O(1e-12 * efficiency(x_max)), far inside the 1e-8 relative target.
  const double m = snr_mean_db;
  const double x_max = m * std::log(1e12);
  const auto integrand = [m](double x) {
    return spectral_efficiency_db(x) * std::exp(-x / m) / m;
  };
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, x_max, /*max_depth=*/15, /*tol=*/1e-8);
  if (!std::isfinite(value) || value <= 0.0)
    throw std::runtime_error("expected_spectral_efficiency: quadrature failed to converge");

  std::lock_guard lock(cache_mutex);
  cache.emplace(snr_mean_db, value);
  return value;
}

double mean_capacity(const Channel& c) {
  if (!(c.bandwidth_hz > 0.0))
    throw std::invalid_argument("mean_capacity: bandwidth must be positive");
  return c.bandwidth_hz * expected_spectral_efficiency(c.snr_mean_db);
}

double effective_rate(const Channel& c) {
  return (1.0 - utilization(c)) * mean_capacity(c);
}

ChannelProfile profile_channel(const Channel& c) {
  ChannelProfile p;
  p.channel_id = c.id;
  p.rho = utilization(c);
  if (p.rho < 0.0 || p.rho >= 1.0)
    throw std::invalid_argument("profile_channel: channel '" + c.id +
                                "' violates the stability criterion (rho = " +
                                std::to_string(p.rho) + ")");
  p.p_off = 1.0 - p.rho;
  p.mean_capacity_bps = mean_capacity(c);
  p.effective_rate_bps = p.p_off * p.mean_capacity_bps;
  return p;
}

std::vector<ChannelProfile> profile_channels(std::span<const Channel> channels) {
  std::vector<ChannelProfile> out;
  out.reserve(channels.size());
  for (const Channel& c : channels) out.push_back(profile_channel(c));
  return out;
}

}  // namespace crvn
