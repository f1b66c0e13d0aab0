#include "sr/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sr/errors.hpp"

namespace sr {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

void RadioEnvironment::validate() const {
  if (!(carrier_frequency_ghz > 0.0) || !std::isfinite(carrier_frequency_ghz))
    throw DomainError("carrier frequency must be positive");
  if (!(wall_frequency >= 0.0) || !std::isfinite(wall_frequency))
    throw DomainError("wall frequency must be >= 0");
  if (!(floor_frequency >= 0.0) || !std::isfinite(floor_frequency))
    throw DomainError("floor frequency must be >= 0");
  if (!std::isfinite(noise_floor_dbm)) throw DomainError("noise floor must be finite");
  if (!std::isfinite(capture_effect_db)) throw DomainError("capture effect threshold must be finite");
  if (!std::isfinite(tx_gain_dbi) || !std::isfinite(rx_gain_dbi))
    throw DomainError("antenna gains must be finite");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
  if (mw <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(mw);
}

double path_loss(double d, const RadioEnvironment& env) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw DomainError("path_loss: distance must be > 0, got " + std::to_string(d));
  constexpr double kBreakpoint = 5.0;
  double pl = 40.05 + 20.0 * std::log10(env.carrier_frequency_ghz / 2.4) +
              20.0 * std::log10(std::min(d, kBreakpoint));
  if (d > kBreakpoint) pl += 35.0 * std::log10(d / kBreakpoint);
  const double f = env.floor_frequency;
  // 18.3 * F^x vanishes at F = 0 for the exponent used here.
  if (f > 0.0) pl += 18.3 * std::pow(f, (f + 2.0) / (f + 1.0) - 0.46);
  pl += 5.0 * env.wall_frequency;
  return pl;
}

double received_power(double tx_dbm, double d, const RadioEnvironment& env) {
  return tx_dbm + env.tx_gain_dbi + env.rx_gain_dbi - path_loss(d, env);
}

double sinr(double signal_dbm, std::span<const double> interferers_dbm, double noise_dbm) {
  if (interferers_dbm.empty()) return signal_dbm - noise_dbm;
  double denom = dbm_to_mw(noise_dbm);
  for (double p : interferers_dbm) denom += dbm_to_mw(p);
  return signal_dbm - mw_to_dbm(denom);
}

bool cca_idle(std::span<const double> sensed_dbm, double cca_threshold_dbm) {
  double total = 0.0;
  for (double p : sensed_dbm) total += dbm_to_mw(p);
  return mw_to_dbm(total) < cca_threshold_dbm;
}

}  // namespace sr
