#pragma once

#include <span>

namespace sr {

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Position&) const = default;
};

double distance(const Position& a, const Position& b);

struct RadioEnvironment {
  double carrier_frequency_ghz = 5.0;
  double wall_frequency = 0.0;   // walls per meter
  double floor_frequency = 0.0;  // floors per meter
  double noise_floor_dbm = -95.0;
  double capture_effect_db = 10.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;

  // Throws DomainError when a field is out of range.
  void validate() const;
  bool operator==(const RadioEnvironment&) const = default;
};

double dbm_to_mw(double dbm);
// Returns -inf for 0 mW.
double mw_to_dbm(double mw);

// Residential path loss in dB. Throws DomainError for d <= 0.
double path_loss(double d, const RadioEnvironment& env);

double received_power(double tx_dbm, double d, const RadioEnvironment& env);

// SINR in dB. Interferers must already be filtered to the same channel.
double sinr(double signal_dbm, std::span<const double> interferers_dbm, double noise_dbm);

// True when the mW sum of the sensed powers is strictly below the threshold.
bool cca_idle(std::span<const double> sensed_dbm, double cca_threshold_dbm);

}  // namespace sr
