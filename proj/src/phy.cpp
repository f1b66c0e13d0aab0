#include "sr/phy.hpp"

#include <cmath>
#include <string>

#include "sr/errors.hpp"

namespace sr {

void PhyParams::validate() const {
  auto pos = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("phy: ") + name + " must be positive");
  };
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string("phy: ") + name + " must be >= 0");
  };
  pos(symbol_duration, "symbol_duration");
  nonneg(difs, "difs");
  nonneg(sifs, "sifs");
  pos(slot_duration, "slot_duration");
  if (cw_min < 1 || cw_max < cw_min) throw ConfigError("phy: need 1 <= cw_min <= cw_max");
  if (n_agg < 1) throw ConfigError("phy: n_agg must be >= 1");
  for (int v : {len_data, len_rts, len_cts, len_mac, len_sf, len_mpdu_delim, len_tail, len_back})
    if (v < 0) throw ConfigError("phy: frame lengths must be >= 0");
  nonneg(legacy_preamble, "legacy_preamble");
  nonneg(he_preamble, "he_preamble");
  nonneg(he_ltf, "he_ltf");
  if (spatial_streams < 1) throw ConfigError("phy: spatial_streams must be >= 1");
}

void RateTable::validate() const {
  if (entries.empty()) throw ConfigError("rate table is empty");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].bits_per_symbol > 0.0)) throw ConfigError("rate table: bits_per_symbol must be > 0");
    if (!std::isfinite(entries[i].min_rssi_dbm)) throw ConfigError("rate table: min_rssi must be finite");
    if (i > 0 && !(entries[i].min_rssi_dbm > entries[i - 1].min_rssi_dbm &&
                   entries[i].bits_per_symbol > entries[i - 1].bits_per_symbol))
      throw ConfigError("rate table: entries must increase in both rssi and rate");
  }
}

RateTable RateTable::ieee80211ax(double top) {
  // MCS 0..11 data bits per subcarrier-symbol relative to MCS 11 (1024-QAM 5/6).
  static constexpr double kRatio[12] = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 4.5, 5.0, 6.0, 20.0 / 3.0, 7.5, 25.0 / 3.0};
  // Minimum receive sensitivity, 20 MHz.
  static constexpr double kRssi[12] = {-82, -79, -77, -74, -70, -66, -65, -64, -59, -57, -54, -52};
  RateTable t;
  for (int i = 0; i < 12; ++i) t.entries.push_back({kRssi[i], kRatio[i] / kRatio[11] * top});
  return t;
}

double expected_backoff(const PhyParams& p) {
  if (p.cw_min < 1) throw DomainError("expected_backoff: cw_min must be >= 1");
  return (p.cw_min - 1) / 2.0 * p.slot_duration;
}

double select_rate(double rssi_dbm, const RateTable& table) {
  if (table.entries.empty()) throw ConfigError("select_rate: empty rate table");
  for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it)
    if (it->min_rssi_dbm <= rssi_dbm) return it->bits_per_symbol;
  throw InfeasibleLink("rssi " + std::to_string(rssi_dbm) + " dBm is below the lowest MCS threshold");
}

double frame_duration(FrameKind kind, double r, const PhyParams& p) {
  if (!(r > 0.0)) throw DomainError("frame_duration: bits per symbol must be > 0");
  double preamble = p.legacy_preamble;
  double bits = 0.0;
  switch (kind) {
    case FrameKind::Rts: bits = p.len_sf + p.len_rts + p.len_tail; break;
    case FrameKind::Cts: bits = p.len_sf + p.len_cts + p.len_tail; break;
    case FrameKind::Back: bits = p.len_sf + p.len_back + p.len_tail; break;
    case FrameKind::Data:
      preamble = p.he_preamble + p.spatial_streams * p.he_ltf;
      bits = p.len_sf + static_cast<double>(p.n_agg) * (p.len_mac + p.len_mpdu_delim + p.len_data) + p.len_tail;
      break;
  }
  return preamble + std::ceil(bits / r) * p.symbol_duration;
}

double tx_cycle_duration(double r, const PhyParams& p) {
  return frame_duration(FrameKind::Rts, r, p) + p.sifs + frame_duration(FrameKind::Cts, r, p) + p.sifs +
         frame_duration(FrameKind::Data, r, p) + p.sifs + frame_duration(FrameKind::Back, r, p) + p.difs;
}

double payload_bits(const PhyParams& p) { return static_cast<double>(p.n_agg) * p.len_data; }

CtmnRates ctmn_rates(double link_rssi_dbm, const RateTable& table, const PhyParams& p) {
  const double r = select_rate(link_rssi_dbm, table);
  const double eb = expected_backoff(p);
  if (!(eb > 0.0)) throw DomainError("ctmn_rates: expected backoff is zero, attempt rate undefined");
  return {1.0 / eb, 1.0 / tx_cycle_duration(r, p), payload_bits(p)};
}

double isolation_throughput(double r, const PhyParams& p) {
  // One WLAN: pi(busy) = lambda / (lambda + mu), throughput = L * mu * pi(busy).
  const double lambda = 1.0 / expected_backoff(p);
  const double mu = 1.0 / tx_cycle_duration(r, p);
  return payload_bits(p) * mu * lambda / (lambda + mu);
}

double calibrate_top_rate(double target_bps, const PhyParams& p, double nominal, double span) {
  const long lo = static_cast<long>(std::ceil(nominal * (1.0 - span)));
  const long hi = static_cast<long>(std::floor(nominal * (1.0 + span)));
  double best = static_cast<double>(lo);
  double best_err = std::abs(isolation_throughput(best, p) - target_bps);
  for (long r = lo + 1; r <= hi; ++r) {
    const double err = std::abs(isolation_throughput(static_cast<double>(r), p) - target_bps);
    if (err <= best_err) {
      best_err = err;
      best = static_cast<double>(r);
    }
  }
  return best;
}

}  // namespace sr
