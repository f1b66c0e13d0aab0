#pragma once

#include <vector>

namespace sr {

struct PhyParams {
  double symbol_duration = 9e-6;
  double difs = 34e-6;
  double sifs = 16e-6;
  double slot_duration = 9e-6;
  int cw_min = 16;
  int cw_max = 16;
  int n_agg = 64;
  int len_data = 12000;
  int len_rts = 160;
  int len_cts = 112;
  int len_mac = 272;
  int len_sf = 16;
  int len_mpdu_delim = 32;
  int len_tail = 6;
  int len_back = 240;
  double legacy_preamble = 20e-6;  // RTS, CTS, BACK
  double he_preamble = 36e-6;      // DATA, before the per-stream HE-LTF
  double he_ltf = 16e-6;
  int spatial_streams = 1;

  void validate() const;
  bool operator==(const PhyParams&) const = default;
};

struct RateEntry {
  double min_rssi_dbm;
  double bits_per_symbol;

  bool operator==(const RateEntry&) const = default;
};

// Entries sorted by ascending min_rssi (and therefore ascending rate).
struct RateTable {
  std::vector<RateEntry> entries;

  void validate() const;
  bool operator==(const RateTable&) const = default;
  double top_bits_per_symbol() const { return entries.back().bits_per_symbol; }

  // 11ax MCS 0-11 (20 MHz, 1 SS) with the top entry at top_bits_per_symbol.
  static RateTable ieee80211ax(double top_bits_per_symbol);
};

// Bits per OFDM symbol matching 114.37 Mbps at 9 us symbols.
inline constexpr double kNominalTopBits = 1029.0;
// Frozen output of calibrate_top_rate() against 113.23 Mbps.
inline constexpr double kCalibratedTopBits = 1080.0;
inline constexpr double kIsolationTargetBps = 113.23e6;
inline constexpr double kMaxDataRateBps = 114.37e6;

struct PhyModel {
  PhyParams params;
  RateTable table = RateTable::ieee80211ax(kCalibratedTopBits);
};

enum class FrameKind { Rts, Cts, Data, Back };

double expected_backoff(const PhyParams& p);

// Throws InfeasibleLink when rssi is under every threshold.
double select_rate(double rssi_dbm, const RateTable& table);

double frame_duration(FrameKind kind, double bits_per_symbol, const PhyParams& p);

double tx_cycle_duration(double bits_per_symbol, const PhyParams& p);

// Payload delivered per successful exchange (N_agg * L_DATA).
double payload_bits(const PhyParams& p);

struct CtmnRates {
  double lambda;
  double mu;
  double payload_bits_per_tx;
};

CtmnRates ctmn_rates(double link_rssi_dbm, const RateTable& table, const PhyParams& p);

// Saturated throughput of one WLAN alone at the given rate.
double isolation_throughput(double bits_per_symbol, const PhyParams& p);

// Integer sweep of the top rate over nominal*(1 +- span); returns the value
// whose isolation throughput is closest to target_bps. Symbol quantization
// makes neighbouring rates tie; the highest one wins.
double calibrate_top_rate(double target_bps, const PhyParams& p,
                          double nominal = kNominalTopBits, double span = 0.05);

}  // namespace sr
