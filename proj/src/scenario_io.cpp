#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sr/errors.hpp"
#include "sr/learning.hpp"
#include "sr/scenario.hpp"

namespace sr {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

Position position_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3) throw ConfigError(where + " must be [x, y] or [x, y, z]");
  Position p{j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw ConfigError(where + " has a non-finite coordinate");
  return p;
}

json position_to(const Position& p) { return json::array({p.x, p.y, p.z}); }

ActionConfig action_from(const json& j, const std::string& where) {
  check_keys(j, {"channel", "tx_power_dbm", "cca_dbm"}, where);
  return {j.at("channel").get<int>(), j.at("tx_power_dbm").get<double>(), j.at("cca_dbm").get<double>()};
}

json action_to(const ActionConfig& a) {
  return {{"channel", a.channel}, {"tx_power_dbm", a.tx_power_dbm}, {"cca_dbm", a.cca_dbm}};
}

std::vector<ActionConfig> space_from(const json& j, const std::string& where) {
  check_keys(j, {"channels", "tx_power_dbm", "cca_dbm"}, where);
  const auto ch = j.at("channels").get<std::vector<int>>();
  const auto pw = j.at("tx_power_dbm").get<std::vector<double>>();
  const auto cc = j.at("cca_dbm").get<std::vector<double>>();
  return build_action_space(ch, pw, cc);
}

// Returns null when the action list is not a full cross product.
json space_to(const std::vector<ActionConfig>& actions) {
  std::vector<int> ch;
  std::vector<double> pw, cc;
  for (const auto& a : actions) {
    if (std::find(ch.begin(), ch.end(), a.channel) == ch.end()) ch.push_back(a.channel);
    if (std::find(pw.begin(), pw.end(), a.tx_power_dbm) == pw.end()) pw.push_back(a.tx_power_dbm);
    if (std::find(cc.begin(), cc.end(), a.cca_dbm) == cc.end()) cc.push_back(a.cca_dbm);
  }
  if (build_action_space(ch, pw, cc) != actions) return nullptr;
  std::sort(ch.begin(), ch.end());
  std::sort(pw.begin(), pw.end(), std::greater<>());
  std::sort(cc.begin(), cc.end());
  return {{"channels", ch}, {"tx_power_dbm", pw}, {"cca_dbm", cc}};
}

RadioEnvironment env_from(const json& j) {
  check_keys(j, {"carrier_frequency_ghz", "wall_frequency", "floor_frequency", "noise_floor_dbm", "capture_effect_db",
                 "tx_gain_dbi", "rx_gain_dbi"},
             "environment");
  RadioEnvironment e;
  e.carrier_frequency_ghz = j.value("carrier_frequency_ghz", e.carrier_frequency_ghz);
  e.wall_frequency = j.value("wall_frequency", e.wall_frequency);
  e.floor_frequency = j.value("floor_frequency", e.floor_frequency);
  e.noise_floor_dbm = j.value("noise_floor_dbm", e.noise_floor_dbm);
  e.capture_effect_db = j.value("capture_effect_db", e.capture_effect_db);
  e.tx_gain_dbi = j.value("tx_gain_dbi", e.tx_gain_dbi);
  e.rx_gain_dbi = j.value("rx_gain_dbi", e.rx_gain_dbi);
  e.validate();
  return e;
}

json env_to(const RadioEnvironment& e) {
  return {{"carrier_frequency_ghz", e.carrier_frequency_ghz}, {"wall_frequency", e.wall_frequency},
          {"floor_frequency", e.floor_frequency},             {"noise_floor_dbm", e.noise_floor_dbm},
          {"capture_effect_db", e.capture_effect_db},         {"tx_gain_dbi", e.tx_gain_dbi},
          {"rx_gain_dbi", e.rx_gain_dbi}};
}

#define SR_PHY_FIELDS(X)                                                                                   \
  X(symbol_duration) X(difs) X(sifs) X(slot_duration) X(cw_min) X(cw_max) X(n_agg) X(len_data) X(len_rts)  \
  X(len_cts) X(len_mac) X(len_sf) X(len_mpdu_delim) X(len_tail) X(len_back) X(legacy_preamble) X(he_preamble) \
  X(he_ltf) X(spatial_streams)

PhyParams phy_from(const json& j) {
  std::set<std::string> keys;
#define X(f) keys.insert(#f);
  SR_PHY_FIELDS(X)
#undef X
  check_keys(j, keys, "phy");
  PhyParams p;
#define X(f) p.f = j.value(#f, p.f);
  SR_PHY_FIELDS(X)
#undef X
  p.validate();
  return p;
}

json phy_to(const PhyParams& p) {
  json j = json::object();
#define X(f) j[#f] = p.f;
  SR_PHY_FIELDS(X)
#undef X
  return j;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  try {
    check_keys(j, {"name", "environment", "phy", "rate_table", "rate_table_top_bits", "action_space", "wlans"},
               "scenario");
    Scenario sc;
    sc.name = j.value("name", std::string("scenario"));
    if (j.contains("environment")) sc.env = env_from(j["environment"]);
    if (j.contains("phy")) sc.phy.params = phy_from(j["phy"]);
    if (j.contains("rate_table") && j.contains("rate_table_top_bits"))
      throw ConfigError("give either rate_table or rate_table_top_bits, not both");
    if (j.contains("rate_table_top_bits"))
      sc.phy.table = RateTable::ieee80211ax(j["rate_table_top_bits"].get<double>());
    if (j.contains("rate_table")) {
      sc.phy.table.entries.clear();
      for (const auto& e : j["rate_table"]) {
        check_keys(e, {"min_rssi_dbm", "bits_per_symbol"}, "rate_table entry");
        sc.phy.table.entries.push_back({e.at("min_rssi_dbm").get<double>(), e.at("bits_per_symbol").get<double>()});
      }
    }
    sc.phy.table.validate();

    const auto shared = j.contains("action_space") ? space_from(j["action_space"], "action_space")
                                                   : default_action_space();
    if (!j.contains("wlans") || !j["wlans"].is_array() || j["wlans"].empty())
      throw ConfigError("scenario needs a non-empty 'wlans' array");
    for (const auto& jw : j["wlans"]) {
      check_keys(jw, {"id", "ap", "sta", "action_space", "initial", "activation_iteration"}, "wlan");
      Wlan w;
      w.id = jw.at("id").get<std::string>();
      w.ap = position_from(jw.at("ap"), "wlan '" + w.id + "' ap");
      w.sta = position_from(jw.at("sta"), "wlan '" + w.id + "' sta");
      if (distance(w.ap, w.sta) <= 0.0) throw ConfigError("wlan '" + w.id + "' has its STA on top of its AP");
      w.actions = jw.contains("action_space") ? space_from(jw["action_space"], "wlan action_space") : shared;
      if (jw.contains("initial")) {
        const auto init = action_from(jw["initial"], "wlan initial");
        auto it = std::find(w.actions.begin(), w.actions.end(), init);
        if (it == w.actions.end()) throw ConfigError("initial config of '" + w.id + "' is not in its action space");
        w.initial_action = static_cast<std::size_t>(it - w.actions.begin());
      }
      const auto act = jw.value("activation_iteration", std::int64_t{0});
      if (act < 0) throw ConfigError("activation_iteration must be >= 0");
      w.activation_iteration = static_cast<std::uint64_t>(act);
      sc.deployment.wlans.push_back(std::move(w));
    }
    sc.deployment.validate();
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario file: ") + e.what());
  }
}

std::string scenario_to_json_text(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["environment"] = env_to(sc.env);
  if (!(sc.phy.params == PhyParams{})) j["phy"] = phy_to(sc.phy.params);
  if (!(sc.phy.table == RateTable::ieee80211ax(kCalibratedTopBits))) {
    json t = json::array();
    for (const auto& e : sc.phy.table.entries)
      t.push_back({{"min_rssi_dbm", e.min_rssi_dbm}, {"bits_per_symbol", e.bits_per_symbol}});
    j["rate_table"] = t;
  }
  const auto& wl = sc.deployment.wlans;
  const bool uniform = !wl.empty() && std::all_of(wl.begin(), wl.end(), [&](const Wlan& w) {
    return w.actions == wl.front().actions;
  });
  json shared = uniform ? space_to(wl.front().actions) : json(nullptr);
  if (!shared.is_null()) j["action_space"] = shared;
  json arr = json::array();
  for (const auto& w : wl) {
    json jw;
    jw["id"] = w.id;
    jw["ap"] = position_to(w.ap);
    jw["sta"] = position_to(w.sta);
    if (shared.is_null()) {
      json own = space_to(w.actions);
      if (own.is_null()) throw ConfigError("action space of '" + w.id + "' is not a channel x power x CCA product");
      jw["action_space"] = own;
    }
    jw["initial"] = action_to(w.actions.at(w.initial_action));
    jw["activation_iteration"] = w.activation_iteration;
    arr.push_back(jw);
  }
  j["wlans"] = arr;
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return scenario_from_json_text(ss.str());
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file '" + path + "'");
  out << scenario_to_json_text(sc);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace sr
