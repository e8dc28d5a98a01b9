// plant.hpp
// Domain model of a combined-cycle plant: physical turbines, operating
// configurations, the feasible-transition graph, and the mapping matrices
// that tie turbine statuses to configuration variables.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccgtuc {

enum class TurbineKind { CT, ST, DB };

inline const char* to_string(TurbineKind k) {
  switch (k) {
    case TurbineKind::CT: return "CT";
    case TurbineKind::ST: return "ST";
    case TurbineKind::DB: return "DB";
  }
  return "?";
}

// Startup warmth, ordered hot < intermediate < cold.
enum class Warmth : int { hot = 1, intermediate = 2, cold = 3 };

inline const char* to_string(Warmth w) {
  switch (w) {
    case Warmth::hot: return "hot";
    case Warmth::intermediate: return "intermediate";
    case Warmth::cold: return "cold";
  }
  return "?";
}

// One startup type: the minimum preceding downtime that makes the type
// applicable and the cost charged for it.
struct StartupTier {
  Warmth warmth = Warmth::hot;
  int min_down_for_type = 1;  // hours
  double cost = 0.0;
};

struct PhysicalTurbine {
  std::string id;
  TurbineKind kind = TurbineKind::CT;
  int min_up_time = 1;    // hours
  int min_down_time = 1;  // hours
  std::vector<StartupTier> startup_tiers;  // ordered hot..cold, 1..3 entries
  std::optional<int> max_daily_starts;
  bool init_on = false;
  int init_on_hours = 0;   // hours on before the horizon (0 if initially off)
  int init_off_hours = 0;  // hours off before the horizon (0 if initially on)
};

struct CurvePoint {
  double mw = 0.0;
  double cost_per_h = 0.0;
};

// An operating mode of the plant, defined by which turbines are on.
struct Configuration {
  std::string id;
  std::vector<std::string> turbines_on;
  // Capacity limits; size 1 means constant, otherwise one value per hour.
  std::vector<double> p_min{0.0};
  std::vector<double> p_max{0.0};
  double ramp_up = 0.0;       // MW/h while committed
  double ramp_down = 0.0;     // MW/h while committed
  double startup_ramp = 0.0;  // MW/h on the interval the plant enters this mode
  double no_load_cost = 0.0;  // currency per committed hour
  std::vector<CurvePoint> cost_curve;  // energy cost breakpoints over [p_min, p_max]

  bool is_off() const { return turbines_on.empty(); }
  double p_min_at(int t) const { return p_min.size() == 1 ? p_min[0] : p_min.at(size_t(t - 1)); }
  double p_max_at(int t) const { return p_max.size() == 1 ? p_max[0] : p_max.at(size_t(t - 1)); }
};

// A feasible one-hour move between configurations. started/stopped are
// derived from the two turbine sets by CcgtPlant::refresh_derived().
struct Transition {
  std::string from_config;
  std::string to_config;
  std::vector<std::string> started;
  std::vector<std::string> stopped;
};

struct CcgtPlant {
  std::string name;
  std::vector<PhysicalTurbine> turbines;
  std::vector<Configuration> configurations;
  std::vector<Transition> transitions;
  std::string init_config;
  double init_power_mw = 0.0;  // output of init_config just before the horizon

  int turbine_index(const std::string& id) const {
    for (size_t i = 0; i < turbines.size(); ++i)
      if (turbines[i].id == id) return int(i);
    return -1;
  }
  int config_index(const std::string& id) const {
    for (size_t i = 0; i < configurations.size(); ++i)
      if (configurations[i].id == id) return int(i);
    return -1;
  }
  int off_config_index() const {
    for (size_t i = 0; i < configurations.size(); ++i)
      if (configurations[i].is_off()) return int(i);
    return -1;
  }
  int init_config_index() const { return config_index(init_config); }

  bool config_has_turbine(int config, int turbine) const {
    const auto& on = configurations[size_t(config)].turbines_on;
    const auto& id = turbines[size_t(turbine)].id;
    return std::find(on.begin(), on.end(), id) != on.end();
  }

  // Fills Transition::started/stopped from the configuration turbine sets.
  // Call after construction or after editing configurations/transitions.
  void refresh_derived() {
    for (auto& tr : transitions) {
      tr.started.clear();
      tr.stopped.clear();
      int from = config_index(tr.from_config);
      int to = config_index(tr.to_config);
      if (from < 0 || to < 0) continue;  // left for validate_plant to report
      for (const auto& tb : turbines) {
        bool was_on = config_has_turbine(from, turbine_index(tb.id));
        bool is_on = config_has_turbine(to, turbine_index(tb.id));
        if (!was_on && is_on) tr.started.push_back(tb.id);
        if (was_on && !is_on) tr.stopped.push_back(tb.id);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Validation

enum class DiagCode {
  MISSING_OFF_CONFIG,
  DUPLICATE_OFF_CONFIG,
  DUPLICATE_CONFIG_SET,
  DUPLICATE_ID,
  BAD_ID,
  UNKNOWN_TURBINE,
  UNKNOWN_CONFIG,
  UNUSED_TURBINE,
  SELF_LOOP,
  DUPLICATE_TRANSITION,
  EMPTY_TRANSITION,
  BAD_TRANSITION_SETS,
  BAD_BOUNDS,
  BAD_COST_CURVE,
  BAD_RAMPS,
  BAD_MIN_TIMES,
  BAD_STARTUP_TIERS,
  BAD_DAILY_START_CAP,
  BAD_INITIAL_STATE,
  INIT_CONFIG_MISMATCH,
  BAD_INIT_POWER,
};

inline const char* to_string(DiagCode c) {
  switch (c) {
    case DiagCode::MISSING_OFF_CONFIG: return "MISSING_OFF_CONFIG";
    case DiagCode::DUPLICATE_OFF_CONFIG: return "DUPLICATE_OFF_CONFIG";
    case DiagCode::DUPLICATE_CONFIG_SET: return "DUPLICATE_CONFIG_SET";
    case DiagCode::DUPLICATE_ID: return "DUPLICATE_ID";
    case DiagCode::BAD_ID: return "BAD_ID";
    case DiagCode::UNKNOWN_TURBINE: return "UNKNOWN_TURBINE";
    case DiagCode::UNKNOWN_CONFIG: return "UNKNOWN_CONFIG";
    case DiagCode::UNUSED_TURBINE: return "UNUSED_TURBINE";
    case DiagCode::SELF_LOOP: return "SELF_LOOP";
    case DiagCode::DUPLICATE_TRANSITION: return "DUPLICATE_TRANSITION";
    case DiagCode::EMPTY_TRANSITION: return "EMPTY_TRANSITION";
    case DiagCode::BAD_TRANSITION_SETS: return "BAD_TRANSITION_SETS";
    case DiagCode::BAD_BOUNDS: return "BAD_BOUNDS";
    case DiagCode::BAD_COST_CURVE: return "BAD_COST_CURVE";
    case DiagCode::BAD_RAMPS: return "BAD_RAMPS";
    case DiagCode::BAD_MIN_TIMES: return "BAD_MIN_TIMES";
    case DiagCode::BAD_STARTUP_TIERS: return "BAD_STARTUP_TIERS";
    case DiagCode::BAD_DAILY_START_CAP: return "BAD_DAILY_START_CAP";
    case DiagCode::BAD_INITIAL_STATE: return "BAD_INITIAL_STATE";
    case DiagCode::INIT_CONFIG_MISMATCH: return "INIT_CONFIG_MISMATCH";
    case DiagCode::BAD_INIT_POWER: return "BAD_INIT_POWER";
  }
  return "?";
}

struct Diagnostic {
  DiagCode code;
  std::string element;  // offending turbine/configuration/transition
  std::string message;
};

namespace detail {

// Identifiers flow into MPS column names; keep them to a safe alphabet.
inline bool safe_id(const std::string& s) {
  if (s.empty() || s.size() > 48) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

inline std::vector<Diagnostic> validate_plant(const CcgtPlant& plant) {
  std::vector<Diagnostic> out;
  auto add = [&](DiagCode code, const std::string& element, std::string msg) {
    out.push_back(Diagnostic{code, element, std::move(msg)});
  };

  if (!detail::safe_id(plant.name)) add(DiagCode::BAD_ID, plant.name, "plant name is not a safe identifier");

  // Turbines
  std::set<std::string> turbine_ids;
  for (const auto& x : plant.turbines) {
    if (!detail::safe_id(x.id)) add(DiagCode::BAD_ID, x.id, "turbine id is not a safe identifier");
    if (!turbine_ids.insert(x.id).second) add(DiagCode::DUPLICATE_ID, x.id, "duplicate turbine id");
    if (x.min_up_time < 1 || x.min_down_time < 1)
      add(DiagCode::BAD_MIN_TIMES, x.id, "min up/down times must be at least 1 hour");
    if (x.startup_tiers.empty() || x.startup_tiers.size() > 3) {
      add(DiagCode::BAD_STARTUP_TIERS, x.id, "turbine needs 1 to 3 startup tiers");
    } else {
      if (x.startup_tiers.front().min_down_for_type != x.min_down_time)
        add(DiagCode::BAD_STARTUP_TIERS, x.id, "first tier threshold must equal min down time");
      for (size_t w = 0; w < x.startup_tiers.size(); ++w) {
        const auto& tier = x.startup_tiers[w];
        if (tier.min_down_for_type < 1) add(DiagCode::BAD_STARTUP_TIERS, x.id, "tier threshold below 1 hour");
        if (tier.cost < 0) add(DiagCode::BAD_STARTUP_TIERS, x.id, "negative startup cost");
        if (int(tier.warmth) != int(w) + 1)
          add(DiagCode::BAD_STARTUP_TIERS, x.id, "tiers must be ordered hot, intermediate, cold");
        if (w > 0) {
          if (tier.min_down_for_type <= x.startup_tiers[w - 1].min_down_for_type)
            add(DiagCode::BAD_STARTUP_TIERS, x.id, "tier thresholds must be strictly increasing");
          if (tier.cost < x.startup_tiers[w - 1].cost)
            add(DiagCode::BAD_STARTUP_TIERS, x.id, "tier costs must be non-decreasing");
        }
      }
    }
    if (x.max_daily_starts && *x.max_daily_starts < 0)
      add(DiagCode::BAD_DAILY_START_CAP, x.id, "negative daily start cap");
    if (x.init_on_hours < 0 || x.init_off_hours < 0)
      add(DiagCode::BAD_INITIAL_STATE, x.id, "negative initial on/off hours");
    else if (x.init_on && (x.init_on_hours < 1 || x.init_off_hours != 0))
      add(DiagCode::BAD_INITIAL_STATE, x.id, "initially-on turbine needs init_on_hours > 0 and init_off_hours = 0");
    else if (!x.init_on && (x.init_off_hours < 1 || x.init_on_hours != 0))
      add(DiagCode::BAD_INITIAL_STATE, x.id, "initially-off turbine needs init_off_hours > 0 and init_on_hours = 0");
  }

  // Configurations
  std::set<std::string> config_ids;
  std::map<std::set<std::string>, std::string> sets_seen;
  int off_count = 0;
  std::set<std::string> used_turbines;
  for (const auto& y : plant.configurations) {
    if (!detail::safe_id(y.id)) add(DiagCode::BAD_ID, y.id, "configuration id is not a safe identifier");
    if (!config_ids.insert(y.id).second) add(DiagCode::DUPLICATE_ID, y.id, "duplicate configuration id");
    std::set<std::string> on(y.turbines_on.begin(), y.turbines_on.end());
    if (on.size() != y.turbines_on.size()) add(DiagCode::DUPLICATE_ID, y.id, "turbine listed twice in turbines_on");
    auto [it, fresh] = sets_seen.emplace(on, y.id);
    if (!fresh)
      add(DiagCode::DUPLICATE_CONFIG_SET, y.id, "same turbine set as configuration '" + it->second + "'");
    for (const auto& id : y.turbines_on) {
      if (!turbine_ids.count(id))
        add(DiagCode::UNKNOWN_TURBINE, y.id, "configuration references unknown turbine '" + id + "'");
      used_turbines.insert(id);
    }
    if (y.is_off()) ++off_count;

    if (y.p_min.empty() || y.p_max.empty() || y.p_min.size() != y.p_max.size())
      add(DiagCode::BAD_BOUNDS, y.id, "p_min/p_max arrays empty or of different lengths");
    else
      for (size_t t = 0; t < y.p_min.size(); ++t)
        if (y.p_min[t] < 0 || y.p_min[t] > y.p_max[t])
          add(DiagCode::BAD_BOUNDS, y.id, "needs 0 <= p_min <= p_max in every hour");
    if (y.is_off()) {
      for (double v : y.p_min)
        if (v != 0) add(DiagCode::BAD_BOUNDS, y.id, "all-off configuration must have p_min = 0");
      for (double v : y.p_max)
        if (v != 0) add(DiagCode::BAD_BOUNDS, y.id, "all-off configuration must have p_max = 0");
    } else {
      if (y.ramp_up <= 0 || y.ramp_down <= 0 || y.startup_ramp <= 0)
        add(DiagCode::BAD_RAMPS, y.id, "ramp_up, ramp_down and startup_ramp must be positive");
      if (y.cost_curve.size() < 2) {
        add(DiagCode::BAD_COST_CURVE, y.id, "non-off configuration needs at least 2 curve breakpoints");
      } else {
        for (size_t k = 1; k < y.cost_curve.size(); ++k)
          if (y.cost_curve[k].mw <= y.cost_curve[k - 1].mw)
            add(DiagCode::BAD_COST_CURVE, y.id, "curve breakpoints must be strictly increasing in MW");
        double lo = *std::min_element(y.p_min.begin(), y.p_min.end());
        double hi = *std::max_element(y.p_max.begin(), y.p_max.end());
        if (y.cost_curve.front().mw > lo || y.cost_curve.back().mw < hi)
          add(DiagCode::BAD_COST_CURVE, y.id, "curve must span [p_min, p_max]");
      }
    }
  }
  if (off_count == 0) add(DiagCode::MISSING_OFF_CONFIG, plant.name, "no all-off configuration declared");
  if (off_count > 1) add(DiagCode::DUPLICATE_OFF_CONFIG, plant.name, "more than one all-off configuration");
  for (const auto& x : plant.turbines)
    if (!used_turbines.count(x.id))
      add(DiagCode::UNUSED_TURBINE, x.id, "turbine appears in no configuration");

  // Transitions
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& tr : plant.transitions) {
    std::string label = tr.from_config + ">" + tr.to_config;
    if (tr.from_config == tr.to_config) add(DiagCode::SELF_LOOP, label, "transition from a configuration to itself");
    if (!pairs.emplace(tr.from_config, tr.to_config).second)
      add(DiagCode::DUPLICATE_TRANSITION, label, "duplicate (from, to) pair");
    int from = plant.config_index(tr.from_config);
    int to = plant.config_index(tr.to_config);
    if (from < 0) add(DiagCode::UNKNOWN_CONFIG, label, "unknown from_config '" + tr.from_config + "'");
    if (to < 0) add(DiagCode::UNKNOWN_CONFIG, label, "unknown to_config '" + tr.to_config + "'");
    if (from >= 0 && to >= 0 && tr.from_config != tr.to_config) {
      std::vector<std::string> started, stopped;
      for (const auto& tb : plant.turbines) {
        int x = plant.turbine_index(tb.id);
        bool was_on = plant.config_has_turbine(from, x);
        bool is_on = plant.config_has_turbine(to, x);
        if (!was_on && is_on) started.push_back(tb.id);
        if (was_on && !is_on) stopped.push_back(tb.id);
      }
      if (started.empty() && stopped.empty())
        add(DiagCode::EMPTY_TRANSITION, label, "transition changes no turbine status");
      if (started != tr.started || stopped != tr.stopped)
        add(DiagCode::BAD_TRANSITION_SETS, label,
            "started/stopped sets stale; call refresh_derived() after editing the plant");
    }
  }

  // Initial state
  int init = plant.config_index(plant.init_config);
  if (init < 0) {
    add(DiagCode::UNKNOWN_CONFIG, plant.init_config, "init_config is not a declared configuration");
  } else {
    for (const auto& x : plant.turbines) {
      bool member = plant.config_has_turbine(init, plant.turbine_index(x.id));
      if (member != x.init_on)
        add(DiagCode::INIT_CONFIG_MISMATCH, x.id,
            std::string("turbine is ") + (x.init_on ? "initially on" : "initially off") +
                " but init_config says otherwise");
    }
    const auto& yc = plant.configurations[size_t(init)];
    double lo = yc.p_min_at(1), hi = yc.p_max_at(1);
    if (plant.init_power_mw < lo - 1e-9 || plant.init_power_mw > hi + 1e-9)
      add(DiagCode::BAD_INIT_POWER, plant.init_config, "init_power_mw outside the initial configuration's limits");
  }

  return out;
}

inline void require_valid(const CcgtPlant& plant) {
  auto diags = validate_plant(plant);
  if (!diags.empty()) {
    std::string msg = "plant '" + plant.name + "' invalid:";
    for (const auto& d : diags) msg += std::string("\n  [") + to_string(d.code) + "] " + d.element + ": " + d.message;
    throw std::runtime_error(msg);
  }
}

// ---------------------------------------------------------------------------
// Mapping matrices (turbine status <-> configuration variables)

struct MappingMatrices {
  // m[x][y] = 1 iff turbine x is on in configuration y.
  std::vector<std::vector<std::uint8_t>> m;
  // m_up[x][j] = 1 iff transition up_transitions[j] starts turbine x.
  std::vector<std::vector<std::uint8_t>> m_up;
  // m_dn[x][j] = 1 iff transition dn_transitions[j] stops turbine x.
  std::vector<std::vector<std::uint8_t>> m_dn;
  std::vector<int> up_transitions;  // global transition index per m_up column
  std::vector<int> dn_transitions;  // global transition index per m_dn column
  std::vector<std::vector<int>> on_sets;  // ON^x: configuration indices
  std::vector<std::vector<int>> ut_sets;  // UT^x: global transition indices
  std::vector<std::vector<int>> dt_sets;  // DT^x: global transition indices
};

// Builds M, M^up, M^dn and the ON/UT/DT sets. Row order follows turbine
// declaration order; column order follows configuration/transition
// declaration order, with M^up restricted to transitions that start at
// least one turbine and M^dn to transitions that stop at least one.
inline MappingMatrices derive_mapping(const CcgtPlant& plant) {
  const size_t nx = plant.turbines.size();
  MappingMatrices mm;
  mm.m.assign(nx, std::vector<std::uint8_t>(plant.configurations.size(), 0));
  mm.on_sets.assign(nx, {});
  mm.ut_sets.assign(nx, {});
  mm.dt_sets.assign(nx, {});

  for (size_t y = 0; y < plant.configurations.size(); ++y)
    for (const auto& id : plant.configurations[y].turbines_on) {
      int x = plant.turbine_index(id);
      if (x < 0) throw std::runtime_error("configuration '" + plant.configurations[y].id +
                                          "' references unknown turbine '" + id + "'");
      mm.m[size_t(x)][y] = 1;
      mm.on_sets[size_t(x)].push_back(int(y));
    }

  for (size_t j = 0; j < plant.transitions.size(); ++j) {
    const auto& tr = plant.transitions[j];
    if (plant.config_index(tr.from_config) < 0 || plant.config_index(tr.to_config) < 0)
      throw std::runtime_error("transition '" + tr.from_config + ">" + tr.to_config +
                               "' references an unknown configuration");
    if (!tr.started.empty()) mm.up_transitions.push_back(int(j));
    if (!tr.stopped.empty()) mm.dn_transitions.push_back(int(j));
  }
  mm.m_up.assign(nx, std::vector<std::uint8_t>(mm.up_transitions.size(), 0));
  mm.m_dn.assign(nx, std::vector<std::uint8_t>(mm.dn_transitions.size(), 0));
  for (size_t col = 0; col < mm.up_transitions.size(); ++col)
    for (const auto& id : plant.transitions[size_t(mm.up_transitions[col])].started) {
      int x = plant.turbine_index(id);
      if (x < 0) throw std::runtime_error("transition starts unknown turbine '" + id + "'");
      mm.m_up[size_t(x)][col] = 1;
      mm.ut_sets[size_t(x)].push_back(mm.up_transitions[col]);
    }
  for (size_t col = 0; col < mm.dn_transitions.size(); ++col)
    for (const auto& id : plant.transitions[size_t(mm.dn_transitions[col])].stopped) {
      int x = plant.turbine_index(id);
      if (x < 0) throw std::runtime_error("transition stops unknown turbine '" + id + "'");
      mm.m_dn[size_t(x)][col] = 1;
      mm.dt_sets[size_t(x)].push_back(mm.dn_transitions[col]);
    }
  return mm;
}

// ---------------------------------------------------------------------------
// Aggregate configuration model

namespace detail {

struct CountClass {
  int ct = 0, st = 0, db = 0;
  auto operator<=>(const CountClass&) const = default;
};

inline CountClass class_of(const CcgtPlant& plant, const Configuration& y) {
  CountClass c;
  for (const auto& id : y.turbines_on) {
    int x = plant.turbine_index(id);
    if (x < 0) continue;
    switch (plant.turbines[size_t(x)].kind) {
      case TurbineKind::CT: ++c.ct; break;
      case TurbineKind::ST: ++c.st; break;
      case TurbineKind::DB: ++c.db; break;
    }
  }
  return c;
}

inline std::string class_name(const CountClass& c) {
  if (c.ct == 0 && c.st == 0 && c.db == 0) return "off";
  std::string s;
  if (c.ct > 0) s += std::to_string(c.ct) + "ct";
  if (c.st > 0) s += std::to_string(c.st) + "st";
  if (c.db > 0) s += std::to_string(c.db) + "db";
  return s;
}

}  // namespace detail

// Merges configurations with equal (nCT, nST, nDB) counts into one, filling
// each merged configuration's turbine set by the caller's priority order
// (earlier in `priority` = turned on first). The priority list must contain
// every turbine exactly once. Physical data of a merged configuration is
// taken from the earliest-declared member of its class. Initial turbine
// states are remapped onto the priority-preferred members so counts and
// pre-horizon on/off hours are preserved.
inline CcgtPlant build_aggregate(const CcgtPlant& plant, const std::vector<std::string>& priority) {
  // priority must be a permutation of the turbines of each kind
  std::set<std::string> seen;
  for (const auto& id : priority) {
    if (plant.turbine_index(id) < 0)
      throw std::runtime_error("priority lists unknown turbine '" + id + "'");
    if (!seen.insert(id).second) throw std::runtime_error("priority lists turbine '" + id + "' twice");
  }
  for (const auto& x : plant.turbines)
    if (!seen.count(x.id))
      throw std::runtime_error("priority is missing turbine '" + x.id + "'");

  std::vector<std::string> by_kind[3];
  for (const auto& id : priority) {
    const auto& x = plant.turbines[size_t(plant.turbine_index(id))];
    by_kind[int(x.kind)].push_back(id);
  }

  CcgtPlant agg;
  agg.name = plant.name;
  agg.turbines = plant.turbines;

  // Count classes in first-appearance order of the original configurations.
  std::vector<detail::CountClass> classes;
  std::map<detail::CountClass, int> class_index;
  auto intern = [&](const detail::CountClass& c) {
    auto it = class_index.find(c);
    if (it != class_index.end()) return it->second;
    int idx = int(classes.size());
    classes.push_back(c);
    class_index.emplace(c, idx);
    return idx;
  };
  std::vector<int> config_class(plant.configurations.size());
  for (size_t y = 0; y < plant.configurations.size(); ++y)
    config_class[y] = intern(detail::class_of(plant, plant.configurations[y]));

  for (size_t c = 0; c < classes.size(); ++c) {
    // data of the earliest-declared member
    size_t rep = 0;
    for (size_t y = 0; y < plant.configurations.size(); ++y)
      if (config_class[y] == int(c)) { rep = y; break; }
    Configuration merged = plant.configurations[rep];
    merged.id = detail::class_name(classes[c]);
    merged.turbines_on.clear();
    for (int i = 0; i < classes[c].ct; ++i) merged.turbines_on.push_back(by_kind[int(TurbineKind::CT)].at(size_t(i)));
    for (int i = 0; i < classes[c].st; ++i) merged.turbines_on.push_back(by_kind[int(TurbineKind::ST)].at(size_t(i)));
    for (int i = 0; i < classes[c].db; ++i) merged.turbines_on.push_back(by_kind[int(TurbineKind::DB)].at(size_t(i)));
    agg.configurations.push_back(std::move(merged));
  }

  // Transitions: count-class images of the originals, first appearance wins.
  std::set<std::pair<int, int>> pair_seen;
  for (const auto& tr : plant.transitions) {
    int from = config_class[size_t(plant.config_index(tr.from_config))];
    int to = config_class[size_t(plant.config_index(tr.to_config))];
    if (from == to) continue;  // merged into a non-move
    if (!pair_seen.emplace(from, to).second) continue;
    Transition t;
    t.from_config = agg.configurations[size_t(from)].id;
    t.to_config = agg.configurations[size_t(to)].id;
    agg.transitions.push_back(std::move(t));
  }

  // Initial state: preserve per-kind on-counts and hour multisets, assigning
  // on-states (longest running first) to the highest-priority members.
  int init_class = config_class[size_t(plant.config_index(plant.init_config))];
  if (plant.config_index(plant.init_config) < 0) throw std::runtime_error("aggregate: unknown init_config");
  agg.init_config = agg.configurations[size_t(init_class)].id;
  agg.init_power_mw = plant.init_power_mw;
  detail::CountClass init_counts = classes[size_t(init_class)];
  for (int kind = 0; kind < 3; ++kind) {
    std::vector<int> on_hours, off_hours;
    for (const auto& x : plant.turbines)
      if (int(x.kind) == kind) {
        if (x.init_on) on_hours.push_back(x.init_on_hours);
        else off_hours.push_back(x.init_off_hours);
      }
    std::sort(on_hours.rbegin(), on_hours.rend());
    std::sort(off_hours.rbegin(), off_hours.rend());
    int n_on = kind == int(TurbineKind::CT) ? init_counts.ct
             : kind == int(TurbineKind::ST) ? init_counts.st
                                            : init_counts.db;
    const auto& order = by_kind[kind];
    for (size_t i = 0; i < order.size(); ++i) {
      auto& x = agg.turbines[size_t(agg.turbine_index(order[i]))];
      if (int(i) < n_on) {
        x.init_on = true;
        x.init_on_hours = on_hours.empty() ? 1 : on_hours[std::min(i, on_hours.size() - 1)];
        x.init_off_hours = 0;
      } else {
        size_t j = i - size_t(n_on);
        x.init_on = false;
        x.init_on_hours = 0;
        x.init_off_hours = off_hours.empty() ? 1 : off_hours[std::min(j, off_hours.size() - 1)];
      }
    }
  }

  agg.refresh_derived();
  return agg;
}

// ---------------------------------------------------------------------------
// Formulation-size bookkeeping

struct ElementCounts {
  int horizon = 0;
  int configurations = 0;
  int turbines = 0;
  int transitions = 0;
  int upward_transitions = 0;
  int downward_transitions = 0;
  int startup_indicators = 0;  // sum of declared tiers over turbines
  // startup-related binaries per interval: startup indicators + upward
  // transition variables for the hybrid model, typed upward transition
  // variables (3 warmth levels each) for the configuration-based model
  int hybrid_startup_binaries_per_interval = 0;
  int cfbm_startup_binaries_per_interval = 0;
  // all commitment/transition/startup binaries per interval and in total
  int hybrid_binaries_per_interval = 0;
  int cfbm_binaries_per_interval = 0;
  long hybrid_total_binaries = 0;
  long cfbm_total_binaries = 0;
};

inline ElementCounts count_model_elements(const CcgtPlant& plant, int horizon) {
  ElementCounts c;
  c.horizon = horizon;
  c.configurations = int(plant.configurations.size());
  c.turbines = int(plant.turbines.size());
  c.transitions = int(plant.transitions.size());
  for (const auto& tr : plant.transitions) {
    if (!tr.started.empty()) ++c.upward_transitions;
    if (!tr.stopped.empty()) ++c.downward_transitions;
  }
  for (const auto& x : plant.turbines) c.startup_indicators += int(x.startup_tiers.size());

  c.hybrid_startup_binaries_per_interval = c.startup_indicators + c.upward_transitions;
  c.cfbm_startup_binaries_per_interval = 3 * c.upward_transitions;
  c.hybrid_binaries_per_interval = c.configurations + c.transitions + c.startup_indicators;
  int cfbm_untyped = c.transitions - c.upward_transitions;  // purely-downward moves stay untyped
  c.cfbm_binaries_per_interval = c.configurations + cfbm_untyped + 3 * c.upward_transitions;
  c.hybrid_total_binaries = long(c.hybrid_binaries_per_interval) * horizon;
  c.cfbm_total_binaries = long(c.cfbm_binaries_per_interval) * horizon;
  return c;
}

}  // namespace ccgtuc
