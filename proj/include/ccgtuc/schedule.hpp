// schedule.hpp
// Committed schedules, their derived turbine paths, direct (non-MILP)
// validation against the physical constraints, and independent pricing.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccgtuc/formulation.hpp"
#include "ccgtuc/plant.hpp"

namespace ccgtuc {

// One plant's committed path: the active configuration per hour and its
// dispatch. Everything else (turbine statuses, transitions, startup types)
// is recomputable from this plus the initial state.
struct PlantSchedule {
  std::vector<int> config_path;    // configuration index per hour, 1-based hours
  std::vector<double> dispatch_mw; // output of the active configuration
};

enum class ViolationCode {
  EXCLUSIVITY,
  ILLEGAL_TRANSITION,
  CAPACITY,
  RAMP_UP,
  RAMP_DOWN,
  MIN_UP,
  MIN_DOWN,
  INIT_FIX,
  START_CAP,
};

inline const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::EXCLUSIVITY: return "EXCLUSIVITY";
    case ViolationCode::ILLEGAL_TRANSITION: return "ILLEGAL_TRANSITION";
    case ViolationCode::CAPACITY: return "CAPACITY";
    case ViolationCode::RAMP_UP: return "RAMP_UP";
    case ViolationCode::RAMP_DOWN: return "RAMP_DOWN";
    case ViolationCode::MIN_UP: return "MIN_UP";
    case ViolationCode::MIN_DOWN: return "MIN_DOWN";
    case ViolationCode::INIT_FIX: return "INIT_FIX";
    case ViolationCode::START_CAP: return "START_CAP";
  }
  return "?";
}

struct Violation {
  ViolationCode code;
  std::string plant;
  int hour = 0;
  std::string detail;
};

// A turbine start inside the horizon, with the downtime that preceded it
// (pre-horizon hours included when the off streak reaches the boundary).
struct StartEvent {
  int turbine = -1;
  int hour = 0;
  int downtime = 0;
};

struct StopEvent {
  int turbine = -1;
  int hour = 0;
};

struct TurbinePaths {
  std::vector<std::vector<std::uint8_t>> on;  // [x][t-1]
  std::vector<StartEvent> starts;
  std::vector<StopEvent> stops;
};

inline TurbinePaths derive_turbine_paths(const CcgtPlant& plant, const std::vector<int>& config_path) {
  const int T = int(config_path.size());
  TurbinePaths tp;
  tp.on.assign(plant.turbines.size(), std::vector<std::uint8_t>(size_t(T), 0));
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    bool prev_on = tb.init_on;
    int off_since = tb.init_on ? 0 : 1 - tb.init_off_hours;  // first hour of the current off streak
    for (int t = 1; t <= T; ++t) {
      int y = config_path[size_t(t - 1)];
      if (y < 0 || y >= int(plant.configurations.size()))
        throw std::runtime_error("schedule references configuration index out of range");
      bool now_on = plant.config_has_turbine(y, int(x));
      tp.on[x][size_t(t - 1)] = now_on ? 1 : 0;
      if (now_on && !prev_on) tp.starts.push_back(StartEvent{int(x), t, t - off_since});
      if (!now_on && prev_on) {
        tp.stops.push_back(StopEvent{int(x), t});
        off_since = t;
      }
      prev_on = now_on;
    }
  }
  return tp;
}

// Startup type by preceding downtime: the coldest tier whose threshold the
// downtime has reached, hot at the floor.
inline Warmth classify_startup(const PhysicalTurbine& turbine, int downtime) {
  const auto& tiers = turbine.startup_tiers;
  size_t pick = 0;
  for (size_t w = 1; w < tiers.size(); ++w)
    if (downtime >= tiers[w].min_down_for_type) pick = w;
  return tiers[pick].warmth;
}

inline int classify_startup_index(const PhysicalTurbine& turbine, int downtime) {
  const auto& tiers = turbine.startup_tiers;
  size_t pick = 0;
  for (size_t w = 1; w < tiers.size(); ++w)
    if (downtime >= tiers[w].min_down_for_type) pick = w;
  return int(pick);
}

// ---------------------------------------------------------------------------
// Direct validation

inline std::vector<Violation> validate_schedule(const CcgtPlant& plant, const PlantSchedule& sched,
                                                double tol = 1e-6) {
  std::vector<Violation> out;
  auto add = [&](ViolationCode code, int hour, std::string detail) {
    out.push_back(Violation{code, plant.name, hour, std::move(detail)});
  };
  const int T = int(sched.config_path.size());
  if (sched.dispatch_mw.size() != sched.config_path.size()) {
    add(ViolationCode::EXCLUSIVITY, 0, "config_path and dispatch_mw must cover the same hours");
    return out;
  }
  for (int t = 1; t <= T; ++t) {
    int y = sched.config_path[size_t(t - 1)];
    if (y < 0 || y >= int(plant.configurations.size()))
      throw std::runtime_error("schedule hour " + std::to_string(t) + " references an unknown configuration");
  }

  // transition legality against the declared feasible set
  auto find_transition = [&](int from, int to) {
    for (size_t tau = 0; tau < plant.transitions.size(); ++tau)
      if (plant.config_index(plant.transitions[tau].from_config) == from &&
          plant.config_index(plant.transitions[tau].to_config) == to)
        return int(tau);
    return -1;
  };
  int prev = plant.init_config_index();
  for (int t = 1; t <= T; ++t) {
    int cur = sched.config_path[size_t(t - 1)];
    if (cur != prev && find_transition(prev, cur) < 0)
      add(ViolationCode::ILLEGAL_TRANSITION, t,
          "no feasible transition '" + plant.configurations[size_t(prev)].id + "' -> '" +
              plant.configurations[size_t(cur)].id + "'");
    prev = cur;
  }

  // capacity of the active configuration
  for (int t = 1; t <= T; ++t) {
    const auto& cfg = plant.configurations[size_t(sched.config_path[size_t(t - 1)])];
    double p = sched.dispatch_mw[size_t(t - 1)];
    if (p < cfg.p_min_at(t) - tol || p > cfg.p_max_at(t) + tol)
      add(ViolationCode::CAPACITY, t,
          cfg.id + ": dispatch " + std::to_string(p) + " outside [" + std::to_string(cfg.p_min_at(t)) +
              ", " + std::to_string(cfg.p_max_at(t)) + "]");
  }

  // ramps: within a stay the committed rates bind; entering a configuration
  // caps output at its startup rate; leaving one is unramped
  prev = plant.init_config_index();
  double prev_p = plant.init_power_mw;
  for (int t = 1; t <= T; ++t) {
    int cur = sched.config_path[size_t(t - 1)];
    const auto& cfg = plant.configurations[size_t(cur)];
    double p = sched.dispatch_mw[size_t(t - 1)];
    if (cur == prev) {
      if (p - prev_p > cfg.ramp_up + tol)
        add(ViolationCode::RAMP_UP, t, cfg.id + ": rise " + std::to_string(p - prev_p) +
                                           " exceeds ramp_up " + std::to_string(cfg.ramp_up));
      if (prev_p - p > cfg.ramp_down + tol)
        add(ViolationCode::RAMP_DOWN, t, cfg.id + ": drop " + std::to_string(prev_p - p) +
                                             " exceeds ramp_down " + std::to_string(cfg.ramp_down));
    } else if (!cfg.is_off()) {
      if (p > cfg.startup_ramp + tol)
        add(ViolationCode::RAMP_UP, t, cfg.id + ": entry dispatch " + std::to_string(p) +
                                           " exceeds startup_ramp " + std::to_string(cfg.startup_ramp));
    }
    prev = cur;
    prev_p = p;
  }

  // minimum up/down over the derived turbine paths; runs cut off by the end
  // of the horizon are exempt
  TurbinePaths tp = derive_turbine_paths(plant, sched.config_path);
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    int tu_r = std::max(0, tb.init_on ? tb.min_up_time - tb.init_on_hours : 0);
    int td_r = std::max(0, tb.init_on ? 0 : tb.min_down_time - tb.init_off_hours);
    for (int t = 1; t <= std::min(T, tu_r + td_r); ++t)
      if (bool(tp.on[x][size_t(t - 1)]) != tb.init_on) {
        add(ViolationCode::INIT_FIX, t,
            tb.id + std::string(": must stay ") + (tb.init_on ? "on" : "off") + " through hour " +
                std::to_string(tu_r + td_r));
        break;
      }
    for (const auto& ev : tp.starts) {
      if (ev.turbine != int(x)) continue;
      int end = ev.hour;
      while (end < T && tp.on[x][size_t(end)]) ++end;  // last on hour of the run
      if (end < T && end - ev.hour + 1 < tb.min_up_time)
        add(ViolationCode::MIN_UP, end + 1,
            tb.id + ": on for " + std::to_string(end - ev.hour + 1) + "h, needs " +
                std::to_string(tb.min_up_time));
      if (ev.downtime < tb.min_down_time)
        add(ViolationCode::MIN_DOWN, ev.hour,
            tb.id + ": restarted after " + std::to_string(ev.downtime) + "h down, needs " +
                std::to_string(tb.min_down_time));
    }
    for (const auto& ev : tp.stops) {
      if (ev.turbine != int(x)) continue;
      // completed on-run length before this stop, counting pre-horizon hours
      int begin = ev.hour - 1;
      while (begin > 1 && tp.on[x][size_t(begin - 2)]) --begin;
      int run = ev.hour - begin + (begin == 1 && tb.init_on ? tb.init_on_hours : 0);
      if (run < tb.min_up_time)
        add(ViolationCode::MIN_UP, ev.hour,
            tb.id + ": shut down after " + std::to_string(run) + "h on, needs " +
                std::to_string(tb.min_up_time));
    }
    if (tb.max_daily_starts) {
      for (int day = 1; (day - 1) * 24 < T; ++day) {
        int count = 0;
        for (const auto& ev : tp.starts)
          if (ev.turbine == int(x) && ev.hour > (day - 1) * 24 && ev.hour <= day * 24) ++count;
        if (count > *tb.max_daily_starts)
          add(ViolationCode::START_CAP, day,
              tb.id + ": " + std::to_string(count) + " starts on day " + std::to_string(day) +
                  ", cap " + std::to_string(*tb.max_daily_starts));
      }
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// Pricing

namespace detail {

inline double energy_cost_at(const Configuration& cfg, double p) {
  const auto& curve = cfg.cost_curve;
  if (cfg.is_off() || curve.empty()) {
    if (std::fabs(p) > 1e-9) throw std::runtime_error("nonzero dispatch on the all-off configuration");
    return 0.0;
  }
  if (p < curve.front().mw - 1e-9 || p > curve.back().mw + 1e-9)
    throw std::runtime_error("dispatch " + std::to_string(p) + " outside the cost curve of '" + cfg.id + "'");
  for (size_t k = 1; k < curve.size(); ++k) {
    if (p <= curve[k].mw + 1e-12) {
      double span = curve[k].mw - curve[k - 1].mw;
      double w = span <= 0 ? 0.0 : (p - curve[k - 1].mw) / span;
      return curve[k - 1].cost_per_h + w * (curve[k].cost_per_h - curve[k - 1].cost_per_h);
    }
  }
  return curve.back().cost_per_h;
}

// Lower convex envelope of the breakpoints at p: the cheapest convex
// combination of any two breakpoints bracketing p. Used as an independent
// check of the LP relaxation of the piecewise cost.
inline double energy_cost_envelope(const Configuration& cfg, double p) {
  const auto& curve = cfg.cost_curve;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < curve.size(); ++i)
    for (size_t j = i; j < curve.size(); ++j) {
      if (curve[i].mw - 1e-12 > p || curve[j].mw + 1e-12 < p) continue;
      double span = curve[j].mw - curve[i].mw;
      double w = span <= 0 ? 0.0 : (p - curve[i].mw) / span;
      best = std::min(best, curve[i].cost_per_h + w * (curve[j].cost_per_h - curve[i].cost_per_h));
    }
  return best;
}

}  // namespace detail

// Pure evaluation of a schedule's cost: piecewise energy cost at the hourly
// dispatch, no-load of the active configuration, and per-turbine startup
// costs typed by the realized downtime.
inline double schedule_cost(const CcgtPlant& plant, const PlantSchedule& sched) {
  double total = 0.0;
  const int T = int(sched.config_path.size());
  for (int t = 1; t <= T; ++t) {
    const auto& cfg = plant.configurations[size_t(sched.config_path[size_t(t - 1)])];
    total += detail::energy_cost_at(cfg, sched.dispatch_mw[size_t(t - 1)]) + cfg.no_load_cost;
  }
  TurbinePaths tp = derive_turbine_paths(plant, sched.config_path);
  for (const auto& ev : tp.starts) {
    const auto& tb = plant.turbines[size_t(ev.turbine)];
    total += tb.startup_tiers[size_t(classify_startup_index(tb, ev.downtime))].cost;
  }
  return total;
}

// What the configuration-based baseline would charge for the same path:
// every upward move is priced from its typed table, warmth selected by the
// plant's stay in the all-off configuration rather than each turbine's own
// downtime.
inline double cfbm_priced_cost(const CcgtPlant& plant, const CfbmData& cfbm, const PlantSchedule& sched) {
  double total = 0.0;
  const int T = int(sched.config_path.size());
  for (int t = 1; t <= T; ++t) {
    const auto& cfg = plant.configurations[size_t(sched.config_path[size_t(t - 1)])];
    total += detail::energy_cost_at(cfg, sched.dispatch_mw[size_t(t - 1)]) + cfg.no_load_cost;
  }
  int off = plant.off_config_index();
  int off_streak = detail::initial_plant_offline_hours(plant);
  int prev = plant.init_config_index();
  for (int t = 1; t <= T; ++t) {
    int cur = sched.config_path[size_t(t - 1)];
    if (cur != prev) {
      const Transition* tr = nullptr;
      for (const auto& cand : plant.transitions)
        if (plant.config_index(cand.from_config) == prev && plant.config_index(cand.to_config) == cur)
          tr = &cand;
      if (tr && !tr->started.empty()) {
        auto it = cfbm.transition_costs.find({tr->from_config, tr->to_config});
        if (it == cfbm.transition_costs.end())
          throw std::runtime_error("missing CFBM transition cost for '" + tr->from_config + ">" +
                                   tr->to_config + "'");
        // moves between live configurations carry no offline time: hot
        int w = prev != off || off_streak < cfbm.warm_after_hours ? 0
              : off_streak < cfbm.cold_after_hours                ? 1
                                                                  : 2;
        total += it->second[size_t(w)];
      }
    }
    off_streak = cur == off ? off_streak + 1 : 0;
    prev = cur;
  }
  return total;
}

}  // namespace ccgtuc
