// formulation.hpp
// Builds the configuration-component MILP of one combined-cycle plant: the
// hybrid model (configuration commitment and transition variables plus
// per-turbine minimum up/down and time-dependent startup typing recovered
// through the mapping matrices), the configuration-based baseline with typed
// transition costs, and the formulation variants used for benchmarking.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccgtuc/linear_model.hpp"
#include "ccgtuc/plant.hpp"

namespace ccgtuc {

enum class Variant { F1, F2, F3, F4, F5, CFBM, HM1 };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::F1: return "F1";
    case Variant::F2: return "F2";
    case Variant::F3: return "F3";
    case Variant::F4: return "F4";
    case Variant::F5: return "F5";
    case Variant::CFBM: return "CFBM";
    case Variant::HM1: return "HM1";
  }
  return "?";
}

inline Variant variant_from_string(std::string s) {
  for (auto& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
  if (s == "F1") return Variant::F1;
  if (s == "F2") return Variant::F2;
  if (s == "F3") return Variant::F3;
  if (s == "F4") return Variant::F4;
  if (s == "F5") return Variant::F5;
  if (s == "CFBM") return Variant::CFBM;
  if (s == "HM1" || s == "HM-1") return Variant::HM1;
  throw std::runtime_error("unknown variant '" + s + "'");
}

enum class TransitionLogic { config_eq10, pt_eq27, both };

// Configuration-based baseline data: typed transition costs and the
// plant-offline thresholds that select the warmth of each upward move.
struct CfbmData {
  int warm_after_hours = 6;   // offline hours at which a start is no longer hot
  int cold_after_hours = 24;  // offline hours at which a start becomes cold
  // (from, to) -> costs for (hot, intermediate, cold)
  std::map<std::pair<std::string, std::string>, std::array<double, 3>> transition_costs;
  // optional configuration-level minimum up/down hours
  std::map<std::string, int> config_min_up;
  std::map<std::string, int> config_min_down;
};

struct PlantBlock;  // below

struct BuildOptions {
  Variant variant = Variant::F1;
  TransitionLogic transition_logic = TransitionLogic::config_eq10;
  VarDomain transition_vars = VarDomain::binary;
  VarDomain startup_indicator_vars = VarDomain::binary;
  // restrict Eqs. of minimum up/down to these turbines; empty = all
  std::optional<std::vector<std::string>> per_turbine_min_updown_selection;
  bool include_daily_start_caps = true;
  // reserved extension point for the extra tightening constraint that F1/F5
  // differ by; unused until its algebra is available
  std::function<void(MilpModel&, const PlantBlock&)> extra_tightening_hook;

  bool cfbm_based() const { return variant == Variant::CFBM || variant == Variant::HM1; }

  static BuildOptions preset(Variant v) {
    BuildOptions o;
    o.variant = v;
    switch (v) {
      case Variant::F1:
      case Variant::F5:
        break;
      case Variant::F2:
        o.transition_logic = TransitionLogic::pt_eq27;
        break;
      case Variant::F3:
        o.transition_logic = TransitionLogic::both;
        break;
      case Variant::F4:
        o.transition_vars = VarDomain::continuous;
        break;
      case Variant::CFBM:
      case Variant::HM1:
        break;
    }
    return o;
  }
};

// Variable tables of one plant inside a model. Hour t in 1..T is stored at
// index t-1; variable entries are indices into MilpModel::variables.
struct PlantBlock {
  const CcgtPlant* plant = nullptr;
  const CfbmData* cfbm = nullptr;
  MappingMatrices mapping;
  int horizon = 0;
  bool typed_transitions = false;  // baseline-style typed upward moves

  std::vector<std::vector<int>> u;               // [y][t-1] commitment
  std::vector<std::vector<int>> p;               // [y][t-1] dispatch
  std::vector<std::vector<int>> v;               // [tau][t-1]; -1 where typed
  std::vector<std::array<std::vector<int>, 3>> vw;  // [tau][w-1][t-1] typed moves
  std::vector<std::vector<std::vector<int>>> lam;   // [y][t-1][k] cost weights
  std::vector<std::vector<std::vector<int>>> delta; // [x][t-1][w-1] startup types

  int init_index = -1;
  double u0(int y) const { return y == init_index ? 1.0 : 0.0; }
  double p0(int y) const { return y == init_index ? plant->init_power_mw : 0.0; }
};

namespace detail {

inline std::string hour(int t) { return "_t" + std::to_string(t); }

inline std::string trn_name(const CcgtPlant& plant, int tau) {
  const auto& tr = plant.transitions[size_t(tau)];
  return tr.from_config + "_" + tr.to_config;
}

// Adds the transition occurrence of tau at t (the variable itself, or the
// sum over warmth types when the move is typed).
inline void add_transition_term(RowBuilder& row, const PlantBlock& b, int tau, int t, double coef) {
  if (!b.vw.empty() && !b.vw[size_t(tau)][0].empty()) {
    for (int w = 0; w < 3; ++w) row.add(b.vw[size_t(tau)][size_t(w)][size_t(t - 1)], coef);
  } else {
    row.add(b.v[size_t(tau)][size_t(t - 1)], coef);
  }
}

inline bool transition_is_typed(const PlantBlock& b, int tau) {
  return !b.vw.empty() && !b.vw[size_t(tau)][0].empty();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Variable declaration

inline void declare_plant_variables(MilpModel& model, PlantBlock& b, const BuildOptions& options) {
  const auto& plant = *b.plant;
  const int T = b.horizon;
  const std::string pn = plant.name;
  b.init_index = plant.init_config_index();

  b.u.assign(plant.configurations.size(), {});
  b.p.assign(plant.configurations.size(), {});
  b.lam.assign(plant.configurations.size(), {});
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    const auto& cfg = plant.configurations[y];
    for (int t = 1; t <= T; ++t) {
      b.u[y].push_back(model.add_binary("u_" + pn + "_" + cfg.id + detail::hour(t)));
      b.p[y].push_back(model.add_variable("p_" + pn + "_" + cfg.id + detail::hour(t),
                                          VarDomain::continuous, 0.0, cfg.p_max_at(t)));
    }
    if (!cfg.is_off()) {
      b.lam[y].assign(size_t(T), {});
      for (int t = 1; t <= T; ++t)
        for (size_t k = 0; k < cfg.cost_curve.size(); ++k)
          b.lam[y][size_t(t - 1)].push_back(
              model.add_variable("l_" + pn + "_" + cfg.id + detail::hour(t) + "_k" + std::to_string(k),
                                 VarDomain::continuous, 0.0, 1.0));
    }
  }

  b.v.assign(plant.transitions.size(), {});
  if (b.typed_transitions) b.vw.assign(plant.transitions.size(), {});
  for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
    const auto& tr = plant.transitions[tau];
    int from = plant.config_index(tr.from_config);
    bool typed = b.typed_transitions && !tr.started.empty();
    for (int t = 1; t <= T; ++t) {
      if (typed) {
        b.v[tau].push_back(-1);
        for (int w = 1; w <= 3; ++w) {
          int var = model.add_binary("vw_" + pn + "_" + detail::trn_name(plant, int(tau)) +
                                     detail::hour(t) + "_w" + std::to_string(w));
          // a move out of a live configuration carries no offline time: hot only
          if (w > 1 && !plant.configurations[size_t(from)].is_off()) model.fix_variable(var, 0.0);
          // the source configuration must have been active the hour before
          if (t == 1 && from != b.init_index) model.fix_variable(var, 0.0);
          b.vw[tau][size_t(w - 1)].push_back(var);
        }
      } else {
        int var = model.add_variable("v_" + pn + "_" + detail::trn_name(plant, int(tau)) + detail::hour(t),
                                     options.transition_vars, 0.0, 1.0);
        if (t == 1 && from != b.init_index) model.fix_variable(var, 0.0);
        b.v[tau].push_back(var);
      }
    }
  }

  if (!options.cfbm_based()) {
    b.delta.assign(plant.turbines.size(), {});
    for (size_t x = 0; x < plant.turbines.size(); ++x) {
      const auto& tiers = plant.turbines[x].startup_tiers;
      b.delta[x].assign(size_t(T), {});
      for (int t = 1; t <= T; ++t)
        for (size_t w = 0; w < tiers.size(); ++w)
          b.delta[x][size_t(t - 1)].push_back(
              model.add_variable("d_" + pn + "_" + plant.turbines[x].id + detail::hour(t) +
                                     "_w" + std::to_string(w + 1),
                                 options.startup_indicator_vars, 0.0, 1.0));
    }
  }
}

// ---------------------------------------------------------------------------
// Constraint families

// One configuration is active per hour.
inline void add_exclusivity(MilpModel& model, const PlantBlock& b) {
  for (int t = 1; t <= b.horizon; ++t) {
    RowBuilder row;
    for (size_t y = 0; y < b.u.size(); ++y) row.add(b.u[y][size_t(t - 1)], 1.0);
    model.add_constraint("excl_" + b.plant->name + detail::hour(t), row.take(), Sense::eq, 1.0, "exclusivity");
  }
}

// Transition variables describe one real move per hour: each requires its
// source configuration active in the previous hour, and at most one fires.
// Commitment balance alone admits one-hour multi-hop chains and phantom
// start/stop cycles at integer points; these rows close that gap and make
// the extracted configuration path well defined in every variant.
inline void add_transition_support(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
    int from = plant.config_index(plant.transitions[tau].from_config);
    for (int t = 2; t <= b.horizon; ++t) {  // t = 1 is fixed through bounds
      RowBuilder row;
      detail::add_transition_term(row, b, int(tau), t, 1.0);
      row.add(b.u[size_t(from)][size_t(t - 2)], -1.0);
      model.add_constraint("src_" + plant.name + "_" + detail::trn_name(plant, int(tau)) + detail::hour(t),
                           row.take(), Sense::le, 0.0, "transition_support");
    }
  }
  for (int t = 1; t <= b.horizon; ++t) {
    RowBuilder row;
    for (size_t tau = 0; tau < plant.transitions.size(); ++tau)
      detail::add_transition_term(row, b, int(tau), t, 1.0);
    if (row.empty()) continue;
    model.add_constraint("one_" + plant.name + detail::hour(t), row.take(), Sense::le, 1.0,
                         "transition_support");
  }
}

// Commitment balance per configuration: a status change is carried by the
// feasible transitions into and out of it.
inline void add_transition_logic_config(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    for (int t = 1; t <= b.horizon; ++t) {
      RowBuilder row;
      row.add(b.u[y][size_t(t - 1)], 1.0);
      double rhs = 0.0;
      if (t == 1) rhs = b.u0(int(y));
      else row.add(b.u[y][size_t(t - 2)], -1.0);
      for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
        const auto& tr = plant.transitions[tau];
        if (plant.config_index(tr.to_config) == int(y)) detail::add_transition_term(row, b, int(tau), t, -1.0);
        if (plant.config_index(tr.from_config) == int(y)) detail::add_transition_term(row, b, int(tau), t, 1.0);
      }
      model.add_constraint("trn_" + plant.name + "_" + plant.configurations[y].id + detail::hour(t),
                           row.take(), Sense::eq, rhs, "transition_config");
    }
  }
}

// The same balance written per physical turbine: summing the configuration
// rows over ON^x cancels moves internal to ON^x and leaves the started and
// stopped transition sets of the turbine.
inline void add_transition_logic_pt(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    for (int t = 1; t <= b.horizon; ++t) {
      RowBuilder row;
      double rhs = 0.0;
      for (int y : b.mapping.on_sets[x]) {
        row.add(b.u[size_t(y)][size_t(t - 1)], 1.0);
        if (t == 1) rhs += b.u0(y);
        else row.add(b.u[size_t(y)][size_t(t - 2)], -1.0);
      }
      for (int tau : b.mapping.ut_sets[x]) detail::add_transition_term(row, b, tau, t, -1.0);
      for (int tau : b.mapping.dt_sets[x]) detail::add_transition_term(row, b, tau, t, 1.0);
      model.add_constraint("trnpt_" + plant.name + "_" + plant.turbines[x].id + detail::hour(t),
                           row.take(), Sense::eq, rhs, "transition_pt");
    }
  }
}

// Dispatch limits tied to commitment.
inline void add_capacity(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    const auto& cfg = plant.configurations[y];
    for (int t = 1; t <= b.horizon; ++t) {
      RowBuilder lo;
      lo.add(b.p[y][size_t(t - 1)], 1.0);
      lo.add(b.u[y][size_t(t - 1)], -cfg.p_min_at(t));
      model.add_constraint("cplo_" + plant.name + "_" + cfg.id + detail::hour(t), lo.take(), Sense::ge, 0.0,
                           "capacity");
      RowBuilder hi;
      hi.add(b.p[y][size_t(t - 1)], 1.0);
      hi.add(b.u[y][size_t(t - 1)], -cfg.p_max_at(t));
      model.add_constraint("cphi_" + plant.name + "_" + cfg.id + detail::hour(t), hi.take(), Sense::le, 0.0,
                           "capacity");
    }
  }
}

// Ramping. Upward moves are capped by the committed rate, opened up to the
// startup rate of the destination configuration on the hour it is entered.
// Shutdown hours are unramped: output may fall from any level to zero.
inline void add_ramps(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    const auto& cfg = plant.configurations[y];
    for (int t = 1; t <= b.horizon; ++t) {
      RowBuilder up;
      up.add(b.p[y][size_t(t - 1)], 1.0);
      double rhs_up = cfg.ramp_up;
      if (t == 1) rhs_up += b.p0(int(y));
      else up.add(b.p[y][size_t(t - 2)], -1.0);
      for (size_t tau = 0; tau < plant.transitions.size(); ++tau)
        if (plant.config_index(plant.transitions[tau].to_config) == int(y))
          detail::add_transition_term(up, b, int(tau), t, -(cfg.startup_ramp - cfg.ramp_up));
      model.add_constraint("rup_" + plant.name + "_" + cfg.id + detail::hour(t), up.take(), Sense::le,
                           rhs_up, "ramps");

      double pbar_prev = cfg.p_max_at(t == 1 ? 1 : t - 1);
      RowBuilder dn;
      dn.add(b.p[y][size_t(t - 1)], -1.0);
      dn.add(b.u[y][size_t(t - 1)], pbar_prev - cfg.ramp_down);
      double rhs_dn = pbar_prev;
      if (t == 1) rhs_dn -= b.p0(int(y));
      else dn.add(b.p[y][size_t(t - 2)], 1.0);
      model.add_constraint("rdn_" + plant.name + "_" + cfg.id + detail::hour(t), dn.take(), Sense::le,
                           rhs_dn, "ramps");
    }
  }
}

// Facet-form minimum up/down rows on individual turbines, expressed with
// configuration variables through the mapping sets.
inline void add_min_updown(MilpModel& model, const PlantBlock& b,
                           const std::optional<std::vector<std::string>>& selection = std::nullopt) {
  const auto& plant = *b.plant;
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    if (selection && !selection->empty() &&
        std::find(selection->begin(), selection->end(), tb.id) == selection->end())
      continue;
    for (int t = tb.min_up_time; t <= b.horizon; ++t) {
      RowBuilder row;
      for (int tp = t - tb.min_up_time + 1; tp <= t; ++tp)
        for (int tau : b.mapping.ut_sets[x]) detail::add_transition_term(row, b, tau, tp, 1.0);
      for (int y : b.mapping.on_sets[x]) row.add(b.u[size_t(y)][size_t(t - 1)], -1.0);
      model.add_constraint("mup_" + plant.name + "_" + tb.id + detail::hour(t), row.take(), Sense::le, 0.0,
                           "min_updown");
    }
    for (int t = tb.min_down_time; t <= b.horizon; ++t) {
      RowBuilder row;
      for (int tp = t - tb.min_down_time + 1; tp <= t; ++tp)
        for (int tau : b.mapping.dt_sets[x]) detail::add_transition_term(row, b, tau, tp, 1.0);
      for (int y : b.mapping.on_sets[x]) row.add(b.u[size_t(y)][size_t(t - 1)], 1.0);
      model.add_constraint("mdn_" + plant.name + "_" + tb.id + detail::hour(t), row.take(), Sense::le, 1.0,
                           "min_updown");
    }
  }
}

// Remaining initial on/off obligations pin the turbine status, and with it
// the reachable configurations, over the leading hours.
inline void add_initial_conditions(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    int tu_r = std::max(0, tb.init_on ? tb.min_up_time - tb.init_on_hours : 0);
    int td_r = std::max(0, tb.init_on ? 0 : tb.min_down_time - tb.init_off_hours);
    int span = std::min(b.horizon, tu_r + td_r);
    for (int t = 1; t <= span; ++t) {
      RowBuilder row;
      for (int y : b.mapping.on_sets[x]) row.add(b.u[size_t(y)][size_t(t - 1)], 1.0);
      model.add_constraint("ini_" + plant.name + "_" + tb.id + detail::hour(t), row.take(), Sense::eq,
                           tb.init_on ? 1.0 : 0.0, "initial_conditions");
    }
  }
}

// Startup-type selection. A non-coldest type w is selectable at t only if
// some shutdown of the turbine falls in [T_w, T_{w+1}) hours before t; when
// the turbine has been off since before the horizon, the type matching its
// accumulated downtime is released instead. Every start picks exactly one
// type, whose cost enters the objective.
inline void add_startup_types(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    const auto& tiers = tb.startup_tiers;
    const int K = int(tiers.size());

    for (int t = 1; t <= b.horizon; ++t) {
      RowBuilder link;
      for (int w = 0; w < K; ++w) link.add(b.delta[x][size_t(t - 1)][size_t(w)], 1.0);
      for (int tau : b.mapping.ut_sets[x]) detail::add_transition_term(link, b, tau, t, -1.0);
      model.add_constraint("sue_" + plant.name + "_" + tb.id + detail::hour(t), link.take(), Sense::eq, 0.0,
                           "startup_link");
    }

    for (int w = 1; w < K; ++w) {
      int lo = tiers[size_t(w - 1)].min_down_for_type;
      int hi = tiers[size_t(w)].min_down_for_type;  // exclusive
      for (int t = 1; t <= b.horizon; ++t) {
        if (!tb.init_on) {
          int initial_downtime = t - 1 + tb.init_off_hours;
          if (initial_downtime >= lo && initial_downtime < hi) continue;  // type w available
        }
        RowBuilder row;
        row.add(b.delta[x][size_t(t - 1)][size_t(w - 1)], 1.0);
        for (int d = lo; d < hi; ++d)
          if (t - d >= 1)
            for (int tau : b.mapping.dt_sets[x]) detail::add_transition_term(row, b, tau, t - d, -1.0);
        model.add_constraint("sut_" + plant.name + "_" + tb.id + detail::hour(t) + "_w" + std::to_string(w),
                             row.take(), Sense::le, 0.0, "startup_types");
      }
    }

    for (int t = 1; t <= b.horizon; ++t)
      for (int w = 0; w < K; ++w)
        model.add_objective_term(b.delta[x][size_t(t - 1)][size_t(w)], tiers[size_t(w)].cost);
  }
}

// Energy cost as a convex combination over curve breakpoints (one SOS2 set
// per configuration and hour), plus no-load cost on commitment. The weights
// sum to the commitment variable, so an uncommitted configuration
// contributes zero output and zero cost.
inline void add_objective(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    const auto& cfg = plant.configurations[y];
    for (int t = 1; t <= b.horizon; ++t) {
      if (cfg.no_load_cost != 0.0) model.add_objective_term(b.u[y][size_t(t - 1)], cfg.no_load_cost);
      if (cfg.is_off()) continue;
      const auto& lam = b.lam[y][size_t(t - 1)];
      RowBuilder pdef;
      pdef.add(b.p[y][size_t(t - 1)], 1.0);
      for (size_t k = 0; k < lam.size(); ++k) pdef.add(lam[k], -cfg.cost_curve[k].mw);
      model.add_constraint("pdef_" + plant.name + "_" + cfg.id + detail::hour(t), pdef.take(), Sense::eq,
                           0.0, "piecewise_cost");
      RowBuilder lsum;
      for (size_t k = 0; k < lam.size(); ++k) lsum.add(lam[k], 1.0);
      lsum.add(b.u[y][size_t(t - 1)], -1.0);
      model.add_constraint("lsum_" + plant.name + "_" + cfg.id + detail::hour(t), lsum.take(), Sense::eq,
                           0.0, "piecewise_cost");
      std::vector<std::pair<int, double>> members;
      for (size_t k = 0; k < lam.size(); ++k) members.emplace_back(lam[k], cfg.cost_curve[k].mw);
      model.add_sos2("sos_" + plant.name + "_" + cfg.id + detail::hour(t), std::move(members));
      for (size_t k = 0; k < lam.size(); ++k)
        model.add_objective_term(lam[k], cfg.cost_curve[k].cost_per_h);
    }
  }
}

// Per-turbine cap on starts within each civil day of the horizon.
inline void add_daily_start_caps(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    if (!tb.max_daily_starts) continue;
    for (int day = 1; (day - 1) * 24 < b.horizon; ++day) {
      int first = (day - 1) * 24 + 1;
      int last = std::min(day * 24, b.horizon);
      RowBuilder row;
      for (int t = first; t <= last; ++t)
        for (int tau : b.mapping.ut_sets[x]) detail::add_transition_term(row, b, tau, t, 1.0);
      if (row.empty()) continue;
      model.add_constraint("cap_" + plant.name + "_" + tb.id + "_d" + std::to_string(day), row.take(),
                           Sense::le, double(*tb.max_daily_starts), "daily_start_caps");
    }
  }
}

// ---------------------------------------------------------------------------
// Configuration-based baseline (typed transition costs)

namespace detail {

// Consecutive hours the plant has been in the all-off configuration before
// the horizon starts: the time since the last turbine shut down.
inline int initial_plant_offline_hours(const CcgtPlant& plant) {
  if (plant.init_config_index() != plant.off_config_index()) return 0;
  int d = 0;
  bool first = true;
  for (const auto& x : plant.turbines) {
    int h = x.init_on ? 0 : x.init_off_hours;
    if (first || h < d) d = h;
    first = false;
  }
  return d;
}

}  // namespace detail

// Warmth selection for typed transitions: a move out of the all-off
// configuration may take type w only if the plant entered all-off within
// the matching window of hours before; moves between live configurations
// are fixed hot at declaration. The plant-offline clock approximates each
// turbine's own downtime, which is the baseline's known inaccuracy.
inline void add_cfbm_warmth(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  const auto& cfbm = *b.cfbm;
  int off = plant.off_config_index();
  int d0 = detail::initial_plant_offline_hours(plant);
  const int h2 = cfbm.warm_after_hours, h3 = cfbm.cold_after_hours;

  std::vector<int> into_off;
  for (size_t tau = 0; tau < plant.transitions.size(); ++tau)
    if (plant.config_index(plant.transitions[tau].to_config) == off) into_off.push_back(int(tau));

  for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
    const auto& tr = plant.transitions[tau];
    if (!detail::transition_is_typed(b, int(tau))) continue;
    if (plant.config_index(tr.from_config) != off) continue;
    for (int w = 1; w <= 2; ++w) {
      int lo = w == 1 ? 1 : h2;
      int hi = w == 1 ? h2 : h3;  // exclusive
      for (int t = 1; t <= b.horizon; ++t) {
        if (d0 > 0) {
          int initial = t - 1 + d0;
          if (initial >= lo && initial < hi) continue;  // warmth released by initial offline time
        }
        RowBuilder row;
        row.add(b.vw[tau][size_t(w - 1)][size_t(t - 1)], 1.0);
        for (int d = lo; d < hi; ++d)
          if (t - d >= 1)
            for (int tau2 : into_off) detail::add_transition_term(row, b, tau2, t - d, -1.0);
        model.add_constraint("wrm_" + plant.name + "_" + detail::trn_name(plant, int(tau)) +
                                 detail::hour(t) + "_w" + std::to_string(w),
                             row.take(), Sense::le, 0.0, "cfbm_warmth");
      }
    }
  }

  for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
    if (!detail::transition_is_typed(b, int(tau))) continue;
    const auto& tr = plant.transitions[tau];
    auto it = cfbm.transition_costs.find({tr.from_config, tr.to_config});
    if (it == cfbm.transition_costs.end())
      throw std::runtime_error("missing CFBM transition cost for '" + tr.from_config + ">" +
                               tr.to_config + "' of plant '" + plant.name + "'");
    for (int t = 1; t <= b.horizon; ++t)
      for (int w = 0; w < 3; ++w)
        model.add_objective_term(b.vw[tau][size_t(w)][size_t(t - 1)], it->second[size_t(w)]);
  }
}

// Optional configuration-level minimum up/down rows for the baseline.
inline void add_cfbm_config_min_updown(MilpModel& model, const PlantBlock& b) {
  const auto& plant = *b.plant;
  const auto& cfbm = *b.cfbm;
  for (size_t y = 0; y < plant.configurations.size(); ++y) {
    const auto& cfg = plant.configurations[y];
    std::vector<int> into, outof;
    for (size_t tau = 0; tau < plant.transitions.size(); ++tau) {
      if (plant.config_index(plant.transitions[tau].to_config) == int(y)) into.push_back(int(tau));
      if (plant.config_index(plant.transitions[tau].from_config) == int(y)) outof.push_back(int(tau));
    }
    auto mu = cfbm.config_min_up.find(cfg.id);
    if (mu != cfbm.config_min_up.end()) {
      for (int t = mu->second; t <= b.horizon; ++t) {
        RowBuilder row;
        for (int tp = t - mu->second + 1; tp <= t; ++tp)
          for (int tau : into) detail::add_transition_term(row, b, tau, tp, 1.0);
        row.add(b.u[y][size_t(t - 1)], -1.0);
        model.add_constraint("cmu_" + plant.name + "_" + cfg.id + detail::hour(t), row.take(), Sense::le,
                             0.0, "cfbm_config_min_updown");
      }
    }
    auto md = cfbm.config_min_down.find(cfg.id);
    if (md != cfbm.config_min_down.end()) {
      for (int t = md->second; t <= b.horizon; ++t) {
        RowBuilder row;
        for (int tp = t - md->second + 1; tp <= t; ++tp)
          for (int tau : outof) detail::add_transition_term(row, b, tau, tp, 1.0);
        row.add(b.u[y][size_t(t - 1)], 1.0);
        model.add_constraint("cmd_" + plant.name + "_" + cfg.id + detail::hour(t), row.take(), Sense::le,
                             1.0, "cfbm_config_min_updown");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Per-plant orchestration

// Adds one plant's variables and constraint families to the model per the
// selected variant and returns the variable tables.
inline PlantBlock add_plant_block(MilpModel& model, const CcgtPlant& plant, const BuildOptions& options,
                                  int horizon, const CfbmData* cfbm = nullptr) {
  require_valid(plant);
  PlantBlock b;
  b.plant = &plant;
  b.cfbm = cfbm;
  b.mapping = derive_mapping(plant);
  b.horizon = horizon;
  b.typed_transitions = options.cfbm_based();
  if (b.typed_transitions && cfbm == nullptr)
    throw std::runtime_error("variant " + std::string(to_string(options.variant)) +
                             " needs a CFBM transition cost table for plant '" + plant.name + "'");

  declare_plant_variables(model, b, options);
  add_exclusivity(model, b);
  add_transition_support(model, b);
  if (options.cfbm_based()) {
    add_transition_logic_config(model, b);
  } else {
    if (options.transition_logic == TransitionLogic::config_eq10 ||
        options.transition_logic == TransitionLogic::both)
      add_transition_logic_config(model, b);
    if (options.transition_logic == TransitionLogic::pt_eq27 ||
        options.transition_logic == TransitionLogic::both)
      add_transition_logic_pt(model, b);
  }
  add_capacity(model, b);
  add_ramps(model, b);
  add_objective(model, b);
  if (options.cfbm_based()) {
    add_cfbm_warmth(model, b);
    add_cfbm_config_min_updown(model, b);
    if (options.variant == Variant::HM1) {
      add_min_updown(model, b, options.per_turbine_min_updown_selection);
      add_initial_conditions(model, b);
    }
  } else {
    add_min_updown(model, b, options.per_turbine_min_updown_selection);
    add_initial_conditions(model, b);
    add_startup_types(model, b);
    if (options.include_daily_start_caps) add_daily_start_caps(model, b);
  }
  if (options.extra_tightening_hook) options.extra_tightening_hook(model, b);
  return b;
}

// ---------------------------------------------------------------------------
// Single-bus assembly

struct SystemContext {
  std::vector<double> demand_mw;  // empty = no balance rows
  double value_of_lost_load = 0.0;
};

struct BuiltModel {
  MilpModel model;
  std::vector<PlantBlock> blocks;
  std::vector<int> shed;  // variable per hour, empty when no balance
};

inline void add_balance(MilpModel& model, BuiltModel& built, const SystemContext& ctx, int horizon) {
  if (ctx.demand_mw.empty()) return;
  if (int(ctx.demand_mw.size()) != horizon)
    throw std::runtime_error("demand array length does not match the horizon");
  for (int t = 1; t <= horizon; ++t) {
    double demand = ctx.demand_mw[size_t(t - 1)];
    int shed = model.add_variable("shed" + detail::hour(t), VarDomain::continuous, 0.0,
                                  std::max(0.0, demand));
    built.shed.push_back(shed);
    model.add_objective_term(shed, ctx.value_of_lost_load);
    RowBuilder row;
    for (const auto& blk : built.blocks)
      for (size_t y = 0; y < blk.p.size(); ++y) row.add(blk.p[y][size_t(t - 1)], 1.0);
    row.add(shed, 1.0);
    model.add_constraint("bal" + detail::hour(t), row.take(), Sense::eq, demand, "balance");
  }
}

// Builds the full model of a single plant against an optional single-bus
// context. Metadata records the variant and per-family row counts.
inline BuiltModel build_model(const CcgtPlant& plant, const BuildOptions& options, int horizon,
                              const SystemContext& ctx = {}, const CfbmData* cfbm = nullptr) {
  BuiltModel built;
  built.model.name = plant.name + "_" + to_string(options.variant) + "_t" + std::to_string(horizon);
  built.model.metadata.variant = to_string(options.variant);
  built.model.metadata.horizon = horizon;
  built.model.metadata.notes.push_back("eq12_entry_rate=startup_ramp_of_destination");
  if (options.variant == Variant::F5)
    built.model.metadata.notes.push_back("f5_alias_of_f1_extra_tightening_unavailable");
  if (options.cfbm_based())
    built.model.metadata.notes.push_back("cfbm_warmth=plant_hours_in_all_off_before_start");
  built.blocks.push_back(add_plant_block(built.model, plant, options, horizon, cfbm));
  add_balance(built.model, built, ctx, horizon);
  return built;
}

inline MilpModel build(const CcgtPlant& plant, const BuildOptions& options, int horizon,
                       const SystemContext& ctx = {}, const CfbmData* cfbm = nullptr) {
  return build_model(plant, options, horizon, ctx, cfbm).model;
}

}  // namespace ccgtuc
