// oracle.hpp
// Desk-scale ground truth: enumerate every configuration path, price the
// dispatch of each by dynamic programming on a MW grid, and return the
// cheapest schedule that passes direct validation. Also the integrality-gap
// metric used in the comparison reports.
#pragma once

#include <cfenv>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "ccgtuc/plant.hpp"
#include "ccgtuc/schedule.hpp"

namespace ccgtuc {

struct OracleResult {
  PlantSchedule schedule;
  double cost = std::numeric_limits<double>::infinity();
  // zero when every bound, ramp, demand and breakpoint is a multiple of the
  // grid step (the dispatch polytope then has only on-grid vertices)
  double grid_error_bound = 0.0;
};

namespace detail {

struct RunDispatch {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<double> dispatch;
};

// Optimal dispatch of one stay in configuration y over hours [a, b].
// `arrived` distinguishes entering the configuration at hour a (startup-ramp
// cap) from continuing the initial configuration (ramp against the initial
// output). Unserved demand is priced at value_of_lost_load.
inline RunDispatch solve_run(const CcgtPlant& plant, int y, int a, int b, bool arrived,
                             const std::vector<double>& demand, double voll, double grid) {
  const auto& cfg = plant.configurations[size_t(y)];
  RunDispatch out;
  const int n = b - a + 1;

  std::vector<std::vector<double>> levels(size_t(n));
  for (int i = 0; i < n; ++i) {
    int t = a + i;
    double lo = cfg.p_min_at(t);
    double hi = std::min(cfg.p_max_at(t), demand[size_t(t - 1)]);
    if (arrived && i == 0) hi = std::min(hi, cfg.startup_ramp);
    if (lo > hi + 1e-12) return out;  // no feasible output this hour
    auto& ls = levels[size_t(i)];
    for (double p = lo; p < hi - 1e-12; p += grid) ls.push_back(p);
    ls.push_back(hi);
    for (const auto& bp : cfg.cost_curve)
      if (bp.mw > lo + 1e-12 && bp.mw < hi - 1e-12) ls.push_back(bp.mw);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end(), [](double x, double q) { return std::fabs(x - q) < 1e-12; }),
             ls.end());
  }

  auto stage_cost = [&](int t, double p) {
    return energy_cost_at(cfg, p) + cfg.no_load_cost + voll * (demand[size_t(t - 1)] - p);
  };

  std::vector<double> cost(levels[0].size());
  std::vector<std::vector<int>> parent(size_t(n));
  for (size_t k = 0; k < levels[0].size(); ++k) {
    double p = levels[0][k];
    bool ok = true;
    if (!arrived && a == 1) {
      // continuing the initial configuration from its pre-horizon output
      ok = p - plant.init_power_mw <= cfg.ramp_up + 1e-9 &&
           plant.init_power_mw - p <= cfg.ramp_down + 1e-9;
    }
    cost[k] = ok ? stage_cost(a, p) : std::numeric_limits<double>::infinity();
  }

  for (int i = 1; i < n; ++i) {
    const auto& prev = levels[size_t(i - 1)];
    const auto& cur = levels[size_t(i)];
    std::vector<double> next(cur.size(), std::numeric_limits<double>::infinity());
    parent[size_t(i)].assign(cur.size(), -1);
    for (size_t k = 0; k < cur.size(); ++k) {
      double p = cur[k];
      // previous output q must satisfy p - q <= ramp_up and q - p <= ramp_down
      auto first = std::lower_bound(prev.begin(), prev.end(), p - cfg.ramp_up - 1e-9);
      for (auto it = first; it != prev.end() && *it <= p + cfg.ramp_down + 1e-9; ++it) {
        size_t q = size_t(it - prev.begin());
        if (cost[q] < next[k]) {
          next[k] = cost[q];
          parent[size_t(i)][k] = int(q);
        }
      }
      if (std::isfinite(next[k])) next[k] += stage_cost(a + i, p);
    }
    cost.swap(next);
  }

  size_t best = 0;
  for (size_t k = 1; k < cost.size(); ++k)
    if (cost[k] < cost[best]) best = k;
  if (!std::isfinite(cost[best])) return out;

  out.cost = cost[best];
  out.dispatch.assign(size_t(n), 0.0);
  int k = int(best);
  for (int i = n - 1; i >= 0; --i) {
    out.dispatch[size_t(i)] = levels[size_t(i)][size_t(k)];
    if (i > 0) k = parent[size_t(i)][size_t(k)];
  }
  return out;
}

// Minimum up/down, initial obligations and daily start caps for a candidate
// path; legality of each hop is guaranteed by construction.
inline bool path_commitment_ok(const CcgtPlant& plant, const std::vector<int>& path) {
  const int T = int(path.size());
  for (size_t x = 0; x < plant.turbines.size(); ++x) {
    const auto& tb = plant.turbines[x];
    int tu_r = std::max(0, tb.init_on ? tb.min_up_time - tb.init_on_hours : 0);
    int td_r = std::max(0, tb.init_on ? 0 : tb.min_down_time - tb.init_off_hours);
    bool prev_on = tb.init_on;
    int run_on = tb.init_on ? tb.init_on_hours : 0;
    int run_off = tb.init_on ? 0 : tb.init_off_hours;
    int day_starts = 0;
    for (int t = 1; t <= T; ++t) {
      bool on = plant.config_has_turbine(path[size_t(t - 1)], int(x));
      if (t <= tu_r + td_r && on != tb.init_on) return false;
      if (on && !prev_on) {
        if (run_off < tb.min_down_time) return false;
        if (tb.max_daily_starts && ++day_starts > *tb.max_daily_starts) return false;
        run_on = 0;
      }
      if (!on && prev_on) {
        if (run_on < tb.min_up_time) return false;
        run_off = 0;
      }
      if ((t - 1) % 24 == 0 && t > 1) day_starts = on && !prev_on ? day_starts : 0;
      if (on) ++run_on;
      else ++run_off;
      prev_on = on;
    }
  }
  return true;
}

}  // namespace detail

// Exhaustive optimum for small instances: all |Y|^T configuration paths are
// enumerated in lexicographic order (ties keep the earlier path), each valid
// path is priced via cached per-run dispatch programs, and startup costs are
// added from the realized downtimes.
inline OracleResult brute_force_optimal(const CcgtPlant& plant, const std::vector<double>& demand_mw,
                                        double value_of_lost_load, int horizon, double grid_step = 1.0) {
  require_valid(plant);
  if (horizon <= 0) throw std::runtime_error("oracle needs a positive horizon");
  if (int(demand_mw.size()) != horizon) throw std::runtime_error("demand array length must equal horizon");
  const size_t ny = plant.configurations.size();
  double paths = std::pow(double(ny), double(horizon));
  if (paths > 1e7)
    throw std::runtime_error("instance too large for enumeration (|Y|^T = " + std::to_string(paths) +
                             " > 1e7); use a smaller horizon or fewer configurations");

  // adjacency including stays
  std::vector<std::vector<char>> allowed(ny, std::vector<char>(ny, 0));
  for (size_t y = 0; y < ny; ++y) allowed[y][y] = 1;
  for (const auto& tr : plant.transitions)
    allowed[size_t(plant.config_index(tr.from_config))][size_t(plant.config_index(tr.to_config))] = 1;

  std::map<std::tuple<int, int, int, bool>, detail::RunDispatch> run_cache;
  auto run_of = [&](int y, int a, int b, bool arrived) -> const detail::RunDispatch& {
    auto key = std::make_tuple(y, a, b, arrived);
    auto it = run_cache.find(key);
    if (it == run_cache.end())
      it = run_cache.emplace(key, detail::solve_run(plant, y, a, b, arrived, demand_mw,
                                                    value_of_lost_load, grid_step))
               .first;
    return it->second;
  };

  OracleResult best;
  std::vector<int> path(size_t(horizon));
  int init = plant.init_config_index();

  // iterative DFS in configuration-index order
  std::vector<int> choice(size_t(horizon), -1);
  int depth = 0;
  while (depth >= 0) {
    int next = ++choice[size_t(depth)];
    if (next >= int(ny)) {
      choice[size_t(depth)] = -1;
      --depth;
      continue;
    }
    int prev = depth == 0 ? init : path[size_t(depth - 1)];
    if (!allowed[size_t(prev)][size_t(next)]) continue;
    path[size_t(depth)] = next;
    if (depth + 1 < horizon) {
      ++depth;
      continue;
    }

    if (!detail::path_commitment_ok(plant, path)) continue;

    double cost = 0.0;
    bool feasible = true;
    PlantSchedule sched;
    sched.config_path = path;
    sched.dispatch_mw.assign(size_t(horizon), 0.0);
    int a = 1;
    for (int t = 2; t <= horizon + 1 && feasible; ++t) {
      if (t <= horizon && path[size_t(t - 1)] == path[size_t(a - 1)]) continue;
      int y = path[size_t(a - 1)];
      bool arrived = !(a == 1 && y == init);
      const auto& run = run_of(y, a, t - 1, arrived);
      if (!std::isfinite(run.cost)) {
        feasible = false;
        break;
      }
      cost += run.cost;
      for (int i = a; i <= t - 1; ++i) sched.dispatch_mw[size_t(i - 1)] = run.dispatch[size_t(i - a)];
      a = t;
    }
    if (!feasible) continue;

    TurbinePaths tp = derive_turbine_paths(plant, path);
    for (const auto& ev : tp.starts) {
      const auto& tb = plant.turbines[size_t(ev.turbine)];
      cost += tb.startup_tiers[size_t(classify_startup_index(tb, ev.downtime))].cost;
    }
    if (cost < best.cost - 1e-12) {
      best.cost = cost;
      best.schedule = std::move(sched);
    }
  }

  if (!std::isfinite(best.cost)) throw std::runtime_error("no feasible schedule exists for this instance");

  // grid error vanishes when all dispatch-polytope data sit on the grid
  bool on_grid = true;
  auto check = [&](double v) {
    if (std::fabs(v / grid_step - std::round(v / grid_step)) > 1e-9) on_grid = false;
  };
  double max_slope = 0.0;
  for (const auto& cfg : plant.configurations) {
    for (double v : cfg.p_min) check(v);
    for (double v : cfg.p_max) check(v);
    if (!cfg.is_off()) {
      check(cfg.ramp_up);
      check(cfg.ramp_down);
      check(cfg.startup_ramp);
    }
    for (size_t k = 0; k < cfg.cost_curve.size(); ++k) {
      check(cfg.cost_curve[k].mw);
      if (k > 0)
        max_slope = std::max(max_slope, std::fabs(cfg.cost_curve[k].cost_per_h -
                                                  cfg.cost_curve[k - 1].cost_per_h) /
                                            (cfg.cost_curve[k].mw - cfg.cost_curve[k - 1].mw));
    }
  }
  for (double v : demand_mw) check(v);
  check(plant.init_power_mw);
  best.grid_error_bound = on_grid ? 0.0 : horizon * grid_step * (max_slope + value_of_lost_load);
  return best;
}

// Integrality gap in percent, rounded half-even to 4 decimals as reported.
inline double igap(double mip_obj, double lp_obj) {
  if (!(mip_obj > 0)) throw std::runtime_error("igap needs a positive MIP objective");
  double r = 100.0 * (mip_obj - lp_obj) / mip_obj;
  return std::nearbyint(r * 1e4) / 1e4;  // FE_TONEAREST rounds half to even
}

}  // namespace ccgtuc
