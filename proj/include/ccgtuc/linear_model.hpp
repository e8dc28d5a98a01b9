// linear_model.hpp
// Solver-neutral MILP container: variables, linear rows, SOS2 sets and a
// minimization objective, all in deterministic declaration order.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccgtuc {

enum class VarDomain { continuous, binary };

struct VariableRef {
  std::string name;
  VarDomain domain = VarDomain::continuous;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

struct LinearTerm {
  int var = -1;
  double coef = 0.0;
};

enum class Sense { le, eq, ge };

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;  // no duplicate variables
  Sense sense = Sense::le;
  double rhs = 0.0;
};

struct Sos2Set {
  std::string name;
  std::vector<std::pair<int, double>> members;  // (variable, weight), weights strictly increasing
};

struct ModelMetadata {
  std::string variant;
  int horizon = 0;
  // constraint-family name -> emitted row count, e.g. "transition_config"
  std::map<std::string, int> family_rows;
  std::vector<std::string> notes;
};

// Accumulates terms for one row, merging duplicate variables.
class RowBuilder {
 public:
  void add(int var, double coef) {
    if (coef == 0.0) return;
    auto it = pos_.find(var);
    if (it == pos_.end()) {
      pos_.emplace(var, terms_.size());
      terms_.push_back(LinearTerm{var, coef});
    } else {
      terms_[it->second].coef += coef;
    }
  }
  std::vector<LinearTerm> take() {
    pos_.clear();
    std::vector<LinearTerm> out;
    out.swap(terms_);
    return out;
  }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<LinearTerm> terms_;
  std::unordered_map<int, size_t> pos_;
};

class MilpModel {
 public:
  std::string name = "model";
  std::vector<VariableRef> variables;
  std::vector<LinearConstraint> constraints;
  std::vector<Sos2Set> sos2_sets;
  std::vector<LinearTerm> objective;  // minimize
  ModelMetadata metadata;

  int add_variable(std::string vname, VarDomain domain, double lo, double hi) {
    if (!by_name_.emplace(vname, int(variables.size())).second)
      throw std::runtime_error("duplicate variable name '" + vname + "'");
    if (!(lo <= hi)) throw std::runtime_error("bad bounds for '" + vname + "'");
    variables.push_back(VariableRef{std::move(vname), domain, lo, hi});
    return int(variables.size()) - 1;
  }
  int add_binary(std::string vname) { return add_variable(std::move(vname), VarDomain::binary, 0.0, 1.0); }

  void add_constraint(std::string cname, std::vector<LinearTerm> terms, Sense sense, double rhs,
                      const std::string& family = "") {
    for (const auto& t : terms) {
      check_var(t.var);
      if (!std::isfinite(t.coef)) throw std::runtime_error("non-finite coefficient in row '" + cname + "'");
    }
    constraints.push_back(LinearConstraint{std::move(cname), std::move(terms), sense, rhs});
    if (!family.empty()) ++metadata.family_rows[family];
  }

  void add_sos2(std::string sname, std::vector<std::pair<int, double>> members) {
    if (members.size() < 2) throw std::runtime_error("SOS2 set '" + sname + "' needs at least 2 members");
    for (size_t i = 0; i < members.size(); ++i) {
      check_var(members[i].first);
      if (i > 0 && members[i].second <= members[i - 1].second)
        throw std::runtime_error("SOS2 weights must be strictly increasing in '" + sname + "'");
    }
    sos2_sets.push_back(Sos2Set{std::move(sname), std::move(members)});
  }

  void add_objective_term(int var, double coef) {
    check_var(var);
    if (coef == 0.0) return;
    auto it = obj_pos_.find(var);
    if (it == obj_pos_.end()) {
      obj_pos_.emplace(var, objective.size());
      objective.push_back(LinearTerm{var, coef});
    } else {
      objective[it->second].coef += coef;
    }
  }

  int variable_index(const std::string& vname) const {
    auto it = by_name_.find(vname);
    return it == by_name_.end() ? -1 : it->second;
  }

  // Fixes a variable to a constant via its bounds.
  void fix_variable(int var, double value) {
    check_var(var);
    variables[size_t(var)].lo = value;
    variables[size_t(var)].hi = value;
  }

  // LP relaxation: binaries become continuous on [lo, hi]; SOS2 conditions
  // are dropped (their convex-combination rows stay), which yields the
  // convex envelope of each piecewise cost term.
  MilpModel lp_relaxation() const {
    MilpModel lp = *this;
    lp.name = name + "_lp";
    for (auto& v : lp.variables) v.domain = VarDomain::continuous;
    lp.sos2_sets.clear();
    lp.metadata.notes.push_back("lp_relaxation");
    return lp;
  }

  // Largest absolute row/bound/integrality violation of a candidate point.
  double max_violation(const std::vector<double>& x) const {
    if (x.size() != variables.size()) throw std::runtime_error("value vector size mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < variables.size(); ++i) {
      const auto& v = variables[i];
      worst = std::max(worst, v.lo - x[i]);
      worst = std::max(worst, x[i] - v.hi);
      if (v.domain == VarDomain::binary) worst = std::max(worst, std::fabs(x[i] - std::round(x[i])));
    }
    for (const auto& c : constraints) {
      double lhs = 0.0;
      for (const auto& t : c.terms) lhs += t.coef * x[size_t(t.var)];
      switch (c.sense) {
        case Sense::le: worst = std::max(worst, lhs - c.rhs); break;
        case Sense::ge: worst = std::max(worst, c.rhs - lhs); break;
        case Sense::eq: worst = std::max(worst, std::fabs(lhs - c.rhs)); break;
      }
    }
    return worst;
  }

  double objective_value(const std::vector<double>& x) const {
    double obj = 0.0;
    for (const auto& t : objective) obj += t.coef * x[size_t(t.var)];
    return obj;
  }

 private:
  void check_var(int var) const {
    if (var < 0 || var >= int(variables.size())) throw std::runtime_error("variable index out of range");
  }
  std::unordered_map<std::string, int> by_name_;
  std::unordered_map<int, size_t> obj_pos_;
};

}  // namespace ccgtuc
