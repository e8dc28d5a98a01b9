// mps.hpp
// Free-format MPS emission. Output is byte-deterministic: rows and columns
// appear in model declaration order and numbers use shortest round-trip
// decimal strings.
#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

#include "ccgtuc/linear_model.hpp"

namespace ccgtuc {

namespace detail {

inline std::string mps_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

inline void check_mps_name(const std::string& n) {
  if (n.empty() || n.size() > 255)
    throw std::runtime_error("MPS name '" + n + "' empty or longer than 255 characters");
  for (char c : n)
    if (c == ' ' || c == '\t' || c == '\n' || c == '$')
      throw std::runtime_error("MPS name '" + n + "' contains whitespace");
}

}  // namespace detail

// Sections: NAME, ROWS, COLUMNS (INTORG/INTEND markers around integer
// columns), RHS, BOUNDS, SOS (type S2 with member weights), ENDATA.
inline std::string write_mps(const MilpModel& model) {
  using detail::mps_number;
  std::string out;
  out.reserve(1 << 16);
  detail::check_mps_name(model.name);
  out += "NAME " + model.name + "\n";

  out += "ROWS\n N obj\n";
  for (const auto& c : model.constraints) {
    detail::check_mps_name(c.name);
    switch (c.sense) {
      case Sense::le: out += " L "; break;
      case Sense::eq: out += " E "; break;
      case Sense::ge: out += " G "; break;
    }
    out += c.name + "\n";
  }

  // column-major coefficients, declaration order on both axes
  std::vector<std::vector<std::pair<int, double>>> col_entries(model.variables.size());
  for (const auto& t : model.objective) col_entries[size_t(t.var)].push_back({-1, t.coef});
  for (size_t r = 0; r < model.constraints.size(); ++r)
    for (const auto& t : model.constraints[r].terms)
      col_entries[size_t(t.var)].push_back({int(r), t.coef});

  out += "COLUMNS\n";
  bool in_integer = false;
  int marker = 0;
  for (size_t j = 0; j < model.variables.size(); ++j) {
    const auto& v = model.variables[j];
    detail::check_mps_name(v.name);
    bool integer = v.domain == VarDomain::binary;
    if (integer && !in_integer) {
      out += "    M" + std::to_string(marker++) + " 'MARKER' 'INTORG'\n";
      in_integer = true;
    } else if (!integer && in_integer) {
      out += "    M" + std::to_string(marker++) + " 'MARKER' 'INTEND'\n";
      in_integer = false;
    }
    for (const auto& [row, coef] : col_entries[j]) {
      out += "    " + v.name + " " + (row < 0 ? std::string("obj") : model.constraints[size_t(row)].name) +
             " " + mps_number(coef) + "\n";
    }
    if (col_entries[j].empty())
      out += "    " + v.name + " obj 0\n";  // keep unused columns declared
  }
  if (in_integer) out += "    M" + std::to_string(marker++) + " 'MARKER' 'INTEND'\n";

  out += "RHS\n";
  for (const auto& c : model.constraints)
    if (c.rhs != 0.0) out += "    RHS " + c.name + " " + mps_number(c.rhs) + "\n";

  out += "BOUNDS\n";
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (const auto& v : model.variables) {
    if (v.domain == VarDomain::binary && v.lo == 0.0 && v.hi == 1.0) {
      out += " BV BND " + v.name + "\n";
      continue;
    }
    if (v.lo == v.hi) {
      out += " FX BND " + v.name + " " + mps_number(v.lo) + "\n";
      continue;
    }
    if (v.lo == -inf && v.hi == inf) {
      out += " FR BND " + v.name + "\n";
      continue;
    }
    if (v.lo != 0.0) {
      out += (v.lo == -inf ? " MI BND " + v.name + "\n"
                           : " LO BND " + v.name + " " + mps_number(v.lo) + "\n");
    }
    if (v.hi != inf) out += " UP BND " + v.name + " " + mps_number(v.hi) + "\n";
  }

  if (!model.sos2_sets.empty()) {
    out += "SOS\n";
    for (const auto& s : model.sos2_sets) {
      detail::check_mps_name(s.name);
      out += " S2 " + s.name + "\n";
      for (const auto& [var, weight] : s.members)
        out += "    " + model.variables[size_t(var)].name + " " + mps_number(weight) + "\n";
    }
  }

  out += "ENDATA\n";
  return out;
}

}  // namespace ccgtuc
