#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lowdisc/design.hpp"
#include "lowdisc/discrepancy.hpp"
#include "lowdisc/errors.hpp"
#include "lowdisc/experiments.hpp"
#include "lowdisc/generators.hpp"
#include "lowdisc/optimizer.hpp"

namespace lowdisc::io {

/// %.17g, enough to round-trip a double.
[[nodiscard]] inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot open " + path + " for writing");
  return out;
}

inline void write_design_csv(std::ostream& out, const Design& design) {
  for (std::size_t j = 0; j < design.dimension(); ++j) out << (j ? ",x" : "x") << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < design.size(); ++i) {
    for (std::size_t j = 0; j < design.dimension(); ++j)
      out << (j ? "," : "") << format_double(design(i, j));
    out << '\n';
  }
}

inline void write_design_csv(const std::string& path, const Design& design) {
  auto out = open_out(path);
  write_design_csv(out, design);
}

/// Parses a design CSV with header x1,...,xd. Every value must lie in `domain`.
[[nodiscard]] inline Design read_design_csv(std::istream& in, Domain domain) {
  std::string line;
  if (!std::getline(in, line)) throw ContractViolation("design CSV is empty");
  std::size_t d = 0;
  {
    std::stringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) {
      if (!name.empty() && name.back() == '\r') name.pop_back();
      if (name != "x" + std::to_string(d + 1))
        throw ContractViolation("design CSV header must be x1,...,xd (got '" + name + "')");
      ++d;
    }
  }
  if (d == 0) throw ContractViolation("design CSV has no columns");
  std::vector<double> values;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cell.size())
        throw ContractViolation("design CSV row " + std::to_string(n + 1) + ": bad number '" + cell + "'");
      values.push_back(v);
      ++cols;
    }
    if (cols != d)
      throw ContractViolation("design CSV row " + std::to_string(n + 1) + " has " + std::to_string(cols) +
                              " columns, expected " + std::to_string(d));
    ++n;
  }
  if (n == 0) throw ContractViolation("design CSV has no rows");
  return {n, d, std::move(values), domain};
}

[[nodiscard]] inline Design read_design_csv(const std::string& path, Domain domain) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open " + path);
  return read_design_csv(in, domain);
}

[[nodiscard]] inline std::string sidecar_path(const std::string& design_path) {
  return design_path + ".json";
}

[[nodiscard]] inline nlohmann::json generator_metadata(const GeneratorConfig& config,
                                                       TargetKind target) {
  return {{"kind", to_string(config.kind)},
          {"n", config.n},
          {"d", config.d},
          {"seed", config.seed},
          {"skip", config.effective_skip()},
          {"target", to_string(target)}};
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

/// Subset keys are 1-based, comma separated: {0, 2} -> "1,3".
[[nodiscard]] inline std::string subset_key(const std::vector<std::size_t>& subset) {
  std::string key;
  for (std::size_t k = 0; k < subset.size(); ++k) key += (k ? "," : "") + std::to_string(subset[k] + 1);
  return key;
}

[[nodiscard]] inline nlohmann::json report_json(const DiscrepancyReport& report) {
  nlohmann::json j{{"squared", report.squared}, {"value", report.value}};
  if (report.pieces) {
    nlohmann::json pieces = nlohmann::json::object();
    for (const auto& [subset, v] : *report.pieces) pieces[subset_key(subset)] = v;
    j["pieces"] = std::move(pieces);
  }
  return j;
}

inline void write_trace_csv(std::ostream& out, const ExchangeTrace& trace) {
  out << "iter,i,j,old,new,delta,discrepancy\n";
  for (const auto& s : trace.steps)
    out << s.iter << ',' << s.i << ',' << s.j << ',' << format_double(s.old_coord) << ','
        << format_double(s.new_coord) << ',' << format_double(s.delta) << ','
        << format_double(s.discrepancy_after) << '\n';
}

inline void write_cubature_csv(std::ostream& out, const CubatureExample& ex) {
  out << "design,moved_index,estimate,reference,relative_error,discrepancy_uniform,"
         "discrepancy_uniform_origin,discrepancy_normal\n";
  auto row = [&](const char* name, const CubatureResult& r) {
    out << name << ',' << ex.moved_index << ',' << format_double(r.estimate) << ','
        << format_double(r.reference) << ',' << format_double(r.relative_error) << ','
        << format_double(r.discrepancy_uniform) << ',' << format_double(r.discrepancy_uniform_origin)
        << ',' << format_double(r.discrepancy_normal) << '\n';
  };
  row("X1", ex.first_result);
  row("X2", ex.second_result);
}

inline void write_correlation_csv(std::ostream& out, const std::vector<CorrelationRow>& rows) {
  out << "d,correlation,degenerate\n";
  for (const auto& r : rows)
    out << r.d << ',' << (r.degenerate ? std::string() : format_double(r.correlation)) << ','
        << (r.degenerate ? 1 : 0) << '\n';
}

inline void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "d,n,family,replicate,discrepancy,seconds,iterations,start_discrepancy,monotone,"
         "terminated_by\n";
  for (const auto& r : rows) {
    const bool ce = r.family == Family::CE;
    out << r.d << ',' << r.n << ',' << to_string(r.family) << ',' << r.replicate << ','
        << format_double(r.discrepancy) << ',' << format_double(r.seconds) << ',';
    if (ce)
      out << r.iterations << ',' << format_double(r.start_discrepancy) << ',' << (r.monotone ? 1 : 0)
          << ',' << to_string(r.terminated_by);
    else
      out << ",,,";
    out << '\n';
  }
}

}  // namespace lowdisc::io
