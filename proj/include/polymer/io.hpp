#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polymer/admissibility.hpp"
#include "polymer/curves.hpp"
#include "polymer/riemann.hpp"
#include "polymer/travwave.hpp"

namespace polymer::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Comma-separated table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

Json state_json(State u);
Json solution_json(const RiemannSolution& sol, const ValidationReport& report);
Json validation_json(const ValidationReport& report);
Json va_report_json(const VanishingAdsorptionReport& report, State u_minus, State u_plus);

/// xi,s,c on a uniform grid of `samples` points over [xi_lo, xi_hi].
std::string profile_csv(const RiemannSolution& sol, double xi_lo, double xi_hi, int samples);
/// s,c,sigma_or_level
std::string curve_csv(const CurveSample& curve);
/// alpha,sigma,s_minus,s_plus,err_sigma,err_s_minus,err_s_plus
std::string limit_csv(const LimitStudy& study);
/// xi,s,c; the seed rest point is omitted since its xi is unbounded.
std::string orbit_csv(const Connection& connection);

/// Serialises JSON with two-space indentation and a trailing newline.
std::string dump(const Json& j);

void write_file(const std::string& path, const std::string& content);

}  // namespace polymer::io
