#include "polymer/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "polymer/error.hpp"

namespace polymer::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k > 0) text_ += ',';
    text_ += header[k];
  }
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_) {
    throw Error(ErrorKind::InvalidArgument, "csv row width does not match header");
  }
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k > 0) text_ += ',';
    text_ += format_double(row[k]);
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

Json state_json(State u) {
  Json j;
  j["s"] = u.s;
  j["c"] = u.c;
  return j;
}

Json validation_json(const ValidationReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["rankine_hugoniot"] = report.rankine_hugoniot;
  j["speed_order"] = report.speed_order;
  j["oleinik"] = report.oleinik;
  j["contacts"] = report.contacts;
  j["end_states"] = report.end_states;
  j["max_rh_residual"] = report.max_rh_residual;
  j["failures"] = report.failures;
  return j;
}

Json solution_json(const RiemannSolution& sol, const ValidationReport& report) {
  Json j;
  j["model"] = std::string(sol.model().name());
  j["alpha"] = sol.alpha();
  if (sol.criterion) j["criterion"] = std::string(to_string(*sol.criterion));
  j["UL"] = state_json(sol.left());
  j["UR"] = state_json(sol.right());
  j["structure"] = sol.structure;
  Json waves = Json::array();
  for (const Wave& w : sol.waves()) {
    Json jw;
    jw["kind"] = std::string(to_string(w.kind));
    jw["left"] = state_json(w.left);
    jw["right"] = state_json(w.right);
    if (w.is_discontinuity()) {
      jw["speed"] = w.speed_lo;
    } else {
      jw["speed_range"] = Json::array({w.speed_lo, w.speed_hi});
    }
    if (w.contact) {
      jw["configuration"] = std::string(to_string(w.contact->config));
      Json verdicts;
      for (Criterion c : {Criterion::KeyfitzKranzer, Criterion::IsaacsonTemple,
                          Criterion::DeSouzaMarchesin, Criterion::VanishingAdsorption}) {
        verdicts[std::string(to_string(c))] = std::string(to_string(w.contact->verdict(c)));
      }
      jw["verdicts"] = verdicts;
    }
    waves.push_back(jw);
  }
  j["waves"] = waves;
  j["valid"] = report.ok();
  return j;
}

Json va_report_json(const VanishingAdsorptionReport& report, State u_minus, State u_plus) {
  Json j;
  j["U_minus"] = state_json(u_minus);
  j["U_plus"] = state_json(u_plus);
  j["configuration"] = std::string(to_string(report.contact.config));
  Json verdicts;
  for (Criterion c : {Criterion::KeyfitzKranzer, Criterion::IsaacsonTemple,
                      Criterion::DeSouzaMarchesin}) {
    verdicts[std::string(to_string(c))] = std::string(to_string(report.contact.verdict(c)));
  }
  verdicts["va"] = std::string(to_string(report.verdict));
  j["verdicts"] = verdicts;
  j["alpha"] = report.alphas;
  j["l1"] = report.distances;
  j["delta"] = report.delta;
  j["floor"] = report.floor;
  return j;
}

std::string profile_csv(const RiemannSolution& sol, double xi_lo, double xi_hi, int samples) {
  CsvTable table({"xi", "s", "c"});
  for (int k = 0; k < samples; ++k) {
    const double xi =
        samples == 1 ? xi_lo : xi_lo + (xi_hi - xi_lo) * static_cast<double>(k) / (samples - 1);
    const State u = sol.sample(xi);
    table.add_row({xi, u.s, u.c});
  }
  return table.str();
}

std::string curve_csv(const CurveSample& curve) {
  CsvTable table({"s", "c", "sigma_or_level"});
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const double v = k < curve.values.size() ? curve.values[k] : std::nan("");
    table.add_row({curve.points[k].s, curve.points[k].c, v});
  }
  return table.str();
}

std::string limit_csv(const LimitStudy& study) {
  CsvTable table(
      {"alpha", "sigma", "s_minus", "s_plus", "err_sigma", "err_s_minus", "err_s_plus"});
  for (const LimitRow& r : study.rows) {
    table.add_row({r.alpha, r.sigma, r.u_minus.s, r.u_plus.s, r.err_sigma, r.err_s_minus,
                   r.err_s_plus});
  }
  return table.str();
}

std::string orbit_csv(const Connection& connection) {
  CsvTable table({"xi", "s", "c"});
  const CurveSample& orbit = connection.orbit;
  for (std::size_t k = 0; k < orbit.points.size(); ++k) {
    if (!std::isfinite(orbit.param[k])) continue;
    table.add_row({orbit.param[k], orbit.points[k].s, orbit.points[k].c});
  }
  return table.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "failed writing " + path);
}

}  // namespace polymer::io
