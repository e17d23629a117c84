#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "enscon/ensemble.hpp"
#include "enscon/flow.hpp"
#include "enscon/hermite.hpp"
#include "enscon/optimize.hpp"
#include "enscon/pmp.hpp"
#include "enscon/polynomial.hpp"

namespace enscon {

using Json = nlohmann::json;

// shortest round-trippable decimal form; fixed for artifact determinism
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --- polynomials -------------------------------------------------------------

inline Json to_json(const Polynomial3& p) {
  Json monomials = Json::array();
  for (const auto& [e, c] : p.terms())
    monomials.push_back({{"exp", {e[0], e[1], e[2]}}, {"coef", c.str()}});
  return Json{{"monomials", monomials}};
}

inline Polynomial3 polynomial3_from_json(const Json& j) {
  Polynomial3 p(3);
  for (const auto& m : j.at("monomials")) {
    const auto& ex = m.at("exp");
    Exponents e{};
    for (int i = 0; i < 3; ++i) e[i] = ex.at(i).get<std::uint8_t>();
    p.add_term(e, Rational::parse(m.at("coef").get<std::string>()));
  }
  return p;
}

// --- reports -----------------------------------------------------------------

inline Json to_json(const TruncationReport& r, std::size_t grid = 0) {
  Json j{{"order", r.order},
         {"sup_error", r.sup_error},
         {"deriv_sup", r.deriv_sup},
         {"ell", r.ell}};
  if (grid) j["grid"] = grid;
  return j;
}

inline Json to_json(const PMPReport& r) {
  return Json{{"stationarity_residual", r.stationarity_residual},
              {"hamiltonian", r.hamiltonian},
              {"hamiltonian_mean", r.hamiltonian_mean},
              {"hamiltonian_spread", r.hamiltonian_spread}};
}

// --- schedules ---------------------------------------------------------------

inline Json to_json(const ControlSchedule& s) {
  Json rows = Json::array();
  for (int j = 0; j < s.steps(); ++j) {
    Json row = Json::array();
    for (int i = 0; i < s.control_count(); ++i) row.push_back(s.values(j, i));
    rows.push_back(std::move(row));
  }
  return Json{{"horizon", s.horizon}, {"values", rows}};
}

inline ControlSchedule schedule_from_json(const Json& j) {
  const auto& rows = j.at("values");
  const int S = static_cast<int>(rows.size());
  const int r = S > 0 ? static_cast<int>(rows.at(0).size()) : 0;
  Mat v(S, r);
  for (int a = 0; a < S; ++a)
    for (int b = 0; b < r; ++b) v(a, b) = rows.at(a).at(b).get<double>();
  return ControlSchedule(j.at("horizon").get<double>(), std::move(v));
}

inline std::string schedule_to_csv(const ControlSchedule& s) {
  std::ostringstream out;
  out << "step";
  for (int i = 0; i < s.control_count(); ++i) out << ",u" << i;
  out << "\n";
  for (int j = 0; j < s.steps(); ++j) {
    out << j;
    for (int i = 0; i < s.control_count(); ++i) out << "," << fmt_double(s.values(j, i));
    out << "\n";
  }
  return out.str();
}

inline ControlSchedule schedule_from_csv(const std::string& csv, double horizon) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // step index
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("schedule_from_csv: no rows");
  Mat v(rows.size(), rows[0].size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != rows[0].size())
      throw std::invalid_argument("schedule_from_csv: ragged rows");
    for (std::size_t b = 0; b < rows[a].size(); ++b) v(a, b) = rows[a][b];
  }
  return ControlSchedule(horizon, std::move(v));
}

// --- trajectories and histories ----------------------------------------------

// columns: t, member, coord0..coord_{n-1}; control-grid nodes only
inline std::string trajectory_to_csv(const TrajectoryBundle& traj) {
  std::ostringstream out;
  const int n = traj.manifold.ambient_dim();
  out << "t,member";
  for (int i = 0; i < n; ++i) out << ",coord" << i;
  out << "\n";
  for (int j = 0; j <= traj.steps; ++j)
    for (int k = 0; k < traj.members(); ++k) {
      out << fmt_double(traj.node_time(j)) << "," << k;
      const Vec& z = traj.node_state(k, j);
      for (int i = 0; i < n; ++i) out << "," << fmt_double(z[i]);
      out << "\n";
    }
  return out.str();
}

inline std::string history_to_csv(const std::vector<IterationRecord>& hist) {
  std::ostringstream out;
  out << "iter,loss,grad_norm,step\n";
  for (const auto& h : hist)
    out << h.iteration << "," << fmt_double(h.loss) << "," << fmt_double(h.grad_norm) << ","
        << fmt_double(h.step) << "\n";
  return out.str();
}

// --- files -------------------------------------------------------------------

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace enscon
