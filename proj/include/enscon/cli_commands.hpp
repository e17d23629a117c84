#pragma once

#include <filesystem>
#include <iostream>

#include "enscon/scenario.hpp"
#include "enscon/verify.hpp"

namespace enscon {

// exit-code contract: 0 success, 1 numeric non-convergence, 2 usage/config
inline constexpr int kExitOk = 0;
inline constexpr int kExitNoConverge = 1;
inline constexpr int kExitUsage = 2;

namespace cli_detail {

inline std::string artifact_header(const std::string& hash) {
  return std::string("# enscon ") + kVersion + " config " + hash + "\n";
}

inline void write_artifact(const std::filesystem::path& dir, const std::string& name,
                           const std::string& hash, const std::string& body) {
  write_file((dir / name).string(), artifact_header(hash) + body);
}

inline Json artifact_meta(const std::string& hash) {
  return Json{{"tool_version", kVersion}, {"config_hash", hash}};
}

inline std::string terminal_csv(const TrainingProblem& prob, const ControlSchedule& sched) {
  const TrajectoryBundle traj = flow_ensemble(prob.family, sched, prob.start, prob.substeps);
  std::ostringstream out;
  const int n = prob.family.ambient_dim();
  const int s = prob.pmap.output_dim(n);
  out << "member";
  for (int i = 0; i < n; ++i) out << ",coord" << i;
  for (int i = 0; i < s; ++i) out << ",target" << i;
  out << ",discrepancy\n";
  for (int k = 0; k < prob.start.size(); ++k) {
    out << k;
    const Vec& z = traj.terminal(k);
    for (int i = 0; i < n; ++i) out << "," << fmt_double(z[i]);
    for (int i = 0; i < s; ++i) out << "," << fmt_double(prob.targets[k][i]);
    out << "," << fmt_double((prob.pmap.apply(z) - prob.targets[k]).norm()) << "\n";
  }
  return out.str();
}

}  // namespace cli_detail

// runs optimize on an ensemble-steering problem; writes history.csv,
// terminal.csv, pmp.json; exit 0 iff the worst terminal discrepancy is below
// the configured threshold
inline int cmd_steer(const Json& config, const std::filesystem::path& out_dir) {
  const SteerScenario sc = parse_steer_config(config);
  const std::string hash = config_hash(sc.config);
  const TrainingProblem prob(sc.family, sc.start, sc.targets, sc.pmap, sc.beta, sc.horizon,
                             sc.steps, sc.substeps);
  const OptimizeResult res = optimize(prob, sc.optimizer);

  std::filesystem::create_directories(out_dir);
  cli_detail::write_artifact(out_dir, "history.csv", hash, history_to_csv(res.history));
  cli_detail::write_artifact(out_dir, "terminal.csv", hash,
                             cli_detail::terminal_csv(prob, res.schedule));
  cli_detail::write_artifact(out_dir, "schedule.csv", hash, schedule_to_csv(res.schedule));

  Json pj = cli_detail::artifact_meta(hash);
  if (sc.beta > 0) pj.update(to_json(pmp_residual(prob, res.schedule)));
  const auto disc = terminal_discrepancies(prob, res.schedule);
  const double worst = *std::max_element(disc.begin(), disc.end());
  pj["terminal_discrepancies"] = disc;
  pj["worst_discrepancy"] = worst;
  pj["threshold"] = sc.threshold;
  pj["iterations"] = res.history.back().iteration;
  pj["final_loss"] = res.final_loss;
  pj["line_search_failed"] = res.line_search_failed;
  write_file((out_dir / "pmp.json").string(), pj.dump(2) + "\n");

  std::cout << "steer: worst discrepancy " << fmt_double(worst) << " (threshold "
            << fmt_double(sc.threshold) << "), " << res.history.back().iteration
            << " iterations\n";
  return worst < sc.threshold ? kExitOk : kExitNoConverge;
}

// ProductGH classification run; artifacts as in steer plus per-point
// predictions.csv; exit 0 iff the within-threshold fraction reaches the
// configured accuracy
inline int cmd_train(const Json& config, const std::filesystem::path& out_dir) {
  const TrainScenario sc = parse_train_config(config);
  const std::string hash = config_hash(sc.config);
  const TrainingProblem prob = make_train_problem(sc);
  const OptimizeResult res = optimize(prob, sc.optimizer);

  const TrajectoryBundle traj = flow_ensemble(prob.family, res.schedule, prob.start, prob.substeps);
  int within = 0;
  std::ostringstream pred;
  pred << "member,label,prediction,abs_error\n";
  for (int k = 0; k < prob.start.size(); ++k) {
    const double yhat = prob.pmap.apply(traj.terminal(k))[0];
    const double err = std::abs(yhat - sc.labels[k]);
    if (err < sc.threshold) ++within;
    pred << k << "," << fmt_double(sc.labels[k]) << "," << fmt_double(yhat) << ","
         << fmt_double(err) << "\n";
  }
  const double frac = double(within) / prob.start.size();

  std::filesystem::create_directories(out_dir);
  cli_detail::write_artifact(out_dir, "history.csv", hash, history_to_csv(res.history));
  cli_detail::write_artifact(out_dir, "terminal.csv", hash,
                             cli_detail::terminal_csv(prob, res.schedule));
  cli_detail::write_artifact(out_dir, "predictions.csv", hash, pred.str());
  cli_detail::write_artifact(out_dir, "schedule.csv", hash, schedule_to_csv(res.schedule));

  Json pj = cli_detail::artifact_meta(hash);
  if (sc.beta > 0) pj.update(to_json(pmp_residual(prob, res.schedule)));
  pj["within_threshold_fraction"] = frac;
  pj["threshold"] = sc.threshold;
  pj["required_accuracy"] = sc.accuracy;
  pj["iterations"] = res.history.back().iteration;
  pj["final_loss"] = res.final_loss;
  write_file((out_dir / "pmp.json").string(), pj.dump(2) + "\n");

  std::cout << "train: " << within << "/" << prob.start.size() << " within "
            << fmt_double(sc.threshold) << " of their label\n";
  return frac >= sc.accuracy ? kExitOk : kExitNoConverge;
}

// runs a named property suite; JSON report; exit 0 iff all properties pass
inline int cmd_verify(const std::string& suite, const std::filesystem::path& out_dir) {
  std::vector<PropertyResult> results;
  try {
    results = verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  Json props = Json::array();
  bool all = true;
  for (const auto& r : results) {
    props.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " — " << r.detail << "\n";
  }
  Json rep{{"tool_version", kVersion}, {"suite", suite}, {"all_pass", all}, {"properties", props}};
  std::filesystem::create_directories(out_dir);
  write_file((out_dir / ("verify_" + suite + ".json")).string(), rep.dump(2) + "\n");
  return all ? kExitOk : kExitNoConverge;
}

// approximation ladders as CSV (n, sup_error, deriv_sup)
inline int cmd_approx(const Json& config, const std::filesystem::path& out_dir) {
  scenario_detail::require_keys(
      config, {"schema", "command", "basis", "orders", "bump", "nodes", "box"}, "config");
  if (config.value("schema", 0) != 1) throw ConfigError("config: schema must be 1");
  const std::string basis = config.at("basis").get<std::string>();
  std::vector<int> orders;
  for (const auto& v : config.at("orders")) orders.push_back(v.get<int>());
  if (orders.empty()) throw ConfigError("orders: empty");
  const std::string hash = config_hash(config);

  std::ostringstream csv;
  csv << "n,sup_error,deriv_sup\n";
  if (basis == "hermite") {
    double a = 2.5, shift = 0.8;
    if (config.contains("bump")) {
      scenario_detail::require_keys(config.at("bump"), {"scale", "shift"}, "bump");
      a = config.at("bump").value("scale", a);
      shift = config.at("bump").value("shift", shift);
    }
    auto bump = [a, shift](const Vec& z) {
      const double t = (z[0] - shift) / a;
      return std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    };
    HermiteOptions opt;
    opt.nodes_per_axis = config.value("nodes", 3000);
    const CompactBox K = CompactBox::cube(1, shift - a - 2, shift + a + 2, 2401);
    for (int n : orders) {
      const auto rep = truncation_report(hermite_coeffs(bump, 1, n, opt), bump, K);
      csv << n << "," << fmt_double(rep.sup_error) << "," << fmt_double(rep.deriv_sup) << "\n";
    }
  } else if (basis == "fourier") {
    auto smooth = [](const Vec& p) {
      return std::exp(std::sin(p[0])) + 0.3 * std::cos(2 * p[0] + 0.7);
    };
    const CompactBox K = CompactBox::full_torus(1, 2001);
    for (int n : orders) {
      const auto rep = fourier_report(fourier_project(smooth, 1, n, {}), smooth, K);
      csv << n << "," << fmt_double(rep.sup_error) << "," << fmt_double(rep.deriv_sup) << "\n";
    }
  } else if (basis == "laplace") {
    auto f = [](const Vec& x) { return std::exp(x[2]) + x[0] * x[1]; };
    const CompactBox K = CompactBox::whole_sphere(101, 201);
    for (int n : orders) {
      const auto series = laplace_project(f, n);
      double sup = 0.0;
      K.for_each_grid_point(
          [&](const Vec& x) { sup = std::max(sup, std::abs(series.eval(x) - f(x))); });
      csv << n << "," << fmt_double(sup) << ",\n";
    }
  } else {
    throw ConfigError("basis: expected hermite, fourier or laplace");
  }
  std::filesystem::create_directories(out_dir);
  cli_detail::write_artifact(out_dir, "ladder_" + basis + ".csv", hash, csv.str());
  std::cout << "approx: wrote ladder_" << basis << ".csv\n";
  return kExitOk;
}

}  // namespace enscon
