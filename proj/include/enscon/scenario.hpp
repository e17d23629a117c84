#pragma once

#include <random>
#include <set>

#include "enscon/serialization.hpp"
#include "enscon/version.hpp"

namespace enscon {

// FNV-1a over the canonical (sorted-key) dump; embedded in every artifact
inline std::string config_hash(const Json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace scenario_detail {

inline void require_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

inline std::vector<Vec> parse_points(const Json& j, int dim) {
  std::vector<Vec> pts;
  for (const auto& row : j) {
    if (static_cast<int>(row.size()) != dim)
      throw ConfigError("points: expected " + std::to_string(dim) + " coordinates");
    Vec p(dim);
    for (int i = 0; i < dim; ++i) p[i] = row.at(i).get<double>();
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace scenario_detail

// rejection-sampled random ensemble: i.i.d. normal scaled, bounded radius,
// pairwise separation floor
struct EnsembleDraw {
  int n = 3;
  double scale = 0.6;
  double radius = 1.2;
  double min_separation = 0.5;

  std::vector<Vec> draw(int dim, std::mt19937_64& rng) const {
    if (n < 1) throw ConfigError("ensemble: n must be positive");
    std::normal_distribution<double> g;
    std::vector<Vec> pts;
    for (int attempt = 0; attempt < 100000; ++attempt) {
      pts.clear();
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        Vec p(dim);
        for (int i = 0; i < dim; ++i) p[i] = scale * g(rng);
        if (p.norm() > radius) ok = false;
        for (int q = 0; q < k && ok; ++q)
          if ((p - pts[q]).norm() < min_separation) ok = false;
        if (ok) pts.push_back(std::move(p));
      }
      if (ok) return pts;
    }
    throw ConfigError("ensemble: rejection sampling failed; loosen draw parameters");
  }
};

inline EnsembleDraw parse_draw(const Json& j, const std::string& where) {
  scenario_detail::require_keys(j, {"n", "scale", "radius", "min_separation"}, where);
  EnsembleDraw d;
  d.n = j.value("n", d.n);
  d.scale = j.value("scale", d.scale);
  d.radius = j.value("radius", d.radius);
  d.min_separation = j.value("min_separation", d.min_separation);
  return d;
}

inline OptimizerConfig parse_optimizer(const Json& j) {
  scenario_detail::require_keys(
      j,
      {"max_iterations", "initial_step", "armijo_c1", "backtrack_factor", "max_backtracks",
       "grad_tolerance", "init_amplitude"},
      "optimizer");
  OptimizerConfig cfg;
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.initial_step = j.value("initial_step", cfg.initial_step);
  cfg.armijo_c1 = j.value("armijo_c1", cfg.armijo_c1);
  cfg.backtrack_factor = j.value("backtrack_factor", cfg.backtrack_factor);
  cfg.max_backtracks = j.value("max_backtracks", cfg.max_backtracks);
  cfg.grad_tolerance = j.value("grad_tolerance", cfg.grad_tolerance);
  cfg.init_amplitude = j.value("init_amplitude", cfg.init_amplitude);
  cfg.validate();
  return cfg;
}

inline OutputMap parse_pmap(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "identity") return OutputMap::identity();
    if (s == "last") return OutputMap{{-1}};  // resolved against the family later
    throw ConfigError("pmap: expected \"identity\", \"last\" or an index list");
  }
  std::vector<int> idx;
  for (const auto& v : j) idx.push_back(v.get<int>());
  if (idx.empty()) throw ConfigError("pmap: empty index list");
  return OutputMap::select(std::move(idx));
}

// classic interleaved half-circles with labels 0/1, centered near the origin
inline std::pair<std::vector<Vec>, std::vector<double>> two_moons(int n_per_class, double noise,
                                                                  std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, noise);
  std::vector<Vec> pts;
  std::vector<double> labels;
  const double s = 0.7;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < n_per_class; ++i) {
      const double th = std::numbers::pi * (i + 0.5) / n_per_class;
      Vec p(2);
      if (c == 0)
        p << std::cos(th), std::sin(th) - 0.25;
      else
        p << 1.0 - std::cos(th), 0.25 - std::sin(th);
      p[0] -= 0.5;
      p = s * p;
      p[0] += g(rng);
      p[1] += g(rng);
      pts.push_back(std::move(p));
      labels.push_back(double(c));
    }
  return {pts, labels};
}

// --- parsed scenarios ----------------------------------------------------------

struct SteerScenario {
  Json config;
  ControlFamily family = ControlFamily::gh(2);
  Ensemble start{ManifoldSpec::euclidean(1), {Vec::Zero(1)}};
  std::vector<Vec> targets;
  OutputMap pmap;
  double beta = 1e-4;
  double horizon = 1.0;
  int steps = 20;
  int substeps = 4;
  double threshold = 1e-2;
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
};

inline SteerScenario parse_steer_config(const Json& j) {
  scenario_detail::require_keys(
      j,
      {"schema", "command", "family", "seed", "ensemble", "targets", "beta", "horizon", "steps",
       "substeps", "pmap", "threshold", "optimizer"},
      "config");
  if (j.value("schema", 0) != 1) throw ConfigError("config: schema must be 1");

  SteerScenario sc;
  sc.config = j;
  sc.family = ControlFamily::parse(j.at("family").get<std::string>());
  sc.seed = j.value("seed", 0ull);
  std::mt19937_64 rng(sc.seed);
  const int dim = sc.family.ambient_dim();

  const Json& ej = j.at("ensemble");
  std::vector<Vec> pts;
  if (ej.contains("points")) {
    scenario_detail::require_keys(ej, {"points"}, "ensemble");
    pts = scenario_detail::parse_points(ej.at("points"), dim);
  } else {
    pts = parse_draw(ej, "ensemble").draw(dim, rng);
  }
  sc.start = Ensemble(sc.family.manifold(), pts);

  sc.pmap = j.contains("pmap") ? parse_pmap(j.at("pmap")) : OutputMap::identity();
  if (sc.pmap.indices == std::vector<int>{-1}) sc.pmap = OutputMap::last_coordinate(dim);
  const int sdim = sc.pmap.output_dim(dim);

  const Json& tj = j.at("targets");
  if (tj.contains("points")) {
    scenario_detail::require_keys(tj, {"points"}, "targets");
    sc.targets = scenario_detail::parse_points(tj.at("points"), sdim);
  } else {
    scenario_detail::require_keys(tj, {"random"}, "targets");
    if (sdim != dim) throw ConfigError("targets: random targets need the identity pmap");
    sc.targets = parse_draw(tj.at("random"), "targets.random").draw(dim, rng);
  }
  if (static_cast<int>(sc.targets.size()) != sc.start.size())
    throw ConfigError("targets: count must equal ensemble size");

  sc.beta = j.value("beta", sc.beta);
  sc.horizon = j.value("horizon", sc.horizon);
  sc.steps = j.value("steps", sc.steps);
  sc.substeps = j.value("substeps", sc.substeps);
  sc.threshold = j.value("threshold", sc.threshold);
  sc.optimizer = j.contains("optimizer") ? parse_optimizer(j.at("optimizer")) : OptimizerConfig{};
  sc.optimizer.seed = sc.seed;
  return sc;
}

struct TrainScenario {
  Json config;
  int d = 2;  // data dimension
  int s = 1;  // label dimension
  Vec nu;
  std::vector<Vec> data;      // d-dim points
  std::vector<double> labels; // scalar labels (s = 1)
  double beta = 1e-4;
  double horizon = 1.0;
  int steps = 20;
  int substeps = 4;
  double threshold = 0.25;  // per-point distance to label
  double accuracy = 0.9;    // fraction that must be within threshold
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
};

inline TrainScenario parse_train_config(const Json& j) {
  scenario_detail::require_keys(
      j,
      {"schema", "command", "family", "seed", "nu", "dataset", "beta", "horizon", "steps",
       "substeps", "threshold", "accuracy", "optimizer"},
      "config");
  if (j.value("schema", 0) != 1) throw ConfigError("config: schema must be 1");

  TrainScenario sc;
  sc.config = j;
  const ControlFamily fam = ControlFamily::parse(j.at("family").get<std::string>());
  if (fam.kind() != FamilyKind::ProductGH)
    throw ConfigError("train: family must be product-gh:d,s");
  sc.d = fam.manifold().d;
  sc.s = fam.manifold().s;
  if (sc.s != 1) throw ConfigError("train: only scalar labels (s = 1) are supported");
  sc.nu = Vec::Zero(sc.s);
  if (j.contains("nu")) {
    const auto& nj = j.at("nu");
    if (static_cast<int>(nj.size()) != sc.s) throw ConfigError("nu: size must equal s");
    for (int i = 0; i < sc.s; ++i) sc.nu[i] = nj.at(i).get<double>();
  }
  sc.seed = j.value("seed", 0ull);
  std::mt19937_64 rng(sc.seed);

  const Json& dj = j.at("dataset");
  if (dj.contains("two_moons")) {
    scenario_detail::require_keys(dj, {"two_moons"}, "dataset");
    const Json& tm = dj.at("two_moons");
    scenario_detail::require_keys(tm, {"n_per_class", "noise"}, "dataset.two_moons");
    auto [pts, labels] = two_moons(tm.value("n_per_class", 20), tm.value("noise", 0.05), rng);
    sc.data = std::move(pts);
    sc.labels = std::move(labels);
  } else {
    scenario_detail::require_keys(dj, {"points", "labels"}, "dataset");
    sc.data = scenario_detail::parse_points(dj.at("points"), sc.d);
    for (const auto& v : dj.at("labels")) sc.labels.push_back(v.get<double>());
  }
  if (sc.data.empty()) throw ConfigError("dataset: empty");
  if (sc.data.size() != sc.labels.size()) throw ConfigError("dataset: points/labels mismatch");

  sc.beta = j.value("beta", sc.beta);
  sc.horizon = j.value("horizon", sc.horizon);
  sc.steps = j.value("steps", sc.steps);
  sc.substeps = j.value("substeps", sc.substeps);
  sc.threshold = j.value("threshold", sc.threshold);
  sc.accuracy = j.value("accuracy", sc.accuracy);
  sc.optimizer = j.contains("optimizer") ? parse_optimizer(j.at("optimizer")) : OptimizerConfig{};
  sc.optimizer.seed = sc.seed;
  return sc;
}

// lift the dataset into M x C and build the Bolza problem of the product
// construction: start at (x, nu), steer the last coordinate to the label
inline TrainingProblem make_train_problem(const TrainScenario& sc) {
  const ControlFamily fam = ControlFamily::product_gh(sc.d, sc.s, sc.nu);
  std::vector<Vec> pts;
  std::vector<Vec> targets;
  for (std::size_t k = 0; k < sc.data.size(); ++k) {
    Vec p(sc.d + sc.s);
    p.head(sc.d) = sc.data[k];
    p.tail(sc.s) = sc.nu;
    pts.push_back(std::move(p));
    Vec t(1);
    t[0] = sc.labels[k];
    targets.push_back(std::move(t));
  }
  return TrainingProblem(fam, Ensemble(fam.manifold(), pts), targets,
                         OutputMap::last_coordinate(sc.d + sc.s), sc.beta, sc.horizon, sc.steps,
                         sc.substeps);
}

}  // namespace enscon
