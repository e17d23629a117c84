// serialization, scenario configs, verification plumbing

#include <catch2/catch_amalgamated.hpp>

#include "enscon/scenario.hpp"

using namespace enscon;

TEST_CASE("polynomial JSON round trip") {
  const Polynomial3 p =
      p3_var(0) * p3_var(0) * Rational(3, 2) - p3_var(1) * p3_var(2) * Rational(7, 3);
  const Json j = to_json(p);
  const Polynomial3 q = polynomial3_from_json(j);
  CHECK((p - q).is_zero());
  // schema shape: monomials -> exp triple + string rational
  REQUIRE(j.contains("monomials"));
  for (const auto& m : j.at("monomials")) {
    CHECK(m.at("exp").size() == 3);
    CHECK(m.at("coef").is_string());
  }
}

TEST_CASE("schedule round trips") {
  Mat U(3, 2);
  U << 0.25, -1.5, 3.0, 1e-17, -0.125, 2.0 / 3.0;
  const ControlSchedule s(1.5, U);
  SECTION("json") {
    const ControlSchedule t = schedule_from_json(to_json(s));
    CHECK(t.horizon == s.horizon);
    CHECK((t.values - s.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("csv") {
    const ControlSchedule t = schedule_from_csv(schedule_to_csv(s), s.horizon);
    CHECK((t.values - s.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("steer config parsing") {
  const Json good = {
      {"schema", 1},
      {"family", "gh:2"},
      {"seed", 5},
      {"ensemble", {{"points", {{0.0, 0.0}, {0.5, 0.2}}}}},
      {"targets", {{"points", {{0.1, 0.0}, {0.4, 0.3}}}}},
      {"beta", 1e-4},
      {"horizon", 1.0},
      {"steps", 10},
      {"pmap", "identity"},
      {"threshold", 1e-2}};

  SECTION("valid config") {
    const SteerScenario sc = parse_steer_config(good);
    CHECK(sc.family.id() == "gh:2");
    CHECK(sc.start.size() == 2);
    CHECK(sc.targets.size() == 2);
    CHECK(sc.steps == 10);
  }
  SECTION("unknown fields are rejected") {
    Json bad = good;
    bad["extra_knob"] = 1;
    CHECK_THROWS_AS(parse_steer_config(bad), ConfigError);
    Json bad2 = good;
    bad2["optimizer"] = {{"momentum", 0.9}};
    CHECK_THROWS_AS(parse_steer_config(bad2), ConfigError);
  }
  SECTION("schema version is enforced") {
    Json bad = good;
    bad["schema"] = 2;
    CHECK_THROWS_AS(parse_steer_config(bad), ConfigError);
  }
  SECTION("random ensembles are seed-deterministic") {
    Json cfg = good;
    cfg["ensemble"] = {{"n", 3}};
    cfg["targets"] = {{"random", {{"n", 3}}}};
    const SteerScenario a = parse_steer_config(cfg);
    const SteerScenario b = parse_steer_config(cfg);
    for (int k = 0; k < 3; ++k) {
      CHECK((a.start.points[k] - b.start.points[k]).norm() == 0.0);
      CHECK((a.targets[k] - b.targets[k]).norm() == 0.0);
    }
  }
}

TEST_CASE("train config parsing") {
  const Json good = {{"schema", 1},
                     {"family", "product-gh:2,1"},
                     {"seed", 7},
                     {"nu", {0.0}},
                     {"dataset", {{"two_moons", {{"n_per_class", 5}, {"noise", 0.05}}}}},
                     {"steps", 10}};
  const TrainScenario sc = parse_train_config(good);
  CHECK(sc.data.size() == 10);
  CHECK(sc.labels.size() == 10);
  const TrainingProblem prob = make_train_problem(sc);
  CHECK(prob.family.ambient_dim() == 3);
  CHECK(prob.pmap.indices == std::vector<int>{2});

  SECTION("non-product families are rejected") {
    Json bad = good;
    bad["family"] = "gh:3";
    CHECK_THROWS_AS(parse_train_config(bad), ConfigError);
  }
  SECTION("empty datasets are rejected") {
    Json bad = good;
    bad["dataset"] = {{"points", Json::array()}, {"labels", Json::array()}};
    CHECK_THROWS_AS(parse_train_config(bad), ConfigError);
  }
}

TEST_CASE("config hash is stable and value-sensitive") {
  const Json a = {{"schema", 1}, {"x", 1.5}};
  const Json b = {{"x", 1.5}, {"schema", 1}};  // same content, same canonical dump
  const Json c = {{"schema", 1}, {"x", 2.5}};
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("two moons generator") {
  std::mt19937_64 rng(3);
  auto [pts, labels] = two_moons(20, 0.04, rng);
  REQUIRE(pts.size() == 40);
  int zeros = 0;
  for (double l : labels) zeros += l == 0.0;
  CHECK(zeros == 20);
  for (const Vec& p : pts) CHECK(p.norm() < 1.6);  // inside the strong-field region
}

TEST_CASE("trajectory CSV has the documented shape") {
  const ControlFamily gh2 = ControlFamily::gh(2);
  std::vector<Vec> pts = {Vec::Zero(2), Vec::Ones(2)};
  const auto traj =
      flow_ensemble(gh2, ControlSchedule::zero(1.0, 2, 4), Ensemble(gh2.manifold(), pts));
  const std::string csv = trajectory_to_csv(traj);
  CHECK(csv.rfind("t,member,coord0,coord1\n", 0) == 0);
  // 3 grid nodes x 2 members + header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
