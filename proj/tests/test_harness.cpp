#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "antijam/csv.hpp"
#include "antijam/svg.hpp"
#include "antijam/sweep.hpp"
#include "json.hpp"

using namespace antijam;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json default_json() { return json::parse(slurp(DEFAULT_CONFIG_PATH)); }

RunConfig default_config() { return load_config(DEFAULT_CONFIG_PATH); }

// Shrunk budgets keep the learner paths fast enough for a unit suite.
RunConfig small_config(AgentKind agent) {
  RunConfig cfg = default_config();
  cfg.agent = agent;
  cfg.training_slots = 1500;
  cfg.eval_slots = 2000;
  cfg.reward_window = 500;
  cfg.dqn.learn_start = 200;
  cfg.dqn.target_update_period = 250;
  return cfg;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("the shipped default config pins the published operating point") {
  const RunConfig cfg = default_config();
  CHECK(cfg.env.d_max == 10);
  CHECK(cfg.env.e_max == 10);
  CHECK(cfg.env.lambda == 3.0);
  CHECK(cfg.env.dt_hat == 4);
  CHECK(cfg.env.at_cost_per_packet == 1);
  CHECK(cfg.env.eh_table == std::vector<int>{0, 1, 2, 3});
  CHECK(cfg.env.ambc_table == std::vector<int>{0, 1, 2, 3});
  REQUIRE(cfg.env.ra.levels.size() == 2);
  CHECK(cfg.env.ra.levels[0].packets == 1);
  CHECK(cfg.env.ra.levels[0].energy_cost == 2);
  CHECK(cfg.env.ra.levels[1].packets == 2);
  CHECK(cfg.env.ra.levels[1].energy_cost == 4);
  CHECK(cfg.env.num_actions() == 6);

  CHECK(cfg.jammer.levels == std::vector<double>{0.0, 5.0, 10.0, 15.0});
  REQUIRE(cfg.jammer.p_off.has_value());
  REQUIRE(cfg.jammer.p_avg.has_value());
  CHECK(*cfg.jammer.p_off == 0.3);
  CHECK(*cfg.jammer.p_avg == 7.0);

  CHECK(cfg.dqn.learning_rate == 1e-4);
  CHECK(cfg.dqn.discount == 0.9);
  CHECK(cfg.dqn.replay_capacity == 10000);
  CHECK(cfg.dqn.batch_size == 32);
  CHECK(cfg.dqn.target_update_period == 5000);
  CHECK(cfg.dqn.eps_start == 1.0);
  CHECK(cfg.dqn.eps_end == 0.01);
  CHECK(cfg.dqn.eps_decay == 0.9999);
  CHECK(cfg.dqn.learn_start == 1000);
  CHECK(cfg.dqn.hidden_sizes == std::vector<int>{64, 64});
  CHECK(cfg.qlearning_alpha == 0.1);

  CHECK(cfg.greedy.t_cycle == 10);
  CHECK(cfg.greedy.t_harvest == 3);
  CHECK(cfg.training_slots == 200000);
  CHECK(cfg.eval_slots == 100000);
  CHECK(cfg.seeds == 5);
  CHECK(cfg.base_seed == 1);
  CHECK(cfg.reward_window == 1000);

  REQUIRE(cfg.channel.has_value());
  CHECK(cfg.channel->alpha == 2.3);
  CHECK(cfg.channel->sigma2 == 1e-9);

  const JammerProcess jam = make_jammer(cfg);
  CHECK(jam.num_levels() == 4);
  CHECK(jam.weights()[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(jam.p_avg() == doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("config parsing rejects malformed input with the offending key") {
  auto parse = [](const json& j) { return parse_config(j.dump()); };

  json j = default_json();
  j["typo_key"] = 1;
  CHECK_THROWS_WITH_AS(parse(j), doctest::Contains("typo_key"), ConfigError);

  j = default_json();
  j["env"]["d_maz"] = 10;
  CHECK_THROWS_WITH_AS(parse(j), doctest::Contains("d_maz"), ConfigError);

  j = default_json();
  j["env"].erase("lambda");
  CHECK_THROWS_WITH_AS(parse(j), doctest::Contains("lambda"), ConfigError);

  j = default_json();
  j.erase("jammer");
  CHECK_THROWS_AS(parse(j), ConfigError);

  j = default_json();
  j["agent"] = "sarsa";
  CHECK_THROWS_WITH_AS(parse(j), doctest::Contains("sarsa"), ConfigError);

  j = default_json();
  j["qlearning_alpha"] = 1.5;
  CHECK_THROWS_AS(parse(j), ConfigError);

  j = default_json();
  j["env"]["lambda"] = "three";
  CHECK_THROWS_AS(parse(j), ConfigError);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("the jammer spec demands exactly one description") {
  json j = default_json();
  j["jammer"]["weights"] = {0.3, 0.2, 0.2, 0.3};  // alongside p_off/p_avg
  CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);

  j = default_json();
  j["jammer"].erase("p_off");
  j["jammer"].erase("p_avg");
  CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);

  // Weights alone are fine and bypass the mean-matching solve.
  j = default_json();
  j["jammer"].erase("p_off");
  j["jammer"].erase("p_avg");
  j["jammer"]["weights"] = {0.4, 0.2, 0.2, 0.2};
  const RunConfig cfg = parse_config(j.dump());
  CHECK(make_jammer(cfg).p_avg() == doctest::Approx(0.2 * 30.0).epsilon(1e-12));

  // Infeasible mean surfaces as a config error, not a bare range_error.
  j = default_json();
  j["jammer"]["p_avg"] = 100.0;
  CHECK_THROWS_AS(parse_config(j.dump()), ConfigError);

  // Scenario form: geometry through the channel model.
  j = default_json();
  j["jammer"].erase("p_off");
  j["jammer"].erase("p_avg");
  j["jammer"]["scenario"] = json::array({
      json{{"distance_m", 1.0}, {"elevation_deg", 90.0}, {"prob", 0.5}},
      json{{"distance_m", 1000.0}, {"elevation_deg", 1.0}, {"prob", 0.5}},
  });
  j["jammer"]["scenario_tx_power"] = 5.0;
  const RunConfig scen = parse_config(j.dump());
  const JammerProcess proc = make_jammer(scen);
  CHECK(proc.weights()[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(proc.weights()[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("agent names round-trip") {
  for (AgentKind k : {AgentKind::dqn, AgentKind::qlearning, AgentKind::greedy,
                      AgentKind::random, AgentKind::oracle_policy}) {
    CHECK(agent_from_name(agent_name(k)) == k);
  }
  CHECK_THROWS_AS(agent_from_name("ddpg"), ConfigError);
}

TEST_CASE("evaluation is seed-deterministic and shares traces across policies") {
  const RunConfig cfg = small_config(AgentKind::greedy);
  const PolicyFn greedy = greedy_policy(cfg.greedy);
  const Metrics a = evaluate(greedy, cfg, 42, 4000);
  const Metrics b = evaluate(greedy_policy(cfg.greedy), cfg, 42, 4000);
  CHECK(a.delivered == b.delivered);
  CHECK(a.dropped == b.dropped);
  CHECK(a.arrived == b.arrived);
  CHECK(a.final_buffer == b.final_buffer);

  const Metrics c = evaluate(greedy_policy(cfg.greedy), cfg, 43, 4000);
  CHECK(c.arrived != a.arrived);

  // A different policy on the same seed sees the same environment trace:
  // identical arrivals, different deliveries.
  const Metrics d = evaluate(random_policy(2), cfg, 42, 4000);
  CHECK(d.arrived == a.arrived);
  CHECK(d.delivered != a.delivered);

  // Training and evaluation streams are disjoint by construction.
  RunConfig tcfg = cfg;
  tcfg.training_slots = 4000;
  const Metrics e = run_training(tcfg, 42).metrics;
  CHECK(e.arrived != a.arrived);
}

TEST_CASE("metrics identities and accounting hold on a real run") {
  const RunConfig cfg = small_config(AgentKind::greedy);
  const Metrics m = evaluate(greedy_policy(cfg.greedy), cfg, 7, 3000);
  CHECK(m.slots == 3000);
  CHECK(m.arrived > 0);
  CHECK(accounting_holds(m));
  CHECK(m.avg_throughput ==
        doctest::Approx(static_cast<double>(m.delivered) / m.slots).epsilon(1e-12));
  CHECK(m.packet_loss_rate ==
        doctest::Approx(static_cast<double>(m.dropped) / m.arrived).epsilon(1e-12));
  CHECK(m.pdr ==
        doctest::Approx(static_cast<double>(m.delivered) / m.arrived).epsilon(1e-12));

  // reward_window = 500 over 3000 slots: six full windows whose means add
  // back up to the total delivered count.
  REQUIRE(m.reward_curve.size() == 6);
  double sum = 0.0;
  for (double w : m.reward_curve) sum += w * 500.0;
  CHECK(sum == doctest::Approx(static_cast<double>(m.delivered)).epsilon(1e-9));

  // A partial trailing window is dropped, not averaged short.
  const Metrics p = evaluate(greedy_policy(cfg.greedy), cfg, 7, 3400);
  CHECK(p.reward_curve.size() == 6);
}

TEST_CASE("every agent kind trains, returns a runnable policy, and accounts cleanly") {
  for (AgentKind kind : {AgentKind::dqn, AgentKind::qlearning, AgentKind::greedy,
                         AgentKind::random, AgentKind::oracle_policy}) {
    CAPTURE(agent_name(kind));
    const RunConfig cfg = small_config(kind);
    const TrainResult result = run_training(cfg, 11);
    CHECK(result.metrics.slots == cfg.training_slots);
    CHECK(accounting_holds(result.metrics));
    CHECK((result.net != nullptr) == (kind == AgentKind::dqn));
    CHECK((result.table != nullptr) == (kind == AgentKind::qlearning));

    const Metrics eval = evaluate(result.policy, cfg, 11, cfg.eval_slots);
    CHECK(eval.slots == cfg.eval_slots);
    CHECK(accounting_holds(eval));
    CHECK(eval.avg_throughput > 0.0);
  }
}

TEST_CASE("policy adapters reproduce their underlying rules") {
  const RunConfig cfg = default_config();
  Rng rng(1);

  // Greedy keeps its phase across calls and resets on clear slots.
  const PolicyFn greedy = greedy_policy(GreedyConfig{10, 2});
  CHECK(greedy(State{1, 5, 5}, rng).kind == ActionKind::eh);
  CHECK(greedy(State{1, 5, 5}, rng).kind == ActionKind::eh);
  CHECK(greedy(State{1, 5, 5}, rng).kind == ActionKind::ambc);
  CHECK(greedy(State{0, 5, 5}, rng).kind == ActionKind::at);
  CHECK(greedy(State{1, 5, 5}, rng).kind == ActionKind::eh);

  // Fixed lookup table.
  std::vector<int> table(cfg.env.num_states(), Action{ActionKind::ambc}.to_index());
  table[state_index(State{0, 3, 3}, cfg.env)] = Action{ActionKind::at}.to_index();
  const PolicyFn fixed = fixed_policy(table, cfg.env);
  CHECK(fixed(State{0, 3, 3}, rng).kind == ActionKind::at);
  CHECK(fixed(State{1, 3, 3}, rng).kind == ActionKind::ambc);

  // Table policy is greedy over the q-values, lowest index on ties.
  auto qt = std::make_shared<QTable>(cfg.env.num_states(), cfg.env.num_actions(),
                                     0.1, 0.9);
  const int s = state_index(State{1, 2, 2}, cfg.env);
  qt->at(s, 3) = 2.0;
  const PolicyFn tp = table_policy(qt, cfg.env);
  CHECK(tp(State{1, 2, 2}, rng).kind == ActionKind::ambc);
  CHECK(tp(State{1, 2, 3}, rng).kind == ActionKind::idle);

  // Net policy agrees with a manual forward argmax.
  Rng init(3);
  auto net = std::make_shared<MLP>(
      mlp_init({3, 8, cfg.env.num_actions()}, init));
  const PolicyFn np = net_policy(net, cfg.env);
  const State probe{1, 5, 5};
  const auto q = forward(*net, state_features(probe, cfg.env));
  int best = 0;
  for (int a = 1; a < cfg.env.num_actions(); ++a) {
    if (q[a] > q[best]) best = a;
  }
  CHECK(np(probe, rng).to_index() == best);
}

TEST_CASE("the solved oracle hits the budget gain and writes a readable table") {
  RunConfig cfg = default_config();
  const OracleReport report = solve_oracle(cfg);
  CHECK(report.model.num_states == 242);
  CHECK(report.average.gain == doctest::Approx(1.4).epsilon(3e-5));
  CHECK(report.average.fully_reachable);
  CHECK(report.discounted.policy.size() == 242);
  // The discounted-optimal policy is near-optimal in average reward and
  // can never beat the average-optimal gain.
  CHECK(report.discounted_policy_gain <= report.average.gain + 1e-9);
  CHECK(report.discounted_policy_gain > 1.35);

  const auto path =
      (std::filesystem::temp_directory_path() / "antijam_solution.txt").string();
  write_solution_table(report.average, cfg.env, path);
  const std::string text = slurp(path);
  std::remove(path.c_str());
  CHECK(text.rfind("gain ", 0) == 0);
  CHECK(count_occurrences(text, "\n") >= 243);
  CHECK(text.find("AmBC") != std::string::npos);
  CHECK(text.find("AT") != std::string::npos);
}

TEST_CASE("doubles format to their shortest round-trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(0.0) == "0");
  // Smallest normal double; stod rejects subnormals with ERANGE, so those
  // stay out of the probe list.
  for (double v : {0.1 + 0.2, 1e300, 2.2250738585072014e-308, -1.7e-17, 3.0,
                   -0.0, 1234567.875}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv writing quotes exactly the fields that need it") {
  CsvTable t;
  t.header = {"plain", "with,comma", "with\"quote"};
  t.rows = {{"a", "line\nbreak", "tail"}};
  const std::string text = csv_to_string(t);
  CHECK(text.find("plain,\"with,comma\",\"with\"\"quote\"") == 0);
  const CsvTable back = parse_csv_string(text);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0] == t.rows[0]);
}

TEST_CASE("csv round-trips arbitrary content") {
  const std::string alphabet = "ab ,\"\n\r;x0";
  std::mt19937 gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    CsvTable t;
    const int cols = 1 + static_cast<int>(gen() % 5);
    const int rows = static_cast<int>(gen() % 5);
    auto field = [&]() {
      std::string f;
      const int len = static_cast<int>(gen() % 9);
      for (int i = 0; i < len; ++i) f += alphabet[gen() % alphabet.size()];
      return f;
    };
    for (int c = 0; c < cols; ++c) t.header.push_back(field());
    for (int r = 0; r < rows; ++r) {
      t.rows.emplace_back();
      for (int c = 0; c < cols; ++c) t.rows.back().push_back(field());
    }
    const CsvTable back = parse_csv_string(csv_to_string(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
  }
}

TEST_CASE("csv parsing accepts crlf and rejects ragged rows") {
  const CsvTable t = parse_csv_string("a,b\r\n1,2\r\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2"});

  CHECK_THROWS_AS(parse_csv_string("a,b\n1,2,3\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_csv(std::string("/nonexistent/file.csv")),
                  std::runtime_error);

  // Header-only tables survive the trip.
  CsvTable h;
  h.header = {"x", "y"};
  const CsvTable back = parse_csv_string(csv_to_string(h));
  CHECK(back.header == h.header);
  CHECK(back.rows.empty());
}

TEST_CASE("csv files round-trip through disk") {
  CsvTable t;
  t.header = {"step", "value"};
  t.rows = {{"1", "0.5"}, {"2", "0.25"}};
  const auto path =
      (std::filesystem::temp_directory_path() / "antijam_csv_io.csv").string();
  emit_csv(t, path);
  const CsvTable back = parse_csv(path);
  std::remove(path.c_str());
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK_THROWS_AS(emit_csv(t, "/nonexistent/dir/file.csv"), std::runtime_error);
}

TEST_CASE("axis ranges pad the data and handle degenerate spans") {
  const AxisRange r = axis_range(0.0, 1.0);
  CHECK(r.lo == doctest::Approx(-0.05));
  CHECK(r.hi == doctest::Approx(1.05));
  const AxisRange flat = axis_range(2.0, 2.0);
  CHECK(flat.hi > flat.lo);
  CHECK(flat.lo < 2.0);
  CHECK(flat.hi > 2.0);
  const AxisRange zero = axis_range(0.0, 0.0);
  CHECK(zero.lo < 0.0);
  CHECK(zero.hi > 0.0);
}

TEST_CASE("svg output is structurally sound and escapes markup") {
  std::vector<Series> series(2);
  series[0].name = "first & <best>";
  series[0].x = {0.0, 1.0, 2.0, 3.0};
  series[0].y = {0.1, 0.4, 0.2, 0.9};
  series[1].name = "second";
  series[1].x = {0.0, 1.0, 2.0, 3.0};
  series[1].y = {0.5, 0.5, 0.6, 0.4};
  series[1].stddev = {0.05, 0.05, 0.1, 0.02};

  const std::string svg =
      svg_to_string(series, "x axis", "y axis", "title <&> here");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("title &lt;&amp;&gt; here") != std::string::npos);
  CHECK(svg.find("first &amp; &lt;best&gt;") != std::string::npos);
  CHECK(svg.find("title <&>") == std::string::npos);
  CHECK(count_occurrences(svg, "<polyline") >= 2);

  // Error bars add line segments beyond the no-stddev rendering.
  std::vector<Series> bare = series;
  bare[1].stddev.clear();
  const std::string plain = svg_to_string(bare, "x", "y", "t");
  CHECK(count_occurrences(svg, "<line") > count_occurrences(plain, "<line"));

  // Data points stay inside the plot rectangle.
  size_t pos = 0;
  int polylines = 0;
  while ((pos = svg.find("points=\"", pos)) != std::string::npos) {
    pos += 8;
    const size_t end = svg.find('"', pos);
    std::istringstream coords(svg.substr(pos, end - pos));
    std::string pair;
    bool inside = true;
    while (coords >> pair) {
      const size_t comma = pair.find(',');
      const double x = std::stod(pair.substr(0, comma));
      const double y = std::stod(pair.substr(comma + 1));
      if (x < 69.9 || x > 680.1 || y < 45.9 || y > 462.1) inside = false;
    }
    CHECK(inside);
    ++polylines;
    pos = end;
  }
  CHECK(polylines >= 2);

  // A single-sample series renders as a dot, not a polyline.
  std::vector<Series> dot(1);
  dot[0].name = "point";
  dot[0].x = {1.0};
  dot[0].y = {2.0};
  CHECK(svg_to_string(dot, "x", "y", "t").find("<circle") != std::string::npos);
}

TEST_CASE("svg rejects malformed series") {
  CHECK_THROWS_AS(svg_to_string({}, "x", "y", "t"), std::domain_error);
  Series s;
  s.name = "bad";
  s.x = {0.0, 1.0};
  s.y = {1.0};
  CHECK_THROWS_AS(svg_to_string({s}, "x", "y", "t"), std::domain_error);
  s.y = {1.0, std::nan("")};
  CHECK_THROWS_AS(svg_to_string({s}, "x", "y", "t"), std::domain_error);
  s.y = {1.0, 2.0};
  s.x = {1.0, 1.0};
  CHECK_THROWS_AS(svg_to_string({s}, "x", "y", "t"), std::domain_error);
  s.x = {0.0, 1.0};
  s.stddev = {0.1};
  CHECK_THROWS_AS(svg_to_string({s}, "x", "y", "t"), std::domain_error);
}

TEST_CASE("mean and sample deviation are order-invariant") {
  double mean = 0.0, sd = 0.0;
  mean_stddev({1.0, 2.0, 3.0, 4.0}, mean, sd);
  CHECK(mean == doctest::Approx(2.5));
  CHECK(sd == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));

  double mean2 = 0.0, sd2 = 0.0;
  mean_stddev({4.0, 1.0, 3.0, 2.0}, mean2, sd2);
  CHECK(mean2 == mean);
  CHECK(sd2 == sd);

  mean_stddev({7.0}, mean, sd);
  CHECK(mean == 7.0);
  CHECK(sd == 0.0);
}

TEST_CASE("sweep names round-trip and bad values fail upfront") {
  for (SweepParam p : {SweepParam::p_avg, SweepParam::dt_hat, SweepParam::t_harvest}) {
    CHECK(sweep_param_from_name(sweep_param_name(p)) == p);
  }
  CHECK_THROWS(sweep_param_from_name("bandwidth"));

  const RunConfig cfg = small_config(AgentKind::dqn);
  CHECK_THROWS_AS(sweep(SweepParam::dt_hat, {3.5}, cfg), ConfigError);
  CHECK_THROWS_AS(sweep(SweepParam::t_harvest, {99.0}, cfg), ConfigError);
  CHECK_THROWS_AS(sweep(SweepParam::p_avg, {100.0}, cfg), ConfigError);
  CHECK_THROWS_AS(sweep(SweepParam::p_avg, {}, cfg), ConfigError);
}

TEST_CASE("a small sweep produces the full grid of cells") {
  RunConfig cfg = small_config(AgentKind::dqn);
  cfg.seeds = 2;
  cfg.eval_slots = 1000;
  const SweepResult result = sweep(SweepParam::dt_hat, {3.0, 4.0}, cfg);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].value == 3.0);
  CHECK(result.rows[1].value == 4.0);

  for (const auto& row : result.rows) {
    CHECK(row.cells.size() == 9);  // 3 agents x 3 metrics
    for (const char* agent : {"dqn", "greedy", "greedy-best"}) {
      for (const char* metric : {"throughput", "loss", "pdr"}) {
        const SweepCell* cell = result.find(row.value, agent, metric);
        REQUIRE_MESSAGE(cell != nullptr, agent << "/" << metric);
        CHECK(cell->n_seeds == 2);
        CHECK(std::isfinite(cell->mean));
        CHECK(cell->stddev >= 0.0);
      }
    }
    // Best-of-harvest dominates the configured greedy per metric.
    CHECK(result.find(row.value, "greedy-best", "throughput")->mean >=
          result.find(row.value, "greedy", "throughput")->mean - 1e-12);
    CHECK(result.find(row.value, "greedy-best", "loss")->mean <=
          result.find(row.value, "greedy", "loss")->mean + 1e-12);
    CHECK(result.find(row.value, "greedy-best", "pdr")->mean >=
          result.find(row.value, "greedy", "pdr")->mean - 1e-12);
  }
  CHECK(result.find(5.0, "dqn", "pdr") == nullptr);
  CHECK(result.find(3.0, "dqn", "latency") == nullptr);

  const CsvTable csv = sweep_to_csv(result);
  CHECK(csv.header == std::vector<std::string>{"param", "value", "agent",
                                               "metric", "mean", "stddev",
                                               "n_seeds"});
  CHECK(csv.rows.size() == 18);
  CHECK(csv.rows[0][0] == "dt_hat");
}
