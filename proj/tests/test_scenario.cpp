#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "mmtrack/scenario.hpp"

using namespace mmtrack;

namespace {

const char* kFullText = R"([area]
width = 100
height = 100

[epoch]
T = 5
tau = 3
delta = 0.1
K_max = 10

[pathloss]
A = 61.4
B = 2
sigma = 5.8
max_loss = 120

[stations]
lte = 50 50
mmwave = 10 10

[ues]
ue = 20 10
ue = 30 40 1.5

[obstacles]
linear = 5 5 1 0 0.5
trace = tr.csv 0.5 45 7

[run]
seed = 42
handoff_check_feasibility = true

[single]
out = demo
)";

Scenario parse_ok(const std::string& text) { return parse_scenario_text(text, "test"); }

}  // namespace

TEST_CASE("full scenario text parses into the expected structure") {
    const Scenario s = parse_ok(kFullText);
    CHECK(s.area.width == 100.0);
    CHECK(s.epoch.T == 5.0);
    CHECK(s.epoch.tau == 3.0);
    CHECK(s.epoch.delta == 0.1);
    CHECK(s.epoch.k_max == 10);
    CHECK(s.pl.a == 61.4);
    CHECK(s.pl.b == 2.0);
    CHECK(s.pl.sigma == 5.8);
    CHECK(s.pl.max_loss == 120.0);
    CHECK_FALSE(s.generate.has_value());

    REQUIRE(s.stations.size() == 2);
    CHECK(s.stations[0].id == 0);
    CHECK(s.stations[0].kind == StationKind::Lte);
    CHECK(s.stations[1].id == 1);
    CHECK(s.stations[1].kind == StationKind::MmWave);
    CHECK(s.stations[1].pos.x == 10.0);

    REQUIRE(s.ues.size() == 2);
    CHECK(s.ues[0].id == 0);
    CHECK(s.ues[0].t_arrive == 0.0);
    CHECK(s.ues[1].id == 1);
    CHECK(s.ues[1].t_arrive == 1.5);

    REQUIRE(s.obstacles.size() == 1);
    const auto& lin = std::get<LinearMotion>(s.obstacles[0].motion);
    CHECK(lin.start.x == 5.0);
    CHECK(lin.velocity.x == 1.0);
    CHECK(s.obstacles[0].half_width == 0.5);

    REQUIRE(s.traces.size() == 1);
    CHECK(s.traces[0].path == "tr.csv");
    CHECK(s.traces[0].geo);
    CHECK(s.traces[0].lat0 == 45.0);
    CHECK(s.traces[0].lon0 == 7.0);

    CHECK(s.seed == 42);
    CHECK(s.handoff_check_feasibility);

    REQUIRE(s.experiments.size() == 1);
    CHECK(s.experiments[0].name == "single");
    REQUIRE(s.experiment("single") != nullptr);
    CHECK(s.experiment("single")->entries.size() == 1);
    CHECK(s.experiment("camera_sweep") == nullptr);
}

TEST_CASE("serialization is canonical: write round-trips byte for byte") {
    const Scenario s = parse_ok(kFullText);
    const std::string once = write_scenario(s);
    const Scenario again = parse_ok(once);
    CHECK(write_scenario(again) == once);
    // The pinned text above is already in canonical form.
    CHECK(once == kFullText);
}

TEST_CASE("empty text yields a default scenario") {
    const Scenario s = parse_ok("");
    CHECK(s.area.width == 100.0);
    CHECK(s.epoch.T == 5.0);
    CHECK(s.stations.empty());
    CHECK(s.ues.empty());
    CHECK(s.seed == 0);
    CHECK(s.handoff_check_feasibility);
    CHECK(s.experiments.empty());
}

TEST_CASE("comments and blank lines are skipped") {
    const Scenario s = parse_ok("# top comment\n\n[run]\n# inner\nseed = 7\n");
    CHECK(s.seed == 7);
}

TEST_CASE("parser rejects malformed input with a located message") {
    CHECK_THROWS_WITH_AS(parse_ok("[area\nwidth = 1\n"),
                         "test: line 1: malformed section header", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("width = 1\n"),
                         "test: line 1: entry before any section", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[area]\nwidth\n"),
                         "test: line 2: expected key = value", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[nosuch]\n"),
                         "test: unknown section [nosuch]", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[area]\nwidth = 1\n[area]\nheight = 2\n"),
                         "test: duplicate section [area]", std::invalid_argument);
}

TEST_CASE("sections reject unknown and duplicate keys by name") {
    CHECK_THROWS_WITH_AS(parse_ok("[area]\ndepth = 3\n"),
                         "test: [area] unknown key 'depth'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[epoch]\nT = 5\nT = 6\n"),
                         "test: [epoch] duplicate key 'T'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[area]\nwidth = wide\n"),
                         "test: area.width: bad number 'wide'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[run]\nseed = -1\n"),
                         "test: run.seed: bad integer '-1'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[run]\nhandoff_check_feasibility = maybe\n"),
                         "test: run.handoff_check_feasibility: bad boolean 'maybe'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_ok("[generate]\narrivals = poisson\n"),
                         "test: generate.arrivals: expected none|uniform, got 'poisson'",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[stations]\nlte = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[ues]\nue = 1 2 3 4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[obstacles]\ncircle = 1 2 3\n"), std::invalid_argument);
}

TEST_CASE("parser validates epoch and area up front") {
    CHECK_THROWS_AS(parse_ok("[epoch]\nT = 5.05\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[area]\nwidth = -5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[pathloss]\nsigma = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ok("[generate]\nv_min = 4\nv_max = 2\n"), std::invalid_argument);
}

TEST_CASE("generate section fills parameters") {
    const Scenario s = parse_ok(
        "[generate]\nn_mmwave_bs = 4\nn_ue = 50\nn_obstacles = 7\n"
        "v_min = 1\nv_max = 9\nhalf_width = 0.25\narrivals = uniform\n");
    REQUIRE(s.generate.has_value());
    CHECK(s.generate->n_mmwave_bs == 4);
    CHECK(s.generate->n_ue == 50);
    CHECK(s.generate->n_obstacles == 7);
    CHECK(s.generate->v_min == 1.0);
    CHECK(s.generate->v_max == 9.0);
    CHECK(s.generate->half_width == 0.25);
    CHECK(s.generate->uniform_arrivals);
}

TEST_CASE("experiment section helpers") {
    const Scenario s = parse_ok(
        "[single]\nout = run1\ntrials = 12\nthreshold = 2.5\nverbose = true\n"
        "taus = 5 6 7\n");
    const DocSection& sec = *s.experiment("single");
    CHECK(section_int(sec, "trials", 99) == 12);
    CHECK(section_int(sec, "missing", 99) == 99);
    CHECK(section_double(sec, "threshold", 0.0) == 2.5);
    CHECK(section_double(sec, "missing", 1.25) == 1.25);
    CHECK(section_bool(sec, "verbose", false));
    CHECK_FALSE(section_bool(sec, "missing", false));
    CHECK(section_doubles(sec, "taus") == std::vector<double>{5.0, 6.0, 7.0});
    CHECK(section_doubles(sec, "missing").empty());
    CHECK(section_has(sec, "out"));
    CHECK_FALSE(section_has(sec, "nope"));
    CHECK_THROWS_WITH_AS(section_double(sec, "out", 0.0),
                         "[single]: out: bad number 'run1'", std::invalid_argument);
}

TEST_CASE("experiment overrides update the base scenario") {
    const Scenario base = parse_ok(kFullText);
    DocSection sec{"tau_sweep",
                   {{"width", "5000"},
                    {"T", "12"},
                    {"tau", "6"},
                    {"n_obstacles", "15"},
                    {"seed", "9"},
                    {"handoff_check_feasibility", "false"},
                    {"arrivals", "uniform"},
                    {"trials", "200"},    // driver key, ignored here
                    {"taus", "5 6 7"}}};  // driver key, ignored here
    const Scenario s = apply_overrides(base, sec);
    CHECK(s.area.width == 5000.0);
    CHECK(s.area.height == 100.0);  // untouched
    CHECK(s.epoch.T == 12.0);
    CHECK(s.epoch.tau == 6.0);
    REQUIRE(s.generate.has_value());  // created on demand by n_obstacles
    CHECK(s.generate->n_obstacles == 15);
    CHECK(s.generate->uniform_arrivals);
    CHECK(s.seed == 9);
    CHECK_FALSE(s.handoff_check_feasibility);

    // Overrides that break epoch invariants are rejected.
    DocSection bad{"tau_sweep", {{"tau", "20"}}};
    CHECK_THROWS_AS(apply_overrides(base, bad), std::invalid_argument);
}

TEST_CASE("loading from disk records the directory for trace resolution") {
    const std::string path = "scenario_under_test.cfg";
    {
        std::ofstream out(path);
        out << kFullText;
    }
    const Scenario s = load_scenario(path);
    CHECK(s.seed == 42);
    CHECK(s.base_dir == ".");
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_scenario("does_not_exist.cfg"), std::invalid_argument);
}
