#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "mmtrack/handoff.hpp"

using namespace mmtrack;

namespace {

TrajectorySet traj(std::initializer_list<Line2> lines) {
    TrajectorySet ts;
    for (const Line2& l : lines) ts.entries.push_back({l, -1, -1, {}, {}});
    return ts;
}

const Line2 kXAxis = line_through({0.0, 0.0}, {1.0, 0.0});

Link mklink(int ue, Point2 ue_pos, int bs, Point2 bs_pos) {
    return {ue, bs, {ue_pos, bs_pos}};
}

}  // namespace

TEST_CASE("at-risk links are the ones a trajectory crosses, in input order") {
    const TrajectorySet O = traj({kXAxis});
    const std::vector<Link> active = {
        mklink(0, {0.0, 1.0}, 1, {0.0, -3.0}),   // crosses y = 0
        mklink(1, {5.0, 2.0}, 1, {9.0, 4.0}),    // strictly above
        mklink(2, {-2.0, -1.0}, 2, {-2.0, 4.0}), // crosses
    };
    const auto risk = at_risk(active, O);
    REQUIRE(risk.size() == 2);
    CHECK(risk[0].ue == 0);
    CHECK(risk[1].ue == 2);

    CHECK(at_risk(active, TrajectorySet{}).empty());
}

TEST_CASE("an endpoint touching the trajectory still counts as at risk") {
    const TrajectorySet O = traj({kXAxis});
    const std::vector<Link> active = {mklink(0, {3.0, 0.0}, 1, {3.0, 5.0})};
    CHECK(at_risk(active, O).size() == 1);
}

TEST_CASE("handoff goes to the lowest-id clean feasible mmWave BS") {
    const TrajectorySet O = traj({kXAxis});
    const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                               {1, {0.0, -3.0}, StationKind::MmWave},
                                               {2, {10.0, 5.0}, StationKind::MmWave},
                                               {3, {3.0, 4.0}, StationKind::MmWave}};
    const std::vector<Link> active = {mklink(7, {0.0, 1.0}, 1, {0.0, -3.0})};
    const auto decisions = propose_handoffs(active, O, stations, PathLossModel{});
    REQUIRE(decisions.size() == 1);
    CHECK(decisions[0].ue == 7);
    CHECK(decisions[0].from_bs == 1);
    CHECK(decisions[0].to_bs == 2);  // 2 and 3 both work; 2 has the smaller id
    CHECK_FALSE(decisions[0].to_lte);
    CHECK(decisions[0].reason == HandoffReason::TrajectoryRisk);
}

TEST_CASE("crossed or tangent replacement segments are skipped") {
    const TrajectorySet O = traj({kXAxis});
    const std::vector<Link> active = {mklink(0, {0.0, 1.0}, 1, {0.0, -3.0})};

    SUBCASE("crossed candidate falls through to the next id") {
        const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                                   {1, {0.0, -3.0}, StationKind::MmWave},
                                                   {2, {4.0, -5.0}, StationKind::MmWave},
                                                   {3, {3.0, 4.0}, StationKind::MmWave}};
        const auto d = propose_handoffs(active, O, stations, PathLossModel{});
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_bs == 3);
    }
    SUBCASE("tangency at the BS endpoint disqualifies too") {
        const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                                   {1, {0.0, -3.0}, StationKind::MmWave},
                                                   {2, {5.0, 0.0}, StationKind::MmWave}};
        const auto d = propose_handoffs(active, O, stations, PathLossModel{});
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_lte);
    }
    SUBCASE("everything crossed lands on LTE") {
        const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                                   {1, {0.0, -3.0}, StationKind::MmWave},
                                                   {2, {4.0, -5.0}, StationKind::MmWave}};
        const auto d = propose_handoffs(active, O, stations, PathLossModel{});
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_bs == 0);
        CHECK(d[0].to_lte);
    }
}

TEST_CASE("the current BS and co-located stations are never candidates") {
    const TrajectorySet O = traj({kXAxis});
    // Station 2 sits exactly on the UE: a zero-length segment, skipped.
    const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                               {1, {0.0, -3.0}, StationKind::MmWave},
                                               {2, {0.0, 1.0}, StationKind::MmWave}};
    const std::vector<Link> active = {mklink(0, {0.0, 1.0}, 1, {0.0, -3.0})};
    const auto d = propose_handoffs(active, O, stations, PathLossModel{});
    REQUIRE(d.size() == 1);
    CHECK(d[0].to_lte);
}

TEST_CASE("feasibility filtering respects the switch and the shadowing lookup") {
    const TrajectorySet O = traj({kXAxis});
    PathLossModel pl;
    pl.max_loss = 80.0;  // feasible range just over 8.5 m
    const std::vector<Link> active = {mklink(5, {0.0, 1.0}, 1, {0.0, -3.0})};

    SUBCASE("an out-of-range candidate is skipped, or kept when checks are off") {
        const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                                   {1, {0.0, -3.0}, StationKind::MmWave},
                                                   {2, {30.0, 1.0}, StationKind::MmWave}};
        auto d = propose_handoffs(active, O, stations, pl);
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_lte);

        HandoffOptions open;
        open.check_feasibility = false;
        d = propose_handoffs(active, O, stations, pl, open);
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_bs == 2);
    }
    SUBCASE("shadowing from the lookup can push a candidate out of range") {
        // 8 m away: loss 79.5 dB on its own, 84.5 dB with the 5 dB draw.
        const std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte},
                                                   {1, {0.0, -3.0}, StationKind::MmWave},
                                                   {2, {8.0, 1.0}, StationKind::MmWave}};
        auto d = propose_handoffs(active, O, stations, pl);
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_bs == 2);

        HandoffOptions shadowed;
        std::set<std::pair<int, int>> asked;
        shadowed.zeta = [&](int ue, int bs) {
            asked.insert({ue, bs});
            return 5.0;
        };
        d = propose_handoffs(active, O, stations, pl, shadowed);
        REQUIRE(d.size() == 1);
        CHECK(d[0].to_lte);
        CHECK(asked.count({5, 2}) == 1);
    }
}

TEST_CASE("exactly one LTE station is required") {
    const TrajectorySet O = traj({kXAxis});
    const std::vector<Link> active = {mklink(0, {0.0, 1.0}, 1, {0.0, -3.0})};
    const std::vector<BaseStation> none = {{1, {0.0, -3.0}, StationKind::MmWave}};
    CHECK_THROWS_WITH_AS(propose_handoffs(active, O, none, PathLossModel{}),
                         "propose_handoffs: no LTE station", std::invalid_argument);
    const std::vector<BaseStation> two = {{0, {50.0, 50.0}, StationKind::Lte},
                                          {1, {60.0, 60.0}, StationKind::Lte}};
    CHECK_THROWS_WITH_AS(propose_handoffs(active, O, two, PathLossModel{}),
                         "propose_handoffs: multiple LTE stations", std::invalid_argument);
}

TEST_CASE("proposed mmWave replacements are always clear and feasible") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    PathLossModel pl;

    for (int trial = 0; trial < 200; ++trial) {
        const TrajectorySet O =
            traj({line_through({coord(rng), coord(rng)}, {coord(rng), coord(rng)}),
                  line_through({coord(rng), coord(rng)}, {coord(rng), coord(rng)})});
        std::vector<BaseStation> stations = {{0, {50.0, 50.0}, StationKind::Lte}};
        for (int b = 1; b <= 4; ++b)
            stations.push_back({b, {coord(rng), coord(rng)}, StationKind::MmWave});
        std::vector<Link> active;
        for (int u = 0; u < 5; ++u) {
            const int bs = 1 + int(rng() % 4);
            active.push_back(mklink(u, {coord(rng), coord(rng)}, bs,
                                    stations[std::size_t(bs)].pos));
        }

        const auto risk = at_risk(active, O);
        const auto decisions = propose_handoffs(active, O, stations, pl);
        REQUIRE(decisions.size() == risk.size());

        for (std::size_t i = 0; i < decisions.size(); ++i) {
            const auto& d = decisions[i];
            CHECK(d.ue == risk[i].ue);  // one decision per at-risk link, in order
            if (d.to_lte) {
                CHECK(d.to_bs == 0);
                continue;
            }
            const Segment seg{risk[i].seg.a, stations[std::size_t(d.to_bs)].pos};
            CHECK_FALSE(O.any_intersects(seg));
            CHECK(link_feasible(pl, seg, 0.0));
            CHECK(d.to_bs != d.from_bs);
        }
    }
}
