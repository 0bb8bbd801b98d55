#pragma once

// Epoch simulation: seeded world generation, the slotted discovery phase that
// records first-failure times per link, ground-truth blockage over the
// implementation phase, and trace-file import.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mmtrack/scenario.hpp"
#include "mmtrack/world.hpp"

namespace mmtrack {

// Per-BS blocked-link observations, each link at most once, ordered by
// blocking slot (ties keep active-list order).
struct DiscoveryLog {
    std::map<int, std::vector<BlockedLink>> per_bs;

    std::size_t total() const;
    std::vector<BlockedLink> all() const;  // BS id order, then slot order
};

using LinkId = std::pair<int, int>;  // (ue, bs)

// Actual blockage of each queried link over the implementation phase.
struct EpochOutcome {
    std::vector<std::pair<LinkId, bool>> rows;  // sorted by (ue, bs)

    const bool* find(LinkId id) const;
};

struct ScenarioParams {
    AreaDims area;
    EpochConfig epoch;
    PathLossModel pl;
    GenerateParams gen;
};

// Seeded, deterministic draw order: BS positions, UE positions, arrivals (if
// enabled), obstacle start/heading/speed, then per-(ue,bs) shadowing. Each UE
// associates with the nearest mmWave BS whose link is feasible under that
// pair's shadowing; UEs with no feasible mmWave BS stay on LTE and contribute
// no active link.
World generate_scenario(const ScenarioParams& p, std::uint64_t seed);

// Explicit entities from the scenario plus generated ones, same draw order.
World world_from_scenario(const Scenario& s, std::uint64_t seed);

// Scans slots t = 0, delta, ..., tau. A link is logged once, at its earliest
// blocked slot at or after its arrival.
DiscoveryLog run_discovery(const World& w);

// actual_blocked = blocked at any slot in (tau, T] at or after link arrival
// (arrival looked up per UE id; unknown UE ids count as present from t = 0).
EpochOutcome ground_truth_blockage(const World& w, const std::vector<Link>& links);

// Trace CSV: header "id,t,x,y" (meters) or "id,t,lat,lon" (projected about
// origin). Keeps samples inside [t0, t0 + T], shifts times so the window
// starts at 0, and builds one polyline obstacle per id (ascending). Parse
// problems raise std::runtime_error with the line number; an id with fewer
// than two in-window samples raises naming the id.
std::vector<Obstacle> load_trace(const std::string& path, Point2 origin, double t0, double T,
                                 double half_width = 0.5, int id_base = 0);

int slot_of(double t, double delta);
double slot_time(int i, double delta);

}  // namespace mmtrack
