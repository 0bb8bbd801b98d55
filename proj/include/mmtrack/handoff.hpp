#pragma once

// Proactive handoff: links whose segment is crossed by a reported trajectory
// get reassigned to the lowest-id mmWave BS whose replacement segment is
// clear of every trajectory (and feasible, unless disabled); otherwise LTE.

#include <functional>
#include <vector>

#include "mmtrack/track.hpp"
#include "mmtrack/world.hpp"

namespace mmtrack {

enum class HandoffReason { TrajectoryRisk };

struct HandoffDecision {
    int ue = -1;
    int from_bs = -1;
    int to_bs = -1;       // station id; the LTE station when no mmWave BS is clean
    bool to_lte = false;
    HandoffReason reason = HandoffReason::TrajectoryRisk;
};

struct HandoffOptions {
    bool check_feasibility = true;
    // Shadowing lookup for candidate links; default: no shadowing.
    std::function<double(int ue, int bs)> zeta = {};
};

// Active links crossed by at least one trajectory, in input order.
std::vector<Link> at_risk(const std::vector<Link>& active, const TrajectorySet& O);

// One decision per at-risk link. Candidate BSs are scanned in ascending id,
// skipping the current one; tangential trajectory contact disqualifies a
// candidate segment. Requires exactly one LTE station among `stations`.
std::vector<HandoffDecision> propose_handoffs(const std::vector<Link>& active,
                                              const TrajectorySet& O,
                                              const std::vector<BaseStation>& stations,
                                              const PathLossModel& pl,
                                              const HandoffOptions& opt = {});

}  // namespace mmtrack
