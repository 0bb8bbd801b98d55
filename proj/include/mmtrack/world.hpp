#pragma once

// Static network snapshot for one epoch: stations, UEs, obstacles with motion
// models, the active mmWave links, epoch timing and the path-loss model.
// Distances are meters, times seconds, losses dB.

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "mmtrack/geom.hpp"

namespace mmtrack {

enum class StationKind { MmWave, Lte };

struct BaseStation {
    int id = -1;
    Point2 pos;
    StationKind kind = StationKind::MmWave;
};

struct UserEquipment {
    int id = -1;
    Point2 pos;
    // Link-request arrival time; 0 means present from the epoch start. Requests
    // arriving during discovery join the active set immediately.
    double t_arrive = 0.0;
};

struct LinearMotion {
    Point2 start;
    Point2 velocity;  // m/s
};

struct PolylineMotion {
    std::vector<TimedPoint> waypoints;  // timestamps strictly increasing
};

using Motion = std::variant<LinearMotion, PolylineMotion>;

struct Obstacle {
    int id = -1;
    Motion motion;
    double half_width = 0.5;  // square footprint, side = 2 * half_width
};

// Active link between a UE and a (mmWave) BS. seg.a is the UE position and
// seg.b the BS position; candidate generation relies on that orientation.
struct Link {
    int ue = -1;
    int bs = -1;
    Segment seg;
};

struct BlockedLink {
    Link link;
    double t_block = 0.0;  // earliest blocked slot, multiple of delta in [0, tau]
};

struct EpochConfig {
    double T = 5.0;     // epoch length
    double tau = 3.0;   // discovery phase length, 0 < tau < T
    double delta = 0.1; // slot length; T and tau are multiples of it
    int k_max = 10;     // upper bound on obstacle count (ILP sizing)
};

struct PathLossModel {
    double a = 61.4;        // intercept, dB
    double b = 2.0;         // distance exponent
    double sigma = 5.8;     // shadowing std dev, dB
    double max_loss = 120.0;  // feasibility threshold, inclusive
};

struct AreaDims {
    double width = 100.0;
    double height = 100.0;
};

double path_loss(const PathLossModel& pl, double distance_m, double zeta_db);
bool link_feasible(const PathLossModel& pl, const Segment& seg, double zeta_db);

// Center position at time t. Throws std::out_of_range outside the motion
// domain (t < 0 for linear motion, t outside the waypoint span for polylines).
Point2 obstacle_center_at(const Obstacle& o, double t);
bool motion_defined_at(const Motion& m, double t);

// True iff the obstacle footprint touches the link segment at time t. Total:
// outside the motion domain the obstacle causes no blockage.
bool is_blocked(const Obstacle& o, double t, const Link& link);

void validate_epoch(const EpochConfig& e);

struct World {
    AreaDims area;
    std::vector<BaseStation> stations;  // exactly one Lte
    std::vector<UserEquipment> ues;
    std::vector<Obstacle> obstacles;
    std::vector<Link> active;           // mmWave links only
    EpochConfig epoch;
    PathLossModel pl;
    std::uint64_t seed = 0;
    // Shadowing draw per (ue, mmWave bs) pair, fixed for the epoch.
    std::map<std::pair<int, int>, double> shadowing;

    const BaseStation* station(int id) const;
    const UserEquipment* ue(int id) const;
    int lte_id() const;  // -1 if absent (validate() rejects that)
    std::vector<int> mmwave_ids() const;  // ascending
    double zeta(int ue_id, int bs_id) const;  // 0 if no draw stored

    // Checks id uniqueness, the single-LTE rule, in-area positions, epoch and
    // path-loss sanity, and that active links reference real endpoints.
    // Throws std::invalid_argument naming the offender.
    void validate() const;
};

}  // namespace mmtrack
