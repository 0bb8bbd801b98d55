#pragma once

// Evaluation: blockage-prediction confusion matrix and derived metrics, the
// camera deployment baseline, tracking-capability measures for both methods,
// and handoff success rate.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mmtrack/handoff.hpp"
#include "mmtrack/sim.hpp"
#include "mmtrack/track.hpp"
#include "mmtrack/world.hpp"

namespace mmtrack {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
};

// Ratios whose denominator is zero stay unset rather than being zero-filled.
struct Metrics {
    std::optional<double> accuracy;
    std::optional<double> sensitivity;  // tp / (tp + fn)
    std::optional<double> precision;    // tp / (tp + fp)
};

using LinkFlags = std::vector<std::pair<LinkId, bool>>;  // sorted by key

// Both maps must classify exactly the same link set; a mismatch throws
// std::invalid_argument naming the first offending link.
ConfusionMatrix confusion(const LinkFlags& predicted, const LinkFlags& actual);

// Throws std::invalid_argument on an empty matrix.
Metrics metrics(const ConfusionMatrix& cm);

struct Camera {
    Point2 pos;
    double heading = 0.0;      // radians
    double fov = M_PI / 2.0;   // full opening angle
    double r_min = 0.5;
    double r_max = 3.5;
};

struct CameraDeployment {
    std::vector<Camera> cams;
};

// Annular sector membership, boundaries inclusive; anything closer than r_min
// is unseen even on the axis.
bool camera_covers(const Camera& cam, Point2 p);

// True iff every sampled center position over t = 0, delta, ..., tau is seen
// by at least one camera (positions outside the motion domain count unseen).
bool camera_tracked(const CameraDeployment& dep, const Obstacle& o, double tau, double delta);

// Fraction of obstacles for which some reported line stays within eps_match
// (perpendicular distance) of every sampled center position over [0, tau].
// NaN when there are no obstacles.
double tracking_capability_ours(const TrajectorySet& O, const std::vector<Obstacle>& obstacles,
                                double tau, double delta, double eps_match = 2.0);

double tracking_capability_camera(const CameraDeployment& dep,
                                  const std::vector<Obstacle>& obstacles, double tau,
                                  double delta);

// Fraction of actually-blocked active links rescued by their handoff: moved to
// an mmWave BS whose replacement segment never blocks during implementation.
// LTE moves and missed links count only in the denominator. `outcome` must
// classify every active link and every proposed mmWave replacement segment.
// Unset when no active link is actually blocked.
std::optional<double> handoff_performance(const std::vector<HandoffDecision>& decisions,
                                          const std::vector<Link>& active,
                                          const EpochOutcome& outcome);

}  // namespace mmtrack
