#pragma once

// One-epoch pipeline (discover -> track -> handoff -> score) plus the sweep
// drivers behind the CLI subcommands. All randomness derives from the base
// seed; trial i uses seed + i, so reruns are byte-identical.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmtrack/eval.hpp"
#include "mmtrack/handoff.hpp"
#include "mmtrack/scenario.hpp"
#include "mmtrack/sim.hpp"
#include "mmtrack/track.hpp"
#include "mmtrack/world.hpp"

namespace mmtrack {

struct EpochOptions {
    double eps_match = 2.0;
    bool handoff_check_feasibility = true;
};

struct EpochResult {
    DiscoveryLog log;
    TrajectorySet traj;
    std::vector<HandoffDecision> decisions;
    EpochOutcome outcome;   // active links plus proposed replacement segments
    LinkFlags predicted;    // active links: crossed by some trajectory
    LinkFlags actual;       // active links: blocked during implementation
    ConfusionMatrix cm;
    Metrics m;
    std::optional<double> handoff_perf;
    double tracking_ours = 0.0;  // NaN when the world has no obstacles
    std::size_t n_blocked = 0;   // discovery failures
};

EpochResult run_epoch(const World& w, const EpochOptions& opt = {});

// --- confusion-matrix regimes -------------------------------------------------

struct RegimeAggregate {
    std::string name;
    int trials = 0;
    double mean_failed = 0.0;     // discovery failures per epoch
    double tp_pct = 0.0, fp_pct = 0.0, fn_pct = 0.0, tn_pct = 0.0;
    double mean_accuracy = 0.0;
    std::optional<double> mean_sensitivity;  // over trials where defined
    std::optional<double> mean_precision;
};

RegimeAggregate run_confusion_regime(const Scenario& sc, const std::string& name, int trials,
                                     std::uint64_t seed);

// --- camera sweep ---------------------------------------------------------------

struct CameraSweepSpec {
    std::vector<int> counts;
    double eps_match = 2.0;
    double fov = M_PI / 2.0;
    double r_min = 0.5;
    double r_max = 3.5;
};

struct CameraSweepRow {
    int count = 0;
    double tracking_ours = 0.0;
    double tracking_camera = 0.0;
    std::optional<double> handoff_ours;
    std::optional<double> handoff_camera;
};

// Deployments are nested: the count-N deployment is the first N of the
// trial's camera pool, so the per-trial camera curve is monotone in N.
std::vector<CameraSweepRow> run_camera_sweep(const Scenario& sc, const CameraSweepSpec& spec,
                                             int trials, std::uint64_t seed);

// --- discovery-length sweep ----------------------------------------------------

struct TauSweepRow {
    double tau = 0.0;
    double accuracy = 0.0;
    std::optional<double> sensitivity;
    std::optional<double> precision;
    std::optional<double> handoff_perf;
    double tracking_ours = 0.0;
    double mean_failed = 0.0;
};

std::vector<TauSweepRow> run_tau_sweep(const Scenario& sc, const std::vector<double>& taus,
                                       int trials, std::uint64_t seed);

// --- CLI drivers ----------------------------------------------------------------

struct DriverOpts {
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

void drive_single(const Scenario& sc, const DriverOpts& opt);
void drive_confusion_sweep(const Scenario& sc, const DriverOpts& opt);
void drive_camera_sweep(const Scenario& sc, const DriverOpts& opt);
void drive_tau_sweep(const Scenario& sc, const DriverOpts& opt);
void drive_emit_ilp(const Scenario& sc, const DriverOpts& opt);

// --- small statistics used by sweep checks --------------------------------------

double mean(const std::vector<double>& v);
std::optional<double> mean_defined(const std::vector<std::optional<double>>& v);
double spearman(const std::vector<double>& x, const std::vector<double>& y);
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mmtrack
