#include "mmtrack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "mmtrack/csv.hpp"
#include "mmtrack/ilp.hpp"

namespace mmtrack {

namespace {

HandoffOptions handoff_options(const World& w, bool check_feasibility) {
    HandoffOptions opt;
    opt.check_feasibility = check_feasibility;
    opt.zeta = [&w](int ue, int bs) { return w.zeta(ue, bs); };
    return opt;
}

Segment replacement_segment(const World& w, const HandoffDecision& d) {
    const UserEquipment* u = w.ue(d.ue);
    const BaseStation* b = w.station(d.to_bs);
    if (u == nullptr || b == nullptr)
        throw std::logic_error("handoff decision references ids missing from the world");
    return Segment{u->pos, b->pos};
}

// Active links plus each proposed mmWave replacement segment, deduplicated
// by (ue, bs) so the ground-truth pass evaluates every key exactly once.
std::vector<Link> outcome_links(const World& w, const std::vector<HandoffDecision>& decisions) {
    std::vector<Link> links;
    std::set<LinkId> seen;
    for (const Link& l : w.active) {
        if (seen.insert({l.ue, l.bs}).second) links.push_back(l);
    }
    for (const HandoffDecision& d : decisions) {
        if (d.to_lte) continue;
        if (!seen.insert({d.ue, d.to_bs}).second) continue;
        links.push_back(Link{d.ue, d.to_bs, replacement_segment(w, d)});
    }
    return links;
}

}  // namespace

EpochResult run_epoch(const World& w, const EpochOptions& opt) {
    EpochResult r;
    r.log = run_discovery(w);
    r.n_blocked = r.log.total();
    r.traj = track_per_bs(r.log);
    r.decisions =
        propose_handoffs(w.active, r.traj, w.stations, w.pl,
                         handoff_options(w, opt.handoff_check_feasibility));
    r.outcome = ground_truth_blockage(w, outcome_links(w, r.decisions));

    for (const Link& l : w.active) {
        LinkId id{l.ue, l.bs};
        r.predicted.push_back({id, r.traj.any_intersects(l.seg)});
        const bool* b = r.outcome.find(id);
        r.actual.push_back({id, b != nullptr && *b});
    }
    std::sort(r.predicted.begin(), r.predicted.end());
    r.predicted.erase(std::unique(r.predicted.begin(), r.predicted.end()), r.predicted.end());
    std::sort(r.actual.begin(), r.actual.end());
    r.actual.erase(std::unique(r.actual.begin(), r.actual.end()), r.actual.end());

    r.cm = confusion(r.predicted, r.actual);
    r.m = metrics(r.cm);
    r.handoff_perf = handoff_performance(r.decisions, w.active, r.outcome);
    r.tracking_ours =
        tracking_capability_ours(r.traj, w.obstacles, w.epoch.tau, w.epoch.delta, opt.eps_match);
    return r;
}

// --- confusion-matrix regimes -------------------------------------------------

RegimeAggregate run_confusion_regime(const Scenario& sc, const std::string& name, int trials,
                                     std::uint64_t seed) {
    if (trials <= 0) throw std::invalid_argument("run_confusion_regime: trials must be positive");
    RegimeAggregate agg;
    agg.name = name;
    agg.trials = trials;

    EpochOptions eopt;
    eopt.handoff_check_feasibility = sc.handoff_check_feasibility;

    std::vector<double> acc;
    std::vector<std::optional<double>> sens, prec;
    double failed = 0.0, tp = 0.0, fp = 0.0, fn = 0.0, tn = 0.0;
    int counted = 0;
    for (int t = 0; t < trials; ++t) {
        World w = world_from_scenario(sc, seed + static_cast<std::uint64_t>(t));
        EpochResult r = run_epoch(w, eopt);
        failed += static_cast<double>(r.n_blocked);
        double total = static_cast<double>(r.cm.total());
        if (total <= 0.0) continue;  // no active links this trial
        ++counted;
        tp += 100.0 * static_cast<double>(r.cm.tp) / total;
        fp += 100.0 * static_cast<double>(r.cm.fp) / total;
        fn += 100.0 * static_cast<double>(r.cm.fn) / total;
        tn += 100.0 * static_cast<double>(r.cm.tn) / total;
        acc.push_back(*r.m.accuracy);
        sens.push_back(r.m.sensitivity);
        prec.push_back(r.m.precision);
    }
    if (counted == 0)
        throw std::runtime_error("run_confusion_regime: no trial produced active links");
    agg.mean_failed = failed / trials;
    agg.tp_pct = tp / counted;
    agg.fp_pct = fp / counted;
    agg.fn_pct = fn / counted;
    agg.tn_pct = tn / counted;
    agg.mean_accuracy = mean(acc);
    agg.mean_sensitivity = mean_defined(sens);
    agg.mean_precision = mean_defined(prec);
    return agg;
}

// --- camera sweep ---------------------------------------------------------------

namespace {

// Decorrelates camera placement from the world draws of the same trial.
std::uint64_t camera_seed(std::uint64_t trial_seed) {
    return trial_seed * 0x9E3779B97F4A7C15ULL + 0x60642E2A34326F15ULL;
}

std::vector<Camera> draw_cameras(std::mt19937_64& rng, int count, const AreaDims& area,
                                 const CameraSweepSpec& spec) {
    std::uniform_real_distribution<double> ux(0.0, area.width);
    std::uniform_real_distribution<double> uy(0.0, area.height);
    std::uniform_real_distribution<double> uh(0.0, 2.0 * M_PI);
    std::vector<Camera> cams;
    cams.reserve(count);
    for (int i = 0; i < count; ++i) {
        double x = ux(rng);
        double y = uy(rng);
        double h = uh(rng);
        cams.push_back(Camera{Point2{x, y}, h, spec.fov, spec.r_min, spec.r_max});
    }
    return cams;
}

constexpr int kNeverTracked = std::numeric_limits<int>::max();

// Smallest deployment prefix (first n cameras) that sees every sampled center
// position over [0, tau]; kNeverTracked when even the full pool misses one.
int cameras_needed(const std::vector<Camera>& pool, const Obstacle& o, double tau, double delta) {
    int needed = 0;
    for (int s = 0; s <= slot_of(tau, delta); ++s) {
        double t = slot_time(s, delta);
        if (!motion_defined_at(o.motion, t)) return kNeverTracked;
        Point2 p = obstacle_center_at(o, t);
        int first = kNeverTracked;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (camera_covers(pool[i], p)) {
                first = static_cast<int>(i) + 1;
                break;
            }
        }
        if (first == kNeverTracked) return kNeverTracked;
        needed = std::max(needed, first);
    }
    return needed;
}

// Straight-line motion estimate the camera baseline hands to the handoff
// logic: the line through the obstacle's start and a later position.
std::optional<Line2> motion_line(const Obstacle& o) {
    Point2 a, b;
    if (const auto* lm = std::get_if<LinearMotion>(&o.motion)) {
        a = lm->start;
        b = lm->start + lm->velocity;
    } else {
        const auto& pts = std::get<PolylineMotion>(o.motion).waypoints;
        a = pts.front().p;
        b = pts.back().p;
    }
    if (dist(a, b) <= kPointTol) return std::nullopt;
    return line_through(a, b);
}

// Ground-truth lookup that reuses rows already evaluated for this world.
struct TruthMemo {
    const World& w;
    std::map<LinkId, bool> known;

    explicit TruthMemo(const World& world, const EpochOutcome& base) : w(world) {
        known.insert(base.rows.begin(), base.rows.end());
    }

    bool actual(const Link& l) {
        auto it = known.find({l.ue, l.bs});
        if (it != known.end()) return it->second;
        EpochOutcome o = ground_truth_blockage(w, {l});
        bool b = o.rows.front().second;
        known.emplace(LinkId{l.ue, l.bs}, b);
        return b;
    }
};

}  // namespace

std::vector<CameraSweepRow> run_camera_sweep(const Scenario& sc, const CameraSweepSpec& spec,
                                             int trials, std::uint64_t seed) {
    if (trials <= 0) throw std::invalid_argument("run_camera_sweep: trials must be positive");
    if (spec.counts.empty()) throw std::invalid_argument("run_camera_sweep: no camera counts");
    int max_count = *std::max_element(spec.counts.begin(), spec.counts.end());
    if (max_count < 0) throw std::invalid_argument("run_camera_sweep: negative camera count");

    EpochOptions eopt;
    eopt.eps_match = spec.eps_match;
    eopt.handoff_check_feasibility = sc.handoff_check_feasibility;

    std::size_t nc = spec.counts.size();
    std::vector<double> ours_track;
    std::vector<std::optional<double>> ours_handoff;
    std::vector<std::vector<double>> cam_track(nc);
    std::vector<std::vector<std::optional<double>>> cam_handoff(nc);

    for (int t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        World w = world_from_scenario(sc, trial_seed);
        EpochResult r = run_epoch(w, eopt);
        if (std::isfinite(r.tracking_ours)) ours_track.push_back(r.tracking_ours);
        ours_handoff.push_back(r.handoff_perf);

        std::mt19937_64 crng(camera_seed(trial_seed));
        std::vector<Camera> pool = draw_cameras(crng, max_count, w.area, spec);
        std::vector<int> needed(w.obstacles.size(), kNeverTracked);
        for (std::size_t i = 0; i < w.obstacles.size(); ++i)
            needed[i] = cameras_needed(pool, w.obstacles[i], w.epoch.tau, w.epoch.delta);

        TruthMemo memo(w, r.outcome);
        HandoffOptions hopt = handoff_options(w, sc.handoff_check_feasibility);
        for (std::size_t ci = 0; ci < nc; ++ci) {
            int n = spec.counts[ci];
            TrajectorySet cam_traj;
            int tracked = 0;
            for (std::size_t i = 0; i < w.obstacles.size(); ++i) {
                if (needed[i] == kNeverTracked || needed[i] > n) continue;
                ++tracked;
                if (auto line = motion_line(w.obstacles[i])) {
                    TrajectoryEntry e;
                    e.line = *line;
                    cam_traj.entries.push_back(e);
                }
            }
            if (!w.obstacles.empty())
                cam_track[ci].push_back(static_cast<double>(tracked) /
                                        static_cast<double>(w.obstacles.size()));

            std::vector<HandoffDecision> dec =
                propose_handoffs(w.active, cam_traj, w.stations, w.pl, hopt);
            EpochOutcome out;
            out.rows = r.outcome.rows;
            for (const HandoffDecision& d : dec) {
                if (d.to_lte) continue;
                Link nl{d.ue, d.to_bs, replacement_segment(w, d)};
                if (!out.find({nl.ue, nl.bs}))
                    out.rows.push_back({{nl.ue, nl.bs}, memo.actual(nl)});
                std::sort(out.rows.begin(), out.rows.end());
            }
            cam_handoff[ci].push_back(handoff_performance(dec, w.active, out));
        }
    }

    double ours_track_mean = ours_track.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                : mean(ours_track);
    std::optional<double> ours_handoff_mean = mean_defined(ours_handoff);

    std::vector<CameraSweepRow> rows;
    rows.reserve(nc);
    for (std::size_t ci = 0; ci < nc; ++ci) {
        CameraSweepRow row;
        row.count = spec.counts[ci];
        row.tracking_ours = ours_track_mean;
        row.tracking_camera = cam_track[ci].empty() ? std::numeric_limits<double>::quiet_NaN()
                                                    : mean(cam_track[ci]);
        row.handoff_ours = ours_handoff_mean;
        row.handoff_camera = mean_defined(cam_handoff[ci]);
        rows.push_back(row);
    }
    return rows;
}

// --- discovery-length sweep ----------------------------------------------------

std::vector<TauSweepRow> run_tau_sweep(const Scenario& sc, const std::vector<double>& taus,
                                       int trials, std::uint64_t seed) {
    if (trials <= 0) throw std::invalid_argument("run_tau_sweep: trials must be positive");
    if (taus.empty()) throw std::invalid_argument("run_tau_sweep: no tau values");

    EpochOptions eopt;
    eopt.handoff_check_feasibility = sc.handoff_check_feasibility;

    std::vector<TauSweepRow> rows;
    rows.reserve(taus.size());
    for (double tau : taus) {
        Scenario s2 = sc;
        s2.epoch.tau = tau;
        validate_epoch(s2.epoch);

        std::vector<double> acc, track;
        std::vector<std::optional<double>> sens, prec, handoff;
        double failed = 0.0;
        // Same trial seeds at every tau, so points differ only by tau.
        for (int t = 0; t < trials; ++t) {
            World w = world_from_scenario(s2, seed + static_cast<std::uint64_t>(t));
            EpochResult r = run_epoch(w, eopt);
            failed += static_cast<double>(r.n_blocked);
            if (r.cm.total() > 0) {
                acc.push_back(*r.m.accuracy);
                sens.push_back(r.m.sensitivity);
                prec.push_back(r.m.precision);
            }
            handoff.push_back(r.handoff_perf);
            if (std::isfinite(r.tracking_ours)) track.push_back(r.tracking_ours);
        }
        TauSweepRow row;
        row.tau = tau;
        row.mean_failed = failed / trials;
        row.accuracy = acc.empty() ? std::numeric_limits<double>::quiet_NaN() : mean(acc);
        row.sensitivity = mean_defined(sens);
        row.precision = mean_defined(prec);
        row.handoff_perf = mean_defined(handoff);
        row.tracking_ours = track.empty() ? std::numeric_limits<double>::quiet_NaN() : mean(track);
        rows.push_back(row);
    }
    return rows;
}

// --- CLI drivers ----------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    if (dir.empty()) throw std::invalid_argument("output directory must not be empty");
    fs::create_directories(dir);
}

std::string fmt_opt(const std::optional<double>& v) {
    if (!v.has_value() || !std::isfinite(*v)) return "nan";
    return num_str(*v);
}

std::string fmt_nan(double v) {
    if (!std::isfinite(v)) return "nan";
    return num_str(v);
}

struct SweepCsvRow {
    double value = 0.0;
    std::optional<double> accuracy, sensitivity, precision, handoff, tracking_ours,
        tracking_camera;
};

// Shared layout for every sweep CSV; metrics a sweep does not produce are nan.
void write_sweep_csv(const std::string& path, const std::string& param,
                     const std::vector<SweepCsvRow>& rows) {
    CsvWriter w(path);
    w.row({"sweep_param", "value", "accuracy", "sensitivity", "precision", "handoff_perf",
           "tracking_ours", "tracking_camera"});
    for (const SweepCsvRow& r : rows) {
        w.row({param, num_str(r.value), fmt_opt(r.accuracy), fmt_opt(r.sensitivity),
               fmt_opt(r.precision), fmt_opt(r.handoff), fmt_opt(r.tracking_ours),
               fmt_opt(r.tracking_camera)});
    }
    w.close();
}

Scenario scenario_for(const Scenario& base, const std::string& section) {
    const DocSection* sec = base.experiment(section);
    if (sec == nullptr) return base;
    return apply_overrides(base, *sec);
}

const DocSection& require_section(const Scenario& sc, const std::string& name) {
    const DocSection* sec = sc.experiment(name);
    if (sec == nullptr)
        throw std::runtime_error("scenario has no [" + name + "] section");
    return *sec;
}

int resolve_trials(const DocSection* sec, const DriverOpts& opt, int fallback) {
    if (opt.trials.has_value()) return *opt.trials;
    if (sec != nullptr) return static_cast<int>(section_int(*sec, "trials", fallback));
    return fallback;
}

std::uint64_t resolve_seed(const Scenario& sc, const DriverOpts& opt) {
    return opt.seed.value_or(sc.seed);
}

}  // namespace

void drive_single(const Scenario& sc, const DriverOpts& opt) {
    Scenario s = scenario_for(sc, "single");
    std::uint64_t seed = resolve_seed(s, opt);
    s.seed = seed;
    ensure_dir(opt.out_dir);

    World w = world_from_scenario(s, seed);
    EpochOptions eopt;
    eopt.handoff_check_feasibility = s.handoff_check_feasibility;
    EpochResult r = run_epoch(w, eopt);

    {
        std::ofstream f(join(opt.out_dir, "world.cfg"), std::ios::binary);
        f << write_scenario(s);
    }
    {
        CsvWriter c(join(opt.out_dir, "discovery.csv"));
        c.row({"bs_id", "ue_id", "t_block"});
        for (const auto& [bs, blocked] : r.log.per_bs)
            for (const BlockedLink& b : blocked)
                c.row({num_str(bs), num_str(b.link.ue), num_str(b.t_block)});
        c.close();
    }
    {
        CsvWriter c(join(opt.out_dir, "trajectories.csv"));
        c.row({"line_index", "bs_id", "a", "b", "c"});
        std::size_t i = 0;
        for (const TrajectoryEntry& e : r.traj.entries) {
            c.row({num_str(i), num_str(e.bs_id), num_str(e.line.a), num_str(e.line.b),
                   num_str(e.line.c)});
            ++i;
        }
        c.close();
    }
    {
        CsvWriter c(join(opt.out_dir, "decisions.csv"));
        c.row({"ue_id", "from_bs", "to", "reason"});
        for (const HandoffDecision& d : r.decisions)
            c.row({num_str(d.ue), num_str(d.from_bs), num_str(d.to_bs), "trajectory_risk"});
        c.close();
    }
    {
        CsvWriter c(join(opt.out_dir, "outcome.csv"));
        c.row({"ue_id", "bs_id", "actual_blocked"});
        for (const auto& [id, blocked] : r.outcome.rows)
            c.row({num_str(id.first), num_str(id.second), blocked ? "1" : "0"});
        c.close();
    }
    for (const auto& [bs, blocked] : r.log.per_bs) {
        if (blocked.empty()) continue;
        save_cover_instance(join(opt.out_dir, "cover_bs" + num_str(bs) + ".csv"), blocked);
    }
    {
        CsvWriter c(join(opt.out_dir, "summary.csv"));
        c.row({"n_active", "n_blocked", "n_trajectories", "n_at_risk", "accuracy", "sensitivity",
               "precision", "handoff_perf", "tracking_ours"});
        std::size_t n_risk = at_risk(w.active, r.traj).size();
        c.row({num_str(w.active.size()), num_str(r.n_blocked), num_str(r.traj.entries.size()),
               num_str(n_risk), fmt_opt(r.m.accuracy), fmt_opt(r.m.sensitivity),
               fmt_opt(r.m.precision), fmt_opt(r.handoff_perf), fmt_nan(r.tracking_ours)});
        c.close();
    }
}

void drive_confusion_sweep(const Scenario& sc, const DriverOpts& opt) {
    const DocSection& sa = require_section(sc, "confusion_a");
    const DocSection& sb = require_section(sc, "confusion_b");
    ensure_dir(opt.out_dir);
    std::uint64_t seed = resolve_seed(sc, opt);

    RegimeAggregate a = run_confusion_regime(apply_overrides(sc, sa), "a",
                                             resolve_trials(&sa, opt, 500), seed);
    RegimeAggregate b = run_confusion_regime(apply_overrides(sc, sb), "b",
                                             resolve_trials(&sb, opt, 500), seed);

    CsvWriter c(join(opt.out_dir, "confusion.csv"));
    c.row({"regime", "trials", "mean_failed_links", "tp_pct", "fp_pct", "fn_pct", "tn_pct",
           "accuracy", "sensitivity", "precision"});
    for (const RegimeAggregate* r : {&a, &b}) {
        c.row({r->name, num_str(r->trials), num_str(r->mean_failed), num_str(r->tp_pct),
               num_str(r->fp_pct), num_str(r->fn_pct), num_str(r->tn_pct),
               num_str(r->mean_accuracy), fmt_opt(r->mean_sensitivity),
               fmt_opt(r->mean_precision)});
    }
    c.close();
}

namespace {

std::vector<int> counts_from_section(const DocSection& sec) {
    // "counts = lo hi step" expands to lo, lo+step, ..., hi.
    std::vector<double> v = section_doubles(sec, "counts");
    if (v.size() != 3)
        throw std::runtime_error("[camera_sweep] counts wants three values: lo hi step");
    int lo = static_cast<int>(v[0]);
    int hi = static_cast<int>(v[1]);
    int step = static_cast<int>(v[2]);
    if (lo < 0 || hi < lo || step <= 0)
        throw std::runtime_error("[camera_sweep] counts range is invalid");
    std::vector<int> counts;
    for (int n = lo; n <= hi; n += step) counts.push_back(n);
    return counts;
}

}  // namespace

void drive_camera_sweep(const Scenario& sc, const DriverOpts& opt) {
    const DocSection& sec = require_section(sc, "camera_sweep");
    Scenario s = apply_overrides(sc, sec);
    ensure_dir(opt.out_dir);

    CameraSweepSpec spec;
    spec.counts = counts_from_section(sec);
    spec.eps_match = section_double(sec, "eps_match", spec.eps_match);
    spec.fov = section_double(sec, "fov", spec.fov);
    spec.r_min = section_double(sec, "r_min", spec.r_min);
    spec.r_max = section_double(sec, "r_max", spec.r_max);

    int trials = resolve_trials(&sec, opt, 200);
    std::uint64_t seed = resolve_seed(s, opt);
    std::vector<CameraSweepRow> rows = run_camera_sweep(s, spec, trials, seed);

    // Two files with the common sweep layout: handoff_perf is our method's in
    // the first and the camera baseline's in the second.
    std::vector<SweepCsvRow> ours, cam;
    for (const CameraSweepRow& r : rows) {
        SweepCsvRow o;
        o.value = r.count;
        o.handoff = r.handoff_ours;
        o.tracking_ours = r.tracking_ours;
        o.tracking_camera = r.tracking_camera;
        ours.push_back(o);
        SweepCsvRow c = o;
        c.handoff = r.handoff_camera;
        cam.push_back(c);
    }
    write_sweep_csv(join(opt.out_dir, "camera_sweep.csv"), "camera_count", ours);
    write_sweep_csv(join(opt.out_dir, "camera_sweep_camera.csv"), "camera_count", cam);
}

void drive_tau_sweep(const Scenario& sc, const DriverOpts& opt) {
    const DocSection& sec = require_section(sc, "tau_sweep");
    Scenario s = apply_overrides(sc, sec);
    ensure_dir(opt.out_dir);

    std::vector<double> taus = section_doubles(sec, "taus");
    if (taus.empty()) throw std::runtime_error("[tau_sweep] taus must not be empty");
    int trials = resolve_trials(&sec, opt, 200);
    std::uint64_t seed = resolve_seed(s, opt);

    std::vector<TauSweepRow> rows = run_tau_sweep(s, taus, trials, seed);
    std::vector<SweepCsvRow> out;
    for (const TauSweepRow& r : rows) {
        SweepCsvRow o;
        o.value = r.tau;
        o.accuracy = std::isfinite(r.accuracy) ? std::optional<double>(r.accuracy) : std::nullopt;
        o.sensitivity = r.sensitivity;
        o.precision = r.precision;
        o.handoff = r.handoff_perf;
        o.tracking_ours = std::isfinite(r.tracking_ours)
                              ? std::optional<double>(r.tracking_ours)
                              : std::nullopt;
        out.push_back(o);
    }
    write_sweep_csv(join(opt.out_dir, "tau_sweep.csv"), "tau", out);
}

void drive_emit_ilp(const Scenario& sc, const DriverOpts& opt) {
    Scenario s = scenario_for(sc, "emit_ilp");
    const DocSection* sec = s.experiment("emit_ilp");
    double big_m = sec != nullptr ? section_double(*sec, "M", 1e6) : 1e6;
    ensure_dir(opt.out_dir);

    std::uint64_t seed = resolve_seed(s, opt);
    World w = world_from_scenario(s, seed);
    DiscoveryLog log = run_discovery(w);
    if (log.total() == 0)
        throw std::runtime_error("emit-ilp: discovery saw no blocked links; nothing to model");

    for (const auto& [bs, blocked] : log.per_bs) {
        if (blocked.empty()) continue;
        save_cover_instance(join(opt.out_dir, "cover_bs" + num_str(bs) + ".csv"), blocked);
        IlpModel m = build_ilp(blocked, w.epoch.k_max, big_m);
        std::ofstream f(join(opt.out_dir, "bs_" + num_str(bs) + ".lp"), std::ios::binary);
        f << emit_lp(m);
    }
    IlpModel all = build_ilp(log.all(), w.epoch.k_max, big_m);
    std::ofstream f(join(opt.out_dir, "epoch.lp"), std::ios::binary);
    f << emit_lp(all);
}

// --- small statistics used by sweep checks --------------------------------------

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::optional<double> mean_defined(const std::vector<std::optional<double>>& v) {
    std::vector<double> defined;
    for (const auto& o : v)
        if (o.has_value() && std::isfinite(*o)) defined.push_back(*o);
    if (defined.empty()) return std::nullopt;
    return mean(defined);
}

namespace {

// Fractional ranks, ties averaged.
std::vector<double> ranks_of(const std::vector<double>& v) {
    std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("spearman: needs at least two points");
    return pearson(ranks_of(x), ranks_of(y));
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("ls_slope: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("ls_slope: needs at least two points");
    double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("ls_slope: x has no variance");
    return sxy / sxx;
}

}  // namespace mmtrack
