#include "mmtrack/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mmtrack/csv.hpp"

namespace mmtrack {
namespace {

const std::set<std::string> kWorldSections = {"area",     "epoch", "pathloss", "generate",
                                              "stations", "ues",   "obstacles", "run"};
const std::set<std::string> kExperimentSections = {"single",       "confusion_a", "confusion_b",
                                                   "camera_sweep", "tau_sweep",   "emit_ilp"};

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw std::invalid_argument(origin + ": " + what);
}

double to_double(const std::string& origin, const std::string& field, const std::string& raw) {
    double v;
    if (!parse_double(trim(raw), v)) fail(origin, field + ": bad number '" + raw + "'");
    return v;
}

std::int64_t to_int(const std::string& origin, const std::string& field, const std::string& raw) {
    std::int64_t v;
    if (!parse_i64(trim(raw), v)) fail(origin, field + ": bad integer '" + raw + "'");
    return v;
}

bool to_bool(const std::string& origin, const std::string& field, const std::string& raw) {
    const std::string t = trim(raw);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    fail(origin, field + ": bad boolean '" + raw + "'");
}

std::vector<DocSection> parse_doc(const std::string& text, const std::string& origin) {
    std::vector<DocSection> sections;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    DocSection* cur = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                fail(origin, "line " + std::to_string(lineno) + ": malformed section header");
            sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
            cur = &sections.back();
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            fail(origin, "line " + std::to_string(lineno) + ": expected key = value");
        if (!cur) fail(origin, "line " + std::to_string(lineno) + ": entry before any section");
        cur->entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return sections;
}

// Single-valued scenario keys reject repeats; list keys (ue =, mmwave =, ...) may repeat.
void check_single(const std::string& origin, const DocSection& sec,
                  std::initializer_list<const char*> allowed) {
    std::set<std::string> seen;
    for (const auto& [k, v] : sec.entries) {
        (void)v;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return k == a; }) == allowed.end())
            fail(origin, "[" + sec.name + "] unknown key '" + k + "'");
        if (!seen.insert(k).second)
            fail(origin, "[" + sec.name + "] duplicate key '" + k + "'");
    }
}

const std::string* find_key(const DocSection& sec, const std::string& key) {
    for (const auto& [k, v] : sec.entries)
        if (k == key) return &v;
    return nullptr;
}

}  // namespace

const DocSection* Scenario::experiment(const std::string& name) const {
    for (const auto& s : experiments)
        if (s.name == name) return &s;
    return nullptr;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    Scenario s;
    const auto sections = parse_doc(text, origin);
    std::set<std::string> seen_sections;
    for (const auto& sec : sections) {
        if (kExperimentSections.count(sec.name)) {
            s.experiments.push_back(sec);
            continue;
        }
        if (!kWorldSections.count(sec.name)) fail(origin, "unknown section [" + sec.name + "]");
        if (!seen_sections.insert(sec.name).second)
            fail(origin, "duplicate section [" + sec.name + "]");

        if (sec.name == "area") {
            check_single(origin, sec, {"width", "height"});
            if (const auto* v = find_key(sec, "width")) s.area.width = to_double(origin, "area.width", *v);
            if (const auto* v = find_key(sec, "height")) s.area.height = to_double(origin, "area.height", *v);
        } else if (sec.name == "epoch") {
            check_single(origin, sec, {"T", "tau", "delta", "K_max"});
            if (const auto* v = find_key(sec, "T")) s.epoch.T = to_double(origin, "epoch.T", *v);
            if (const auto* v = find_key(sec, "tau")) s.epoch.tau = to_double(origin, "epoch.tau", *v);
            if (const auto* v = find_key(sec, "delta")) s.epoch.delta = to_double(origin, "epoch.delta", *v);
            if (const auto* v = find_key(sec, "K_max"))
                s.epoch.k_max = static_cast<int>(to_int(origin, "epoch.K_max", *v));
        } else if (sec.name == "pathloss") {
            check_single(origin, sec, {"A", "B", "sigma", "max_loss"});
            if (const auto* v = find_key(sec, "A")) s.pl.a = to_double(origin, "pathloss.A", *v);
            if (const auto* v = find_key(sec, "B")) s.pl.b = to_double(origin, "pathloss.B", *v);
            if (const auto* v = find_key(sec, "sigma")) s.pl.sigma = to_double(origin, "pathloss.sigma", *v);
            if (const auto* v = find_key(sec, "max_loss"))
                s.pl.max_loss = to_double(origin, "pathloss.max_loss", *v);
        } else if (sec.name == "generate") {
            check_single(origin, sec, {"n_mmwave_bs", "n_ue", "n_obstacles", "v_min", "v_max",
                                       "half_width", "arrivals"});
            GenerateParams g;
            if (const auto* v = find_key(sec, "n_mmwave_bs"))
                g.n_mmwave_bs = static_cast<int>(to_int(origin, "generate.n_mmwave_bs", *v));
            if (const auto* v = find_key(sec, "n_ue"))
                g.n_ue = static_cast<int>(to_int(origin, "generate.n_ue", *v));
            if (const auto* v = find_key(sec, "n_obstacles"))
                g.n_obstacles = static_cast<int>(to_int(origin, "generate.n_obstacles", *v));
            if (const auto* v = find_key(sec, "v_min")) g.v_min = to_double(origin, "generate.v_min", *v);
            if (const auto* v = find_key(sec, "v_max")) g.v_max = to_double(origin, "generate.v_max", *v);
            if (const auto* v = find_key(sec, "half_width"))
                g.half_width = to_double(origin, "generate.half_width", *v);
            if (const auto* v = find_key(sec, "arrivals")) {
                if (*v == "uniform") g.uniform_arrivals = true;
                else if (*v == "none") g.uniform_arrivals = false;
                else fail(origin, "generate.arrivals: expected none|uniform, got '" + *v + "'");
            }
            if (g.n_mmwave_bs < 0 || g.n_ue < 0 || g.n_obstacles < 0)
                fail(origin, "generate: counts must be >= 0");
            if (g.v_min < 0.0 || g.v_max < g.v_min)
                fail(origin, "generate.v_min/v_max: need 0 <= v_min <= v_max");
            if (g.half_width < 0.0) fail(origin, "generate.half_width: must be >= 0");
            s.generate = g;
        } else if (sec.name == "stations") {
            for (const auto& [k, v] : sec.entries) {
                const auto f = split_ws(v);
                if ((k != "lte" && k != "mmwave") || f.size() != 2)
                    fail(origin, "[stations] expected 'lte|mmwave = x y', got '" + k + " = " + v + "'");
                BaseStation bs;
                bs.id = static_cast<int>(s.stations.size());
                bs.kind = (k == "lte") ? StationKind::Lte : StationKind::MmWave;
                bs.pos = {to_double(origin, "stations." + k, f[0]),
                          to_double(origin, "stations." + k, f[1])};
                s.stations.push_back(bs);
            }
        } else if (sec.name == "ues") {
            for (const auto& [k, v] : sec.entries) {
                const auto f = split_ws(v);
                if (k != "ue" || f.size() < 2 || f.size() > 3)
                    fail(origin, "[ues] expected 'ue = x y [t_arrive]', got '" + k + " = " + v + "'");
                UserEquipment u;
                u.id = static_cast<int>(s.ues.size());
                u.pos = {to_double(origin, "ues.ue", f[0]), to_double(origin, "ues.ue", f[1])};
                if (f.size() == 3) u.t_arrive = to_double(origin, "ues.ue", f[2]);
                s.ues.push_back(u);
            }
        } else if (sec.name == "obstacles") {
            for (const auto& [k, v] : sec.entries) {
                const auto f = split_ws(v);
                if (k == "linear") {
                    if (f.size() != 5)
                        fail(origin, "[obstacles] expected 'linear = x y vx vy half_width'");
                    Obstacle o;
                    o.id = static_cast<int>(s.obstacles.size());
                    o.motion = LinearMotion{{to_double(origin, "obstacles.linear", f[0]),
                                             to_double(origin, "obstacles.linear", f[1])},
                                            {to_double(origin, "obstacles.linear", f[2]),
                                             to_double(origin, "obstacles.linear", f[3])}};
                    o.half_width = to_double(origin, "obstacles.linear", f[4]);
                    if (o.half_width < 0.0) fail(origin, "obstacles.linear: half_width must be >= 0");
                    s.obstacles.push_back(o);
                } else if (k == "trace") {
                    if (f.size() != 2 && f.size() != 4)
                        fail(origin, "[obstacles] expected 'trace = path half_width [lat0 lon0]'");
                    TraceRef tr;
                    tr.path = f[0];
                    tr.half_width = to_double(origin, "obstacles.trace", f[1]);
                    if (f.size() == 4) {
                        tr.geo = true;
                        tr.lat0 = to_double(origin, "obstacles.trace", f[2]);
                        tr.lon0 = to_double(origin, "obstacles.trace", f[3]);
                    }
                    s.traces.push_back(tr);
                } else {
                    fail(origin, "[obstacles] unknown key '" + k + "'");
                }
            }
        } else if (sec.name == "run") {
            check_single(origin, sec, {"seed", "handoff_check_feasibility"});
            if (const auto* v = find_key(sec, "seed")) {
                std::uint64_t sd;
                if (!parse_u64(trim(*v), sd)) fail(origin, "run.seed: bad integer '" + *v + "'");
                s.seed = sd;
            }
            if (const auto* v = find_key(sec, "handoff_check_feasibility"))
                s.handoff_check_feasibility = to_bool(origin, "run.handoff_check_feasibility", *v);
        }
    }

    validate_epoch(s.epoch);
    if (!(s.area.width > 0.0 && s.area.height > 0.0)) fail(origin, "area: must be positive");
    if (s.pl.sigma < 0.0) fail(origin, "pathloss.sigma: must be >= 0");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario_text(buf.str(), path);
    const std::size_t slash = path.find_last_of('/');
    s.base_dir = slash == std::string::npos ? std::string(".") : path.substr(0, slash);
    return s;
}

std::string write_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[area]\n"
        << "width = " << num_str(s.area.width) << "\n"
        << "height = " << num_str(s.area.height) << "\n\n";
    out << "[epoch]\n"
        << "T = " << num_str(s.epoch.T) << "\n"
        << "tau = " << num_str(s.epoch.tau) << "\n"
        << "delta = " << num_str(s.epoch.delta) << "\n"
        << "K_max = " << num_str(s.epoch.k_max) << "\n\n";
    out << "[pathloss]\n"
        << "A = " << num_str(s.pl.a) << "\n"
        << "B = " << num_str(s.pl.b) << "\n"
        << "sigma = " << num_str(s.pl.sigma) << "\n"
        << "max_loss = " << num_str(s.pl.max_loss) << "\n\n";
    if (s.generate) {
        const auto& g = *s.generate;
        out << "[generate]\n"
            << "n_mmwave_bs = " << num_str(g.n_mmwave_bs) << "\n"
            << "n_ue = " << num_str(g.n_ue) << "\n"
            << "n_obstacles = " << num_str(g.n_obstacles) << "\n"
            << "v_min = " << num_str(g.v_min) << "\n"
            << "v_max = " << num_str(g.v_max) << "\n"
            << "half_width = " << num_str(g.half_width) << "\n"
            << "arrivals = " << (g.uniform_arrivals ? "uniform" : "none") << "\n\n";
    }
    if (!s.stations.empty()) {
        out << "[stations]\n";
        for (const auto& b : s.stations)
            out << (b.kind == StationKind::Lte ? "lte" : "mmwave") << " = " << num_str(b.pos.x)
                << " " << num_str(b.pos.y) << "\n";
        out << "\n";
    }
    if (!s.ues.empty()) {
        out << "[ues]\n";
        for (const auto& u : s.ues) {
            out << "ue = " << num_str(u.pos.x) << " " << num_str(u.pos.y);
            if (u.t_arrive != 0.0) out << " " << num_str(u.t_arrive);
            out << "\n";
        }
        out << "\n";
    }
    if (!s.obstacles.empty() || !s.traces.empty()) {
        out << "[obstacles]\n";
        for (const auto& o : s.obstacles) {
            const auto& lin = std::get<LinearMotion>(o.motion);
            out << "linear = " << num_str(lin.start.x) << " " << num_str(lin.start.y) << " "
                << num_str(lin.velocity.x) << " " << num_str(lin.velocity.y) << " "
                << num_str(o.half_width) << "\n";
        }
        for (const auto& tr : s.traces) {
            out << "trace = " << tr.path << " " << num_str(tr.half_width);
            if (tr.geo) out << " " << num_str(tr.lat0) << " " << num_str(tr.lon0);
            out << "\n";
        }
        out << "\n";
    }
    out << "[run]\n"
        << "seed = " << num_str(s.seed) << "\n"
        << "handoff_check_feasibility = " << (s.handoff_check_feasibility ? "true" : "false")
        << "\n";
    for (const auto& sec : s.experiments) {
        out << "\n[" << sec.name << "]\n";
        for (const auto& [k, v] : sec.entries) out << k << " = " << v << "\n";
    }
    return out.str();
}

double section_double(const DocSection& s, const std::string& key, double fallback) {
    const auto* v = find_key(s, key);
    return v ? to_double("[" + s.name + "]", key, *v) : fallback;
}

std::int64_t section_int(const DocSection& s, const std::string& key, std::int64_t fallback) {
    const auto* v = find_key(s, key);
    return v ? to_int("[" + s.name + "]", key, *v) : fallback;
}

bool section_bool(const DocSection& s, const std::string& key, bool fallback) {
    const auto* v = find_key(s, key);
    return v ? to_bool("[" + s.name + "]", key, *v) : fallback;
}

std::vector<double> section_doubles(const DocSection& s, const std::string& key) {
    const auto* v = find_key(s, key);
    std::vector<double> out;
    if (!v) return out;
    for (const auto& f : split_ws(*v)) out.push_back(to_double("[" + s.name + "]", key, f));
    return out;
}

bool section_has(const DocSection& s, const std::string& key) { return find_key(s, key) != nullptr; }

Scenario apply_overrides(const Scenario& base, const DocSection& sec) {
    Scenario s = base;
    const std::string origin = "[" + sec.name + "]";
    for (const auto& [k, v] : sec.entries) {
        if (k == "width") s.area.width = to_double(origin, k, v);
        else if (k == "height") s.area.height = to_double(origin, k, v);
        else if (k == "T") s.epoch.T = to_double(origin, k, v);
        else if (k == "tau") s.epoch.tau = to_double(origin, k, v);
        else if (k == "delta") s.epoch.delta = to_double(origin, k, v);
        else if (k == "K_max") s.epoch.k_max = static_cast<int>(to_int(origin, k, v));
        else if (k == "A") s.pl.a = to_double(origin, k, v);
        else if (k == "B") s.pl.b = to_double(origin, k, v);
        else if (k == "sigma") s.pl.sigma = to_double(origin, k, v);
        else if (k == "max_loss") s.pl.max_loss = to_double(origin, k, v);
        else if (k == "seed") {
            std::uint64_t sd;
            if (!parse_u64(trim(v), sd)) fail(origin, "seed: bad integer '" + v + "'");
            s.seed = sd;
        } else if (k == "handoff_check_feasibility") {
            s.handoff_check_feasibility = to_bool(origin, k, v);
        } else if (k == "n_mmwave_bs" || k == "n_ue" || k == "n_obstacles" || k == "v_min" ||
                   k == "v_max" || k == "half_width" || k == "arrivals") {
            GenerateParams g = s.generate.value_or(GenerateParams{});
            if (k == "n_mmwave_bs") g.n_mmwave_bs = static_cast<int>(to_int(origin, k, v));
            else if (k == "n_ue") g.n_ue = static_cast<int>(to_int(origin, k, v));
            else if (k == "n_obstacles") g.n_obstacles = static_cast<int>(to_int(origin, k, v));
            else if (k == "v_min") g.v_min = to_double(origin, k, v);
            else if (k == "v_max") g.v_max = to_double(origin, k, v);
            else if (k == "half_width") g.half_width = to_double(origin, k, v);
            else if (k == "arrivals") {
                if (v == "uniform") g.uniform_arrivals = true;
                else if (v == "none") g.uniform_arrivals = false;
                else fail(origin, "arrivals: expected none|uniform, got '" + v + "'");
            }
            s.generate = g;
        }
        // Other keys (trials, counts, taus, ...) belong to the experiment driver.
    }
    validate_epoch(s.epoch);
    return s;
}

}  // namespace mmtrack
