#include "mmtrack/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mmtrack/csv.hpp"

namespace mmtrack {

std::size_t DiscoveryLog::total() const {
    std::size_t n = 0;
    for (const auto& [bs, v] : per_bs) n += v.size();
    return n;
}

std::vector<BlockedLink> DiscoveryLog::all() const {
    std::vector<BlockedLink> out;
    for (const auto& [bs, v] : per_bs) out.insert(out.end(), v.begin(), v.end());
    return out;
}

const bool* EpochOutcome::find(LinkId id) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), id,
                               [](const auto& row, const LinkId& k) { return row.first < k; });
    if (it == rows.end() || it->first != id) return nullptr;
    return &it->second;
}

int slot_of(double t, double delta) { return static_cast<int>(std::llround(t / delta)); }
double slot_time(int i, double delta) { return i * delta; }

namespace {

void associate_links(World& w) {
    const auto mm = w.mmwave_ids();
    for (const auto& u : w.ues) {
        std::vector<std::pair<double, int>> order;
        for (int id : mm) order.emplace_back(dist(u.pos, w.station(id)->pos), id);
        std::sort(order.begin(), order.end());
        for (const auto& [d, id] : order) {
            if (d <= kPointTol) continue;  // co-located endpoints form no segment
            Segment seg{u.pos, w.station(id)->pos};
            if (link_feasible(w.pl, seg, w.zeta(u.id, id))) {
                w.active.push_back({u.id, id, seg});
                break;
            }
        }
        // No feasible mmWave BS: the UE is served by LTE and tracked links skip it.
    }
}

void draw_shadowing(World& w, std::mt19937_64& rng) {
    std::normal_distribution<double> shade(0.0, w.pl.sigma);
    const auto mm = w.mmwave_ids();
    std::vector<int> ue_ids;
    for (const auto& u : w.ues) ue_ids.push_back(u.id);
    std::sort(ue_ids.begin(), ue_ids.end());
    for (int uid : ue_ids)
        for (int bid : mm) w.shadowing[{uid, bid}] = shade(rng);
}

}  // namespace

World world_from_scenario(const Scenario& s, std::uint64_t seed) {
    World w;
    w.area = s.area;
    w.epoch = s.epoch;
    w.pl = s.pl;
    w.seed = seed;
    w.stations = s.stations;
    w.ues = s.ues;
    w.obstacles = s.obstacles;

    for (const auto& tr : s.traces) {
        std::string path = tr.path;
        if (!path.empty() && path.front() != '/' && !s.base_dir.empty())
            path = s.base_dir + "/" + path;
        // The file header picks meters vs lat/lon; lat0/lon0 matter only for the latter.
        auto loaded = load_trace(path, {tr.lat0, tr.lon0}, 0.0, s.epoch.T, tr.half_width,
                                 static_cast<int>(w.obstacles.size()));
        w.obstacles.insert(w.obstacles.end(), loaded.begin(), loaded.end());
    }

    std::mt19937_64 rng(seed);
    const GenerateParams g = s.generate.value_or(GenerateParams{0, 0, 0});
    std::uniform_real_distribution<double> ux(0.0, s.area.width);
    std::uniform_real_distribution<double> uy(0.0, s.area.height);

    int next_station = 0;
    for (const auto& st : w.stations) next_station = std::max(next_station, st.id + 1);
    for (int i = 0; i < g.n_mmwave_bs; ++i)
        w.stations.push_back({next_station++, {ux(rng), uy(rng)}, StationKind::MmWave});
    if (w.lte_id() < 0)
        w.stations.push_back({next_station++, {s.area.width / 2.0, s.area.height / 2.0},
                              StationKind::Lte});

    int next_ue = 0;
    for (const auto& u : w.ues) next_ue = std::max(next_ue, u.id + 1);
    const int first_generated_ue = next_ue;
    for (int i = 0; i < g.n_ue; ++i) w.ues.push_back({next_ue++, {ux(rng), uy(rng)}, 0.0});
    if (g.uniform_arrivals) {
        std::uniform_real_distribution<double> ut(0.0, s.epoch.T);
        for (auto& u : w.ues)
            if (u.id >= first_generated_ue) u.t_arrive = ut(rng);
    }

    int next_obs = 0;
    for (const auto& o : w.obstacles) next_obs = std::max(next_obs, o.id + 1);
    std::uniform_real_distribution<double> uh(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> uv(g.v_min, g.v_max);
    for (int i = 0; i < g.n_obstacles; ++i) {
        const Point2 start{ux(rng), uy(rng)};
        const double heading = uh(rng);
        const double speed = uv(rng);
        w.obstacles.push_back({next_obs++,
                               LinearMotion{start, {speed * std::cos(heading), speed * std::sin(heading)}},
                               g.half_width});
    }

    draw_shadowing(w, rng);
    associate_links(w);
    w.validate();
    return w;
}

World generate_scenario(const ScenarioParams& p, std::uint64_t seed) {
    Scenario s;
    s.area = p.area;
    s.epoch = p.epoch;
    s.pl = p.pl;
    s.generate = p.gen;
    s.seed = seed;
    return world_from_scenario(s, seed);
}

DiscoveryLog run_discovery(const World& w) {
    DiscoveryLog log;
    const int last = slot_of(w.epoch.tau, w.epoch.delta);
    std::vector<char> logged(w.active.size(), 0);
    std::size_t remaining = w.active.size();
    for (int i = 0; i <= last && remaining > 0; ++i) {
        const double t = slot_time(i, w.epoch.delta);
        for (std::size_t li = 0; li < w.active.size(); ++li) {
            if (logged[li]) continue;
            const Link& link = w.active[li];
            const auto* u = w.ue(link.ue);
            if (u && u->t_arrive > t + 1e-12) continue;
            for (const auto& o : w.obstacles) {
                if (is_blocked(o, t, link)) {
                    log.per_bs[link.bs].push_back({link, t});
                    logged[li] = 1;
                    --remaining;
                    break;
                }
            }
        }
    }
    return log;
}

EpochOutcome ground_truth_blockage(const World& w, const std::vector<Link>& links) {
    const int first = slot_of(w.epoch.tau, w.epoch.delta) + 1;
    const int last = slot_of(w.epoch.T, w.epoch.delta);
    EpochOutcome out;
    out.rows.reserve(links.size());
    for (const Link& link : links) {
        const auto* u = w.ue(link.ue);
        const double arrive = u ? u->t_arrive : 0.0;
        bool blocked = false;
        for (int i = first; i <= last && !blocked; ++i) {
            const double t = slot_time(i, w.epoch.delta);
            if (arrive > t + 1e-12) continue;
            for (const auto& o : w.obstacles) {
                if (is_blocked(o, t, link)) {
                    blocked = true;
                    break;
                }
            }
        }
        out.rows.emplace_back(LinkId{link.ue, link.bs}, blocked);
    }
    std::sort(out.rows.begin(), out.rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Obstacle> load_trace(const std::string& path, Point2 origin, double t0, double T,
                                 double half_width, int id_base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) return {};  // empty file carries no obstacles
    ++lineno;
    bool geo;
    {
        auto hdr = split(trim(line), ',');
        for (auto& h : hdr) h = trim(h);
        if (hdr == std::vector<std::string>{"id", "t", "x", "y"}) geo = false;
        else if (hdr == std::vector<std::string>{"id", "t", "lat", "lon"}) geo = true;
        else throw std::runtime_error(path + ":1: expected header id,t,x,y or id,t,lat,lon");
    }

    constexpr double kEarthRadius = 6371000.0;
    const double lat0 = origin.x * M_PI / 180.0;
    const double lon0 = origin.y * M_PI / 180.0;

    std::map<std::int64_t, std::vector<TimedPoint>> by_id;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto f = split(t, ',');
        if (f.size() != 4)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 4 fields");
        std::int64_t id;
        double ts, c1, c2;
        if (!parse_i64(trim(f[0]), id) || !parse_double(trim(f[1]), ts) ||
            !parse_double(trim(f[2]), c1) || !parse_double(trim(f[3]), c2))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad numeric field");
        Point2 p;
        if (geo) {
            const double lat = c1 * M_PI / 180.0;
            const double lon = c2 * M_PI / 180.0;
            p = {kEarthRadius * (lon - lon0) * std::cos(lat0), kEarthRadius * (lat - lat0)};
        } else {
            p = {c1, c2};
        }
        if (ts < t0 || ts > t0 + T) continue;
        by_id[id].push_back({p, ts - t0});
    }

    std::vector<Obstacle> out;
    for (auto& [id, samples] : by_id) {
        std::sort(samples.begin(), samples.end(),
                  [](const TimedPoint& a, const TimedPoint& b) { return a.t < b.t; });
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (!(samples[i].t > samples[i - 1].t))
                throw std::runtime_error(path + ": duplicate timestamp for obstacle id " +
                                         std::to_string(id));
        if (samples.size() < 2)
            throw std::runtime_error(path + ": obstacle id " + std::to_string(id) +
                                     " has fewer than 2 samples in the window");
        Obstacle o;
        o.id = id_base + static_cast<int>(out.size());
        o.motion = PolylineMotion{samples};
        o.half_width = half_width;
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace mmtrack
