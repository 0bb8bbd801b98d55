#include "mmtrack/world.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mmtrack {

double path_loss(const PathLossModel& pl, double distance_m, double zeta_db) {
    if (!(distance_m > 0.0))
        throw std::domain_error("path_loss: distance must be positive");
    return pl.a + 10.0 * pl.b * std::log10(distance_m) + zeta_db;
}

bool link_feasible(const PathLossModel& pl, const Segment& seg, double zeta_db) {
    return path_loss(pl, dist(seg.a, seg.b), zeta_db) <= pl.max_loss;
}

bool motion_defined_at(const Motion& m, double t) {
    if (std::holds_alternative<LinearMotion>(m)) return t >= 0.0;
    const auto& wp = std::get<PolylineMotion>(m).waypoints;
    return !wp.empty() && t >= wp.front().t && t <= wp.back().t;
}

Point2 obstacle_center_at(const Obstacle& o, double t) {
    if (const auto* lin = std::get_if<LinearMotion>(&o.motion)) {
        if (t < 0.0) throw std::out_of_range("obstacle_center_at: t before motion start");
        return {lin->start.x + t * lin->velocity.x, lin->start.y + t * lin->velocity.y};
    }
    const auto& wp = std::get<PolylineMotion>(o.motion).waypoints;
    if (wp.size() < 2) throw std::out_of_range("obstacle_center_at: polyline needs two waypoints");
    if (t < wp.front().t || t > wp.back().t)
        throw std::out_of_range("obstacle_center_at: t outside waypoint span");
    auto it = std::lower_bound(wp.begin(), wp.end(), t,
                               [](const TimedPoint& w, double tv) { return w.t < tv; });
    if (it != wp.end() && it->t == t) return it->p;
    const TimedPoint& hi = *it;
    const TimedPoint& lo = *(it - 1);
    const double u = (t - lo.t) / (hi.t - lo.t);
    return lo.p + u * (hi.p - lo.p);
}

bool is_blocked(const Obstacle& o, double t, const Link& link) {
    if (!motion_defined_at(o.motion, t)) return false;
    return square_intersects_segment(obstacle_center_at(o, t), o.half_width, link.seg);
}

void validate_epoch(const EpochConfig& e) {
    if (!(e.T > 0.0)) throw std::invalid_argument("epoch.T: must be positive");
    if (!(e.tau > 0.0 && e.tau < e.T))
        throw std::invalid_argument("epoch.tau: need 0 < tau < T");
    if (!(e.delta > 0.0 && e.delta <= e.tau))
        throw std::invalid_argument("epoch.delta: need 0 < delta <= tau");
    auto multiple = [&](double v) {
        const double r = v / e.delta;
        return std::abs(r - std::llround(r)) <= 1e-9 * std::max(1.0, std::abs(r));
    };
    if (!multiple(e.T)) throw std::invalid_argument("epoch.T: not a multiple of delta");
    if (!multiple(e.tau)) throw std::invalid_argument("epoch.tau: not a multiple of delta");
    if (e.k_max < 1) throw std::invalid_argument("epoch.K_max: must be >= 1");
}

const BaseStation* World::station(int id) const {
    for (const auto& s : stations)
        if (s.id == id) return &s;
    return nullptr;
}

const UserEquipment* World::ue(int id) const {
    for (const auto& u : ues)
        if (u.id == id) return &u;
    return nullptr;
}

int World::lte_id() const {
    for (const auto& s : stations)
        if (s.kind == StationKind::Lte) return s.id;
    return -1;
}

std::vector<int> World::mmwave_ids() const {
    std::vector<int> ids;
    for (const auto& s : stations)
        if (s.kind == StationKind::MmWave) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

double World::zeta(int ue_id, int bs_id) const {
    auto it = shadowing.find({ue_id, bs_id});
    return it == shadowing.end() ? 0.0 : it->second;
}

void World::validate() const {
    validate_epoch(epoch);
    if (!(pl.sigma >= 0.0)) throw std::invalid_argument("pathloss.sigma: must be >= 0");
    if (!(area.width > 0.0 && area.height > 0.0))
        throw std::invalid_argument("area: dimensions must be positive");

    auto inside = [&](Point2 p) {
        return p.x >= 0.0 && p.x <= area.width && p.y >= 0.0 && p.y <= area.height;
    };

    std::set<int> sids;
    int lte_count = 0;
    for (const auto& s : stations) {
        if (!sids.insert(s.id).second)
            throw std::invalid_argument("stations: duplicate id " + std::to_string(s.id));
        if (!inside(s.pos))
            throw std::invalid_argument("stations: id " + std::to_string(s.id) + " outside area");
        if (s.kind == StationKind::Lte) ++lte_count;
    }
    if (lte_count != 1)
        throw std::invalid_argument("stations: need exactly one LTE station, got " +
                                    std::to_string(lte_count));

    std::set<int> uids;
    for (const auto& u : ues) {
        if (!uids.insert(u.id).second)
            throw std::invalid_argument("ues: duplicate id " + std::to_string(u.id));
        if (!inside(u.pos))
            throw std::invalid_argument("ues: id " + std::to_string(u.id) + " outside area");
        if (u.t_arrive < 0.0 || u.t_arrive > epoch.T)
            throw std::invalid_argument("ues: id " + std::to_string(u.id) +
                                        " arrival outside [0, T]");
    }

    std::set<int> oids;
    for (const auto& o : obstacles) {
        if (!oids.insert(o.id).second)
            throw std::invalid_argument("obstacles: duplicate id " + std::to_string(o.id));
        if (o.half_width < 0.0)
            throw std::invalid_argument("obstacles: id " + std::to_string(o.id) +
                                        " negative half_width");
        if (const auto* poly = std::get_if<PolylineMotion>(&o.motion)) {
            const auto& wp = poly->waypoints;
            if (wp.size() < 2)
                throw std::invalid_argument("obstacles: id " + std::to_string(o.id) +
                                            " polyline needs >= 2 waypoints");
            for (std::size_t i = 1; i < wp.size(); ++i)
                if (!(wp[i].t > wp[i - 1].t))
                    throw std::invalid_argument("obstacles: id " + std::to_string(o.id) +
                                                " polyline timestamps not increasing");
        } else {
            if (!inside(std::get<LinearMotion>(o.motion).start))
                throw std::invalid_argument("obstacles: id " + std::to_string(o.id) +
                                            " starts outside area");
        }
    }

    for (const auto& l : active) {
        const auto* u = ue(l.ue);
        const auto* b = station(l.bs);
        if (!u || !b)
            throw std::invalid_argument("active: link " + std::to_string(l.ue) + "-" +
                                        std::to_string(l.bs) + " references unknown endpoint");
        if (dist(l.seg.a, u->pos) > kPointTol || dist(l.seg.b, b->pos) > kPointTol)
            throw std::invalid_argument("active: link " + std::to_string(l.ue) + "-" +
                                        std::to_string(l.bs) + " segment endpoints drifted");
    }
}

}  // namespace mmtrack
