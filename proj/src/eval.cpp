#include "mmtrack/eval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmtrack {

ConfusionMatrix confusion(const LinkFlags& predicted, const LinkFlags& actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("confusion: key sets differ in size");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const auto& [pk, pv] = predicted[i];
        const auto& [ak, av] = actual[i];
        if (pk != ak)
            throw std::invalid_argument("confusion: key mismatch at link (" +
                                        std::to_string(pk.first) + "," +
                                        std::to_string(pk.second) + ")");
        if (pv && av) ++cm.tp;
        else if (pv && !av) ++cm.fp;
        else if (!pv && av) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("metrics: empty confusion matrix");
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    if (cm.tp + cm.fn > 0)
        m.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (cm.tp + cm.fp > 0)
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    return m;
}

bool camera_covers(const Camera& cam, Point2 p) {
    const double d = dist(cam.pos, p);
    if (d < cam.r_min || d > cam.r_max) return false;
    double ang = std::atan2(p.y - cam.pos.y, p.x - cam.pos.x) - cam.heading;
    while (ang > M_PI) ang -= 2.0 * M_PI;
    while (ang < -M_PI) ang += 2.0 * M_PI;
    return std::abs(ang) <= cam.fov / 2.0;
}

bool camera_tracked(const CameraDeployment& dep, const Obstacle& o, double tau, double delta) {
    const int last = static_cast<int>(std::llround(tau / delta));
    for (int i = 0; i <= last; ++i) {
        const double t = i * delta;
        if (!motion_defined_at(o.motion, t)) return false;
        const Point2 p = obstacle_center_at(o, t);
        bool seen = false;
        for (const auto& cam : dep.cams) {
            if (camera_covers(cam, p)) {
                seen = true;
                break;
            }
        }
        if (!seen) return false;
    }
    return true;
}

double tracking_capability_ours(const TrajectorySet& O, const std::vector<Obstacle>& obstacles,
                                double tau, double delta, double eps_match) {
    if (obstacles.empty()) return std::numeric_limits<double>::quiet_NaN();
    const int last = static_cast<int>(std::llround(tau / delta));
    int tracked = 0;
    for (const auto& o : obstacles) {
        bool matched = false;
        for (const auto& e : O.entries) {
            bool within = true;
            for (int i = 0; i <= last && within; ++i) {
                const double t = i * delta;
                if (!motion_defined_at(o.motion, t)) {
                    within = false;
                    break;
                }
                if (std::abs(eval_line(e.line, obstacle_center_at(o, t))) > eps_match)
                    within = false;
            }
            if (within) {
                matched = true;
                break;
            }
        }
        if (matched) ++tracked;
    }
    return static_cast<double>(tracked) / static_cast<double>(obstacles.size());
}

double tracking_capability_camera(const CameraDeployment& dep,
                                  const std::vector<Obstacle>& obstacles, double tau,
                                  double delta) {
    if (obstacles.empty()) return std::numeric_limits<double>::quiet_NaN();
    int tracked = 0;
    for (const auto& o : obstacles)
        if (camera_tracked(dep, o, tau, delta)) ++tracked;
    return static_cast<double>(tracked) / static_cast<double>(obstacles.size());
}

std::optional<double> handoff_performance(const std::vector<HandoffDecision>& decisions,
                                          const std::vector<Link>& active,
                                          const EpochOutcome& outcome) {
    int blocked = 0;
    int rescued = 0;
    for (const Link& l : active) {
        const bool* act = outcome.find({l.ue, l.bs});
        if (!act)
            throw std::invalid_argument("handoff_performance: outcome missing link (" +
                                        std::to_string(l.ue) + "," + std::to_string(l.bs) + ")");
        if (!*act) continue;
        ++blocked;
        for (const auto& d : decisions) {
            if (d.ue != l.ue || d.from_bs != l.bs || d.to_lte) continue;
            const bool* post = outcome.find({d.ue, d.to_bs});
            if (!post)
                throw std::invalid_argument("handoff_performance: outcome missing link (" +
                                            std::to_string(d.ue) + "," +
                                            std::to_string(d.to_bs) + ")");
            if (!*post) ++rescued;
            break;
        }
    }
    if (blocked == 0) return std::nullopt;
    return static_cast<double>(rescued) / static_cast<double>(blocked);
}

}  // namespace mmtrack
