#include "mmtrack/handoff.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmtrack {

std::vector<Link> at_risk(const std::vector<Link>& active, const TrajectorySet& O) {
    std::vector<Link> out;
    for (const Link& l : active)
        if (O.any_intersects(l.seg)) out.push_back(l);
    return out;
}

std::vector<HandoffDecision> propose_handoffs(const std::vector<Link>& active,
                                              const TrajectorySet& O,
                                              const std::vector<BaseStation>& stations,
                                              const PathLossModel& pl,
                                              const HandoffOptions& opt) {
    int lte = -1;
    std::vector<const BaseStation*> mm;
    for (const auto& s : stations) {
        if (s.kind == StationKind::Lte) {
            if (lte >= 0) throw std::invalid_argument("propose_handoffs: multiple LTE stations");
            lte = s.id;
        } else {
            mm.push_back(&s);
        }
    }
    if (lte < 0) throw std::invalid_argument("propose_handoffs: no LTE station");
    std::sort(mm.begin(), mm.end(),
              [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });

    std::vector<HandoffDecision> out;
    for (const Link& l : at_risk(active, O)) {
        HandoffDecision d;
        d.ue = l.ue;
        d.from_bs = l.bs;
        d.to_bs = lte;
        d.to_lte = true;
        for (const BaseStation* b : mm) {
            if (b->id == l.bs) continue;
            const Segment seg{l.seg.a, b->pos};
            if (dist(seg.a, seg.b) <= kPointTol) continue;
            if (O.any_intersects(seg)) continue;
            if (opt.check_feasibility) {
                const double z = opt.zeta ? opt.zeta(l.ue, b->id) : 0.0;
                if (!link_feasible(pl, seg, z)) continue;
            }
            d.to_bs = b->id;
            d.to_lte = false;
            break;
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace mmtrack
