#include "mmtrack/track.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mmtrack/csv.hpp"

namespace mmtrack {
namespace {

// Perpendicular to the link through its UE endpoint; covers that link by
// construction. Degenerate links get a vertical line, any line through the
// shared endpoint covers them.
Line2 fallback_line(const Link& link) {
    const Point2 d = link.seg.b - link.seg.a;
    if (norm(d) <= kPointTol)
        return line_through(link.seg.a, {link.seg.a.x, link.seg.a.y + 1.0});
    const Point2 n{-d.y, d.x};
    return line_through(link.seg.a, link.seg.a + n);
}

}  // namespace

std::vector<CandidateLine> gen_candidates(const std::vector<BlockedLink>& blocked,
                                          CandidateStats* stats) {
    std::vector<CandidateLine> out;
    CandidateStats st;
    std::set<LineKey> seen;
    auto push = [&](CandidateLine c) {
        if (seen.insert(line_key(c.line)).second) out.push_back(std::move(c));
        else ++st.deduped;
    };

    const std::size_t n = blocked.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 ui = blocked[i].link.seg.a;
            const Point2 uj = blocked[j].link.seg.a;
            if (dist(ui, uj) <= kPointTol) continue;  // coincident UEs, no pair line
            ++st.pair_raw;
            push({line_through(ui, uj), UePairTag{blocked[i].link.ue, blocked[j].link.ue}});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        ++st.fallback_raw;
        push({fallback_line(blocked[i].link), FallbackTag{static_cast<int>(i)}});
    }
    if (stats) *stats = st;
    return out;
}

std::vector<int> covered_set(const CandidateLine& c, const std::vector<BlockedLink>& blocked) {
    std::vector<int> out;
    for (std::size_t i = 0; i < blocked.size(); ++i)
        if (intersects(c.line, blocked[i].link.seg)) out.push_back(static_cast<int>(i));
    return out;
}

CoverInstance build_cover_instance(const std::vector<BlockedLink>& blocked) {
    CoverInstance inst;
    inst.links = blocked;
    inst.candidates = gen_candidates(blocked);
    inst.covers.reserve(inst.candidates.size());
    for (const auto& c : inst.candidates) inst.covers.push_back(covered_set(c, blocked));
    return inst;
}

std::vector<Line2> TrajectorySet::lines() const {
    std::vector<Line2> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.line);
    return out;
}

bool TrajectorySet::any_intersects(const Segment& s) const {
    for (const auto& e : entries)
        if (intersects(e.line, s)) return true;
    return false;
}

TrajectorySet greedy_cover(const CoverInstance& inst) {
    TrajectorySet result;
    const std::size_t n = inst.links.size();
    if (n == 0) return result;

    std::vector<char> covered(n, 0);
    std::size_t remaining = n;
    while (remaining > 0) {
        int best = -1;
        std::size_t best_gain = 0, best_total = 0;
        for (std::size_t c = 0; c < inst.candidates.size(); ++c) {
            std::size_t gain = 0;
            for (int li : inst.covers[c])
                if (!covered[li]) ++gain;
            // Equal gains fall back to the larger full covered set, then the
            // earlier candidate.
            if (gain > best_gain ||
                (gain > 0 && gain == best_gain && inst.covers[c].size() > best_total)) {
                best_gain = gain;
                best_total = inst.covers[c].size();
                best = static_cast<int>(c);
            }
        }
        if (best < 0)
            throw std::runtime_error("greedy_cover: uncoverable link remains");
        TrajectoryEntry e;
        e.line = inst.candidates[best].line;
        e.candidate_index = best;
        e.covered = inst.covers[best];
        for (int li : inst.covers[best]) {
            if (!covered[li]) {
                e.newly_covered.push_back(li);
                covered[li] = 1;
                --remaining;
            }
        }
        result.entries.push_back(std::move(e));
    }
    return result;
}

std::optional<std::vector<int>> exact_min_cover(const CoverInstance& inst, int size_limit,
                                                bool allow_large) {
    const std::size_t n = inst.links.size();
    const std::size_t m = inst.candidates.size();
    if (n > 64) throw std::invalid_argument("exact_min_cover: more than 64 links");
    if (!allow_large && (n > 16 || m > 24))
        throw std::invalid_argument("exact_min_cover: instance beyond oracle scale");
    if (n == 0) return std::vector<int>{};

    const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    std::vector<std::uint64_t> mask(m, 0);
    for (std::size_t c = 0; c < m; ++c)
        for (int li : inst.covers[c]) mask[c] |= 1ull << li;

    std::vector<int> pick;
    // Lexicographic combinations of a fixed size; first hit is the answer.
    auto search = [&](auto&& self, std::size_t start, int left, std::uint64_t acc) -> bool {
        if (acc == full) return left >= 0;
        if (left == 0) return false;
        for (std::size_t c = start; c + left <= m + 0u; ++c) {
            if ((mask[c] & ~acc) == 0) continue;  // adds nothing
            pick.push_back(static_cast<int>(c));
            if (self(self, c + 1, left - 1, acc | mask[c])) return true;
            pick.pop_back();
        }
        return false;
    };

    const int cap = std::min<int>(size_limit, static_cast<int>(m));
    for (int size = 0; size <= cap; ++size) {
        pick.clear();
        if (search(search, 0, size, 0)) return pick;
    }
    return std::nullopt;
}

TrajectorySet track_per_bs(const DiscoveryLog& log) {
    TrajectorySet result;
    std::set<LineKey> seen;
    for (const auto& [bs, blocked] : log.per_bs) {
        const CoverInstance inst = build_cover_instance(blocked);
        TrajectorySet local = greedy_cover(inst);
        for (auto& e : local.entries) {
            if (!seen.insert(line_key(e.line)).second) continue;
            e.bs_id = bs;
            result.entries.push_back(std::move(e));
        }
    }
    return result;
}

void save_cover_instance(const std::string& path, const std::vector<BlockedLink>& blocked) {
    CsvWriter out(path);
    out.row({"link_id", "ue_x", "ue_y", "bs_x", "bs_y", "t_block"});
    for (std::size_t i = 0; i < blocked.size(); ++i) {
        const auto& b = blocked[i];
        out.row({num_str(i), num_str(b.link.seg.a.x), num_str(b.link.seg.a.y),
                 num_str(b.link.seg.b.x), num_str(b.link.seg.b.y), num_str(b.t_block)});
    }
    out.close();
}

std::vector<BlockedLink> load_cover_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open cover instance: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "link_id,ue_x,ue_y,bs_x,bs_y,t_block")
        throw std::runtime_error(path + ":1: bad cover-instance header");
    std::vector<BlockedLink> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split(trim(line), ',');
        std::int64_t id;
        double ux, uy, bx, by, tb;
        if (f.size() != 6 || !parse_i64(f[0], id) || !parse_double(f[1], ux) ||
            !parse_double(f[2], uy) || !parse_double(f[3], bx) || !parse_double(f[4], by) ||
            !parse_double(f[5], tb))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad row");
        BlockedLink b;
        b.link.ue = static_cast<int>(id);
        b.link.bs = -1;
        b.link.seg = {{ux, uy}, {bx, by}};
        b.t_block = tb;
        out.push_back(b);
    }
    return out;
}

}  // namespace mmtrack
