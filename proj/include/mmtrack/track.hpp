#pragma once

// Trajectory estimation from blocked links. Candidates are lines through
// pairs of distinct blocked-link UE endpoints, plus one fallback per link
// (the perpendicular through its UE) so every instance stays coverable.
// A greedy set cover over those candidates yields the reported trajectories;
// a brute-force minimum cover serves as small-instance ground truth.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmtrack/sim.hpp"
#include "mmtrack/world.hpp"

namespace mmtrack {

struct UePairTag {
    int ue_i = -1;  // UE ids of the generating endpoints
    int ue_j = -1;
};

struct FallbackTag {
    int link_index = -1;  // index into the instance's link list
};

struct CandidateLine {
    Line2 line;
    std::variant<UePairTag, FallbackTag> origin;
};

struct CandidateStats {
    std::size_t pair_raw = 0;      // non-degenerate UE pairs, before dedup
    std::size_t fallback_raw = 0;  // one per link
    std::size_t deduped = 0;       // candidates dropped as exact duplicates
};

std::vector<CandidateLine> gen_candidates(const std::vector<BlockedLink>& blocked,
                                          CandidateStats* stats = nullptr);

// Indices (ascending) of instance links whose segment the candidate meets.
std::vector<int> covered_set(const CandidateLine& c, const std::vector<BlockedLink>& blocked);

struct CoverInstance {
    std::vector<BlockedLink> links;
    std::vector<CandidateLine> candidates;
    std::vector<std::vector<int>> covers;  // covers[c] = covered_set(candidates[c])
};

CoverInstance build_cover_instance(const std::vector<BlockedLink>& blocked);

struct TrajectoryEntry {
    Line2 line;
    int bs_id = -1;           // -1 when not produced by track_per_bs
    int candidate_index = -1; // index into the instance candidate list
    std::vector<int> covered;       // full covered set of the candidate
    std::vector<int> newly_covered; // links first covered by this pick
};

struct TrajectorySet {
    std::vector<TrajectoryEntry> entries;

    std::vector<Line2> lines() const;
    bool any_intersects(const Segment& s) const;
};

// Picks the candidate covering the most uncovered links until the universe is
// exhausted; ties prefer the larger total covered set, then the smaller
// candidate index. Throws std::runtime_error if no candidate covers a
// remaining link (cannot happen with fallbacks).
TrajectorySet greedy_cover(const CoverInstance& inst);

// Smallest cover by exhaustive search in lexicographic order over increasing
// subset sizes. Guarded to |links| <= 16 and |candidates| <= 24 unless the
// caller opts into exponential time; |links| > 64 is always rejected. Returns
// candidate indices, or nullopt if no cover of size <= size_limit exists.
std::optional<std::vector<int>> exact_min_cover(const CoverInstance& inst, int size_limit,
                                                bool allow_large = false);

// Greedy cover per BS log (ascending BS id); duplicate lines across BSs are
// dropped, first occurrence wins.
TrajectorySet track_per_bs(const DiscoveryLog& log);

// Cover-instance exchange format: link_id,ue_x,ue_y,bs_x,bs_y,t_block.
void save_cover_instance(const std::string& path, const std::vector<BlockedLink>& blocked);
std::vector<BlockedLink> load_cover_instance(const std::string& path);

}  // namespace mmtrack
