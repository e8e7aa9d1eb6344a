#pragma once

// Full increasing filtrations of a rational vector space, stored by their
// finitely many jumps. The value at s is the space of the largest jump level
// <= s, the zero space below the first jump; the last jump is the full space.

#include "prevar/errors.hpp"
#include "prevar/linalg.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace prevar {

struct Filtration {
    int rank = 0;
    std::vector<std::pair<long long, Subspace>> jumps;

    bool operator==(const Filtration&) const = default;
};

inline Filtration make_filtration(int rank, std::vector<std::pair<long long, Subspace>> jumps) {
    if (rank <= 0) throw std::invalid_argument("make_filtration: rank must be positive");
    if (jumps.empty()) throw std::invalid_argument("make_filtration: a full filtration has at least one jump");
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i].second.ambient != rank)
            throw DimensionMismatch("make_filtration: jump space ambient does not match the rank");
        if (i > 0 && jumps[i].first <= jumps[i - 1].first)
            throw std::invalid_argument("make_filtration: jump levels must strictly increase");
        if (i > 0 && !(subspace_leq(jumps[i - 1].second, jumps[i].second) &&
                       jumps[i - 1].second.dim() < jumps[i].second.dim()))
            throw std::invalid_argument("make_filtration: jump spaces must strictly increase");
    }
    if (jumps.front().second.dim() == 0)
        throw std::invalid_argument("make_filtration: the first jump space must be nonzero");
    if (jumps.back().second.dim() != rank)
        throw std::invalid_argument("make_filtration: the filtration must reach the full space");
    return Filtration{rank, std::move(jumps)};
}

inline Subspace filtration_at(const Filtration& f, long long s) {
    const Subspace* best = nullptr;
    for (const auto& [level, space] : f.jumps) {
        if (level > s) break;
        best = &space;
    }
    return best ? *best : subspace_zero(f.rank);
}

inline long long first_jump(const Filtration& f) { return f.jumps.front().first; }
inline long long last_jump(const Filtration& f) { return f.jumps.back().first; }

inline std::vector<long long> jump_levels(const Filtration& f) {
    std::vector<long long> out;
    for (const auto& [level, space] : f.jumps) out.push_back(level);
    return out;
}

}  // namespace prevar
