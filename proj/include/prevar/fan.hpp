#pragma once

// Fans of strongly convex cones: face-closed, pairwise intersecting in common
// faces. Construction accepts any cone list (typically the maximal cones) and
// computes the face closure; the pairwise condition is verified exactly.

#include "prevar/cone.hpp"
#include "prevar/errors.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace prevar {

struct Fan {
    int ambient = 0;
    std::vector<Cone> cones;  // face-closed, sorted by (dim, rays), always contains the zero cone

    bool operator==(const Fan&) const = default;
    bool contains(const Cone& c) const { return std::binary_search(cones.begin(), cones.end(), c, cone_less); }

    static bool cone_less(const Cone& a, const Cone& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rays < b.rays;
    }
};

// First pair of cones whose intersection is not a common face, if any.
// Assumes the list is face-closed.
inline std::optional<std::pair<Cone, Cone>> find_fan_defect(const std::vector<Cone>& cones) {
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            Cone meet = intersect_cones(cones[i], cones[j]);
            if (!is_face(meet, cones[i]) || !is_face(meet, cones[j]))
                return std::make_pair(cones[i], cones[j]);
        }
    return std::nullopt;
}

inline std::string cone_display(const Cone& c) {
    return c.is_zero() ? std::string("0") : "cone(" + cone_key(c) + ")";
}

inline Fan fan_from_cones(int ambient, const std::vector<Cone>& cones) {
    std::vector<Cone> closed;
    closed.push_back(zero_cone(ambient));
    for (const auto& c : cones) {
        if (c.ambient != ambient) throw DimensionMismatch("fan_from_cones: ambient mismatch");
        for (auto& f : faces(c)) closed.push_back(std::move(f));
    }
    std::sort(closed.begin(), closed.end(), Fan::cone_less);
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    if (auto defect = find_fan_defect(closed))
        throw NotAFan(cone_display(defect->first) + " and " + cone_display(defect->second) +
                      " intersect in a non-face");
    return Fan{ambient, std::move(closed)};
}

inline Fan zero_fan(int ambient) { return fan_from_cones(ambient, {}); }

inline bool is_subfan(const Fan& a, const Fan& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("is_subfan: ambient mismatch");
    for (const auto& c : a.cones)
        if (!b.contains(c)) return false;
    return true;
}

// Set intersection of two face-closed cone sets; a fan again.
inline Fan fan_intersection(const Fan& a, const Fan& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("fan_intersection: ambient mismatch");
    std::vector<Cone> common;
    for (const auto& c : a.cones)
        if (b.contains(c)) common.push_back(c);
    return Fan{a.ambient, std::move(common)};
}

// Cones that are not proper faces of another cone of the fan.
inline std::vector<Cone> maximal_cones(const Fan& f) {
    std::vector<Cone> out;
    for (const auto& c : f.cones) {
        bool maximal = true;
        for (const auto& d : f.cones) {
            if (c == d) continue;
            if (is_face(c, d)) { maximal = false; break; }
        }
        if (maximal) out.push_back(c);
    }
    return out;
}

}  // namespace prevar
