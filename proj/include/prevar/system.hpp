#pragma once

// Systems of fans, their validation, the glueing-relation quotient Omega(S),
// ray classes Lambda, and morphism validation.
//
// A system over labels I stores one diagonal fan per label and the glueing
// fans once per unordered pair; an absent pair means the trivial fan {0}.
// Labeled cones (sigma, i) are glued by (sigma, i) ~ (tau, j) iff
// sigma = tau and sigma lies in the pair fan of (i, j).

#include "prevar/fan.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prevar {

struct SystemOfFans {
    int ambient = 0;
    std::vector<std::string> labels;
    std::vector<Fan> diagonal;                // one per label, same order
    std::map<std::pair<int, int>, Fan> offdiag;  // keyed (i, j) with i < j
    Fan trivial;                              // shared {0} fan for absent pairs

    const Fan& fan(int i, int j) const {
        if (i == j) return diagonal.at(static_cast<std::size_t>(i));
        auto it = offdiag.find(std::minmax(i, j));
        return it == offdiag.end() ? trivial : it->second;
    }

    int label_index(const std::string& l) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return static_cast<int>(i);
        return -1;
    }

    std::string pair_name(int i, int j) const {
        if (i == j) return labels[static_cast<std::size_t>(i)];
        auto [a, b] = std::minmax(i, j);
        return labels[static_cast<std::size_t>(a)] + "|" + labels[static_cast<std::size_t>(b)];
    }
};

inline SystemOfFans make_system(std::vector<std::string> labels, std::vector<Fan> diagonal,
                                std::map<std::pair<int, int>, Fan> offdiag) {
    if (labels.empty()) throw SchemaError("a system needs at least one label");
    if (labels.size() != diagonal.size())
        throw SchemaError("need exactly one diagonal fan per label");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw SchemaError("duplicate label \"" + labels[i] + "\"");
    int ambient = diagonal.front().ambient;
    for (const auto& f : diagonal)
        if (f.ambient != ambient) throw SchemaError("diagonal fans disagree on ambient rank");
    int n = static_cast<int>(labels.size());
    std::map<std::pair<int, int>, Fan> keyed;
    for (auto& [key, f] : offdiag) {
        auto [i, j] = std::minmax(key.first, key.second);
        if (i < 0 || j >= n || i == j) throw SchemaError("pair fan key out of range");
        if (f.ambient != ambient) throw SchemaError("pair fan disagrees on ambient rank");
        if (keyed.count({i, j})) throw SchemaError("pair fan given twice for " + labels[static_cast<std::size_t>(i)] + "|" + labels[static_cast<std::size_t>(j)]);
        keyed.emplace(std::make_pair(i, j), std::move(f));
    }
    SystemOfFans s;
    s.ambient = ambient;
    s.labels = std::move(labels);
    s.diagonal = std::move(diagonal);
    s.offdiag = std::move(keyed);
    s.trivial = zero_fan(ambient);
    return s;
}

inline SystemOfFans make_singleton_system(const std::string& label, Fan fan) {
    return make_system({label}, {std::move(fan)}, {});
}

struct Violation {
    std::string axiom;
    std::string detail;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
    void add(std::string axiom, std::string detail) {
        valid = false;
        violations.push_back({std::move(axiom), std::move(detail)});
    }
};

// Checks, in order: every stored fan is face-closed and pairwise proper, each
// pair fan is a subfan of both diagonal fans, and the triple condition
// fan(i,j) meet fan(j,k) inside fan(i,k). All violations are collected.
inline ValidationReport validate_system(const SystemOfFans& s) {
    ValidationReport rep;
    int n = static_cast<int>(s.labels.size());

    auto check_fan = [&rep](const Fan& f, const std::string& name) {
        for (const auto& c : f.cones)
            for (const auto& face : faces(c))
                if (!f.contains(face)) {
                    rep.add("face-closed", "fan " + name + " lacks the face " + cone_display(face) +
                                               " of " + cone_display(c));
                    return;
                }
        if (auto defect = find_fan_defect(f.cones))
            rep.add("common-face", "fan " + name + ": " + cone_display(defect->first) + " and " +
                                       cone_display(defect->second) + " intersect in a non-face");
    };
    for (int i = 0; i < n; ++i) check_fan(s.diagonal[static_cast<std::size_t>(i)], s.pair_name(i, i));
    for (const auto& [key, f] : s.offdiag) check_fan(f, s.pair_name(key.first, key.second));

    for (const auto& [key, f] : s.offdiag) {
        auto [i, j] = key;
        for (int d : {i, j})
            for (const auto& c : f.cones)
                if (!s.fan(d, d).contains(c)) {
                    rep.add("subfan", "pair fan " + s.pair_name(i, j) + " contains " + cone_display(c) +
                                          " missing from fan " + s.pair_name(d, d));
                    break;
                }
    }

    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                Fan meet = fan_intersection(s.fan(i, j), s.fan(j, k));
                for (const auto& c : meet.cones)
                    if (!s.fan(i, k).contains(c)) {
                        rep.add("triple", "fans " + s.pair_name(i, j) + " and " + s.pair_name(j, k) +
                                              " share " + cone_display(c) + " missing from pair fan " +
                                              s.pair_name(i, k));
                        break;
                    }
            }
    return rep;
}

struct OmegaClass {
    Cone cone;
    std::vector<int> labels;  // sorted label indices whose charts contain the cone, glued
    std::string id;           // "<least label>:<ray coordinates>", rays joined by "|"
};

struct OmegaPoset {
    int ambient = 0;
    std::vector<std::string> labels;
    std::vector<OmegaClass> classes;  // sorted by (least label, dim, rays)
    std::map<std::pair<int, std::string>, int> index;  // (label, cone key) -> class

    int class_of(int label, const Cone& c) const {
        auto it = index.find({label, cone_key(c)});
        return it == index.end() ? -1 : it->second;
    }
};

// Union-find quotient of the labeled cones. Transitively inferred
// identifications are re-verified against the pair fans afterwards; a failure
// means the input was not a valid system.
inline OmegaPoset omega_classes(const SystemOfFans& s) {
    int n = static_cast<int>(s.labels.size());
    std::vector<std::pair<int, const Cone*>> nodes;
    std::map<std::pair<int, std::string>, int> node_of;
    for (int i = 0; i < n; ++i)
        for (const auto& c : s.diagonal[static_cast<std::size_t>(i)].cones) {
            node_of.emplace(std::make_pair(i, cone_key(c)), static_cast<int>(nodes.size()));
            nodes.emplace_back(i, &c);
        }

    std::vector<int> parent(nodes.size());
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = static_cast<int>(v);
    auto find = [&parent](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };

    for (const auto& [key, f] : s.offdiag)
        for (const auto& c : f.cones) {
            auto a = node_of.find({key.first, cone_key(c)});
            auto b = node_of.find({key.second, cone_key(c)});
            if (a == node_of.end() || b == node_of.end())
                throw std::invalid_argument("pair fan " + s.pair_name(key.first, key.second) +
                                            " is not a subfan of its charts; validate the system first");
            parent[static_cast<std::size_t>(find(a->second))] = find(b->second);
        }

    std::map<int, std::vector<int>> groups;  // root -> node list
    for (std::size_t v = 0; v < nodes.size(); ++v) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));

    std::vector<OmegaClass> classes;
    for (const auto& [root, members] : groups) {
        OmegaClass cls;
        cls.cone = *nodes[static_cast<std::size_t>(members.front())].second;
        for (int v : members) {
            assert(*nodes[static_cast<std::size_t>(v)].second == cls.cone);
            cls.labels.push_back(nodes[static_cast<std::size_t>(v)].first);
        }
        std::sort(cls.labels.begin(), cls.labels.end());
        for (std::size_t a = 0; a < cls.labels.size(); ++a)
            for (std::size_t b = a + 1; b < cls.labels.size(); ++b)
                if (!s.fan(cls.labels[a], cls.labels[b]).contains(cls.cone))
                    throw TransitivityViolation(
                        "charts " + s.pair_name(cls.labels[a], cls.labels[a]) + " and " +
                        s.pair_name(cls.labels[b], cls.labels[b]) + " glue " + cone_display(cls.cone) +
                        " only transitively; the pair fan " + s.pair_name(cls.labels[a], cls.labels[b]) +
                        " lacks it");
        cls.id = s.labels[static_cast<std::size_t>(cls.labels.front())] + ":" + cone_key(cls.cone);
        classes.push_back(std::move(cls));
    }

    std::sort(classes.begin(), classes.end(), [](const OmegaClass& a, const OmegaClass& b) {
        if (a.labels.front() != b.labels.front()) return a.labels.front() < b.labels.front();
        if (a.cone.dim != b.cone.dim) return a.cone.dim < b.cone.dim;
        return a.cone.rays < b.cone.rays;
    });

    OmegaPoset p;
    p.ambient = s.ambient;
    p.labels = s.labels;
    p.classes = std::move(classes);
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        for (int i : p.classes[c].labels)
            p.index.emplace(std::make_pair(i, cone_key(p.classes[c].cone)), static_cast<int>(c));
    return p;
}

// [tau, j] below [sigma, i]: tau a face of sigma and (tau, i) glued to (tau, j).
inline bool omega_leq(const OmegaPoset& p, int a, int b) {
    if (a == b) return true;
    const OmegaClass& ca = p.classes.at(static_cast<std::size_t>(a));
    const OmegaClass& cb = p.classes.at(static_cast<std::size_t>(b));
    if (ca.cone.dim > cb.cone.dim) return false;
    if (!is_face(ca.cone, cb.cone)) return false;
    for (int i : cb.labels)
        if (p.class_of(i, ca.cone) == a) return true;
    return false;
}

inline std::vector<int> orbit_closure_downset(const OmegaPoset& p, int a) {
    std::vector<int> below;
    for (std::size_t b = 0; b < p.classes.size(); ++b)
        if (omega_leq(p, static_cast<int>(b), a)) below.push_back(static_cast<int>(b));
    return below;
}

inline std::vector<int> lambda_rays(const OmegaPoset& p) {
    std::vector<int> out;
    for (std::size_t c = 0; c < p.classes.size(); ++c)
        if (p.classes[c].cone.dim == 1) out.push_back(static_cast<int>(c));
    return out;
}

inline bool is_affine_system(const SystemOfFans& s) {
    for (const auto& f : s.diagonal)
        if (maximal_cones(f).size() != 1) return false;
    return true;
}

inline bool is_smooth_system(const SystemOfFans& s) {
    for (const auto& f : s.diagonal)
        for (const auto& c : f.cones)
            if (!is_smooth(c)) return false;
    return true;
}

struct SingleFanCheck {
    std::optional<std::pair<int, int>> unequal_pair;  // fan(i,j) != fan(i,i) meet fan(j,j)
    std::optional<std::pair<Cone, Cone>> union_clash;
    bool equalities_hold() const { return !unequal_pair; }
    bool union_is_fan() const { return !union_clash; }
};

inline SingleFanCheck check_single_fan(const SystemOfFans& s) {
    SingleFanCheck out;
    int n = static_cast<int>(s.labels.size());
    for (int i = 0; i < n && !out.unequal_pair; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.fan(i, j) != fan_intersection(s.fan(i, i), s.fan(j, j))) {
                out.unequal_pair = {i, j};
                break;
            }
    std::vector<Cone> all;
    for (const auto& f : s.diagonal) all.insert(all.end(), f.cones.begin(), f.cones.end());
    std::sort(all.begin(), all.end(), Fan::cone_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.union_clash = find_fan_defect(all);
    return out;
}

// True iff the glueing data is exactly the pairwise intersection of the
// charts AND the union of the charts is itself a fan, so the system presents
// that single fan. With clash_is_error set, the case where all equalities
// hold but the union clashes is raised as ConesClash instead of returning
// false, for callers that treat it as a distinct diagnosis.
inline bool is_single_fan_system(const SystemOfFans& s, bool clash_is_error = false) {
    SingleFanCheck c = check_single_fan(s);
    if (!c.equalities_hold()) return false;
    if (!c.union_is_fan()) {
        if (clash_is_error)
            throw ConesClash("chart cones " + cone_display(c.union_clash->first) + " and " +
                             cone_display(c.union_clash->second) + " intersect in a non-face");
        return false;
    }
    return true;
}

struct SupportPoint {
    int cone_class = 0;
    QVec coordinates;
};

inline SupportPoint support_point(const OmegaPoset& p, int cone_class, QVec coordinates) {
    const Cone& c = p.classes.at(static_cast<std::size_t>(cone_class)).cone;
    if (!contains_point(c, coordinates))
        throw std::invalid_argument("support_point: coordinates lie outside the cone");
    return SupportPoint{cone_class, std::move(coordinates)};
}

struct SoFMorphism {
    std::vector<IntVec> lattice_map;  // rows = target ambient, cols = source ambient
    std::vector<int> class_map;       // source class index -> target class index
};

inline IntVec apply_lattice_map(const std::vector<IntVec>& m, const IntVec& v) {
    IntVec out(m.size(), 0);
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (m[r].size() != v.size()) throw DimensionMismatch("apply_lattice_map: row length");
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    }
    return out;
}

// A morphism must cover every class, preserve the orbit order, and map each
// cone into its image cone with relative interior landing in relative
// interior. The interior condition is decided at the ray-generator sum.
inline ValidationReport validate_morphism(const SoFMorphism& m, const OmegaPoset& src,
                                          const OmegaPoset& tgt) {
    ValidationReport rep;
    if (static_cast<int>(m.lattice_map.size()) != tgt.ambient) {
        rep.add("shape", "lattice map needs " + std::to_string(tgt.ambient) + " rows");
        return rep;
    }
    for (const auto& row : m.lattice_map)
        if (static_cast<int>(row.size()) != src.ambient) {
            rep.add("shape", "lattice map rows need length " + std::to_string(src.ambient));
            return rep;
        }
    if (m.class_map.size() != src.classes.size()) {
        rep.add("totality", "class map must cover all " + std::to_string(src.classes.size()) +
                                " source classes");
        return rep;
    }
    for (int t : m.class_map)
        if (t < 0 || t >= static_cast<int>(tgt.classes.size())) {
            rep.add("totality", "class map image " + std::to_string(t) + " out of range");
            return rep;
        }

    for (std::size_t a = 0; a < src.classes.size(); ++a)
        for (std::size_t b = 0; b < src.classes.size(); ++b)
            if (omega_leq(src, static_cast<int>(a), static_cast<int>(b)) &&
                !omega_leq(tgt, m.class_map[a], m.class_map[b]))
                rep.add("order", "source " + src.classes[a].id + " below " + src.classes[b].id +
                                     " but images " + tgt.classes[static_cast<std::size_t>(m.class_map[a])].id +
                                     " and " + tgt.classes[static_cast<std::size_t>(m.class_map[b])].id +
                                     " are not ordered");

    for (std::size_t a = 0; a < src.classes.size(); ++a) {
        const Cone& sigma = src.classes[a].cone;
        const Cone& image = tgt.classes[static_cast<std::size_t>(m.class_map[a])].cone;
        IntVec sum(static_cast<std::size_t>(src.ambient), 0);
        bool inside = true;
        for (const auto& v : sigma.rays) {
            sum = vec_add(sum, v);
            if (!contains_point(image, to_qvec(apply_lattice_map(m.lattice_map, v)))) inside = false;
        }
        if (!inside) {
            rep.add("cone", "image of " + src.classes[a].id + " is not contained in the cone of " +
                                tgt.classes[static_cast<std::size_t>(m.class_map[a])].id);
            continue;
        }
        if (!relint_contains(image, to_qvec(apply_lattice_map(m.lattice_map, sum))))
            rep.add("interior", "image of the interior of " + src.classes[a].id +
                                    " misses the relative interior of " +
                                    tgt.classes[static_cast<std::size_t>(m.class_map[a])].id);
    }
    return rep;
}

}  // namespace prevar
