#pragma once

// Prevaluations backed by filtrations, extended apartments, and integral
// piecewise-linear map data attached to the maximal cone classes; conversion
// to and from ray-class filtration data.
//
// Sign convention: v(e) = -min{a : e in E_a}, so that E_{v >= -a} = E_a holds
// on the nose and v satisfies the non-Archimedean inequality.

#include "prevar/bundle.hpp"
#include "prevar/filtration.hpp"
#include "prevar/system.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prevar {

struct Prevaluation {
    Filtration backing;

    bool operator==(const Prevaluation&) const = default;
};

// v(e) as an integer, or nullopt for v(0) = infinity.
inline std::optional<long long> prevaluation_eval(const Prevaluation& p, const QVec& e) {
    if (static_cast<int>(e.size()) != p.backing.rank)
        throw DimensionMismatch("prevaluation_eval: vector length does not match the rank");
    if (is_zero(e)) return std::nullopt;
    for (const auto& [level, space] : p.backing.jumps)
        if (contains_vector(space, e)) return -level;
    throw std::logic_error("prevaluation_eval: full filtration lacks the vector");  // unreachable
}

struct ExtendedApartment {
    std::vector<QVec> basis;
};

// Membership of the backing prevaluation in the apartment of the basis:
// v(sum l_i b_i) = min over the supporting v(b_i). Finitely decided: at every
// jump level the basis vectors inside the jump space must span it.
inline bool in_apartment(const Prevaluation& p, const ExtendedApartment& a) {
    int r = p.backing.rank;
    if (static_cast<int>(a.basis.size()) != r)
        throw RankMismatch("in_apartment: basis size does not match the rank");
    RowBasis all(r);
    for (const auto& b : a.basis)
        if (!all.add(b)) throw std::invalid_argument("in_apartment: the vectors are not a basis");
    for (const auto& [level, space] : p.backing.jumps) {
        int inside = 0;
        for (const auto& b : a.basis)
            if (contains_vector(space, b)) ++inside;
        if (inside != space.dim()) return false;
    }
    return true;
}

struct PLPiece {
    std::vector<QVec> basis;
    std::vector<IntVec> weights;  // one integral weight per basis vector

    bool operator==(const PLPiece&) const = default;
};

struct PLMap {
    int rank = 0;
    std::map<int, PLPiece> pieces;  // keyed by maximal cone class index

    bool operator==(const PLMap&) const = default;
};

// The filtration of Phi(x) for a lattice point x: basis vector b enters at
// level <m(b), x>.
inline Filtration piece_filtration_at_point(const PLPiece& piece, int rank, const IntVec& x) {
    std::vector<std::pair<long long, std::size_t>> order;
    for (std::size_t i = 0; i < piece.basis.size(); ++i) {
        Int pairing = 0;
        for (std::size_t k = 0; k < x.size(); ++k) pairing += piece.weights[i][k] * x[k];
        order.emplace_back(pairing.convert_to<long long>(), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::pair<long long, Subspace>> jumps;
    QMatrix gens;
    for (std::size_t i = 0; i < order.size(); ++i) {
        gens.push_back(piece.basis[order[i].second]);
        if (i + 1 < order.size() && order[i + 1].first == order[i].first) continue;
        jumps.emplace_back(order[i].first, subspace_span(rank, gens));
    }
    return make_filtration(rank, std::move(jumps));
}

inline PLMap plmap_from_bundle(const SystemContext& ctx, const BundleData& b) {
    CompatibilityReport rep = is_locally_free(ctx, b);
    if (!rep.locally_free) {
        for (const auto& v : rep.cones)
            if (!v.compatible)
                throw NotLocallyFree("no weight decomposition over cone class " +
                                     ctx.omega.classes[static_cast<std::size_t>(v.cone_class)].id);
    }
    PLMap out;
    out.rank = b.rank;
    for (const auto& v : rep.cones) {
        PLPiece piece;
        for (const auto& comp : v.decomposition->components)
            for (const auto& row : comp.space.rows) {
                piece.basis.push_back(row);
                piece.weights.push_back(comp.weight);
            }
        out.pieces.emplace(v.cone_class, std::move(piece));
    }
    return out;
}

inline ValidationReport validate_plmap(const SystemContext& ctx, const PLMap& p) {
    ValidationReport report;
    int n = ctx.sys.ambient;

    std::vector<int> maximal;
    for (std::size_t i = 0; i < ctx.sys.labels.size(); ++i)
        for (const auto& sigma : maximal_cones(ctx.sys.diagonal[i]))
            maximal.push_back(ctx.omega.class_of(static_cast<int>(i), sigma));
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

    for (int c : maximal)
        if (!p.pieces.count(c))
            report.add("coverage", "maximal cone class " +
                                       ctx.omega.classes[static_cast<std::size_t>(c)].id +
                                       " has no piece");
    for (const auto& [c, piece] : p.pieces) {
        if (!std::binary_search(maximal.begin(), maximal.end(), c)) {
            report.add("coverage", "piece keyed by a non-maximal cone class");
            continue;
        }
        const std::string& id = ctx.omega.classes[static_cast<std::size_t>(c)].id;
        if (static_cast<int>(piece.basis.size()) != p.rank) {
            report.add("basis", "piece " + id + " does not have rank-many vectors");
            continue;
        }
        RowBasis rb(p.rank);
        bool independent = true;
        for (const auto& v : piece.basis) {
            if (static_cast<int>(v.size()) != p.rank) {
                report.add("basis", "piece " + id + " has a vector of the wrong length");
                independent = false;
                break;
            }
            if (!rb.add(v)) {
                report.add("basis", "piece " + id + " basis vectors are dependent");
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        if (piece.weights.size() != piece.basis.size()) {
            report.add("weights", "piece " + id + " needs one weight per basis vector");
            continue;
        }
        for (const auto& w : piece.weights)
            if (static_cast<int>(w.size()) != n) {
                report.add("weights", "piece " + id + " has a weight of the wrong length");
                break;
            }
    }
    if (!report.valid) return report;

    // Face consistency: pieces sharing a face class must induce the same
    // prevaluation along it; by linearity, agreement at the face's ray
    // generators and at their sum decides agreement on the face.
    for (auto it1 = p.pieces.begin(); it1 != p.pieces.end(); ++it1)
        for (auto it2 = std::next(it1); it2 != p.pieces.end(); ++it2) {
            for (std::size_t f = 0; f < ctx.omega.classes.size(); ++f) {
                const OmegaClass& face = ctx.omega.classes[f];
                if (face.cone.dim == 0) continue;
                int fi = static_cast<int>(f);
                if (!omega_leq(ctx.omega, fi, it1->first) || !omega_leq(ctx.omega, fi, it2->first))
                    continue;
                std::vector<IntVec> points = face.cone.rays;
                if (face.cone.rays.size() > 1) {
                    IntVec sum(static_cast<std::size_t>(n), Int(0));
                    for (const auto& ray : face.cone.rays)
                        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += ray[k];
                    points.push_back(std::move(sum));
                }
                for (const auto& x : points) {
                    Filtration f1 = piece_filtration_at_point(it1->second, p.rank, x);
                    Filtration f2 = piece_filtration_at_point(it2->second, p.rank, x);
                    if (!(f1 == f2)) {
                        std::string where;
                        for (std::size_t k = 0; k < x.size(); ++k)
                            where += (k ? "," : "") + x[k].str();
                        report.add("face", "pieces " +
                                               ctx.omega.classes[static_cast<std::size_t>(it1->first)].id +
                                               " and " +
                                               ctx.omega.classes[static_cast<std::size_t>(it2->first)].id +
                                               " disagree at (" + where + ") on face class " + face.id);
                    }
                }
            }
        }
    return report;
}

inline BundleData bundle_from_plmap(const SystemContext& ctx, const PLMap& p) {
    ValidationReport report = validate_plmap(ctx, p);
    if (!report.valid)
        throw InvalidPLMap(report.violations.front().axiom + ": " + report.violations.front().detail);

    std::map<int, Filtration> filts;
    for (int rc : ctx.lambda) {
        const IntVec& ray = ctx.omega.classes[static_cast<std::size_t>(rc)].cone.rays.front();
        const PLPiece* piece = nullptr;
        for (const auto& [c, pc] : p.pieces)
            if (omega_leq(ctx.omega, rc, c)) {
                piece = &pc;
                break;
            }
        if (!piece)
            throw InvalidPLMap("ray class " + ctx.omega.classes[static_cast<std::size_t>(rc)].id +
                               " is not covered by any piece");
        filts.emplace(rc, piece_filtration_at_point(*piece, p.rank, ray));
    }
    return make_bundle(ctx, p.rank, std::move(filts));
}

}  // namespace prevar
