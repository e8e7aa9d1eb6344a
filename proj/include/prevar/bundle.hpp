#pragma once

// Ray-class-indexed filtration data for equivariant reflexive and locally
// free sheaves: per-cone weight decompositions, adapted bases, equivariant
// splitting, the structural rank-split criterion, tangent data, and
// filtration-compatible morphisms.

#include "prevar/filtration.hpp"
#include "prevar/smith.hpp"
#include "prevar/system.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace prevar {

// A validated system together with its glued poset and ray classes; every
// bundle operation works relative to one of these.
struct SystemContext {
    SystemOfFans sys;
    OmegaPoset omega;
    std::vector<int> lambda;
};

inline SystemContext make_context(SystemOfFans s) {
    SystemContext ctx;
    ctx.sys = std::move(s);
    ctx.omega = omega_classes(ctx.sys);
    ctx.lambda = lambda_rays(ctx.omega);
    return ctx;
}

struct BundleData {
    int rank = 0;
    std::map<int, Filtration> filtrations;  // keyed by ray class index in the poset

    bool operator==(const BundleData&) const = default;
};

inline BundleData make_bundle(const SystemContext& ctx, int rank, std::map<int, Filtration> filts) {
    if (rank <= 0) throw std::invalid_argument("make_bundle: rank must be positive");
    for (int c : ctx.lambda)
        if (!filts.count(c))
            throw MissingRayFiltration("ray class " + ctx.omega.classes[static_cast<std::size_t>(c)].id +
                                       " has no filtration");
    for (const auto& [c, f] : filts) {
        if (!std::binary_search(ctx.lambda.begin(), ctx.lambda.end(), c))
            throw std::invalid_argument("make_bundle: filtration keyed by a non-ray class");
        if (f.rank != rank) throw RankMismatch("filtration rank does not match the bundle rank");
    }
    return BundleData{rank, std::move(filts)};
}

inline const Filtration& ray_filtration(const SystemContext& ctx, const BundleData& b, int ray_class) {
    auto it = b.filtrations.find(ray_class);
    if (it == b.filtrations.end())
        throw MissingRayFiltration("ray class " +
                                   ctx.omega.classes.at(static_cast<std::size_t>(ray_class)).id +
                                   " has no filtration");
    return it->second;
}

namespace detail {

// One component of the greedy pass: the tuple of filtration levels and the
// vectors it contributed on top of everything processed before it.
struct GridComponent {
    std::vector<long long> tuple;
    std::vector<QVec> gens;
};

// Process tuples in the given order (any linear extension of the product
// order) and at each tuple extend the running span by a complement of its
// overlap with V_t inside V_t. The resulting per-tuple dimensions do not
// depend on the complement choices or on the extension chosen.
inline std::vector<GridComponent> greedy_components(const std::vector<Filtration>& filts, int rank,
                                                    const std::vector<std::vector<long long>>& tuples) {
    RowBasis span(rank);
    std::vector<GridComponent> out;
    for (const auto& t : tuples) {
        Subspace v = subspace_full(rank);
        for (std::size_t j = 0; j < filts.size(); ++j)
            v = subspace_intersect(v, filtration_at(filts[j], t[static_cast<std::size_t>(j)]));
        if (v.dim() == 0) continue;
        RowBasis comp(rank);
        Subspace overlap = subspace_intersect(Subspace{rank, span.rows()}, v);
        for (const auto& r : overlap.rows) comp.add(r);
        GridComponent g{t, {}};
        for (const auto& r : v.rows)
            if (comp.add(r)) {
                g.gens.push_back(r);
                span.add(r);
            }
        if (!g.gens.empty()) out.push_back(std::move(g));
    }
    return out;
}

// The decomposition exists iff the per-level marginal dimensions reproduce
// every filtration: sum over components with t_j <= s of dim E_t must equal
// dim F_j(s) at every integer s in [lo_j, hi_j].
inline bool marginals_match(const std::vector<Filtration>& filts,
                            const std::vector<GridComponent>& comps,
                            const std::vector<long long>& lo, const std::vector<long long>& hi) {
    for (std::size_t j = 0; j < filts.size(); ++j)
        for (long long s = lo[j]; s <= hi[j]; ++s) {
            int total = 0;
            for (const auto& c : comps)
                if (c.tuple[j] <= s) total += static_cast<int>(c.gens.size());
            if (total != filtration_at(filts[j], s).dim()) return false;
        }
    return true;
}

}  // namespace detail

struct WeightComponent {
    IntVec weight;   // a fixed integral lift of m in M / (span(sigma)-perp cap M)
    Subspace space;
};

struct WeightDecomposition {
    int cone_class = 0;
    std::vector<WeightComponent> components;
};

struct ConeVerdict {
    int cone_class = 0;
    bool compatible = false;
    std::optional<WeightDecomposition> decomposition;
};

// Klyachko compatibility over one cone class: the ray filtrations must be
// reproduced by the partial sums of a single weight decomposition. Tuples
// range over the pairing image of M restricted to the box
// [first jump - 1, last jump] per ray; the verdict is the marginal identity
// checked at every level in the box.
inline ConeVerdict check_cone_compatibility(const SystemContext& ctx, const BundleData& b,
                                            int cone_class) {
    const OmegaClass& cls = ctx.omega.classes.at(static_cast<std::size_t>(cone_class));
    const Cone& sigma = cls.cone;
    int n = ctx.sys.ambient;

    if (sigma.dim == 0) {
        WeightDecomposition dec{cone_class,
                                {{IntVec(static_cast<std::size_t>(n), 0), subspace_full(b.rank)}}};
        return ConeVerdict{cone_class, true, std::move(dec)};
    }

    {
        QMatrix rows;
        for (const auto& r : sigma.rays) rows.push_back(to_qvec(r));
        if (rank_q(rows, n) != sigma.dim)
            throw NonPointedIndex("cone " + cls.id + " is not spanned by its rays");
    }

    int label = cls.labels.front();
    std::size_t d = sigma.rays.size();
    std::vector<Filtration> filts;
    std::vector<long long> lo, hi;
    for (const auto& ray : sigma.rays) {
        int rc = ctx.omega.class_of(label, cone_from_generators(n, {ray}));
        if (rc < 0) throw std::invalid_argument("check_cone_compatibility: ray is not classified");
        filts.push_back(ray_filtration(ctx, b, rc));
        lo.push_back(first_jump(filts.back()) - 1);
        hi.push_back(last_jump(filts.back()));
    }

    // admissible tuples: pairing values of integral weights, in lex order
    std::vector<std::vector<long long>> tuples;
    std::map<std::vector<long long>, IntVec> lift;
    std::vector<long long> t = lo;
    bool more = true;
    while (more) {
        IntVec rhs;
        for (long long x : t) rhs.push_back(Int(x));
        if (auto m = solve_integral(sigma.rays, rhs, n)) {
            tuples.push_back(t);
            lift.emplace(t, std::move(*m));
        }
        more = false;
        for (std::size_t j = d; j-- > 0;) {
            if (t[j] < hi[j]) {
                ++t[j];
                for (std::size_t k = j + 1; k < d; ++k) t[k] = lo[k];
                more = true;
                break;
            }
        }
    }

    auto comps = detail::greedy_components(filts, b.rank, tuples);
    if (!detail::marginals_match(filts, comps, lo, hi))
        return ConeVerdict{cone_class, false, std::nullopt};
    WeightDecomposition dec{cone_class, {}};
    for (const auto& c : comps)
        dec.components.push_back({lift.at(c.tuple), subspace_span(b.rank, c.gens)});
    return ConeVerdict{cone_class, true, std::move(dec)};
}

struct CompatibilityReport {
    bool locally_free = true;
    std::vector<ConeVerdict> cones;  // one per maximal cone class, in class order
};

inline CompatibilityReport is_locally_free(const SystemContext& ctx, const BundleData& b) {
    std::set<int> targets;
    for (std::size_t i = 0; i < ctx.sys.labels.size(); ++i)
        for (const auto& sigma : maximal_cones(ctx.sys.diagonal[i]))
            targets.insert(ctx.omega.class_of(static_cast<int>(i), sigma));
    CompatibilityReport rep;
    for (int c : targets) {
        rep.cones.push_back(check_cone_compatibility(ctx, b, c));
        rep.locally_free = rep.locally_free && rep.cones.back().compatible;
    }
    return rep;
}

struct AdaptedBasis {
    std::vector<QVec> vectors;
    std::vector<std::vector<long long>> labels;  // labels[v][j] = entry level into filtration j
};

// Common adapted basis over the full product grid of jump levels; this is the
// smooth-cone and global-splitting decision. No lattice restriction applies,
// so only jump-level tuples can carry a component.
inline std::optional<AdaptedBasis> adapted_basis(int rank, const std::vector<Filtration>& filts) {
    for (const auto& f : filts)
        if (f.rank != rank) throw RankMismatch("adapted_basis: filtration ranks disagree");

    std::vector<std::vector<long long>> levels;
    std::vector<long long> lo, hi;
    for (const auto& f : filts) {
        levels.push_back(jump_levels(f));
        lo.push_back(first_jump(f) - 1);
        hi.push_back(last_jump(f));
    }

    std::vector<std::vector<long long>> tuples;
    std::vector<std::size_t> idx(filts.size(), 0);
    while (true) {
        std::vector<long long> t;
        for (std::size_t j = 0; j < filts.size(); ++j) t.push_back(levels[j][idx[j]]);
        tuples.push_back(std::move(t));
        std::size_t j = filts.size();
        bool done = true;
        while (j > 0) {
            --j;
            if (++idx[j] < levels[j].size()) {
                done = false;
                break;
            }
            idx[j] = 0;
        }
        if (done) break;
    }

    auto comps = detail::greedy_components(filts, rank, tuples);
    if (!detail::marginals_match(filts, comps, lo, hi)) return std::nullopt;

    AdaptedBasis out;
    for (const auto& c : comps)
        for (const auto& g : c.gens) {
            out.vectors.push_back(g);
            out.labels.push_back(c.tuple);
        }
    return out;
}

// Global splitting into equivariant line bundles: one basis adapted to every
// ray-class filtration at once. Stated for smooth systems only.
inline std::optional<AdaptedBasis> splits_equivariantly(const SystemContext& ctx,
                                                        const BundleData& b) {
    if (!is_smooth_system(ctx.sys))
        throw NotSmooth("equivariant splitting is decided for smooth systems only");
    std::vector<Filtration> filts;
    for (int c : ctx.lambda) filts.push_back(ray_filtration(ctx, b, c));
    return adapted_basis(b.rank, filts);
}

struct RankSplitResult {
    bool splits = true;
    std::vector<int> witness;  // offending ray-class subset when splits is false
};

// Structural criterion: every (m+1)-element subset of the ray classes must be
// realized as the generator set of a cone in some chart. With strict_labels
// the chart must also glue each chosen ray class to its own ray, which is the
// reading under which the subset's filtrations are genuinely the cone's data.
inline RankSplitResult rank_split_structural(const SystemContext& ctx, int m,
                                             bool strict_labels = true,
                                             bool allow_rank_one = false) {
    if (!is_smooth_system(ctx.sys))
        throw NotSmooth("the rank-split criterion is stated for smooth systems only");
    if (m < 1) throw std::invalid_argument("rank_split_structural: m must be positive");
    if (m < 2 && !allow_rank_one)
        throw std::invalid_argument(
            "rank_split_structural: rank-1 sheaves split trivially and the structural criterion "
            "is stated for m >= 2; pass allow_rank_one to evaluate the predicate anyway");

    int n = ctx.sys.ambient;
    int count = static_cast<int>(ctx.lambda.size());
    int k = m + 1;
    if (count < k) return RankSplitResult{};

    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<int> subset;
        std::vector<IntVec> rays;
        for (int i : pick) {
            subset.push_back(ctx.lambda[static_cast<std::size_t>(i)]);
            rays.push_back(ctx.omega.classes[static_cast<std::size_t>(subset.back())].cone.rays.front());
        }
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

        bool realized = false;
        std::optional<Cone> generated;
        try {
            generated = cone_from_generators(n, rays);
        } catch (const NotStronglyConvex&) {
        }
        if (generated && generated->rays != rays) generated.reset();  // an interior generator is not a ray
        if (generated) {
            for (std::size_t j = 0; j < ctx.sys.labels.size() && !realized; ++j) {
                if (!ctx.sys.diagonal[j].contains(*generated)) continue;
                if (strict_labels) {
                    bool glued = true;
                    for (int c : subset) {
                        const auto& lbls = ctx.omega.classes[static_cast<std::size_t>(c)].labels;
                        glued = glued && std::binary_search(lbls.begin(), lbls.end(), static_cast<int>(j));
                    }
                    if (!glued) continue;
                }
                realized = true;
            }
        }
        if (!realized) return RankSplitResult{false, std::move(subset)};

        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == count - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int a = i + 1; a < k; ++a)
            pick[static_cast<std::size_t>(a)] = pick[static_cast<std::size_t>(a - 1)] + 1;
    }
    return RankSplitResult{};
}

// Tangent data of a smooth system: rank n, and for each ray class the
// filtration through the line of its generator at level -1. In rank 1 the
// line is already everything and the two jumps collapse.
inline BundleData tangent_bundle(const SystemContext& ctx) {
    if (!is_smooth_system(ctx.sys)) throw NotSmooth("tangent data is stated for smooth systems only");
    int n = ctx.sys.ambient;
    std::map<int, Filtration> filts;
    for (int c : ctx.lambda) {
        const IntVec& v = ctx.omega.classes[static_cast<std::size_t>(c)].cone.rays.front();
        std::vector<std::pair<long long, Subspace>> jumps;
        if (n == 1) {
            jumps = {{-1, subspace_full(1)}};
        } else {
            jumps = {{-1, subspace_span_int(n, {v})}, {0, subspace_full(n)}};
        }
        filts.emplace(c, make_filtration(n, std::move(jumps)));
    }
    return make_bundle(ctx, n, std::move(filts));
}

inline Subspace map_subspace(const QMatrix& m, const Subspace& s, int out_dim) {
    QMatrix imgs;
    for (const auto& row : s.rows) imgs.push_back(apply_matrix(m, row));
    return subspace_span(out_dim, imgs);
}

// A morphism of bundle data is a linear map respecting every ray filtration:
// map(A(s)) inside B(s) for all levels s. It suffices to test the jump levels
// of both sides.
inline bool is_bundle_morphism(const SystemContext& ctx, const QMatrix& map, const BundleData& a,
                               const BundleData& b) {
    if (static_cast<int>(map.size()) != b.rank)
        throw DimensionMismatch("is_bundle_morphism: need one matrix row per target coordinate");
    for (const auto& row : map)
        if (static_cast<int>(row.size()) != a.rank)
            throw DimensionMismatch("is_bundle_morphism: matrix row length must match the source rank");
    for (int c : ctx.lambda) {
        const Filtration& fa = ray_filtration(ctx, a, c);
        const Filtration& fb = ray_filtration(ctx, b, c);
        std::set<long long> levels;
        for (long long s : jump_levels(fa)) levels.insert(s);
        for (long long s : jump_levels(fb)) levels.insert(s);
        for (long long s : levels)
            if (!subspace_leq(map_subspace(map, filtration_at(fa, s), b.rank), filtration_at(fb, s)))
                return false;
    }
    return true;
}

}  // namespace prevar
