#pragma once

// Strongly convex rational polyhedral cones. A Cone stores its primitive
// extreme-ray generators (sorted) and its facet normals, both canonical, so
// cone equality is representation equality. Facet normals are obtained by
// double-description conversion from the generators and are canonicalized to
// lie in the linear span of the cone.

#include "prevar/errors.hpp"
#include "prevar/linalg.hpp"
#include "prevar/rational.hpp"
#include "prevar/smith.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace prevar {

struct DoubleDescription {
    std::vector<IntVec> lineality;  // basis of {x : all constraints hold with equality, both signs}
    std::vector<IntVec> rays;       // extreme rays modulo the lineality space
};

// Incremental double description for {x : <a,x> >= 0 for a in ineqs,
// <e,x> = 0 for e in eqs}. Rays carry the set of processed inequality
// constraints they satisfy with equality; the standard combinatorial
// adjacency test keeps the ray set irredundant.
inline DoubleDescription double_description(int n, const std::vector<IntVec>& ineqs,
                                            const std::vector<IntVec>& eqs) {
    struct Ray {
        IntVec v;
        std::vector<bool> zero;  // per processed inequality
    };
    std::vector<IntVec> lin;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<Ray> rays;

    auto process = [&](const IntVec& a, bool equality, std::size_t ineq_index) {
        // Case 1: the constraint is nonzero on the lineality space. One
        // lineality generator becomes the pivot; everything else is made
        // orthogonal to a, and for inequalities the pivot survives as a ray.
        int pivot = -1;
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) { pivot = static_cast<int>(i); break; }
        if (pivot >= 0) {
            IntVec p = lin[pivot];
            Int pa = dot(a, p);
            std::vector<IntVec> new_lin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (static_cast<int>(i) == pivot) continue;
                Int la = dot(a, lin[i]);
                new_lin.push_back(la == 0 ? lin[i] : primitive(vec_comb(pa, lin[i], -la, p)));
            }
            lin = std::move(new_lin);
            for (auto& r : rays) {
                Int ra = dot(a, r.v);
                if (ra != 0) {
                    // keep the r-component positive: r + c*p stays in the cone
                    Int c = -ra;
                    IntVec adj = vec_comb(int_abs(pa), r.v, pa > 0 ? c : -c, p);
                    r.v = primitive(std::move(adj));
                }
                if (!equality) r.zero.push_back(true);
            }
            if (!equality) {
                Ray r0;  // the pivot direction, oriented to the positive side of a
                r0.v = p;
                if (pa < 0)
                    for (auto& x : r0.v) x = -x;
                r0.zero.assign(ineq_index, true);  // lineality was zero on all earlier inequalities
                r0.zero.push_back(false);
                rays.push_back(std::move(r0));
            }
            return;
        }

        // Case 2: lineality is orthogonal to a; split rays by sign.
        std::vector<Ray> plus, zero, minus;
        for (auto& r : rays) {
            Int s = dot(a, r.v);
            if (s > 0) plus.push_back(std::move(r));
            else if (s == 0) zero.push_back(std::move(r));
            else minus.push_back(std::move(r));
        }
        auto adjacent = [&](const Ray& r1, const Ray& r2) {
            std::vector<bool> common(r1.zero.size());
            for (std::size_t i = 0; i < common.size(); ++i) common[i] = r1.zero[i] && r2.zero[i];
            for (const auto& group : {std::cref(plus), std::cref(zero), std::cref(minus)})
                for (const Ray& r3 : group.get()) {
                    if (&r3 == &r1 || &r3 == &r2) continue;
                    bool superset = true;
                    for (std::size_t i = 0; i < common.size() && superset; ++i)
                        if (common[i] && !r3.zero[i]) superset = false;
                    if (superset) return false;
                }
            return true;
        };
        std::vector<Ray> combos;
        for (const Ray& rp : plus)
            for (const Ray& rm : minus) {
                if (!adjacent(rp, rm)) continue;
                Ray comb;
                comb.v = primitive(vec_comb(dot(a, rp.v), rm.v, -dot(a, rm.v), rp.v));
                comb.zero.resize(rp.zero.size());
                for (std::size_t i = 0; i < comb.zero.size(); ++i)
                    comb.zero[i] = rp.zero[i] && rm.zero[i];
                if (!equality) comb.zero.push_back(true);
                combos.push_back(std::move(comb));
            }
        std::vector<Ray> next;
        for (auto& r : zero) {
            if (!equality) r.zero.push_back(true);
            next.push_back(std::move(r));
        }
        if (!equality)
            for (auto& r : plus) {
                r.zero.push_back(false);
                next.push_back(std::move(r));
            }
        for (auto& r : combos) next.push_back(std::move(r));
        rays = std::move(next);
    };

    for (const auto& e : eqs) process(e, true, 0);
    for (std::size_t i = 0; i < ineqs.size(); ++i) process(ineqs[i], false, i);

    DoubleDescription out;
    out.lineality = std::move(lin);
    out.rays.reserve(rays.size());
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

struct Cone {
    int ambient = 0;
    std::vector<IntVec> rays;     // primitive extreme-ray generators, sorted
    std::vector<IntVec> normals;  // primitive facet normals in span(rays), sorted
    int dim = 0;
    Subspace span;  // linear span over Q

    bool operator==(const Cone& o) const { return ambient == o.ambient && rays == o.rays; }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    bool operator<(const Cone& o) const {
        if (ambient != o.ambient) return ambient < o.ambient;
        return rays < o.rays;
    }
    bool is_zero() const { return rays.empty(); }
};

inline const std::vector<IntVec>& facet_normals(const Cone& c) { return c.normals; }

inline Cone cone_from_generators(int ambient, std::vector<IntVec> gens) {
    for (const auto& g : gens)
        if (static_cast<int>(g.size()) != ambient)
            throw DimensionMismatch("cone generator of length " + std::to_string(g.size()) +
                                    " in ambient rank " + std::to_string(ambient));
    std::vector<IntVec> prim;
    for (auto& g : gens) {
        IntVec p = primitive(std::move(g));
        if (!is_zero(p)) prim.push_back(std::move(p));
    }
    std::sort(prim.begin(), prim.end());
    prim.erase(std::unique(prim.begin(), prim.end()), prim.end());

    Cone c;
    c.ambient = ambient;
    c.span = subspace_span_int(ambient, prim);
    c.dim = c.span.dim();
    if (prim.empty()) return c;  // the zero cone

    DoubleDescription dual = double_description(ambient, prim, {});
    // pointedness: the dual cone must be full-dimensional
    {
        QMatrix stacked;
        for (const auto& v : dual.lineality) stacked.push_back(to_qvec(v));
        for (const auto& v : dual.rays) stacked.push_back(to_qvec(v));
        if (rank_q(stacked, ambient) != ambient) {
            std::string w = "generators span a line direction:";
            for (const auto& g : prim) {
                w += " (";
                for (std::size_t i = 0; i < g.size(); ++i) w += (i ? "," : "") + g[i].str();
                w += ")";
            }
            throw NotStronglyConvex(w);
        }
    }

    // canonicalize each dual extreme ray modulo span(cone)^⊥ by solving the
    // Gram system: u = Σ c_i g_i with <u, g_j> = <r, g_j>
    std::set<IntVec> normal_set;
    int k = static_cast<int>(prim.size());
    QMatrix gram(k, QVec(k, Rational(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram[i][j] = Rational(dot(prim[i], prim[j]));
    for (const auto& r : dual.rays) {
        QVec rhs(k);
        for (int i = 0; i < k; ++i) rhs[i] = Rational(dot(prim[i], r));
        auto coeff = solve_linear(gram, rhs, k);
        if (!coeff) throw std::logic_error("cone_from_generators: Gram system inconsistent");
        QVec u(ambient, Rational(0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < ambient; ++j) u[j] += (*coeff)[i] * Rational(prim[i][j]);
        IntVec nu = integral_direction(u);
        if (is_zero(nu)) throw std::logic_error("cone_from_generators: dual ray inside span-perp");
        normal_set.insert(std::move(nu));
    }
    c.normals.assign(normal_set.begin(), normal_set.end());

    // extreme rays: generators whose active facet normals cut down to a line
    for (const auto& g : prim) {
        QMatrix active;
        for (const auto& u : c.normals)
            if (dot(u, g) == 0) active.push_back(to_qvec(u));
        if (rank_q(active, ambient) == c.dim - 1) c.rays.push_back(g);
    }
    std::sort(c.rays.begin(), c.rays.end());
    return c;
}

inline Cone zero_cone(int ambient) { return cone_from_generators(ambient, {}); }

// t is a face of c iff t's rays are extreme rays of c and the normals of c
// active on t cut out exactly t's rays.
inline bool is_face(const Cone& t, const Cone& c) {
    if (t.ambient != c.ambient) throw DimensionMismatch("is_face: ambient mismatch");
    for (const auto& r : t.rays)
        if (!std::binary_search(c.rays.begin(), c.rays.end(), r)) return false;
    std::vector<const IntVec*> active;
    for (const auto& u : c.normals) {
        bool vanishes = true;
        for (const auto& r : t.rays)
            if (dot(u, r) != 0) { vanishes = false; break; }
        if (vanishes) active.push_back(&u);
    }
    std::vector<IntVec> cut;
    for (const auto& r : c.rays) {
        bool on_face = true;
        for (const IntVec* u : active)
            if (dot(*u, r) != 0) { on_face = false; break; }
        if (on_face) cut.push_back(r);
    }
    return cut == t.rays;
}

// All faces, including the zero cone and c itself, sorted by (dim, rays).
inline std::vector<Cone> faces(const Cone& c) {
    std::set<std::vector<IntVec>> ray_sets;
    std::size_t m = c.normals.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<IntVec> sub;
        for (const auto& r : c.rays) {
            bool keep = true;
            for (std::size_t i = 0; i < m && keep; ++i)
                if ((mask >> i) & 1)
                    if (dot(c.normals[i], r) != 0) keep = false;
            if (keep) sub.push_back(r);
        }
        ray_sets.insert(std::move(sub));
    }
    std::vector<Cone> out;
    out.reserve(ray_sets.size());
    for (const auto& rs : ray_sets) out.push_back(cone_from_generators(c.ambient, rs));
    std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rays < b.rays;
    });
    return out;
}

inline bool contains_point(const Cone& c, const QVec& x) {
    if (static_cast<int>(x.size()) != c.ambient) throw DimensionMismatch("contains_point: length mismatch");
    if (!contains_vector(c.span, x)) return false;
    for (const auto& u : c.normals)
        if (dot(u, x) < 0) return false;
    return true;
}

inline bool relint_contains(const Cone& c, const QVec& x) {
    if (static_cast<int>(x.size()) != c.ambient) throw DimensionMismatch("relint_contains: length mismatch");
    if (!contains_vector(c.span, x)) return false;
    for (const auto& u : c.normals)
        if (dot(u, x) <= 0) return false;
    return true;
}

// Simplicial with primitive generators extendable to a lattice basis.
inline bool is_smooth(const Cone& c) {
    if (static_cast<int>(c.rays.size()) != c.dim) return false;
    if (c.dim == 0) return true;
    for (const auto& d : smith_invariants(c.rays))
        if (d != 1) return false;
    return true;
}

// m <= m' in the cone preorder: m' - m pairs nonnegatively with every ray.
inline bool leq_sigma(const IntVec& m, const IntVec& m2, const Cone& c) {
    if (static_cast<int>(m.size()) != c.ambient || static_cast<int>(m2.size()) != c.ambient)
        throw DimensionMismatch("leq_sigma: length mismatch");
    IntVec diff = vec_sub(m2, m);
    for (const auto& v : c.rays)
        if (dot(diff, v) < 0) return false;
    return true;
}

// Geometric intersection, always a cone again when both arguments are.
inline Cone intersect_cones(const Cone& a, const Cone& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("intersect_cones: ambient mismatch");
    int n = a.ambient;
    std::vector<IntVec> ineqs;
    ineqs.insert(ineqs.end(), a.normals.begin(), a.normals.end());
    ineqs.insert(ineqs.end(), b.normals.begin(), b.normals.end());
    std::vector<IntVec> eqs;
    auto span_perp = [&](const Cone& c) {
        QMatrix rows;
        for (const auto& r : c.rays) rows.push_back(to_qvec(r));
        for (const auto& v : kernel(rows, n)) eqs.push_back(integral_direction(v));
    };
    span_perp(a);
    span_perp(b);
    DoubleDescription dd = double_description(n, ineqs, eqs);
    if (!dd.lineality.empty())
        throw std::logic_error("intersect_cones: intersection of pointed cones has lineality");
    return cone_from_generators(n, dd.rays);
}

inline std::string cone_key(const Cone& c) {
    std::string out;
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
        if (i) out += "|";
        for (std::size_t j = 0; j < c.rays[i].size(); ++j) {
            if (j) out += ",";
            out += c.rays[i][j].str();
        }
    }
    return out;
}

}  // namespace prevar
