#pragma once

// Shared helpers for the test suite: seeded random generators for subspaces
// and filtrations, and terse builders for vectors and cones.

#include "prevar/cone.hpp"
#include "prevar/linalg.hpp"
#include "prevar/rational.hpp"

#include <random>
#include <vector>

namespace testsupport {

using prevar::Int;
using prevar::IntVec;
using prevar::QMatrix;
using prevar::QVec;
using prevar::Rational;
using prevar::Subspace;

using Rng = std::mt19937_64;

inline IntVec iv(std::initializer_list<long long> xs) {
    IntVec v;
    for (long long x : xs) v.emplace_back(x);
    return v;
}

inline QVec qv(std::initializer_list<long long> xs) {
    QVec v;
    for (long long x : xs) v.emplace_back(x);
    return v;
}

inline QVec random_qvec(Rng& rng, int n, int lo = -4, int hi = 4) {
    std::uniform_int_distribution<int> d(lo, hi);
    QVec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

inline Subspace random_subspace(Rng& rng, int ambient, int dim) {
    prevar::RowBasis basis(ambient);
    int guard = 0;
    while (basis.dim() < dim) {
        basis.add(random_qvec(rng, ambient));
        if (++guard > 200) throw std::logic_error("random_subspace: could not reach dimension");
    }
    return Subspace{ambient, basis.rows()};
}

inline IntVec random_intvec(Rng& rng, int n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntVec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Unimodular matrix as a product of random elementary row operations on the
// identity; rows form a lattice basis.
inline std::vector<IntVec> random_unimodular(Rng& rng, int n, int steps = 12) {
    std::vector<IntVec> m(n, IntVec(n, Int(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Int c = coef(rng);
        for (int k = 0; k < n; ++k) m[i][k] += c * m[j][k];
    }
    return m;
}

// Smooth cone of the given dimension: a subset of a random lattice basis.
inline prevar::Cone random_smooth_cone(Rng& rng, int ambient, int dim) {
    auto basis = random_unimodular(rng, ambient);
    std::vector<IntVec> gens(basis.begin(), basis.begin() + dim);
    return prevar::cone_from_generators(ambient, gens);
}

// Pointed cone from random small generators; retries until strongly convex
// and nonzero.
inline prevar::Cone random_pointed_cone(Rng& rng, int ambient, int gens) {
    for (int guard = 0; guard < 500; ++guard) {
        std::vector<IntVec> g;
        for (int i = 0; i < gens; ++i) g.push_back(random_intvec(rng, ambient));
        try {
            prevar::Cone c = prevar::cone_from_generators(ambient, g);
            if (c.dim > 0) return c;
        } catch (const prevar::NotStronglyConvex&) {
        }
    }
    throw std::logic_error("random_pointed_cone: retries exhausted");
}

}  // namespace testsupport
