#pragma once

// Exact rational linear algebra on small dense matrices: reduced row echelon
// forms, kernels, linear solves, and subspaces with canonical representation.
// A Subspace always stores its RREF basis, so equality of subspaces is
// equality of representations.

#include "prevar/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace prevar {

using QMatrix = std::vector<QVec>;

// Maintains a reduced row echelon basis under row insertion. Rows are kept
// sorted by pivot column with pivot entries 1 and pivot columns cleared
// elsewhere, i.e. the stored matrix is always the canonical RREF of its span.
class RowBasis {
public:
    explicit RowBasis(int width) : width_(width) {}

    int width() const { return width_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const QMatrix& rows() const { return rows_; }

    // Reduces v against the basis; returns the remainder.
    QVec reduce(QVec v) const {
        for (const auto& row : rows_) {
            int p = pivot_of(row);
            if (v[p] != 0) {
                Rational c = v[p];
                for (int j = p; j < width_; ++j) v[j] -= c * row[j];
            }
        }
        return v;
    }

    bool contains(const QVec& v) const {
        if (static_cast<int>(v.size()) != width_) throw std::invalid_argument("RowBasis: length mismatch");
        return is_zero(reduce(v));
    }

    // Inserts v if independent; returns true when the dimension grew.
    bool add(const QVec& v) {
        if (static_cast<int>(v.size()) != width_) throw std::invalid_argument("RowBasis: length mismatch");
        QVec r = reduce(v);
        int p = -1;
        for (int j = 0; j < width_; ++j)
            if (r[j] != 0) { p = j; break; }
        if (p < 0) return false;
        Rational lead = r[p];
        for (int j = p; j < width_; ++j) r[j] /= lead;
        for (auto& row : rows_) {
            if (row[p] != 0) {
                Rational c = row[p];
                for (int j = p; j < width_; ++j) row[j] -= c * r[j];
            }
        }
        auto pos = std::find_if(rows_.begin(), rows_.end(),
                                [&](const QVec& row) { return pivot_of(row) > p; });
        rows_.insert(pos, std::move(r));
        return true;
    }

private:
    static int pivot_of(const QVec& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return static_cast<int>(j);
        throw std::logic_error("RowBasis: zero row stored");
    }

    int width_;
    QMatrix rows_;
};

// Canonical reduced row echelon form of the span of the given rows; zero rows
// are dropped.
inline QMatrix rref(const QMatrix& rows, int width) {
    RowBasis basis(width);
    for (const auto& r : rows) basis.add(r);
    return basis.rows();
}

inline int rank_q(const QMatrix& rows, int width) {
    RowBasis basis(width);
    for (const auto& r : rows) basis.add(r);
    return basis.dim();
}

struct Subspace {
    int ambient = 0;
    QMatrix rows;  // canonical RREF basis

    int dim() const { return static_cast<int>(rows.size()); }
    bool operator==(const Subspace&) const = default;
};

inline Subspace subspace_zero(int ambient) { return Subspace{ambient, {}}; }

inline Subspace subspace_full(int ambient) {
    QMatrix rows;
    for (int i = 0; i < ambient; ++i) {
        QVec e(ambient, Rational(0));
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return Subspace{ambient, std::move(rows)};
}

inline Subspace subspace_span(int ambient, const QMatrix& generators) {
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != ambient)
            throw std::invalid_argument("subspace_span: generator length mismatch");
    return Subspace{ambient, rref(generators, ambient)};
}

inline Subspace subspace_span_int(int ambient, const std::vector<IntVec>& generators) {
    QMatrix rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) rows.push_back(to_qvec(g));
    return subspace_span(ambient, rows);
}

inline bool contains_vector(const Subspace& s, const QVec& v) {
    RowBasis basis(s.ambient);
    for (const auto& r : s.rows) basis.add(r);
    return basis.contains(v);
}

inline bool subspace_leq(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_leq: ambient mismatch");
    RowBasis basis(b.ambient);
    for (const auto& r : b.rows) basis.add(r);
    for (const auto& r : a.rows)
        if (!basis.contains(r)) return false;
    return true;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_sum: ambient mismatch");
    RowBasis basis(a.ambient);
    for (const auto& r : a.rows) basis.add(r);
    for (const auto& r : b.rows) basis.add(r);
    return Subspace{a.ambient, basis.rows()};
}

// Basis of {x : A x = 0}, canonicalized.
inline QMatrix kernel(const QMatrix& a, int width) {
    QMatrix r = rref(a, width);
    std::vector<int> pivots;
    std::vector<bool> is_pivot(width, false);
    for (const auto& row : r) {
        for (int j = 0; j < width; ++j)
            if (row[j] != 0) {
                pivots.push_back(j);
                is_pivot[j] = true;
                break;
            }
    }
    QMatrix out;
    for (int j = 0; j < width; ++j) {
        if (is_pivot[j]) continue;
        QVec v(width, Rational(0));
        v[j] = 1;
        for (std::size_t i = 0; i < r.size(); ++i) v[pivots[i]] = -r[i][j];
        out.push_back(std::move(v));
    }
    return rref(out, width);
}

// Intersection via the kernel of stacked coordinates: x in a∩b is written as
// a combination of a's basis whose coefficient vector, paired with b's, lies
// in the kernel of [Aᵀ | -Bᵀ].
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace_intersect: ambient mismatch");
    int n = a.ambient;
    int ka = a.dim(), kb = b.dim();
    if (ka == 0 || kb == 0) return subspace_zero(n);
    QMatrix stacked(n, QVec(ka + kb, Rational(0)));
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < n; ++j) stacked[j][i] = a.rows[i][j];
    for (int i = 0; i < kb; ++i)
        for (int j = 0; j < n; ++j) stacked[j][ka + i] = -b.rows[i][j];
    QMatrix ker = kernel(stacked, ka + kb);
    QMatrix gens;
    for (const auto& coeff : ker) {
        QVec v(n, Rational(0));
        for (int i = 0; i < ka; ++i)
            for (int j = 0; j < n; ++j) v[j] += coeff[i] * a.rows[i][j];
        gens.push_back(std::move(v));
    }
    return subspace_span(n, gens);
}

// One solution of A x = b with free coordinates zero, if consistent.
inline std::optional<QVec> solve_linear(const QMatrix& a, const QVec& b, int width) {
    QMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        QVec row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    QMatrix r = rref(aug, width + 1);
    QVec x(width, Rational(0));
    for (const auto& row : r) {
        int p = -1;
        for (int j = 0; j <= width; ++j)
            if (row[j] != 0) { p = j; break; }
        if (p == width) return std::nullopt;  // 0 = 1 row
        x[p] = row[width];
    }
    // pivots hold the rhs only when free coordinates are zero and the pivot
    // columns are cleared, which rref guarantees
    return x;
}

inline QVec apply_matrix(const QMatrix& m, const QVec& v) {
    QVec out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(dot(row, v));
    return out;
}

}  // namespace prevar
