#pragma once

// Smith normal form over the integers with unimodular transforms, plus the
// integral linear solver built on it. All arithmetic is arbitrary precision;
// intermediate coefficient growth cannot overflow.

#include "prevar/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace prevar {

struct SmithForm {
    std::vector<IntVec> u;  // rows x rows, unimodular
    std::vector<IntVec> w;  // cols x cols, unimodular
    IntVec diag;            // min(rows, cols) entries, nonnegative, d1 | d2 | ...
};

// U A W = diag(d1..dk). Classic elimination: pick the smallest nonzero pivot,
// clear its row and column by euclidean steps, then repair divisibility.
inline SmithForm smith_form(std::vector<IntVec> b, int rows, int cols) {
    auto ident = [](int n) {
        std::vector<IntVec> m(n, IntVec(n, Int(0)));
        for (int i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    };
    std::vector<IntVec> u = ident(rows), w = ident(cols);

    auto swap_rows = [&](int a, int c) { std::swap(b[a], b[c]); std::swap(u[a], u[c]); };
    auto swap_cols = [&](int a, int c) {
        for (int i = 0; i < rows; ++i) std::swap(b[i][a], b[i][c]);
        for (int i = 0; i < cols; ++i) std::swap(w[i][a], w[i][c]);
    };
    auto add_row = [&](int dst, int src, const Int& q) {  // row dst += q * row src
        for (int j = 0; j < cols; ++j) b[dst][j] += q * b[src][j];
        for (int j = 0; j < rows; ++j) u[dst][j] += q * u[src][j];
    };
    auto add_col = [&](int dst, int src, const Int& q) {  // col dst += q * col src
        for (int i = 0; i < rows; ++i) b[i][dst] += q * b[i][src];
        for (int i = 0; i < cols; ++i) w[i][dst] += q * w[i][src];
    };
    auto negate_row = [&](int r) {
        for (int j = 0; j < cols; ++j) b[r][j] = -b[r][j];
        for (int j = 0; j < rows; ++j) u[r][j] = -u[r][j];
    };

    int k = 0;
    int limit = std::min(rows, cols);
    while (k < limit) {
        int pi = -1, pj = -1;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j)
                if (b[i][j] != 0 &&
                    (pi < 0 || int_abs(b[i][j]) < int_abs(b[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // rest is zero
        if (pi != k) swap_rows(k, pi);
        if (pj != k) swap_cols(k, pj);

        bool dirty = false;
        for (int i = k + 1; i < rows; ++i)
            if (b[i][k] != 0) {
                add_row(i, k, -(b[i][k] / b[k][k]));
                if (b[i][k] != 0) dirty = true;  // euclidean remainder left
            }
        for (int j = k + 1; j < cols; ++j)
            if (b[k][j] != 0) {
                add_col(j, k, -(b[k][j] / b[k][k]));
                if (b[k][j] != 0) dirty = true;
            }
        if (dirty) continue;  // smaller pivot now exists; redo this k

        bool fixed = true;
        for (int i = k + 1; i < rows && fixed; ++i)
            for (int j = k + 1; j < cols && fixed; ++j)
                if (b[i][j] % b[k][k] != 0) {
                    add_row(k, i, Int(1));  // pulls the bad entry into row k
                    fixed = false;
                }
        if (!fixed) continue;

        if (b[k][k] < 0) negate_row(k);
        ++k;
    }

    IntVec diag(limit, Int(0));
    for (int i = 0; i < limit; ++i) diag[i] = b[i][i];
    return SmithForm{std::move(u), std::move(w), std::move(diag)};
}

// Invariant factors d1 | d2 | ... (zeros trailing), min(rows, cols) of them.
inline IntVec smith_invariants(const std::vector<IntVec>& a) {
    if (a.empty()) return {};
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    for (const auto& r : a)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument("smith_invariants: ragged matrix");
    return smith_form(a, rows, cols).diag;
}

// One integral solution of A x = t with the free (kernel) coordinates set to
// zero, or nothing when no integral solution exists. cols must be passed so
// the zero-row case still knows the solution length.
inline std::optional<IntVec> solve_integral(const std::vector<IntVec>& a, const IntVec& t, int cols) {
    int rows = static_cast<int>(a.size());
    if (rows == 0) return IntVec(cols, Int(0));  // no constraints, canonical solution 0
    if (static_cast<int>(a[0].size()) != cols)
        throw std::invalid_argument("solve_integral: cols mismatch");
    if (static_cast<int>(t.size()) != rows)
        throw std::invalid_argument("solve_integral: rhs length mismatch");
    SmithForm s = smith_form(a, rows, cols);
    IntVec ut(rows, Int(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) ut[i] += s.u[i][j] * t[j];
    int limit = std::min(rows, cols);
    IntVec y(cols, Int(0));
    for (int i = 0; i < rows; ++i) {
        if (i < limit && s.diag[i] != 0) {
            if (ut[i] % s.diag[i] != 0) return std::nullopt;
            y[i] = ut[i] / s.diag[i];
        } else if (ut[i] != 0) {
            return std::nullopt;
        }
    }
    IntVec x(cols, Int(0));
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) x[i] += s.w[i][j] * y[j];
    return x;
}

}  // namespace prevar
