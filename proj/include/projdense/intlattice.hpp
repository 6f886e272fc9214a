#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <stdexcept>
#include <vector>

#include "projdense/padic.hpp"  // BigInt

namespace Eigen {
template <>
struct NumTraits<boost::multiprecision::cpp_int> {
    typedef boost::multiprecision::cpp_int Real;
    typedef boost::multiprecision::cpp_int NonInteger;
    typedef boost::multiprecision::cpp_int Nested;
    typedef boost::multiprecision::cpp_int Literal;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 30,
        MulCost = 30
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace projdense {

using IMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;
using IVector = Eigen::Matrix<BigInt, Eigen::Dynamic, 1>;

inline BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = big_gcd(a, b);
    BigInt r = (a / g) * b;
    return r < 0 ? -r : r;
}

struct HnfResult {
    IMatrix h;  // row Hermite normal form
    IMatrix u;  // unimodular, u * a = h
    int rank = 0;
};

/// Row-style HNF via integer row operations: pivots positive, zeros below,
/// entries above reduced mod the pivot. Matrices here are tiny (d <= ~6).
inline HnfResult hermite_normal_form(const IMatrix& a_in) {
    HnfResult r;
    const Eigen::Index m = a_in.rows(), n = a_in.cols();
    r.h = a_in;
    r.u = IMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) r.u(i, i) = 1;

    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < n && row < m; ++col) {
        // gcd-out the column below `row` with euclidean row steps
        while (true) {
            Eigen::Index piv = -1;
            for (Eigen::Index i = row; i < m; ++i)
                if (r.h(i, col) != 0 &&
                    (piv < 0 || (r.h(i, col) < 0 ? -r.h(i, col) : r.h(i, col)) <
                                    (r.h(piv, col) < 0 ? -r.h(piv, col) : r.h(piv, col))))
                    piv = i;
            if (piv < 0) break;
            if (piv != row) {
                r.h.row(row).swap(r.h.row(piv));
                r.u.row(row).swap(r.u.row(piv));
            }
            bool clean = true;
            for (Eigen::Index i = row + 1; i < m; ++i) {
                if (r.h(i, col) == 0) continue;
                BigInt q = r.h(i, col) / r.h(row, col);
                r.h.row(i) -= q * r.h.row(row);
                r.u.row(i) -= q * r.u.row(row);
                if (r.h(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r.h(row, col) == 0) continue;
        if (r.h(row, col) < 0) {
            r.h.row(row) *= BigInt(-1);
            r.u.row(row) *= BigInt(-1);
        }
        for (Eigen::Index i = 0; i < row; ++i) {
            // floor division so residues land in [0, pivot)
            BigInt q = r.h(i, col) / r.h(row, col);
            if (r.h(i, col) - q * r.h(row, col) < 0) q -= 1;
            r.h.row(i) -= q * r.h.row(row);
            r.u.row(i) -= q * r.u.row(row);
        }
        ++row;
    }
    r.rank = static_cast<int>(row);
    return r;
}

/// Basis (as rows) of {x in Z^m : x * a = 0}. The result is saturated.
inline IMatrix integer_left_kernel(const IMatrix& a) {
    HnfResult h = hermite_normal_form(a);
    const Eigen::Index m = a.rows();
    IMatrix k(m - h.rank, a.rows());
    for (Eigen::Index i = h.rank; i < m; ++i) k.row(i - h.rank) = h.u.row(i);
    return k;
}

struct SnfResult {
    IMatrix d;        // u * a * v = d, diagonal
    IMatrix u, v;     // unimodular
    IMatrix v_inv;    // v^{-1}, tracked alongside
    std::vector<BigInt> divisors;  // nonzero diagonal entries d1 | d2 | ...
};

/// Smith normal form with both transforms tracked.
inline SnfResult smith_normal_form(const IMatrix& a_in) {
    SnfResult r;
    const Eigen::Index m = a_in.rows(), n = a_in.cols();
    r.d = a_in;
    r.u = IMatrix::Zero(m, m);
    r.v = IMatrix::Zero(n, n);
    r.v_inv = IMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) r.u(i, i) = 1;
    for (Eigen::Index i = 0; i < n; ++i) r.v(i, i) = r.v_inv(i, i) = 1;

    auto abs_big = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };

    Eigen::Index t = 0;
    while (t < m && t < n) {
        // locate the smallest nonzero entry in the trailing block
        Eigen::Index pi = -1, pj = -1;
        for (Eigen::Index i = t; i < m; ++i)
            for (Eigen::Index j = t; j < n; ++j)
                if (r.d(i, j) != 0 &&
                    (pi < 0 || abs_big(r.d(i, j)) < abs_big(r.d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) {
            r.d.row(t).swap(r.d.row(pi));
            r.u.row(t).swap(r.u.row(pi));
        }
        if (pj != t) {
            r.d.col(t).swap(r.d.col(pj));
            r.v.col(t).swap(r.v.col(pj));
            r.v_inv.row(t).swap(r.v_inv.row(pj));
        }
        bool dirty = false;
        for (Eigen::Index i = t + 1; i < m; ++i) {
            if (r.d(i, t) == 0) continue;
            BigInt q = r.d(i, t) / r.d(t, t);
            r.d.row(i) -= q * r.d.row(t);
            r.u.row(i) -= q * r.u.row(t);
            if (r.d(i, t) != 0) dirty = true;
        }
        for (Eigen::Index j = t + 1; j < n; ++j) {
            if (r.d(t, j) == 0) continue;
            BigInt q = r.d(t, j) / r.d(t, t);
            r.d.col(j) -= q * r.d.col(t);
            r.v.col(j) -= q * r.v.col(t);
            r.v_inv.row(t) += q * r.v_inv.row(j);
            if (r.d(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // re-pivot on the reduced block
        // divisibility fix-up: fold any non-multiple into column t
        bool fixed = true;
        for (Eigen::Index i = t + 1; i < m && fixed; ++i)
            for (Eigen::Index j = t + 1; j < n && fixed; ++j)
                if (r.d(i, j) % r.d(t, t) != 0) {
                    r.d.col(t) += r.d.col(j);
                    r.v.col(t) += r.v.col(j);
                    r.v_inv.row(j) -= r.v_inv.row(t);
                    fixed = false;
                }
        if (!fixed) continue;
        if (r.d(t, t) < 0) {
            r.d.row(t) *= BigInt(-1);
            r.u.row(t) *= BigInt(-1);
        }
        ++t;
    }
    for (Eigen::Index i = 0; i < std::min(m, n); ++i)
        if (r.d(i, i) != 0) r.divisors.push_back(r.d(i, i));
    return r;
}

}  // namespace projdense
