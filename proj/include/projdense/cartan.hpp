#pragma once

#include <stdexcept>
#include <vector>

#include "projdense/svd.hpp"

namespace projdense {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// g = k * diag(a) * kp with k, kp norm-preserving and |a_1| >= ... >= |a_n|.
/// profile holds the absolute values; valuations is the exact p-adic profile.
template <class S>
struct CartanDecomposition {
    MatrixX<S> k;
    VectorX<S> a;  // diagonal entries
    MatrixX<S> kp;
    Eigen::VectorXd profile;
    std::vector<std::int64_t> valuations;  // p-adic only, non-decreasing

    MatrixX<S> reconstruct() const {
        MatrixX<S> ka = k;
        for (Eigen::Index j = 0; j < ka.cols(); ++j)
            for (Eigen::Index i = 0; i < ka.rows(); ++i) ka(i, j) = ka(i, j) * a[j];
        return mat_mat(ka, kp);
    }
};

template <class S>
CartanDecomposition<S> decompose_archimedean(const MatrixX<S>& g) {
    static_assert(!is_padic_v<S>);
    SvdResult<S> s = jacobi_svd(g);
    const Eigen::Index n = g.rows();
    if (s.sigma[n - 1] <= 1e-13 * s.sigma[0] || s.sigma[0] == 0.0)
        throw SingularMatrixError("matrix is not invertible");
    CartanDecomposition<S> d;
    d.k = s.u;
    d.kp = s.v.adjoint();
    d.a = VectorX<S>(n);
    for (Eigen::Index i = 0; i < n; ++i) d.a[i] = S(s.sigma[i]);
    d.profile = s.sigma;
    return d;
}

/// Smith-style reduction over Z_p: pivot on a minimal-valuation entry,
/// clear its row and column with integral multipliers, recurse on the
/// trailing block. k and kp stay in GL_n(Z_p); a = diag(p^{v_i}).
inline CartanDecomposition<Padic> decompose_padic(const MatrixXp& g) {
    const Eigen::Index n = g.rows();
    if (n != g.cols()) throw std::invalid_argument("square matrix required");
    long p = 0;
    for (Eigen::Index i = 0; i < n && p == 0; ++i)
        for (Eigen::Index j = 0; j < n && p == 0; ++j) p = g(i, j).prime();
    if (p == 0) throw SingularMatrixError("zero matrix");
    int prec = Padic::kDefaultPrecision;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (g(i, j).prime() != 0) prec = g(i, j).precision();

    auto zero = Padic::zero(p, prec);
    auto one = Padic::from_integer(p, 1, prec);
    MatrixXp w = g;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (w(i, j).prime() == 0) w(i, j) = zero;
    MatrixXp k = MatrixXp::Constant(n, n, zero);
    MatrixXp kp = MatrixXp::Constant(n, n, zero);
    for (Eigen::Index i = 0; i < n; ++i) k(i, i) = kp(i, i) = one;

    for (Eigen::Index t = 0; t < n; ++t) {
        // minimal valuation pivot, lowest row then column index as tie-break
        Eigen::Index pi = -1, pj = -1;
        std::int64_t best = Padic::kInfValuation;
        for (Eigen::Index i = t; i < n; ++i)
            for (Eigen::Index j = t; j < n; ++j)
                if (w(i, j).valuation() < best) {
                    best = w(i, j).valuation();
                    pi = i;
                    pj = j;
                }
        if (pi < 0) throw SingularMatrixError("matrix is not invertible over Q_p");
        if (pi != t) {
            w.row(t).swap(w.row(pi));
            k.col(t).swap(k.col(pi));
        }
        if (pj != t) {
            w.col(t).swap(w.col(pj));
            kp.row(t).swap(kp.row(pj));
        }
        // Fraction-free clearing: row_i := u_b * row_i - (u_a p^{va-vb}) * row_t
        // keeps every unit an exact integer, so cancellations are exact.
        const Padic pivot = w(t, t);
        const Padic ub = Padic(p, prec, 0, pivot.unit());
        const Padic ubinv = ub.inverse();
        for (Eigen::Index i = t + 1; i < n; ++i) {
            if (w(i, t).is_zero()) continue;
            const Padic a = w(i, t);
            const Padic c = Padic(p, prec, a.valuation() - pivot.valuation(), a.unit());
            const Padic q = c * ubinv;  // multiplier a/b, valuation >= 0 by pivot choice
            for (Eigen::Index j = t; j < n; ++j) w(i, j) = ub * w(i, j) - c * w(t, j);
            for (Eigen::Index r = 0; r < n; ++r) {
                k(r, t) = k(r, t) + q * k(r, i);
                k(r, i) = ubinv * k(r, i);
            }
        }
        for (Eigen::Index j = t + 1; j < n; ++j) {
            if (w(t, j).is_zero()) continue;
            const Padic a = w(t, j);
            const Padic c = Padic(p, prec, a.valuation() - pivot.valuation(), a.unit());
            const Padic q = c * ubinv;
            for (Eigen::Index i = t; i < n; ++i) w(i, j) = ub * w(i, j) - c * w(i, t);
            for (Eigen::Index cc = 0; cc < n; ++cc) {
                kp(t, cc) = kp(t, cc) + q * kp(j, cc);
                kp(j, cc) = ubinv * kp(j, cc);
            }
        }
    }

    CartanDecomposition<Padic> d;
    d.a = VectorXp(n);
    d.profile.resize(n);
    d.valuations.resize(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::int64_t v = w(i, i).valuation();
        d.valuations[static_cast<size_t>(i)] = v;
        d.a[i] = Padic(p, prec, v, 1);
        d.profile[i] = std::pow(static_cast<double>(p), -static_cast<double>(v));
        // fold the pivot unit into kp so a is an exact power of p
        Padic u = Padic(p, prec, 0, w(i, i).unit());
        for (Eigen::Index c = 0; c < n; ++c) kp(i, c) = u * kp(i, c);
    }
    d.k = k;
    d.kp = kp;
    return d;
}

template <class S>
CartanDecomposition<S> decompose(const MatrixX<S>& g) {
    if constexpr (is_padic_v<S>)
        return decompose_padic(g);
    else
        return decompose_archimedean(g);
}

/// r = |a_2 / a_1| in [0, 1].
template <class S>
double singular_ratio(const MatrixX<S>& g) {
    auto d = decompose(g);
    return d.profile[1] / d.profile[0];
}

/// v_g = [k e_1].
template <class S>
ProjPoint<S> attracting_point(const CartanDecomposition<S>& d) {
    return ProjPoint<S>(d.k.col(0));
}

/// H_g = span{kp^{-1} e_i}_{i>=2}; its unit normal under the standard
/// pairing is the (conjugated) first row of kp.
template <class S>
ProjHyperplane<S> repelling_hyperplane(const CartanDecomposition<S>& d) {
    if constexpr (std::is_same_v<S, std::complex<double>>)
        return ProjHyperplane<S>(d.kp.row(0).conjugate().transpose());
    else
        return ProjHyperplane<S>(d.kp.row(0).transpose());
}

}  // namespace projdense
