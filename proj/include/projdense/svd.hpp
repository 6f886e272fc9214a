#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "projdense/projlin.hpp"

namespace projdense {

template <class S>
struct SvdResult {
    MatrixX<S> u;           // norm-preserving
    Eigen::VectorXd sigma;  // sorted non-increasing, positive
    MatrixX<S> v;           // A = u * diag(sigma) * v^H
};

/// One-sided Jacobi SVD: orthogonalizes column pairs until the columns of
/// A*V are mutually orthogonal, then reads off U and the singular values.
/// Accurate at small n, which is all we need.
template <class S>
SvdResult<S> jacobi_svd(const MatrixX<S>& a_in) {
    const Eigen::Index n = a_in.rows();
    if (n != a_in.cols() || n < 1) throw std::invalid_argument("square matrix required");
    MatrixX<S> a = a_in;
    MatrixX<S> v = MatrixX<S>::Identity(n, n);

    constexpr int kMaxSweeps = 60;
    const double tol = 1e-15;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                double aa = a.col(i).squaredNorm();
                double bb = a.col(j).squaredNorm();
                S c = a.col(i).dot(a.col(j));  // conjugated in the complex case
                double ac = abs_value(c);
                if (aa == 0.0 || bb == 0.0) continue;
                off = std::max(off, ac / std::sqrt(aa * bb));
                if (ac <= tol * std::sqrt(aa * bb)) continue;
                // Rotate the phase of column j so the pair inner product is
                // real, then apply the classic two-sided Jacobi angle.
                S phase;
                if constexpr (std::is_same_v<S, std::complex<double>>)
                    phase = std::conj(c) / ac;
                else
                    phase = c < 0 ? S(-1) : S(1);
                double theta = 0.5 * std::atan2(-2.0 * ac, aa - bb);
                double cs = std::cos(theta), sn = std::sin(theta);
                VectorX<S> ai = a.col(i), aj = phase * a.col(j);
                a.col(i) = cs * ai - sn * aj;
                a.col(j) = sn * ai + cs * aj;
                VectorX<S> vi = v.col(i), vj = phase * v.col(j);
                v.col(i) = cs * vi - sn * vj;
                v.col(j) = sn * vi + cs * vj;
            }
        }
        if (off < tol) break;
    }

    SvdResult<S> r;
    r.sigma.resize(n);
    r.u = MatrixX<S>(n, n);
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Eigen::VectorXd norms(n);
    for (Eigen::Index i = 0; i < n; ++i) norms[i] = a.col(i).norm();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return norms[x] > norms[y]; });
    MatrixX<S> vs(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index src = order[static_cast<size_t>(k)];
        double s = norms[src];
        r.sigma[k] = s;
        if (s > 0.0)
            r.u.col(k) = a.col(src) / S(s);
        else
            r.u.col(k).setZero();  // caller decides whether singular is an error
        vs.col(k) = v.col(src);
    }
    r.v = vs;
    return r;
}

}  // namespace projdense
