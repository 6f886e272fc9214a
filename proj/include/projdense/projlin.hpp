#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "projdense/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<projdense::Padic> {
    typedef projdense::Padic Real;
    typedef projdense::Padic NonInteger;
    typedef projdense::Padic Nested;
    typedef projdense::Padic Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 20,
        MulCost = 20
    };
    static inline Real epsilon() { return projdense::Padic(); }
    static inline Real dummy_precision() { return projdense::Padic(); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace projdense {

template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = VectorX<double>;
using MatrixXd = MatrixX<double>;
using VectorXcd = VectorX<std::complex<double>>;
using MatrixXcd = MatrixX<std::complex<double>>;
using VectorXp = VectorX<Padic>;
using MatrixXp = MatrixX<Padic>;

template <class S>
constexpr bool is_padic_v = std::is_same_v<S, Padic>;

/// min valuation over the entries; kInfValuation for the zero vector.
/// Inexact zeros O(p^A) contribute their precision bound A, so the result is
/// a valid lower bound for the true valuation in every case.
inline std::int64_t sup_valuation(const VectorXp& v) {
    std::int64_t m = Padic::kInfValuation;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        m = std::min(m, v[i].valuation_bound());
    return m;
}

/// Field norm: Euclidean/Hermitian 2-norm archimedean, sup norm over Q_p.
template <class S>
double norm(const VectorX<S>& v) {
    if (v.size() == 0) throw std::invalid_argument("empty vector");
    if constexpr (is_padic_v<S>) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, v[i].abs_bound());
        return m;
    } else {
        return v.norm();
    }
}

namespace detail {
template <class S, class Fn>
void for_each_minor(const VectorX<S>& u, const VectorX<S>& v, Fn&& fn) {
    if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch");
    for (Eigen::Index i = 0; i < u.size(); ++i)
        for (Eigen::Index j = i + 1; j < u.size(); ++j)
            fn(u[i] * v[j] - u[j] * v[i]);
}
}  // namespace detail

/// ||u ^ v||: 2-norm of the 2x2 minors archimedean, their sup over Q_p.
template <class S>
double wedge_norm(const VectorX<S>& u, const VectorX<S>& v) {
    if constexpr (is_padic_v<S>) {
        double m = 0.0;
        detail::for_each_minor(u, v, [&](const Padic& x) { m = std::max(m, x.abs_bound()); });
        return m;
    } else {
        double s = 0.0;
        detail::for_each_minor(u, v, [&](const S& x) {
            double a = abs_value(x);
            s += a * a;
        });
        return std::sqrt(s);
    }
}

/// Exact p-adic analogue: min valuation over the 2x2 minors. A minor that
/// cancels below working precision contributes its bound, so the result
/// underestimates the true valuation at worst (distances come out larger,
/// never smaller, keeping contraction thresholds conservative).
inline std::int64_t wedge_valuation(const VectorXp& u, const VectorXp& v) {
    std::int64_t m = Padic::kInfValuation;
    detail::for_each_minor(u, v, [&](const Padic& x) { m = std::min(m, x.valuation_bound()); });
    return m;
}

// Plain-loop products, valid for every supported scalar (Eigen's product
// kernels want literal conversions the p-adic type does not have).
template <class S>
VectorX<S> mat_vec(const MatrixX<S>& m, const VectorX<S>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("dimension mismatch");
    VectorX<S> r(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        S acc{};
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc = acc + m(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

template <class S>
MatrixX<S> mat_mat(const MatrixX<S>& a, const MatrixX<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
    MatrixX<S> r(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            S acc{};
            for (Eigen::Index t = 0; t < a.cols(); ++t) acc = acc + a(i, t) * b(t, j);
            r(i, j) = acc;
        }
    return r;
}

template <class S>
struct ProjPoint {
    VectorX<S> rep;  // nonzero representative
    explicit ProjPoint(VectorX<S> r) : rep(std::move(r)) {
        if (norm(rep) == 0.0) throw std::invalid_argument("zero representative");
    }
};

template <class S>
struct ProjHyperplane {
    VectorX<S> normal;  // nonzero; distances normalize by its norm
    explicit ProjHyperplane(VectorX<S> n) : normal(std::move(n)) {
        if (norm(normal) == 0.0) throw std::invalid_argument("zero normal");
    }
};

/// d([u],[v]) = ||u ^ v|| / (||u|| ||v||), in [0,1], scale invariant.
template <class S>
double proj_distance(const ProjPoint<S>& a, const ProjPoint<S>& b) {
    if constexpr (is_padic_v<S>) {
        std::int64_t wv = wedge_valuation(a.rep, b.rep);
        if (wv == Padic::kInfValuation) return 0.0;
        std::int64_t d = wv - sup_valuation(a.rep) - sup_valuation(b.rep);
        return std::pow(static_cast<double>(a.rep[0].prime()), -static_cast<double>(d));
    } else {
        return wedge_norm(a.rep, b.rep) / (norm(a.rep) * norm(b.rep));
    }
}

/// Exact p-adic projective distance as a valuation: d = p^{-result}.
inline std::int64_t proj_distance_valuation(const VectorXp& a, const VectorXp& b) {
    std::int64_t wv = wedge_valuation(a, b);
    if (wv == Padic::kInfValuation) return Padic::kInfValuation;
    return wv - sup_valuation(a) - sup_valuation(b);
}

inline Padic conj_mult_real(const Padic& a, const Padic& b) { return a * b; }

/// <u, x> with the field's standard pairing (Hermitian over C, bilinear else).
template <class S>
S pairing(const VectorX<S>& u, const VectorX<S>& x) {
    if (u.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    S s{};
    for (Eigen::Index i = 0; i < u.size(); ++i) s = s + conj_mult_real(u[i], x[i]);
    return s;
}

/// |<u_H, x>| / (||u_H|| ||x||); equals the min projective distance to H.
template <class S>
double distance_to_hyperplane(const ProjPoint<S>& a, const ProjHyperplane<S>& H) {
    if constexpr (is_padic_v<S>) {
        S s = pairing(H.normal, a.rep);
        if (s.is_zero()) return 0.0;
        std::int64_t d = s.valuation_bound() - sup_valuation(H.normal) - sup_valuation(a.rep);
        return std::pow(static_cast<double>(s.prime()), -static_cast<double>(d));
    } else {
        S s = pairing(H.normal, a.rep);
        return abs_value(s) / (norm(H.normal) * norm(a.rep));
    }
}

/// Exact p-adic version: distance = p^{-result}, kInfValuation when on H.
inline std::int64_t hyperplane_distance_valuation(const VectorXp& x, const VectorXp& normal) {
    Padic s = pairing(normal, x);
    if (s.is_zero()) return Padic::kInfValuation;
    return s.valuation_bound() - sup_valuation(normal) - sup_valuation(x);
}

}  // namespace projdense
