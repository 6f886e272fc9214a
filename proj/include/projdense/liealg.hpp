#pragma once

#include <random>
#include <string>
#include <vector>

#include "projdense/torusgen.hpp"  // Rational

namespace projdense {

using RVector = std::vector<Rational>;

/// Finite-dimensional Lie algebra over Q given by structure constants,
/// validated for antisymmetry and the Jacobi identity at construction.
class LieAlgebra {
public:
    LieAlgebra(int n, std::vector<std::vector<RVector>> structure)
        : n_(n), c_(std::move(structure)) {
        validate();
    }

    int dim() const { return n_; }

    /// [x, y]^k = sum_ij c_ij^k x_i y_j
    RVector bracket(const RVector& x, const RVector& y) const {
        if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
            throw std::invalid_argument("dimension mismatch");
        RVector r(static_cast<size_t>(n_), Rational(0));
        for (int i = 0; i < n_; ++i) {
            if (x[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < n_; ++j) {
                if (y[static_cast<size_t>(j)] == 0) continue;
                Rational f = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
                const RVector& cij = c_[static_cast<size_t>(i)][static_cast<size_t>(j)];
                for (int k = 0; k < n_; ++k) r[static_cast<size_t>(k)] += f * cij[static_cast<size_t>(k)];
            }
        }
        return r;
    }

    static LieAlgebra sl2() {
        // basis (e, h, f): [e,f]=h, [h,e]=2e, [h,f]=-2f
        auto z = zero_structure(3);
        z[0][2] = {Rational(0), Rational(1), Rational(0)};
        z[2][0] = {Rational(0), Rational(-1), Rational(0)};
        z[1][0] = {Rational(2), Rational(0), Rational(0)};
        z[0][1] = {Rational(-2), Rational(0), Rational(0)};
        z[1][2] = {Rational(0), Rational(0), Rational(-2)};
        z[2][1] = {Rational(0), Rational(0), Rational(2)};
        return LieAlgebra(3, z);
    }

    static LieAlgebra abelian(int m) { return LieAlgebra(m, zero_structure(m)); }

    static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
        int n = a.n_ + b.n_;
        auto z = zero_structure(n);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j)
                for (int k = 0; k < a.n_; ++k)
                    z[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
                        a.c_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
        for (int i = 0; i < b.n_; ++i)
            for (int j = 0; j < b.n_; ++j)
                for (int k = 0; k < b.n_; ++k)
                    z[static_cast<size_t>(a.n_ + i)][static_cast<size_t>(a.n_ + j)]
                     [static_cast<size_t>(a.n_ + k)] =
                         b.c_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)];
        return LieAlgebra(n, z);
    }

private:
    static std::vector<std::vector<RVector>> zero_structure(int n) {
        return std::vector<std::vector<RVector>>(
            static_cast<size_t>(n),
            std::vector<RVector>(static_cast<size_t>(n),
                                 RVector(static_cast<size_t>(n), Rational(0))));
    }
    void validate() const {
        if (static_cast<int>(c_.size()) != n_) throw std::invalid_argument("bad structure shape");
        for (const auto& row : c_) {
            if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("bad structure shape");
            for (const auto& v : row)
                if (static_cast<int>(v.size()) != n_)
                    throw std::invalid_argument("bad structure shape");
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    if (c_[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] !=
                        -c_[static_cast<size_t>(j)][static_cast<size_t>(i)][static_cast<size_t>(k)])
                        throw std::invalid_argument("structure constants are not antisymmetric");
        // Jacobi: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                for (int k = j + 1; k < n_; ++k) {
                    RVector ei = unit(i), ej = unit(j), ek = unit(k);
                    RVector s = bracket(bracket(ei, ej), ek);
                    RVector t = bracket(bracket(ej, ek), ei);
                    RVector u = bracket(bracket(ek, ei), ej);
                    for (int l = 0; l < n_; ++l)
                        if (s[static_cast<size_t>(l)] + t[static_cast<size_t>(l)] +
                                u[static_cast<size_t>(l)] !=
                            0)
                            throw std::invalid_argument("Jacobi identity fails");
                }
    }

    RVector unit(int i) const {
        RVector v(static_cast<size_t>(n_), Rational(0));
        v[static_cast<size_t>(i)] = 1;
        return v;
    }

    int n_;
    std::vector<std::vector<RVector>> c_;  // c_[i][j] = [e_i, e_j] coordinates
};

/// Row-reduced spanning set; insert() returns true when the vector enlarged
/// the span.
class RationalRowSpace {
public:
    explicit RationalRowSpace(int n) : n_(n) {}

    bool insert(RVector v) {
        reduce(v);
        int piv = pivot_of(v);
        if (piv < 0) return false;
        Rational inv = Rational(1) / v[static_cast<size_t>(piv)];
        for (auto& x : v) x *= inv;
        for (auto& row : rows_) {
            Rational f = row[static_cast<size_t>(piv)];
            if (f != 0)
                for (int l = 0; l < n_; ++l)
                    row[static_cast<size_t>(l)] -= f * v[static_cast<size_t>(l)];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<RVector>& basis() const { return rows_; }

    bool contains(RVector v) const {
        reduce(v);
        return pivot_of(v) < 0;
    }

private:
    void reduce(RVector& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            Rational f = v[static_cast<size_t>(pivots_[r])];
            if (f != 0)
                for (int l = 0; l < n_; ++l)
                    v[static_cast<size_t>(l)] -= f * rows_[r][static_cast<size_t>(l)];
        }
    }
    static int pivot_of(const RVector& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return static_cast<int>(i);
        return -1;
    }
    int n_;
    std::vector<RVector> rows_;
    std::vector<int> pivots_;
};

/// Smallest subspace containing S and closed under the bracket.
inline std::vector<RVector> generated_subalgebra(const LieAlgebra& L,
                                                 const std::vector<RVector>& s) {
    if (s.empty()) throw std::invalid_argument("generator set must be non-empty");
    RationalRowSpace space(L.dim());
    for (const auto& v : s) space.insert(v);
    bool grew = true;
    while (grew && space.dim() < L.dim()) {
        grew = false;
        std::vector<RVector> basis = space.basis();  // copy: insert mutates
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j)
                if (space.insert(L.bracket(basis[i], basis[j]))) grew = true;
    }
    return space.basis();
}

inline bool generates(const LieAlgebra& L, const std::vector<RVector>& s) {
    return static_cast<int>(generated_subalgebra(L, s).size()) == L.dim();
}

/// dim L/[L,L]: image of k generators in the abelianization has dim <= k,
/// and brackets vanish there, so this lower-bounds the generator count.
inline int abelianization_dim(const LieAlgebra& L) {
    RationalRowSpace derived(L.dim());
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j) {
            RVector ei(static_cast<size_t>(L.dim()), Rational(0)),
                ej(static_cast<size_t>(L.dim()), Rational(0));
            ei[static_cast<size_t>(i)] = 1;
            ej[static_cast<size_t>(j)] = 1;
            derived.insert(L.bracket(ei, ej));
        }
    return L.dim() - derived.dim();
}

struct MinGenResult {
    int lower = 0;
    int upper = 0;
    std::vector<RVector> witness;  // generating tuple realizing `upper`
    std::string obstruction;
};

/// Randomized upper bound (small integer coordinates) against the exact
/// abelianization lower bound. The gap is reported honestly if unclosed.
inline MinGenResult min_generators_bound(const LieAlgebra& L, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    MinGenResult r;
    const int n = L.dim();
    if (n == 0) {
        r.obstruction = "zero algebra";
        return r;
    }
    int ab = abelianization_dim(L);
    r.lower = std::max(ab, 1);
    if (ab < n && r.lower < 2) r.lower = 2;  // one element spans an abelian subalgebra
    r.obstruction = ab > 0 ? "abelianization has dimension " + std::to_string(ab)
                           : "non-abelian: a single element never generates";

    std::mt19937_64 rng(seed);
    for (int k = r.lower; k <= n; ++k) {
        for (int t = 0; t < trials; ++t) {
            std::vector<RVector> tuple;
            for (int i = 0; i < k; ++i) {
                RVector v(static_cast<size_t>(n));
                for (int l = 0; l < n; ++l)
                    v[static_cast<size_t>(l)] = Rational(static_cast<int>(rng() % 11) - 5);
                tuple.push_back(std::move(v));
            }
            if (generates(L, tuple)) {
                r.upper = k;
                r.witness = tuple;
                return r;
            }
        }
    }
    // the basis itself always generates
    r.upper = n;
    for (int i = 0; i < n; ++i) {
        RVector v(static_cast<size_t>(n), Rational(0));
        v[static_cast<size_t>(i)] = 1;
        r.witness.push_back(std::move(v));
    }
    return r;
}

}  // namespace projdense
