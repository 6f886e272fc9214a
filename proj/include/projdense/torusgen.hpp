#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "projdense/intlattice.hpp"

namespace projdense {

using Rational = boost::multiprecision::cpp_rational;

/// Exact real number in the Q-span of a declared basis {1, theta_1, ...,
/// theta_m} of reals assumed linearly independent over Q. Index 0 is the
/// rational part.
struct SymbolicReal {
    std::vector<Rational> coeff;

    explicit SymbolicReal(size_t basis_size = 1) : coeff(basis_size, Rational(0)) {}

    size_t basis_size() const { return coeff.size(); }
    bool is_rational() const {
        for (size_t i = 1; i < coeff.size(); ++i)
            if (coeff[i] != 0) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& c : coeff)
            if (c != 0) return false;
        return true;
    }

    SymbolicReal& operator+=(const SymbolicReal& o) {
        for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
        return *this;
    }
    friend SymbolicReal operator+(SymbolicReal a, const SymbolicReal& b) { return a += b; }
    friend SymbolicReal operator*(const BigInt& n, SymbolicReal a) {
        for (auto& c : a.coeff) c *= Rational(n);
        return a;
    }

    /// reduce the rational part into [0, 1)
    void mod1() {
        BigInt num = boost::multiprecision::numerator(coeff[0]);
        BigInt den = boost::multiprecision::denominator(coeff[0]);
        BigInt q = num / den;
        if (num - q * den < 0) q -= 1;
        coeff[0] -= Rational(q);
    }

    double value(const std::vector<double>& basis_values) const {
        double s = 0.0;
        for (size_t i = 0; i < coeff.size(); ++i)
            s += static_cast<double>(coeff[i]) * basis_values[i];
        return s;
    }
};

/// Point of T^d with symbolically exact coordinates.
struct TorusElement {
    std::vector<SymbolicReal> coords;

    TorusElement() = default;
    TorusElement(size_t dim, size_t basis_size)
        : coords(dim, SymbolicReal(basis_size)) {}

    size_t dim() const { return coords.size(); }
    void canonicalize() {
        for (auto& c : coords) c.mod1();
    }
    bool has_irrational_part() const {
        for (const auto& c : coords)
            if (!c.is_rational()) return true;
        return false;
    }
};

/// The closure of the generated subgroup, described by the lattice of
/// integer characters k with k . alpha_j in Z for every generator.
struct ClosureData {
    IMatrix kernel;            // HNF basis rows, rank x d
    int dimension = 0;         // d - rank
    BigInt component_count = 1;  // order of the finite part

    bool dense(int d) const { return dimension == d && component_count == 1; }
    bool connected() const { return component_count == 1; }
};

namespace detail {

inline void check_generators(const std::vector<TorusElement>& gens) {
    for (size_t j = 1; j < gens.size(); ++j) {
        if (gens[j].dim() != gens[0].dim() ||
            (gens[j].dim() > 0 &&
             gens[j].coords[0].basis_size() != gens[0].coords[0].basis_size()))
            throw std::invalid_argument("generators disagree on dimension or basis");
    }
}

}  // namespace detail

/// Exact character-lattice computation: a character k annihilates all
/// generators mod Z iff every irrational coefficient of k . alpha_j
/// vanishes and the rational one is an integer.
inline ClosureData closure(const std::vector<TorusElement>& gens, int d) {
    detail::check_generators(gens);
    ClosureData out;
    if (d == 0) {
        out.kernel = IMatrix(0, 0);
        return out;
    }
    const size_t m = gens.size();
    if (m == 0) {
        out.kernel = IMatrix::Zero(d, d);
        for (int i = 0; i < d; ++i) out.kernel(i, i) = 1;
        out.dimension = 0;
        return out;
    }
    const size_t nb = gens[0].coords[0].basis_size();

    // irrational-coefficient constraints: k . C = 0, columns scaled integral
    const size_t ncons = m * (nb - 1);
    IMatrix ci(d, std::max<size_t>(ncons, 1));
    ci.setZero();
    size_t col = 0;
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 1; i < nb; ++i) {
            BigInt den = 1;
            for (int l = 0; l < d; ++l)
                den = big_lcm(den, boost::multiprecision::denominator(
                                       gens[j].coords[static_cast<size_t>(l)].coeff[i]));
            if (den == 0) den = 1;
            for (int l = 0; l < d; ++l) {
                const Rational& q = gens[j].coords[static_cast<size_t>(l)].coeff[i];
                ci(l, col) = boost::multiprecision::numerator(q) *
                             (den / boost::multiprecision::denominator(q));
            }
            ++col;
        }
    IMatrix b0 = integer_left_kernel(ci);  // saturated, rows span {k : k.C = 0}
    const Eigen::Index r0 = b0.rows();

    IMatrix lattice;
    if (r0 == 0) {
        lattice = IMatrix(0, d);
    } else {
        // rational-part integrality within the span of b0
        BigInt M = 1;
        std::vector<std::vector<Rational>> q(m, std::vector<Rational>(r0));
        for (size_t j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < r0; ++i) {
                Rational s = 0;
                for (int l = 0; l < d; ++l)
                    s += Rational(b0(i, l)) * gens[j].coords[static_cast<size_t>(l)].coeff[0];
                q[j][static_cast<size_t>(i)] = s;
                M = big_lcm(M, boost::multiprecision::denominator(s));
            }
        if (M == 1) {
            lattice = b0;
        } else {
            IMatrix sys(r0 + m, m);
            sys.setZero();
            for (size_t j = 0; j < m; ++j) {
                for (Eigen::Index i = 0; i < r0; ++i) {
                    const Rational& s = q[j][static_cast<size_t>(i)];
                    sys(i, j) = boost::multiprecision::numerator(s) *
                                (M / boost::multiprecision::denominator(s));
                }
                sys(r0 + static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = M;
            }
            IMatrix k2 = integer_left_kernel(sys);
            // lattice = x * b0 with x = leading r0 columns of k2 (plain loops:
            // Eigen's product overload resolution trips over cpp_int traits)
            lattice = IMatrix::Zero(k2.rows(), d);
            for (Eigen::Index i = 0; i < k2.rows(); ++i)
                for (Eigen::Index jj = 0; jj < r0; ++jj)
                    for (int l = 0; l < d; ++l) lattice(i, l) += k2(i, jj) * b0(jj, l);
        }
    }

    HnfResult h = hermite_normal_form(lattice);
    out.kernel = IMatrix(h.rank, d);
    for (int i = 0; i < h.rank; ++i) out.kernel.row(i) = h.h.row(i);
    out.dimension = d - h.rank;
    out.component_count = 1;
    if (h.rank > 0) {
        SnfResult s = smith_normal_form(out.kernel);
        for (const BigInt& dv : s.divisors) out.component_count *= dv;
    }
    return out;
}

inline ClosureData closure(const std::vector<TorusElement>& gens) {
    if (gens.empty()) throw std::invalid_argument("need dimension for empty generator list");
    return closure(gens, static_cast<int>(gens[0].dim()));
}

inline bool is_dense(const std::vector<TorusElement>& gens, int d) {
    if (gens.empty()) return d == 0;
    return closure(gens, d).dense(d);
}

inline TorusElement apply_word(const std::vector<TorusElement>& gens, const IVector& word) {
    TorusElement r(gens[0].dim(), gens[0].coords.empty() ? 1 : gens[0].coords[0].basis_size());
    for (size_t t = 0; t < gens.size(); ++t)
        for (size_t l = 0; l < r.dim(); ++l)
            r.coords[l] += word[static_cast<Eigen::Index>(t)] * gens[t].coords[l];
    r.canonicalize();
    return r;
}

namespace detail {

/// Returns integer words (over the input list) generating a dense subgroup
/// of T^d, at most d of them. Inputs must be dense.
inline std::vector<IVector> reduce_words(const std::vector<TorusElement>& gens, int d) {
    std::vector<IVector> words;
    if (d == 0) return words;
    const size_t m = gens.size();
    // infinite-order element: first input with a nonzero irrational part
    size_t pick = m;
    for (size_t j = 0; j < m; ++j)
        if (gens[j].has_irrational_part()) {
            pick = j;
            break;
        }
    if (pick == m)
        throw std::runtime_error(
            "inconsistency: dense input has no infinite-order generator");

    ClosureData c1 = closure({gens[pick]}, d);
    BigInt power = c1.component_count;  // gamma^j with connected closure
    IVector gamma_word = IVector::Zero(static_cast<Eigen::Index>(m));
    gamma_word[static_cast<Eigen::Index>(pick)] = power;
    TorusElement gamma = apply_word(gens, gamma_word);
    ClosureData cg = closure({gamma}, d);
    if (!cg.connected())
        throw std::logic_error("power of gamma should have connected closure");
    words.push_back(gamma_word);
    const int rank = d - cg.dimension;
    if (rank == 0) return words;  // gamma alone is dense

    // quotient projection: rows spanning the (saturated) character lattice
    SnfResult s = smith_normal_form(cg.kernel);
    IMatrix proj(rank, d);
    for (int i = 0; i < rank; ++i) proj.row(i) = s.v_inv.row(i);

    const size_t nb = gens[0].coords[0].basis_size();
    std::vector<TorusElement> qgens;
    qgens.reserve(m);
    for (size_t j = 0; j < m; ++j) {
        TorusElement q(static_cast<size_t>(rank), nb);
        for (int i = 0; i < rank; ++i)
            for (int l = 0; l < d; ++l)
                q.coords[static_cast<size_t>(i)] +=
                    proj(i, l) * gens[j].coords[static_cast<size_t>(l)];
        q.canonicalize();
        qgens.push_back(std::move(q));
    }
    // the projected family is dense in the quotient torus; recurse and lift
    // each quotient word by evaluating the same word on the full inputs
    std::vector<IVector> sub = reduce_words(qgens, rank);
    for (auto& wrd : sub) words.push_back(wrd);
    return words;
}

}  // namespace detail

/// Constructive generator reduction on T^d: returns <= d elements of the
/// generated group that are still dense, re-verified exactly.
inline std::vector<TorusElement> reduce_generators(const std::vector<TorusElement>& gens,
                                                   int d) {
    detail::check_generators(gens);
    if (!is_dense(gens, d)) throw std::invalid_argument("input generators are not dense");
    std::vector<IVector> words = detail::reduce_words(gens, d);
    std::vector<TorusElement> out;
    out.reserve(words.size());
    for (const auto& wrd : words) out.push_back(apply_word(gens, wrd));
    if (static_cast<int>(out.size()) > d)
        throw std::logic_error("reduction produced more than d generators");
    if (!is_dense(out, d)) throw std::logic_error("reduced set failed the density re-check");
    return out;
}

struct GeneratorBound {
    int refined = 0;   // dim(G/G2) + d1 + t
    int headline = 0;  // dim(G) + d1
    bool refined_strictly_smaller = false;
};

inline GeneratorBound generator_bound(int dim_g, int d1, int dim_metabelian_quotient, int t) {
    if (!(0 <= d1 && d1 <= dim_metabelian_quotient && dim_metabelian_quotient <= dim_g))
        throw std::invalid_argument("need 0 <= d1 <= dim(G/G2) <= dim(G)");
    if (!(0 <= t && t <= dim_g - dim_metabelian_quotient))
        throw std::invalid_argument("need 0 <= t <= dim(G) - dim(G/G2)");
    GeneratorBound b;
    b.refined = dim_metabelian_quotient + d1 + t;
    b.headline = dim_g + d1;
    b.refined_strictly_smaller = b.refined < b.headline;
    return b;
}

/// Floating-point cross-check of is_dense: enumerate short words and report
/// the fraction of mesh cells of [0,1)^d they hit.
inline double numeric_density_probe(const std::vector<TorusElement>& gens,
                                    const std::vector<double>& basis_values, int word_length,
                                    double mesh) {
    detail::check_generators(gens);
    if (gens.empty()) return 0.0;
    const int d = static_cast<int>(gens[0].dim());
    if (d > 3) throw std::invalid_argument("probe supports d <= 3");
    if (!(mesh > 0.0 && mesh < 1.0)) throw std::invalid_argument("mesh must be in (0,1)");
    const long bins = std::lround(1.0 / mesh);
    double cells_d = std::pow(static_cast<double>(bins), d);
    if (cells_d > 5e7) throw std::overflow_error("mesh cell count too large");
    const long cells = static_cast<long>(cells_d);
    std::vector<char> hit(static_cast<size_t>(cells), 0);

    std::vector<std::vector<double>> gv(gens.size(), std::vector<double>(d));
    for (size_t j = 0; j < gens.size(); ++j)
        for (int l = 0; l < d; ++l)
            gv[j][static_cast<size_t>(l)] =
                gens[j].coords[static_cast<size_t>(l)].value(basis_values);

    long long budget = 50'000'000;
    std::vector<double> point(static_cast<size_t>(d), 0.0);
    // depth-first over coefficient vectors with l1 norm <= word_length
    std::function<void(size_t, int)> rec = [&](size_t j, int remaining) {
        if (budget-- < 0) throw std::overflow_error("word enumeration budget exceeded");
        if (j == gens.size()) {
            long idx = 0;
            for (int l = 0; l < d; ++l) {
                double f = point[static_cast<size_t>(l)];
                f -= std::floor(f);
                long b = static_cast<long>(f * bins);
                if (b >= bins) b = bins - 1;
                idx = idx * bins + b;
            }
            hit[static_cast<size_t>(idx)] = 1;
            return;
        }
        for (int c = -remaining; c <= remaining; ++c) {
            for (int l = 0; l < d; ++l)
                point[static_cast<size_t>(l)] += c * gv[j][static_cast<size_t>(l)];
            rec(j + 1, remaining - std::abs(c));
            for (int l = 0; l < d; ++l)
                point[static_cast<size_t>(l)] -= c * gv[j][static_cast<size_t>(l)];
        }
    };
    rec(0, word_length);

    long count = 0;
    for (char h : hit) count += h;
    return static_cast<double>(count) / static_cast<double>(cells);
}

}  // namespace projdense
