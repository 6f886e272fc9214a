#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "projdense/cartan.hpp"

namespace projdense {

enum class Verdict {
    CertifiedContracting,
    CertifiedNotContracting,
    Inconclusive,
    OracleVerified,
    OracleRefuted
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CertifiedContracting: return "certified_contracting";
        case Verdict::CertifiedNotContracting: return "certified_not_contracting";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::OracleVerified: return "oracle_verified";
        case Verdict::OracleRefuted: return "oracle_refuted";
    }
    return "?";
}

template <class S>
struct ContractionCertificate {
    Verdict verdict;
    double ratio = 0.0;
    double epsilon = 0.0;
    std::optional<ProjHyperplane<S>> hyperplane;
    std::optional<ProjPoint<S>> point;
    std::optional<ProjPoint<S>> worst_point;  // achieves the oracle's max image distance
    double worst_image_distance = 0.0;
    std::string bound_used;
};

inline void require_valid_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 0.25))
        throw std::invalid_argument("epsilon must lie in (0, 1/4)");
}

/// Both directions of the singular-ratio criterion. The forward bound
/// certifies contraction for the canonical pair (H_g, v_g); the converse
/// bound refutes it for every choice of pair.
template <class S>
ContractionCertificate<S> certify_by_ratio(const MatrixX<S>& g, double eps) {
    require_valid_epsilon(eps);
    auto d = decompose(g);
    ContractionCertificate<S> cert;
    cert.ratio = d.profile[1] / d.profile[0];
    cert.epsilon = eps;
    cert.hyperplane = repelling_hyperplane(d);
    cert.point = attracting_point(d);
    double refute_threshold;
    if constexpr (is_padic_v<S>) {
        long p = 2;
        for (Eigen::Index i = 0; i < g.size() && p == 2; ++i)
            if (g(i).prime() != 0) p = g(i).prime();
        refute_threshold = eps * eps * static_cast<double>(p);  // eps^2 / |pi|
    } else {
        refute_threshold = 4.0 * eps * eps;
    }
    if (cert.ratio <= eps * eps) {
        cert.verdict = Verdict::CertifiedContracting;
        cert.bound_used = "ratio <= eps^2 (canonical pair)";
    } else if (cert.ratio > refute_threshold) {
        cert.verdict = Verdict::CertifiedNotContracting;
        cert.bound_used = is_padic_v<S> ? "ratio > eps^2/|pi| (all pairs)"
                                        : "ratio > 4*eps^2 (all pairs)";
    } else {
        cert.verdict = Verdict::Inconclusive;
        cert.bound_used = "ratio between eps^2 and the converse threshold";
    }
    return cert;
}

/// Smallest eps for which g contracts w.r.t. its canonical pair
/// (archimedean). Closed form validated against the bisection oracle.
template <class S>
double epsilon_star_canonical(const MatrixX<S>& g) {
    static_assert(!is_padic_v<S>);
    auto d = decompose(g);
    double r = d.profile[1] / d.profile[0];
    if (r >= 1.0) return 1.0;
    return std::sqrt(r / (1.0 + r));
}

/// Deterministic seeded unit-sphere sampler (own Box-Muller so output is
/// reproducible independent of the standard library).
class SphereSampler {
public:
    SphereSampler(std::uint64_t seed, bool complex_field) : rng_(seed), cplx_(complex_field) {}

    template <class S>
    void next(VectorX<S>& x) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if constexpr (std::is_same_v<S, std::complex<double>>)
                x[i] = std::complex<double>(gauss(), gauss());
            else
                x[i] = gauss();
        }
        double nn = x.norm();
        if (nn == 0.0) {
            x.setZero();
            x[0] = S(1);
            return;
        }
        x /= S(nn);
    }

private:
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }
    double uniform() {
        return (rng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
    }
    std::mt19937_64 rng_;
    bool cplx_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Definitional check over the archimedean unit sphere: every sample at
/// distance >= eps from H must land within eps (+ tol) of v.
template <class S>
ContractionCertificate<S> oracle_check(const MatrixX<S>& g, double eps,
                                       const ProjHyperplane<S>& H, const ProjPoint<S>& v,
                                       std::int64_t samples, std::uint64_t seed,
                                       double tol = 1e-6) {
    static_assert(!is_padic_v<S>);
    require_valid_epsilon(eps);
    if (samples <= 0) throw std::invalid_argument("samples must be positive");
    const Eigen::Index n = g.rows();

    // Precompute unit-normalized witnesses.
    VectorX<S> un = H.normal / S(norm(H.normal));
    VectorX<S> w = v.rep / S(norm(v.rep));

    ContractionCertificate<S> cert;
    cert.epsilon = eps;
    cert.hyperplane = H;
    cert.point = v;
    cert.bound_used = "definition (sampled)";

    SphereSampler sampler(seed, std::is_same_v<S, std::complex<double>>);
    VectorX<S> x(n), gx(n);
    double worst = -1.0;
    VectorX<S> worst_x;
    for (std::int64_t it = 0; it < samples; ++it) {
        sampler.next(x);
        double dh = abs_value(pairing(un, x));  // x is unit, un is unit
        if (dh < eps) continue;
        gx.noalias() = g * x;
        double ngx = gx.norm();
        double ip = abs_value(pairing(gx, w));
        double wedge = std::sqrt(std::max(0.0, ngx * ngx - ip * ip));
        double dist = wedge / ngx;
        if (dist > worst) {
            worst = dist;
            worst_x = x;
        }
    }
    cert.worst_image_distance = worst < 0.0 ? 0.0 : worst;
    if (worst >= 0.0) cert.worst_point = ProjPoint<S>(worst_x);
    cert.verdict = (worst <= eps + tol) ? Verdict::OracleVerified : Verdict::OracleRefuted;
    return cert;
}

template <class S>
ContractionCertificate<S> oracle_check(const MatrixX<S>& g, double eps, std::int64_t samples,
                                       std::uint64_t seed, double tol = 1e-6) {
    auto d = decompose(g);
    return oracle_check<S>(g, eps, repelling_hyperplane(d), attracting_point(d), samples, seed,
                           tol);
}

/// Largest m with p^m <= 1/eps, i.e. d >= eps  <=>  d = p^{-k}, k <= m.
inline int padic_outside_valuation(long p, double eps) {
    int m = 0;
    double pk = static_cast<double>(p);
    while (pk <= 1.0 / eps + 1e-12) {
        ++m;
        pk *= static_cast<double>(p);
    }
    return m;
}

struct PadicOracleOptions {
    int valuation_window = 3;  // entry valuations enumerated in [0, window]
    int unit_depth = 2;        // unit digits mod p^depth
};

/// Exhaustive check over representative points of P(Q_p^n): entries are 0 or
/// unit * p^v with bounded v and unit digits, sup-normalized to valuation 0.
/// Projective distances in a bounded window take finitely many values p^{-m},
/// so all comparisons are exact on valuations.
inline ContractionCertificate<Padic> oracle_check_padic(const MatrixXp& g, double eps,
                                                        const ProjHyperplane<Padic>& H,
                                                        const ProjPoint<Padic>& v,
                                                        PadicOracleOptions opt = {}) {
    require_valid_epsilon(eps);
    const Eigen::Index n = g.rows();
    long p = 0;
    int prec = Padic::kDefaultPrecision;
    for (Eigen::Index i = 0; i < g.size(); ++i)
        if (g(i).prime() != 0) {
            p = g(i).prime();
            prec = g(i).precision();
        }
    if (p == 0) throw std::invalid_argument("zero matrix");

    const int m_out = padic_outside_valuation(p, eps);

    std::vector<Padic> entries;
    entries.push_back(Padic::zero(p, prec));
    BigInt unit_mod = Padic::pow_p(p, opt.unit_depth);
    for (int vv = 0; vv <= opt.valuation_window; ++vv)
        for (BigInt u = 1; u < unit_mod; ++u)
            if (u % p != 0) entries.push_back(Padic(p, prec, vv, u));

    ContractionCertificate<Padic> cert;
    cert.epsilon = eps;
    cert.hyperplane = H;
    cert.point = v;
    cert.bound_used = "definition (exhaustive valuation window)";

    std::int64_t worst_val = Padic::kInfValuation;  // image distance p^{-worst_val}
    VectorXp worst_x;
    VectorXp x(n);
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    const size_t m = entries.size();
    bool done = false;
    while (!done) {
        bool has_val0 = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            x[i] = entries[idx[static_cast<size_t>(i)]];
            if (x[i].valuation() == 0) has_val0 = true;
        }
        if (has_val0) {
            std::int64_t dh = hyperplane_distance_valuation(x, H.normal);
            if (dh <= m_out) {
                VectorXp gx = mat_vec(g, x);
                std::int64_t dv = proj_distance_valuation(gx, v.rep);
                if (dv < worst_val) {
                    worst_val = dv;
                    worst_x = x;
                }
            }
        }
        // odometer
        for (Eigen::Index i = 0;; ++i) {
            if (i == n) {
                done = true;
                break;
            }
            if (++idx[static_cast<size_t>(i)] < m) break;
            idx[static_cast<size_t>(i)] = 0;
        }
    }

    double worst_dist =
        worst_val == Padic::kInfValuation
            ? 0.0
            : std::pow(static_cast<double>(p), -static_cast<double>(worst_val));
    cert.worst_image_distance = worst_dist;
    if (worst_x.size() > 0) cert.worst_point = ProjPoint<Padic>(worst_x);
    cert.verdict = (worst_dist <= eps + 1e-12) ? Verdict::OracleVerified : Verdict::OracleRefuted;
    return cert;
}

inline ContractionCertificate<Padic> oracle_check_padic(const MatrixXp& g, double eps,
                                                        PadicOracleOptions opt = {}) {
    auto d = decompose_padic(g);
    return oracle_check_padic(g, eps, repelling_hyperplane(d), attracting_point(d), opt);
}

/// Replays the archimedean converse argument for a diagonal matrix with
/// positive entries and the canonical witnesses, reporting the margin of
/// every inequality in the chain.
struct ProofChainReport {
    bool applicable = false;       // false: not diagonal-positive, reduce via Cartan first
    bool hypotheses_ok = false;    // g must be eps-contracting for the chain to bind
    std::string note;
    double s_abs = 0.0;            // |<u, v>|
    bool s_below_eps = false;
    double coeff_in_range = 0.0;   // eps - |s| * alpha_eps / alpha_|s|, must be in (0, eps]
    bool coeff_ok = false;
    double alpha_margin = 0.0;     // alpha_eps * (1 - eps) - 1/2
    double margin_cont0 = 0.0;
    double margin_cont2 = 0.0;
    double margin_cont3 = 0.0;
    double margin_cont4 = 0.0;
    double margin_final = 0.0;
    double ratio = 0.0;
    bool conclusion = false;  // ratio <= 4 eps^2
    bool all_margins_nonneg() const {
        return margin_cont0 >= 0 && margin_cont2 >= 0 && margin_cont3 >= 0 &&
               margin_cont4 >= 0 && margin_final >= 0;
    }
};

inline double alpha_of(double t) { return std::sqrt(1.0 - t * t); }

inline ProofChainReport verify_proof_chain(const MatrixXd& g, double eps,
                                           std::int64_t oracle_samples = 20000,
                                           std::uint64_t seed = 12345) {
    require_valid_epsilon(eps);
    const Eigen::Index n = g.rows();
    ProofChainReport rep;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if ((i != j && g(i, j) != 0.0) || (i == j && g(i, i) <= 0.0)) {
                rep.note = "reduce via Cartan first";
                return rep;
            }
    rep.applicable = true;

    auto cert = oracle_check<double>(g, eps, oracle_samples, seed);
    if (cert.verdict != Verdict::OracleVerified) {
        rep.note = "hypotheses not satisfied";
        return rep;
    }
    rep.hypotheses_ok = true;

    // Canonical witnesses for diagonal g: w = u = e1, and v, the unit vector
    // in span(e1, e2) orthogonal to g*w, is e2. Hence s = <u, v> = 0.
    std::vector<double> diag(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) diag[static_cast<size_t>(i)] = g(i, i);
    std::vector<double> sorted = diag;
    std::sort(sorted.rbegin(), sorted.rend());
    double a1 = sorted[0], a2 = sorted[1];
    rep.ratio = a2 / a1;

    VectorXd u = VectorXd::Zero(n), w = VectorXd::Zero(n), vv = VectorXd::Zero(n);
    // align e1/e2 with the largest and second-largest diagonal entries
    Eigen::Index i1 = 0, i2 = 1;
    for (Eigen::Index i = 0; i < n; ++i)
        if (diag[static_cast<size_t>(i)] > diag[static_cast<size_t>(i1)]) i1 = i;
    i2 = (i1 == 0) ? 1 : 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != i1 && diag[static_cast<size_t>(i)] > diag[static_cast<size_t>(i2)]) i2 = i;
    u[i1] = 1.0;
    w[i1] = 1.0;
    vv[i2] = 1.0;

    double s = u.dot(vv);
    rep.s_abs = std::abs(s);
    rep.s_below_eps = rep.s_abs < eps;
    double a_eps = alpha_of(eps), a_s = alpha_of(rep.s_abs);
    rep.coeff_in_range = eps - rep.s_abs * a_eps / a_s;
    rep.coeff_ok = rep.coeff_in_range > 0.0 && rep.coeff_in_range <= eps;
    rep.alpha_margin = a_eps * (1.0 - eps) - 0.5;

    VectorXd y = (vv - s * u) / a_s;
    VectorXd v_eps = eps * u + a_eps * y;

    auto wedge_with_w = [&](const VectorXd& z) {
        double nz = z.norm();
        double ip = z.dot(w);
        return std::sqrt(std::max(0.0, nz * nz - ip * ip));
    };
    VectorXd gu = g * u, gv = g * vv, gve = g * v_eps;
    rep.margin_cont0 = eps * gu.norm() - wedge_with_w(gu);
    rep.margin_cont2 = eps * gve.norm() - wedge_with_w(gve);
    rep.margin_cont3 = eps * gu.norm() + (a_eps / a_s) * gv.norm() - gve.norm();
    rep.margin_cont4 = wedge_with_w(gve) - ((a_eps / a_s) * gv.norm() - eps * eps * gu.norm());
    rep.margin_final = 2.0 * eps * eps * gu.norm() - (a_eps / a_s) * (1.0 - eps) * gv.norm();
    rep.conclusion = rep.ratio <= 4.0 * eps * eps;
    return rep;
}

}  // namespace projdense
