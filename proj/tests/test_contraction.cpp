#include <doctest.h>

#include <random>

#include "projdense/contraction.hpp"

using namespace projdense;

namespace {

MatrixXd diag2(double a, double b) {
    MatrixXd m = MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    Eigen::HouseholderQR<MatrixXd> qr(m);
    return qr.householderQ();
}

MatrixXd random_with_ratio(int n, double ratio, std::mt19937_64& rng) {
    // u * diag(1, ratio, ratio/2, ...) * w has singular ratio exactly `ratio`
    VectorXd s(n);
    s[0] = 1.0;
    for (int i = 1; i < n; ++i) s[i] = ratio / static_cast<double>(1 << (i - 1));
    return random_orthogonal(n, rng) * s.asDiagonal() * random_orthogonal(n, rng);
}

MatrixXp pdiag2(long p, long a, long b) {
    MatrixXp m(2, 2);
    m(0, 0) = Padic::from_integer(p, a);
    m(0, 1) = m(1, 0) = Padic::zero(p);
    m(1, 1) = Padic::from_integer(p, b);
    return m;
}

/// Sampled sup of the image distance to v over {d(x, H) >= eps}; the sup is
/// attained on the boundary shell, which we sample directly.
double sup_image_distance(const MatrixXd& g, const ProjHyperplane<double>& H,
                          const ProjPoint<double>& v, double eps, std::mt19937_64& rng,
                          int dirs = 400) {
    const int n = static_cast<int>(g.rows());
    VectorXd un = H.normal / H.normal.norm();
    VectorXd w = v.rep / v.rep.norm();
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int it = 0; it < dirs; ++it) {
        VectorXd t(n);
        for (int i = 0; i < n; ++i) t[i] = nd(rng);
        t -= t.dot(un) * un;
        if (t.norm() < 1e-9) continue;
        t /= t.norm();
        for (double c : {eps, 0.5 * (eps + 1.0), 1.0}) {
            VectorXd x = c * un + std::sqrt(std::max(0.0, 1.0 - c * c)) * t;
            VectorXd gx = g * x;
            double ngx = gx.norm();
            double ip = gx.dot(w);
            double dist = std::sqrt(std::max(0.0, ngx * ngx - ip * ip)) / ngx;
            worst = std::max(worst, dist);
        }
    }
    return worst;
}

/// Smallest eps with sup over the outside region <= eps, by bisection.
double epsilon_star_bisect(const MatrixXd& g, std::mt19937_64& rng) {
    auto d = decompose_archimedean(g);
    auto H = repelling_hyperplane(d);
    auto v = attracting_point(d);
    double lo = 1e-4, hi = 0.999;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        std::mt19937_64 local(9001);  // same directions at every level
        double sup = sup_image_distance(g, H, v, mid, local);
        (sup <= mid ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("certify_by_ratio on the canonical examples") {
    auto c1 = certify_by_ratio<double>(diag2(25, 1), 0.2);
    CHECK(c1.verdict == Verdict::CertifiedContracting);
    CHECK(c1.ratio == doctest::Approx(0.04));

    auto c2 = certify_by_ratio<double>(diag2(2, 1), 0.2);
    CHECK(c2.verdict == Verdict::CertifiedNotContracting);
    CHECK(c2.ratio == doctest::Approx(0.5));

    // Q_5, diag(1,5): r = 0.2 equals eps^2/|pi| = 0.04*5 exactly -> not
    // refuted, and r > eps^2 -> not certified: Inconclusive.
    MatrixXp g5 = pdiag2(5, 1, 5);
    CHECK_THROWS_AS(certify_by_ratio<Padic>(g5, 0.5), std::invalid_argument);
    auto c3 = certify_by_ratio<Padic>(g5, 0.2);
    CHECK(c3.verdict == Verdict::Inconclusive);
    CHECK(c3.ratio == doctest::Approx(0.2));
}

TEST_CASE("epsilon outside (0, 1/4) is rejected") {
    CHECK_THROWS_AS(certify_by_ratio<double>(diag2(25, 1), 0.25), std::invalid_argument);
    CHECK_THROWS_AS(certify_by_ratio<double>(diag2(25, 1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(certify_by_ratio<double>(diag2(25, 1), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(oracle_check<double>(diag2(25, 1), 0.3, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(oracle_check<double>(diag2(25, 1), 0.2, 0, 1), std::invalid_argument);
}

TEST_CASE("oracle verifies diag(25,1) and refutes diag(2,1) and the identity") {
    auto ok = oracle_check<double>(diag2(25, 1), 0.2, 50000, 7);
    CHECK(ok.verdict == Verdict::OracleVerified);
    CHECK(ok.worst_image_distance <= 0.2 + 1e-6);

    auto bad = oracle_check<double>(diag2(2, 1), 0.2, 50000, 7);
    CHECK(bad.verdict == Verdict::OracleRefuted);
    REQUIRE(bad.worst_point.has_value());
    // the image distance is maximized near the boundary x = (eps, +-sqrt(1-eps^2))
    double eps = 0.2, al = std::sqrt(1.0 - eps * eps);
    VectorXd b1(2), b2(2);
    b1 << eps, al;
    b2 << eps, -al;
    double d1 = proj_distance(*bad.worst_point, ProjPoint<double>(b1));
    double d2 = proj_distance(*bad.worst_point, ProjPoint<double>(b2));
    CHECK(std::min(d1, d2) <= 0.05);

    auto id = oracle_check<double>(MatrixXd::Identity(2, 2).eval(), 0.2, 20000, 7);
    CHECK(id.verdict == Verdict::OracleRefuted);
}

TEST_CASE("oracle is deterministic for a fixed seed") {
    auto a = oracle_check<double>(diag2(2, 1), 0.2, 5000, 42);
    auto b = oracle_check<double>(diag2(2, 1), 0.2, 5000, 42);
    CHECK(a.worst_image_distance == b.worst_image_distance);
    auto c = oracle_check<double>(diag2(2, 1), 0.2, 5000, 43);
    CHECK(a.worst_image_distance != c.worst_image_distance);
}

TEST_CASE("p-adic oracle: exhaustive window verification and refutation") {
    auto ok = oracle_check_padic(pdiag2(5, 25, 1), 0.2);
    CHECK(ok.verdict == Verdict::OracleVerified);
    CHECK(ok.worst_image_distance <= 0.2);

    auto bad = oracle_check_padic(pdiag2(5, 5, 1), 0.04);
    // r = 0.2 > eps^2/|pi| = 0.008: cannot contract at eps = 0.04... but the
    // forward threshold needs r <= eps^2; definitionally a point outside the
    // eps-neighborhood maps at distance 1/5 > eps here.
    CHECK(bad.verdict == Verdict::OracleRefuted);
}

TEST_CASE("forward direction: ratio below eps^2 implies oracle verification") {
    std::mt19937_64 rng(2024);
    const double epss[3] = {0.05, 0.1, 0.2};
    for (int it = 0; it < 60; ++it) {
        int n = 2 + static_cast<int>(rng() % 2);
        double eps = epss[it % 3];
        MatrixXd g = random_with_ratio(n, eps * eps * (0.2 + 0.8 * (rng() % 100) / 100.0), rng);
        auto cert = certify_by_ratio<double>(g, eps);
        REQUIRE(cert.verdict == Verdict::CertifiedContracting);
        auto o = oracle_check<double>(g, eps, 20000, 1000 + it);
        CHECK(o.verdict == Verdict::OracleVerified);
    }
}

TEST_CASE("converse direction: oracle-verified contraction forces r <= 4 eps^2") {
    std::mt19937_64 rng(2025);
    int verified = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 2 + static_cast<int>(rng() % 2);
        double eps = 0.05 + 0.19 * (rng() % 100) / 100.0;
        // ratios straddling the contraction regime around eps^2 .. 4 eps^2
        double r = eps * eps * (0.1 + 6.0 * (rng() % 1000) / 1000.0);
        MatrixXd g = random_with_ratio(n, r, rng);
        auto o = oracle_check<double>(g, eps, 4000, 77 + it);
        if (o.verdict != Verdict::OracleVerified) continue;
        ++verified;
        CHECK(singular_ratio(g) <= 4.0 * eps * eps + 1e-9);
    }
    CHECK(verified > 20);  // the sweep actually exercises the bound
}

TEST_CASE("monotonicity: contracting at eps stays contracting at larger eps") {
    std::mt19937_64 rng(31);
    MatrixXd g = random_with_ratio(3, 0.0025, rng);
    REQUIRE(certify_by_ratio<double>(g, 0.05).verdict == Verdict::CertifiedContracting);
    for (double e : {0.05, 0.08, 0.12, 0.18, 0.24}) {
        auto o = oracle_check<double>(g, e, 20000, 5);
        CHECK(o.verdict == Verdict::OracleVerified);
    }
}

TEST_CASE("certify_by_ratio verdict is invariant under norm-preserving factors") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 50; ++it) {
        int n = 2 + static_cast<int>(rng() % 2);
        double r = 0.001 + 0.5 * (rng() % 1000) / 1000.0;
        double eps = 0.05 + 0.19 * (rng() % 100) / 100.0;
        MatrixXd g = random_with_ratio(n, r, rng);
        MatrixXd u = random_orthogonal(n, rng), w = random_orthogonal(n, rng);
        auto c1 = certify_by_ratio<double>(g, eps);
        auto c2 = certify_by_ratio<double>((u * g * w).eval(), eps);
        CHECK(c1.verdict == c2.verdict);
        CHECK(c1.ratio == doctest::Approx(c2.ratio).epsilon(1e-8));
    }
}

TEST_CASE("epsilon_star closed form on known matrices") {
    CHECK(epsilon_star_canonical<double>(diag2(3, 1)) == doctest::Approx(0.5));
    CHECK(epsilon_star_canonical<double>(diag2(100, 1)) == doctest::Approx(0.09950).epsilon(1e-4));
    double th = 1.1;
    MatrixXd rot(2, 2);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    CHECK(epsilon_star_canonical<double>(rot) == doctest::Approx(1.0));
}

TEST_CASE("epsilon_star closed form agrees with the bisection oracle") {
    std::mt19937_64 rng(33);
    for (int it = 0; it < 25; ++it) {
        int n = 2 + static_cast<int>(it % 2);
        double r = 0.002 + 0.5 * (rng() % 1000) / 1000.0;
        MatrixXd g = random_with_ratio(n, r, rng);
        double closed = epsilon_star_canonical<double>(g);
        double bis = epsilon_star_bisect(g, rng);
        CHECK(closed == doctest::Approx(bis).epsilon(2e-3));
    }
}

TEST_CASE("proof chain replays cleanly on diag(25,1) at eps = 0.2") {
    auto rep = verify_proof_chain(diag2(25, 1), 0.2);
    CHECK(rep.applicable);
    CHECK(rep.hypotheses_ok);
    CHECK(rep.s_abs == doctest::Approx(0.0));
    CHECK(rep.s_below_eps);
    CHECK(rep.coeff_ok);
    CHECK(rep.coeff_in_range == doctest::Approx(0.2));
    CHECK(rep.alpha_margin > 0.0);
    CHECK(rep.all_margins_nonneg());
    CHECK(rep.ratio == doctest::Approx(0.04));
    CHECK(rep.conclusion);
}

TEST_CASE("alpha_eps * (1 - eps) stays above 1/2 on the whole interval") {
    // boundary value at eps = 1/4
    CHECK(alpha_of(0.25) * 0.75 == doctest::Approx(0.72618).epsilon(1e-4));
    for (double e = 0.001; e < 0.25; e += 0.001) CHECK(alpha_of(e) * (1.0 - e) > 0.5);
}

TEST_CASE("proof chain rejects non-diagonal input and failed hypotheses") {
    MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;
    auto rep = verify_proof_chain((rot * diag2(25, 1)).eval(), 0.2);
    CHECK(!rep.applicable);
    CHECK(rep.note == "reduce via Cartan first");

    auto rep2 = verify_proof_chain(diag2(-25, 1), 0.2);
    CHECK(!rep2.applicable);

    auto rep3 = verify_proof_chain(diag2(2, 1), 0.2);  // not 0.2-contracting
    CHECK(rep3.applicable);
    CHECK(!rep3.hypotheses_ok);
    CHECK(rep3.note == "hypotheses not satisfied");
}

TEST_CASE("proof chain margins are nonnegative on random diagonal instances") {
    std::mt19937_64 rng(34);
    for (int it = 0; it < 60; ++it) {
        int n = 2 + static_cast<int>(rng() % 3);
        double eps = 0.05 + 0.18 * (rng() % 100) / 100.0;
        MatrixXd g = MatrixXd::Zero(n, n);
        double a1 = 1.0 + (rng() % 1000) / 100.0;
        g(0, 0) = a1;
        for (int i = 1; i < n; ++i)
            g(i, i) = a1 * eps * eps * (0.05 + 0.9 * (rng() % 100) / 100.0);
        auto rep = verify_proof_chain(g, eps, 8000, 99 + it);
        REQUIRE(rep.applicable);
        REQUIRE(rep.hypotheses_ok);
        CHECK(rep.s_below_eps);
        CHECK(rep.coeff_ok);
        CHECK(rep.all_margins_nonneg());
        CHECK(rep.conclusion);
    }
}
