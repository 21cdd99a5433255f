#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qfd/errors.hpp"
#include "qfd/qcore.hpp"

using namespace qfd;

namespace {

const std::vector<double> q_grid{0.2, 0.5, 0.9};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

} // namespace

TEST_CASE("QParam validation") {
    CHECK_THROWS_AS(QParam(0.0), ValidationError);
    CHECK_THROWS_AS(QParam(1.0), ValidationError);
    CHECK_THROWS_AS(QParam(-0.5), ValidationError);
    CHECK_THROWS_AS(QParam(0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(QParam(0.5, 1e-15, -1.0), ValidationError);
    CHECK_THROWS_AS(QReal{std::nan("")}, ValidationError);
    CHECK_THROWS_AS(QReal{std::numeric_limits<double>::infinity()}, ValidationError);
    CHECK(QParam(0.5).pow(2.0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("q_integer") {
    for (double q : q_grid) {
        CHECK(q_integer(0.0, QParam(q)) == 0.0);
        CHECK(q_integer(1.0, QParam(q)) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(q_integer(3.0, QParam(0.5)) == doctest::Approx(1.75).epsilon(1e-15));
    // geometric-sum oracle for integer arguments
    for (double q : q_grid) {
        for (int n = 1; n <= 12; ++n) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                s += std::pow(q, i);
            }
            CHECK(rel(q_integer(n, QParam(q)), s) < 1e-14);
        }
    }
}

TEST_CASE("q_factorial and q_binomial") {
    const QParam qp(0.5);
    CHECK(q_factorial(0, qp) == 1.0);
    CHECK(q_factorial(2, qp) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(q_factorial(3, qp) == doctest::Approx(2.625).epsilon(1e-15));
    CHECK(q_binomial(0, 0, qp) == 1.0);
    CHECK(q_binomial(7, 0, qp) == 1.0);
    CHECK(q_binomial(7, 7, qp) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q_binomial(2, 3, qp) == 0.0);
    CHECK(q_binomial(2, 1, qp) == doctest::Approx(1.5).epsilon(1e-15));
    for (double q : q_grid) {
        const QParam p(q);
        for (int mu = 0; mu <= 12; ++mu) {
            for (int nu = 0; nu <= mu; ++nu) {
                CHECK(rel(q_binomial(mu, mu - nu, p), q_binomial(mu, nu, p)) <= 1e-12);
                const double oracle = q_factorial(mu, p) / (q_factorial(nu, p) * q_factorial(mu - nu, p));
                CHECK(rel(q_binomial(mu, nu, p), oracle) <= 1e-12);
            }
        }
    }
}

TEST_CASE("q_pochhammer_inf against a long-product oracle") {
    const QParam qp(0.5);
    CHECK(q_pochhammer_inf(0.0, qp) == 1.0);
    CHECK(q_pochhammer_inf(1.0, qp) == 0.0);
    CHECK(q_pochhammer_inf(0.5, qp) == doctest::Approx(0.2887880951).epsilon(1e-10));
    CHECK(q_pochhammer_inf(0.25, qp) == doctest::Approx(0.5775761902).epsilon(1e-10));
    for (double q : q_grid) {
        const QParam p(q);
        for (double x : {-0.7, 0.1, 0.3, 1.7}) {
            double oracle = 1.0;
            for (int j = 0; j < 5000; ++j) {
                oracle *= 1.0 - x * std::pow(q, j);
            }
            CHECK(rel(q_pochhammer_inf(x, p), oracle) < 1e-12);
        }
    }
}

TEST_CASE("q_gamma values, poles and recurrence") {
    for (double q : q_grid) {
        const QParam p(q);
        CHECK(q_gamma(1.0, p) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_THROWS_AS(q_gamma(0.0, p), PoleError);
        CHECK_THROWS_AS(q_gamma(-2.0, p), PoleError);
        for (int n = 1; n <= 10; ++n) {
            CHECK(std::fabs(q_gamma(n + 1.0, p) - q_factorial(n, p)) <= 1e-12 * q_factorial(n, p));
        }
        for (double t : {0.3, 0.5, 1.7, 2.5, 4.2}) {
            const double lhs = q_gamma(t + 1.0, p);
            CHECK(std::fabs(lhs - q_integer(t, p) * q_gamma(t, p)) <= 1e-10 * std::fabs(lhs));
        }
    }
    CHECK(q_gamma(4.0, QParam(0.5)) == doctest::Approx(2.625).epsilon(1e-13));
    // mpmath: (q;q)_inf/(q^t;q)_inf (1-q)^(1-t), 40 digits
    CHECK(rel(q_gamma(2.5, QParam(0.5)), 1.1905936250275274868) < 1e-13);
    CHECK(rel(q_gamma(0.3, QParam(0.9)), 2.9002109090231308796) < 1e-12);
    // negative non-integer arguments stay finite
    CHECK(std::isfinite(q_gamma(-0.5, QParam(0.5))));
}

TEST_CASE("q_gamma classical limit") {
    const QParam p(1.0 - 1e-6);
    for (double t = 0.1; t <= 10.0; t += 0.1) {
        CHECK(std::fabs(q_integer(t, p) - t) <= 1e-4 * t);
    }
    for (double t : {0.5, 1.5, 2.5, 4.0}) {
        CHECK(std::fabs(q_gamma(t, p) - std::tgamma(t)) <= 1e-3 * std::tgamma(t));
    }
}

TEST_CASE("q_gamma_ratio") {
    const QParam qp(0.5);
    CHECK(q_gamma_ratio(2.0, 2.0, qp) == 1.0);
    CHECK(q_gamma_ratio(3.0, -1.0, qp) == 0.0);
    CHECK(q_gamma_ratio(2.0, 1.0, qp) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(q_gamma_ratio(-1.0, 2.0, qp), PoleError);
    for (double q : q_grid) {
        const QParam p(q);
        for (double a : {0.3, 1.7, 3.2}) {
            for (double b : {0.6, 2.5}) {
                CHECK(rel(q_gamma_ratio(a, b, p), q_gamma(a, p) / q_gamma(b, p)) < 1e-12);
            }
        }
    }
}

TEST_CASE("determinism") {
    const QParam qp(0.37);
    CHECK(q_gamma(2.3, qp) == q_gamma(2.3, qp));
    CHECK(q_pochhammer_inf(0.4, qp) == q_pochhammer_inf(0.4, qp));
}
