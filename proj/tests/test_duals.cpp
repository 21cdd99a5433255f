#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qfd/duals.hpp"
#include "qfd/errors.hpp"
#include "qfd/fracdiff.hpp"

using namespace qfd;

namespace {

const std::vector<double> gamma_grid{0.3, 0.5, 1.0, 1.7, 2.0, 2.5};
const std::vector<double> q_grid{0.2, 0.5, 0.9};

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = u(rng);
    }
    return v;
}

MatrixWindow lower_ones(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            e[j * n + k] = 1.0;
        }
    }
    return MatrixWindow(n, n, e, true);
}

} // namespace

TEST_CASE("Lambda and Omega examples") {
    const QParam qp(0.5);
    CHECK(lambda_matrix(SeqWindow(std::vector<double>(6, 1.0)), 1.0, qp) == lower_ones(6));
    const MatrixWindow l = lambda_matrix(SeqWindow::impulse(5, 0), 0.7, qp);
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(l(j, k) == (j == 0 && k == 0 ? 1.0 : 0.0));
        }
    }
    const std::size_t m = 3;
    const MatrixWindow o = omega_matrix(SeqWindow::impulse(7, m), 1.0, qp);
    for (std::size_t j = 0; j < 7; ++j) {
        for (std::size_t k = 0; k < 7; ++k) {
            CHECK(o(j, k) == (k <= m && m <= j ? 1.0 : 0.0));
        }
    }
    CHECK(omega_matrix(SeqWindow::zeros(6), 0.4, qp) == MatrixWindow(6, 6, std::vector<double>(36, 0.0), true));
}

TEST_CASE("defining equalities of Lambda and Omega") {
    std::mt19937_64 rng(21);
    for (double g : gamma_grid) {
        for (double q : q_grid) {
            const QParam qp(q);
            for (int rep = 0; rep < 5; ++rep) {
                const SeqWindow a(random_vec(rng, 16));
                const SeqWindow x(random_vec(rng, 16));
                const SeqWindow h = apply_forward(x, g, qp);
                const MatrixWindow l = lambda_matrix(a, g, qp);
                const MatrixWindow o = omega_matrix(a, g, qp);
                double partial = 0.0;
                for (std::size_t j = 0; j < 16; ++j) {
                    double lh = 0.0;
                    double oh = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) {
                        lh += l(j, k) * h[k];
                        oh += o(j, k) * h[k];
                    }
                    partial += a[j] * x[j];
                    CHECK(std::fabs(a[j] * x[j] - lh) <= 1e-10 * (1.0 + std::fabs(a[j] * x[j])));
                    CHECK(std::fabs(partial - oh) <= 1e-10 * (1.0 + std::fabs(partial)));
                }
                for (std::size_t j = 1; j < 16; ++j) {
                    for (std::size_t k = 0; k <= j; ++k) {
                        CHECK(o(j, k) == (k < j ? o(j - 1, k) : 0.0) + l(j, k));
                    }
                }
            }
        }
    }
}

TEST_CASE("lemma conditions on reference matrices") {
    const PExponent p2 = PExponent::finite(2);
    const auto id = lemma_mc_condition(MatrixWindow::identity(16), ConditionId::C3_1, p2);
    CHECK(id.last_value() == 1.0);
    CHECK(id.verdict == Verdict::BoundedOnWindow);

    const auto ones = lemma_mc_condition(lower_ones(32), ConditionId::C3_1, p2);
    CHECK(ones.last_value() == 32.0);
    CHECK(ones.verdict == Verdict::Growing);

    std::vector<double> e(64 * 64);
    for (std::size_t j = 0; j < 64; ++j) {
        for (std::size_t k = 0; k < 64; ++k) {
            e[j * 64 + k] = 1.0 / static_cast<double>(j + 1);
        }
    }
    const MatrixWindow harmonic(64, 64, e);
    const auto lim = lemma_mc_condition(harmonic, ConditionId::C3_2, p2);
    // window 2 has no complete column yet
    CHECK(lim.values[0].value == 0.0);
    for (std::size_t i = 2; i < lim.values.size(); ++i) {
        CHECK(lim.values[i].value < lim.values[i - 1].value);
    }
    const auto zero_lim = lemma_mc_condition(harmonic, ConditionId::C3_9, p2);
    CHECK(zero_lim.last_value() == doctest::Approx(1.0 / 49.0));

    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_5, PExponent::finite(1)), InvalidCondition);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_6, p2), InvalidCondition);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_7, PExponent::infinity()), InvalidCondition);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::T1, p2), InvalidCondition);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_4, p2, {4, 21}), LimitError);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_1, p2, {8, 4}), ValidationError);
    CHECK_THROWS_AS(lemma_mc_condition(harmonic, ConditionId::C3_1, p2, {65}), ValidationError);
}

TEST_CASE("alpha dual") {
    const QParam qp(0.5);
    const PExponent p2 = PExponent::finite(2);
    std::vector<double> fin(16, 0.0);
    fin[0] = 1.0;
    fin[1] = -0.5;
    fin[2] = 2.0;
    const auto bounded = alpha_dual_check(SeqWindow(fin), 1.0, qp, p2, {4, 8, 12});
    CHECK(bounded.verdict == Verdict::BoundedOnWindow);
    CHECK(bounded.parts.size() == 1);
    CHECK(bounded.parts[0].id == ConditionId::Sp);
    CHECK(bounded.parts[0].values[0].value == bounded.parts[0].values[2].value);

    const auto grows = alpha_dual_check(SeqWindow(std::vector<double>(16, 1.0)), 1.0, qp, p2, {4, 8, 12});
    CHECK(grows.verdict == Verdict::Growing);
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(grows.parts[0].values[i].value > grows.parts[0].values[i - 1].value);
    }

    const auto zero = alpha_dual_check(SeqWindow::zeros(10), 0.5, qp, p2);
    CHECK(zero.parts[0].last_value() == 0.0);
    CHECK(zero.verdict == Verdict::BoundedOnWindow);

    // regime dispatch, p = 1 on the lower branch
    CHECK(alpha_dual_check(SeqWindow(fin), 0.5, qp, PExponent::finite(1)).parts[0].id == ConditionId::S);
    CHECK(alpha_dual_check(SeqWindow(fin), 0.5, qp, PExponent::finite(1)).parts[0].label == "C3_7");
    CHECK(alpha_dual_check(SeqWindow(fin), 0.5, qp, PExponent::finite(1.5)).parts[0].label == "C3_8");
    CHECK(alpha_dual_check(SeqWindow(fin), 0.5, qp, PExponent::infinity()).parts[0].label == "C3_4 (p'=1)");
    CHECK_THROWS_AS(alpha_dual_check(SeqWindow(std::vector<double>(24, 1.0)), 0.5, qp, p2, {21}), LimitError);
}

TEST_CASE("beta and gamma duals") {
    const QParam qp(0.5);
    const PExponent p2 = PExponent::finite(2);
    const auto imp = beta_dual_check(SeqWindow::impulse(16, 0), 1.0, qp, p2);
    CHECK(imp.parts.size() == 2);
    CHECK(imp.parts[0].id == ConditionId::T1);
    CHECK(imp.parts[0].last_value() == 0.0);
    CHECK(imp.parts[1].id == ConditionId::T2);
    CHECK(imp.parts[1].last_value() == 1.0);
    CHECK(imp.verdict == Verdict::BoundedOnWindow);

    const auto zero = beta_dual_check(SeqWindow::zeros(16), 0.5, qp, PExponent::infinity());
    for (const auto& r : zero.parts) {
        CHECK(r.last_value() == 0.0);
    }
    CHECK(zero.verdict == Verdict::BoundedOnWindow);

    // alternating unit multipliers: omega_jk oscillates with j in every column
    std::vector<double> alt(10);
    for (std::size_t j = 0; j < 10; ++j) {
        alt[j] = j % 2 ? -1.0 : 1.0;
    }
    const auto osc = beta_dual_check(SeqWindow(alt), 1.0, qp, p2, {4, 6, 8, 10});
    CHECK(osc.parts[0].verdict != Verdict::BoundedOnWindow);
    CHECK(osc.parts[0].last_value() >= 1.0);

    CHECK(beta_dual_check(SeqWindow(alt), 1.0, qp, PExponent::finite(1)).parts[1].id == ConditionId::T3);
    CHECK(beta_dual_check(SeqWindow(alt), 1.0, qp, PExponent::infinity()).parts[1].id == ConditionId::T4);

    const auto gi = gamma_dual_check(SeqWindow::impulse(16, 0), 1.0, qp, p2);
    CHECK(gi.parts.size() == 1);
    CHECK(gi.parts[0].last_value() == 1.0);
    CHECK(gi.verdict == Verdict::BoundedOnWindow);
    CHECK(gamma_dual_check(SeqWindow::zeros(8), 1.0, qp, p2).parts[0].last_value() == 0.0);
    CHECK(gamma_dual_check(SeqWindow::zeros(8), 1.0, qp, PExponent::finite(0.5)).parts[0].id == ConditionId::T3);
    CHECK(gamma_dual_check(SeqWindow::zeros(8), 1.0, qp, PExponent::infinity()).parts[0].label == "C3_1 (p'=1)");
}

TEST_CASE("verdict classification") {
    CHECK(classify_bound({{2, 1.0}, {4, 1.0}}) == Verdict::BoundedOnWindow);
    CHECK(classify_bound({{2, 2.0}, {4, 4.0}, {8, 8.0}}) == Verdict::Growing);
    CHECK(classify_bound({{2, 1.0}, {4, 1.5}, {8, 1.6}}) == Verdict::Inconclusive);
    CHECK(classify_limit({{2, 1.0}, {4, 0.0}}, 1.0) == Verdict::BoundedOnWindow);
    CHECK(classify_limit({{2, 1.0}, {4, 2.0}}, 1.0) == Verdict::Growing);
    CHECK(classify_limit({{2, 1.0}, {4, 0.5}}, 1.0) == Verdict::Inconclusive);
    CHECK(combine(Verdict::BoundedOnWindow, Verdict::Inconclusive) == Verdict::Inconclusive);
    CHECK(combine(Verdict::Growing, Verdict::Inconclusive) == Verdict::Growing);
    CHECK(default_windows(20) == std::vector<std::size_t>{2, 4, 8, 16, 20});
    CHECK(default_row_limits(20) == std::vector<std::size_t>{5, 10, 15, 20});
}
