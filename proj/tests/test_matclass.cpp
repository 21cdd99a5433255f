#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "qfd/errors.hpp"
#include "qfd/fracdiff.hpp"
#include "qfd/matclass.hpp"
#include "qfd/spaces.hpp"

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

MatrixWindow random_triangular(std::mt19937_64& rng, std::size_t n) {
    auto e = random_vec(rng, n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            e[j * n + k] = 0.0;
        }
    }
    return MatrixWindow(n, n, e, true);
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

std::vector<int> numbers_of(const std::vector<ConditionReport>& reports) {
    std::vector<int> out;
    for (const auto& r : reports) {
        const int n = std::stoi(r.label.substr(r.label.rfind('#') + 1));
        if (out.empty() || out.back() != n) {
            out.push_back(n);
        }
    }
    return out;
}

} // namespace

TEST_CASE("Psi^(j) examples") {
    const QParam qp(0.5);
    const std::size_t n = 6;
    for (std::size_t j = 0; j < n; ++j) {
        const MatrixWindow p = psi_j_matrix(MatrixWindow::identity(n), j, 1.0, qp);
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(p(m, k) == (k <= j && j <= m ? 1.0 : 0.0));
            }
        }
    }
    std::vector<double> e(n * n, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        e[2 * n + k] = 0.0;
    }
    const MatrixWindow zero_row = psi_j_matrix(MatrixWindow(n, n, e), 2, 0.5, qp);
    for (double v : zero_row.entries()) {
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(psi_j_matrix(MatrixWindow::identity(n), n, 0.5, qp), IndexError);
}

TEST_CASE("Psi examples and truncation") {
    const QParam qp(0.5);
    const PsiMatrix id = psi_matrix(MatrixWindow::identity(5), 1.0, qp);
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(id.psi(j, k) == (k <= j ? 1.0 : 0.0));
        }
        CHECK(id.tail_bound[j] == 0.0);
    }

    // one finitely supported row inside a general matrix
    std::vector<double> fin(4 * 8, 0.0);
    fin[0] = 1.0;
    fin[1] = 2.0;
    const PsiMatrix pf = psi_matrix(MatrixWindow(4, 8, fin), 0.5, qp);
    CHECK(pf.tail_bound[0] == 0.0);
    CHECK(pf.psi(0, 0) == doctest::Approx(1.0 + 2.0 * q_integer(0.5, qp)).epsilon(1e-15));

    // geometric row r^v against a 200-term mpmath oracle: psi_k = r^k S,
    // S = sum_i e_i r^i
    const double r = 0.1;
    const double s = 1.0641539864936571466;
    const std::size_t n = 20;
    std::vector<double> geo(n);
    for (std::size_t v = 0; v < n; ++v) {
        geo[v] = std::pow(r, static_cast<double>(v));
    }
    const PsiMatrix pg = psi_matrix(MatrixWindow(1, n, geo), 0.5, qp);
    CHECK(pg.tail_bound[0] > 0.0);
    CHECK(pg.tail_bound[0] < 1e-14);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(std::fabs(pg.psi(0, k) - std::pow(r, static_cast<double>(k)) * s) <= 1e-10);
    }

    // a row that does not decay cannot be truncated
    CHECK_THROWS_AS(psi_matrix(MatrixWindow(1, n, std::vector<double>(n, 1.0)), 0.5, qp), TailError);
}

TEST_CASE("inverse coefficient sup") {
    const QParam qp(0.5);
    CHECK(inverse_coeff_sup(0.5, qp) == 1.0);
    CHECK(inverse_coeff_sup(1.0, qp) == doctest::Approx(1.0));
    const double limit = q_pochhammer_inf(qp.pow(2.5), qp) / q_pochhammer_inf(0.5, qp);
    CHECK(inverse_coeff_sup(2.5, qp) == doctest::Approx(limit).epsilon(1e-14));
    const auto e = inverse_coeffs(2.5, qp, 200);
    for (double v : e.coeffs()) {
        CHECK(v <= inverse_coeff_sup(2.5, qp) * (1.0 + 1e-14));
    }
}

TEST_CASE("Psi identity on triangular matrices") {
    std::mt19937_64 rng(41);
    for (double g : gamma_grid) {
        for (double q : q_grid) {
            const QParam qp(q);
            const MatrixWindow phi = random_triangular(rng, 12);
            const SeqWindow x(random_vec(rng, 12));
            CHECK(thm41_consistency(phi, x, g, qp) <= 1e-10);
            CHECK(thm41_consistency(phi, SeqWindow::zeros(12), g, qp) == 0.0);
        }
    }
    CHECK_THROWS_AS(thm41_consistency(MatrixWindow::identity(4), SeqWindow::zeros(5), 0.5, QParam(0.5)),
                    ValidationError);
}

TEST_CASE("Psi family coherence") {
    std::mt19937_64 rng(8);
    const QParam qp(0.6);
    const MatrixWindow phi = random_triangular(rng, 10);
    const PsiFamily f(phi, 1.3, qp);
    for (std::size_t j = 0; j < 10; ++j) {
        for (std::size_t k = 0; k < 10; ++k) {
            CHECK(f.psi_j(j)(9, k) == f.psi()(j, k));
        }
    }
    // identity: Psi^(j) h reproduces the Schauder expansion of g at index j
    const SeqWindow x(random_vec(rng, 10));
    const SeqWindow h = apply_forward(x, 1.3, qp);
    const PsiFamily idf(MatrixWindow::identity(10), 1.3, qp);
    for (std::size_t j = 0; j < 10; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 10; ++k) {
            s += idf.psi()(j, k) * h[k];
        }
        CHECK(std::fabs(s - x[j]) <= 1e-10);
    }
}

TEST_CASE("Psi-family conditions") {
    const QParam qp(0.5);
    const PExponent p2 = PExponent::finite(2);
    const PsiFamily zero(MatrixWindow::zeros(8, 8), 0.5, qp);
    for (ConditionId c : {ConditionId::MT_ADD, ConditionId::MT1, ConditionId::MT2, ConditionId::MT3,
                          ConditionId::MT4, ConditionId::MT5}) {
        const auto r = mtc_condition(zero, c, p2);
        CHECK(r.last_value() == 0.0);
        CHECK(r.verdict == Verdict::BoundedOnWindow);
    }
    const PsiFamily id(MatrixWindow::identity(16), 1.0, qp);
    CHECK(mtc_condition(id, ConditionId::MT2, p2).last_value() == 1.0);
    CHECK(mtc_condition(id, ConditionId::MT2, p2).verdict == Verdict::BoundedOnWindow);

    const PsiFamily ones(lower_ones(32), 1.0, qp);
    const auto add = mtc_condition(ones, ConditionId::MT_ADD, p2);
    CHECK(add.verdict == Verdict::Growing);
    for (std::size_t i = 1; i < add.values.size(); ++i) {
        CHECK(add.values[i].value > add.values[i - 1].value);
    }
    CHECK_THROWS_AS(mtc_condition(id, ConditionId::MT3, PExponent::finite(1)), InvalidCondition);
    CHECK_THROWS_AS(mtc_condition(id, ConditionId::C3_1, p2), InvalidCondition);
    CHECK_THROWS_AS(mtc_condition(id, ConditionId::MT1, p2, {17}), ValidationError);
}

TEST_CASE("Table 1 transcription") {
    using S = DomainSource;
    using T = ClassTarget;
    const std::vector<std::pair<std::pair<S, T>, std::vector<int>>> table{
        {{S::L1Domain, T::L1}, {1, 11}},      {{S::L1Domain, T::C0}, {1, 5, 13}},
        {{S::L1Domain, T::C}, {1, 6, 13}},    {{S::L1Domain, T::Linf}, {1, 13}},
        {{S::LpDomain, T::L1}, {2, 12}},      {{S::LpDomain, T::C0}, {2, 5, 10}},
        {{S::LpDomain, T::C}, {2, 6, 10}},    {{S::LpDomain, T::Linf}, {2, 10}},
        {{S::LinfDomain, T::L1}, {3, 4}},     {{S::LinfDomain, T::C0}, {3, 8}},
        {{S::LinfDomain, T::C}, {3, 6, 9}},   {{S::LinfDomain, T::Linf}, {3, 7}},
    };
    std::set<std::vector<int>> distinct;
    for (const auto& [cell, bundle] : table) {
        CHECK(table1_bundle(cell.first, cell.second) == bundle);
        CHECK_FALSE(bundle.empty());
        distinct.insert(bundle);
    }
    CHECK(distinct.size() == table.size());
    for (S s : {S::L1Domain, S::LpDomain, S::LinfDomain}) {
        CHECK(table1_bundle(s, T::BS) == table1_bundle(s, T::Linf));
        CHECK(table1_bundle(s, T::CS) == table1_bundle(s, T::C));
        CHECK(table1_bundle(s, T::CS0) == table1_bundle(s, T::C0));
        CHECK(table1_bundle(s, T::QCesaro1) == table1_bundle(s, T::L1));
        CHECK(table1_bundle(s, T::QCesaroInf) == table1_bundle(s, T::Linf));
    }
}

TEST_CASE("Table 2 transcription") {
    using S = ClassicalSource;
    using T = DomainTarget;
    CHECK(table2_bundle(S::L1, T::LpDomain) == std::vector<std::string>{"A'"});
    CHECK(table2_bundle(S::L1, T::LinfDomain) == std::vector<std::string>{"13"});
    for (S s : {S::C0, S::C, S::Linf}) {
        CHECK(table2_bundle(s, T::LpDomain) == std::vector<std::string>{"B'"});
        CHECK(table2_bundle(s, T::LinfDomain) == std::vector<std::string>{"7"});
    }
}

TEST_CASE("class_check dispatch") {
    ClassQuery q;
    q.source = DomainSource::LinfDomain;
    q.target = ClassTarget::Linf;
    const auto r = class_check(q, MatrixWindow::identity(12));
    CHECK(numbers_of(r) == std::vector<int>{3, 7});
    CHECK(r.size() == 3); // #3 is MT1 together with MT5
    q.source = DomainSource::LpDomain;
    q.target = ClassTarget::L1;
    CHECK(numbers_of(class_check(q, MatrixWindow::identity(12))) == std::vector<int>{2, 12});
    q.p = PExponent::finite(1);
    CHECK_THROWS_AS(class_check(q, MatrixWindow::identity(12)), ValidationError);
    q.p = PExponent::finite(2);
    q.row_limit = 21;
    CHECK_THROWS_AS(class_check(q, MatrixWindow::identity(24)), LimitError);

    // zero matrix: every condition of every cell holds with value 0
    const MatrixWindow z = MatrixWindow::zeros(10, 10);
    for (DomainSource s : {DomainSource::L1Domain, DomainSource::LpDomain, DomainSource::LinfDomain}) {
        for (ClassTarget t : {ClassTarget::L1, ClassTarget::C0, ClassTarget::C, ClassTarget::Linf, ClassTarget::BS,
                              ClassTarget::CS, ClassTarget::CS0, ClassTarget::QCesaro1, ClassTarget::QCesaro0,
                              ClassTarget::QCesaroC, ClassTarget::QCesaroInf}) {
            ClassQuery zq;
            zq.source = s;
            zq.target = t;
            for (const auto& rep : class_check(zq, z)) {
                CHECK(rep.last_value() == 0.0);
                CHECK(rep.verdict == Verdict::BoundedOnWindow);
            }
        }
    }
    for (ClassicalSource s : {ClassicalSource::L1, ClassicalSource::C0, ClassicalSource::C, ClassicalSource::Linf}) {
        for (DomainTarget t : {DomainTarget::LpDomain, DomainTarget::LinfDomain}) {
            for (const auto& rep : class_check_into_domain(s, t, z, 0.5, QParam(0.5), PExponent::finite(2))) {
                CHECK(rep.last_value() == 0.0);
                CHECK(rep.verdict == Verdict::BoundedOnWindow);
            }
        }
    }
}

TEST_CASE("Upsilon") {
    const QParam qp(0.5);
    const MatrixWindow u = upsilon_matrix(MatrixWindow::identity(5), 1.0, qp);
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(u(j, k) == (j == k ? 1.0 : j == k + 1 ? -1.0 : 0.0));
        }
    }
    std::mt19937_64 rng(6);
    const MatrixWindow phi(7, 5, random_vec(rng, 35));
    CHECK(upsilon_matrix(phi, 0.0, qp) == phi);
    for (double g : gamma_grid) {
        for (double q : q_grid) {
            const MatrixWindow up = upsilon_matrix(phi, g, QParam(q));
            for (std::size_t k = 0; k < phi.cols(); ++k) {
                const SeqWindow back = apply_inverse(SeqWindow(up.column(k)), g, QParam(q));
                for (std::size_t j = 0; j < phi.rows(); ++j) {
                    CHECK(std::fabs(back[j] - phi(j, k)) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("conditions A' and B'") {
    const PExponent p2 = PExponent::finite(2);
    const auto z = conditions_a_b_prime(MatrixWindow::zeros(8, 8), p2, 8);
    CHECK(z[0].last_value() == 0.0);
    CHECK(z[1].last_value() == 0.0);
    const auto id = conditions_a_b_prime(MatrixWindow::identity(8), p2, 8);
    CHECK(id[0].last_value() == 1.0);
    CHECK(id[1].last_value() == 8.0);
    CHECK_THROWS_AS(condition_b_prime(MatrixWindow::identity(24), p2, 21), LimitError);

    // geometric rows r^k: B' against a reverse enumeration over column subsets
    const double r = 0.6;
    std::vector<double> e(8 * 8);
    for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) {
            e[j * 8 + k] = (j % 2 ? -1.0 : 1.0) * std::pow(r, static_cast<double>(k + j));
        }
    }
    const MatrixWindow geo(8, 8, e);
    double oracle = 0.0;
    for (unsigned mask = 255; mask >= 1; --mask) {
        double v = 0.0;
        for (std::size_t j = 0; j < 8; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 8; ++k) {
                if (mask >> k & 1U) {
                    s += geo(j, k);
                }
            }
            v += s * s;
        }
        oracle = std::max(oracle, v);
    }
    CHECK(condition_b_prime(geo, p2, 8).last_value() == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("Sigma and q-Cesaro composite") {
    CHECK(sigma_matrix(MatrixWindow::identity(6)) == lower_ones(6));
    const MatrixWindow diff = upsilon_matrix(MatrixWindow::identity(6), 1.0, QParam(0.5));
    CHECK(sigma_matrix(diff) == MatrixWindow::identity(6));

    const QParam qp(0.5);
    const MatrixWindow c = cesaro_composite(MatrixWindow::identity(4), qp);
    CHECK(c(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(c(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(cesaro_composite(MatrixWindow::zeros(5, 5), qp) == MatrixWindow::zeros(5, 5));
    for (double q : q_grid) {
        const MatrixWindow w = cesaro_composite(MatrixWindow::identity(30), QParam(q));
        for (std::size_t j = 0; j < 30; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 30; ++k) {
                s += w(j, k);
            }
            CHECK(std::fabs(s - 1.0) <= 1e-14);
        }
    }
}
