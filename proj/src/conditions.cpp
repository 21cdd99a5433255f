#include "qfd/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfd {

std::string to_string(ConditionId id) {
    switch (id) {
    case ConditionId::C3_1: return "C3_1";
    case ConditionId::C3_2: return "C3_2";
    case ConditionId::C3_3: return "C3_3";
    case ConditionId::C3_4: return "C3_4";
    case ConditionId::C3_5: return "C3_5";
    case ConditionId::C3_6: return "C3_6";
    case ConditionId::C3_7: return "C3_7";
    case ConditionId::C3_8: return "C3_8";
    case ConditionId::C3_9: return "C3_9";
    case ConditionId::T1: return "T1";
    case ConditionId::T2: return "T2";
    case ConditionId::T3: return "T3";
    case ConditionId::T4: return "T4";
    case ConditionId::S: return "S";
    case ConditionId::Sp: return "Sp";
    case ConditionId::MT_ADD: return "MT_ADD";
    case ConditionId::MT1: return "MT1";
    case ConditionId::MT2: return "MT2";
    case ConditionId::MT3: return "MT3";
    case ConditionId::MT4: return "MT4";
    case ConditionId::MT5: return "MT5";
    case ConditionId::A_PRIME: return "A_PRIME";
    case ConditionId::B_PRIME: return "B_PRIME";
    }
    return "unknown";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::BoundedOnWindow: return "bounded-on-window";
    case Verdict::Growing: return "growing";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict combine(Verdict a, Verdict b) noexcept {
    if (a == Verdict::Growing || b == Verdict::Growing) {
        return Verdict::Growing;
    }
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) {
        return Verdict::Inconclusive;
    }
    return Verdict::BoundedOnWindow;
}

std::vector<std::size_t> default_windows(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t w = 2; w < n; w *= 2) {
        out.push_back(w);
    }
    out.push_back(std::max<std::size_t>(n, 1));
    return out;
}

Verdict classify_bound(const std::vector<WindowValue>& values) {
    const double last = values.back().value;
    if (values.size() == 1) {
        return last == 0.0 ? Verdict::BoundedOnWindow : Verdict::Inconclusive;
    }
    const WindowValue& a = values[values.size() - 2];
    const WindowValue& b = values.back();
    if (std::fabs(b.value - a.value) <= 1e-9 * std::max(1.0, std::fabs(b.value))) {
        return Verdict::BoundedOnWindow;
    }
    if (values.size() < 3) {
        return Verdict::Inconclusive;
    }
    const WindowValue& z = values[values.size() - 3];
    const double rate_prev = (a.value - z.value) / static_cast<double>(a.window - z.window);
    const double rate_last = (b.value - a.value) / static_cast<double>(b.window - a.window);
    // Per-unit increments that shrink by less than half between steps are
    // reported as growth (sqrt n, n and n^2 all qualify).
    if (rate_last > 0.0 && rate_last >= 0.5 * rate_prev) {
        return Verdict::Growing;
    }
    return Verdict::Inconclusive;
}

Verdict classify_limit(const std::vector<WindowValue>& values, double scale) {
    const double last = values.back().value;
    if (last <= 1e-9 * scale) {
        return Verdict::BoundedOnWindow;
    }
    double earlier = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        earlier = std::max(earlier, values[i].value);
    }
    if (values.size() >= 2 && last >= earlier) {
        return Verdict::Growing;
    }
    return Verdict::Inconclusive;
}

std::size_t tail_start(std::size_t n) noexcept {
    if (n < 2) {
        return 0;
    }
    return n - std::max<std::size_t>(2, n / 4);
}

namespace eval {

std::pair<double, std::size_t> row_power_sup(const MatrixWindow& m, std::size_t n, double exponent) {
    const std::size_t rows = std::min(n, m.rows());
    const std::size_t cols = std::min(n, m.cols());
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < rows; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < cols; ++k) {
            const double a = std::fabs(m(j, k));
            s += exponent == 1.0 ? a : std::pow(a, exponent);
        }
        if (s > best) {
            best = s;
            arg = j;
        }
    }
    return {best, arg};
}

double entry_sup(const MatrixWindow& m, std::size_t n, double exponent) {
    const std::size_t rows = std::min(n, m.rows());
    const std::size_t cols = std::min(n, m.cols());
    double best = 0.0;
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t k = 0; k < cols; ++k) {
            best = std::max(best, std::fabs(m(j, k)));
        }
    }
    return exponent == 1.0 ? best : std::pow(best, exponent);
}

std::pair<double, std::size_t> column_tail_spread(const MatrixWindow& m, std::size_t n) {
    const std::size_t rows = std::min(n, m.rows());
    const std::size_t ts = tail_start(rows);
    const std::size_t cols = std::min(ts, m.cols());
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < cols; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t j = ts; j < rows; ++j) {
            lo = std::min(lo, m(j, k));
            hi = std::max(hi, m(j, k));
        }
        if (hi - lo > best) {
            best = hi - lo;
            arg = k;
        }
    }
    return {best, arg};
}

double column_tail_abs(const MatrixWindow& m, std::size_t n) {
    const std::size_t rows = std::min(n, m.rows());
    const std::size_t ts = tail_start(rows);
    const std::size_t cols = std::min(ts, m.cols());
    double best = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
        for (std::size_t j = ts; j < rows; ++j) {
            best = std::max(best, std::fabs(m(j, k)));
        }
    }
    return best;
}

double row_mass_escape(const MatrixWindow& m, std::size_t n) {
    const std::size_t rows = std::min(n, m.rows());
    if (rows == 0) {
        return 0.0;
    }
    const std::size_t cols = std::min(n, m.cols());
    const std::size_t ts = tail_start(rows);
    double s = 0.0;
    for (std::size_t k = ts; k < cols; ++k) {
        s += std::fabs(m(rows - 1, k));
    }
    return s;
}

double scale(const MatrixWindow& m, std::size_t n) {
    return std::max(1.0, entry_sup(m, n, 1.0));
}

} // namespace eval

} // namespace qfd
