#include "qfd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qfd/duals.hpp"
#include "qfd/errors.hpp"
#include "qfd/fracdiff.hpp"
#include "qfd/matclass.hpp"
#include "qfd/spaces.hpp"

namespace qfd::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path.empty()) {
        throw ValidationError("input: this command needs --input");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("input: cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError("input: read failure on '" + path + "'");
    }
    return ss.str();
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool looks_like_json(const std::string& text) {
    const std::string_view t = trim(text);
    return !t.empty() && t.front() == '[';
}

double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ValidationError("input: line " + std::to_string(line) + " is not a real number: '" + std::string(tok) +
                              "'");
    }
    return v;
}

std::vector<double> json_reals(const json& arr, const std::string& what) {
    if (!arr.is_array()) {
        throw ValidationError("input: " + what + " must be a JSON array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number()) {
            throw ValidationError("input: " + what + " holds a non-numeric entry");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("input: malformed JSON: ") + e.what());
    }
}

std::vector<double> read_sequence(const std::string& path) {
    const std::string text = read_file(path);
    if (looks_like_json(text)) {
        return json_reals(parse_json(text), "sequence");
    }
    std::vector<double> out;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string_view t = trim(line);
        if (!t.empty()) {
            out.push_back(parse_real(t, n));
        }
    }
    return out;
}

MatrixWindow read_matrix(const std::string& path) {
    const std::string text = read_file(path);
    if (!looks_like_json(text)) {
        throw ValidationError("input: a matrix must be a JSON array of row arrays");
    }
    const json doc = parse_json(text);
    std::vector<std::vector<double>> rows;
    for (const json& r : doc) {
        rows.push_back(json_reals(r, "matrix row"));
    }
    if (rows.empty()) {
        throw ValidationError("window must be ≥ 1");
    }
    return MatrixWindow::from_rows(rows);
}

SeqWindow windowed(std::vector<double> v, const std::optional<std::size_t>& window) {
    SeqWindow s(std::move(v));
    if (!window) {
        return s;
    }
    if (*window > s.size()) {
        throw ValidationError("window: " + std::to_string(*window) + " exceeds the input length " +
                              std::to_string(s.size()));
    }
    return s.prefix(*window);
}

std::string fmt(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

json report_json(const ConditionReport& r) {
    json values = json::array();
    for (const WindowValue& w : r.values) {
        values.push_back({{"window", w.window}, {"value", w.value}});
    }
    return {{"id", to_string(r.id)},     {"label", r.label},   {"verdict", to_string(r.verdict)},
            {"detail", r.detail},        {"witness", r.witness}, {"values", values}};
}

void report_csv(std::ostream& os, const ConditionReport& r) {
    for (const WindowValue& w : r.values) {
        os << r.label << ',' << to_string(r.id) << ',' << w.window << ',' << fmt(w.value) << ','
           << to_string(r.verdict) << '\n';
    }
}

// Artifact: either a flat list of reals, a set of named scalars, or a list
// of condition reports with an overall verdict.
struct Artifact {
    enum class Shape { Sequence, Scalars, Reports, Norm } shape = Shape::Sequence;
    std::vector<double> seq;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<ConditionReport> reports;
    std::string verdict;
    std::string cell;
    NormReport norm;
};

std::string render(const Artifact& a, Format f) {
    std::ostringstream os;
    if (f == Format::Csv) {
        switch (a.shape) {
        case Artifact::Shape::Sequence:
            for (double v : a.seq) {
                os << fmt(v) << '\n';
            }
            break;
        case Artifact::Shape::Scalars:
            for (const auto& [k, v] : a.scalars) {
                os << k << ',' << fmt(v) << '\n';
            }
            break;
        case Artifact::Shape::Norm:
            os << "checkpoint,partial\n";
            for (std::size_t i = 0; i < a.norm.checkpoints.size(); ++i) {
                os << a.norm.checkpoints[i] << ',' << fmt(a.norm.partials[i]) << '\n';
            }
            break;
        case Artifact::Shape::Reports:
            os << "label,id,window,value,verdict\n";
            for (const ConditionReport& r : a.reports) {
                report_csv(os, r);
            }
            break;
        }
        return os.str();
    }
    json doc;
    switch (a.shape) {
    case Artifact::Shape::Sequence: doc = a.seq; break;
    case Artifact::Shape::Scalars:
        doc = json::object();
        for (const auto& [k, v] : a.scalars) {
            doc[k] = v;
        }
        break;
    case Artifact::Shape::Norm:
        doc = {{"value", a.norm.value},
               {"p", a.norm.p.to_string()},
               {"window", a.norm.window},
               {"checkpoints", a.norm.checkpoints},
               {"partials", a.norm.partials}};
        break;
    case Artifact::Shape::Reports: {
        json parts = json::array();
        for (const ConditionReport& r : a.reports) {
            parts.push_back(report_json(r));
        }
        doc = {{"verdict", a.verdict}, {"reports", parts}};
        if (!a.cell.empty()) {
            doc["cell"] = a.cell;
        }
        break;
    }
    }
    return doc.dump(2) + "\n";
}

CoeffStream stream_of(const std::string& kind, double gamma, const QParam& qp, std::size_t k, const char* flag) {
    if (kind == "forward") {
        return forward_coeffs(gamma, qp, k);
    }
    if (kind == "inverse") {
        return inverse_coeffs(gamma, qp, k);
    }
    throw ValidationError(std::string(flag) + ": expected forward or inverse, got '" + kind + "'");
}

std::vector<std::size_t> row_limits_of(std::size_t row_limit, std::size_t rows) {
    if (row_limit == 0) {
        return {};
    }
    if (row_limit > rows) {
        throw ValidationError("row-limit: " + std::to_string(row_limit) + " exceeds the window " +
                              std::to_string(rows));
    }
    return default_row_limits(row_limit);
}

Artifact dual_artifact(const DualReport& d) {
    Artifact a;
    a.shape = Artifact::Shape::Reports;
    a.reports = d.parts;
    a.verdict = to_string(d.verdict);
    return a;
}

template <class E>
std::optional<E> lookup(const std::string& name, std::initializer_list<std::pair<const char*, E>> table) {
    for (const auto& [k, v] : table) {
        if (name == k) {
            return v;
        }
    }
    return std::nullopt;
}

Artifact class_artifact(const JobSpec& s, const QParam& qp, const PExponent& p) {
    const MatrixWindow phi = read_matrix(s.input);
    Artifact a;
    a.shape = Artifact::Shape::Reports;
    const auto dsrc = lookup<DomainSource>(s.source, {{"l1_domain", DomainSource::L1Domain},
                                                      {"lp_domain", DomainSource::LpDomain},
                                                      {"linf_domain", DomainSource::LinfDomain}});
    const auto csrc = lookup<ClassicalSource>(
        s.source, {{"l1", ClassicalSource::L1}, {"c0", ClassicalSource::C0}, {"c", ClassicalSource::C},
                   {"linf", ClassicalSource::Linf}});
    const std::size_t window = s.window.value_or(0);
    if (dsrc) {
        const auto tgt = lookup<ClassTarget>(
            s.target, {{"l1", ClassTarget::L1},
                       {"c0", ClassTarget::C0},
                       {"c", ClassTarget::C},
                       {"linf", ClassTarget::Linf},
                       {"bs", ClassTarget::BS},
                       {"cs", ClassTarget::CS},
                       {"cs0", ClassTarget::CS0},
                       {"qcesaro_1", ClassTarget::QCesaro1},
                       {"qcesaro_0", ClassTarget::QCesaro0},
                       {"qcesaro_c", ClassTarget::QCesaroC},
                       {"qcesaro_inf", ClassTarget::QCesaroInf}});
        if (!tgt) {
            throw ValidationError("target: unknown class '" + s.target + "' for a domain source");
        }
        ClassQuery query;
        query.source = *dsrc;
        query.target = *tgt;
        query.p = p;
        query.gamma = s.gamma;
        query.qp = qp;
        query.window = window;
        query.row_limit = s.row_limit;
        a.reports = class_check(query, phi);
        a.cell = to_string(*dsrc) + " -> " + to_string(*tgt);
    } else if (csrc) {
        const auto tgt = lookup<DomainTarget>(
            s.target, {{"lp_domain", DomainTarget::LpDomain}, {"linf_domain", DomainTarget::LinfDomain}});
        if (!tgt) {
            throw ValidationError("target: unknown class '" + s.target + "' for a classical source");
        }
        a.reports = class_check_into_domain(*csrc, *tgt, phi, s.gamma, qp, p, window, s.row_limit);
        a.cell = to_string(*csrc) + " -> " + to_string(*tgt);
    } else {
        throw ValidationError("source: unknown class '" + s.source + "'");
    }
    Verdict v = Verdict::BoundedOnWindow;
    for (const ConditionReport& r : a.reports) {
        v = combine(v, r.verdict);
    }
    a.verdict = to_string(v);
    return a;
}

Artifact execute(const JobSpec& s) {
    if (s.window && *s.window == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    if (s.row_limit > kernels::max_subset_rows) {
        throw LimitError("row-limit: " + std::to_string(s.row_limit) + " exceeds the enumeration cap of " +
                         std::to_string(kernels::max_subset_rows));
    }
    const QParam qp = [&] {
        try {
            return QParam(s.q);
        } catch (const ValidationError& e) {
            throw ValidationError(std::string("q: ") + e.what());
        }
    }();
    const QReal gamma = [&] {
        try {
            return QReal(s.gamma);
        } catch (const ValidationError& e) {
            throw ValidationError(std::string("gamma: ") + e.what());
        }
    }();
    const PExponent p = [&] {
        try {
            return PExponent::parse(s.p);
        } catch (const ValidationError& e) {
            throw ValidationError(std::string("p: ") + e.what());
        }
    }();

    Artifact a;
    const std::string& c = s.command;
    if (c == "coeffs") {
        a.seq = stream_of(s.kind, gamma, qp, s.k, "kind").coeffs();
    } else if (c == "transform") {
        a.seq = apply_forward(windowed(read_sequence(s.input), s.window), gamma, qp).vector();
    } else if (c == "invert") {
        a.seq = apply_inverse(windowed(read_sequence(s.input), s.window), gamma, qp).vector();
    } else if (c == "verify-inverse") {
        a.shape = Artifact::Shape::Scalars;
        a.scalars = {{"residual", verify_inverse(gamma, qp, s.window.value_or(30))}};
    } else if (c == "semigroup-defect") {
        a.shape = Artifact::Shape::Scalars;
        a.scalars = {{"defect", semigroup_defect(s.mu, s.nu, qp, s.window.value_or(8))}};
    } else if (c == "norm") {
        a.shape = Artifact::Shape::Norm;
        a.norm = domain_norm(windowed(read_sequence(s.input), s.window), gamma, qp, p);
    } else if (c == "basis") {
        a.seq = schauder_basis_vector(s.k, gamma, qp, s.window.value_or(16)).vector();
    } else if (c == "alpha-dual") {
        const SeqWindow seq = windowed(read_sequence(s.input), s.window);
        a = dual_artifact(alpha_dual_check(seq, gamma, qp, p, row_limits_of(s.row_limit, seq.size())));
    } else if (c == "beta-dual") {
        a = dual_artifact(beta_dual_check(windowed(read_sequence(s.input), s.window), gamma, qp, p));
    } else if (c == "gamma-dual") {
        a = dual_artifact(gamma_dual_check(windowed(read_sequence(s.input), s.window), gamma, qp, p));
    } else if (c == "class-check") {
        a = class_artifact(s, qp, p);
    } else if (c == "compose") {
        const CoeffStream x = stream_of(s.kind, gamma, qp, s.k, "kind");
        const CoeffStream y = stream_of(s.kind2, s.gamma2, qp, s.k, "kind2");
        a.seq = compose_coeffs(x, y).coeffs();
    } else {
        throw ValidationError("command: unknown command '" + c + "'");
    }
    return a;
}

} // namespace

int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        const std::string text = render(execute(spec), spec.format);
        if (spec.output.empty()) {
            out << text;
            out.flush();
            if (!out) {
                throw IoError("output: write to standard output failed");
            }
        } else {
            std::ofstream f(spec.output, std::ios::binary | std::ios::trunc);
            if (!f) {
                throw IoError("output: cannot open '" + spec.output + "' for writing");
            }
            f << text;
            f.close();
            if (!f) {
                throw IoError("output: write to '" + spec.output + "' failed");
            }
        }
        return exit_ok;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const TailError& e) {
        err << "error: " << e.what() << '\n';
        return exit_limit;
    } catch (const LimitError& e) {
        err << "error: " << e.what() << '\n';
        return exit_limit;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    JobSpec s;
    CLI::App app{"Fractional q-difference operator toolkit"};
    app.add_option("command", s.command, "Job to run")
        ->required()
        ->check(CLI::IsMember({"coeffs", "transform", "invert", "verify-inverse", "semigroup-defect", "norm",
                               "basis", "alpha-dual", "beta-dual", "gamma-dual", "class-check", "compose"}));
    app.add_option("--gamma", s.gamma, "Operator order");
    app.add_option("--q", s.q, "Deformation parameter in (0,1)");
    app.add_option("--p", s.p, "Exponent, a positive real or inf");
    app.add_option("--window", s.window, "Window length (>= 1)");
    app.add_option("--row-limit", s.row_limit, "Rows enumerated by subset conditions (<= 20)");
    app.add_option("--input", s.input, "Sequence (CSV or JSON array) or matrix (JSON rows)");
    app.add_option("--output", s.output, "Output path; standard output when omitted");
    std::string format = "json";
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--k", s.k, "Coefficient truncation, or basis index");
    app.add_option("--kind", s.kind, "forward or inverse");
    app.add_option("--gamma2", s.gamma2, "Order of the second stream (compose)");
    app.add_option("--kind2", s.kind2, "Kind of the second stream (compose)");
    app.add_option("--mu", s.mu, "First order (semigroup-defect)");
    app.add_option("--nu", s.nu, "Second order (semigroup-defect)");
    app.add_option("--source", s.source, "Source class (class-check)");
    app.add_option("--target", s.target, "Target class (class-check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
    s.format = format == "csv" ? Format::Csv : Format::Json;
    return run(s, out, err);
}

} // namespace qfd::cli
