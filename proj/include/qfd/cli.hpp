#pragma once

// Command-line front end. The executable in tools/ only forwards to main_entry,
// so tests can drive the full argument path in-process.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace qfd::cli {

enum class Format { Json, Csv };

struct JobSpec {
    std::string command;
    double gamma = 0.5;
    double q = 0.5;
    std::string p = "2";
    std::optional<std::size_t> window; // must be >= 1 when given
    std::size_t row_limit = 0;         // 0: command default; at most 20
    std::string input;
    std::string output; // empty: standard output
    Format format = Format::Json;

    std::size_t k = 10;           // coeffs/compose truncation, basis index
    std::string kind = "forward"; // forward | inverse
    double gamma2 = 0.5;
    std::string kind2 = "inverse";
    double mu = 0.5;
    double nu = 0.5;
    std::string source;
    std::string target;
};

/// Exit statuses.
inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_limit = 3;

/// Executes one job. The artifact goes to spec.output, or to `out` when no
/// output path is set; diagnostics go to `err`.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs the job.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qfd::cli
