#pragma once

/**
 * @file cli.hpp
 * @brief The `dclosure` command line front end as a library, so the
 *        subcommands can be driven in-process.
 */

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dclosure::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternal = 1,
    kInputError = 2,
    kNotConverged = 3,
    kNumericFailure = 4,
};

/// Everything a subcommand reads. Filled from flags and an optional config file.
struct RunConfig {
    std::string command;
    std::string input;
    std::string space;  // proximity | distance | timeseries; empty = from the file header
    std::string output;
    std::string format;  // edges | csv, for stdout output
    std::string report;  // JSON report path
    std::string hierarchy;
    std::string closed;  // distortion: precomputed closure to compare against
    std::string to;      // convert: target space
    std::string method = "metric";
    std::optional<double> lambda;
    long n_max = 40;
    long n = 1;
    double epsilon = -1.0;
    int max_iter = 0;
    bool on_distance = false;
    bool abs_correlation = false;
    std::string scheme = "left_fold";
    bool json = false;
    int precision = 12;
    unsigned threads = 1;
    double mu = 0.0;
    double cv = 0.0;
    std::optional<double> target;
    double tolerance = 1e-6;
    int grid = 0;  // demorgan: > 0 selects fixed Gauss-Legendre grid
};

/// Runs one subcommand. Throws the library's Error types on failure.
int execute(const RunConfig& cfg, std::ostream& out);

/// Parses argv and runs. Errors are printed to `err` as
/// "dclosure: error[<code>]: <message>" and mapped to the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dclosure::cli
