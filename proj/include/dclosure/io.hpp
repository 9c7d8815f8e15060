#pragma once

/**
 * @file io.hpp
 * @brief Edge-list, dense CSV and time-series readers/writers, plus the JSON
 *        and column-aligned report writers used by the command line tool.
 */

#include "dclosure/analysis.hpp"
#include "dclosure/graphs.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dclosure::io {

using AnyGraph = std::variant<ProximityGraph, DistanceGraph>;

inline constexpr int kDefaultPrecision = 12;
inline constexpr int kSchemaVersion = 1;

enum class Format { edge_list, dense_csv };

/// ".csv" is dense CSV; anything else is an edge list.
Format format_for(const std::filesystem::path& path);

Space space_of(const AnyGraph& g);

/// Parses "proximity" or "distance"; throws InputError otherwise.
Space parse_space(const std::string& text);

/// Shortest text that reads back as `x` at the given precision; +inf is "inf".
std::string format_number(double x, int precision = kDefaultPrecision);

/// Reads a weight: decimal, "inf" or "+inf". Throws InputError quoting `where`.
double parse_number(const std::string& text, const std::string& where);

/**
 * Edge list. The first non-blank line is "#proximity" or "#distance",
 * optionally followed by "directed". Then one edge per line:
 *   label_i <TAB> label_j <TAB> weight
 * A line holding a single label declares a vertex. Other lines starting with
 * '#' are comments. Vertices are numbered by first appearance. Missing pairs
 * are 0 (proximity) or +inf (distance). Undirected files set both
 * directions and reject conflicting duplicates.
 */
AnyGraph read_edge_list(std::istream& in, const std::string& source = "<input>");
void write_edge_list(std::ostream& out, const AnyGraph& g, int precision = kDefaultPrecision);

/// Dense matrix CSV: a header row of labels (first cell ignored), then one
/// row per vertex led by its label. The space is not stored in the file.
/// Directedness is inferred from symmetry.
AnyGraph read_dense_csv(std::istream& in, Space space, const std::string& source = "<input>");
void write_dense_csv(std::ostream& out, const AnyGraph& g, int precision = kDefaultPrecision);

struct TimeSeries {
    std::vector<std::string> labels;
    MatrixXd values;  // rows = observations, one column per label
};

TimeSeries read_time_series(std::istream& in, const std::string& source = "<input>");

/// File helpers dispatching on format_for(). `space` is required for CSV
/// input and, if given, must match an edge-list header.
AnyGraph read_graph(const std::filesystem::path& path, std::optional<Space> space = std::nullopt);
void write_graph(const std::filesystem::path& path, const AnyGraph& g, int precision = kDefaultPrecision);
TimeSeries read_time_series(const std::filesystem::path& path);

// Reports --------------------------------------------------------------------

/// +inf is encoded as the string "inf".
nlohmann::json matrix_json(const MatrixXd& m);
nlohmann::json graph_json(const AnyGraph& g);

template <class Graph>
nlohmann::json report_json(const ClosureReport<Graph>& rep) {
    return {{"schema", kSchemaVersion},
            {"kind", "closure"},
            {"method", rep.method},
            {"kappa", rep.kappa},
            {"converged", rep.converged},
            {"stop", to_string(rep.stop)},
            {"distortion", rep.distortion},
            {"graph", graph_json(AnyGraph(rep.closed))}};
}

nlohmann::json report_json(const SemiMetricReport& rep);
nlohmann::json report_json(const DiffusionTrace& trace);
nlohmann::json report_json(const LambdaStudy& study);

/// Columns padded to their widest cell; numeric-looking cells right aligned.
std::string aligned_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

std::string report_text(const SemiMetricReport& rep, int precision = kDefaultPrecision);
std::string report_text(const DiffusionTrace& trace, int precision = kDefaultPrecision);

/// One line per recorded power: n, community count, asymmetry and the
/// partition as label:community pairs.
void write_hierarchy(std::ostream& out, const DiffusionTrace& trace, int precision = kDefaultPrecision);

}  // namespace dclosure::io
