#include "dclosure/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace dclosure::io {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? pos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string at_line(const std::string& source, long line) { return source + ":" + std::to_string(line); }

template <Space S>
AnyGraph build(MatrixXd w, std::vector<std::string> labels, bool directed) {
    return WeightedGraph<S>(std::move(w), std::move(labels), directed);
}

AnyGraph build(Space s, MatrixXd w, std::vector<std::string> labels, bool directed) {
    if (s == Space::proximity) return build<Space::proximity>(std::move(w), std::move(labels), directed);
    return build<Space::distance>(std::move(w), std::move(labels), directed);
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
    return in;
}

}  // namespace

Format format_for(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".csv" ? Format::dense_csv : Format::edge_list;
}

Space space_of(const AnyGraph& g) { return g.index() == 0 ? Space::proximity : Space::distance; }

Space parse_space(const std::string& text) {
    if (text == "proximity") return Space::proximity;
    if (text == "distance") return Space::distance;
    throw InputError("unknown space '" + text + "' (expected proximity or distance)");
}

std::string format_number(double x, int precision) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& where) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity") return std::numeric_limits<double>::infinity();
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    double x = 0.0;
    const auto res = std::from_chars(first, last, x);
    if (text.empty() || res.ec != std::errc() || res.ptr != last || std::isnan(x))
        throw InputError(where + ": invalid number '" + text + "'");
    return x;
}

// Edge list ----------------------------------------------------------------------

AnyGraph read_edge_list(std::istream& in, const std::string& source) {
    std::optional<Space> space;
    bool directed = false;
    std::vector<std::string> labels;
    std::map<std::string, Eigen::Index> index;
    struct Edge {
        Eigen::Index i, j;
        double w;
        long line;
    };
    std::vector<Edge> edges;

    auto vertex = [&](const std::string& label) {
        const auto [it, inserted] = index.emplace(label, static_cast<Eigen::Index>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string raw;
    long lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (!space) {
            std::istringstream hs(line);
            std::string tag, flag, extra;
            hs >> tag >> flag >> extra;
            if (tag == "#proximity") space = Space::proximity;
            else if (tag == "#distance") space = Space::distance;
            else throw InputError(at_line(source, lineno) + ": expected header '#proximity' or '#distance'");
            if (flag == "directed") directed = true;
            else if (!flag.empty() || !extra.empty())
                throw InputError(at_line(source, lineno) + ": unexpected header field '" + flag + "'");
            continue;
        }
        if (line.front() == '#') continue;
        const auto fields = split(line, '\t');
        if (fields.size() == 1) {
            vertex(fields[0]);
            continue;
        }
        if (fields.size() != 3)
            throw InputError(at_line(source, lineno) + ": expected 3 tab-separated fields, found " +
                             std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty()) throw InputError(at_line(source, lineno) + ": empty vertex label");
        const double w = parse_number(fields[2], at_line(source, lineno));
        const auto i = vertex(fields[0]);
        const auto j = vertex(fields[1]);
        edges.push_back({i, j, w, lineno});
    }
    if (!space) throw InputError(source + ": empty file (missing '#proximity' or '#distance' header)");

    const auto n = static_cast<Eigen::Index>(labels.size());
    const double absent = *space == Space::proximity ? 0.0 : std::numeric_limits<double>::infinity();
    const double self = *space == Space::proximity ? 1.0 : 0.0;
    MatrixXd w = MatrixXd::Constant(n, n, absent);
    w.diagonal().setConstant(self);
    std::vector<long> set_at(static_cast<std::size_t>(n * n), 0);

    auto assign = [&](Eigen::Index i, Eigen::Index j, const Edge& e) {
        long& prev = set_at[static_cast<std::size_t>(i * n + j)];
        if (prev != 0 && w(i, j) != e.w)
            throw InputError(at_line(source, e.line) + ": weight for (" + labels[i] + ", " + labels[j] +
                             ") conflicts with line " + std::to_string(prev));
        w(i, j) = e.w;
        prev = e.line;
    };
    for (const auto& e : edges) {
        if (e.i == e.j && e.w != self)
            throw InputError(at_line(source, e.line) + ": self-loop on '" + labels[e.i] + "' must have weight " +
                             format_number(self));
        assign(e.i, e.j, e);
        if (!directed) assign(e.j, e.i, e);
    }
    return build(*space, std::move(w), std::move(labels), directed);
}

void write_edge_list(std::ostream& out, const AnyGraph& g, int precision) {
    std::visit(
        [&](const auto& graph) {
            using G = std::decay_t<decltype(graph)>;
            const double absent = G::space == Space::proximity ? 0.0 : std::numeric_limits<double>::infinity();
            out << '#' << to_string(G::space) << (graph.directed() ? " directed" : "") << '\n';
            const auto& lab = graph.labels();
            for (const auto& l : lab) out << l << '\n';
            for (Eigen::Index i = 0; i < graph.size(); ++i)
                for (Eigen::Index j = graph.directed() ? 0 : i + 1; j < graph.size(); ++j)
                    if (i != j && graph(i, j) != absent)
                        out << lab[i] << '\t' << lab[j] << '\t' << format_number(graph(i, j), precision) << '\n';
        },
        g);
}

// Dense CSV ----------------------------------------------------------------------

AnyGraph read_dense_csv(std::istream& in, Space space, const std::string& source) {
    std::string raw;
    long lineno = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (labels.empty()) {
            if (cells.size() < 2) throw InputError(at_line(source, lineno) + ": header needs at least one label");
            labels.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != labels.size() + 1)
            throw InputError(at_line(source, lineno) + ": expected " + std::to_string(labels.size() + 1) +
                             " cells, found " + std::to_string(cells.size()));
        const std::size_t r = rows.size();
        if (r >= labels.size()) throw InputError(at_line(source, lineno) + ": more rows than labels");
        if (cells[0] != labels[r])
            throw InputError(at_line(source, lineno) + ": row label '" + cells[0] + "' does not match column '" +
                             labels[r] + "'");
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c)
            row.push_back(parse_number(cells[c], at_line(source, lineno) + " column " + std::to_string(c + 1)));
        rows.push_back(std::move(row));
    }
    if (labels.empty()) throw InputError(source + ": empty matrix file");
    if (rows.size() != labels.size())
        throw InputError(source + ": " + std::to_string(labels.size()) + " labels but " + std::to_string(rows.size()) +
                         " rows");
    const auto n = static_cast<Eigen::Index>(labels.size());
    MatrixXd w(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) w(i, j) = rows[i][j];
    bool symmetric = true;
    for (Eigen::Index i = 0; i < n && symmetric; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (!(w(i, j) == w(j, i))) {
                symmetric = false;
                break;
            }
    return build(space, std::move(w), std::move(labels), !symmetric);
}

void write_dense_csv(std::ostream& out, const AnyGraph& g, int precision) {
    std::visit(
        [&](const auto& graph) {
            const auto& lab = graph.labels();
            for (const auto& l : lab) out << ',' << l;
            out << '\n';
            for (Eigen::Index i = 0; i < graph.size(); ++i) {
                out << lab[i];
                for (Eigen::Index j = 0; j < graph.size(); ++j) out << ',' << format_number(graph(i, j), precision);
                out << '\n';
            }
        },
        g);
}

// Time series ----------------------------------------------------------------------

TimeSeries read_time_series(std::istream& in, const std::string& source) {
    TimeSeries ts;
    std::vector<std::vector<double>> rows;
    std::string raw;
    long lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (ts.labels.empty()) {
            ts.labels = std::move(cells);
            continue;
        }
        if (cells.size() != ts.labels.size())
            throw InputError(at_line(source, lineno) + ": expected " + std::to_string(ts.labels.size()) +
                             " values, found " + std::to_string(cells.size()));
        std::vector<double> row;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double x = parse_number(cells[c], at_line(source, lineno) + " column " + std::to_string(c + 1));
            if (!std::isfinite(x)) throw InputError(at_line(source, lineno) + ": time series values must be finite");
            row.push_back(x);
        }
        rows.push_back(std::move(row));
    }
    if (ts.labels.empty()) throw InputError(source + ": empty time-series file");
    ts.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ts.labels.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ts.labels.size(); ++c) ts.values(r, c) = rows[r][c];
    return ts;
}

// Files ----------------------------------------------------------------------------

AnyGraph read_graph(const std::filesystem::path& path, std::optional<Space> space) {
    auto in = open_in(path);
    if (format_for(path) == Format::dense_csv) {
        if (!space) throw InputError(path.string() + ": dense CSV input needs an explicit space");
        return read_dense_csv(in, *space, path.string());
    }
    auto g = read_edge_list(in, path.string());
    if (space && *space != space_of(g))
        throw InputError(path.string() + ": header declares " + to_string(space_of(g)) + " but " + to_string(*space) +
                         " was requested");
    return g;
}

void write_graph(const std::filesystem::path& path, const AnyGraph& g, int precision) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    if (format_for(path) == Format::dense_csv) write_dense_csv(out, g, precision);
    else write_edge_list(out, g, precision);
    if (!out) throw InputError("write to '" + path.string() + "' failed");
}

TimeSeries read_time_series(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_time_series(in, path.string());
}

// Reports --------------------------------------------------------------------------

nlohmann::json matrix_json(const MatrixXd& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (std::isinf(m(i, j))) row.push_back("inf");
            else row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json graph_json(const AnyGraph& g) {
    return std::visit(
        [](const auto& graph) {
            using G = std::decay_t<decltype(graph)>;
            return nlohmann::json{{"space", to_string(G::space)},
                                  {"directed", graph.directed()},
                                  {"labels", graph.labels()},
                                  {"matrix", matrix_json(graph.weights())}};
        },
        g);
}

nlohmann::json report_json(const SemiMetricReport& rep) {
    auto edges = nlohmann::json::array();
    for (const auto& e : rep.edges)
        edges.push_back({{"source", rep.labels[e.i]},
                         {"target", rep.labels[e.j]},
                         {"distance", e.distance},
                         {"metric_distance", e.metric_distance},
                         {"ratio", e.ratio}});
    auto indirect = nlohmann::json::array();
    for (const auto& p : rep.indirect_only)
        indirect.push_back({{"source", rep.labels[p.i]}, {"target", rep.labels[p.j]}, {"metric_distance", p.metric_distance}});
    return {{"schema", kSchemaVersion},
            {"kind", "semimetric"},
            {"finite_edges", rep.finite_edges},
            {"semimetric_count", rep.count()},
            {"semimetric_fraction", rep.fraction()},
            {"edges", edges},
            {"indirect_only", indirect}};
}

nlohmann::json report_json(const DiffusionTrace& trace) {
    auto steps = nlohmann::json::array();
    for (std::size_t k = 0; k < trace.exponents.size(); ++k) {
        nlohmann::json part = nlohmann::json::object();
        for (std::size_t v = 0; v < trace.labels.size(); ++v) part[trace.labels[v]] = trace.partitions[k][v];
        steps.push_back({{"n", trace.exponents[k]},
                         {"asymmetry", trace.asymmetry[k]},
                         {"communities", trace.community_counts[k]},
                         {"partition", part}});
    }
    nlohmann::json j{{"schema", kSchemaVersion},
                     {"kind", "diffusion"},
                     {"scheme", to_string(trace.scheme)},
                     {"labels", trace.labels},
                     {"steps", steps}};
    j["dissolve_n"] = trace.dissolve_n ? nlohmann::json(*trace.dissolve_n) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json report_json(const LambdaStudy& s) {
    return {{"schema", kSchemaVersion}, {"kind", "lambda"},          {"mu", s.mu},
            {"cv_d", s.cv_d},           {"cv_p_target", s.cv_p_target}, {"lambda", s.lambda_opt},
            {"cv_p", s.cv_p_at_opt}};
}

std::string aligned_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());

    auto numeric = [](const std::string& s) {
        if (s.empty()) return false;
        double x;
        const char* b = s.data() + (s[0] == '+' ? 1 : 0);
        const auto res = std::from_chars(b, s.data() + s.size(), x);
        return (res.ec == std::errc() && res.ptr == s.data() + s.size()) || s == "inf";
    };
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& r) {
        std::string line;
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string cell = c < r.size() ? r[c] : "";
            const std::string pad(width[c] - cell.size(), ' ');
            if (c) line += "  ";
            line += numeric(cell) ? pad + cell : cell + pad;
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << '\n';
    };
    emit(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    emit(rule);
    for (const auto& r : rows) emit(r);
    return out.str();
}

std::string report_text(const SemiMetricReport& rep, int precision) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : rep.edges)
        rows.push_back({rep.labels[e.i], rep.labels[e.j], format_number(e.distance, precision),
                        format_number(e.metric_distance, precision), format_number(e.ratio, precision)});
    std::ostringstream out;
    out << "semi-metric edges: " << rep.count() << " of " << rep.finite_edges << " ("
        << format_number(100.0 * rep.fraction(), 4) << "%)\n";
    out << aligned_table({"source", "target", "distance", "metric", "ratio"}, rows);
    return out.str();
}

std::string report_text(const DiffusionTrace& trace, int precision) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < trace.exponents.size(); ++k)
        rows.push_back({std::to_string(trace.exponents[k]), format_number(trace.asymmetry[k], precision),
                        std::to_string(trace.community_counts[k])});
    std::ostringstream out;
    out << aligned_table({"n", "asymmetry", "communities"}, rows);
    if (trace.dissolve_n)
        out << "all singletons from n = " << *trace.dissolve_n << '\n';
    else if (!trace.exponents.empty())
        out << "no all-singleton partition up to n = " << trace.exponents.back() << '\n';
    return out.str();
}

void write_hierarchy(std::ostream& out, const DiffusionTrace& trace, int precision) {
    for (std::size_t k = 0; k < trace.exponents.size(); ++k) {
        out << trace.exponents[k] << '\t' << trace.community_counts[k] << '\t'
            << format_number(trace.asymmetry[k], precision) << '\t';
        for (std::size_t v = 0; v < trace.labels.size(); ++v)
            out << (v ? "," : "") << trace.labels[v] << ':' << trace.partitions[k][v];
        out << '\n';
    }
}

}  // namespace dclosure::io
