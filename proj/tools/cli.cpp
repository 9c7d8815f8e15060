#include "dclosure/cli.hpp"

#include "dclosure/analysis.hpp"
#include "dclosure/io.hpp"
#include "dclosure/registry.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace dclosure::cli {

namespace {

using io::AnyGraph;
using io::format_number;

PowerScheme parse_scheme(const std::string& s) {
    if (s == "left_fold" || s == "left-fold") return PowerScheme::left_fold;
    if (s == "power_of_two" || s == "power-of-two") return PowerScheme::power_of_two;
    throw InputError("unknown scheme '" + s + "' (expected left_fold or power_of_two)");
}

ClosureOptions closure_options(const RunConfig& cfg) {
    ClosureOptions o;
    o.max_iter = cfg.max_iter;
    o.epsilon = cfg.epsilon;
    o.threads = Threads{cfg.threads};
    return o;
}

GeneratorMap generator_for(const RunConfig& cfg) {
    if (!cfg.lambda) return GeneratorMap::standard();
    try {
        return GeneratorMap::dombi(*cfg.lambda);
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
}

// "dombi" plus --lambda, or "dombi:<l>" alone. --lambda with any other
// method is rejected.
Method resolve_method(const RunConfig& cfg) {
    if (cfg.method == "dombi") {
        if (!cfg.lambda) throw InputError("method 'dombi' needs --lambda (or write dombi:<lambda>)");
        return Method::dombi(*cfg.lambda);
    }
    const Method m = Method::parse(cfg.method);
    if (cfg.lambda) {
        if (m.kind() != Method::Kind::dombi)
            throw InputError("--lambda only applies to the dombi method, not '" + cfg.method + "'");
        if (*cfg.lambda != m.lambda())
            throw InputError("--lambda " + format_number(*cfg.lambda) + " contradicts method '" + cfg.method + "'");
    }
    return m;
}

AnyGraph load(const RunConfig& cfg) {
    if (cfg.input.empty()) throw InputError("no input file (use --input)");
    if (cfg.space == "timeseries") {
        const auto ts = io::read_time_series(std::filesystem::path(cfg.input));
        return from_correlation(ts.values, ts.labels,
                                cfg.abs_correlation ? CorrelationMode::absolute : CorrelationMode::clamp);
    }
    std::optional<Space> space;
    if (!cfg.space.empty()) space = io::parse_space(cfg.space);
    return io::read_graph(cfg.input, space);
}

DistanceGraph as_distance(const AnyGraph& g, const GeneratorMap& gen) {
    if (const auto* d = std::get_if<DistanceGraph>(&g)) return *d;
    return to_distance(std::get<ProximityGraph>(g), IsomorphismMap(gen));
}

void emit_graph(const RunConfig& cfg, const AnyGraph& g, std::ostream& out) {
    if (!cfg.output.empty()) {
        io::write_graph(cfg.output, g, cfg.precision);
        return;
    }
    if (cfg.format == "csv") io::write_dense_csv(out, g, cfg.precision);
    else if (cfg.format.empty() || cfg.format == "edges") io::write_edge_list(out, g, cfg.precision);
    else throw InputError("unknown format '" + cfg.format + "' (expected edges or csv)");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot open '" + path + "' for writing");
    f << j.dump(2) << '\n';
}

int cmd_convert(const RunConfig& cfg, std::ostream& out) {
    const AnyGraph g = load(cfg);
    const Space from = io::space_of(g);
    const Space to = cfg.to.empty() ? (from == Space::proximity ? Space::distance : Space::proximity)
                                    : io::parse_space(cfg.to);
    const IsomorphismMap iso(generator_for(cfg));
    AnyGraph result = g;
    if (from == Space::proximity && to == Space::distance) result = to_distance(std::get<ProximityGraph>(g), iso);
    if (from == Space::distance && to == Space::proximity) result = to_proximity(std::get<DistanceGraph>(g), iso);
    emit_graph(cfg, result, out);
    return kSuccess;
}

template <class Report>
int finish_close(const RunConfig& cfg, const Report& rep, std::ostream& out) {
    const auto j = io::report_json(rep);
    if (!cfg.report.empty()) write_json_file(cfg.report, j);
    if (cfg.json) {
        out << j.dump(2) << '\n';
        if (!cfg.output.empty()) io::write_graph(cfg.output, AnyGraph(rep.closed), cfg.precision);
    } else {
        emit_graph(cfg, AnyGraph(rep.closed), out);
        if (!cfg.output.empty())
            out << "method " << rep.method << "  kappa " << rep.kappa << "  converged "
                << (rep.converged ? "yes" : "no") << "  stop " << to_string(rep.stop) << "  distortion "
                << format_number(rep.distortion, cfg.precision) << '\n';
    }
    if (!rep.converged)
        throw ConvergenceError("closure stopped at the iteration cutoff after " + std::to_string(rep.kappa) +
                               " iterations (last change " +
                               format_number(rep.iterations_log.empty() ? 0.0 : rep.iterations_log.back()) + ")");
    return kSuccess;
}

int cmd_close(const RunConfig& cfg, std::ostream& out) {
    const AnyGraph g = load(cfg);
    const Method method = resolve_method(cfg);
    const auto opts = closure_options(cfg);
    if (const auto* p = std::get_if<ProximityGraph>(&g)) return finish_close(cfg, close_proximity(*p, method, opts), out);
    return finish_close(cfg, close_distance(std::get<DistanceGraph>(g), method, opts), out);
}

int cmd_semimetric(const RunConfig& cfg, std::ostream& out) {
    const DistanceGraph d = as_distance(load(cfg), generator_for(cfg));
    auto opts = closure_options(cfg);
    const auto mc = metric_closure(d, ApspBackend::automatic, opts);
    const auto rep = semimetric_edges(d, mc.closed);
    const auto j = io::report_json(rep);
    if (!cfg.report.empty()) write_json_file(cfg.report, j);
    if (cfg.json) out << j.dump(2) << '\n';
    else out << io::report_text(rep, cfg.precision);
    return kSuccess;
}

int cmd_distortion(const RunConfig& cfg, std::ostream& out) {
    const AnyGraph g = load(cfg);
    double delta = 0.0;
    std::string method;
    if (!cfg.closed.empty()) {
        const AnyGraph c = io::read_graph(cfg.closed, io::space_of(g));
        // Distortion is measured in proximity space.
        const IsomorphismMap iso(generator_for(cfg));
        auto prox = [&](const AnyGraph& x) {
            if (const auto* p = std::get_if<ProximityGraph>(&x)) return *p;
            return to_proximity(std::get<DistanceGraph>(x), iso);
        };
        delta = distortion(prox(g), prox(c));
        method = "file";
    } else {
        const Method m = resolve_method(cfg);
        const auto opts = closure_options(cfg);
        delta = std::holds_alternative<ProximityGraph>(g)
                    ? close_proximity(std::get<ProximityGraph>(g), m, opts).distortion
                    : close_distance(std::get<DistanceGraph>(g), m, opts).distortion;
        method = m.name();
    }
    if (cfg.json)
        out << nlohmann::json{{"schema", io::kSchemaVersion}, {"kind", "distortion"}, {"method", method}, {"distortion", delta}}
                   .dump(2)
            << '\n';
    else out << format_number(delta, cfg.precision) << '\n';
    return kSuccess;
}

int cmd_asymmetry(const RunConfig& cfg, std::ostream& out) {
    const DistanceGraph d = as_distance(load(cfg), generator_for(cfg));
    if (cfg.n < 1) throw InputError("--n must be >= 1");
    const PowerScheme scheme = parse_scheme(cfg.scheme);
    if (scheme == PowerScheme::power_of_two && (cfg.n & (cfg.n - 1)) != 0)
        throw InputError("--n must be a power of two with the power_of_two scheme");
    const auto seq = diffusion_power(d, cfg.n, scheme, Threads{cfg.threads});
    const double a = asymmetry(seq.powers.back());
    if (cfg.json)
        out << nlohmann::json{{"schema", io::kSchemaVersion}, {"kind", "asymmetry"}, {"n", cfg.n}, {"asymmetry", a}}.dump(2)
            << '\n';
    else out << format_number(a, cfg.precision) << '\n';
    return kSuccess;
}

int cmd_diffuse(const RunConfig& cfg, std::ostream& out) {
    const DistanceGraph d = as_distance(load(cfg), generator_for(cfg));
    DetectorConfig det;
    det.on_distance = cfg.on_distance;
    const auto trace = diffusion_trace(d, cfg.n_max, det, parse_scheme(cfg.scheme), Threads{cfg.threads});
    if (!cfg.hierarchy.empty()) {
        std::ofstream h(cfg.hierarchy);
        if (!h) throw InputError("cannot open '" + cfg.hierarchy + "' for writing");
        io::write_hierarchy(h, trace, cfg.precision);
    }
    if (!cfg.output.empty()) {
        std::ofstream f(cfg.output);
        if (!f) throw InputError("cannot open '" + cfg.output + "' for writing");
        f << "n,asymmetry,communities\n";
        for (std::size_t k = 0; k < trace.exponents.size(); ++k)
            f << trace.exponents[k] << ',' << format_number(trace.asymmetry[k], cfg.precision) << ','
              << trace.community_counts[k] << '\n';
    }
    const auto j = io::report_json(trace);
    if (!cfg.report.empty()) write_json_file(cfg.report, j);
    if (cfg.json) out << j.dump(2) << '\n';
    else out << io::report_text(trace, cfg.precision);
    return kSuccess;
}

int cmd_lambda_opt(const RunConfig& cfg, std::ostream& out) {
    const double target = cfg.target.value_or(cfg.cv);
    LambdaStudy s;
    try {
        s = lambda_study(cfg.mu, cfg.cv, target);
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
    const auto j = io::report_json(s);
    if (!cfg.report.empty()) write_json_file(cfg.report, j);
    if (cfg.json) out << j.dump(2) << '\n';
    else
        out << "lambda " << format_number(s.lambda_opt, cfg.precision) << "  cv_p "
            << format_number(s.cv_p_at_opt, cfg.precision) << '\n';
    return kSuccess;
}

int cmd_demorgan(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.lambda) throw InputError("demorgan needs --lambda");
    QuadratureSpec spec;
    spec.tolerance = cfg.tolerance;
    if (cfg.grid > 0) {
        spec.kind = QuadratureSpec::Kind::fixed_grid;
        spec.grid_points = cfg.grid;
    }
    double f = 0.0;
    try {
        f = demorgan_deviation(*cfg.lambda, spec);
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (cfg.json)
        out << nlohmann::json{{"schema", io::kSchemaVersion}, {"kind", "demorgan"}, {"lambda", *cfg.lambda}, {"deviation", f}}
                   .dump(2)
            << '\n';
    else out << format_number(f, cfg.precision) << '\n';
    return kSuccess;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out) {
    if (cfg.precision < 1 || cfg.precision > 17) throw InputError("--precision must be in [1, 17]");
    if (cfg.command == "convert") return cmd_convert(cfg, out);
    if (cfg.command == "close") return cmd_close(cfg, out);
    if (cfg.command == "semimetric") return cmd_semimetric(cfg, out);
    if (cfg.command == "distortion") return cmd_distortion(cfg, out);
    if (cfg.command == "asymmetry") return cmd_asymmetry(cfg, out);
    if (cfg.command == "diffuse") return cmd_diffuse(cfg, out);
    if (cfg.command == "lambda-opt") return cmd_lambda_opt(cfg, out);
    if (cfg.command == "demorgan") return cmd_demorgan(cfg, out);
    throw InputError("unknown command '" + cfg.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    double lambda = 0.0, target = 0.0;
    std::vector<CLI::Option*> lambda_opts, target_opts;

    CLI::App app{"Generalized transitive and distance closures of weighted graphs", "dclosure"};
    app.set_config("--config", "", "TOML-style config file; command-line flags take precedence");
    app.add_option("--threads", cfg.threads, "Worker threads for composition (0 = auto)")->capture_default_str();
    app.add_option("--precision", cfg.precision, "Significant digits in numeric output")->capture_default_str();
    app.add_flag("--json", cfg.json, "Print the JSON report instead of text");
    app.require_subcommand(1);

    auto input = [&](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input, "Input graph (edge list, or .csv dense matrix)");
        sub->add_option("--space", cfg.space, "proximity | distance | timeseries (needed for CSV input)");
    };
    auto add_lambda = [&](CLI::App* sub, const std::string& help) {
        lambda_opts.push_back(sub->add_option("--lambda", lambda, help));
    };
    auto closing = [&](CLI::App* sub) {
        sub->add_option("-m,--method", cfg.method, "metric | ultrametric | diffusion | dombi:<lambda>")->capture_default_str();
        sub->add_option("--epsilon", cfg.epsilon, "Stop threshold for non-dioid pairs");
        sub->add_option("--max-iter", cfg.max_iter, "Iteration cutoff (0 = 10n)");
    };

    auto* convert = app.add_subcommand("convert", "Convert between proximity and distance graphs or formats");
    input(convert);
    convert->add_option("-o,--output", cfg.output, "Output file (.csv = dense matrix)");
    convert->add_option("--format", cfg.format, "Stdout format: edges | csv");
    convert->add_option("--to", cfg.to, "Target space (default: the other one)");
    convert->add_flag("--abs-correlation", cfg.abs_correlation, "Time series: use |r| instead of clamping r < 0");
    add_lambda(convert, "Dombi generator exponent for the conversion");

    auto* close = app.add_subcommand("close", "Compute a closure");
    input(close);
    closing(close);
    close->add_option("-o,--output", cfg.output, "Closed graph file");
    close->add_option("--format", cfg.format, "Stdout format: edges | csv");
    close->add_option("--report", cfg.report, "Write the JSON closure report here");
    close->add_flag("--abs-correlation", cfg.abs_correlation, "Time series: use |r| instead of clamping r < 0");
    add_lambda(close, "Lambda for method 'dombi'");

    auto* semimetric = app.add_subcommand("semimetric", "List semi-metric edges");
    input(semimetric);
    semimetric->add_option("--report", cfg.report, "Write the JSON report here");
    semimetric->add_flag("--abs-correlation", cfg.abs_correlation, "Time series: use |r| instead of clamping r < 0");
    add_lambda(semimetric, "Dombi generator for proximity input");

    auto* dist = app.add_subcommand("distortion", "Total absolute change a closure makes");
    input(dist);
    closing(dist);
    dist->add_option("--closed", cfg.closed, "Compare against this closed graph instead of computing one");
    add_lambda(dist, "Lambda for method 'dombi', or the generator used with --closed");

    auto* asym = app.add_subcommand("asymmetry", "Asymmetry of the n-th diffusion power");
    input(asym);
    asym->add_option("-n,--n", cfg.n, "Power")->capture_default_str();
    asym->add_option("--scheme", cfg.scheme, "left_fold | power_of_two")->capture_default_str();
    add_lambda(asym, "Dombi generator for proximity input");

    auto* diffuse = app.add_subcommand("diffuse", "n-diffusion asymmetry and community hierarchy");
    input(diffuse);
    diffuse->add_option("-n,--n", cfg.n_max, "Largest power")->capture_default_str();
    diffuse->add_option("--scheme", cfg.scheme, "left_fold | power_of_two")->capture_default_str();
    diffuse->add_flag("--on-distance", cfg.on_distance, "Cluster on 1/d instead of proximities");
    diffuse->add_option("--hierarchy", cfg.hierarchy, "Write the hierarchy file here");
    diffuse->add_option("-o,--output", cfg.output, "Write the asymmetry curve (CSV) here");
    diffuse->add_option("--report", cfg.report, "Write the JSON report here");
    diffuse->add_flag("--abs-correlation", cfg.abs_correlation, "Time series: use |r| instead of clamping r < 0");
    add_lambda(diffuse, "Dombi generator for proximity input");

    auto* lopt = app.add_subcommand("lambda-opt", "Dombi lambda that matches a target proximity CV");
    lopt->add_option("--mu", cfg.mu, "Mean shortest-path length")->required();
    lopt->add_option("--cv", cfg.cv, "CV of the shortest-path lengths")->required();
    target_opts.push_back(lopt->add_option("--target", target, "Target proximity CV (default: --cv)"));
    lopt->add_option("--report", cfg.report, "Write the JSON report here");

    auto* dm = app.add_subcommand("demorgan", "De Morgan deviation F(lambda)");
    add_lambda(dm, "Dombi exponent");
    dm->add_option("--tolerance", cfg.tolerance, "Adaptive quadrature tolerance")->capture_default_str();
    dm->add_option("--grid", cfg.grid, "Use a fixed Gauss-Legendre grid with this many points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "dclosure: error[" << kInputError << "]: " << e.what() << '\n';
        return kInputError;
    }

    for (auto* o : lambda_opts)
        if (o->count() > 0) cfg.lambda = lambda;
    for (auto* o : target_opts)
        if (o->count() > 0) cfg.target = target;
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return execute(cfg, out);
    } catch (const Error& e) {
        err << "dclosure: error[" << e.exit_code() << "]: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        err << "dclosure: error[" << kInputError << "]: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "dclosure: error[" << kInputError << "]: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "dclosure: error[" << kInternal << "]: " << e.what() << '\n';
        return kInternal;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"dclosure"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dclosure::cli
