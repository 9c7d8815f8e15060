#include "support.hpp"

#include "dclosure/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace dclosure;
namespace fs = std::filesystem;

namespace {

const double inf = std::numeric_limits<double>::infinity();

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("dclosure-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& text = {}) const {
        const auto p = path / name;
        if (!text.empty()) std::ofstream(p) << text;
        return p.string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Run {
    int code;
    std::string out, err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

io::AnyGraph parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_edge_list(in, "<test>");
}

std::string input_error(const std::string& text) {
    try {
        parse(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

const std::string kTriangle = "#distance\na\tb\t1\nb\tc\t1\na\tc\t3\n";

}  // namespace

TEST_CASE("edge list reading") {
    const auto g = std::get<DistanceGraph>(parse("#distance\n# comment\nx\ty\t2.5\ny\tz\tinf\nw\n"));
    CHECK(g.labels() == std::vector<std::string>{"x", "y", "z", "w"});
    CHECK(g(0, 1) == 2.5);
    CHECK(g(1, 0) == 2.5);
    CHECK(std::isinf(g(1, 2)));
    CHECK(std::isinf(g(0, 3)));
    CHECK_FALSE(g.directed());

    const auto p = std::get<ProximityGraph>(parse("#proximity directed\na\tb\t0.5\n"));
    CHECK(p.directed());
    CHECK(p(0, 1) == 0.5);
    CHECK(p(1, 0) == 0.0);
    CHECK(p(0, 0) == 1.0);

    CHECK(input_error("#distance\na\tb\t1\nb\tc\tx1\n").find("<test>:3:") != std::string::npos);
    CHECK(input_error("#distance\na\tb\tnan\n").find("<test>:2:") != std::string::npos);
    CHECK(input_error("#distance\na\tb\t1\nb\ta\t2\n").find("line 2") != std::string::npos);
    CHECK(input_error("#distance\na\ta\t1\n") != "");
    CHECK(input_error("#proximity\na\tb\t1.5\n") != "");
    CHECK(input_error("a\tb\t1\n").find("<test>:1:") != std::string::npos);
    CHECK(input_error("#distance\na\tb\n").find("<test>:2:") != std::string::npos);
}

TEST_CASE("edge list and csv round trips") {
    auto gen = testing::rng(401);
    for (bool directed : {false, true}) {
        const auto d = testing::random_distance(gen, 7, 0.5, 0.1, 10.0, directed);
        std::ostringstream out;
        io::write_edge_list(out, d, 17);
        const auto back = std::get<DistanceGraph>(parse(out.str()));
        CHECK(back == d);
        CHECK(back.directed() == directed);

        std::ostringstream csv;
        io::write_dense_csv(csv, d, 17);
        std::istringstream in(csv.str());
        const auto again = std::get<DistanceGraph>(io::read_dense_csv(in, Space::distance));
        CHECK(again == d);
    }

    // Isolated vertices and label order survive.
    const auto g = parse("#distance\nq\np\tq\t1\nr\n");
    std::ostringstream out;
    io::write_edge_list(out, g);
    CHECK(std::get<DistanceGraph>(parse(out.str())).labels() == std::vector<std::string>{"q", "p", "r"});

    std::istringstream bad(",a,b\nb,0,1\na,1,0\n");
    CHECK_THROWS_AS(io::read_dense_csv(bad, Space::distance), InputError);

    TempDir tmp;
    CHECK_THROWS_AS(io::read_graph(tmp.file("t.tsv", kTriangle), Space::proximity), InputError);
    CHECK_THROWS_AS(io::read_graph(tmp.file("m.csv", ",a\na,0\n")), InputError);
    CHECK_THROWS_AS(io::read_graph(tmp.path / "missing.tsv"), InputError);
}

TEST_CASE("number formatting") {
    CHECK(io::format_number(inf) == "inf");
    CHECK(io::format_number(0.5) == "0.5");
    CHECK(io::format_number(1.0 / 3.0, 4) == "0.3333");
    CHECK(io::parse_number("inf", "x") == inf);
    CHECK(io::parse_number("1e-3", "x") == 0.001);
    CHECK_THROWS_AS(io::parse_number("1.5abc", "x"), InputError);
    CHECK_THROWS_AS(io::parse_number("nan", "x"), InputError);
    // Sign is the graph's business, not the parser's.
    CHECK(input_error("#distance\na\tb\t-inf\n") != "");
}

TEST_CASE("reports") {
    MatrixXd d(3, 3);
    d << 0, 1, 3, 1, 0, 1, 3, 1, 0;
    const DistanceGraph g(d, {"a", "b", "c"}, false);

    const auto closure = io::report_json(metric_closure(g));
    CHECK(closure["schema"] == 1);
    CHECK(closure["kind"] == "closure");
    CHECK(closure["kappa"] == 2);
    CHECK(closure["graph"]["matrix"][0][2] == 2.0);

    d(0, 2) = d(2, 0) = inf;
    const auto open = io::graph_json(DistanceGraph(d, {"a", "b", "c"}, false));
    CHECK(open["matrix"][0][2] == "inf");

    const auto sm = io::report_json(semimetric_edges(g));
    CHECK(sm["semimetric_count"] == 1);
    CHECK(sm["edges"][0]["source"] == "a");
    CHECK(sm["edges"][0]["ratio"] == 1.5);
    CHECK(io::report_text(semimetric_edges(g)).find("1.5") != std::string::npos);

    const auto toy = std::get<DistanceGraph>(io::read_graph(testing::toy_network_path()));
    const auto trace = diffusion_trace(toy, 4);
    const auto tj = io::report_json(trace);
    CHECK(tj["steps"].size() == 4);
    CHECK(tj["steps"][0]["communities"] == 3);
    CHECK(tj["dissolve_n"].is_null());

    std::ostringstream h;
    io::write_hierarchy(h, trace);
    std::istringstream lines(h.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        ++count;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, '\t');) fields.push_back(f);
        REQUIRE(fields.size() == 4);
        CHECK(fields[0] == std::to_string(count));
        CHECK(std::count(fields[3].begin(), fields[3].end(), ':') == 10);
    }
    CHECK(count == 4);

    const auto table = io::aligned_table({"name", "value"}, {{"a", "1"}, {"bb", "22.5"}});
    CHECK(table.find("   1\n") != std::string::npos);
}

TEST_CASE("cli convert") {
    TempDir tmp;
    const auto prox = tmp.file("p.tsv", "#proximity\na\tb\t0.5\nb\tc\t0.2\nc\td\t0\n");
    auto r = invoke({"convert", "-i", prox});
    REQUIRE(r.code == 0);
    auto d = std::get<DistanceGraph>(parse(r.out));
    CHECK(d(0, 1) == doctest::Approx(1.0));
    CHECK(d(1, 2) == doctest::Approx(4.0));
    CHECK(std::isinf(d(2, 3)));

    r = invoke({"convert", "-i", prox, "--lambda", "2"});
    d = std::get<DistanceGraph>(parse(r.out));
    CHECK(d(0, 1) == doctest::Approx(1.0));
    CHECK(d(1, 2) == doctest::Approx(16.0));

    // There and back again.
    const auto dist = tmp.file("d.tsv");
    REQUIRE(invoke({"--precision", "17", "convert", "-i", prox, "-o", dist}).code == 0);
    r = invoke({"--precision", "17", "convert", "-i", dist});
    const auto p = std::get<ProximityGraph>(parse(r.out));
    CHECK(p(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p(2, 3) == 0.0);

    r = invoke({"convert", "-i", prox, "--format", "csv"});
    CHECK(r.out.rfind(",a,b,c,d\n", 0) == 0);
}

TEST_CASE("cli close") {
    TempDir tmp;
    const auto tri = tmp.file("tri.tsv", kTriangle);
    auto r = invoke({"close", "-i", tri});
    REQUIRE(r.code == 0);
    CHECK(std::get<DistanceGraph>(parse(r.out))(0, 2) == 2.0);

    const auto report = tmp.file("rep.json");
    const auto out = tmp.file("closed.tsv");
    r = invoke({"close", "-i", tri, "-o", out, "--report", report});
    CHECK(r.out.find("kappa 2") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["method"] == "metric");
    CHECK(j["converged"] == true);
    CHECK(std::get<DistanceGraph>(io::read_graph(out))(0, 2) == 2.0);

    r = invoke({"close", "-i", testing::toy_network_path().string(), "-m", "ultrametric"});
    const auto ultra = std::get<DistanceGraph>(parse(r.out));
    CHECK((ultra.weights().array() == (MatrixXd::Ones(10, 10) - MatrixXd::Identity(10, 10)).array()).all());

    // dombi:1 on proximities is the metric pipeline.
    auto gen = testing::rng(409);
    const auto pg = testing::random_proximity(gen, 6);
    std::ostringstream pt;
    io::write_edge_list(pt, pg, 17);
    const auto pfile = tmp.file("rand.tsv", pt.str());
    const auto a = std::get<ProximityGraph>(parse(invoke({"--precision", "17", "close", "-i", pfile, "-m", "dombi:1"}).out));
    const auto b = std::get<ProximityGraph>(parse(invoke({"--precision", "17", "close", "-i", pfile}).out));
    CHECK(max_abs_delta(a.weights(), b.weights()) < 1e-12);
    CHECK(max_abs_delta(a.weights(), close_proximity_via_distance(pg, Method::metric()).closed.weights()) < 1e-12);

    r = invoke({"--json", "close", "-i", tri, "-m", "ultrametric"});
    CHECK(nlohmann::json::parse(r.out)["graph"]["matrix"][0][2] == 1.0);
}

TEST_CASE("cli analysis commands") {
    TempDir tmp;
    const auto toy = testing::toy_network_path().string();
    const auto tri = tmp.file("tri.tsv", kTriangle);

    auto r = invoke({"semimetric", "-i", tri, "--json"});
    // --json is global; it must precede the subcommand.
    CHECK(r.code == 2);
    r = invoke({"--json", "semimetric", "-i", tri});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["semimetric_count"] == 1);

    r = invoke({"distortion", "-i", tri});
    CHECK(std::stod(r.out) == doctest::Approx(2.0 * (1.0 / 3.0 - 1.0 / 4.0)));

    CHECK(std::stod(invoke({"asymmetry", "-i", toy, "-n", "2"}).out) == 0.0);
    CHECK(std::stod(invoke({"asymmetry", "-i", toy, "-n", "3"}).out) > 0.0);
    CHECK(invoke({"asymmetry", "-i", toy, "-n", "3", "--scheme", "power_of_two"}).code == 2);

    const auto hier = tmp.file("h.tsv");
    const auto curve = tmp.file("curve.csv");
    r = invoke({"diffuse", "-i", toy, "-n", "40", "--hierarchy", hier, "-o", curve});
    REQUIRE(r.code == 0);
    const auto text = slurp(hier);
    CHECK(std::count(text.begin(), text.end(), '\n') == 40);
    CHECK(text.rfind("1\t3\t0\t", 0) == 0);
    CHECK(slurp(curve).rfind("n,asymmetry,communities\n1,0,3\n", 0) == 0);

    r = invoke({"--json", "lambda-opt", "--mu", "10", "--cv", "0.2"});
    REQUIRE(r.code == 0);
    const double l = nlohmann::json::parse(r.out)["lambda"];
    CHECK(l >= 0.8);
    CHECK(l <= 1.2);

    CHECK(std::stod(invoke({"demorgan", "--lambda", "1"}).out) < 1e-6);
}

TEST_CASE("cli errors and exit codes") {
    TempDir tmp;
    const auto tri = tmp.file("tri.tsv", kTriangle);

    auto r = invoke({"close", "-i", tri, "-m", "euclid"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error[2]") != std::string::npos);
    CHECK(invoke({"close", "-i", tri, "--lambda", "2"}).code == 2);
    CHECK(invoke({"close", "-i", tri, "-m", "dombi:2", "--lambda", "3"}).code == 2);
    CHECK(invoke({"close", "-i", tmp.file("bad.tsv", "#distance\na\tb\tone\n")}).err.find("bad.tsv:2:") !=
          std::string::npos);
    CHECK(invoke({"close", "-i", (tmp.path / "none.tsv").string()}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);

    r = invoke({"close", "-i", tri, "-m", "diffusion", "--max-iter", "2"});
    CHECK(r.code == 3);
    CHECK(r.err.find("error[3]") != std::string::npos);

    r = invoke({"lambda-opt", "--mu", "10", "--cv", "0.2", "--target", "1e-4"});
    CHECK(r.code == 4);
    CHECK(invoke({"lambda-opt", "--mu", "-1", "--cv", "0.2"}).code == 2);
    CHECK(invoke({"--precision", "40", "close", "-i", tri}).code == 2);
}

TEST_CASE("cli config files and threads") {
    TempDir tmp;
    const auto toy = testing::toy_network_path().string();
    const auto cfg = tmp.file("run.toml", "precision = 5\n[close]\nmethod = \"ultrametric\"\n");

    const auto ultra = invoke({"--config", cfg, "close", "-i", toy});
    REQUIRE(ultra.code == 0);
    CHECK(std::get<DistanceGraph>(parse(ultra.out)).weights().maxCoeff() == 1.0);
    // Flags beat the file.
    const auto metric = invoke({"--config", cfg, "close", "-i", toy, "-m", "metric"});
    CHECK(std::get<DistanceGraph>(parse(metric.out)).weights().maxCoeff() > 1.0);

    const auto one = invoke({"--threads", "1", "diffuse", "-i", toy, "-n", "12"});
    const auto four = invoke({"--threads", "4", "diffuse", "-i", toy, "-n", "12"});
    CHECK(one.out == four.out);
}
