#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "socnet/cli/commands.hpp"
#include "socnet/cli/manifest.hpp"
#include "socnet/cli/output.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace socnet::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(SOCNET_FIXTURE_DIR) + "/" + name; }

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Fresh scratch directory, removed on scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("socnet-cli-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("format_double round-trips") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("stats") {
    TempDir dir;
    const auto r = run({"stats", "--input", fixture("k5.txt"), "--out-dir", dir / "k5"});
    REQUIRE(r.code == kExitOk);
    const auto lines = csv_lines(slurp(dir / "k5/stats.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "nodes,edges,density,HD,diameter,girth,CCG,APL,alpha");
    CHECK(lines[1].rfind("5,10,2,4,1,3,1,1,", 0) == 0);

    const auto j = json::parse(slurp(dir / "k5/stats.json"));
    CHECK(j["dataset"] == "k5");
    CHECK(j["density"] == 2.0);
    CHECK(j["ccg_mode"] == "mean-local");

    const auto m = read_manifest(dir / "k5/manifest.json");
    CHECK(m.command == "stats");
    REQUIRE(m.inputs.size() == 1);
    CHECK(m.inputs[0].sha256 == sha256_file(fixture("k5.txt")));
    CHECK(m.inputs[0].sha256.size() == 64);
    CHECK(m.outputs == std::vector<std::string>{"stats.csv", "stats.json"});
    CHECK_FALSE(m.seed);

    SUBCASE("acyclic graph and transitivity") {
        const auto p = run({"stats", "--input", fixture("p3.txt"), "--ccg-mode", "transitivity", "--out-dir",
                            dir / "p3"});
        REQUIRE(p.code == kExitOk);
        const auto row = csv_lines(slurp(dir / "p3/stats.csv"))[1];
        CHECK(row.find("acyclic") != std::string::npos);
    }
    SUBCASE("pajek by extension") {
        const auto p = run({"stats", "--input", fixture("small.net"), "--out-dir", dir / "net"});
        REQUIRE(p.code == kExitOk);
        const auto j2 = json::parse(slurp(dir / "net/stats.json"));
        CHECK(j2["nodes"] == 5);
        CHECK(j2["edges"] == 5);
    }
    SUBCASE("lcc") {
        const auto p = run({"stats", "--input", fixture("two_triangles.txt"), "--lcc", "--out-dir", dir / "lcc"});
        REQUIRE(p.code == kExitOk);
        CHECK(json::parse(slurp(dir / "lcc/stats.json"))["nodes"] == 3);
    }
}

TEST_CASE("metrics") {
    TempDir dir;
    const auto r = run({"metrics", "--input", fixture("p3.txt"), "--metrics", "closeness,betweenness",
                        "--normalized", "--out-dir", dir.path.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("closeness: min") != std::string::npos);

    CHECK(slurp(dir / "closeness.csv") == "node_label,value\na,0.3333333333333333\nb,0.5\nc,0.3333333333333333\n");
    CHECK(slurp(dir / "betweenness.normalized.csv") == "node_label,value\na,0\nb,1\nc,0\n");
    const auto j = json::parse(slurp(dir / "metrics.json"));
    CHECK(j["node_labels"] == json::array({"a", "b", "c"}));
    CHECK(j["raw"]["betweenness"] == json::array({0.0, 1.0, 0.0}));
    CHECK(j["normalized"]["closeness"] == json::array({2.0 / 3.0, 1.0, 2.0 / 3.0}));
    CHECK_FALSE(fs::exists(dir / "degree.csv"));

    SUBCASE("vertex-transitive input gives constant vectors") {
        REQUIRE(run({"metrics", "--input", fixture("triangle.txt"), "--normalized", "--out-dir", dir / "tri"}).code ==
                kExitOk);
        const auto t = json::parse(slurp(dir / "tri/metrics.json"));
        CHECK(t["node_labels"].size() == 3);
        for (const char* scale : {"raw", "normalized"}) {
            REQUIRE(t[scale].size() == 6);
            for (const auto& [name, values] : t[scale].items()) {
                INFO(scale << " " << name);
                CHECK(values[0] == values[1]);
                CHECK(values[1] == values[2]);
            }
        }
    }
}

TEST_CASE("exit codes") {
    TempDir dir;
    CHECK(run({"stats", "--input", fixture("missing.txt"), "--out-dir", dir / "a"}).code == kExitIo);
    CHECK(run({"metrics", "--input", fixture("p3.txt"), "--metrics", "pagerank", "--out-dir", dir / "b"}).code ==
          kExitUsage);
    CHECK(run({"stats", "--input", fixture("p3.txt"), "--format", "graphml", "--out-dir", dir / "c"}).code ==
          kExitUsage);
    const auto parse = run({"stats", "--input", fixture("broken.txt"), "--out-dir", dir / "d"});
    CHECK(parse.code == kExitParse);
    CHECK(parse.err.find("line 2") != std::string::npos);
    CHECK(parse.err.find("broken.txt") != std::string::npos);
    CHECK(run({"stats", "--input", fixture("p3.txt"), "--ccg-mode", "global", "--out-dir", dir / "e"}).code ==
          kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"sample", "--input", fixture("k5.txt"), "--seed", "1", "--out-dir", dir / "f"}).code == kExitUsage);
    CHECK(run({"--version"}).code == kExitOk);
    CHECK(run({"stats", "--help"}).code == kExitOk);
}

TEST_CASE("sample") {
    TempDir dir;
    auto args = [&](const std::string& out) {
        return std::vector<std::string>{"sample", "--input",  fixture("ring40.txt"), "--method", "snowball",
                                        "--seed", "7",        "--size",              "12",       "--count",
                                        "4",      "--out-dir", dir / out};
    };
    REQUIRE(run(args("a")).code == kExitOk);
    auto second = args("b");
    second.push_back("--threads");
    second.push_back("1");
    REQUIRE(run(second).code == kExitOk);
    for (const char* f : {"sample_000.txt", "sample_001.txt", "sample_002.txt", "sample_003.txt", "samples.json"})
        CHECK(slurp(dir / (std::string("a/") + f)) == slurp(dir / (std::string("b/") + f)));

    const auto j = json::parse(slurp(dir / "a/samples.json"));
    REQUIRE(j["samples"].size() == 4);
    CHECK(j["samples"][2]["seed"] == 9);
    CHECK(j["samples"][0]["nodes"] == 12);
    CHECK(read_manifest(dir / "a/manifest.json").seed == std::optional<std::uint64_t>{7});

    SUBCASE("size over the graph size") {
        auto big = args("c");
        big[8] = "41";
        CHECK(run(big).code == kExitUsage);
        CHECK_FALSE(fs::exists(dir / "c/sample_000.txt"));
    }
    SUBCASE("component too small") {
        const auto r = run({"sample", "--input", fixture("two_triangles.txt"), "--method", "snowball", "--seed",
                            "0", "--size", "4", "--count", "3", "--out-dir", dir / "d"});
        CHECK(r.code == kExitCompute);
        CHECK(r.err.find("sample 0") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "d/sample_000.txt"));
        CHECK_FALSE(fs::exists(dir / "d/samples.json"));

        const auto ok = run({"sample", "--input", fixture("two_triangles.txt"), "--method", "snowball", "--seed",
                             "0", "--size", "4", "--count", "3", "--on-exhaustion", "reseed", "--out-dir", dir / "e"});
        CHECK(ok.code == kExitOk);
        CHECK(json::parse(slurp(dir / "e/samples.json"))["samples"][0]["reseeds"] == 1);
    }
}

TEST_CASE("robustness") {
    TempDir dir;
    const auto r = run({"robustness", "--input", fixture("k5.txt"), "--method", "node", "--seed", "3", "--size", "5",
                        "--count", "3", "--out-dir", dir / "a"});
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(slurp(dir / "a/robustness.json"));
    for (const auto& [name, rep] : j["metrics"].items()) {
        INFO(name);
        for (double c : rep["correlations"]) CHECK(c == doctest::Approx(1.0));
        CHECK(rep["flagged"].empty());
    }
    CHECK(j["metrics"].size() == 6);
    CHECK(csv_lines(slurp(dir / "a/robustness.csv")).size() == 1 + 6 * 3 * 101);
    CHECK(csv_lines(slurp(dir / "a/robustness_average.csv")).size() == 1 + 6 * 101);

    const auto strict = run({"robustness", "--input", fixture("k5.txt"), "--method", "node", "--seed", "3", "--size",
                             "5", "--count", "3", "--metrics", "degree", "--threshold", "1.1", "--out-dir", dir / "b"});
    REQUIRE(strict.code == kExitOk);
    CHECK(json::parse(slurp(dir / "b/robustness.json"))["metrics"]["degree"]["flagged"] == json::array({0, 1, 2}));
    CHECK(strict.out.find("flagged: metric=degree sample=2") != std::string::npos);

    SUBCASE("a metric failure is recorded and the rest still written") {
        const auto tiny = run({"robustness", "--input", fixture("k5.txt"), "--method", "node", "--seed", "1", "--size",
                               "1", "--count", "2", "--metrics", "degree", "--out-dir", dir / "c"});
        CHECK(tiny.code == kExitCompute);
        const auto doc = json::parse(slurp(dir / "c/robustness.json"));
        CHECK(doc["metrics"]["degree"].contains("error"));
        CHECK(fs::exists(dir / "c/manifest.json"));
    }
}

TEST_CASE("report") {
    TempDir dir;
    const auto r = run({"report", "--input", fixture("k5.txt"), "--input", fixture("ring40.txt"), "--full-graph",
                        "--out-dir", dir / "a"});
    REQUIRE(r.code == kExitOk);
    const auto stats = csv_lines(slurp(dir / "a/report_stats.csv"));
    REQUIRE(stats.size() == 3);
    CHECK(stats[0] == "dataset,nodes,edges,density,HD,diameter,girth,CCG,APL,alpha");
    CHECK(stats[1].rfind("k5,5,10,2,4,1,3,1,1,", 0) == 0);

    // K5 degree: everything in bin 100, so trimming leaves one row.
    const auto dists = slurp(dir / "a/report_distributions.csv");
    CHECK(dists.find("k5,degree,100,5\n") != std::string::npos);
    CHECK(dists.find("k5,degree,99,") == std::string::npos);
    // Eccentricity is never trimmed.
    CHECK(dists.find("k5,eccentricity,0,0\n") != std::string::npos);

    const auto j = json::parse(slurp(dir / "a/report.json"));
    CHECK(j["datasets"].size() == 2);
    CHECK(j["datasets"][1]["dataset"] == "ring40");

    CHECK(run({"report", "--full-graph", "--out-dir", dir / "b"}).code == kExitUsage);
    CHECK(run({"report", "--input", fixture("k5.txt"), "--out-dir", dir / "c"}).code == kExitUsage);

    const auto sampled = run({"report", "--input", fixture("ring40.txt"), "--method", "snowball", "--seed", "2",
                              "--size", "20", "--out-dir", dir / "d"});
    REQUIRE(sampled.code == kExitOk);
    CHECK(json::parse(slurp(dir / "d/report.json"))["datasets"][0]["stats"]["nodes"] == 20);
}

TEST_CASE("commands leave their inputs untouched") {
    TempDir dir;
    const auto copy = dir / "ring.txt";
    fs::copy_file(fixture("ring40.txt"), copy);
    const auto before = sha256_file(copy);
    const auto time_before = fs::last_write_time(copy);
    const std::vector<std::vector<std::string>> commands = {
        {"stats", "--input", copy, "--lcc"},
        {"metrics", "--input", copy, "--normalized"},
        {"sample", "--input", copy, "--method", "link", "--seed", "1", "--size", "10", "--count", "2"},
        {"robustness", "--input", copy, "--method", "node", "--seed", "1", "--size", "20", "--count", "2"},
        {"report", "--input", copy, "--full-graph"},
    };
    for (auto args : commands) {
        args.insert(args.end(), {"--out-dir", dir / "out"});
        REQUIRE(run(args).code == kExitOk);
    }
    CHECK(sha256_file(copy) == before);
    CHECK(fs::last_write_time(copy) == time_before);
}

TEST_CASE("replay reproduces outputs") {
    TempDir dir;
    REQUIRE(run({"robustness", "--input", fixture("ring40.txt"), "--method", "link", "--seed", "11", "--size", "15",
                 "--count", "5", "--out-dir", dir / "orig"})
                .code == kExitOk);
    REQUIRE(run({"replay", "--manifest", dir / "orig/manifest.json", "--out-dir", dir / "again"}).code == kExitOk);
    for (const char* f : {"robustness.json", "robustness.csv", "robustness_average.csv"})
        CHECK(slurp(dir / (std::string("orig/") + f)) == slurp(dir / (std::string("again/") + f)));

    SUBCASE("changed input is refused") {
        const auto copy = dir / "g.txt";
        fs::copy_file(fixture("k5.txt"), copy);
        REQUIRE(run({"stats", "--input", copy, "--out-dir", dir / "s"}).code == kExitOk);
        std::ofstream(copy, std::ios::app) << "6\t7\n";
        const auto r = run({"replay", "--manifest", dir / "s/manifest.json", "--out-dir", dir / "s2"});
        CHECK(r.code == kExitIo);
        CHECK(r.err.find("changed") != std::string::npos);
    }
}
