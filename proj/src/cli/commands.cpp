#include "socnet/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "socnet/cli/manifest.hpp"
#include "socnet/cli/output.hpp"
#include "socnet/distributions.hpp"
#include "socnet/global_stats.hpp"
#include "socnet/io.hpp"
#include "socnet/node_metrics.hpp"
#include "socnet/sampling.hpp"

#ifndef SOCNET_VERSION
#define SOCNET_VERSION "0.0.0"
#endif

namespace socnet::cli {

const char* tool_version() { return SOCNET_VERSION; }

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct InputOptions {
    std::vector<std::string> inputs;
    std::string format = "auto";
    bool lcc = false;
};

struct SamplingOptions {
    std::string method;
    std::size_t size = 500;
    std::size_t count = 10;
    std::uint64_t seed = 0;
    std::string on_exhaustion = "error";
};

struct CommonOptions {
    std::string out_dir = "out";
    unsigned threads = 0;
};

struct LoadedGraph {
    std::string path;
    std::string name;
    Graph graph;
};

/// Everything a command hands back for the manifest.
struct CommandContext {
    RunManifest manifest;
    std::ostream& out;
    std::ostream& err;
};

void add_input_options(CLI::App* cmd, InputOptions& o, bool many) {
    if (many)
        cmd->add_option("--input", o.inputs, "Graph file (repeatable)")->required();
    else
        cmd->add_option("--input", o.inputs, "Graph file")->required()->expected(1);
    cmd->add_option("--format", o.format, "Input format: snap, pajek or auto (by extension)");
    cmd->add_flag("--lcc", o.lcc, "Reduce the input to its largest connected component");
}

void add_sampling_options(CLI::App* cmd, SamplingOptions& o, bool required) {
    auto* method = cmd->add_option("--method", o.method, "Sampling method: node, link or snowball");
    auto* seed = cmd->add_option("--seed", o.seed, "Seed for all randomness");
    if (required) {
        method->required();
        seed->required();
    }
    cmd->add_option("--size", o.size, "Nodes per sample")->capture_default_str();
    cmd->add_option("--on-exhaustion", o.on_exhaustion, "error or reseed")->capture_default_str();
}

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores); results do not depend on it");
}

GraphFormat format_of(const InputOptions& o) {
    const auto f = parse_graph_format(o.format);
    if (!f) throw UsageError("unsupported format '" + o.format + "' (expected snap, pajek or auto)");
    return *f;
}

std::string dataset_name(const fs::path& p) {
    fs::path stem = p.filename();
    if (stem.extension() == ".gz") stem = stem.stem();
    return stem.stem().string();
}

LoadedGraph load(const std::string& path, const InputOptions& o, CommandContext& ctx) {
    if (!fs::exists(path)) throw IoError("input not found: " + path);
    ParseDiagnostics diag;
    Graph g = read_graph({path, format_of(o), Directedness::Auto}, &diag);
    for (const auto& w : diag.warnings) ctx.err << "warning: " << path << ": " << w << '\n';
    if (o.lcc) g = largest_connected_component(g);
    ctx.manifest.inputs.push_back({path, sha256_file(path)});
    return {path, dataset_name(path), std::move(g)};
}

SamplerConfig sampler_config(const SamplingOptions& o) {
    SamplerConfig cfg;
    const auto method = parse_sampling_method(o.method);
    if (!method) throw UsageError("unknown sampling method '" + o.method + "' (expected node, link or snowball)");
    const auto exhaustion = parse_on_exhaustion(o.on_exhaustion);
    if (!exhaustion) throw UsageError("unknown --on-exhaustion value '" + o.on_exhaustion + "'");
    if (o.size < 1) throw UsageError("--size must be at least 1");
    cfg.method = *method;
    cfg.target_size = o.size;
    cfg.rng_seed = o.seed;
    cfg.on_exhaustion = *exhaustion;
    return cfg;
}

void check_sample_size(const SamplerConfig& cfg, const LoadedGraph& g) {
    if (cfg.target_size > g.graph.node_count())
        throw UsageError("--size " + std::to_string(cfg.target_size) + " exceeds the " +
                         std::to_string(g.graph.node_count()) + " nodes of " + g.path);
}

std::vector<Metric> metric_list(const std::vector<std::string>& names) {
    if (names.empty()) return {std::begin(kAllMetrics), std::end(kAllMetrics)};
    std::vector<Metric> out;
    for (const auto& n : names) {
        const auto m = parse_metric(n);
        if (!m) {
            std::string valid;
            for (Metric x : kAllMetrics) valid += (valid.empty() ? "" : ", ") + std::string(to_string(x));
            throw UsageError("unknown metric '" + n + "'; valid metrics: " + valid);
        }
        out.push_back(*m);
    }
    return out;
}

ClusteringMode clustering_mode(const std::string& name) {
    const auto m = parse_clustering_mode(name);
    if (!m) throw UsageError("unknown --ccg-mode '" + name + "' (expected mean-local or transitivity)");
    return *m;
}

json sample_entry(std::size_t index, std::uint64_t seed, const Sample& s) {
    return {{"index", index},
            {"seed", seed},
            {"nodes", s.graph.node_count()},
            {"edges", s.graph.edge_count()},
            {"reseeds", s.reseeds},
            {"exhausted", s.exhausted}};
}

std::string sample_file_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sample_%03zu.txt", i);
    return buf;
}

// ---------------------------------------------------------------- commands

int cmd_stats(const InputOptions& in, const std::string& ccg_mode, const CommonOptions& common,
              CommandContext& ctx) {
    const auto mode = clustering_mode(ccg_mode);
    const auto loaded = load(in.inputs.front(), in, ctx);
    const auto stats = compute_global_stats(loaded.graph, mode, {common.threads});

    OutputDir out(common.out_dir);
    out.write("stats.csv", stats_csv_header() + "\n" + stats_csv_row(stats) + "\n");
    json j = to_json(stats);
    j["dataset"] = loaded.name;
    out.write("stats.json", j.dump(2) + "\n");
    ctx.manifest.outputs = out.files();

    ctx.out << stats_table_header() << '\n' << stats_table_row(loaded.name, stats) << '\n';
    return kExitOk;
}

int cmd_metrics(const InputOptions& in, const std::vector<std::string>& names, bool normalized,
                const CommonOptions& common, CommandContext& ctx) {
    const auto metrics = metric_list(names);
    const auto loaded = load(in.inputs.front(), in, ctx);
    const Graph& g = loaded.graph;

    OutputDir out(common.out_dir);
    json raw = json::object(), norm = json::object();
    json labels = json::array();
    for (NodeId v = 0; v < g.node_count(); ++v) labels.push_back(g.label(v));

    for (Metric m : metrics) {
        const auto name = std::string(to_string(m));
        const auto values = compute_metric(g, m, {common.threads});
        out.write(name + ".csv", metric_csv(g, values));
        raw[name] = values.values;

        const auto [lo, hi] = std::minmax_element(values.values.begin(), values.values.end());
        double sum = 0.0;
        for (double x : values.values) sum += x;
        if (!values.values.empty())
            ctx.out << name << ": min " << format_double(*lo) << " max " << format_double(*hi) << " mean "
                    << format_double(sum / static_cast<double>(values.values.size())) << '\n';

        if (normalized) {
            const auto n01 = normalize_01(values, g);
            out.write(name + ".normalized.csv", metric_csv(g, n01));
            norm[name] = n01.values;
        }
    }
    json doc = {{"dataset", loaded.name}, {"node_labels", labels}, {"raw", raw}};
    if (normalized) doc["normalized"] = norm;
    out.write("metrics.json", doc.dump(2) + "\n");
    ctx.manifest.outputs = out.files();
    return kExitOk;
}

int cmd_sample(const InputOptions& in, const SamplingOptions& so, const CommonOptions& common,
               CommandContext& ctx) {
    const auto cfg = sampler_config(so);
    if (so.count < 1) throw UsageError("--count must be at least 1");
    ctx.manifest.seed = so.seed;
    const auto loaded = load(in.inputs.front(), in, ctx);
    check_sample_size(cfg, loaded);

    OutputDir out(common.out_dir);
    try {
        const auto run = run_repeated(loaded.graph, cfg, so.count, loaded.name, {common.threads});
        json entries = json::array();
        for (std::size_t i = 0; i < run.samples.size(); ++i) {
            std::ostringstream text;
            write_snap_edgelist(text, run.samples[i].graph);
            out.write(sample_file_name(i), text.str());
            json e = sample_entry(i, derived_seed(cfg.rng_seed, i), run.samples[i]);
            e["file"] = sample_file_name(i);
            entries.push_back(e);
        }
        json doc = {{"source", loaded.path},
                    {"dataset", loaded.name},
                    {"method", std::string(to_string(cfg.method))},
                    {"seed", cfg.rng_seed},
                    {"size", cfg.target_size},
                    {"count", so.count},
                    {"on_exhaustion", std::string(to_string(cfg.on_exhaustion))},
                    {"samples", entries}};
        out.write("samples.json", doc.dump(2) + "\n");
    } catch (...) {
        out.rollback();
        throw;
    }
    ctx.manifest.outputs = out.files();
    ctx.out << "wrote " << so.count << " samples to " << out.path().string() << '\n';
    return kExitOk;
}

int cmd_robustness(const InputOptions& in, const SamplingOptions& so, const std::vector<std::string>& names,
                   double threshold, const CommonOptions& common, CommandContext& ctx) {
    const auto cfg = sampler_config(so);
    const auto metrics = metric_list(names);
    if (so.count < 1) throw UsageError("--count must be at least 1");
    ctx.manifest.seed = so.seed;
    const auto loaded = load(in.inputs.front(), in, ctx);
    check_sample_size(cfg, loaded);
    const auto run = run_repeated(loaded.graph, cfg, so.count, loaded.name, {common.threads});

    json reports = json::object();
    std::string long_csv = "metric,sample_id,bin,count\n";
    std::string average_csv = "metric,bin,mean\n";
    bool failed = false;
    for (Metric m : metrics) {
        const auto name = std::string(to_string(m));
        try {
            const auto r = robustness_report(run, m, threshold, {common.threads});
            reports[name] = to_json(r);
            for (std::size_t i = 0; i < r.per_sample.size(); ++i)
                for (std::size_t k = 0; k < kBinCount; ++k)
                    long_csv += name + ',' + std::to_string(i) + ',' + std::to_string(k) + ',' +
                                std::to_string(r.per_sample[i].bins[k]) + '\n';
            for (std::size_t k = 0; k < kBinCount; ++k)
                average_csv += name + ',' + std::to_string(k) + ',' + format_double(r.average[k]) + '\n';
            for (std::size_t i : r.flagged)
                ctx.out << "flagged: metric=" << name << " sample=" << i
                        << " correlation=" << format_double(r.correlations[i]) << '\n';
        } catch (const ComputeError& e) {
            failed = true;
            reports[name] = {{"error", e.what()}};
            ctx.err << "error: " << e.what() << '\n';
        }
    }

    json samples = json::array();
    for (std::size_t i = 0; i < run.samples.size(); ++i)
        samples.push_back(sample_entry(i, derived_seed(cfg.rng_seed, i), run.samples[i]));
    json doc = {{"source", loaded.path},
                {"dataset", loaded.name},
                {"method", std::string(to_string(cfg.method))},
                {"seed", cfg.rng_seed},
                {"size", cfg.target_size},
                {"count", so.count},
                {"threshold", threshold},
                {"samples", samples},
                {"metrics", reports}};

    OutputDir out(common.out_dir);
    out.write("robustness.json", doc.dump(2) + "\n");
    out.write("robustness.csv", long_csv);
    out.write("robustness_average.csv", average_csv);
    ctx.manifest.outputs = out.files();
    return failed ? kExitCompute : kExitOk;
}

int cmd_report(const InputOptions& in, const SamplingOptions& so, bool full_graph, const std::string& ccg_mode,
               double trim_min, const CommonOptions& common, CommandContext& ctx) {
    if (in.inputs.empty()) throw UsageError("report needs at least one --input");
    const auto mode = clustering_mode(ccg_mode);
    std::optional<SamplerConfig> cfg;
    if (!full_graph) {
        if (so.method.empty()) throw UsageError("report needs --method and --seed, or --full-graph");
        cfg = sampler_config(so);
        ctx.manifest.seed = so.seed;
    }

    std::string stats_csv = "dataset," + stats_csv_header() + "\n";
    std::string dist_csv = "dataset,metric,bin,count\n";
    json datasets = json::array();
    ctx.out << stats_table_header() << '\n';

    for (const auto& path : in.inputs) {
        const auto loaded = load(path, in, ctx);
        if (cfg) check_sample_size(*cfg, loaded);
        try {
            Graph g = cfg ? draw_sample(loaded.graph, *cfg).graph : loaded.graph;
            const auto stats = compute_global_stats(g, mode, {common.threads});
            stats_csv += csv_field(loaded.name) + ',' + stats_csv_row(stats) + '\n';
            ctx.out << stats_table_row(loaded.name, stats) << '\n';

            json dists = json::object();
            for (Metric m : kAllMetrics) {
                const auto name = std::string(to_string(m));
                const auto d = bin_distribution(compute_normalized_metric(g, m, {common.threads}));
                json entry = to_json(d);
                const auto reals = as_reals(d);
                std::size_t first = 0;
                std::vector<double> shown(reals.begin(), reals.end());
                if (trimmed_in_reports(m)) {
                    const auto t = trim_bins(reals, {trim_min});
                    if (t.warning) ctx.err << "warning: " << loaded.name << ", " << name << ": " << *t.warning << '\n';
                    first = t.first_bin;
                    shown = t.counts;
                    entry["trimmed"] = {{"first_bin", t.first_bin}, {"bins", t.counts.size()}};
                }
                for (std::size_t k = 0; k < shown.size(); ++k)
                    dist_csv += csv_field(loaded.name) + ',' + name + ',' + std::to_string(first + k) + ',' +
                                format_double(shown[k]) + '\n';
                dists[name] = entry;
            }
            datasets.push_back({{"dataset", loaded.name}, {"source", loaded.path}, {"stats", to_json(stats)},
                                {"distributions", dists}});
        } catch (const Error& e) {
            throw ComputeError(loaded.name + ": " + e.what());
        }
    }

    json doc = {{"datasets", datasets}, {"trim_min_count", trim_min}};
    if (cfg)
        doc["sampling"] = {{"method", std::string(to_string(cfg->method))},
                           {"seed", cfg->rng_seed},
                           {"size", cfg->target_size}};
    OutputDir out(common.out_dir);
    out.write("report_stats.csv", stats_csv);
    out.write("report_distributions.csv", dist_csv);
    out.write("report.json", doc.dump(2) + "\n");
    ctx.manifest.outputs = out.files();
    return kExitOk;
}

json recorded_flags(const CLI::App* cmd) {
    json flags = json::object();
    for (const auto* opt : cmd->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        auto name = opt->get_name();
        const auto& results = opt->results();
        if (results.size() == 1)
            flags[name] = results.front();
        else
            flags[name] = results;
    }
    return flags;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_dir, std::ostream& out,
               std::ostream& err) {
    const auto manifest = read_manifest(manifest_path);
    for (const auto& input : manifest.inputs) {
        if (!fs::exists(input.path)) throw IoError("manifest input missing: " + input.path);
        if (sha256_file(input.path) != input.sha256)
            throw IoError("manifest input changed since the recorded run: " + input.path);
    }
    auto args = manifest.arguments;
    if (!out_dir.empty()) {
        auto it = std::find(args.begin(), args.end(), "--out-dir");
        if (it != args.end() && std::next(it) != args.end()) {
            *std::next(it) = out_dir;
        } else {
            args.push_back("--out-dir");
            args.push_back(out_dir);
        }
    }
    return run_cli(args, out, err);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structural statistics, node metrics and sampling robustness for social networks", "socnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    InputOptions input;
    SamplingOptions sampling;
    CommonOptions common;
    std::string ccg_mode = "mean-local";
    std::vector<std::string> metric_names;
    bool normalized = false;
    double threshold = 0.9;
    bool full_graph = false;
    double trim_min = 1.0;
    std::string manifest_path;

    auto* stats = app.add_subcommand("stats", "Global statistics of one graph");
    add_input_options(stats, input, false);
    stats->add_option("--ccg-mode", ccg_mode, "mean-local or transitivity")->capture_default_str();
    add_common_options(stats, common);

    auto* metrics = app.add_subcommand("metrics", "Per-node metric vectors");
    add_input_options(metrics, input, false);
    metrics->add_option("--metrics", metric_names, "Comma-separated metric names (default: all)")->delimiter(',');
    metrics->add_flag("--normalized", normalized, "Also write the [0,1]-normalized vectors");
    add_common_options(metrics, common);

    auto* sample = app.add_subcommand("sample", "Draw repeated samples and write them as edge lists");
    add_input_options(sample, input, false);
    add_sampling_options(sample, sampling, true);
    sample->add_option("--count", sampling.count, "Number of samples")->capture_default_str();
    add_common_options(sample, common);

    auto* robustness = app.add_subcommand("robustness", "Correlation of each sample's distribution with the average");
    add_input_options(robustness, input, false);
    add_sampling_options(robustness, sampling, true);
    robustness->add_option("--count", sampling.count, "Number of samples")->capture_default_str();
    robustness->add_option("--metrics", metric_names, "Comma-separated metric names (default: all)")->delimiter(',');
    robustness->add_option("--threshold", threshold, "Flag samples with correlation below this")->capture_default_str();
    add_common_options(robustness, common);

    auto* report = app.add_subcommand("report", "Statistics and binned distributions for several datasets");
    add_input_options(report, input, true);
    add_sampling_options(report, sampling, false);
    report->add_flag("--full-graph", full_graph, "Use each whole graph instead of one sample");
    report->add_option("--ccg-mode", ccg_mode, "mean-local or transitivity")->capture_default_str();
    report->add_option("--trim-min-count", trim_min, "Extreme bins below this count are cut")->capture_default_str();
    add_common_options(report, common);

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("--manifest", manifest_path, "manifest.json of an earlier run")->required();
    std::string replay_out;
    replay->add_option("--out-dir", replay_out, "Write outputs here instead of the recorded directory");

    std::vector<std::string> argv_storage{"socnet"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (replay->parsed()) return cmd_replay(manifest_path, replay_out, out, err);

        CLI::App* cmd = app.get_subcommands().front();
        CommandContext ctx{{}, out, err};
        ctx.manifest.command = cmd->get_name();
        ctx.manifest.arguments = args;
        ctx.manifest.flags = recorded_flags(cmd);
        ctx.manifest.tool_version = tool_version();
        ctx.manifest.timestamp = utc_timestamp();

        int code = kExitOk;
        if (cmd == stats) code = cmd_stats(input, ccg_mode, common, ctx);
        else if (cmd == metrics) code = cmd_metrics(input, metric_names, normalized, common, ctx);
        else if (cmd == sample) code = cmd_sample(input, sampling, common, ctx);
        else if (cmd == robustness) code = cmd_robustness(input, sampling, metric_names, threshold, common, ctx);
        else if (cmd == report) code = cmd_report(input, sampling, full_graph, ccg_mode, trim_min, common, ctx);
        write_manifest(common.out_dir, ctx.manifest);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    }
}

} // namespace socnet::cli
