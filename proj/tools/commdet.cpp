// commdet: batch driver for planted-dense-subgraph experiments.
//
//   generate   draw a null or planted graph, write edge-list + manifest
//   stat       evaluate a named statistic on an edge-list file
//   calibrate  empirical null critical value for a statistic (config file)
//   diagram    (lambda0, lambda1) risk sweep with boundary contours (config)
//   lrlab      truncated-likelihood moments, exhaustive or subset-exact (config)
//   verify     run the full oracle/invariant battery
//
// Exit codes: 0 ok, 2 invalid parameters, 3 I/O failure, 4 feasibility cap,
// 5 internal invariant / verification failure.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commdet/analytic.hpp"
#include "commdet/errors.hpp"
#include "commdet/generate.hpp"
#include "commdet/inference.hpp"
#include "commdet/io.hpp"
#include "commdet/likelihood.hpp"
#include "commdet/rational.hpp"
#include "commdet/statistics.hpp"
#include "commdet/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;
using namespace commdet;

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Every file-producing command writes a manifest: the full parameter set, the
// master seed and a digest per output.  Re-running the manifest's command
// reproduces the outputs byte for byte.
void write_manifest(const std::string& path, const std::string& command,
                    const json& parameters, std::uint64_t seed,
                    const std::vector<std::string>& outputs,
                    const json& extra = json::object()) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["master_seed"] = seed;
    m["version"] = kVersion;
    m["created_utc"] = utc_now();
    json outs = json::array();
    for (const auto& p : outputs)
        outs.push_back({{"path", p}, {"fnv1a64", hex64(fnv1a64_file(p))}});
    m["outputs"] = outs;
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    write_file(path, m.dump(2) + "\n");
}

long long to_ll(const std::string& s) { return std::stoll(s); }
double to_d(const std::string& s) { return std::stod(s); }

std::uint64_t to_seed(const std::string& s) { return std::stoull(s); }

// ---------------------------------------------------------------------------

int cmd_generate(int N, double p0, std::optional<int> n, std::optional<double> p1,
                 std::uint64_t seed, const std::string& out, std::string manifest) {
    if (manifest.empty()) manifest = out + ".manifest.json";
    json params = {{"N", N}, {"p0", p0}};
    json extra = json::object();
    if (n && p1) {
        auto inst = gen_planted(N, p0, *n, *p1, seed);
        save_edge_list(inst.graph, out);
        params["n"] = *n;
        params["p1"] = *p1;
        extra["community"] = inst.community;
    } else if (n || p1) {
        throw std::invalid_argument("generate: --n and --p1 must be given together");
    } else {
        save_edge_list(gen_er(N, p0, seed), out);
    }
    write_manifest(manifest, "generate", params, seed, {out}, extra);
    std::cout << out << "\n";
    return 0;
}

int cmd_stat(const std::string& in, const std::string& stat_text,
             const std::string& json_out) {
    Graph g = load_edge_list(in);
    TestSpec spec = TestSpec::parse(stat_text);
    double value = eval_statistic(spec, g);
    if (spec.integer_valued())
        std::cout << static_cast<long long>(value) << "\n";
    else
        std::cout << format_double(value) << "\n";
    if (!json_out.empty()) {
        json rec = {{"input", in},
                    {"statistic", spec.display()},
                    {"value", value},
                    {"N", g.num_vertices()},
                    {"m", g.num_edges()},
                    {"version", kVersion}};
        write_file(json_out, rec.dump(2) + "\n");
    }
    return 0;
}

int cmd_calibrate(const std::string& config_path, int threads) {
    auto cfg = load_config(config_path);
    TestSpec spec = TestSpec::parse(config_get(cfg, "statistic"));
    int N = static_cast<int>(to_ll(config_get(cfg, "N")));
    double p0 = cfg.count("p0") ? to_d(cfg.at("p0"))
                                : to_d(config_get(cfg, "lambda0")) / static_cast<double>(N);
    double level = to_d(config_get(cfg, "level"));
    int R = static_cast<int>(to_ll(config_get(cfg, "R")));
    std::uint64_t seed = to_seed(config_get(cfg, "seed"));
    std::string out = config_get_or(cfg, "out", "calibration.json");

    auto cal = calibrate(spec, N, p0, level, R, seed, threads);
    json rec = {{"statistic", spec.display()},
                {"N", N},
                {"p0", p0},
                {"level", cal.level},
                {"t", cal.t},
                {"achieved", cal.achieved},
                {"R", cal.replicates},
                {"seed", cal.seed},
                {"version", kVersion}};
    write_file(out, rec.dump(2) + "\n");
    write_manifest(out + ".manifest.json", "calibrate",
                   {{"config", config_path}, {"N", N}, {"p0", p0}, {"level", level},
                    {"R", R}, {"statistic", spec.display()}},
                   seed, {out});
    std::cout << format_double(cal.t) << "\n";
    return 0;
}

int cmd_diagram(const std::string& config_path, int threads) {
    auto cfg = load_config(config_path);
    int N = static_cast<int>(to_ll(config_get(cfg, "N")));
    int n = static_cast<int>(to_ll(config_get(cfg, "n")));
    auto l0s = parse_double_list(config_get(cfg, "lambda0"));
    auto l1s = parse_double_list(config_get(cfg, "lambda1"));
    double level = to_d(config_get(cfg, "level"));
    int R = static_cast<int>(to_ll(config_get(cfg, "R")));
    std::uint64_t seed = to_seed(config_get(cfg, "seed"));
    std::string out = config_get_or(cfg, "out", "diagram.csv");
    std::string curves_out = config_get_or(cfg, "curves_out", "");

    std::vector<TestSpec> tests;
    {
        std::string spec_list = config_get(cfg, "tests");
        std::stringstream ss(spec_list);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            tests.push_back(TestSpec::parse(item));
        }
        require(!tests.empty(), "diagram: no tests given");
    }

    auto grid = diagram(N, n, l0s, l1s, tests, level, R, seed, threads);
    write_file(out, diagram_csv(grid));
    std::vector<std::string> outputs = {out};
    if (!curves_out.empty()) {
        write_file(curves_out, curves_csv(boundary_curves(N, n, l0s)));
        outputs.push_back(curves_out);
    }
    write_manifest(out + ".manifest.json", "diagram",
                   {{"config", config_path},
                    {"N", N},
                    {"n", n},
                    {"lambda0", l0s},
                    {"lambda1", l1s},
                    {"level", level},
                    {"R", R},
                    {"threads_note", "outputs are independent of --threads"}},
                   seed, outputs);
    std::cout << out << "\n";
    return 0;
}

TruncationEvent parse_trunc(const std::map<std::string, std::string>& cfg) {
    std::string kind = config_get_or(cfg, "trunc", "none");
    if (kind == "none") return TruncationEvent::none();
    if (kind == "forest") return TruncationEvent::forest();
    if (kind == "forest_with_cap")
        return TruncationEvent::forest_with_cap(to_d(config_get(cfg, "cap")));
    if (kind == "edge_cap") {
        // "edge_caps=k1:w1,k2:w2,..."
        std::vector<std::pair<int, double>> caps;
        std::stringstream ss(config_get(cfg, "edge_caps"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            require(colon != std::string::npos, "lrlab: edge_caps expects k:w pairs");
            caps.emplace_back(std::stoi(item.substr(0, colon)),
                              to_d(item.substr(colon + 1)));
        }
        return TruncationEvent::edge_cap_profile(std::move(caps));
    }
    throw std::invalid_argument("lrlab: unknown trunc kind: " + kind);
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("expected num/den: " + text);
    return Rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

int cmd_lrlab(const std::string& config_path) {
    auto cfg = load_config(config_path);
    int N = static_cast<int>(to_ll(config_get(cfg, "N")));
    int n = static_cast<int>(to_ll(config_get(cfg, "n")));
    TruncationEvent trunc = parse_trunc(cfg);
    std::string mode = config_get_or(cfg, "mode", "double");
    std::string out = config_get_or(cfg, "out", "");

    json rec = {{"N", N}, {"n", n}, {"trunc", config_get_or(cfg, "trunc", "none")},
                {"mode", mode}, {"version", kVersion}};
    if (mode == "rational") {
        Rat p0 = parse_rat(config_get(cfg, "p0"));
        Rat p1 = parse_rat(config_get(cfg, "p1"));
        auto m = exhaustive_moments_exact(N, n, p0, p1, trunc);
        rec["p0"] = p0.to_string();
        rec["p1"] = p1.to_string();
        rec["E0_L"] = m.e0_lt.to_double();
        rec["E0_Lt"] = m.e0_lt.to_double();
        rec["E0_Lt_exact"] = m.e0_lt.to_string();
        rec["E0_Lt2"] = m.e0_lt2.to_double();
        rec["E0_Lt2_exact"] = m.e0_lt2.to_string();
        rec["PS_Gamma"] = m.ps_gamma.to_double();
        rec["PS_Gamma_exact"] = m.ps_gamma.to_string();
        rec["risk_lower_bound"] = risk_lower_bound(m.e0_lt.to_double(), m.e0_lt2.to_double());
    } else {
        double p0 = to_d(config_get(cfg, "p0"));
        double p1 = to_d(config_get(cfg, "p1"));
        auto m = exhaustive_moments(N, n, p0, p1, trunc);
        rec["p0"] = p0;
        rec["p1"] = p1;
        rec["E0_L"] = m.e0_lt;
        rec["E0_Lt"] = m.e0_lt;
        rec["E0_Lt2"] = m.e0_lt2;
        rec["PS_Gamma"] = m.ps_gamma;
        rec["risk_lower_bound"] = risk_lower_bound(m.e0_lt, m.e0_lt2);
    }
    std::string text = rec.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
        std::cout << out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& config_path, std::uint64_t seed_flag, int threads,
               const std::string& only) {
    VerifyOptions opts;
    opts.seed = seed_flag;
    opts.threads = threads;
    opts.only = only;
    if (!config_path.empty()) {
        auto cfg = load_config(config_path);
        opts.seed = to_seed(config_get(cfg, "seed"));
        if (cfg.count("threads")) opts.threads = static_cast<int>(to_ll(cfg.at("threads")));
        if (cfg.count("only")) opts.only = cfg.at("only");
    }
    auto results = run_acceptance(opts);
    int passed = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
        if (r.pass) ++passed;
    }
    std::cout << passed << "/" << results.size() << " checks passed (seed "
              << opts.seed << ")\n";
    return passed == static_cast<int>(results.size()) ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dense-subgraph detection workbench"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (never changes outputs)");

    // generate
    auto* gen = app.add_subcommand("generate", "Draw a null or planted graph");
    int gen_N = 0;
    double gen_p0 = 0.0;
    std::optional<int> gen_n;
    std::optional<double> gen_p1;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "graph.txt", gen_manifest;
    gen->add_option("--N", gen_N, "Number of vertices")->required();
    gen->add_option("--p0", gen_p0, "Background edge probability")->required();
    gen->add_option("--n", gen_n, "Community size (with --p1)");
    gen->add_option("--p1", gen_p1, "Community edge probability (with --n)");
    gen->add_option("--seed", gen_seed, "Master seed")->required();
    gen->add_option("--out", gen_out, "Edge-list output path");
    gen->add_option("--manifest", gen_manifest, "Manifest path (default <out>.manifest.json)");

    // stat
    auto* st = app.add_subcommand("stat", "Evaluate a statistic on an edge-list file");
    std::string st_in, st_stat, st_json;
    st->add_option("--in", st_in, "Edge-list file")->required();
    st->add_option("--stat", st_stat, "e.g. \"scan k=3 mode=exact\"")->required();
    st->add_option("--json", st_json, "Optional JSON record path");

    // config-file commands
    auto* cal = app.add_subcommand("calibrate", "Empirical critical value (config file)");
    std::string cal_cfg;
    cal->add_option("--config", cal_cfg, "key=value config")->required();

    auto* dia = app.add_subcommand("diagram", "Risk sweep over a lambda grid (config file)");
    std::string dia_cfg;
    dia->add_option("--config", dia_cfg, "key=value config")->required();

    auto* lr = app.add_subcommand("lrlab", "Truncated-likelihood laboratory (config file)");
    std::string lr_cfg;
    lr->add_option("--config", lr_cfg, "key=value config")->required();

    auto* ver = app.add_subcommand("verify", "Run the oracle/invariant battery");
    std::string ver_cfg, ver_only;
    std::uint64_t ver_seed = VerifyOptions{}.seed;
    ver->add_option("--config", ver_cfg, "key=value config (seed, threads, only)");
    ver->add_option("--seed", ver_seed, "Master seed");
    ver->add_option("--only", ver_only, "Comma-separated criterion numbers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_N, gen_p0, gen_n, gen_p1, gen_seed, gen_out, gen_manifest);
        if (st->parsed()) return cmd_stat(st_in, st_stat, st_json);
        if (cal->parsed()) return cmd_calibrate(cal_cfg, threads);
        if (dia->parsed()) return cmd_diagram(dia_cfg, threads);
        if (lr->parsed()) return cmd_lrlab(lr_cfg);
        if (ver->parsed()) return cmd_verify(ver_cfg, ver_seed, threads, ver_only);
    } catch (const commdet::FeasibilityError& e) {
        std::cerr << "feasibility: " << e.what() << "\n";
        return 4;
    } catch (const commdet::IoError& e) {
        std::cerr << "io: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return 5;
    }
    return 2;
}
