// zzgril command line: build | gril | featurize | oracle-check | bench
// Exit codes: 0 ok, 1 data or verification failure, 2 usage or parameter error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "zzgril/instances.hpp"
#include "zzgril/io.hpp"
#include "zzgril/landscape.hpp"
#include "zzgril/oracle.hpp"
#include "zzgril/pipeline.hpp"

using namespace zzgril;
namespace fs = std::filesystem;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options shared by the commands that build bifiltrations or landscapes.
struct Common {
    std::string config_path;
    std::string mode;
    int levels = 0;
    int width = 0;
    int overlap = -1;
    std::uint64_t seed = 0;
    std::string centers;
    std::vector<int> ks;
    std::vector<int> degrees;
    unsigned jobs = 0;
    bool znormalize = false;

    CLI::Option* o_mode = nullptr;
    CLI::Option* o_levels = nullptr;
    CLI::Option* o_width = nullptr;
    CLI::Option* o_overlap = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_centers = nullptr;
    CLI::Option* o_ks = nullptr;
    CLI::Option* o_degrees = nullptr;
    CLI::Option* o_jobs = nullptr;
    CLI::Option* o_znorm = nullptr;
};

void add_landscape_flags(CLI::App* sub, Common& c) {
    c.o_centers = sub->add_option("--centers", c.centers, "center lattice RxC (default 6x6)");
    c.o_ks = sub->add_option("--ks", c.ks, "rank thresholds k")->delimiter(',');
    c.o_degrees = sub->add_option("--degrees", c.degrees, "homology degrees")->delimiter(',');
    c.o_jobs = sub->add_option("--jobs", c.jobs, "worker threads (env ZZGRIL_JOBS, default: hardware)");
}

void add_window_flags(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON config; explicit flags override it");
    c.o_mode = sub->add_option("--mode", c.mode, "pointclouds or graphs");
    c.o_levels = sub->add_option("--levels", c.levels, "number of filtration levels L");
    c.o_width = sub->add_option("--width", c.width, "window width (0 = mode default)");
    c.o_overlap = sub->add_option("--overlap", c.overlap, "window overlap (-1 = mode default)");
    c.o_seed = sub->add_option("--seed", c.seed, "seed for per-window percentile draws");
    c.o_znorm = sub->add_flag("--znormalize", c.znormalize, "z-normalize each channel first");
}

unsigned resolve_jobs(const Common& c) {
    if (c.o_jobs && c.o_jobs->count()) return c.jobs;
    if (const char* env = std::getenv("ZZGRIL_JOBS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw ParameterError(std::string("ZZGRIL_JOBS must be a positive integer, got ") + env);
    }
    return default_jobs();
}

WindowConfig resolve_config(const Common& c) {
    WindowConfig w;
    if (!c.config_path.empty()) io::apply_config_json(io::parse_json(io::read_file(c.config_path), c.config_path), w);
    auto set = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (set(c.o_mode)) w.mode = parse_mode(c.mode);
    if (set(c.o_levels)) w.levels = c.levels;
    if (set(c.o_width)) w.width = c.width;
    if (set(c.o_overlap)) w.overlap = c.overlap;
    if (set(c.o_seed)) w.seed = c.seed;
    if (set(c.o_znorm)) w.znormalize = c.znormalize;
    if (set(c.o_centers)) w.centers = CenterSpec::parse(c.centers);
    if (set(c.o_ks)) w.ks = c.ks;
    if (set(c.o_degrees)) w.degrees = c.degrees;
    w.jobs = resolve_jobs(c);
    w.validate();
    return w;
}

json metadata(const std::string& command, const json& config) {
    return {{"tool", "zzgril"},
            {"version", kVersion},
            {"command", command},
            {"config", config},
            {"config_hash", io::config_hash(config)}};
}

void describe(const std::string& name, const QuasiZigzagBifiltration& b) {
    std::size_t counts[4] = {0, 0, 0, 0};
    for (auto& s : b.universe()) counts[std::min(s.dimension(), 3)]++;
    std::cout << name << ": T=" << b.time_steps() << " grid " << b.width() << "x" << b.height() << ", simplices "
              << b.universe().size() << " (v=" << counts[0] << " e=" << counts[1] << " t=" << counts[2]
              << " higher=" << counts[3] << ")\n";
}

// build: dataset directory -> one bifiltration JSON per sample; bifiltration JSON -> re-emitted.
int cmd_build(const Common& c, const std::string& input, const std::string& output) {
    fs::path in(input), out(output);
    if (fs::is_directory(in)) {
        auto w = resolve_config(c);
        auto ds = io::read_dataset_dir(in);
        fs::create_directories(out);
        auto meta = metadata("build", io::config_to_json(w));
        for (std::size_t i = 0; i < ds.samples.size(); ++i) {
            auto& s = ds.samples[i];
            QuasiZigzagBifiltration b;
            try {
                b = sample_bifiltration(s.data, w, w.seed, i);
            } catch (const ParameterError& e) {
                throw ParameterError("sample " + s.id + ": " + e.what());
            }
            auto m = meta;
            m["sample_id"] = s.id;
            m["sample_index"] = i;
            if (s.label) m["label"] = *s.label;
            io::write_file(out / (s.id + ".json"), io::bifiltration_to_json(b, m).dump(1) + "\n");
            describe(s.id, b);
        }
        return 0;
    }
    auto j = io::parse_json(io::read_file(in), input);
    if (!io::is_bifiltration_json(j)) throw DataError(input + ": neither a dataset directory nor a bifiltration file");
    auto b = io::bifiltration_from_json(j);
    json meta = j.contains("metadata") ? j["metadata"] : metadata("build", json::object());
    io::write_file(out, io::bifiltration_to_json(b, meta).dump(1) + "\n");
    describe(in.filename().string(), b);
    return 0;
}

int cmd_gril(const Common& c, const std::string& input, const std::string& prefix, bool heatmap) {
    auto b = io::read_bifiltration(input);
    WindowConfig w;
    if (!c.config_path.empty()) io::apply_config_json(io::parse_json(io::read_file(c.config_path), c.config_path), w);
    if (c.o_centers->count()) w.centers = CenterSpec::parse(c.centers);
    if (c.o_ks->count()) w.ks = c.ks;
    if (c.o_degrees->count()) w.degrees = c.degrees;
    w.jobs = resolve_jobs(c);
    for (int k : w.ks)
        if (k < 1) throw ParameterError("ks must be positive");
    for (int p : w.degrees)
        if (p < 0) throw ParameterError("degrees must be non-negative");
    auto centers = sample_centers(b, w.centers);
    auto t0 = std::chrono::steady_clock::now();
    auto l = landscape(b, centers, w.ks, w.degrees, w.jobs);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json cfg{{"centers", w.centers.to_string()}, {"ks", w.ks}, {"degrees", w.degrees}};
    auto meta = metadata("gril", cfg);
    meta["input"] = fs::path(input).filename().string();
    io::write_file(prefix + ".json", io::landscape_to_json(l, meta).dump(1) + "\n");
    io::write_file(prefix + ".csv", io::landscape_to_csv(l));
    if (heatmap)
        for (auto& [key, csv] : io::landscape_heatmaps(l))
            io::write_file(prefix + "_k" + std::to_string(key.first) + "_d" + std::to_string(key.second) + ".csv", csv);
    std::cout << "landscape: " << centers.size() << " centers x " << w.ks.size() << " ks x " << w.degrees.size()
              << " degrees, delta_max " << l.delta_max << ", " << secs << "s on " << w.jobs << " worker(s)\n";
    return 0;
}

int cmd_featurize(const Common& c, const std::string& input, const std::string& output) {
    auto w = resolve_config(c);
    auto ds = io::read_dataset_dir(input);
    auto t0 = std::chrono::steady_clock::now();
    auto fm = featurize(ds, w);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    io::write_file(output, io::features_to_csv(fm));
    auto meta = metadata("featurize", io::config_to_json(w));
    meta["features"] = io::features_meta(fm, w);
    io::write_file(output + ".meta.json", meta.dump(1) + "\n");
    std::cout << "features: " << fm.rows.size() << " samples x " << fm.column_names.size() << " columns, T="
              << fm.time_steps << ", window " << fm.window.width << "/" << fm.window.overlap << ", " << secs << "s on "
              << w.jobs << " worker(s)\n";
    return 0;
}

int cmd_oracle_check(int trials, std::uint64_t seed, int vertices, int time_steps, int levels, const std::string& dump) {
    if (vertices < 1 || vertices > 6) throw ParameterError("oracle-check: --vertices must be in [1, 6]");
    if (time_steps < 1 || time_steps > 5) throw ParameterError("oracle-check: --time-steps must be in [1, 5]");
    if (levels < 1 || levels > 5) throw ParameterError("oracle-check: --levels must be in [1, 5]");
    if (trials < 1) throw ParameterError("oracle-check: --trials must be positive");
    std::mt19937_64 rng(seed);
    InstanceParams ip;
    ip.max_vertices = vertices;
    ip.max_time_steps = time_steps;
    ip.max_levels = levels;
    std::size_t worms = 0;
    for (int t = 0; t < trials; ++t) {
        auto b = random_bifiltration(rng, ip);
        PosetDiagram d0(b, 0), d1(b, 1);
        std::set<std::vector<GridPoint>> seen;
        for (int x = 0; x < b.width(); ++x)
            for (int y = 1; y <= b.height(); ++y)
                for (int d = 0; d <= delta_max(b); ++d) {
                    Worm wm({x, y}, d, b);
                    auto m = members(wm);
                    if (!seen.insert(m).second) continue;
                    auto fast = generalized_ranks(b, wm.interval(), 1);
                    std::size_t slow[2] = {brute_rank(d0, m), brute_rank(d1, m)};
                    ++worms;
                    for (int p = 0; p <= 1; ++p) {
                        if (fast[static_cast<std::size_t>(p)] == slow[p]) continue;
                        json meta = metadata("oracle-check", {{"seed", seed}, {"trial", t}});
                        meta["worm"] = {{"cx", x}, {"cy", y}, {"delta", d}, {"degree", p}};
                        meta["fast_rank"] = fast[static_cast<std::size_t>(p)];
                        meta["oracle_rank"] = slow[p];
                        io::write_file(dump, io::bifiltration_to_json(b, meta).dump(1) + "\n");
                        throw VerificationFailure("rank mismatch in trial " + std::to_string(t) + " at worm (" +
                                                  std::to_string(x) + "," + std::to_string(y) + ") width " +
                                                  std::to_string(d) + " degree " + std::to_string(p) + "; instance in " +
                                                  dump);
                    }
                }
    }
    std::cout << "oracle-check: " << trials << " instances, " << worms << " distinct worms, degrees 0 and 1, all ranks agree\n";
    return 0;
}

int cmd_bench(const Common& c, std::size_t samples, int channels, int length) {
    auto w = resolve_config(c);
    auto ds = synthetic_dataset(w.seed, samples, channels, length);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<QuasiZigzagBifiltration> bs;
    for (std::size_t i = 0; i < ds.samples.size(); ++i) bs.push_back(sample_bifiltration(ds.samples[i].data, w, w.seed, i));
    double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t centers = 0;
    auto t1 = std::chrono::steady_clock::now();
    parallel_for(bs.size(), w.jobs, [&](std::size_t i) {
        auto cs = sample_centers(bs[i], w.centers);
        landscape(bs[i], cs, w.ks, w.degrees, 1);
    });
    for (auto& b : bs) centers += sample_centers(b, w.centers).size();
    double gril = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    json report = metadata("bench", io::config_to_json(w));
    report["jobs"] = w.jobs;
    report["samples"] = samples;
    report["channels"] = channels;
    report["length"] = length;
    report["grid"] = {{"width", bs.empty() ? 0 : bs[0].width()}, {"height", bs.empty() ? 0 : bs[0].height()}};
    report["build_seconds"] = build;
    report["landscape_seconds"] = gril;
    report["seconds_per_center"] = centers ? gril / static_cast<double>(centers) : 0.0;
    report["total_seconds"] = build + gril;
    std::cout << report.dump(1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zzgril: zigzag generalized rank invariant landscapes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common cbuild, cgril, cfeat, cbench;
    std::string input, output;
    bool heatmap = false;

    auto* build = app.add_subcommand("build", "build bifiltrations from a dataset directory, or re-emit a bifiltration file");
    build->add_option("input", input, "dataset directory or bifiltration JSON")->required();
    build->add_option("-o,--output", output, "output directory (dataset) or file (bifiltration)")->required();
    add_window_flags(build, cbuild);

    auto* gril = app.add_subcommand("gril", "compute the landscape of a bifiltration file");
    gril->add_option("input", input, "bifiltration JSON")->required();
    gril->add_option("-o,--output", output, "output prefix; writes PREFIX.json and PREFIX.csv")->required();
    gril->add_option("--config", cgril.config_path, "JSON config; explicit flags override it");
    gril->add_flag("--emit-heatmap", heatmap, "also write PREFIX_k<k>_d<p>.csv grids");
    add_landscape_flags(gril, cgril);

    auto* feat = app.add_subcommand("featurize", "landscape feature vectors for every sample of a dataset directory");
    feat->add_option("input", input, "dataset directory")->required();
    feat->add_option("-o,--output", output, "features CSV; metadata goes to OUTPUT.meta.json")->required();
    add_window_flags(feat, cfeat);
    add_landscape_flags(feat, cfeat);

    int trials = 200, vertices = 6, time_steps = 4, levels = 4;
    std::uint64_t oseed = 1;
    std::string dump = "oracle_failure.json";
    auto* oracle = app.add_subcommand("oracle-check", "compare fast worm ranks against the brute-force oracle");
    oracle->add_option("--trials", trials, "random instances")->capture_default_str();
    oracle->add_option("--seed", oseed, "instance seed")->capture_default_str();
    oracle->add_option("--vertices", vertices, "max vertices (at most 6)")->capture_default_str();
    oracle->add_option("--time-steps", time_steps, "max time steps (at most 5)")->capture_default_str();
    oracle->add_option("--levels", levels, "max levels (at most 5)")->capture_default_str();
    oracle->add_option("--dump", dump, "where to write a failing instance")->capture_default_str();

    std::size_t samples = 8;
    int channels = 28, length = 50;
    auto* bench = app.add_subcommand("bench", "time featurization on synthetic random walks");
    bench->add_option("--samples", samples, "number of samples")->capture_default_str();
    bench->add_option("-m,--channels", channels, "channels per sample")->capture_default_str();
    bench->add_option("-n,--length", length, "series length")->capture_default_str();
    add_window_flags(bench, cbench);
    add_landscape_flags(bench, cbench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*build) return cmd_build(cbuild, input, output);
        if (*gril) return cmd_gril(cgril, input, output, heatmap);
        if (*feat) return cmd_featurize(cfeat, input, output);
        if (*oracle) return cmd_oracle_check(trials, oseed, vertices, time_steps, levels, dump);
        if (*bench) return cmd_bench(cbench, samples, channels, length);
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
