#include "foilgen/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foilgen/checkpoint.hpp"
#include "foilgen/csv.hpp"
#include "foilgen/dataset.hpp"
#include "foilgen/errors.hpp"
#include "foilgen/gan.hpp"
#include "foilgen/geometry.hpp"
#include "foilgen/metrics.hpp"
#include "foilgen/rng.hpp"
#include "foilgen/smoothing.hpp"
#include "foilgen/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace foilgen::cli {

namespace {

constexpr const char* kToolName = "foilgen";
constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// small file helpers

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) throw Error("cannot read " + path.string());
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.good()) throw Error("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// run manifests
//
// Every file a command writes gets a sibling `<file>.manifest.json` with the
// resolved settings, so any output can be traced back to (and re-run from)
// the exact invocation that produced it. No timestamps: re-running the same
// command must reproduce the manifest byte for byte.

void write_manifests(const std::vector<fs::path>& outputs, const std::string& command,
                     const std::vector<fs::path>& inputs, const ordered_json& settings) {
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["inputs"] = ordered_json::array();
    for (const fs::path& p : inputs) m["inputs"].push_back(p.string());
    m["outputs"] = ordered_json::array();
    for (const fs::path& p : outputs) m["outputs"].push_back(p.string());
    m["settings"] = settings;
    const std::string text = m.dump(1) + "\n";
    for (const fs::path& p : outputs) {
        write_text_file(p.string() + ".manifest.json", text);
    }
}

// ---------------------------------------------------------------------------
// config-file defaults
//
// `--config file.json` supplies defaults for a subcommand's long flags: the
// JSON object's keys are flag names without the leading dashes. Values are
// injected as synthetic arguments for every flag the user did not pass, so
// explicit flags always win.

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    for (const std::string& a : args) {
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
}

std::optional<fs::path> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw Error("--config needs a file argument");
            return fs::path(args[i + 1]);
        }
        if (args[i].rfind("--config=", 0) == 0) return fs::path(args[i].substr(9));
    }
    return std::nullopt;
}

std::string json_scalar_to_arg(const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::vector<std::string> inject_config_defaults(std::vector<std::string> args) {
    const auto path = find_config_path(args);
    if (!path) return args;

    ordered_json cfg;
    try {
        cfg = ordered_json::parse(read_text_file(*path));
    } catch (const ordered_json::exception& e) {
        throw SchemaError("config file " + path->string() + ": " + e.what());
    }
    if (!cfg.is_object()) throw SchemaError("config file " + path->string() + " must hold a JSON object");

    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (has_flag(args, flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            args.push_back(flag);
            for (const auto& el : value) args.push_back(json_scalar_to_arg(el));
        } else {
            args.push_back(flag);
            args.push_back(json_scalar_to_arg(value));
        }
    }
    return args;
}

// ---------------------------------------------------------------------------
// curve tables
//
// Two CSV layouts circulate between commands: the labeled dataset
// (airfoil_id,class,y1..y38) and the plain geometry table without the class
// column. Commands that only need curves accept either.

std::string y_header(bool with_class) {
    std::string h = with_class ? "airfoil_id,class" : "airfoil_id";
    for (int i = 1; i <= geometry::kCanonicalSize; ++i) {
        h += ",y";
        h += std::to_string(i);
    }
    return h;
}

void save_geometry_csv(std::span<const std::pair<std::string, geometry::CanonicalAirfoil>> rows,
                       const fs::path& path) {
    std::string text = y_header(false) + "\n";
    for (const auto& [id, shape] : rows) {
        text += id;
        for (double v : shape.y) {
            text += ',';
            text += csv::format_double(v);
        }
        text += '\n';
    }
    write_text_file(path, text);
}

struct CurveFile {
    bool labeled = false;
    dataset::LabeledDataset data;  // unlabeled files get all-zero class bits
};

CurveFile load_curve_file(const fs::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = csv::split_lines(text);

    // The first line that is neither blank nor a '#' comment decides the layout.
    std::size_t header_idx = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto t = csv::trim(lines[i]);
        if (t.empty() || t.front() == '#') continue;
        header_idx = i;
        break;
    }
    if (header_idx == lines.size()) throw SchemaError(path.string() + ": no header line");

    const auto header = csv::trim(lines[header_idx]);
    if (header == y_header(true) || header.starts_with("airfoil_id,class,")) {
        return {true, dataset::load_dataset(path)};
    }
    if (header != y_header(false)) {
        throw SchemaError(path.string() + ": unrecognized curve table header");
    }

    CurveFile out;
    for (std::size_t i = header_idx + 1; i < lines.size(); ++i) {
        const auto t = csv::trim(lines[i]);
        if (t.empty()) continue;
        const auto fields = csv::split_fields(t);
        if (fields.size() != 1 + geometry::kCanonicalSize) {
            throw SchemaError(path.string() + " line " + std::to_string(i + 1) + ": expected " +
                              std::to_string(1 + geometry::kCanonicalSize) + " columns, got " +
                              std::to_string(fields.size()));
        }
        dataset::Entry e;
        e.airfoil_id = std::string(fields[0]);
        for (int j = 0; j < geometry::kCanonicalSize; ++j) {
            e.shape.y[j] = csv::parse_double(fields[1 + j], static_cast<int>(i + 1));
        }
        out.data.entries.push_back(std::move(e));
    }
    return out;
}

void save_curve_file(const CurveFile& cf, const fs::path& path) {
    if (cf.labeled) {
        dataset::save_dataset(cf.data, path);
        return;
    }
    std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> rows;
    rows.reserve(cf.data.entries.size());
    for (const auto& e : cf.data.entries) rows.emplace_back(e.airfoil_id, e.shape);
    save_geometry_csv(rows, path);
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
    std::string in_dir;
    std::string out_path;
    std::string perf_path;  // empty: write the plain geometry table
    double clcd_threshold = 100.0;
    double alpha_threshold = 10.0;
    double tau_threshold = 0.12;
};

void cmd_preprocess(const PreprocessArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(a.in_dir)) {
        if (!de.is_regular_file()) continue;
        std::string ext = de.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".dat") files.push_back(de.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::pair<std::string, geometry::CanonicalAirfoil>> shapes;
    std::set<std::string> failed_ids;
    for (const fs::path& p : files) {
        try {
            const geometry::RawAirfoil raw = geometry::parse_selig(read_text_file(p));
            shapes.emplace_back(p.stem().string(), geometry::resample(raw));
        } catch (const Error& e) {
            err << "skipping " << p.filename().string() << ": " << e.what() << "\n";
            failed_ids.insert(p.stem().string());
        }
    }
    if (shapes.empty()) throw Error("no usable .dat files in " + a.in_dir);

    ordered_json settings;
    settings["in"] = a.in_dir;
    settings["out"] = a.out_path;

    if (a.perf_path.empty()) {
        save_geometry_csv(shapes, a.out_path);
        write_manifests({a.out_path}, "preprocess", {a.in_dir}, settings);
        out << "resampled " << shapes.size() << " airfoils (" << failed_ids.size()
            << " skipped), wrote " << a.out_path << "\n";
        return;
    }

    settings["perf"] = a.perf_path;
    settings["clcd-threshold"] = a.clcd_threshold;
    settings["alpha-threshold"] = a.alpha_threshold;
    settings["tau-threshold"] = a.tau_threshold;

    std::vector<dataset::PerformanceRecord> records = dataset::load_performance_records(a.perf_path);
    // Records pointing at files that failed to parse were already reported
    // above; drop them instead of failing the whole run.
    std::erase_if(records, [&](const dataset::PerformanceRecord& r) {
        return failed_ids.count(r.airfoil_id) != 0;
    });

    const dataset::Thresholds th{a.clcd_threshold, a.alpha_threshold, a.tau_threshold};
    const dataset::AssignResult res = dataset::assign_classes(shapes, records, th);
    dataset::save_dataset(res.dataset, a.out_path);
    write_manifests({a.out_path}, "preprocess", {a.in_dir, a.perf_path}, settings);
    out << "resampled " << shapes.size() << " airfoils (" << failed_ids.size() << " skipped), "
        << res.dataset.entries.size() << " labeled entries, " << res.skipped_records
        << " zero-drag records dropped, wrote " << a.out_path << "\n";
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    int count = 10;  // shapes per class
    std::string out_path;
    std::uint64_t seed = 0;
};

void cmd_synth(const SynthArgs& a, std::ostream& out) {
    rng::SplitMix64 gen(a.seed);
    const std::array<dataset::ClassLabel, 8> classes = dataset::ClassLabel::all();
    dataset::LabeledDataset d;
    d.entries.reserve(static_cast<std::size_t>(a.count) * classes.size());

    // Round-robin over the classes. The thickness bit is realized through
    // the section's thickness parameter with a safety margin around the
    // default 0.12 threshold; the two aerodynamic bits are assigned labels
    // only, since no flow solution exists for synthetic shapes.
    char idbuf[32];
    for (int k = 0; k < a.count; ++k) {
        for (const dataset::ClassLabel& label : classes) {
            const double camber = gen.next_uniform(0.0, 0.08);
            const double pos = gen.next_uniform(0.25, 0.65);
            const double t = label.thick_high ? gen.next_uniform(0.135, 0.32)
                                              : gen.next_uniform(0.025, 0.11);
            std::snprintf(idbuf, sizeof(idbuf), "synth-%s-%04d", label.to_string().c_str(), k);
            d.entries.push_back({idbuf, label, geometry::naca4(camber, pos, t)});
        }
    }
    dataset::save_dataset(d, a.out_path);

    ordered_json settings;
    settings["count"] = a.count;
    settings["seed"] = a.seed;
    settings["out"] = a.out_path;
    write_manifests({a.out_path}, "synth", {}, settings);
    out << "synthesized " << d.entries.size() << " labeled airfoils (" << a.count << " per class), wrote "
        << a.out_path << "\n";
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
    std::string data_path;
    std::string out_path;
    std::string report_path;  // empty: derived from out_path
    std::vector<double> omegas{10.0};
    int epochs = 30000;
    int batch_size = 64;
    int disc_steps = 1;
    int noise_dim = 128;
    double lr = 1e-4;
    std::uint64_t seed = 0;
    std::vector<int> gen_hidden{256, 256, 256};
    std::vector<int> disc_hidden{256, 256};
};

fs::path with_tag(const fs::path& p, const std::string& tag) {
    fs::path q = p;
    const std::string ext = q.extension().string();
    q.replace_extension();
    return fs::path(q.string() + tag + ext);
}

fs::path derive_report_path(const fs::path& ckpt) {
    fs::path q = ckpt;
    q.replace_extension();
    return fs::path(q.string() + ".report.csv");
}

void cmd_train(const TrainArgs& a, std::ostream& out) {
    const dataset::LabeledDataset data = dataset::load_dataset(a.data_path);
    if (a.omegas.empty()) throw DomainError("--omega needs at least one value");

    const bool sweep = a.omegas.size() > 1;
    for (double omega : a.omegas) {
        gan::GanConfig cfg;
        cfg.noise_dim = a.noise_dim;
        cfg.omega = omega;
        cfg.lr = a.lr;
        cfg.epochs = a.epochs;
        cfg.batch_size = a.batch_size;
        cfg.seed = a.seed;
        cfg.gen_hidden = a.gen_hidden;
        cfg.disc_hidden = a.disc_hidden;
        cfg.disc_steps = a.disc_steps;

        const std::string tag = sweep ? "-omega" + csv::format_double(omega) : "";
        const fs::path ckpt_path = sweep ? with_tag(a.out_path, tag) : fs::path(a.out_path);
        fs::path report_path = a.report_path.empty() ? derive_report_path(ckpt_path)
                                                     : fs::path(a.report_path);
        if (sweep && !a.report_path.empty()) report_path = with_tag(a.report_path, tag);

        auto [model, report] = gan::train(data, cfg);
        checkpoint::save_gan(model, ckpt_path);
        gan::save_train_report(report, report_path);

        ordered_json settings;
        settings["data"] = a.data_path;
        settings["out"] = ckpt_path.string();
        settings["report"] = report_path.string();
        settings["omega"] = omega;
        settings["epochs"] = a.epochs;
        settings["batch-size"] = a.batch_size;
        settings["disc-steps"] = a.disc_steps;
        settings["noise-dim"] = a.noise_dim;
        settings["lr"] = a.lr;
        settings["seed"] = a.seed;
        settings["gen-hidden"] = a.gen_hidden;
        settings["disc-hidden"] = a.disc_hidden;
        write_manifests({ckpt_path, report_path}, "train", {a.data_path}, settings);

        if (report.empty()) {
            out << "omega=" << csv::format_double(omega)
                << " epochs=0 (checkpoint holds the fresh initialization), wrote "
                << ckpt_path.string() << "\n";
            continue;
        }
        double mean_smooth = 0.0;
        for (const gan::EpochStats& s : report) mean_smooth += s.smooth;
        mean_smooth /= static_cast<double>(report.size());
        const gan::EpochStats& last = report.back();
        out << "omega=" << csv::format_double(omega) << " epochs=" << report.size()
            << " g_loss=" << csv::format_double(last.g_loss)
            << " d_loss=" << csv::format_double(last.d_loss)
            << " ce=" << csv::format_double(last.ce)
            << " smooth=" << csv::format_double(last.smooth)
            << " mean-smooth=" << csv::format_double(mean_smooth) << ", wrote "
            << ckpt_path.string() << "\n";
    }
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    std::string ckpt_path;
    std::string out_path;
    std::string class_bits;
    int count = 600;
    std::uint64_t seed = 0;
    std::vector<int> sg;  // {window, order} when the post-filter is requested
};

void cmd_generate(const GenerateArgs& a, std::ostream& out) {
    if (a.count <= 0) throw DomainError("--count must be positive");
    const gan::GanModel model = checkpoint::load_gan(a.ckpt_path);
    const dataset::ClassLabel label = dataset::ClassLabel::from_string(a.class_bits);

    rng::SplitMix64 gen(a.seed);
    std::vector<geometry::CanonicalAirfoil> curves = gan::sample_class(model, label, a.count, gen);

    if (!a.sg.empty()) {
        for (geometry::CanonicalAirfoil& c : curves) {
            const std::vector<double> filtered =
                smoothing::savitzky_golay(std::span<const double>(c.y.data(), c.y.size()),
                                          a.sg[0], a.sg[1], /*cyclic=*/true);
            std::copy(filtered.begin(), filtered.end(), c.y.begin());
        }
    }

    dataset::LabeledDataset d;
    d.entries.reserve(curves.size());
    char idbuf[32];
    for (std::size_t i = 0; i < curves.size(); ++i) {
        std::snprintf(idbuf, sizeof(idbuf), "gen-%06zu", i + 1);
        d.entries.push_back({idbuf, label, curves[i]});
    }
    dataset::save_dataset(d, a.out_path);

    ordered_json settings;
    settings["ckpt"] = a.ckpt_path;
    settings["class"] = a.class_bits;
    settings["count"] = a.count;
    settings["seed"] = a.seed;
    settings["out"] = a.out_path;
    if (!a.sg.empty()) settings["sg-filter"] = a.sg;
    write_manifests({a.out_path}, "generate", {a.ckpt_path}, settings);
    out << "generated " << curves.size() << " samples of class " << label.to_string()
        << (a.sg.empty() ? "" : " (post-filtered)") << ", wrote " << a.out_path << "\n";
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
    std::vector<std::string> samples;
    std::string out_path;
    double tau_threshold = 0.12;
};

void cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
    std::map<dataset::ClassLabel, std::vector<geometry::CanonicalAirfoil>> groups;
    for (const std::string& path : a.samples) {
        const CurveFile cf = load_curve_file(path);
        if (!cf.labeled) throw Error(path + ": evaluation needs labeled sample files");
        for (const dataset::Entry& e : cf.data.entries) groups[e.label].push_back(e.shape);
    }
    if (groups.empty()) throw Error("no samples found in the given files");

    std::string table = "class,acc_tau,sigma_tau,S\n";
    for (auto& [label, curves] : groups) {
        metrics::SampleSet s{std::move(curves), label};
        const double acc = metrics::acc_tau(s, a.tau_threshold);
        const double sigma = metrics::sigma_tau(s);
        const double diversity = metrics::shape_diversity(s);
        table += label.to_string();
        table += ',';
        table += csv::format_double(acc);
        table += ',';
        table += csv::format_double(sigma);
        table += ',';
        table += csv::format_double(diversity);
        table += '\n';
    }
    write_text_file(a.out_path, table);

    ordered_json settings;
    settings["samples"] = a.samples;
    settings["tau-threshold"] = a.tau_threshold;
    settings["out"] = a.out_path;
    std::vector<fs::path> inputs(a.samples.begin(), a.samples.end());
    write_manifests({a.out_path}, "evaluate", inputs, settings);
    out << table;
}

// ---------------------------------------------------------------------------
// smooth

struct SmoothArgs {
    std::string in_path;
    std::string out_path;
    int window = 5;
    int order = 2;
    bool open = false;
};

void cmd_smooth(const SmoothArgs& a, std::ostream& out) {
    CurveFile cf = load_curve_file(a.in_path);
    for (dataset::Entry& e : cf.data.entries) {
        const std::vector<double> filtered =
            smoothing::savitzky_golay(std::span<const double>(e.shape.y.data(), e.shape.y.size()),
                                      a.window, a.order, /*cyclic=*/!a.open);
        std::copy(filtered.begin(), filtered.end(), e.shape.y.begin());
    }
    save_curve_file(cf, a.out_path);

    ordered_json settings;
    settings["in"] = a.in_path;
    settings["out"] = a.out_path;
    settings["window"] = a.window;
    settings["order"] = a.order;
    settings["open"] = a.open;
    write_manifests({a.out_path}, "smooth", {a.in_path}, settings);
    out << "smoothed " << cf.data.entries.size() << " curves (window=" << a.window
        << ", order=" << a.order << ", " << (a.open ? "open" : "cyclic") << "), wrote "
        << a.out_path << "\n";
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
    std::string samples_path;
    std::string out_path;
    bool no_mean = false;
};

void cmd_plot(const PlotArgs& a, std::ostream& out) {
    const CurveFile cf = load_curve_file(a.samples_path);
    std::vector<geometry::CanonicalAirfoil> curves;
    curves.reserve(cf.data.entries.size());
    for (const dataset::Entry& e : cf.data.entries) curves.push_back(e.shape);

    svg::PlotOptions opts;
    opts.draw_mean = !a.no_mean;
    write_text_file(a.out_path, svg::render_overlay(curves, opts));

    ordered_json settings;
    settings["samples"] = a.samples_path;
    settings["out"] = a.out_path;
    settings["no-mean"] = a.no_mean;
    write_manifests({a.out_path}, "plot", {a.samples_path}, settings);
    out << "plotted " << curves.size() << " curves" << (a.no_mean ? "" : " plus their mean")
        << " to " << a.out_path << "\n";
}

// ---------------------------------------------------------------------------

void add_config_option(CLI::App* sub, std::string& slot) {
    sub->add_option("--config", slot,
                    "JSON file with defaults for these flags (explicit flags win)");
}

int run_impl(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> args = inject_config_defaults(raw_args);

    CLI::App app{"generate, train on, and evaluate smooth closed airfoil curves"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);
    std::string config_slot;  // consumed before parsing; registered for help only

    PreprocessArgs pa;
    CLI::App* preprocess =
        app.add_subcommand("preprocess", "resample coordinate files onto the canonical 38-point form");
    preprocess->add_option("--in", pa.in_dir, "directory of Selig-format .dat files")
        ->required()
        ->check(CLI::ExistingDirectory);
    preprocess->add_option("--out", pa.out_path, "output CSV path")->required();
    preprocess->add_option("--perf", pa.perf_path,
                           "performance-record CSV; when given, entries are class-labeled")
        ->check(CLI::ExistingFile);
    preprocess->add_option("--clcd-threshold", pa.clcd_threshold, "lift-to-drag split point")
        ->capture_default_str();
    preprocess->add_option("--alpha-threshold", pa.alpha_threshold,
                           "angle-of-attack split point (degrees)")
        ->capture_default_str();
    preprocess->add_option("--tau-threshold", pa.tau_threshold, "thickness split point")
        ->capture_default_str();
    add_config_option(preprocess, config_slot);
    preprocess->callback([&] { cmd_preprocess(pa, out, err); });

    SynthArgs sa;
    CLI::App* synth =
        app.add_subcommand("synth", "build a labeled dataset of four-digit sections, one batch per class");
    synth->add_option("--count", sa.count, "shapes per class")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--out", sa.out_path, "output dataset CSV path")->required();
    synth->add_option("--seed", sa.seed, "random seed")->capture_default_str();
    add_config_option(synth, config_slot);
    synth->callback([&] { cmd_synth(sa, out); });

    TrainArgs ta;
    CLI::App* train = app.add_subcommand("train", "train the conditional generator on a labeled dataset");
    train->add_option("--data", ta.data_path, "labeled dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    train->add_option("--out", ta.out_path, "checkpoint JSON path")->required();
    train->add_option("--report", ta.report_path,
                      "per-epoch loss CSV path (default: derived from --out)");
    train->add_option("--omega", ta.omegas,
                      "smoothing-penalty weight; several values run a sweep")
        ->delimiter(',');
    train->add_option("--epochs", ta.epochs, "training epochs")->capture_default_str();
    train->add_option("--batch-size", ta.batch_size, "minibatch size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--disc-steps", ta.disc_steps, "discriminator updates per generator update")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--noise-dim", ta.noise_dim, "generator noise dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--lr", ta.lr, "Adam learning rate")->capture_default_str();
    train->add_option("--seed", ta.seed, "random seed")->capture_default_str();
    train->add_option("--gen-hidden", ta.gen_hidden, "generator hidden layer widths")
        ->delimiter(',');
    train->add_option("--disc-hidden", ta.disc_hidden, "discriminator hidden layer widths")
        ->delimiter(',');
    add_config_option(train, config_slot);
    train->callback([&] { cmd_train(ta, out); });

    GenerateArgs ga;
    CLI::App* generate = app.add_subcommand("generate", "sample curves of one class from a checkpoint");
    generate->add_option("--ckpt", ga.ckpt_path, "checkpoint JSON path")
        ->required()
        ->check(CLI::ExistingFile);
    generate->add_option("--class", ga.class_bits, "three-bit class label, e.g. 011")->required();
    generate->add_option("--count", ga.count, "number of samples")->capture_default_str();
    generate->add_option("--seed", ga.seed, "random seed")->capture_default_str();
    generate->add_option("--out", ga.out_path, "output dataset CSV path")->required();
    generate->add_option("--sg-filter", ga.sg,
                         "apply the cyclic least-squares post-filter: window and polynomial order")
        ->expected(2);
    add_config_option(generate, config_slot);
    generate->callback([&] { cmd_generate(ga, out); });

    EvaluateArgs ea;
    CLI::App* evaluate = app.add_subcommand("evaluate", "compute per-class sample metrics");
    evaluate->add_option("--samples", ea.samples, "labeled sample CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--out", ea.out_path, "metrics CSV path")->required();
    evaluate->add_option("--tau-threshold", ea.tau_threshold, "thickness split point")
        ->capture_default_str();
    add_config_option(evaluate, config_slot);
    evaluate->callback([&] { cmd_evaluate(ea, out); });

    SmoothArgs ma;
    CLI::App* smooth = app.add_subcommand("smooth", "run the least-squares filter over a curve table");
    smooth->add_option("--in", ma.in_path, "input curve CSV")->required()->check(CLI::ExistingFile);
    smooth->add_option("--out", ma.out_path, "output curve CSV path")->required();
    smooth->add_option("--window", ma.window, "filter window (odd)")->capture_default_str();
    smooth->add_option("--order", ma.order, "polynomial order")->capture_default_str();
    smooth->add_flag("--open", ma.open, "treat curves as open instead of cyclic");
    add_config_option(smooth, config_slot);
    smooth->callback([&] { cmd_smooth(ma, out); });

    PlotArgs la;
    CLI::App* plot = app.add_subcommand("plot", "render a curve table as an SVG overlay");
    plot->add_option("--samples", la.samples_path, "curve CSV file")
        ->required()
        ->check(CLI::ExistingFile);
    plot->add_option("--out", la.out_path, "output SVG path")->required();
    plot->add_flag("--no-mean", la.no_mean, "skip the dashed mean-shape overlay");
    add_config_option(plot, config_slot);
    plot->callback([&] { cmd_plot(la, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace foilgen::cli
