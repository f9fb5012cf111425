#include "netsig/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "netsig/errors.hpp"
#include "netsig/netmodel.hpp"
#include "netsig/parallel.hpp"

namespace netsig {

std::string extract_csv(const Dataset& dataset, const SignatureConfig& config,
                        unsigned threads) {
    config.validate();
    const std::size_t n = dataset.samples.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& sa = dataset.samples[a];
        const auto& sb = dataset.samples[b];
        if (sa.source_path != sb.source_path) return sa.source_path < sb.source_path;
        return sa.tile_index < sb.tile_index;
    });

    std::vector<std::string> rows(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const LabeledSample& sample = dataset.samples[order[i]];
        const Signature sig = extract_signature(sample.image, config);
        std::string row;
        append_signature_csv_row(row, sample.source_path, sample.tile_index,
                                 dataset.class_names.at(sample.class_id), sig);
        rows[i] = std::move(row);
    });

    std::string out;
    std::size_t total = 0;
    for (const std::string& row : rows) total += row.size();
    out.reserve(total);
    for (const std::string& row : rows) out += row;
    return out;
}

EvalReport run_benchmark(const Dataset& dataset, const SignatureConfig& config,
                         double shrinkage, unsigned threads,
                         Eigen::MatrixXd* features_out) {
    config.validate();
    const std::size_t n = dataset.samples.size();
    if (n == 0) throw DataError("benchmark: empty dataset");

    const std::size_t dim = config.feature_count();
    Eigen::MatrixXd features(n, dim);
    std::vector<int> labels(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const Signature sig = extract_signature(dataset.samples[i].image, config);
        features.row(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const Eigen::RowVectorXd>(sig.values.data(), dim);
        labels[i] = dataset.samples[i].class_id;
    });

    EvalReport report = loocv(features, labels, shrinkage, threads);
    if (features_out) *features_out = std::move(features);
    return report;
}

namespace {

struct CommonOptions {
    std::string dataset_root;
    std::string preset;
    std::vector<int> radii;
    std::vector<int> qs;
    double lambda = 1e-3;
    std::string tile;
    std::string output;
    unsigned threads = 0;
    bool skip_bad = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("dataset", opts.dataset_root, "Dataset root (root/<class_name>/*.pgm)")
        ->required();
    cmd->add_option("--preset", opts.preset,
                    "Named signature preset (theta-4/4-9-14, psi-4-6/4-9-14, psi-4-10/4-14-19)");
    cmd->add_option("--radii", opts.radii, "Max radius value(s), e.g. 4 or 4,6")
        ->delimiter(',');
    cmd->add_option("--qs", opts.qs, "Hidden-neuron counts, e.g. 4,9,14")->delimiter(',');
    cmd->add_option("--lambda", opts.lambda, "Ridge regularization (default 1e-3)");
    cmd->add_option("--tile", opts.tile, "Cut sources into WxH tiles, e.g. 128x128");
    cmd->add_option("--output", opts.output, "Output file (default: stdout)");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)");
    cmd->add_flag("--skip-bad", opts.skip_bad, "Skip unreadable files instead of failing");
}

SignatureConfig resolve_signature(const CommonOptions& opts) {
    const bool custom = !opts.radii.empty() || !opts.qs.empty();
    if (!opts.preset.empty() && custom)
        throw std::invalid_argument("--preset cannot be combined with --radii/--qs");
    if (!custom)
        return preset_config(opts.preset.empty() ? "theta-4/4-9-14" : opts.preset);

    if (opts.radii.empty() || opts.qs.empty())
        throw std::invalid_argument("custom signatures need both --radii and --qs");
    if (opts.radii.size() == 2)
        return SignatureConfig::make_psi(opts.radii[0], opts.radii[1], opts.qs, opts.lambda);
    if (opts.radii.size() != 1)
        throw std::invalid_argument("--radii takes one value (theta) or two (psi)");
    if (opts.qs.size() == 1)
        return SignatureConfig::make_upsilon(opts.qs[0], opts.radii[0], opts.lambda);
    return SignatureConfig::make_theta(opts.radii[0], opts.qs, opts.lambda);
}

std::optional<TileSpec> resolve_tile(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const std::size_t sep = text.find('x');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= text.size())
        throw std::invalid_argument("--tile expects WxH, e.g. 128x128");
    TileSpec spec;
    try {
        spec.width = std::stoi(text.substr(0, sep));
        spec.height = std::stoi(text.substr(sep + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--tile expects WxH, e.g. 128x128");
    }
    if (spec.width < 1 || spec.height < 1)
        throw std::invalid_argument("--tile dimensions must be positive");
    return spec;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path.string() + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError(path.string() + ": write failed");
}

Dataset load_for(const CommonOptions& opts) {
    std::vector<std::string> skipped;
    Dataset dataset = load_dataset(opts.dataset_root, resolve_tile(opts.tile),
                                   opts.skip_bad, &skipped);
    for (const std::string& message : skipped)
        std::cerr << "warning: skipped " << message << "\n";
    return dataset;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Texture signatures from directed pixel networks and randomized "
                 "neural networks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    CommonOptions extract_opts;
    CLI::App* extract_cmd =
        app.add_subcommand("extract", "Write one signature CSV row per sample");
    add_common(extract_cmd, extract_opts);

    CommonOptions bench_opts;
    double shrinkage = kDefaultShrinkage;
    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "Extract signatures and run LOOCV + LDA");
    add_common(bench_cmd, bench_opts);
    bench_cmd->add_option("--shrinkage", shrinkage,
                          "LDA covariance shrinkage (default 1e-6)");

    std::string synth_dir;
    int synth_classes = 4;
    int synth_per_class = 12;
    std::uint64_t synth_seed = 0;
    int synth_size = 64;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Write a deterministic synthetic texture corpus");
    synth_cmd->add_option("out_dir", synth_dir, "Output directory")->required();
    synth_cmd->add_option("--classes", synth_classes, "Number of classes (default 4)");
    synth_cmd->add_option("--per-class", synth_per_class, "Samples per class (default 12)");
    synth_cmd->add_option("--seed", synth_seed, "Corpus seed (default 0)");
    synth_cmd->add_option("--size", synth_size, "Image side in pixels (default 64)");

    std::string edges_image;
    int edges_radius = 1;
    std::string edges_output;
    std::string edges_ties = "bidirectional";
    CLI::App* edges_cmd = app.add_subcommand(
        "dump-edges", "Enumerate the directed network of one image as CSV");
    edges_cmd->add_option("image", edges_image, "PGM image path")->required();
    edges_cmd->add_option("--radius", edges_radius, "Connection radius (default 1)");
    edges_cmd->add_option("--output", edges_output, "Output file (default: stdout)");
    edges_cmd->add_option("--ties", edges_ties,
                          "Equal-intensity rule: bidirectional (default) or exclude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (extract_cmd->parsed()) {
            const SignatureConfig config = resolve_signature(extract_opts);
            const Dataset dataset = load_for(extract_opts);
            const std::string csv = extract_csv(dataset, config, extract_opts.threads);
            if (extract_opts.output.empty())
                std::cout << csv;
            else
                write_text_file(extract_opts.output, csv);
        } else if (bench_cmd->parsed()) {
            const SignatureConfig config = resolve_signature(bench_opts);
            const Dataset dataset = load_for(bench_opts);
            const EvalReport report =
                run_benchmark(dataset, config, shrinkage, bench_opts.threads);
            std::cout << "signature: " << config.name() << "\n"
                      << report.table(dataset.class_names);
            if (!bench_opts.output.empty())
                write_text_file(bench_opts.output, report.machine(dataset.class_names));
        } else if (synth_cmd->parsed()) {
            write_synth_corpus(synth_dir, synth_classes, synth_per_class, synth_seed,
                               synth_size);
        } else if (edges_cmd->parsed()) {
            TieRule rule;
            if (edges_ties == "bidirectional") {
                rule = TieRule::bidirectional;
            } else if (edges_ties == "exclude") {
                rule = TieRule::exclude;
            } else {
                throw std::invalid_argument("--ties must be 'bidirectional' or 'exclude'");
            }
            const GrayImage image = load_pgm(edges_image);
            const auto edges = enumerate_edges(image, edges_radius, rule);
            std::ostringstream csv;
            write_edges_csv(edges, csv);
            if (edges_output.empty())
                std::cout << csv.str();
            else
                write_text_file(edges_output, csv.str());
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace netsig
