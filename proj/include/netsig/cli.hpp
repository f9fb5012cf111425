#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "netsig/dataset.hpp"
#include "netsig/eval.hpp"
#include "netsig/signature.hpp"

namespace netsig {

// CLI exit codes, stable for CI consumers.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

/// Resolved settings for one extract/benchmark run.
struct RunConfig {
    std::filesystem::path dataset_root;
    std::optional<TileSpec> tile;
    SignatureConfig signature;
    double shrinkage = kDefaultShrinkage;
    std::filesystem::path output; // empty = stdout only
    unsigned threads = 0;         // 0 = auto
    bool skip_bad = false;
};

/// Signatures for every sample as CSV text, one
/// `source_path,tile_index,class_name,v_1,...` row per sample, ordered by
/// (source_path, tile_index). Output bytes do not depend on `threads`.
std::string extract_csv(const Dataset& dataset, const SignatureConfig& config,
                        unsigned threads = 0);

/// Extracts signatures and runs LOOCV + LDA over them. If `features_out` is
/// given it receives the N x n signature matrix (sample-major, dataset
/// order).
EvalReport run_benchmark(const Dataset& dataset, const SignatureConfig& config,
                         double shrinkage = kDefaultShrinkage, unsigned threads = 0,
                         Eigen::MatrixXd* features_out = nullptr);

/// Full command-line entry point (subcommands: extract, benchmark, synth,
/// dump-edges). Maps errors to the exit codes above.
int run_cli(int argc, const char* const* argv);

} // namespace netsig
