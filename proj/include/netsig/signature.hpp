#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "netsig/gray_image.hpp"
#include "netsig/netmodel.hpp"

namespace netsig {

enum class DegreeMeasure { k, ks, ke }; // out / weighted-out / weighted-in

std::string_view degree_measure_name(DegreeMeasure measure);

enum class SignatureMode { upsilon, theta, psi };

/// Recipe for one signature: which concatenation (upsilon over one Q, theta
/// over several Q, psi over two radii), the radius list, the hidden-layer
/// sizes, and the ridge parameter.
struct SignatureConfig {
    SignatureMode mode = SignatureMode::theta;
    std::vector<int> radii;  // 1 entry for upsilon/theta, 2 for psi
    std::vector<int> q_list; // 1 entry for upsilon; strictly increasing
    double lambda = 1e-3;

    static SignatureConfig make_upsilon(int q, int radius, double lambda = 1e-3);
    static SignatureConfig make_theta(int radius, std::vector<int> q_list,
                                      double lambda = 1e-3);
    static SignatureConfig make_psi(int radius1, int radius2, std::vector<int> q_list,
                                    double lambda = 1e-3);

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;

    /// Total descriptor length: |radii| * sum over Q of 3*(Q+1).
    std::size_t feature_count() const;

    /// Canonical name, e.g. "theta-4/4-9-14" or "psi-4-6/4-9-14".
    std::string name() const;
};

/// The named presets: theta-4/4-9-14, psi-4-6/4-9-14, psi-4-10/4-14-19.
const std::vector<std::string>& preset_names();
SignatureConfig preset_config(std::string_view name);

struct SignatureSegment {
    DegreeMeasure measure;
    int q;
    int radius;
    std::size_t offset;
    std::size_t length; // q + 1
};

/// Flat texture descriptor plus the layout of its concatenated
/// output-weight segments (measure-major within one upsilon, Q-major within
/// theta, radius-major within psi).
struct Signature {
    SignatureConfig config;
    std::vector<double> values;
    std::vector<SignatureSegment> layout;
};

struct TrainingSet {
    Eigen::MatrixXd features;    // max_radius x N, row r-1 = measure at radius r
    Eigen::RowVectorXd labels;   // N raw intensities
};

/// Feature/label pair for one measure: column j describes pixel j (row-major,
/// x = j mod width, y = j div width), rows follow radii 1..max_radius. Labels
/// are the raw intensities. Rows are NOT normalized here; the signature
/// pipeline z-scores them before projection.
TrainingSet build_training_set(const DegreeProfiles& profiles, DegreeMeasure measure,
                               int max_radius, const GrayImage& image);

Signature upsilon(const GrayImage& image, int q, int radius, double lambda = 1e-3);
Signature theta(const GrayImage& image, int radius, const std::vector<int>& q_list,
                double lambda = 1e-3);
Signature psi(const GrayImage& image, std::pair<int, int> radii,
              const std::vector<int>& q_list, double lambda = 1e-3);

/// Dispatch on config.mode; degree profiles are computed once at the largest
/// radius and shared across all (Q, R) combinations.
Signature extract_signature(const GrayImage& image, const SignatureConfig& config);

/// One `source_path,tile_index,class_name,v_1,...,v_n` CSV row (values as
/// shortest round-trip decimals), appended to `out` with a trailing newline.
void append_signature_csv_row(std::string& out, const std::string& source_path,
                              int tile_index, const std::string& class_name,
                              const Signature& signature);

} // namespace netsig
