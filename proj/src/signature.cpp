#include "netsig/signature.hpp"

#include <algorithm>
#include <stdexcept>

#include "netsig/rnn.hpp"
#include "netsig/text.hpp"

namespace netsig {

std::string_view degree_measure_name(DegreeMeasure measure) {
    switch (measure) {
        case DegreeMeasure::k: return "k";
        case DegreeMeasure::ks: return "ks";
        case DegreeMeasure::ke: return "ke";
    }
    return "?";
}

SignatureConfig SignatureConfig::make_upsilon(int q, int radius, double lambda) {
    SignatureConfig c;
    c.mode = SignatureMode::upsilon;
    c.radii = {radius};
    c.q_list = {q};
    c.lambda = lambda;
    c.validate();
    return c;
}

SignatureConfig SignatureConfig::make_theta(int radius, std::vector<int> q_list,
                                            double lambda) {
    SignatureConfig c;
    c.mode = SignatureMode::theta;
    c.radii = {radius};
    c.q_list = std::move(q_list);
    c.lambda = lambda;
    c.validate();
    return c;
}

SignatureConfig SignatureConfig::make_psi(int radius1, int radius2,
                                          std::vector<int> q_list, double lambda) {
    SignatureConfig c;
    c.mode = SignatureMode::psi;
    c.radii = {radius1, radius2};
    c.q_list = std::move(q_list);
    c.lambda = lambda;
    c.validate();
    return c;
}

void SignatureConfig::validate() const {
    const std::size_t want_radii = mode == SignatureMode::psi ? 2 : 1;
    if (radii.size() != want_radii)
        throw std::invalid_argument("signature config: " +
                                    std::string(mode == SignatureMode::psi ? "psi" : "upsilon/theta") +
                                    " needs exactly " + std::to_string(want_radii) + " radius value(s)");
    for (int r : radii)
        if (r < 1) throw std::invalid_argument("signature config: radii must be positive");
    if (mode == SignatureMode::psi && radii[0] == radii[1])
        throw std::invalid_argument("signature config: psi radii must differ");
    if (q_list.empty())
        throw std::invalid_argument("signature config: q_list must be nonempty");
    if (mode == SignatureMode::upsilon && q_list.size() != 1)
        throw std::invalid_argument("signature config: upsilon takes exactly one Q");
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        if (q_list[i] < 1)
            throw std::invalid_argument("signature config: Q values must be positive");
        if (i > 0 && q_list[i] <= q_list[i - 1])
            throw std::invalid_argument("signature config: q_list must be strictly increasing");
    }
    if (lambda < 0.0)
        throw std::invalid_argument("signature config: lambda must be non-negative");
}

std::size_t SignatureConfig::feature_count() const {
    std::size_t per_radius = 0;
    for (int q : q_list) per_radius += 3 * (static_cast<std::size_t>(q) + 1);
    return radii.size() * per_radius;
}

std::string SignatureConfig::name() const {
    std::string s;
    switch (mode) {
        case SignatureMode::upsilon: s = "upsilon-"; break;
        case SignatureMode::theta: s = "theta-"; break;
        case SignatureMode::psi: s = "psi-"; break;
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(radii[i]);
    }
    s += '/';
    for (std::size_t i = 0; i < q_list.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(q_list[i]);
    }
    return s;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "theta-4/4-9-14",
        "psi-4-6/4-9-14",
        "psi-4-10/4-14-19",
    };
    return names;
}

SignatureConfig preset_config(std::string_view name) {
    if (name == "theta-4/4-9-14") return SignatureConfig::make_theta(4, {4, 9, 14});
    if (name == "psi-4-6/4-9-14") return SignatureConfig::make_psi(4, 6, {4, 9, 14});
    if (name == "psi-4-10/4-14-19") return SignatureConfig::make_psi(4, 10, {4, 14, 19});
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (known: theta-4/4-9-14, psi-4-6/4-9-14, psi-4-10/4-14-19)");
}

TrainingSet build_training_set(const DegreeProfiles& profiles, DegreeMeasure measure,
                               int max_radius, const GrayImage& image) {
    if (max_radius < 1 || max_radius > profiles.max_radius)
        throw std::invalid_argument("build_training_set: radius " + std::to_string(max_radius) +
                                    " outside profiles (max " +
                                    std::to_string(profiles.max_radius) + ")");
    if (profiles.width != image.width || profiles.height != image.height)
        throw std::invalid_argument("build_training_set: profiles do not match image dimensions");

    const int n = image.pixel_count();
    TrainingSet ts;
    ts.features.resize(max_radius, n);
    ts.labels.resize(n);
    for (int j = 0; j < n; ++j) {
        for (int r = 1; r <= max_radius; ++r) {
            double v = 0.0;
            switch (measure) {
                case DegreeMeasure::k: v = profiles.out_degree(j, r); break;
                case DegreeMeasure::ks: v = profiles.weighted_out_degree(j, r); break;
                case DegreeMeasure::ke: v = profiles.weighted_in_degree(j, r); break;
            }
            ts.features(r - 1, j) = v;
        }
        ts.labels(j) = image.data[j];
    }
    return ts;
}

namespace {

// One upsilon block: three networks (k, ks, ke) trained against the same
// hidden layer, since W depends only on (Q, p) and p = radius for all three.
void append_upsilon(Signature& sig, const DegreeProfiles& profiles,
                    const GrayImage& image, int q, int radius, double lambda) {
    const HiddenLayer hidden = hidden_weights(q, radius);
    for (DegreeMeasure measure : {DegreeMeasure::k, DegreeMeasure::ks, DegreeMeasure::ke}) {
        const TrainingSet ts = build_training_set(profiles, measure, radius, image);
        const Eigen::MatrixXd normalized = zscore_rows(ts.features);
        const Eigen::MatrixXd z = project(hidden, normalized);
        const Eigen::RowVectorXd f = output_weights(z, ts.labels, lambda);

        const std::size_t offset = sig.values.size();
        sig.values.insert(sig.values.end(), f.data(), f.data() + f.size());
        sig.layout.push_back(
            {measure, q, radius, offset, static_cast<std::size_t>(f.size())});
    }
}

} // namespace

Signature extract_signature(const GrayImage& image, const SignatureConfig& config) {
    config.validate();
    const int top_radius = *std::max_element(config.radii.begin(), config.radii.end());
    const DegreeProfiles profiles = degree_profiles(image, top_radius);

    Signature sig;
    sig.config = config;
    sig.values.reserve(config.feature_count());
    for (int radius : config.radii)
        for (int q : config.q_list)
            append_upsilon(sig, profiles, image, q, radius, config.lambda);
    return sig;
}

Signature upsilon(const GrayImage& image, int q, int radius, double lambda) {
    return extract_signature(image, SignatureConfig::make_upsilon(q, radius, lambda));
}

Signature theta(const GrayImage& image, int radius, const std::vector<int>& q_list,
                double lambda) {
    return extract_signature(image, SignatureConfig::make_theta(radius, q_list, lambda));
}

Signature psi(const GrayImage& image, std::pair<int, int> radii,
              const std::vector<int>& q_list, double lambda) {
    return extract_signature(
        image, SignatureConfig::make_psi(radii.first, radii.second, q_list, lambda));
}

void append_signature_csv_row(std::string& out, const std::string& source_path,
                              int tile_index, const std::string& class_name,
                              const Signature& signature) {
    out += source_path;
    out += ',';
    out += std::to_string(tile_index);
    out += ',';
    out += class_name;
    for (double v : signature.values) {
        out += ',';
        append_double(out, v);
    }
    out += '\n';
}

} // namespace netsig
