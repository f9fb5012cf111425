#include "netsig/rnn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "netsig/errors.hpp"

namespace netsig {

namespace {

// Population statistics over a flat view.
struct MeanStd {
    double mean;
    double std;
};

MeanStd population_stats(const double* values, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += values[i];
    const double mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double d = values[i] - mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / static_cast<double>(count))};
}

} // namespace

std::vector<std::uint64_t> lcg_sequence(std::uint64_t length) {
    if (length < 1)
        throw std::invalid_argument("lcg_sequence: length must be at least 1");
    // (a*V + b) with V < E^2 stays below (E+2)*E^2 + E + 3; keep E small
    // enough that this fits a 128-bit product with a wide margin.
    if (length > (1ull << 31))
        throw std::invalid_argument("lcg_sequence: length " + std::to_string(length) +
                                    " too large for exact 128-bit evaluation");

    using u128 = unsigned __int128;
    const u128 a = length + 2;
    const u128 b = length + 3;
    const u128 c = static_cast<u128>(length) * length;

    std::vector<std::uint64_t> seq(length);
    u128 v = length + 1;
    seq[0] = static_cast<std::uint64_t>(v);
    for (std::uint64_t n = 1; n < length; ++n) {
        v = (a * v + b) % c;
        seq[n] = static_cast<std::uint64_t>(v);
    }
    return seq;
}

HiddenLayer hidden_weights(int neuron_count, int input_arity) {
    if (neuron_count < 1 || input_arity < 1)
        throw std::invalid_argument("hidden_weights: Q and p must be at least 1");

    const std::uint64_t total =
        static_cast<std::uint64_t>(neuron_count) * (static_cast<std::uint64_t>(input_arity) + 1);
    const std::vector<std::uint64_t> seq = lcg_sequence(total);

    HiddenLayer layer;
    layer.neuron_count = neuron_count;
    layer.input_arity = input_arity;
    layer.weights.resize(neuron_count, input_arity + 1);
    // Row-major fill: row q holds segment q of the sequence.
    for (int q = 0; q < neuron_count; ++q)
        for (int c = 0; c <= input_arity; ++c)
            layer.weights(q, c) =
                static_cast<double>(seq[static_cast<std::size_t>(q) * (input_arity + 1) + c]);

    // Joint z-score over all Q*(p+1) entries.
    std::vector<double> flat(layer.weights.data(), layer.weights.data() + total);
    const MeanStd stats = population_stats(flat.data(), flat.size());
    if (stats.std == 0.0)
        throw NumericalError("hidden_weights: degenerate constant LCG sequence (std = 0)");
    layer.weights = (layer.weights.array() - stats.mean) / stats.std;
    return layer;
}

Eigen::MatrixXd zscore_rows(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd out(x.rows(), x.cols());
    const auto n = x.cols();
    for (Eigen::Index row = 0; row < x.rows(); ++row) {
        // Constancy is detected on the raw values, not on the variance: the
        // variance of a constant row can round away from zero.
        if (x.row(row).maxCoeff() == x.row(row).minCoeff()) {
            out.row(row).setZero();
            continue;
        }
        const double mean = x.row(row).mean();
        const double var = (x.row(row).array() - mean).square().sum() / static_cast<double>(n);
        if (var == 0.0) {
            out.row(row).setZero();
        } else {
            out.row(row) = (x.row(row).array() - mean) / std::sqrt(var);
        }
    }
    return out;
}

Eigen::MatrixXd project(const HiddenLayer& hidden, const Eigen::MatrixXd& x) {
    if (hidden.input_arity != x.rows())
        throw std::invalid_argument("project: hidden layer expects " +
                                    std::to_string(hidden.input_arity) + " attributes, got " +
                                    std::to_string(x.rows()));

    const Eigen::Index n = x.cols();
    Eigen::MatrixXd augmented(x.rows() + 1, n);
    augmented.topRows(x.rows()) = x;
    augmented.row(x.rows()).setOnes();

    Eigen::MatrixXd response = hidden.weights * augmented; // Q x N
    response = (1.0 + (-response.array()).exp()).inverse();

    Eigen::MatrixXd z(response.rows() + 1, n);
    z.topRows(response.rows()) = response;
    z.row(response.rows()).setOnes();
    return z;
}

Eigen::RowVectorXd output_weights(const Eigen::MatrixXd& z,
                                  const Eigen::RowVectorXd& labels, double lambda) {
    if (labels.cols() != z.cols())
        throw std::invalid_argument("output_weights: label count " +
                                    std::to_string(labels.cols()) + " != sample count " +
                                    std::to_string(z.cols()));
    if (lambda < 0.0)
        throw std::invalid_argument("output_weights: lambda must be non-negative");

    Eigen::MatrixXd gram = z * z.transpose();
    gram.diagonal().array() += lambda;

    const Eigen::LDLT<Eigen::MatrixXd> factor(gram);
    const double rcond = factor.rcond();
    // The LDLT solve silently zeroes components on vanishing pivots, so
    // singularity has to be read off the pivots themselves.
    const Eigen::VectorXd pivots = factor.vectorD();
    const double pivot_max = pivots.cwiseAbs().maxCoeff();
    const double pivot_min = pivots.minCoeff();
    if (factor.info() != Eigen::Success || !std::isfinite(rcond) ||
        !(pivot_min > 1e-14 * pivot_max)) {
        throw NumericalError(
            "output_weights: Z Z^T is singular or near-singular (rcond estimate " +
            std::to_string(rcond) + "); use lambda > 0");
    }

    const Eigen::VectorXd rhs = z * labels.transpose();
    const Eigen::RowVectorXd f = factor.solve(rhs).transpose();

    const double residual = (f * gram - rhs.transpose()).cwiseAbs().maxCoeff();
    const double bound = 1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if (!(residual <= bound)) {
        throw NumericalError("output_weights: solve residual " + std::to_string(residual) +
                             " exceeds bound " + std::to_string(bound) +
                             " (rcond estimate " + std::to_string(rcond) + ")");
    }
    return f;
}

} // namespace netsig
