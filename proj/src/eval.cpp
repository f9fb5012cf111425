#include "netsig/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "netsig/errors.hpp"
#include "netsig/parallel.hpp"

namespace netsig {

namespace {

std::vector<int> class_counts(const std::vector<int>& labels) {
    int c = 0;
    for (int label : labels) {
        if (label < 0) throw std::invalid_argument("class ids must be non-negative");
        c = std::max(c, label + 1);
    }
    std::vector<int> counts(c, 0);
    for (int label : labels) ++counts[label];
    return counts;
}

std::string class_label(const std::vector<std::string>& names, int id) {
    if (id < static_cast<int>(names.size())) return names[id];
    return std::to_string(id);
}

} // namespace

LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double shrinkage) {
    const int n_samples = static_cast<int>(features.rows());
    const int n_dims = static_cast<int>(features.cols());
    if (static_cast<int>(labels.size()) != n_samples)
        throw std::invalid_argument("lda_fit: label count does not match sample count");
    if (n_dims < 1)
        throw std::invalid_argument("lda_fit: need at least one feature");
    if (shrinkage < 0.0)
        throw std::invalid_argument("lda_fit: shrinkage must be non-negative");

    const std::vector<int> counts = class_counts(labels);
    const int n_classes = static_cast<int>(counts.size());
    if (n_classes < 2)
        throw std::invalid_argument("lda_fit: need at least 2 classes");
    for (int c = 0; c < n_classes; ++c)
        if (counts[c] < 2)
            throw DataError("lda_fit: class " + std::to_string(c) +
                            " has fewer than 2 samples");

    LdaModel model;
    model.shrinkage = shrinkage;
    model.class_means = Eigen::MatrixXd::Zero(n_classes, n_dims);
    for (int i = 0; i < n_samples; ++i)
        model.class_means.row(labels[i]) += features.row(i);
    for (int c = 0; c < n_classes; ++c)
        model.class_means.row(c) /= static_cast<double>(counts[c]);

    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(n_dims, n_dims);
    for (int i = 0; i < n_samples; ++i) {
        const Eigen::RowVectorXd centered = features.row(i) - model.class_means.row(labels[i]);
        pooled.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    }
    pooled = pooled.selfadjointView<Eigen::Lower>();
    pooled /= static_cast<double>(n_samples - n_classes);

    if (shrinkage > 0.0) {
        const double mean_diag = pooled.trace() / n_dims;
        pooled.diagonal().array() += shrinkage * (mean_diag > 0.0 ? mean_diag : 1.0);
    }

    model.pooled_factor.compute(pooled);
    const double rcond = model.pooled_factor.rcond();
    // Read singularity off the factor pivots; the guarded LDLT solve would
    // otherwise mask an exactly rank-deficient covariance.
    const Eigen::VectorXd pivots = model.pooled_factor.vectorD();
    const double pivot_max = pivots.cwiseAbs().maxCoeff();
    const double pivot_min = pivots.minCoeff();
    if (model.pooled_factor.info() != Eigen::Success || !std::isfinite(rcond) ||
        !(pivot_min > 1e-14 * pivot_max)) {
        throw NumericalError(
            "lda_fit: pooled covariance is singular (rcond estimate " +
            std::to_string(rcond) + "); use shrinkage > 0");
    }

    model.priors.resize(n_classes);
    for (int c = 0; c < n_classes; ++c)
        model.priors(c) = static_cast<double>(counts[c]) / n_samples;

    model.solved_means = model.pooled_factor.solve(model.class_means.transpose()).transpose();
    model.score_offset.resize(n_classes);
    for (int c = 0; c < n_classes; ++c) {
        model.score_offset(c) = -0.5 * model.class_means.row(c).dot(model.solved_means.row(c)) +
                                std::log(model.priors(c));
    }
    return model;
}

int lda_predict(const LdaModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.feature_count())
        throw std::invalid_argument("lda_predict: feature vector has length " +
                                    std::to_string(x.size()) + ", model expects " +
                                    std::to_string(model.feature_count()));
    int best = 0;
    double best_score = model.solved_means.row(0).dot(x) + model.score_offset(0);
    for (int c = 1; c < model.class_count(); ++c) {
        const double score = model.solved_means.row(c).dot(x) + model.score_offset(c);
        if (score > best_score) { // strict: ties keep the smaller class id
            best_score = score;
            best = c;
        }
    }
    return best;
}

EvalReport loocv(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double shrinkage, unsigned threads) {
    const int n_samples = static_cast<int>(features.rows());
    if (static_cast<int>(labels.size()) != n_samples)
        throw std::invalid_argument("loocv: label count does not match sample count");
    if (n_samples < 3)
        throw std::invalid_argument("loocv: need at least 3 samples");

    const std::vector<int> counts = class_counts(labels);
    const int n_classes = static_cast<int>(counts.size());
    if (n_classes < 2)
        throw std::invalid_argument("loocv: need at least 2 classes");
    for (int c = 0; c < n_classes; ++c)
        if (counts[c] < 2)
            throw DataError("loocv: class " + std::to_string(c) +
                            " has only " + std::to_string(counts[c]) +
                            " sample(s); every class needs at least 2");

    std::vector<int> predictions(n_samples, -1);
    parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t hold_out) {
        Eigen::MatrixXd train(n_samples - 1, features.cols());
        std::vector<int> train_labels;
        train_labels.reserve(n_samples - 1);
        Eigen::Index row = 0;
        for (int i = 0; i < n_samples; ++i) {
            if (static_cast<std::size_t>(i) == hold_out) continue;
            train.row(row++) = features.row(i);
            train_labels.push_back(labels[i]);
        }
        const LdaModel model = lda_fit(train, train_labels, shrinkage);
        predictions[hold_out] = lda_predict(model, features.row(hold_out).transpose());
    });

    EvalReport report;
    report.n_samples = n_samples;
    report.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
    for (int i = 0; i < n_samples; ++i)
        ++report.confusion(labels[i], predictions[i]);

    report.per_class_accuracy.resize(n_classes);
    int correct = 0;
    for (int c = 0; c < n_classes; ++c) {
        correct += report.confusion(c, c);
        report.per_class_accuracy[c] =
            100.0 * report.confusion(c, c) / static_cast<double>(counts[c]);
    }
    report.accuracy = 100.0 * correct / static_cast<double>(n_samples);
    return report;
}

std::string EvalReport::table(const std::vector<std::string>& class_names) const {
    std::ostringstream out;
    const int n_classes = static_cast<int>(confusion.rows());
    out << std::fixed << std::setprecision(2);
    out << "samples:  " << n_samples << "\n";
    out << "classes:  " << n_classes << "\n";
    out << "accuracy: " << accuracy << "\n\n";
    out << "per-class accuracy:\n";
    for (int c = 0; c < n_classes; ++c)
        out << "  " << std::setw(16) << std::left << class_label(class_names, c)
            << std::right << std::setw(7) << per_class_accuracy[c] << "\n";
    out << "\nconfusion (rows = true class):\n";
    for (int c = 0; c < n_classes; ++c) {
        out << "  ";
        for (int d = 0; d < n_classes; ++d) out << std::setw(5) << confusion(c, d);
        out << "\n";
    }
    return out.str();
}

std::string EvalReport::machine(const std::vector<std::string>& class_names) const {
    std::ostringstream out;
    const int n_classes = static_cast<int>(confusion.rows());
    out << "n_samples=" << n_samples << "\n";
    out << "n_classes=" << n_classes << "\n";
    out << std::fixed << std::setprecision(2);
    out << "accuracy=" << accuracy << "\n";
    for (int c = 0; c < n_classes; ++c)
        out << "per_class_accuracy." << class_label(class_names, c) << "="
            << per_class_accuracy[c] << "\n";
    out << "confusion_csv:\n";
    for (int c = 0; c < n_classes; ++c) {
        for (int d = 0; d < n_classes; ++d) {
            if (d) out << ',';
            out << confusion(c, d);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace netsig
