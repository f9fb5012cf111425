#pragma once

#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace netsig {

/// Relative shrinkage applied to the pooled covariance diagonal by default.
/// Signature dimensionality can exceed per-fold sample counts, which makes
/// the pooled covariance singular; this keeps the solve well-posed. Note for
/// reproduction work: the reference experiments do not state their LDA
/// regularization, so accuracies can drift by up to about a point.
inline constexpr double kDefaultShrinkage = 1e-6;

/// Pooled-covariance Gaussian LDA.
/// score_c(x) = x^T S^-1 mu_c - 0.5 mu_c^T S^-1 mu_c + ln prior_c, where
/// S = pooled within-class covariance + shrinkage * mean_diag * I.
struct LdaModel {
    Eigen::MatrixXd class_means;                // C x n
    Eigen::LDLT<Eigen::MatrixXd> pooled_factor; // factorization of regularized S
    Eigen::MatrixXd solved_means;               // C x n, row c = (S^-1 mu_c)^T
    Eigen::VectorXd priors;                     // C, sums to 1
    Eigen::VectorXd score_offset;               // C: -0.5 mu_c^T S^-1 mu_c + ln prior_c
    double shrinkage = 0.0;

    int class_count() const { return static_cast<int>(class_means.rows()); }
    int feature_count() const { return static_cast<int>(class_means.cols()); }
};

/// Fits on an N x n matrix (one sample per row) and dense class ids 0..C-1.
/// Requires >= 2 classes and >= 2 samples per class. A singular covariance
/// with shrinkage = 0 raises NumericalError advising shrinkage > 0.
LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double shrinkage = kDefaultShrinkage);

/// Highest-score class; ties break toward the smallest class id.
int lda_predict(const LdaModel& model, const Eigen::VectorXd& x);

struct EvalReport {
    double accuracy = 0.0;                   // percent, 100 * trace / n_samples
    Eigen::MatrixXi confusion;               // C x C, row = true class
    std::vector<double> per_class_accuracy;  // percent
    int n_samples = 0;

    /// Human-readable summary table.
    std::string table(const std::vector<std::string>& class_names = {}) const;
    /// key=value lines followed by the confusion matrix as CSV.
    std::string machine(const std::vector<std::string>& class_names = {}) const;
};

/// Leave-one-out cross-validation: N folds, each fitting on N-1 samples and
/// predicting the held-out one. Folds are independent and may run on several
/// threads; the report does not depend on the schedule.
EvalReport loocv(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double shrinkage = kDefaultShrinkage, unsigned threads = 1);

} // namespace netsig
