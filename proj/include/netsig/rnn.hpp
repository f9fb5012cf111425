#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace netsig {

/// Integer sequence V(1) = E+1, V(n+1) = (a*V(n) + b) mod c with a = E+2,
/// b = E+3, c = E*E, evaluated exactly in 128-bit arithmetic. The sequence
/// seeds the hidden layer, so it depends on nothing but its length.
std::vector<std::uint64_t> lcg_sequence(std::uint64_t length);

/// Fixed hidden layer of a randomized network.
struct HiddenLayer {
    int neuron_count = 0;    // Q
    int input_arity = 0;     // p
    Eigen::MatrixXd weights; // Q x (p+1); the last column weights the bias input
};

/// Builds the Q x (p+1) hidden matrix from the LCG sequence of length
/// Q*(p+1), reshaped row-major and z-scored jointly over all entries
/// (global zero mean, unit population std). Pure function of (Q, p).
HiddenLayer hidden_weights(int neuron_count, int input_arity);

/// Normalizes each row to zero mean and unit population std. Constant rows
/// carry no information and map to all-zero rows.
Eigen::MatrixXd zscore_rows(const Eigen::MatrixXd& x);

/// Hidden-layer response phi(W * [x; 1]) with phi the logistic sigmoid,
/// plus a trailing row of ones: (Q+1) x N, entries in (0, 1]. `x` must
/// already be row-normalized; the bias rows are appended afterwards and are
/// never normalized.
Eigen::MatrixXd project(const HiddenLayer& hidden, const Eigen::MatrixXd& x);

/// Output-weight row vector f solving f * (Z Z^T + lambda I) = d * Z^T via a
/// symmetric factorization (never an explicit inverse). Enforces the residual
/// bound ||f*(ZZ^T+lambda I) - d*Z^T||_inf <= 1e-8 * max(1, ||d*Z^T||_inf).
/// lambda = 0 with singular Z Z^T raises NumericalError naming the condition
/// estimate.
Eigen::RowVectorXd output_weights(const Eigen::MatrixXd& z,
                                  const Eigen::RowVectorXd& labels, double lambda);

} // namespace netsig
