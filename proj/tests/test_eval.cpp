#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "netsig/errors.hpp"
#include "netsig/eval.hpp"
#include "netsig/rng.hpp"
#include "oracles.hpp"

using namespace netsig;

namespace {

// Two well-separated Gaussian-ish blobs in `dims` dimensions.
struct Blobs {
    Eigen::MatrixXd features;
    std::vector<int> labels;
};

Blobs separable_blobs(netsig::SplitMix64& rng, int per_class, int dims, double gap = 8.0) {
    Blobs out;
    out.features.resize(2 * per_class, dims);
    for (int i = 0; i < 2 * per_class; ++i) {
        const int cls = i < per_class ? 0 : 1;
        out.labels.push_back(cls);
        for (int d = 0; d < dims; ++d)
            out.features(i, d) = (cls ? gap : 0.0) + rng.next_double() - 0.5;
    }
    return out;
}

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

} // namespace

TEST_CASE("lda_fit recovers means and the midpoint threshold on a 1-D hand case") {
    Eigen::MatrixXd x(4, 1);
    x << 0.0, 0.1, 10.0, 10.1;
    const std::vector<int> y = {0, 0, 1, 1};
    const LdaModel model = lda_fit(x, y, 0.0);

    CHECK(model.class_means(0, 0) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(model.class_means(1, 0) == doctest::Approx(10.05).epsilon(1e-15));
    CHECK(model.priors(0) == 0.5);
    CHECK(model.priors(1) == 0.5);

    // Pooled variance (0.01 / 2 = 0.005); equal priors put the threshold at
    // the mean midpoint 5.05.
    CHECK(lda_predict(model, vec1(4.0)) == 0);
    CHECK(lda_predict(model, vec1(5.0)) == 0);
    CHECK(lda_predict(model, vec1(5.1)) == 1);
    CHECK(lda_predict(model, vec1(6.0)) == 1);
}

TEST_CASE("lda_fit is symmetric under class relabeling") {
    SplitMix64 rng(51);
    const Blobs blobs = separable_blobs(rng, 6, 3);
    std::vector<int> flipped(blobs.labels.size());
    std::transform(blobs.labels.begin(), blobs.labels.end(), flipped.begin(),
                   [](int c) { return 1 - c; });

    const LdaModel a = lda_fit(blobs.features, blobs.labels);
    const LdaModel b = lda_fit(blobs.features, flipped);
    CHECK((a.class_means.row(0) - b.class_means.row(1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.class_means.row(1) - b.class_means.row(0)).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXd probe =
            oracles::random_matrix(rng, 3, 1).col(0) * 10.0;
        CHECK(lda_predict(a, probe) == 1 - lda_predict(b, probe));
    }
}

TEST_CASE("shrinkage absorbs rank deficiency; zero shrinkage reports singularity") {
    SplitMix64 rng(52);
    Blobs blobs = separable_blobs(rng, 5, 4);
    blobs.features.col(3).setConstant(2.5); // constant column -> singular pooled covariance

    CHECK_THROWS_WITH_AS(lda_fit(blobs.features, blobs.labels, 0.0),
                         doctest::Contains("shrinkage"), NumericalError);
    const LdaModel model = lda_fit(blobs.features, blobs.labels, 1e-6);
    CHECK(model.class_count() == 2);
}

TEST_CASE("lda_fit validates its dataset") {
    SplitMix64 rng(53);
    const Blobs blobs = separable_blobs(rng, 4, 2);
    std::vector<int> labels = blobs.labels;

    SUBCASE("single class") {
        std::fill(labels.begin(), labels.end(), 0);
        CHECK_THROWS_AS(lda_fit(blobs.features, labels), std::invalid_argument);
    }
    SUBCASE("class with fewer than two samples") {
        labels.back() = 2;
        CHECK_THROWS_AS(lda_fit(blobs.features, labels), DataError);
    }
    SUBCASE("label count mismatch") {
        labels.pop_back();
        CHECK_THROWS_AS(lda_fit(blobs.features, labels), std::invalid_argument);
    }
}

TEST_CASE("lda_predict classifies class means correctly and breaks ties low") {
    SplitMix64 rng(54);
    const Blobs blobs = separable_blobs(rng, 8, 3);
    const LdaModel model = lda_fit(blobs.features, blobs.labels);
    CHECK(lda_predict(model, model.class_means.row(0).transpose()) == 0);
    CHECK(lda_predict(model, model.class_means.row(1).transpose()) == 1);
    CHECK_THROWS_AS(lda_predict(model, Eigen::VectorXd::Zero(7)), std::invalid_argument);

    // Exactly symmetric classes: the probe at the midpoint scores equal for
    // both classes, so the smaller id wins.
    Eigen::MatrixXd sym(4, 1);
    sym << -2.0, -1.0, 1.0, 2.0;
    const LdaModel tie_model = lda_fit(sym, {0, 0, 1, 1}, 0.0);
    CHECK(lda_predict(tie_model, vec1(0.0)) == 0);
}

TEST_CASE("lda_predict is invariant under invertible affine maps when shrinkage is 0") {
    SplitMix64 rng(55);
    const int dims = 3;
    const Blobs blobs = separable_blobs(rng, 10, dims, 5.0);

    Eigen::MatrixXd map = Eigen::MatrixXd::Identity(dims, dims) * 2.0 +
                          0.3 * oracles::random_matrix(rng, dims, dims);
    const Eigen::VectorXd shift = oracles::random_matrix(rng, dims, 1).col(0) * 4.0;

    Eigen::MatrixXd mapped(blobs.features.rows(), dims);
    for (Eigen::Index i = 0; i < blobs.features.rows(); ++i)
        mapped.row(i) = (map * blobs.features.row(i).transpose() + shift).transpose();

    const LdaModel raw = lda_fit(blobs.features, blobs.labels, 0.0);
    const LdaModel txf = lda_fit(mapped, blobs.labels, 0.0);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::VectorXd x = oracles::random_matrix(rng, dims, 1).col(0) * 6.0;
        const Eigen::VectorXd x_mapped = map * x + shift;
        CHECK(lda_predict(raw, x) == lda_predict(txf, x_mapped));
    }
}

TEST_CASE("loocv achieves 100% on a separable set and reports consistently") {
    SplitMix64 rng(56);
    const Blobs blobs = separable_blobs(rng, 8, 4);
    const EvalReport report = loocv(blobs.features, blobs.labels);

    CHECK(report.accuracy == 100.0);
    CHECK(report.n_samples == 16);
    CHECK(report.confusion.trace() == 16);
    // Row sums equal the class counts; accuracy is exactly 100 * trace / N.
    CHECK(report.confusion.row(0).sum() == 8);
    CHECK(report.confusion.row(1).sum() == 8);
    CHECK(report.accuracy == 100.0 * report.confusion.trace() / report.n_samples);
    CHECK(report.per_class_accuracy[0] == 100.0);
    CHECK(report.per_class_accuracy[1] == 100.0);
}

TEST_CASE("loocv rejects classes that would vanish from a fold") {
    SplitMix64 rng(57);
    Blobs blobs = separable_blobs(rng, 4, 2);
    std::vector<int> labels = blobs.labels;
    labels.back() = 2; // class 2 has a single sample
    CHECK_THROWS_WITH_AS(loocv(blobs.features, labels), doctest::Contains("class 2"),
                         DataError);
}

TEST_CASE("loocv accuracy is invariant under sample reordering") {
    SplitMix64 rng(58);
    const Blobs blobs = separable_blobs(rng, 7, 3);
    const EvalReport base = loocv(blobs.features, blobs.labels);

    std::vector<std::size_t> perm(blobs.labels.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.next_below(i)]);

    Eigen::MatrixXd shuffled(blobs.features.rows(), blobs.features.cols());
    std::vector<int> shuffled_labels(blobs.labels.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.row(static_cast<Eigen::Index>(i)) =
            blobs.features.row(static_cast<Eigen::Index>(perm[i]));
        shuffled_labels[i] = blobs.labels[perm[i]];
    }
    const EvalReport permuted = loocv(shuffled, shuffled_labels);
    CHECK(permuted.accuracy == base.accuracy);
    CHECK(permuted.confusion == base.confusion);
}

TEST_CASE("loocv is schedule-independent across thread counts") {
    SplitMix64 rng(59);
    const Blobs blobs = separable_blobs(rng, 6, 5);
    const EvalReport single = loocv(blobs.features, blobs.labels, kDefaultShrinkage, 1);
    const EvalReport multi = loocv(blobs.features, blobs.labels, kDefaultShrinkage, 4);
    CHECK(single.accuracy == multi.accuracy);
    CHECK(single.confusion == multi.confusion);
}

TEST_CASE("loocv on shuffled labels over structureless features hovers near chance") {
    const int n = 60;
    const int dims = 3;
    double total = 0.0;
    int runs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SplitMix64 rng(seed * 977);
        Eigen::MatrixXd features = oracles::random_matrix(rng, n, dims);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = i % 2; // balanced
        for (std::size_t i = labels.size(); i > 1; --i)
            std::swap(labels[i - 1], labels[rng.next_below(i)]);
        total += loocv(features, labels).accuracy;
        ++runs;
    }
    const double mean_accuracy = total / runs;
    CHECK(mean_accuracy >= 35.0);
    CHECK(mean_accuracy <= 65.0);
}

TEST_CASE("report serialization has both human and machine forms") {
    SplitMix64 rng(60);
    const Blobs blobs = separable_blobs(rng, 5, 2);
    const EvalReport report = loocv(blobs.features, blobs.labels);

    const std::string table = report.table({"alpha", "beta"});
    CHECK(table.find("accuracy: 100.00") != std::string::npos);
    CHECK(table.find("alpha") != std::string::npos);

    const std::string machine = report.machine({"alpha", "beta"});
    CHECK(machine.find("accuracy=100.00") != std::string::npos);
    CHECK(machine.find("n_samples=10") != std::string::npos);
    CHECK(machine.find("confusion_csv:\n5,0\n0,5\n") != std::string::npos);
}
