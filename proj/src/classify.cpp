#include "fruits/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "fruits/error.hpp"

namespace fruits {

using nlohmann::json;

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int k = 0; k < 10; ++k) grid.push_back(std::pow(10.0, -3.0 + 6.0 * k / 9.0));
    return grid;
}

Eigen::MatrixXd to_eigen(const FeatureMatrix& m) {
    Eigen::MatrixXd out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) out(r, c) = m(r, c);
    return out;
}

void standardization(const Eigen::MatrixXd& features, Eigen::VectorXd& means,
                     Eigen::VectorXd& scales) {
    const double n = static_cast<double>(features.rows());
    means = features.colwise().mean().transpose();
    scales.resize(features.cols());
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
        const double var = (features.col(c).array() - means(c)).square().sum() / n;
        const double sd = std::sqrt(var);
        scales(c) = sd < 1e-12 ? 1.0 : sd;
    }
}

Eigen::MatrixXd encode_targets(const std::vector<std::string>& labels,
                               std::vector<std::string>& classes) {
    std::set<std::string> unique(labels.begin(), labels.end());
    classes.assign(unique.begin(), unique.end());
    Eigen::MatrixXd y = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(labels.size()),
                                                  static_cast<Eigen::Index>(classes.size()), -1.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto pos = std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin();
        y(static_cast<Eigen::Index>(i), pos) = 1.0;
    }
    return y;
}

namespace {

Eigen::MatrixXd standardized(const Eigen::MatrixXd& x, const Eigen::VectorXd& means,
                             const Eigen::VectorXd& scales) {
    return (x.rowwise() - means.transpose()).array().rowwise() / scales.transpose().array();
}

// Spectral form of the centred design: Xc Xc^T = U diag(s2) U^T. When the
// samples do not outnumber the features, U is a complete orthonormal basis
// of the complement of the constant vector (the only directions a centred
// fit can reach), so 1 - h_ii is a sum of positive terms. Otherwise U keeps
// the nonzero part of the feature-side decomposition.
struct Spectrum {
    Eigen::MatrixXd u;   // n x r
    Eigen::VectorXd s2;  // r
    bool complete = false;
};

Spectrum spectrum(const Eigen::MatrixXd& centred) {
    const Eigen::Index n = centred.rows();
    const Eigen::Index p = centred.cols();
    Spectrum out;
    if (n <= p + 1) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(n, 1));
        const Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd z = q.rightCols(n - 1);
        const Eigen::MatrixXd b = z.transpose() * centred;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b * b.transpose());
        out.u = z * eig.eigenvectors();
        out.s2 = eig.eigenvalues().cwiseMax(0.0);
        out.complete = true;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centred.transpose() * centred);
        const Eigen::VectorXd s2 = eig.eigenvalues().cwiseMax(0.0);
        const double cutoff = s2.maxCoeff() * 1e-14 * static_cast<double>(std::max(n, p));
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < s2.size(); ++i)
            if (s2(i) > cutoff) keep.push_back(i);
        out.u.resize(n, static_cast<Eigen::Index>(keep.size()));
        out.s2.resize(static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k) {
            const auto i = keep[k];
            const auto kk = static_cast<Eigen::Index>(k);
            out.u.col(kk) = centred * eig.eigenvectors().col(i) / std::sqrt(s2(i));
            out.s2(kk) = s2(i);
        }
    }
    return out;
}

Eigen::MatrixXd loo_from_spectrum(const Spectrum& sp, const Eigen::MatrixXd& centred_targets,
                                  double lambda) {
    const Eigen::Index n = centred_targets.rows();
    const Eigen::VectorXd damp = lambda / (sp.s2.array() + lambda);
    const Eigen::MatrixXd u2 = sp.u.array().square();
    Eigen::MatrixXd residual;
    Eigen::VectorXd one_minus_hat;
    if (sp.complete) {
        residual = sp.u * (damp.asDiagonal() * (sp.u.transpose() * centred_targets));
        one_minus_hat = u2 * damp;
    } else {
        // Directions outside U are left untouched by the fit; the
        // unpenalised intercept adds 1/n to every hat diagonal.
        const Eigen::VectorXd shrink = 1.0 - damp.array();
        residual = centred_targets - sp.u * (shrink.asDiagonal() * (sp.u.transpose() * centred_targets));
        one_minus_hat = (1.0 - 1.0 / static_cast<double>(n)) - (u2 * shrink).array();
    }
    for (Eigen::Index i = 0; i < n; ++i) residual.row(i) /= one_minus_hat(i);
    return residual;
}

}  // namespace

Eigen::MatrixXd loo_residuals(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets,
                              double lambda) {
    const Eigen::RowVectorXd xm = features.colwise().mean();
    const Eigen::RowVectorXd ym = targets.colwise().mean();
    const Eigen::MatrixXd xc = features.rowwise() - xm;
    const Eigen::MatrixXd yc = targets.rowwise() - ym;
    return loo_from_spectrum(spectrum(xc), yc, lambda);
}

RidgeModel ridge_fit(const Eigen::MatrixXd& features, const std::vector<std::string>& labels,
                     std::vector<double> lambda_grid) {
    if (features.cols() == 0) throw Error(ErrorCode::EmptyFeatures, "no features to fit on");
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw Error(ErrorCode::ShapeMismatch, "feature rows and labels differ in count");
    if (features.rows() < 2) throw Error(ErrorCode::SingleClass, "need at least two samples");
    if (lambda_grid.empty()) throw Error(ErrorCode::InvalidSpec, "empty lambda grid");

    RidgeModel model;
    const Eigen::MatrixXd y = encode_targets(labels, model.classes);
    if (model.classes.size() < 2)
        throw Error(ErrorCode::SingleClass, "training labels contain a single class");

    standardization(features, model.means, model.scales);
    const Eigen::MatrixXd x = standardized(features, model.means, model.scales);
    const Eigen::RowVectorXd ym = y.colwise().mean();
    const Eigen::MatrixXd yc = y.rowwise() - ym;

    const Spectrum sp = spectrum(x);  // x is already centred
    model.lambda_grid = lambda_grid;
    double best = std::numeric_limits<double>::infinity();
    for (double lambda : lambda_grid) {
        const double err = loo_from_spectrum(sp, yc, lambda).squaredNorm() /
                           static_cast<double>(yc.size());
        model.cv_errors.push_back(err);
        if (err < best) {
            best = err;
            model.lambda = lambda;
        }
    }

    const Eigen::VectorXd inv = (sp.s2.array() + model.lambda).inverse();
    // Dual solution w = X^T U diag(1/(s2+l)) U^T Yc; X^T annihilates the null part.
    const Eigen::MatrixXd dual = sp.u * (inv.asDiagonal() * (sp.u.transpose() * yc));
    model.weights = x.transpose() * dual;
    model.intercepts = ym.transpose();
    return model;
}

Eigen::MatrixXd ridge_scores(const RidgeModel& model, const Eigen::MatrixXd& features) {
    if (features.cols() != model.means.size())
        throw Error(ErrorCode::ShapeMismatch, "feature count differs from the trained model");
    const Eigen::MatrixXd x = standardized(features, model.means, model.scales);
    return (x * model.weights).rowwise() + model.intercepts.transpose();
}

std::vector<std::string> ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& features) {
    const Eigen::MatrixXd scores = ridge_scores(model, features);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(scores.rows()));
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < scores.cols(); ++c)
            if (scores(i, c) > scores(i, best)) best = c;
        out.push_back(model.classes[static_cast<std::size_t>(best)]);
    }
    return out;
}

double accuracy(const std::vector<std::string>& predicted, const std::vector<std::string>& actual) {
    if (predicted.size() != actual.size())
        throw Error(ErrorCode::LengthMismatch, "prediction and label vectors differ in length");
    if (predicted.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == actual[i];
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

namespace {

json vec_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vec_from_json(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

json model_to_json(const RidgeModel& model) {
    json weights = json::array();
    for (Eigen::Index c = 0; c < model.weights.cols(); ++c)
        weights.push_back(vec_to_json(model.weights.col(c)));
    return {{"classes", model.classes},     {"means", vec_to_json(model.means)},
            {"scales", vec_to_json(model.scales)}, {"weights", weights},
            {"intercepts", vec_to_json(model.intercepts)}, {"lambda", model.lambda},
            {"lambda_grid", model.lambda_grid},      {"cv_errors", model.cv_errors}};
}

RidgeModel model_from_json(const json& j) {
    try {
        RidgeModel model;
        model.classes = j.at("classes").get<std::vector<std::string>>();
        model.means = vec_from_json(j.at("means"));
        model.scales = vec_from_json(j.at("scales"));
        model.intercepts = vec_from_json(j.at("intercepts"));
        const auto& weights = j.at("weights");
        model.weights.resize(model.means.size(), static_cast<Eigen::Index>(weights.size()));
        for (std::size_t c = 0; c < weights.size(); ++c)
            model.weights.col(static_cast<Eigen::Index>(c)) = vec_from_json(weights[c]);
        model.lambda = j.at("lambda").get<double>();
        model.lambda_grid = j.value("lambda_grid", std::vector<double>{});
        model.cv_errors = j.value("cv_errors", std::vector<double>{});
        return model;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed ridge model: ") + e.what());
    }
}

}  // namespace fruits
