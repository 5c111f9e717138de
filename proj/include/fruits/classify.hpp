#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "fruits/fruit.hpp"

namespace fruits {

/// 10 log-spaced values from 1e-3 to 1e3.
std::vector<double> default_lambda_grid();

/// One-vs-rest ridge regression on standardised features with a +-1 target
/// column per class. Class index order is the sorted order of the labels.
struct RidgeModel {
    std::vector<std::string> classes;
    Eigen::VectorXd means;
    Eigen::VectorXd scales;
    Eigen::MatrixXd weights;  // features x classes, in standardised units
    Eigen::VectorXd intercepts;
    double lambda = 1.0;
    std::vector<double> lambda_grid;
    std::vector<double> cv_errors;  // mean squared LOO residual per grid value
};

Eigen::MatrixXd to_eigen(const FeatureMatrix& m);

/// Chooses lambda by closed-form leave-one-out error over the grid.
RidgeModel ridge_fit(const Eigen::MatrixXd& features, const std::vector<std::string>& labels,
                     std::vector<double> lambda_grid = default_lambda_grid());

/// Class scores, samples x classes.
Eigen::MatrixXd ridge_scores(const RidgeModel& model, const Eigen::MatrixXd& features);

/// Argmax of the scores; ties go to the lower class index.
std::vector<std::string> ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& features);

double accuracy(const std::vector<std::string>& predicted, const std::vector<std::string>& actual);

/// Leave-one-out residuals of the ridge fit at one lambda, computed from the
/// hat matrix diagonal. Rows are samples, columns classes. `features` must be
/// the standardised design and `targets` the +-1 encoding.
Eigen::MatrixXd loo_residuals(const Eigen::MatrixXd& features, const Eigen::MatrixXd& targets,
                              double lambda);

/// Per-column training mean and scale; columns with std below 1e-12 get scale 1.
void standardization(const Eigen::MatrixXd& features, Eigen::VectorXd& means,
                     Eigen::VectorXd& scales);

/// +-1 one-vs-rest encoding; fills `classes` with the sorted unique labels.
Eigen::MatrixXd encode_targets(const std::vector<std::string>& labels,
                               std::vector<std::string>& classes);

nlohmann::json model_to_json(const RidgeModel& model);
RidgeModel model_from_json(const nlohmann::json& j);

}  // namespace fruits
