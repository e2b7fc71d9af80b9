#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dho/trajectory.hpp"
#include "dho/types.hpp"

namespace dho {

/// One regression feature over a single axis's (u, v).
struct Feature {
    std::string name;
    std::function<double(double u, double v)> eval;
};

/// Ordered dictionary of features; names must be unique and the evaluation
/// order is fixed at insertion.
class FeatureSet {
public:
    void add(Feature f);
    const std::vector<Feature>& features() const { return features_; }
    std::size_t size() const { return features_.size(); }
    std::vector<std::string> names() const;

    /// The default dictionary {u, v, u^2, u*v, v^2}. The quadratic terms act
    /// as a built-in misspecification check: on linear dynamics their fitted
    /// coefficients must vanish.
    static FeatureSet quadratic_default();

private:
    std::vector<Feature> features_;
};

/// Least-squares update models for one step size:
/// Delta u ~ h1(u, v; eps), Delta v ~ h2(u, v; eps), one coefficient per
/// feature per axis.
struct FJetModel {
    double eps = 0.0;
    std::vector<std::string> feature_names;
    Mat coeffs_h1;  // n_features x dim
    Mat coeffs_h2;  // n_features x dim
    double residual_rms = 0.0;
    Vec condition;  // per-axis condition estimate of the design matrix
};

FJetModel fit_feature_regression(const DeltaDataset& ds, const FeatureSet& fs);

/// eps -> 0 extrapolation of coefficient ratios c(eps)/eps via a quadratic
/// fit; intercepts recover the DE parameters: omega0^2 = -c0[h2; u],
/// 2 gamma = -c0[h2; v], with c0[h1; v] ~ 1 as a consistency check.
struct DEEstimate {
    std::vector<std::string> feature_names;
    Vec omega0_sq_hat;  // per axis
    Vec two_gamma_hat;  // per axis
    Vec h1_v_check;     // per axis, should be ~1
    bool flagged = false;  // set when a recovered omega0^2 is not positive
    Mat intercept_h1;   // n_features x dim
    Mat intercept_h2;
    Mat stderr_h1;
    Mat stderr_h2;
};

DEEstimate extrapolate_to_zero(const std::vector<FJetModel>& models);

/// Fit one model per stride on the same trajectory (eps = stride * dt).
std::vector<FJetModel> fit_over_strides(const Trajectory& traj, const std::vector<int>& strides,
                                        const FeatureSet& fs = FeatureSet::quadratic_default());

nlohmann::json fit_report_json(const std::vector<FJetModel>& models, const DEEstimate& estimate);

}  // namespace dho
