#include "dho/fjet.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dho {

void FeatureSet::add(Feature f) {
    for (const auto& existing : features_)
        if (existing.name == f.name)
            throw std::invalid_argument("FeatureSet: duplicate feature '" + f.name + "'");
    features_.push_back(std::move(f));
}

std::vector<std::string> FeatureSet::names() const {
    std::vector<std::string> out;
    out.reserve(features_.size());
    for (const auto& f : features_) out.push_back(f.name);
    return out;
}

FeatureSet FeatureSet::quadratic_default() {
    FeatureSet fs;
    fs.add({"u", [](double u, double) { return u; }});
    fs.add({"v", [](double, double v) { return v; }});
    fs.add({"u^2", [](double u, double) { return u * u; }});
    fs.add({"u*v", [](double u, double v) { return u * v; }});
    fs.add({"v^2", [](double, double v) { return v * v; }});
    return fs;
}

FJetModel fit_feature_regression(const DeltaDataset& ds, const FeatureSet& fs) {
    const Eigen::Index rows = ds.n_rows();
    const Eigen::Index nf = static_cast<Eigen::Index>(fs.size());
    const Eigen::Index dim = ds.dim();
    if (nf == 0) throw std::invalid_argument("fit_feature_regression: empty feature set");
    if (rows < nf)
        throw std::invalid_argument("fit_feature_regression: need at least " +
                                    std::to_string(nf) + " rows, got " + std::to_string(rows));

    FJetModel model;
    model.eps = ds.eps;
    model.feature_names = fs.names();
    model.coeffs_h1.resize(nf, dim);
    model.coeffs_h2.resize(nf, dim);
    model.condition.resize(dim);

    double sq_sum = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        Mat design(rows, nf);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < nf; ++j)
                design(i, j) = fs.features()[static_cast<std::size_t>(j)].eval(ds.u(i, k), ds.v(i, k));

        Eigen::ColPivHouseholderQR<Mat> qr(design);
        qr.setThreshold(1e-10);
        if (qr.rank() < nf) {
            // The trailing pivots identify the dependent columns.
            const auto perm = qr.colsPermutation().indices();
            std::string bad;
            for (Eigen::Index j = qr.rank(); j < nf; ++j) {
                if (!bad.empty()) bad += ", ";
                bad += fs.features()[static_cast<std::size_t>(perm(j))].name;
            }
            throw std::runtime_error("fit_feature_regression: rank-deficient design matrix on axis " +
                                     std::to_string(k + 1) + "; collinear features: " + bad);
        }
        const auto rdiag = qr.matrixQR().diagonal().cwiseAbs();
        model.condition(k) = rdiag(0) / rdiag(nf - 1);

        model.coeffs_h1.col(k) = qr.solve(ds.du.col(k));
        model.coeffs_h2.col(k) = qr.solve(ds.dv.col(k));
        sq_sum += (design * model.coeffs_h1.col(k) - ds.du.col(k)).squaredNorm();
        sq_sum += (design * model.coeffs_h2.col(k) - ds.dv.col(k)).squaredNorm();
    }
    model.residual_rms = std::sqrt(sq_sum / static_cast<double>(2 * rows * dim));
    return model;
}

namespace {

struct QuadraticFit {
    double intercept;
    double std_error;
};

// Ordinary least squares of y against [1, x, x^2]; standard error of the
// intercept from the residual variance (zero when the fit is exact).
QuadraticFit fit_quadratic(const Vec& x, const Vec& y) {
    const Eigen::Index n = x.size();
    Mat design(n, 3);
    design.col(0).setOnes();
    design.col(1) = x;
    design.col(2) = x.array().square();
    const Eigen::ColPivHouseholderQR<Mat> qr(design);
    const Vec coef = qr.solve(y);
    double se = 0.0;
    if (n > 3) {
        const double rss = (design * coef - y).squaredNorm();
        const double sigma_sq = rss / static_cast<double>(n - 3);
        const Mat xtx_inv = (design.transpose() * design).inverse();
        se = std::sqrt(std::max(0.0, sigma_sq * xtx_inv(0, 0)));
    }
    return {coef(0), se};
}

}  // namespace

DEEstimate extrapolate_to_zero(const std::vector<FJetModel>& models) {
    if (models.size() < 3)
        throw std::invalid_argument("extrapolate_to_zero: need >= 3 distinct eps values, got " +
                                    std::to_string(models.size()));
    std::set<double> eps_set;
    for (const auto& m : models) eps_set.insert(m.eps);
    if (eps_set.size() != models.size())
        throw std::invalid_argument("extrapolate_to_zero: eps values must be distinct");

    const Eigen::Index nf = models.front().coeffs_h1.rows();
    const Eigen::Index dim = models.front().coeffs_h1.cols();
    const auto& names = models.front().feature_names;
    for (const auto& m : models)
        if (m.coeffs_h1.rows() != nf || m.coeffs_h1.cols() != dim || m.feature_names != names)
            throw std::invalid_argument("extrapolate_to_zero: models disagree on features or dim");

    const Eigen::Index n = static_cast<Eigen::Index>(models.size());
    Vec eps(n);
    for (Eigen::Index i = 0; i < n; ++i) eps(i) = models[static_cast<std::size_t>(i)].eps;

    DEEstimate est;
    est.feature_names = names;
    est.intercept_h1.resize(nf, dim);
    est.intercept_h2.resize(nf, dim);
    est.stderr_h1.resize(nf, dim);
    est.stderr_h2.resize(nf, dim);

    Vec y(n);
    for (Eigen::Index k = 0; k < dim; ++k) {
        for (Eigen::Index j = 0; j < nf; ++j) {
            for (Eigen::Index i = 0; i < n; ++i)
                y(i) = models[static_cast<std::size_t>(i)].coeffs_h1(j, k) / eps(i);
            const auto f1 = fit_quadratic(eps, y);
            est.intercept_h1(j, k) = f1.intercept;
            est.stderr_h1(j, k) = f1.std_error;

            for (Eigen::Index i = 0; i < n; ++i)
                y(i) = models[static_cast<std::size_t>(i)].coeffs_h2(j, k) / eps(i);
            const auto f2 = fit_quadratic(eps, y);
            est.intercept_h2(j, k) = f2.intercept;
            est.stderr_h2(j, k) = f2.std_error;
        }
    }

    const auto index_of = [&](const std::string& name) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw std::invalid_argument("extrapolate_to_zero: feature set lacks '" + name + "'");
        return static_cast<Eigen::Index>(it - names.begin());
    };
    const Eigen::Index iu = index_of("u");
    const Eigen::Index iv = index_of("v");

    est.omega0_sq_hat = -est.intercept_h2.row(iu).transpose();
    est.two_gamma_hat = -est.intercept_h2.row(iv).transpose();
    est.h1_v_check = est.intercept_h1.row(iv).transpose();
    est.flagged = (est.omega0_sq_hat.array() <= 0.0).any();
    return est;
}

std::vector<FJetModel> fit_over_strides(const Trajectory& traj, const std::vector<int>& strides,
                                        const FeatureSet& fs) {
    std::vector<FJetModel> models;
    models.reserve(strides.size());
    for (int s : strides) models.push_back(fit_feature_regression(build_delta_dataset(traj, s), fs));
    return models;
}

namespace {

nlohmann::json mat_to_json(const Mat& m) {
    // One array per axis (column).
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
        nlohmann::json col = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.rows(); ++j) col.push_back(m(j, k));
        out.push_back(col);
    }
    return out;
}

nlohmann::json vec_to_json(const Vec& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace

nlohmann::json fit_report_json(const std::vector<FJetModel>& models, const DEEstimate& estimate) {
    nlohmann::json report;
    report["features"] = estimate.feature_names;
    nlohmann::json per_eps = nlohmann::json::array();
    for (const auto& m : models) {
        per_eps.push_back({{"eps", m.eps},
                           {"residual_rms", m.residual_rms},
                           {"condition", vec_to_json(m.condition)},
                           {"h1", mat_to_json(m.coeffs_h1)},
                           {"h2", mat_to_json(m.coeffs_h2)}});
    }
    report["models"] = per_eps;
    report["estimate"] = {{"omega0_sq", vec_to_json(estimate.omega0_sq_hat)},
                          {"two_gamma", vec_to_json(estimate.two_gamma_hat)},
                          {"h1_v", vec_to_json(estimate.h1_v_check)},
                          {"flagged", estimate.flagged},
                          {"intercepts",
                           {{"h1", mat_to_json(estimate.intercept_h1)},
                            {"h2", mat_to_json(estimate.intercept_h2)}}},
                          {"std_errors",
                           {{"h1", mat_to_json(estimate.stderr_h1)},
                            {"h2", mat_to_json(estimate.stderr_h2)}}}};
    return report;
}

}  // namespace dho
