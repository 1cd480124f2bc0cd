#pragma once

#include <Eigen/Dense>

namespace hpsim::stats {

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd std_errors;  // empty unless requested and full rank
    double rss = 0.0;
    Eigen::Index rank = 0;
    Eigen::Index nobs = 0;
};

/// Least squares through column-pivoted QR; rank-deficient designs are allowed.
inline OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool with_std_errors = false) {
    OlsFit fit;
    fit.nobs = X.rows();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    fit.rank = qr.rank();
    fit.beta = qr.solve(y);
    fit.rss = (y - X * fit.beta).squaredNorm();

    const Eigen::Index p = X.cols();
    if (with_std_errors && fit.rank == p && fit.nobs > p) {
        const double sigma2 = fit.rss / static_cast<double>(fit.nobs - p);
        const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
        const Eigen::MatrixXd r_inv =
            r.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
        const Eigen::MatrixXd cov_pivoted = r_inv * r_inv.transpose();
        const Eigen::MatrixXd cov = qr.colsPermutation() * cov_pivoted * qr.colsPermutation().transpose();
        fit.std_errors = (cov.diagonal() * sigma2).cwiseSqrt();
    }
    return fit;
}

}  // namespace hpsim::stats
