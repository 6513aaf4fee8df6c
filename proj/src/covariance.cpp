#include "kreg/covariance.hpp"

#include <cmath>

#include "kreg/design.hpp"
#include "kreg/errors.hpp"

namespace kreg {

CovModel CovModel::wiener(double sigma2) { return {CovFamily::Wiener, sigma2, 0.0, 0.0}; }
CovModel CovModel::ou(double sigma2, double lambda) {
    return {CovFamily::OrnsteinUhlenbeck, sigma2, lambda, 0.0};
}
CovModel CovModel::gen_ou(double sigma2, double lambda, double rho) {
    return {CovFamily::GeneralizedOU, sigma2, lambda, rho};
}
CovModel CovModel::scaled_wiener(double sigma2) {
    return {CovFamily::ScaledWiener, sigma2, 0.0, 0.0};
}
CovModel CovModel::zero() { return {CovFamily::Zero, 0.0, 0.0, 0.0}; }

CovModel CovModel::from_name(const std::string& family, double sigma2,
                             double lambda, double rho) {
    CovModel m;
    if (family == "wiener") m = wiener(sigma2);
    else if (family == "ou") m = ou(sigma2, lambda);
    else if (family == "gen-ou") m = gen_ou(sigma2, lambda, rho);
    else if (family == "scaled-wiener") m = scaled_wiener(sigma2);
    else if (family == "zero") return zero();
    else throw ConfigError("unknown covariance family: " + family);

    if (m.sigma2 <= 0.0) throw ConfigError("sigma2 must be positive");
    if ((m.family == CovFamily::OrnsteinUhlenbeck ||
         m.family == CovFamily::GeneralizedOU) && m.lambda <= 0.0)
        throw ConfigError("lambda must be positive");
    if (m.family == CovFamily::GeneralizedOU && (m.rho <= 0.0 || m.rho >= 1.0))
        throw ConfigError("rho must lie in (0,1)");
    return m;
}

std::string CovModel::name() const {
    switch (family) {
        case CovFamily::Wiener: return "wiener";
        case CovFamily::OrnsteinUhlenbeck: return "ou";
        case CovFamily::GeneralizedOU: return "gen-ou";
        case CovFamily::ScaledWiener: return "scaled-wiener";
        case CovFamily::Zero: return "zero";
    }
    return "?";
}

double cov_eval(const CovModel& m, double s, double t) {
    switch (m.family) {
        case CovFamily::Wiener:
            return m.sigma2 * std::min(s, t);
        case CovFamily::OrnsteinUhlenbeck:
            return m.sigma2 * std::exp(-m.lambda * std::abs(s - t));
        case CovFamily::GeneralizedOU: {
            const double d = std::abs(std::pow(s, m.lambda) - std::pow(t, m.lambda));
            return m.sigma2 * std::exp(std::log(m.rho) * d / m.lambda);
        }
        case CovFamily::ScaledWiener:
            return m.sigma2 * s * t * std::min(s, t);
        case CovFamily::Zero:
            return 0.0;
    }
    return 0.0;
}

double jump_alpha(const CovModel& m, double t) {
    if (t <= 0.0 || t > 1.0) throw DomainError("jump_alpha: t must lie in (0,1]");
    switch (m.family) {
        case CovFamily::Wiener:
            return m.sigma2;
        case CovFamily::OrnsteinUhlenbeck:
            return 2.0 * m.sigma2 * m.lambda;
        case CovFamily::GeneralizedOU:
            return -2.0 * m.sigma2 * std::log(m.rho) * std::pow(t, m.lambda - 1.0);
        case CovFamily::ScaledWiener:
            return m.sigma2 * t * t;
        case CovFamily::Zero:
            throw DomainError("jump_alpha: zero covariance has no jump function");
    }
    throw DomainError("jump_alpha: unsupported family");
}

Eigen::MatrixXd cov_matrix(const CovModel& m, const Design& d) {
    const int n = d.n();
    if (n == 0) throw ConfigError("cov_matrix: empty design");
    Eigen::MatrixXd sigma(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = cov_eval(m, d.points[i], d.points[j]);
            sigma(i, j) = v;
            sigma(j, i) = v;
        }
    }
    return sigma;
}

Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& sigma) {
    for (double jitter : {0.0, 1e-12, 1e-10}) {
        Eigen::MatrixXd a = sigma;
        if (jitter > 0.0) a.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw NumericalError("covariance matrix is not positive semidefinite (jitter exhausted)");
}

} // namespace kreg
