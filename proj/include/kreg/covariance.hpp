#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace kreg {

struct Design; // design.hpp

enum class CovFamily {
    Wiener,            // R(s,t) = sigma2 * min(s,t)
    OrnsteinUhlenbeck, // R(s,t) = sigma2 * exp(-lambda |s-t|)
    GeneralizedOU,     // R(s,t) = sigma2 * rho^(|s^lambda - t^lambda| / lambda)
    ScaledWiener,      // R(s,t) = sigma2 * s t min(s,t)
    Zero               // R == 0 (noise-free test family)
};

// Parametric autocovariance model on [0,1]^2.
struct CovModel {
    CovFamily family = CovFamily::Wiener;
    double sigma2 = 1.0;
    double lambda = 1.0; // OU rate / GeneralizedOU exponent
    double rho = 0.5;    // GeneralizedOU base, in (0,1)

    static CovModel wiener(double sigma2);
    static CovModel ou(double sigma2, double lambda);
    static CovModel gen_ou(double sigma2, double lambda, double rho);
    static CovModel scaled_wiener(double sigma2 = 1.0);
    static CovModel zero();

    // Parse family name "wiener" | "ou" | "gen-ou" | "scaled-wiener" | "zero".
    static CovModel from_name(const std::string& family, double sigma2,
                              double lambda, double rho);

    std::string name() const;
};

// R(s,t) for s,t in [0,1].
double cov_eval(const CovModel& m, double s, double t);

// Diagonal jump function alpha(t) > 0 for t in (0,1].
double jump_alpha(const CovModel& m, double t);

// Sigma_ij = R(t_i, t_j) over the design points.
Eigen::MatrixXd cov_matrix(const CovModel& m, const Design& d);

// Lower Cholesky factor of cov_matrix with diagonal jitter escalation
// 0 -> 1e-12 -> 1e-10; throws NumericalError if all attempts fail.
Eigen::MatrixXd cholesky_with_jitter(const Eigen::MatrixXd& sigma);

} // namespace kreg
