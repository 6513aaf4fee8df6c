#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "kreg/covariance.hpp"
#include "kreg/gp_sim.hpp"

namespace kreg {

// R-hat(t_i,t_j) = (1/(m-1)) sum_k (Y_k(t_i) - Ybar(t_i))(Y_k(t_j) - Ybar(t_j)).
Eigen::MatrixXd empirical_cov(const SampleSet& s);

// Q = (1/n^2) sum_ij (R-hat_ij - R_ij)^2 for a GeneralizedOU candidate.
double q_criterion(const Eigen::MatrixXd& rhat, const CovModel& model,
                   const Design& d);

// Simulated-annealing search box over (sigma2, lambda, rho).
struct FitBox {
    double lo[3] = {1e-4, 0.1, 0.01};
    double hi[3] = {10.0, 10.0, 0.99};
};

struct FitSchedule {
    int stages = 200;        // temperature stages
    int proposals = 50;      // proposals per stage
    double cooling = 0.97;   // T_k = T_0 * cooling^k
    double step_frac = 0.05; // proposal sd = step_frac * (hi - lo)
};

struct FitResult {
    double sigma2_hat = 0.0;
    double lambda_hat = 0.0;
    double rho_hat = 0.0;
    double q_value = 0.0;
    long evaluations = 0;
    std::uint64_t seed = 0;
};

// Fit a GeneralizedOU covariance to an empirical covariance matrix by
// simulated annealing on the Q criterion. Deterministic given the seed;
// returns the best point ever visited.
FitResult anneal_fit_matrix(const Eigen::MatrixXd& rhat, const Design& d,
                            const FitBox& box, const FitSchedule& schedule,
                            std::uint64_t seed);

// Convenience: empirical_cov(s) then anneal_fit_matrix.
FitResult anneal_fit(const SampleSet& s, const FitBox& box,
                     const FitSchedule& schedule, std::uint64_t seed);

// Componentwise median of the fitted parameters; q_value recomputed against
// the reference sample's empirical covariance.
FitResult median_fit(const std::vector<FitResult>& fits, const SampleSet& reference);

// The plug-in optimal-design experiment: exact trapezoidal-estimator IMSE
// under the uniform design, the theoretical optimal design, and the optimal
// design built from the annealed median estimate of lambda.
struct ReductionReport {
    int n = 0;
    int m = 0;
    double imse_unif = 0.0;
    double imse_opt = 0.0;
    double rimse_lambda = 0.0;     // percent
    double imse_opt_hat = 0.0;
    double rimse_lambda_hat = 0.0; // percent
    double lambda_hat = 0.0;
};

struct PluginOptions {
    int fits = 100;            // independent fit replications
    FitBox box;
    FitSchedule schedule;
    int x_grid_points = 101;   // interior x-grid for the exact IMSE
};

ReductionReport plugin_design_experiment(int n, int m, const CovModel& true_model,
                                         double h, std::uint64_t seed,
                                         const PluginOptions& opt = {});

} // namespace kreg
