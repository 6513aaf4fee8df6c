#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "kreg/covariance.hpp"
#include "kreg/design.hpp"

namespace kreg {

enum class RegressionFamily { CubicGrowth, UserPolynomial };

// Regression function g on [0,1] with an analytic second derivative.
struct RegressionFunction {
    RegressionFamily family = RegressionFamily::CubicGrowth;
    std::vector<double> coeffs; // for UserPolynomial: c0 + c1 x + ...

    static RegressionFunction cubic_growth(); // g(x) = 10x^3 - 15x^4 + 6x^5
    static RegressionFunction polynomial(std::vector<double> coeffs);

    double eval(double x) const;
    double second_derivative(double x) const;
};

// m replicated observations of g + centered Gaussian error on a design.
struct SampleSet {
    Design design;
    Eigen::MatrixXd y; // m x n
    int m = 0;
    std::uint64_t seed = 0;
    CovModel model;
    RegressionFunction g;
};

// Counter-based deterministic RNG: a splitmix64 stream whose state is mixed
// from (seed, stream id). Independent streams let replicate rows be produced
// in any order without changing the output.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    SplitMix64(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_unit();      // uniform in (0,1)
    double next_gaussian();  // standard normal (Box-Muller, one draw per pair)
  private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Each row = g(t) + L z, L the jittered Cholesky factor, z iid standard
// normal from the row's own substream. Bit-reproducible from the seed.
SampleSet simulate(const CovModel& model, const Design& d,
                   const RegressionFunction& g, int m, std::uint64_t seed);

// Column means of y.
Eigen::VectorXd ybar(const SampleSet& s);

// CSV interchange: header row of design points, one row per replicate.
void sampleset_to_csv(const SampleSet& s, const std::string& path);
SampleSet sampleset_from_csv(const std::string& path);

} // namespace kreg
