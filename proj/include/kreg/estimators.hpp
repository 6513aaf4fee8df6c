#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kreg/design.hpp"
#include "kreg/gp_sim.hpp"
#include "kreg/kernels.hpp"

namespace kreg {

enum class EstimatorKind {
    Trapezoid,     // trapezoid-rule weights: window-endpoint points halved
    TrapezoidFlat, // same but without halving (flat window weights)
    GasserMuller
};

enum class BoundaryMode { None, RenormalizedTruncation };

// Linear-smoother weights over a design for one evaluation point.
struct WeightVector {
    double x = 0.0;
    double h = 0.0;
    Eigen::VectorXd weights;
    EstimatorKind estimator = EstimatorKind::Trapezoid;
    BoundaryMode boundary_mode = BoundaryMode::None;
};

// Trapezoidal estimator weights: window point t_k gets phi(t_k)/(n f(t_k)),
// halved at the two window endpoints for EstimatorKind::Trapezoid. Throws
// EmptyWindowError when the window holds fewer than two design points
// (fewer than one for TrapezoidFlat, which needs no endpoint pair).
WeightVector trap_weights(const Design& d, const DensitySpec& f, double x,
                          double h, const Kernel& k,
                          EstimatorKind kind = EstimatorKind::Trapezoid);

// Gasser-Muller weights: kernel mass over midpoint cells (m_0 = 0, m_n = 1).
WeightVector gm_weights(const Design& d, double x, double h, const Kernel& k);

// Renormalized truncation at the edges: for x in [0,h) or (1-h,1] divide the
// weights by their sum; identity for interior x. Throws ZeroMassError when
// the sum is below 1e-14.
WeightVector boundary_correct(WeightVector wv);

// One point of an estimated curve; empty-window points are flagged missing.
struct CurvePoint {
    double x = 0.0;
    double ghat = 0.0;
    int n_window = 0;
    bool boundary = false;
    bool missing = false;
};

std::vector<CurvePoint> estimate_curve(const SampleSet& s,
                                       const std::vector<double>& grid,
                                       double h, EstimatorKind kind,
                                       const DensitySpec& f, const Kernel& k,
                                       BoundaryMode boundary = BoundaryMode::RenormalizedTruncation);

} // namespace kreg
