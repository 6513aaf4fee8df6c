#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kreg/quadrature.hpp"

namespace kreg {

enum class DesignProvenance { Uniform, Midpoint, RegularFromDensity, OptimalPower };

// Ordered sampling points in [0,1].
struct Design {
    std::vector<double> points; // strictly increasing
    DesignProvenance provenance = DesignProvenance::Uniform;
    double power_lambda = 0.0; // set for OptimalPower

    int n() const { return static_cast<int>(points.size()); }
};

// A positive generating density on [0,1] (Definition: regular designs are
// t_i = F^{-1}(i/n)). A closed-form inverse CDF may be supplied; otherwise
// the inverse is found by bisection on a numerically integrated CDF.
struct DensitySpec {
    RealFn eval;                          // f(t) > 0 on [0,1]
    std::optional<RealFn> cdf_inverse;    // closed form F^{-1}, if known
    double inf_f = 0.0;                   // validated bounds
    double sup_f = 0.0;

    static DensitySpec uniform();
    // f*_lambda(t) = ((lambda+2)/3) t^((lambda-1)/3), the power optimal
    // density; closed-form inverse F^{-1}(u) = u^(3/(lambda+2)).
    static DensitySpec optimal_power(double lambda);
    // Validate an arbitrary density (positivity on a 1e4-point grid,
    // unit mass within 1e-8) and attach numeric inversion.
    static DensitySpec validated(RealFn f);
};

// t_i = F^{-1}(i/n), i = 1..n.
Design regular_design(const DensitySpec& f, int n);

// t_i = (i - 0.5)/n, i = 1..n.
Design midpoint_design(int n);

// f*(t) = (alpha(t) w(t))^(1/3) / int (alpha w)^(1/3).
DensitySpec optimal_design_density(const RealFn& alpha, const RealFn& w);

// Contiguous index range [first, last] of design points inside [x-h, x+h];
// count == 0 means empty window (first/last undefined).
struct WindowIndices {
    int first = 0;
    int last = -1;
    int count = 0;
};
WindowIndices window_points(const Design& d, double x, double h);

} // namespace kreg
