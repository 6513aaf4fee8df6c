#pragma once

#include <functional>
#include <vector>

namespace kreg {

using RealFn = std::function<double(double)>;

// Composite Simpson rule with `panels` panels (rounded up to even).
double simpson(const RealFn& f, double a, double b, int panels);

// Composite trapezoid rule over an explicit (sorted) node/value grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

// Tanh-sinh (double-exponential) quadrature on (a, b). Handles integrands
// with endpoint derivative singularities such as t^(2/3). Converges the
// level refinement until successive estimates differ by less than tol.
double tanh_sinh(const RealFn& f, double a, double b, double tol = 1e-13);

} // namespace kreg
