#pragma once

#include <string>
#include <vector>

namespace kreg {

enum class KernelFamily { Quadratic, Triweight, UserTabulated };

// Moment constants of a kernel: B = int t^2 K, V = int K^2,
// C_K = double integral |u-v| K(u) K(v).
struct KernelConstants {
    double B = 0.0;
    double V = 0.0;
    double C_K = 0.0;
};

// Symmetric smoothing kernel supported on [-1, 1]. UserTabulated kernels are
// polynomials in u^2 (even by construction); the named families are
// Quadratic (15/16)(1-u^2)^2 and Triweight (35/32)(1-u^2)^3.
class Kernel {
  public:
    explicit Kernel(KernelFamily family, std::vector<double> coeffs_u2 = {});

    // Parse "quadratic" | "triweight".
    static Kernel from_name(const std::string& name);

    KernelFamily family() const { return family_; }

    // K(u); exactly 0 for |u| > 1.
    double eval(double u) const;

    // int_a^b K(u) du with limits clamped to [-1, 1].
    double cdf_integral(double a, double b) const;

    // Cached constants (computed at construction with `quad_points` Simpson
    // panels; analytic values used for the named families).
    const KernelConstants& constants() const { return constants_; }

    // Quadrature-only evaluation of the constants (the analytic and
    // quadrature paths must agree; exposed for testing).
    KernelConstants constants_by_quadrature(int quad_points) const;

  private:
    KernelFamily family_;
    std::vector<double> coeffs_u2_; // c0 + c1 u^2 + c2 u^4 + ...
    KernelConstants constants_;
};

double eval_kernel(const Kernel& k, double u);
KernelConstants kernel_constants(const Kernel& k, int quad_points);
double kernel_cdf_integral(const Kernel& k, double a, double b);

// phi_{x,h}(t) = (1/h) K((x - t)/h); zero outside [x-h, x+h].
double phi(double x, double h, double t, const Kernel& k);

} // namespace kreg
