#include "kreg/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "kreg/errors.hpp"
#include "kreg/quadrature.hpp"

namespace kreg {

namespace {

// Expand the kernel as a polynomial in u (even powers only).
std::vector<double> even_poly_coeffs(KernelFamily family,
                                     const std::vector<double>& coeffs_u2) {
    switch (family) {
        case KernelFamily::Quadratic:
            // (15/16)(1 - u^2)^2 = 15/16 - (30/16) u^2 + (15/16) u^4
            return {15.0 / 16.0, -30.0 / 16.0, 15.0 / 16.0};
        case KernelFamily::Triweight:
            // (35/32)(1 - u^2)^3
            return {35.0 / 32.0, -105.0 / 32.0, 105.0 / 32.0, -35.0 / 32.0};
        case KernelFamily::UserTabulated:
            return coeffs_u2;
    }
    throw std::logic_error("unreachable kernel family");
}

double eval_even_poly(const std::vector<double>& c, double u) {
    const double u2 = u * u;
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u2 + *it;
    return v;
}

// int_0^x of the even polynomial: sum c_j x^(2j+1) / (2j+1).
double even_poly_antideriv(const std::vector<double>& c, double x) {
    double v = 0.0;
    const double x2 = x * x;
    double xp = x;
    for (size_t j = 0; j < c.size(); ++j) {
        v += c[j] * xp / static_cast<double>(2 * j + 1);
        xp *= x2;
    }
    return v;
}

} // namespace

Kernel::Kernel(KernelFamily family, std::vector<double> coeffs_u2)
    : family_(family), coeffs_u2_(even_poly_coeffs(family, coeffs_u2)) {
    // Normalization check (quadrature, per the construction contract).
    const double mass = simpson([this](double u) { return eval(u); }, -1.0, 1.0, 4096);
    if (std::abs(mass - 1.0) > 1e-10) {
        throw ConfigError("kernel does not integrate to 1 on [-1,1] (mass=" +
                          std::to_string(mass) + ")");
    }
    if (family_ == KernelFamily::Quadratic) {
        constants_ = {1.0 / 7.0, 5.0 / 7.0, 0.0};
        constants_.C_K = constants_by_quadrature(2048).C_K;
    } else if (family_ == KernelFamily::Triweight) {
        // V = (35/32)^2 int (1-u^2)^6 = (35/32)^2 * 2048/3003 = 350/429
        constants_ = {1.0 / 9.0, 350.0 / 429.0, 0.0};
        constants_.C_K = constants_by_quadrature(2048).C_K;
    } else {
        constants_ = constants_by_quadrature(2048);
    }
    if (constants_.B <= 0.0 || constants_.V <= 0.0 || constants_.C_K <= 0.0 ||
        constants_.C_K > 2.0) {
        throw ConfigError("kernel constants out of range");
    }
}

Kernel Kernel::from_name(const std::string& name) {
    if (name == "quadratic") return Kernel(KernelFamily::Quadratic);
    if (name == "triweight") return Kernel(KernelFamily::Triweight);
    throw ConfigError("unknown kernel: " + name);
}

double Kernel::eval(double u) const {
    if (std::abs(u) > 1.0) return 0.0;
    return eval_even_poly(coeffs_u2_, u);
}

double Kernel::cdf_integral(double a, double b) const {
    if (a > b) throw std::invalid_argument("kernel_cdf_integral: a > b");
    a = std::max(a, -1.0);
    b = std::min(b, 1.0);
    if (a >= b) return 0.0;
    if (family_ == KernelFamily::UserTabulated) {
        // Quadrature fallback; the named families use the closed form below.
        return simpson([this](double u) { return eval(u); }, a, b, 512);
    }
    return even_poly_antideriv(coeffs_u2_, b) - even_poly_antideriv(coeffs_u2_, a);
}

KernelConstants Kernel::constants_by_quadrature(int quad_points) const {
    if (quad_points < 64) quad_points = 64;
    KernelConstants c;
    c.B = simpson([this](double t) { return t * t * eval(t); }, -1.0, 1.0, quad_points);
    c.V = simpson([this](double t) { return eval(t) * eval(t); }, -1.0, 1.0, quad_points);
    c.C_K = simpson(
        [this, quad_points](double u) {
            return simpson(
                [this, u](double v) { return std::abs(u - v) * eval(u) * eval(v); },
                -1.0, 1.0, quad_points);
        },
        -1.0, 1.0, quad_points);
    return c;
}

double eval_kernel(const Kernel& k, double u) { return k.eval(u); }

KernelConstants kernel_constants(const Kernel& k, int quad_points) {
    // Named families carry exact analytic B, V; recompute on demand so the
    // caller's quad_points choice is honored for tabulated kernels.
    if (k.family() == KernelFamily::UserTabulated) {
        return k.constants_by_quadrature(quad_points);
    }
    return k.constants();
}

double kernel_cdf_integral(const Kernel& k, double a, double b) {
    return k.cdf_integral(a, b);
}

double phi(double x, double h, double t, const Kernel& k) {
    if (h <= 0.0) throw std::invalid_argument("phi: bandwidth must be positive");
    return k.eval((x - t) / h) / h;
}

} // namespace kreg
