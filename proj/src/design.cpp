#include "kreg/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kreg/errors.hpp"

namespace kreg {

namespace {

double cdf_of(const RealFn& f, double t) {
    if (t <= 0.0) return 0.0;
    // Tanh-sinh tolerates densities with endpoint singular derivatives
    // (e.g. the power optimal densities t^((lambda-1)/3)).
    return tanh_sinh(f, 0.0, std::min(t, 1.0), 1e-14);
}

void validate_density(DensitySpec& spec) {
    const int grid = 10000;
    double inf_f = std::numeric_limits<double>::infinity();
    double sup_f = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double v = spec.eval(static_cast<double>(i) / grid);
        inf_f = std::min(inf_f, v);
        sup_f = std::max(sup_f, v);
    }
    if (!(inf_f > 0.0) || !std::isfinite(sup_f)) {
        throw InvalidDensityError("density must be positive and bounded on [0,1]");
    }
    const double mass = cdf_of(spec.eval, 1.0);
    if (!std::isfinite(mass) || std::abs(mass - 1.0) > 1e-8) {
        throw InvalidDensityError("density does not integrate to 1 (mass=" +
                                  std::to_string(mass) + ")");
    }
    spec.inf_f = inf_f;
    spec.sup_f = sup_f;
}

} // namespace

DensitySpec DensitySpec::uniform() {
    DensitySpec s;
    s.eval = [](double) { return 1.0; };
    s.cdf_inverse = [](double u) { return u; };
    s.inf_f = 1.0;
    s.sup_f = 1.0;
    return s;
}

DensitySpec DensitySpec::optimal_power(double lambda) {
    if (lambda < 1.0) throw InvalidDensityError("optimal_power requires lambda >= 1");
    DensitySpec s;
    const double expo = (lambda - 1.0) / 3.0;
    const double c = (lambda + 2.0) / 3.0;
    s.eval = [expo, c](double t) { return c * std::pow(t, expo); };
    s.cdf_inverse = [lambda](double u) { return std::pow(u, 3.0 / (lambda + 2.0)); };
    s.inf_f = lambda == 1.0 ? c : 0.0; // vanishes at 0 for lambda > 1
    s.sup_f = c;
    return s;
}

DensitySpec DensitySpec::validated(RealFn f) {
    DensitySpec s;
    s.eval = std::move(f);
    validate_density(s);
    return s;
}

Design regular_design(const DensitySpec& f, int n) {
    if (n < 2) throw ConfigError("regular_design: n must be >= 2");
    Design d;
    d.provenance = DesignProvenance::RegularFromDensity;
    d.points.reserve(n);
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        double t;
        if (f.cdf_inverse) {
            t = (*f.cdf_inverse)(u);
        } else {
            // Bisection on the numeric CDF: monotone and derivative-free.
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (cdf_of(f.eval, mid) < u) lo = mid;
                else hi = mid;
                if (std::abs(cdf_of(f.eval, 0.5 * (lo + hi)) - u) <= 1e-12) break;
            }
            t = 0.5 * (lo + hi);
        }
        d.points.push_back(std::min(t, 1.0));
    }
    return d;
}

Design midpoint_design(int n) {
    if (n < 1) throw ConfigError("midpoint_design: n must be >= 1");
    Design d;
    d.provenance = DesignProvenance::Midpoint;
    d.points.reserve(n);
    for (int i = 1; i <= n; ++i) {
        d.points.push_back((i - 0.5) / n);
    }
    return d;
}

DensitySpec optimal_design_density(const RealFn& alpha, const RealFn& w) {
    auto root = [alpha, w](double t) { return std::cbrt(alpha(t) * w(t)); };
    const double z = tanh_sinh(root, 0.0, 1.0, 1e-12);
    if (!std::isfinite(z) || z <= 0.0) {
        throw InvalidDensityError("optimal design density normalizer is not finite/positive");
    }
    DensitySpec s;
    s.eval = [root, z](double t) { return root(t) / z; };
    double inf_f = std::numeric_limits<double>::infinity(), sup_f = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double v = s.eval(static_cast<double>(i) / 10000);
        inf_f = std::min(inf_f, v);
        sup_f = std::max(sup_f, v);
    }
    s.inf_f = inf_f;
    s.sup_f = sup_f;
    return s;
}

WindowIndices window_points(const Design& d, double x, double h) {
    if (h <= 0.0 || h >= 1.0) throw ConfigError("window_points: h must lie in (0,1)");
    WindowIndices w;
    const auto lo = std::lower_bound(d.points.begin(), d.points.end(), x - h);
    const auto hi = std::upper_bound(d.points.begin(), d.points.end(), x + h);
    w.first = static_cast<int>(lo - d.points.begin());
    w.last = static_cast<int>(hi - d.points.begin()) - 1;
    w.count = std::max(0, w.last - w.first + 1);
    return w;
}

} // namespace kreg
