#include "kreg/estimators.hpp"

#include <cmath>

#include "kreg/errors.hpp"

namespace kreg {

WeightVector trap_weights(const Design& d, const DensitySpec& f, double x,
                          double h, const Kernel& k, EstimatorKind kind) {
    if (h <= 0.0 || h >= 1.0) throw ConfigError("trap_weights: h must lie in (0,1)");
    if (kind == EstimatorKind::GasserMuller) {
        throw ConfigError("trap_weights: use gm_weights for the Gasser-Muller estimator");
    }
    const int n = d.n();
    const WindowIndices win = window_points(d, x, h);
    // The trapezoid-rule form needs two points; the flat-window variant is
    // well defined for a single point.
    const int min_points = (kind == EstimatorKind::Trapezoid) ? 2 : 1;
    if (win.count < min_points) {
        throw EmptyWindowError("trapezoid window at x=" + std::to_string(x) +
                               " holds " + std::to_string(win.count) +
                               " design points (need >= " +
                               std::to_string(min_points) + ")");
    }
    WeightVector wv;
    wv.x = x;
    wv.h = h;
    wv.estimator = kind;
    wv.weights = Eigen::VectorXd::Zero(n);
    for (int i = win.first; i <= win.last; ++i) {
        const double t = d.points[i];
        double w = phi(x, h, t, k) / (n * f.eval(t));
        if (kind == EstimatorKind::Trapezoid && (i == win.first || i == win.last)) {
            w *= 0.5;
        }
        wv.weights(i) = w;
    }
    return wv;
}

WeightVector gm_weights(const Design& d, double x, double h, const Kernel& k) {
    if (h <= 0.0 || h >= 1.0) throw ConfigError("gm_weights: h must lie in (0,1)");
    const int n = d.n();
    WeightVector wv;
    wv.x = x;
    wv.h = h;
    wv.estimator = EstimatorKind::GasserMuller;
    wv.weights = Eigen::VectorXd::Zero(n);
    double m_prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m_next = (i + 1 < n) ? 0.5 * (d.points[i] + d.points[i + 1]) : 1.0;
        // weight_i = int_{m_prev}^{m_next} phi_{x,h} = int K over the mapped cell
        const double a = (x - m_next) / h;
        const double b = (x - m_prev) / h;
        if (b > -1.0 && a < 1.0) {
            wv.weights(i) = k.cdf_integral(a, b);
        }
        m_prev = m_next;
    }
    return wv;
}

WeightVector boundary_correct(WeightVector wv) {
    wv.boundary_mode = BoundaryMode::RenormalizedTruncation;
    const bool edge = wv.x < wv.h || wv.x > 1.0 - wv.h;
    if (!edge) return wv;
    const double mass = wv.weights.sum();
    if (mass <= 1e-14) {
        throw ZeroMassError("boundary_correct: weight mass " + std::to_string(mass) +
                            " at x=" + std::to_string(wv.x));
    }
    wv.weights /= mass;
    return wv;
}

std::vector<CurvePoint> estimate_curve(const SampleSet& s,
                                       const std::vector<double>& grid,
                                       double h, EstimatorKind kind,
                                       const DensitySpec& f, const Kernel& k,
                                       BoundaryMode boundary) {
    const Eigen::VectorXd yb = ybar(s);
    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (double x : grid) {
        CurvePoint p;
        p.x = x;
        p.boundary = x < h || x > 1.0 - h;
        try {
            WeightVector wv = (kind == EstimatorKind::GasserMuller)
                                  ? gm_weights(s.design, x, h, k)
                                  : trap_weights(s.design, f, x, h, k, kind);
            if (boundary == BoundaryMode::RenormalizedTruncation) {
                wv = boundary_correct(std::move(wv));
            }
            p.ghat = wv.weights.dot(yb);
            p.n_window = window_points(s.design, x, h).count;
        } catch (const EmptyWindowError&) {
            p.missing = true;
        }
        curve.push_back(p);
    }
    return curve;
}

} // namespace kreg
