#include "kreg/tables.hpp"

#include <cmath>
#include <sstream>

#include "kreg/errors.hpp"
#include "kreg/estimators.hpp"

namespace kreg {

namespace {

// Bandwidth grids used for the reference risk tables (ten points spanning
// the published search interval; the published optimal bandwidths all lie on
// one of these two grids).
const std::vector<double> kGridA = {0.099, 0.143, 0.188, 0.233, 0.277,
                                    0.322, 0.366, 0.411, 0.455, 0.500};
const std::vector<double> kGridB = {0.090, 0.135, 0.181, 0.226, 0.272,
                                    0.317, 0.363, 0.408, 0.454, 0.500};

struct RefRiskRow {
    // GM then Trap reference values: Ibias2, Ivar, IMSE, h_opt.
    double gm[4];
    double trap[4];
};

struct RiskTableConfig {
    CovModel model;
    const std::vector<double>* h_grid;
    int m_label[3];
    int m_effective[3];
    RefRiskRow ref[3];
};

RiskTableConfig risk_table_config(int id) {
    switch (id) {
        case 1:
            return {CovModel::wiener(1.0), &kGridA,
                    {5, 15, 30}, {5, 15, 30},
                    {{{2.8832e-3, 8.4967e-2, 8.7850e-2, 0.411},
                      {2.8833e-3, 8.4959e-2, 8.7843e-2, 0.411}},
                     {{1.04816e-3, 2.9293e-2, 3.0341e-2, 0.322},
                      {1.04856e-3, 2.9276e-2, 3.0325e-2, 0.322}},
                     {{2.7691e-4, 1.5169e-2, 1.5446e-2, 0.233},
                      {2.8535e-4, 1.5124e-2, 1.5409e-2, 0.233}}}};
        case 2:
            return {CovModel::ou(1.0, 1.0), &kGridA,
                    {5, 15, 30}, {5, 15, 30},
                    {{{4.57002e-3, 1.70570e-1, 1.75140e-1, 0.46},
                      {4.57001e-3, 1.70565e-1, 1.75135e-1, 0.46}},
                     {{1.31050e-3, 5.8884e-2, 6.0194e-2, 0.34},
                      {1.30997e-3, 5.8857e-2, 6.0167e-2, 0.34}},
                     {{7.7889e-4, 2.9818e-2, 3.0597e-2, 0.30},
                      {7.7828e-4, 2.9791e-2, 3.0569e-2, 0.30}}}};
        case 3:
            return {CovModel::wiener(0.5), &kGridA,
                    {5, 15, 30}, {5, 15, 30},
                    {{{1.0481e-3, 4.3939e-2, 4.4988e-2, 0.322},
                      {1.0485e-3, 4.3915e-2, 4.4963e-2, 0.322}},
                     {{2.7691e-4, 1.5169e-2, 1.5446e-2, 0.233},
                      {2.8535e-4, 1.5124e-2, 1.5409e-2, 0.233}},
                     {{1.1792e-4, 7.7228e-3, 7.8407e-3, 0.188},
                      {1.4175e-4, 7.6733e-3, 7.8150e-3, 0.188}}}};
        case 4:
            return {CovModel::ou(1.0, 25.0), &kGridA,
                    {5, 15, 30}, {5, 15, 30},
                    {{{4.3931e-3, 2.7163e-2, 3.1556e-2, 0.455},
                      {4.3930e-3, 2.7165e-2, 3.1558e-2, 0.455}},
                     {{1.7942e-3, 1.2819e-2, 1.4613e-2, 0.366},
                      {1.7935e-3, 1.2824e-2, 1.4618e-2, 0.366}},
                     {{1.0481e-3, 7.0808e-3, 8.1290e-3, 0.322},
                      {1.0485e-3, 7.0855e-3, 8.1341e-3, 0.322}}}};
        case 5:
            // The published rows here only match replicate counts 5, 6, 7;
            // the row labels are kept as published.
            return {CovModel::wiener(0.06), &kGridB,
                    {5, 15, 30}, {5, 6, 7},
                    {{{9.9714e-5, 5.5781e-3, 5.6778e-3, 0.181},
                      {1.2841e-4, 5.5373e-3, 5.6657e-3, 0.181}},
                     {{9.9714e-5, 4.6484e-3, 4.7481e-3, 0.181},
                      {1.2841e-4, 4.6145e-3, 4.7429e-3, 0.181}},
                     {{9.9714e-4, 3.9844e-3, 4.0841e-3, 0.181}, // Ibias2 likely a typo
                      {1.2841e-4, 3.9552e-3, 4.0836e-3, 0.181}}}};
        case 6:
            // Published rows match replicate counts 6, 7, 8.
            return {CovModel::ou(1.0, 50.0), &kGridB,
                    {5, 15, 30}, {6, 7, 8},
                    {{{4.3496e-3, 1.9905e-2, 2.4255e-2, 0.454},
                      {4.3494e-3, 1.9907e-2, 2.4257e-2, 0.454}},
                     {{2.8194e-3, 1.8049e-2, 2.0868e-2, 0.408},
                      {2.8192e-3, 1.8053e-2, 2.0872e-2, 0.408}},
                     {{2.8194e-3, 1.5470e-2, 1.8290e-2, 0.408},
                      {2.8192e-3, 1.5474e-2, 1.8293e-2, 0.408}}}};
        default:
            throw ConfigError("risk_table_config: table id out of range");
    }
}

struct RefReductionRow {
    double unif, opt, rimse, opt_hat, rimse_hat, lambda_hat;
};

struct ReductionTableConfig {
    int n;
    RefReductionRow ref[4]; // rows m = 5, 10, 20, 30
};

ReductionTableConfig reduction_table_config(int id) {
    switch (id) {
        case 7:
            return {5,
                    {{0.3661, 0.3138, 14.28, 0.3167, 13.50, 5.15},
                     {0.3537, 0.2988, 15.54, 0.2992, 15.41, 4.09},
                     {0.3475, 0.2912, 16.20, 0.2928, 15.74, 4.40},
                     {0.3454, 0.2887, 16.42, 0.2844, 17.67, 3.45}}};
        case 8:
            return {10,
                    {{0.1969, 0.1771, 10.06, 0.1822, 7.50, 5.06},
                     {0.1674, 0.1494, 10.79, 0.1487, 11.19, 3.91},
                     {0.1527, 0.1355, 11.26, 0.1305, 14.54, 3.21},
                     {0.1477, 0.1309, 11.43, 0.1346, 8.87, 4.50}}};
        case 9:
            return {20,
                    {{0.1699, 0.1487, 12.52, 0.1457, 14.26, 4.35},
                     {0.1274, 0.1096, 12.14, 0.1106, 11.34, 3.82},
                     {0.1022, 0.0901, 11.86, 0.0885, 13.39, 4.34},
                     {0.0947, 0.0836, 11.73, 0.0839, 11.31, 3.90}}};
        case 10:
            return {30,
                    {{0.1682, 0.1488, 11.56, 0.1434, 14.78, 4.46},
                     {0.1201, 0.1056, 12.09, 0.0973, 19.03, 4.86},
                     {0.0961, 0.0840, 12.57, 0.0861, 10.40, 3.69},
                     {0.0881, 0.0768, 12.78, 0.7586, 13.88, 4.14}}}; // 0.7586: magnitude
                                                                     // outlier as published
        default:
            throw ConfigError("reduction_table_config: table id out of range");
    }
}

RiskTableRow make_risk_row(const RiskTableConfig& cfg, int row, bool gm) {
    RiskSpec spec;
    spec.estimator = gm ? EstimatorKind::GasserMuller : EstimatorKind::TrapezoidFlat;
    spec.design = midpoint_design(20);
    spec.f = DensitySpec::uniform();
    spec.model = cfg.model;
    spec.m = cfg.m_effective[row];
    const BandwidthSearch bs = optimal_bandwidth_grid(spec, *cfg.h_grid);
    const RiskReport* at_opt = nullptr;
    for (const auto& rep : bs.reports) {
        if (rep.h == bs.h_opt) at_opt = &rep;
    }

    RiskTableRow out;
    out.estimator = gm ? "GM" : "Trap";
    out.m_label = cfg.m_label[row];
    out.m_effective = cfg.m_effective[row];
    out.h_opt = bs.h_opt;
    out.Ibias2 = at_opt->Ibias2;
    out.Ivar = at_opt->Ivar;
    out.IMSE = at_opt->IMSE;
    const double* ref = gm ? cfg.ref[row].gm : cfg.ref[row].trap;
    out.ref_Ibias2 = ref[0];
    out.ref_Ivar = ref[1];
    out.ref_IMSE = ref[2];
    out.ref_h_opt = ref[3];
    out.imse_rel_dev = (out.IMSE - out.ref_IMSE) / out.ref_IMSE;
    return out;
}

} // namespace

TableResult repro_table(int table_id, std::uint64_t seed) {
    TableResult result;
    result.table_id = table_id;
    if (table_id >= 1 && table_id <= 6) {
        const RiskTableConfig cfg = risk_table_config(table_id);
        for (int row = 0; row < 3; ++row) {
            result.risk_rows.push_back(make_risk_row(cfg, row, true));
            result.risk_rows.push_back(make_risk_row(cfg, row, false));
        }
        return result;
    }
    if (table_id >= 7 && table_id <= 10) {
        const ReductionTableConfig cfg = reduction_table_config(table_id);
        const CovModel truth = CovModel::gen_ou(0.5, 4.0, 0.5);
        const int ms[4] = {5, 10, 20, 30};
        for (int row = 0; row < 4; ++row) {
            ReductionTableRow r;
            r.m = ms[row];
            const std::uint64_t cell_seed =
                SplitMix64(seed, static_cast<std::uint64_t>(table_id) * 100 + row)
                    .next_u64();
            r.computed = plugin_design_experiment(cfg.n, ms[row], truth, 0.123,
                                                  cell_seed);
            r.ref_unif = cfg.ref[row].unif;
            r.ref_opt = cfg.ref[row].opt;
            r.ref_rimse = cfg.ref[row].rimse;
            r.ref_opt_hat = cfg.ref[row].opt_hat;
            r.ref_rimse_hat = cfg.ref[row].rimse_hat;
            r.ref_lambda_hat = cfg.ref[row].lambda_hat;
            result.reduction_rows.push_back(r);
        }
        return result;
    }
    throw ConfigError("repro_table: table id must lie in 1..10");
}

std::string table_to_csv(const TableResult& t) {
    std::ostringstream out;
    out.precision(10);
    if (!t.risk_rows.empty()) {
        out << "estimator,m,m_effective,h_opt,Ibias2,Ivar,IMSE,"
               "ref_Ibias2,ref_Ivar,ref_IMSE,ref_h_opt,imse_rel_dev\n";
        for (const auto& r : t.risk_rows) {
            out << r.estimator << ',' << r.m_label << ',' << r.m_effective << ','
                << r.h_opt << ',' << r.Ibias2 << ',' << r.Ivar << ',' << r.IMSE
                << ',' << r.ref_Ibias2 << ',' << r.ref_Ivar << ',' << r.ref_IMSE
                << ',' << r.ref_h_opt << ',' << r.imse_rel_dev << "\n";
        }
    } else {
        out << "m,IMSE_unif,IMSE_opt,rIMSE_lambda,IMSE_opt_hat,rIMSE_lambda_hat,"
               "lambda_hat,ref_unif,ref_opt,ref_rIMSE,ref_opt_hat,ref_rIMSE_hat,"
               "ref_lambda_hat\n";
        for (const auto& r : t.reduction_rows) {
            out << r.m << ',' << r.computed.imse_unif << ',' << r.computed.imse_opt
                << ',' << r.computed.rimse_lambda << ',' << r.computed.imse_opt_hat
                << ',' << r.computed.rimse_lambda_hat << ',' << r.computed.lambda_hat
                << ',' << r.ref_unif << ',' << r.ref_opt << ',' << r.ref_rimse << ','
                << r.ref_opt_hat << ',' << r.ref_rimse_hat << ','
                << r.ref_lambda_hat << "\n";
        }
    }
    return out.str();
}

MeanCurve mean_curve_experiment(const CovModel& model, int n, int m, double h,
                                int curves, std::uint64_t seed,
                                EstimatorKind kind, int grid_points) {
    const Design d = midpoint_design(n);
    const DensitySpec f = DensitySpec::uniform();
    const Kernel k(KernelFamily::Quadratic);
    const RegressionFunction g = RegressionFunction::cubic_growth();
    const std::vector<double> grid = interior_grid(grid_points);

    MeanCurve mc;
    mc.x = grid;
    mc.mean_ghat.assign(grid.size(), 0.0);
    mc.g_true.reserve(grid.size());
    for (double x : grid) mc.g_true.push_back(g.eval(x));

    for (int c = 0; c < curves; ++c) {
        const std::uint64_t sub = SplitMix64(seed, static_cast<std::uint64_t>(c)).next_u64();
        SampleSet s = simulate(model, d, g, m, sub);
        const auto curve = estimate_curve(s, grid, h, kind, f, k,
                                          BoundaryMode::RenormalizedTruncation);
        for (size_t i = 0; i < curve.size(); ++i) {
            if (curve[i].missing) {
                throw EmptyWindowError("mean_curve_experiment: empty window at x=" +
                                       std::to_string(curve[i].x));
            }
            mc.mean_ghat[i] += curve[i].ghat;
        }
    }
    for (auto& v : mc.mean_ghat) v /= curves;
    for (size_t i = 0; i < mc.x.size(); ++i) {
        mc.max_abs_dev = std::max(mc.max_abs_dev, std::abs(mc.mean_ghat[i] - mc.g_true[i]));
    }
    return mc;
}

} // namespace kreg
