#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kreg/covfit.hpp"
#include "kreg/risk.hpp"

namespace kreg {

// One row of a regenerated risk table (tables 1-6): optimal bandwidth and the
// exact risk decomposition at that bandwidth, next to the reference values.
struct RiskTableRow {
    std::string estimator; // "GM" | "Trap"
    int m_label = 0;       // the row label
    int m_effective = 0;   // the replicate count the pipeline actually uses
    double h_opt = 0.0;
    double Ibias2 = 0.0;
    double Ivar = 0.0;
    double IMSE = 0.0;
    double ref_Ibias2 = 0.0;
    double ref_Ivar = 0.0;
    double ref_IMSE = 0.0;
    double ref_h_opt = 0.0;
    double imse_rel_dev = 0.0; // (IMSE - ref) / ref
};

// One row of a regenerated design-reduction table (tables 7-10).
struct ReductionTableRow {
    int m = 0;
    ReductionReport computed;
    double ref_unif = 0.0;
    double ref_opt = 0.0;
    double ref_rimse = 0.0;     // percent
    double ref_opt_hat = 0.0;
    double ref_rimse_hat = 0.0; // percent
    double ref_lambda_hat = 0.0;
};

struct TableResult {
    int table_id = 0;
    std::vector<RiskTableRow> risk_rows;           // tables 1-6
    std::vector<ReductionTableRow> reduction_rows; // tables 7-10
};

// Regenerate one of the ten reference tables with its settings baked in.
// Tables 1-6 are deterministic (exact risk); 7-10 are stochastic via the
// annealed covariance fits.
TableResult repro_table(int table_id, std::uint64_t seed = 20268);

// Serialize a table result as CSV (column layout documented in the README).
std::string table_to_csv(const TableResult& t);

// Mean-of-curves experiment (the qualitative figure): average of `curves`
// simulated estimator curves against the true regression function.
struct MeanCurve {
    std::vector<double> x;
    std::vector<double> mean_ghat;
    std::vector<double> g_true;
    double max_abs_dev = 0.0;
};
MeanCurve mean_curve_experiment(const CovModel& model, int n, int m, double h,
                                int curves, std::uint64_t seed,
                                EstimatorKind kind = EstimatorKind::GasserMuller,
                                int grid_points = 99);

} // namespace kreg
