// Experiment CLI for the kernel-regression-under-correlated-errors library.
//
// Subcommands: estimate, risk, bandwidth-search, optimal, fit-cov, repro-table.
// Configuration is a JSON document (see README.md for the schema); flags
// override config fields. Exit codes: 0 ok, 2 config error, 3 numerical
// error, 4 degenerate input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "kreg/covfit.hpp"
#include "kreg/errors.hpp"
#include "kreg/estimators.hpp"
#include "kreg/risk.hpp"
#include "kreg/tables.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw kreg::ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw kreg::ConfigError(std::string("config parse error: ") + e.what());
    }
}

void write_output(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw kreg::ConfigError("cannot open output file: " + opts.out_path);
    out << text;
}

kreg::CovModel model_from(const json& cfg) {
    const json c = cfg.value("covariance", json::object());
    return kreg::CovModel::from_name(c.value("family", "wiener"),
                                     c.value("sigma2", 1.0),
                                     c.value("lambda", 1.0),
                                     c.value("rho", 0.5));
}

kreg::EstimatorKind estimator_from(const json& cfg) {
    const std::string name = cfg.value("estimator", "gm");
    if (name == "gm") return kreg::EstimatorKind::GasserMuller;
    if (name == "trap") return kreg::EstimatorKind::Trapezoid;
    if (name == "trap-flat") return kreg::EstimatorKind::TrapezoidFlat;
    throw kreg::ConfigError("unknown estimator: " + name +
                            " (expected gm | trap | trap-flat)");
}

struct DesignAndDensity {
    kreg::Design design;
    kreg::DensitySpec density = kreg::DensitySpec::uniform();
};

DesignAndDensity design_from(const json& cfg, int n) {
    const json d = cfg.value("design", json::object());
    const std::string type = d.value("type", "midpoint");
    DesignAndDensity out;
    if (type == "midpoint") {
        out.design = kreg::midpoint_design(n);
    } else if (type == "uniform") {
        out.design = kreg::regular_design(out.density, n);
    } else if (type == "optimal-power") {
        const double lambda = d.value("lambda", 4.0);
        out.density = kreg::DensitySpec::optimal_power(lambda);
        out.design = kreg::regular_design(out.density, n);
        out.design.provenance = kreg::DesignProvenance::OptimalPower;
        out.design.power_lambda = lambda;
    } else {
        throw kreg::ConfigError("unknown design type: " + type);
    }
    return out;
}

double bandwidth_from(const json& cfg) {
    if (!cfg.contains("h")) throw kreg::ConfigError("config field 'h' is required");
    const double h = cfg["h"].get<double>();
    if (h <= 0.0 || h >= 1.0) throw kreg::ConfigError("bandwidth h must lie in (0,1)");
    return h;
}

kreg::RiskSpec risk_spec_from(const json& cfg) {
    kreg::RiskSpec spec;
    spec.estimator = estimator_from(cfg);
    const int n = cfg.value("n", 20);
    auto dd = design_from(cfg, n);
    spec.design = std::move(dd.design);
    spec.f = std::move(dd.density);
    spec.kernel = kreg::Kernel::from_name(cfg.value("kernel", "quadratic"));
    spec.model = model_from(cfg);
    spec.m = cfg.value("m", 5);
    spec.x_grid = kreg::interior_grid(cfg.value("x_grid", 201));
    spec.boundary = cfg.value("boundary", "renorm") == std::string("none")
                        ? kreg::BoundaryMode::None
                        : kreg::BoundaryMode::RenormalizedTruncation;
    spec.max_skip_fraction = cfg.value("max_skip_fraction", 0.05);
    if (spec.m < 1) throw kreg::ConfigError("m must be >= 1");
    return spec;
}

std::string risk_report_csv(const kreg::RiskSpec& spec, const kreg::RiskReport& rep,
                            const json& cfg, bool opt_flag) {
    std::ostringstream out;
    out.precision(10);
    out << cfg.value("estimator", "gm") << ','
        << cfg.value("covariance", json::object()).value("family", "wiener") << ','
        << rep.n << ',' << rep.m << ',' << rep.h << ',' << rep.Ibias2 << ','
        << rep.Ivar << ',' << rep.IMSE << ',' << (opt_flag ? 1 : 0) << "\n";
    return out.str();
}

int cmd_estimate(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    const kreg::RiskSpec spec = risk_spec_from(cfg);
    const int curves = cfg.value("curves", 100);
    const std::uint64_t seed = opts.seed.value_or(cfg.value("seed", 1ULL));
    const double h = bandwidth_from(cfg);
    const auto mc = kreg::mean_curve_experiment(spec.model, spec.design.n(), spec.m,
                                                h, curves, seed, spec.estimator,
                                                cfg.value("x_grid", 99));
    std::ostringstream out;
    out.precision(10);
    out << "x,mean_ghat,g\n";
    for (size_t i = 0; i < mc.x.size(); ++i) {
        out << mc.x[i] << ',' << mc.mean_ghat[i] << ',' << mc.g_true[i] << "\n";
    }
    write_output(opts, out.str());
    return 0;
}

int cmd_risk(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    const kreg::RiskSpec spec = risk_spec_from(cfg);
    const kreg::RiskReport rep = kreg::exact_imse(spec, bandwidth_from(cfg));
    write_output(opts, "estimator,model,n,m,h,Ibias2,Ivar,IMSE,h_opt_flag\n" +
                           risk_report_csv(spec, rep, cfg, false));
    return 0;
}

int cmd_bandwidth_search(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    const kreg::RiskSpec spec = risk_spec_from(cfg);
    std::vector<double> grid;
    if (cfg.contains("h_list")) {
        grid = cfg["h_list"].get<std::vector<double>>();
    } else {
        const json g = cfg.value("h_grid", json::object());
        grid = kreg::bandwidth_grid(g.value("min", 0.09), g.value("max", 0.5),
                                    g.value("step", 0.001));
    }
    const kreg::BandwidthSearch bs = kreg::optimal_bandwidth_grid(spec, grid);
    std::string out = "estimator,model,n,m,h,Ibias2,Ivar,IMSE,h_opt_flag\n";
    for (const auto& rep : bs.reports) {
        out += risk_report_csv(spec, rep, cfg, rep.h == bs.h_opt);
    }
    write_output(opts, out);
    return 0;
}

int cmd_optimal(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    const kreg::CovModel model = model_from(cfg);
    const kreg::Kernel k = kreg::Kernel::from_name(cfg.value("kernel", "quadratic"));
    const kreg::RegressionFunction g = kreg::RegressionFunction::cubic_growth();
    const int n = cfg.value("n", 20);
    const int m = cfg.value("m", 5);
    auto alpha = [&model](double t) { return kreg::jump_alpha(model, t); };
    auto w = [](double) { return 1.0; };

    const double h_star = kreg::asymptotic_optimal_bandwidth(model, k, g, w, m);
    const kreg::DensitySpec f_star = kreg::optimal_design_density(alpha, w);
    const double rimse = kreg::asymptotic_rimse(alpha, w);
    kreg::Design d_star;
    if (model.family == kreg::CovFamily::GeneralizedOU) {
        d_star = kreg::regular_design(kreg::DensitySpec::optimal_power(model.lambda), n);
    } else {
        d_star = kreg::regular_design(f_star, n);
    }

    std::ostringstream out;
    out.precision(10);
    out << "h_star," << h_star << "\n";
    out << "asymptotic_rimse," << rimse << "\n";
    out << "f_star_density,(alpha*w)^(1/3) normalized\n";
    out << "t_star";
    for (double t : d_star.points) out << ',' << t;
    out << "\n";
    write_output(opts, out.str());
    return 0;
}

int cmd_fit_cov(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    if (!cfg.contains("samples")) {
        throw kreg::ConfigError("fit-cov needs a 'samples' CSV path in the config");
    }
    const kreg::SampleSet s = kreg::sampleset_from_csv(cfg["samples"].get<std::string>());
    kreg::FitBox box;
    kreg::FitSchedule schedule;
    const json sa = cfg.value("anneal", json::object());
    schedule.stages = sa.value("stages", schedule.stages);
    schedule.proposals = sa.value("proposals", schedule.proposals);
    schedule.cooling = sa.value("cooling", schedule.cooling);
    schedule.step_frac = sa.value("step_frac", schedule.step_frac);
    const std::uint64_t seed = opts.seed.value_or(cfg.value("seed", 1ULL));
    const kreg::FitResult fit = kreg::anneal_fit(s, box, schedule, seed);
    std::ostringstream out;
    out.precision(10);
    out << "seed,sigma2_hat,lambda_hat,rho_hat,q_value,evaluations\n"
        << fit.seed << ',' << fit.sigma2_hat << ',' << fit.lambda_hat << ','
        << fit.rho_hat << ',' << fit.q_value << ',' << fit.evaluations << "\n";
    write_output(opts, out.str());
    return 0;
}

int cmd_repro_table(const CommonOpts& opts, int table_id) {
    const json cfg = load_config(opts.config_path);
    const std::uint64_t seed = opts.seed.value_or(cfg.value("seed", 20268ULL));
    const kreg::TableResult t = kreg::repro_table(table_id, seed);
    write_output(opts, kreg::table_to_csv(t));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel regression under correlated errors: experiment runner"};
    app.require_subcommand(1);

    CommonOpts opts;
    int table_id = 1;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;
    for (auto* sub : {app.add_subcommand("estimate", "mean-of-curves experiment"),
                      app.add_subcommand("risk", "exact IMSE at one bandwidth"),
                      app.add_subcommand("bandwidth-search", "exact IMSE over a bandwidth grid"),
                      app.add_subcommand("optimal", "asymptotic optimal bandwidth/design report"),
                      app.add_subcommand("fit-cov", "annealed covariance fit from a sample CSV"),
                      app.add_subcommand("repro-table", "regenerate a reference table")}) {
        sub->add_option("--config", opts.config_path, "JSON config path");
        sub->add_option("--out", opts.out_path, "output CSV path (default stdout)");
        sub->add_option("--seed", seed_flag, "master seed override")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->add_option("--threads", opts.threads, "worker threads (reserved)");
        if (std::string(sub->get_name()) == "repro-table") {
            sub->add_option("--table", table_id, "table id in 1..10")->required();
        }
    }

    CLI11_PARSE(app, argc, argv);
    if (seed_set) opts.seed = seed_flag;

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "estimate") return cmd_estimate(opts);
        if (cmd == "risk") return cmd_risk(opts);
        if (cmd == "bandwidth-search") return cmd_bandwidth_search(opts);
        if (cmd == "optimal") return cmd_optimal(opts);
        if (cmd == "fit-cov") return cmd_fit_cov(opts);
        if (cmd == "repro-table") return cmd_repro_table(opts, table_id);
        throw kreg::ConfigError("unknown subcommand: " + cmd);
    } catch (const kreg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kreg::InvalidDensityError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kreg::DegenerateCurvatureError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 4;
    } catch (const kreg::DomainError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
