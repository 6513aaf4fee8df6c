#include "kreg/gp_sim.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kreg/errors.hpp"

namespace kreg {

RegressionFunction RegressionFunction::cubic_growth() {
    RegressionFunction g;
    g.family = RegressionFamily::CubicGrowth;
    g.coeffs = {0.0, 0.0, 0.0, 10.0, -15.0, 6.0};
    return g;
}

RegressionFunction RegressionFunction::polynomial(std::vector<double> coeffs) {
    RegressionFunction g;
    g.family = RegressionFamily::UserPolynomial;
    g.coeffs = std::move(coeffs);
    return g;
}

double RegressionFunction::eval(double x) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

double RegressionFunction::second_derivative(double x) const {
    double v = 0.0;
    for (size_t j = coeffs.size(); j-- > 2;) {
        v = v * x + coeffs[j] * static_cast<double>(j) * static_cast<double>(j - 1);
    }
    return v;
}

namespace {
std::uint64_t splitmix_step(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream) : state(0) {
    // Mix seed and stream id into a well-separated initial state.
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix_step(s);
    s = stream ^ 0xd1b54a32d192ed03ULL;
    const std::uint64_t b = splitmix_step(s);
    state = a ^ (b + 0x9e3779b97f4a7c15ULL);
}

std::uint64_t SplitMix64::next_u64() { return splitmix_step(state); }

double SplitMix64::next_unit() {
    // 53-bit mantissa, strictly inside (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

SampleSet simulate(const CovModel& model, const Design& d,
                   const RegressionFunction& g, int m, std::uint64_t seed) {
    if (m < 1) throw ConfigError("simulate: m must be >= 1");
    const int n = d.n();
    Eigen::VectorXd gvec(n);
    for (int i = 0; i < n; ++i) gvec(i) = g.eval(d.points[i]);

    SampleSet s;
    s.design = d;
    s.m = m;
    s.seed = seed;
    s.model = model;
    s.g = g;
    s.y.resize(m, n);

    if (model.family == CovFamily::Zero) {
        for (int j = 0; j < m; ++j) s.y.row(j) = gvec.transpose();
        return s;
    }

    const Eigen::MatrixXd L = cholesky_with_jitter(cov_matrix(model, d));
    Eigen::VectorXd z(n);
    for (int j = 0; j < m; ++j) {
        SplitMix64 rng(seed, static_cast<std::uint64_t>(j));
        for (int i = 0; i < n; ++i) z(i) = rng.next_gaussian();
        s.y.row(j) = (gvec + L * z).transpose();
    }
    return s;
}

Eigen::VectorXd ybar(const SampleSet& s) { return s.y.colwise().mean(); }

void sampleset_to_csv(const SampleSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out.precision(17);
    for (int i = 0; i < s.design.n(); ++i) {
        out << (i ? "," : "") << s.design.points[i];
    }
    out << "\n";
    for (int j = 0; j < s.m; ++j) {
        for (int i = 0; i < s.design.n(); ++i) {
            out << (i ? "," : "") << s.y(j, i);
        }
        out << "\n";
    }
}

SampleSet sampleset_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open for reading: " + path);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw ConfigError("sample CSV needs a header and >= 1 replicate row");
    SampleSet s;
    s.design.points = rows[0];
    s.design.provenance = DesignProvenance::RegularFromDensity;
    s.m = static_cast<int>(rows.size()) - 1;
    s.y.resize(s.m, s.design.n());
    for (int j = 0; j < s.m; ++j) {
        if (static_cast<int>(rows[j + 1].size()) != s.design.n()) {
            throw ConfigError("sample CSV rows have inconsistent width");
        }
        for (int i = 0; i < s.design.n(); ++i) s.y(j, i) = rows[j + 1][i];
    }
    return s;
}

} // namespace kreg
