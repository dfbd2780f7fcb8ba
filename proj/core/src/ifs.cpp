#include "eahdim/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eahdim/errors.hpp"

namespace eahdim {

IfsSpec IfsSpec::similarity(std::vector<double> ratios) {
    if (ratios.size() < 2)
        throw input_error("similarity IFS needs alphabet size S >= 2");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0))
            throw input_error("similarity ratio outside (0,1): " + std::to_string(r));
    IfsSpec spec;
    spec.log_ratios_.reserve(ratios.size());
    for (double r : ratios) spec.log_ratios_.push_back(std::log(r));
    spec.kind_ = SimilarityIfs{std::move(ratios)};
    return spec;
}

IfsSpec IfsSpec::conformal_oracle(int alphabet_size,
                                  std::function<double(const Word&)> word_log_norm,
                                  double distortion_log_k) {
    if (alphabet_size < 2)
        throw input_error("conformal oracle needs alphabet size S >= 2");
    if (!word_log_norm)
        throw input_error("conformal oracle needs a word_log_norm callback");
    if (distortion_log_k < 0.0)
        throw input_error("distortion_log_K must be >= 0");
    IfsSpec spec;
    spec.kind_ = ConformalOracleIfs{alphabet_size, std::move(word_log_norm), distortion_log_k};
    return spec;
}

int IfsSpec::alphabet_size() const {
    if (is_similarity()) return static_cast<int>(std::get<SimilarityIfs>(kind_).ratios.size());
    return std::get<ConformalOracleIfs>(kind_).alphabet_size;
}

const std::vector<double>& IfsSpec::ratios() const {
    if (!is_similarity()) throw input_error("operation requires a similarity IFS");
    return std::get<SimilarityIfs>(kind_).ratios;
}

const std::vector<double>& IfsSpec::log_ratios() const {
    if (!is_similarity()) throw input_error("operation requires a similarity IFS");
    return log_ratios_;
}

double IfsSpec::log_f_min() const {
    const auto& lr = log_ratios();
    return *std::min_element(lr.begin(), lr.end());
}

double IfsSpec::log_f_max() const {
    const auto& lr = log_ratios();
    return *std::max_element(lr.begin(), lr.end());
}

double IfsSpec::distortion_log_k() const {
    if (is_similarity()) return 0.0;
    return std::get<ConformalOracleIfs>(kind_).distortion_log_k;
}

double IfsSpec::oracle_log_norm(const Word& w) const {
    if (is_similarity()) {
        double acc = 0.0;
        for (Letter c : w) acc += log_ratios_[static_cast<std::size_t>(c - 1)];
        return acc;
    }
    return std::get<ConformalOracleIfs>(kind_).word_log_norm(w);
}

IfsSpec as_conformal_oracle(const IfsSpec& sim, double declared_log_k) {
    std::vector<double> log_ratios = sim.log_ratios();
    auto norm = [log_ratios](const Word& w) {
        double acc = 0.0;
        for (Letter c : w) acc += log_ratios[static_cast<std::size_t>(c - 1)];
        return acc;
    };
    return IfsSpec::conformal_oracle(sim.alphabet_size(), norm, declared_log_k);
}

double log_deriv_norm(const IfsSpec& ifs, const Word& w) {
    const int S = ifs.alphabet_size();
    for (Letter c : w)
        if (c < 1 || c > S)
            throw input_error("word letter out of range 1.." + std::to_string(S));
    if (w.empty()) return 0.0;
    return ifs.oracle_log_norm(w);
}

double pressure(const IfsSpec& ifs, double s) {
    if (s < 0.0) throw input_error("pressure requires s >= 0");
    const auto& lr = ifs.log_ratios();
    double sum = 0.0;
    for (double l : lr) sum += std::exp(s * l);
    return std::log(sum);
}

double pressure_derivative(const IfsSpec& ifs, double s) {
    if (s < 0.0) throw input_error("pressure_derivative requires s >= 0");
    const auto& lr = ifs.log_ratios();
    double num = 0.0, den = 0.0;
    for (double l : lr) {
        const double w = std::exp(s * l);
        num += w * l;
        den += w;
    }
    return num / den;
}

namespace {

// Bisection for a strictly decreasing f with f(lo) > 0 > f(hi). Stops when
// |f(mid)| <= abs_tol; runs out of representable midpoints otherwise.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         const PressureSolverConfig& cfg, const char* what) {
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (std::abs(fm) <= cfg.abs_tol) return mid;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // The interval may have collapsed onto the root even if |f| never dipped
    // under abs_tol; accept only a genuinely small residual.
    const double mid = 0.5 * (lo + hi);
    if (std::abs(f(mid)) <= cfg.abs_tol) return mid;
    throw numeric_error(std::string(what) + ": bisection did not converge");
}

double find_upper_bracket(const std::function<double(double)>& f, const PressureSolverConfig& cfg,
                          const char* what) {
    double hi = cfg.s_upper_seed;
    for (int k = 0; k < 200; ++k) {
        if (f(hi) < 0.0) return hi;
        hi *= 2.0;
    }
    throw numeric_error(std::string(what) + ": no sign change while doubling the upper bound");
}

} // namespace

std::pair<double, double> pressure_bracket(const IfsSpec& ifs, double s, std::int64_t n,
                                           std::uint64_t enum_cap) {
    if (ifs.is_similarity())
        throw input_error("pressure_bracket expects a conformal oracle; use pressure()");
    if (n < 1) throw input_error("pressure_bracket requires n >= 1");
    if (s < 0.0) throw input_error("pressure_bracket requires s >= 0");

    const int S = ifs.alphabet_size();
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < n; ++i) {
        if (total > enum_cap / static_cast<std::uint64_t>(S))
            throw resource_error("pressure_bracket: S^n exceeds the enumeration cap");
        total *= static_cast<std::uint64_t>(S);
    }

    // online log-sum-exp over all S^n words, odometer order
    Word w(static_cast<std::size_t>(n), 1);
    double mx = -std::numeric_limits<double>::infinity();
    long double acc = 0.0L;
    while (true) {
        const double x = s * log_deriv_norm(ifs, w);
        if (x <= mx) {
            acc += expl(static_cast<long double>(x - mx));
        } else {
            acc = acc * expl(static_cast<long double>(mx - x)) + 1.0L;
            mx = x;
        }
        // increment odometer
        std::int64_t pos = n - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(pos)] == S) {
            w[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++w[static_cast<std::size_t>(pos)];
    }
    const double a_n = mx + static_cast<double>(logl(acc));
    const double upper = a_n / static_cast<double>(n);
    const double lower = upper - 2.0 * s * ifs.distortion_log_k() / static_cast<double>(n);
    return {lower, upper};
}

double dim_attractor(const IfsSpec& ifs, const PressureSolverConfig& cfg) {
    auto f = [&](double s) { return pressure(ifs, s); };
    if (std::abs(f(0.0)) <= cfg.abs_tol) return 0.0;
    const double hi = find_upper_bracket(f, cfg, "dim_attractor");
    return bisect_decreasing(f, 0.0, hi, cfg, "dim_attractor");
}

double pressure_linear_root(const IfsSpec& ifs, double slope_g, const PressureSolverConfig& cfg) {
    if (!(slope_g > 0.0)) throw input_error("pressure_linear_root requires slope_g > 0");
    auto f = [&](double s) { return pressure(ifs, s) - slope_g * s; };
    const double hi = find_upper_bracket(f, cfg, "pressure_linear_root");
    return bisect_decreasing(f, 0.0, hi, cfg, "pressure_linear_root");
}

} // namespace eahdim
