#include "eahdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "eahdim/errors.hpp"

namespace eahdim {

namespace {

constexpr std::int64_t kMaxPrefixLen = std::int64_t{1} << 26;

// Segment lengths of the concatenated word: floor(vM/theta^j) for j = p..0,
// then floor(theta*v*M). Zero-length segments are dropped.
std::vector<std::int64_t> concat_segment_lengths(double theta, double v, std::int64_t M) {
    const double vM = v * static_cast<double>(M);
    int p = 0;
    if (vM >= 1.0)
        while (vM / std::pow(theta, p + 1) >= 1.0) ++p;
    std::vector<std::int64_t> lens;
    lens.reserve(static_cast<std::size_t>(p) + 2);
    for (int j = p; j >= 0; --j) {
        const auto len = static_cast<std::int64_t>(std::floor(vM / std::pow(theta, j)));
        if (len >= 1) lens.push_back(len);
    }
    const auto last = static_cast<std::int64_t>(std::floor(theta * vM));
    if (last >= 1) lens.push_back(last);
    return lens;
}

void check_concat_args(double theta, double v, std::int64_t M) {
    if (!(theta > 1.0)) throw input_error("theta must exceed 1");
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (!(static_cast<double>(M) * theta * v >= 1.0 - 1e-12))
        throw input_error("M below 1/(theta*v)");
}

// Lazily extended prefix sums of log r_{t_i}; turns every segment norm into
// one array lookup for similarity systems.
class PrefixLogSums {
public:
    PrefixLogSums(const IfsSpec& ifs, const TargetSpec& t) : ifs_(&ifs), t_(&t) {
        sums_.push_back(0.0);
    }

    double upto(std::int64_t len) {
        if (len > kMaxPrefixLen) throw resource_error("target prefix cache limit exceeded");
        const int S = ifs_->alphabet_size();
        const auto& lr = ifs_->log_ratios();
        while (static_cast<std::int64_t>(sums_.size()) <= len) {
            const auto i = static_cast<std::int64_t>(sums_.size());
            const Letter c = t_->digit(i);
            if (c < 1 || c > S)
                throw input_error("target letter " + std::to_string(c) + " outside 1.." +
                                  std::to_string(S));
            sums_.push_back(sums_.back() + lr[static_cast<std::size_t>(c - 1)]);
        }
        return sums_[static_cast<std::size_t>(len)];
    }

private:
    const IfsSpec* ifs_;
    const TargetSpec* t_;
    std::vector<double> sums_;
};

// log||f'_{G(M)}|| for either kind; similarity goes through the prefix cache.
class ConcatNorms {
public:
    ConcatNorms(const IfsSpec& ifs, const TargetSpec& t) : ifs_(&ifs), t_(&t) {
        if (ifs.is_similarity()) sums_.emplace(ifs, t);
    }

    double log_norm(double theta, double v, std::int64_t M) {
        const auto lens = concat_segment_lengths(theta, v, M);
        if (sums_) {
            double acc = 0.0;
            for (auto len : lens) acc += sums_->upto(len);
            return acc;
        }
        Word w;
        std::int64_t total = 0;
        for (auto len : lens) total += len;
        w.reserve(static_cast<std::size_t>(total));
        for (auto len : lens)
            for (std::int64_t i = 1; i <= len; ++i) w.push_back(t_->digit(i));
        return ifs_->oracle_log_norm(w);
    }

private:
    const IfsSpec* ifs_;
    const TargetSpec* t_;
    std::optional<PrefixLogSums> sums_;
};

OmegaEstimate sample_omega(ConcatNorms& norms, double theta, double v, std::int64_t M_lo,
                           std::int64_t M_hi, std::int64_t stride) {
    if (stride < 1) throw input_error("stride must be >= 1");
    if (!(M_lo < M_hi)) throw input_error("M_lo must be below M_hi");
    check_concat_args(theta, v, M_lo);

    OmegaEstimate est;
    est.M_lo = M_lo;
    est.M_hi = M_hi;
    est.stride = stride;
    for (std::int64_t M = M_lo; M <= M_hi; M += stride)
        est.samples.emplace_back(M, norms.log_norm(theta, v, M) / static_cast<double>(M));

    const double mid = 0.5 * static_cast<double>(M_lo + M_hi);
    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& [M, val] : est.samples) {
        if (static_cast<double>(M) < mid) continue;
        mx = std::max(mx, val);
        mn = std::min(mn, val);
    }
    est.omega_plus = mx;
    est.omega_minus = mn;
    return est;
}

// (omega_minus, omega_plus) as a function of theta, exact when available.
struct OmegaProvider {
    std::function<std::pair<double, double>(double)> omega;
    bool exact = false;
};

OmegaProvider make_omega_provider(const IfsSpec& ifs, const TargetSpec& t, double v,
                                  const ThetaSearchConfig& cfg) {
    OmegaProvider p;
    if (ifs.is_similarity() && t.period()) {
        p.exact = true;
        const IfsSpec* ifsp = &ifs;
        const TargetSpec* tp = &t;
        p.omega = [ifsp, tp, v](double theta) {
            const OmegaEstimate e = omega_exact_periodic(*ifsp, *tp, theta, v);
            return std::make_pair(e.omega_minus, e.omega_plus);
        };
    } else {
        p.exact = false;
        auto norms = std::make_shared<ConcatNorms>(ifs, t);
        const std::int64_t M_lo = cfg.M_lo, M_hi = cfg.M_hi, stride = cfg.stride;
        p.omega = [norms, v, M_lo, M_hi, stride](double theta) {
            const OmegaEstimate e = sample_omega(*norms, theta, v, M_lo, M_hi, stride);
            return std::make_pair(e.omega_minus, e.omega_plus);
        };
    }
    return p;
}

template <typename F>
double golden_max(F&& f, double a, double b, double tol, double* best_value) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double x = fc > fd ? c : d;
    if (best_value) *best_value = std::max(fc, fd);
    return x;
}

struct ScanResult {
    std::vector<ThetaGridPoint> grid;
    double shat_plus = 0.0, theta_star_plus = 0.0;
    double shat_minus = 0.0, theta_star_minus = 0.0;
    bool cond5 = false;
    bool exact = false;
};

ScanResult scan_theta(const IfsSpec& ifs, const TargetSpec& t, double v,
                      const ThetaSearchConfig& cfg) {
    if (!(v > 0.0 && v < 1.0)) throw input_error("theta scan needs v in (0,1)");
    const OmegaProvider provider = make_omega_provider(ifs, t, v, cfg);

    const double theta_c = 1.0 / (1.0 - v);
    const double theta_lo = theta_c + 1e-9 * (1.0 + theta_c);

    struct Eval {
        double om_minus, om_plus, s_plus, s_minus;
    };
    auto eval = [&](double theta) -> Eval {
        const auto [om, op] = provider.omega(theta);
        return {om, op, solve_s(ifs, op, theta, v, cfg.solver),
                solve_s(ifs, om, theta, v, cfg.solver)};
    };

    // grow the upper end until both roots have decayed well below their best
    double theta_max = std::max(4.0 / (1.0 - v), 2.0 * theta_lo);
    double best_p = 0.0, best_m = 0.0;
    {
        const Eval mid = eval(std::min(2.0 / (1.0 - v), theta_max));
        best_p = mid.s_plus;
        best_m = mid.s_minus;
        int doublings = 0;
        for (;; ++doublings) {
            if (doublings > 60)
                throw numeric_error("theta_max search: roots failed to decay");
            const Eval e = eval(theta_max);
            best_p = std::max(best_p, e.s_plus);
            best_m = std::max(best_m, e.s_minus);
            if (e.s_plus < cfg.decay * best_p && e.s_minus < cfg.decay * best_m) break;
            theta_max *= 2.0;
        }
    }

    ScanResult res;
    res.exact = provider.exact;

    const int N = std::max(cfg.coarse_points, 8);
    std::vector<double> thetas(static_cast<std::size_t>(N));
    const double la = std::log(theta_lo), lb = std::log(theta_max);
    for (int i = 0; i < N; ++i)
        thetas[static_cast<std::size_t>(i)] =
            std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(N - 1));

    std::size_t arg_p = 0, arg_m = 0;
    double rel_gap = 0.0;
    std::vector<Eval> evals;
    evals.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const Eval e = eval(thetas[i]);
        evals.push_back(e);
        res.grid.push_back({thetas[i], e.s_plus, e.s_minus});
        if (e.s_plus > evals[arg_p].s_plus) arg_p = i;
        if (e.s_minus > evals[arg_m].s_minus) arg_m = i;
        if (e.om_minus != 0.0)
            rel_gap = std::max(rel_gap, std::abs(e.om_plus - e.om_minus) / std::abs(e.om_minus));
    }

    auto refine = [&](std::size_t arg, bool plus, double* out_best) {
        const double a = thetas[arg == 0 ? 0 : arg - 1];
        const double b = thetas[std::min(thetas.size() - 1, arg + 1)];
        auto f = [&](double theta) {
            const Eval e = eval(theta);
            return plus ? e.s_plus : e.s_minus;
        };
        return golden_max(f, a, b, cfg.theta_tol, out_best);
    };
    res.theta_star_plus = refine(arg_p, true, &res.shat_plus);
    res.theta_star_minus = refine(arg_m, false, &res.shat_minus);
    res.shat_plus = std::max(res.shat_plus, evals[arg_p].s_plus);
    res.shat_minus = std::max(res.shat_minus, evals[arg_m].s_minus);

    // exact providers satisfy the coincidence condition by construction;
    // sampled ones carry O(1/M) floor noise, hence the looser gate
    res.cond5 = provider.exact ? true : rel_gap <= 1e-2;
    return res;
}

} // namespace

Word concat_target_prefixes(const TargetSpec& t, double theta, double v, std::int64_t M) {
    check_concat_args(theta, v, M);
    const auto lens = concat_segment_lengths(theta, v, M);
    std::int64_t total = 0;
    for (auto len : lens) total += len;
    if (total > kMaxPrefixLen) throw resource_error("G word too long to materialize");
    Word w;
    w.reserve(static_cast<std::size_t>(total));
    for (auto len : lens)
        for (std::int64_t i = 1; i <= len; ++i) w.push_back(t.digit(i));
    return w;
}

OmegaEstimate omega_estimate(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                             std::int64_t M_lo, std::int64_t M_hi, std::int64_t stride) {
    ConcatNorms norms(ifs, t);
    return sample_omega(norms, theta, v, M_lo, M_hi, stride);
}

OmegaEstimate omega_exact_periodic(const IfsSpec& ifs, const TargetSpec& t, double theta,
                                   double v) {
    if (!ifs.is_similarity())
        throw input_error("omega_exact_periodic needs a similarity IFS");
    const auto q = t.period();
    if (!q) throw input_error("omega_exact_periodic needs a periodic target");
    if (!(theta > 1.0)) throw input_error("theta must exceed 1");
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");

    const auto& lr = ifs.log_ratios();
    const int S = ifs.alphabet_size();
    double cbar = 0.0;
    for (std::int64_t i = 1; i <= *q; ++i) {
        const Letter c = t.digit(i);
        if (c < 1 || c > S) throw input_error("target letter outside alphabet");
        cbar += lr[static_cast<std::size_t>(c - 1)];
    }
    cbar /= static_cast<double>(*q);

    OmegaEstimate est;
    est.exact = true;
    est.omega_plus = est.omega_minus = cbar * v * theta * theta / (theta - 1.0);
    return est;
}

double solve_s(const IfsSpec& ifs, double omega, double theta, double v,
               const PressureSolverConfig& cfg) {
    if (!(omega < 0.0)) throw input_error("omega must be negative");
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (!(theta > 1.0 / (1.0 - v))) throw input_error("theta must exceed 1/(1-v)");
    const double slope = (theta - 1.0) / (theta - theta * v - 1.0) * (-omega);
    return pressure_linear_root(ifs, slope, cfg);
}

SHatResult s_hat(const IfsSpec& ifs, const TargetSpec& t, double v, BoundSign sign,
                 const ThetaSearchConfig& cfg) {
    const ScanResult scan = scan_theta(ifs, t, v, cfg);
    if (sign == BoundSign::Plus) return {scan.shat_plus, scan.theta_star_plus};
    return {scan.shat_minus, scan.theta_star_minus};
}

DimensionReport omega_bounds(const IfsSpec& ifs, const TargetSpec& t, double v,
                             const ThetaSearchConfig& cfg) {
    if (!(v >= 0.0 && v <= 1.0))
        throw input_error("omega_bounds needs v in [0,1]; route other rates to classify_case");

    DimensionReport rep;
    rep.dim_lambda = dim_attractor(ifs, cfg.solver);
    rep.case_tag = CaseTag::Range01;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (v == 0.0) {
        rep.s_hat_plus = rep.s_hat_minus = rep.dim_lambda;
        rep.omega_plus_bound = rep.omega_minus_bound = rep.dim_lambda;
        rep.theta_star_plus = rep.theta_star_minus = nan;
        rep.condition5_holds = true;
        return rep;
    }
    if (v == 1.0) {
        rep.s_hat_plus = rep.s_hat_minus = 0.0;
        rep.omega_plus_bound = rep.omega_minus_bound = 0.0;
        rep.theta_star_plus = rep.theta_star_minus = nan;
        rep.condition5_holds = true;
        return rep;
    }

    const ScanResult scan = scan_theta(ifs, t, v, cfg);
    rep.theta_grid = scan.grid;
    rep.s_hat_plus = scan.shat_plus;
    rep.s_hat_minus = scan.shat_minus;
    rep.theta_star_plus = scan.theta_star_plus;
    rep.theta_star_minus = scan.theta_star_minus;
    rep.omega_plus_bound = std::max(0.0, std::min(scan.shat_plus, rep.dim_lambda));
    rep.omega_minus_bound = std::max(0.0, std::min(scan.shat_minus, rep.dim_lambda));
    rep.condition5_holds = scan.cond5;
    return rep;
}

CaseTag classify_case(double v) {
    if (std::isnan(v) || v < 0.0) throw input_error("window rate must be >= 0");
    if (std::isinf(v)) return CaseTag::Countable;
    if (v <= 1.0) return CaseTag::Range01;
    return CaseTag::Empty;
}

bool rate_pair_empty(double v, double theta) {
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (!(theta > 0.0)) throw input_error("theta must be positive");
    return theta < 1.0 / (1.0 - v);
}

double solve_s_bar(const IfsSpec& ifs, const TargetSpec& t, double theta, double v, double delta,
                   const ThetaSearchConfig& cfg) {
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (delta < 0.0) throw input_error("delta must be >= 0");
    if (!(theta >= 1.0 / (1.0 - v))) throw input_error("theta must be >= 1/(1-v)");
    const double coeff = ((theta + delta) * (1.0 - v) - 1.0) / (theta + delta - 1.0);
    if (!(coeff > 0.0)) throw input_error("(theta+delta)(1-v)-1 must be positive");

    const OmegaProvider provider = make_omega_provider(ifs, t, v, cfg);
    const double om_plus = provider.omega(theta).second;
    const double perturbed =
        om_plus + (-ifs.log_f_min()) * delta * (1.0 + v / ((theta - 1.0) * (theta - 1.0)));
    if (!(perturbed < 0.0))
        throw numeric_error("solve_s_bar: perturbed rate lost its sign; delta too large");
    return pressure_linear_root(ifs, (-perturbed) / coeff, cfg.solver);
}

GapBoundReport gap_bound_check(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                               const std::vector<double>& deltas, const ThetaSearchConfig& cfg) {
    GapBoundReport rep;
    rep.theta = theta;
    rep.v = v;
    rep.delta_hat = theta - 1.0 / (1.0 - v);
    if (!(rep.delta_hat > 0.0)) throw input_error("theta must exceed 1/(1-v)");

    const OmegaProvider provider = make_omega_provider(ifs, t, v, cfg);
    const double om_plus = provider.omega(theta).second;
    rep.s_plus = solve_s(ifs, om_plus, theta, v, cfg.solver);
    rep.dim_lambda = dim_attractor(ifs, cfg.solver);
    const double p_deriv = pressure_derivative(ifs, rep.dim_lambda);
    rep.C = 12.0 * (-ifs.log_f_min()) * rep.dim_lambda /
            ((1.0 - v) * (-p_deriv)) / rep.delta_hat;

    for (double delta : deltas) {
        GapCheckEntry e;
        e.delta = delta;
        e.s_bar = solve_s_bar(ifs, t, theta, v, delta, cfg);
        e.gap = e.s_bar - rep.s_plus;
        e.bound = rep.C * delta;
        e.pass = e.gap >= -1e-12 && e.gap <= e.bound + 1e-12;
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(e);
    }
    return rep;
}

double upper_bound_exponent(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                            double delta, double epsilon, double s, std::int64_t N, int k_star,
                            int k_prime) {
    if (!ifs.is_similarity()) throw input_error("upper_bound_exponent needs a similarity IFS");
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (!(epsilon >= 0.0 && epsilon < v)) throw input_error("epsilon must lie in [0, v)");
    if (delta < 0.0) throw input_error("delta must be >= 0");
    if (!(theta + delta > 1.0)) throw input_error("theta+delta must exceed 1");
    if (s < 0.0) throw input_error("s must be >= 0");
    if (N < 1) throw input_error("N must be >= 1");
    if (k_star < k_prime) throw input_error("k_star must be >= k_prime");

    const double td = theta + delta;
    const double eps_prime = epsilon * ((td * td + 1.0) / ((td - 1.0) * (td - 1.0)) + 1.0);
    const auto reserved = static_cast<std::int64_t>(
        std::floor(static_cast<double>(N) * (td * v / (td - 1.0) - eps_prime)));
    const std::int64_t t_free = N - reserved;
    if (t_free < 0) throw input_error("negative free-letter count");

    const double rho = (v - epsilon) / (td * v + epsilon);
    PrefixLogSums sums(ifs, t);
    double log_norm = 0.0;
    for (int i = k_star - k_prime; i >= 0; --i) {
        const auto len = static_cast<std::int64_t>(
            std::floor(std::pow(rho, i) * (v - epsilon) * static_cast<double>(N))) - 1;
        if (len >= 1) log_norm += sums.upto(len);
    }
    const auto tail = static_cast<std::int64_t>(
        std::floor(((theta - delta) * v - epsilon) * static_cast<double>(N)));
    if (tail >= 1) log_norm += sums.upto(tail);

    return s * log_norm / static_cast<double>(N) +
           static_cast<double>(t_free) / static_cast<double>(N) * pressure(ifs, s);
}

} // namespace eahdim
