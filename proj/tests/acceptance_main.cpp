// Acceptance suite: closed-form cross-checks and property gates, one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eahdim/dimension.hpp"
#include "eahdim/ifs.hpp"
#include "eahdim/match.hpp"
#include "eahdim/oracle.hpp"
#include "eahdim/target.hpp"

using namespace eahdim;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double seconds, double budget,
            const std::string& detail) {
    const bool in_budget = seconds < budget;
    const bool ok = pass && in_budget;
    if (!ok) ++g_failures;
    std::printf("%s  criterion %2d: %-34s  [%.2fs / %.0fs]  %s\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), seconds, budget, detail.c_str());
}

template <typename F>
void run(int number, const std::string& name, double budget, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, name, pass, seconds, budget, detail);
}

char buf[256];

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

// ---------------------------------------------------------------------------

bool c1_moran_roots(std::string& detail) {
    const double d1 = dim_attractor(IfsSpec::similarity({0.5, 0.25, 0.25}));
    const double d2 = dim_attractor(IfsSpec::similarity({1.0 / 3, 1.0 / 3}));
    const double expect2 = std::log(2.0) / std::log(3.0);
    detail = fmt("dims %.12f, %.12f", d1, d2);
    return std::abs(d1 - 1.0) <= 1e-10 && std::abs(d2 - expect2) <= 1e-10;
}

bool c2_homogeneous_law(std::string& detail) {
    const IfsSpec half = IfsSpec::similarity({0.5, 0.5});
    const TargetSpec ones = TargetSpec::periodic({1});
    double worst_s = 0.0, worst_theta = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double v = 0.1 * i;

        // independent oracle: ternary search on the algebraic s(theta)
        const auto algebraic = [v](double theta) {
            const double A = theta * (1.0 - v) - 1.0;
            return A / (A + theta * theta * v);
        };
        double lo = 1.0 / (1.0 - v) + 1e-9, hi = 64.0 / (1.0 - v);
        for (int it = 0; it < 300; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (algebraic(m1) < algebraic(m2))
                lo = m1;
            else
                hi = m2;
        }
        const double oracle_s = algebraic(0.5 * (lo + hi));
        const double closed = std::pow((1.0 - v) / (1.0 + v), 2.0);
        if (std::abs(oracle_s - closed) > 1e-9) {
            detail = "oracle disagrees with the closed form";
            return false;
        }

        const DimensionReport rep = omega_bounds(half, ones, v);
        worst_s = std::max({worst_s, std::abs(rep.s_hat_plus - closed),
                            std::abs(rep.s_hat_minus - closed)});
        worst_theta = std::max({worst_theta, std::abs(rep.theta_star_plus - 2.0 / (1.0 - v)),
                                std::abs(rep.theta_star_minus - 2.0 / (1.0 - v))});
        if (rep.omega_plus_bound != rep.omega_minus_bound || !rep.condition5_holds) {
            detail = fmt("bounds differ at v=%.1f", v);
            return false;
        }
    }
    detail = fmt("max |s_hat err| %.2e, max |theta* err| %.2e", worst_s, worst_theta);
    return worst_s <= 1e-6 && worst_theta <= 1e-4;
}

bool c3_omega_validation(std::string& detail) {
    std::mt19937_64 rng(20240915);
    std::uniform_real_distribution<double> ratio_dist(0.2, 0.6);
    std::uniform_real_distribution<double> theta_dist(2.0, 8.0);
    std::uniform_real_distribution<double> v_dist(0.2, 0.8);
    std::uniform_int_distribution<int> S_dist(2, 3);
    std::uniform_int_distribution<int> q_dist(1, 4);

    double worst = 0.0;
    for (int cfg = 0; cfg < 10; ++cfg) {
        const int S = S_dist(rng);
        std::vector<double> ratios;
        for (int i = 0; i < S; ++i) ratios.push_back(ratio_dist(rng));
        const IfsSpec ifs = IfsSpec::similarity(ratios);

        const int q = q_dist(rng);
        Word word;
        std::uniform_int_distribution<int> letter_dist(1, S);
        for (int i = 0; i < q; ++i) word.push_back(letter_dist(rng));
        const TargetSpec t = TargetSpec::periodic(word);

        const double theta = theta_dist(rng), v = v_dist(rng);
        const double exact = omega_exact_periodic(ifs, t, theta, v).omega_plus;
        const auto est = omega_estimate(ifs, t, theta, v, 1000, 100000, 97);
        const double tol = 1e-3 * std::abs(exact);
        if (exact < est.omega_minus - tol || exact > est.omega_plus + tol) {
            detail = fmt("config %d: exact %.6f outside [%.6f, %.6f]",
                         static_cast<double>(cfg), est.omega_minus, est.omega_plus);
            return false;
        }
        const double err = std::max(std::abs(exact - est.omega_minus),
                                    std::abs(exact - est.omega_plus)) /
                           std::abs(exact);
        worst = std::max(worst, err);
    }
    detail = fmt("worst relative spread %.2e", worst);
    return true;
}

bool c4_rate_inequality(std::string& detail) {
    const TargetSpec t = TargetSpec::periodic({1, 2});
    std::mt19937_64 rng(77001);
    std::uniform_real_distribution<double> v_dist(0.15, 0.6);
    std::uniform_real_distribution<double> extra_dist(0.1, 3.0);

    int checked = 0;
    double worst_margin = 1e9;
    for (int trial = 0; trial < 1000; ++trial) {
        const double v = v_dist(rng);
        const double theta = 1.0 / (1.0 - v) + extra_dist(rng);
        const auto lc = build_witness(t, theta, v, 10000, 2);
        const auto r = estimate_rates(decompose_matches(lc.witness_prefix, t), 8);
        if (!(r.v_e_hat > 0.0 && r.v_e_hat < 1.0)) continue;
        ++checked;
        const double margin = r.v_s_hat - (r.v_e_hat / (1.0 - r.v_e_hat) - 0.05);
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0.0) {
            detail = fmt("violated at v_e %.4f, v_s %.4f", r.v_e_hat, r.v_s_hat);
            return false;
        }
    }
    detail = fmt("%g sequences, worst margin %.4f", static_cast<double>(checked), worst_margin);
    return checked >= 1000;
}

bool c5_monotone_inclusion(std::string& detail) {
    const TargetSpec ones = TargetSpec::periodic({1});
    const WindowFn wa = linear_window(0.5), wb = linear_window(1.0 / 3.0);

    for (Semantics sem : {Semantics::Pessimistic, Semantics::Optimistic}) {
        const auto ca = count_eah_words(2, ones, wa, 14, sem, CountMethod::Enumeration);
        const auto cb = count_eah_words(2, ones, wb, 14, sem, CountMethod::Enumeration);
        if (ca.count > cb.count) {
            detail = "wider window gained words";
            return false;
        }
    }
    for (std::int64_t n = 1; n <= 14; ++n) {
        for (const WindowFn& w : {wa, wb}) {
            for (Semantics sem : {Semantics::Pessimistic, Semantics::Optimistic}) {
                const auto e = count_eah_words(2, ones, w, n, sem, CountMethod::Enumeration);
                const auto d = count_eah_words(2, ones, w, n, sem, CountMethod::Automaton);
                if (e.count != d.count) {
                    detail = fmt("mismatch at n=%g: enum %g vs dp %g", static_cast<double>(n),
                                 static_cast<double>(e.count), static_cast<double>(d.count));
                    return false;
                }
            }
        }
    }
    detail = "enumeration and automaton agree on every cell";
    return true;
}

bool c6_supercritical_collapse(std::string& detail) {
    const TargetSpec ones = TargetSpec::periodic({1});
    std::uint64_t last = 0;
    for (std::int64_t n = 10; n <= 30; ++n) {
        const auto res = count_eah_words(2, ones, linear_window(1.2), n, Semantics::Pessimistic,
                                         CountMethod::Automaton);
        if (res.count > static_cast<std::uint64_t>(n + 1)) {
            detail = fmt("count %g exceeds n+1 at n=%g", static_cast<double>(res.count),
                         static_cast<double>(n));
            return false;
        }
        last = res.count;
    }
    detail = fmt("count at n=30 is %g", static_cast<double>(last));
    return true;
}

bool c7_gap_bound(std::string& detail) {
    const IfsSpec half = IfsSpec::similarity({0.5, 0.5});
    const TargetSpec ones = TargetSpec::periodic({1});
    const auto rep =
        gap_bound_check(half, ones, 4.0, 0.5, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5});
    double worst_ratio = 0.0;
    for (const auto& e : rep.entries) {
        if (e.gap < 0.0 || e.gap > e.bound) {
            detail = fmt("delta %.0e: gap %.3e vs bound %.3e", e.delta, e.gap, e.bound);
            return false;
        }
        if (e.bound > 0.0) worst_ratio = std::max(worst_ratio, e.gap / e.bound);
    }
    detail = fmt("C = %.3f, worst gap/bound %.3f", rep.C, worst_ratio);
    return rep.all_pass;
}

bool c8_witness_fidelity(std::string& detail) {
    const TargetSpec ones = TargetSpec::periodic({1});
    const auto lc = build_witness(ones, 2.0, 0.25, 100000, 2);
    const auto d = decompose_matches(lc.witness_prefix, ones);
    if (d.n_prime != lc.n_k || d.m_prime != lc.m_k) {
        detail = "decomposition does not reproduce the schedule";
        return false;
    }
    const auto r = estimate_rates(d, 8);
    detail = fmt("v_s_hat %.4f, v_e_hat %.4f", r.v_s_hat, r.v_e_hat);
    return r.v_s_hat >= 0.45 && r.v_s_hat <= 0.55 && r.v_e_hat >= 0.20 && r.v_e_hat <= 0.30;
}

bool c9_omega_separation(std::string& detail) {
    const IfsSpec ifs = IfsSpec::similarity({0.5, 0.125});
    const TargetSpec t = TargetSpec::doubling_blocks({2}, 1, 2);
    const auto est = omega_estimate(ifs, t, 2.0, 0.5, 1000, 100000, 97);
    const double gap = est.omega_plus - est.omega_minus;
    if (gap < 0.1) {
        detail = fmt("rate gap %.4f below 0.1", gap);
        return false;
    }
    const DimensionReport rep = omega_bounds(ifs, t, 0.5);
    detail = fmt("rate gap %.3f, bounds (%.6f, %.6f)", gap, rep.omega_minus_bound,
                 rep.omega_plus_bound);
    return rep.omega_plus_bound > rep.omega_minus_bound;
}

bool c10_endpoints_continuity(std::string& detail) {
    const IfsSpec half = IfsSpec::similarity({0.5, 0.5});
    const TargetSpec ones = TargetSpec::periodic({1});

    const auto r0 = omega_bounds(half, ones, 0.0);
    const auto r1 = omega_bounds(half, ones, 1.0);
    if (r0.omega_plus_bound != r0.dim_lambda || r0.omega_minus_bound != r0.dim_lambda) {
        detail = "v=0 endpoint not exact";
        return false;
    }
    if (r1.omega_plus_bound != 0.0 || r1.omega_minus_bound != 0.0) {
        detail = "v=1 endpoint not exact";
        return false;
    }

    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double v = 0.1 * i;
        const auto a = omega_bounds(half, ones, v);
        const auto b = omega_bounds(half, ones, v + 1e-3);
        worst = std::max({worst, std::abs(a.omega_plus_bound - b.omega_plus_bound),
                          std::abs(a.omega_minus_bound - b.omega_minus_bound)});
    }
    detail = fmt("endpoints exact, max |step| %.2e", worst);
    return worst <= 0.05;
}

bool c11_bracket_sanity(std::string& detail) {
    const TargetSpec ones = TargetSpec::periodic({1});
    double prev_hi = std::numeric_limits<double>::infinity();
    double lo24 = 0.0, hi24 = 0.0;
    for (std::int64_t n = 10; n <= 24; ++n) {
        const std::vector<CountResult> counts{
            count_eah_words(2, ones, linear_window(0.5), n, Semantics::Pessimistic,
                            CountMethod::Automaton),
            count_eah_words(2, ones, linear_window(0.5), n, Semantics::Optimistic,
                            CountMethod::Automaton)};
        const auto [lo, hi] = dim_bracket_from_counts(counts, 0.5);
        if (lo > hi) {
            detail = "lower end above upper end";
            return false;
        }
        if (hi > prev_hi + 1e-12) {
            detail = fmt("upper end grew at n=%g", static_cast<double>(n));
            return false;
        }
        prev_hi = hi;
        lo24 = lo;
        hi24 = hi;
    }
    // by design no tighter assertion: the bracket is a sanity instrument only
    detail = fmt("bracket at n=24 is [%.4f, %.4f]", lo24, hi24);
    return true;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    run(1, "Moran roots", 0.1, c1_moran_roots);
    run(2, "homogeneous period-1 law", 1.0, c2_homogeneous_law);
    run(3, "omega validation gate", 30.0, c3_omega_validation);
    run(4, "rate inequality on 10^3 sequences", 60.0, c4_rate_inequality);
    run(5, "monotone inclusion and DP equality", 60.0, c5_monotone_inclusion);
    run(6, "supercritical collapse", 10.0, c6_supercritical_collapse);
    run(7, "linear gap bound", 5.0, c7_gap_bound);
    run(8, "witness fidelity", 5.0, c8_witness_fidelity);
    run(9, "rate separation on doubling blocks", 30.0, c9_omega_separation);
    run(10, "endpoints and continuity", 30.0, c10_endpoints_continuity);
    run(11, "bracket sanity ladder", 60.0, c11_bracket_sanity);
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
