#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eahdim/ifs.hpp"
#include "eahdim/target.hpp"
#include "eahdim/word.hpp"

namespace eahdim {

enum class CaseTag { Range01, Empty, Countable };
enum class BoundSign { Plus, Minus };

// Sampled (or exact) estimate of the contraction rate along the concatenated
// target-prefix words. omega_minus <= omega_plus < 0 always; when `exact` the
// two coincide and the sample list is empty.
struct OmegaEstimate {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    bool exact = false;
    std::int64_t M_lo = 0, M_hi = 0, stride = 0;
    std::vector<std::pair<std::int64_t, double>> samples;  // (M, log-norm / M)
};

struct ThetaGridPoint {
    double theta = 0.0;
    double s_plus = 0.0;
    double s_minus = 0.0;
};

struct DimensionReport {
    double dim_lambda = 0.0;
    std::vector<ThetaGridPoint> theta_grid;
    double s_hat_plus = 0.0;
    double s_hat_minus = 0.0;
    double omega_plus_bound = 0.0;   // final upper dimension bound
    double omega_minus_bound = 0.0;  // final lower dimension bound
    CaseTag case_tag = CaseTag::Range01;
    bool condition5_holds = false;   // upper and lower rate estimates coincide
    double theta_star_plus = 0.0;
    double theta_star_minus = 0.0;
};

struct ThetaSearchConfig {
    int coarse_points = 512;      // log-spaced grid before refinement
    double theta_tol = 1e-8;      // golden-section stopping width
    double decay = 0.9;           // stop growing theta_max once s decays below decay*best
    std::int64_t M_lo = 1000;
    std::int64_t M_hi = 100000;
    std::int64_t stride = 97;     // prime, to avoid resonance with periodic targets
    PressureSolverConfig solver{};
};

// The concatenation t|_1^{floor(vM/theta^p)} ... t|_1^{floor(vM)} t|_1^{floor(theta v M)}
// with p the largest integer such that vM/theta^p >= 1. Zero-length segments
// at very small M are skipped.
Word concat_target_prefixes(const TargetSpec& t, double theta, double v, std::int64_t M);

// Samples log||f'_{G(M)}|| / M on the arithmetic grid M_lo, M_lo+stride, ...;
// the reported max/min are taken over the tail half M >= (M_lo+M_hi)/2.
OmegaEstimate omega_estimate(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                             std::int64_t M_lo, std::int64_t M_hi, std::int64_t stride);

// Closed form for a similarity system with periodic target: the limit equals
// cbar * v * theta^2/(theta-1) where cbar is the mean log ratio over one
// period. The acceptance suite cross-validates this against omega_estimate
// before the formula is trusted anywhere else.
OmegaEstimate omega_exact_periodic(const IfsSpec& ifs, const TargetSpec& t, double theta, double v);

// Root of P(s) = -s * ((theta-1)/(theta-theta*v-1)) * omega, with omega < 0
// and theta > 1/(1-v).
double solve_s(const IfsSpec& ifs, double omega, double theta, double v,
               const PressureSolverConfig& cfg = {});

struct SHatResult {
    double s_hat = 0.0;
    double theta_star = 0.0;
};

// Maximizes s(theta) over theta in (1/(1-v), theta_max] by a coarse
// log-spaced grid followed by golden-section refinement; theta_max doubles
// adaptively until s has decayed below decay * best.
SHatResult s_hat(const IfsSpec& ifs, const TargetSpec& t, double v, BoundSign sign,
                 const ThetaSearchConfig& cfg = {});

// Full report for v in [0,1]: endpoints are exact, the interior takes
// min{s_hat, dim}. Routing of v outside [0,1] belongs to classify_case.
DimensionReport omega_bounds(const IfsSpec& ifs, const TargetSpec& t, double v,
                             const ThetaSearchConfig& cfg = {});

// v in [0,1] -> Range01; v in (1,inf) -> Empty; v = +inf -> Countable.
CaseTag classify_case(double v);

// True (the intersection set is empty) iff theta < 1/(1-v).
bool rate_pair_empty(double v, double theta);

// Root of s*[omega_plus + log(1/f'_min) * delta * (1 + v/(theta-1)^2)]
//        + ((theta+delta)(1-v)-1)/(theta+delta-1) * P(s) = 0.
// At delta = 0 this reduces to solve_s with the same omega_plus.
double solve_s_bar(const IfsSpec& ifs, const TargetSpec& t, double theta, double v, double delta,
                   const ThetaSearchConfig& cfg = {});

struct GapCheckEntry {
    double delta = 0.0;
    double s_bar = 0.0;
    double gap = 0.0;    // s_bar - s_plus
    double bound = 0.0;  // C * delta
    bool pass = false;
};

struct GapBoundReport {
    double theta = 0.0, v = 0.0;
    double s_plus = 0.0;
    double delta_hat = 0.0;  // theta - 1/(1-v)
    double C = 0.0;          // linear gap constant
    double dim_lambda = 0.0;
    std::vector<GapCheckEntry> entries;
    bool all_pass = true;
};

// Checks s_bar(delta) - s_plus <= C * delta for each delta, with
// C = 12 * log(1/f'_min) * dim / ((1-v) * |P'(dim)|) / delta_hat.
GapBoundReport gap_bound_check(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                               const std::vector<double>& deltas,
                               const ThetaSearchConfig& cfg = {});

// Finite-N covering exponent: builds the fixed word of prescribed segment
// lengths, then returns (s/N) log||f'_fixed|| + (free/N) P(s). Its sign
// change in s approaches the solve_s_bar root as N grows.
double upper_bound_exponent(const IfsSpec& ifs, const TargetSpec& t, double theta, double v,
                            double delta, double epsilon, double s, std::int64_t N, int k_star,
                            int k_prime);

} // namespace eahdim
