#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "eahdim/word.hpp"

namespace eahdim {

// Contraction data of a self-similar IFS: one ratio per letter, each in (0,1).
struct SimilarityIfs {
    std::vector<double> ratios;
};

// A conformal system entered through a user-supplied word norm. The callback
// returns log ||f'_w|| for a finite word w; `distortion_log_k` is the declared
// log of the distortion constant K >= 1, so that
//   log||f'_u|| + log||f'_w|| - 2*distortion_log_k
//     <= log||f'_{uw}|| <= log||f'_u|| + log||f'_w||.
struct ConformalOracleIfs {
    int alphabet_size = 0;
    std::function<double(const Word&)> word_log_norm;
    double distortion_log_k = 0.0;
};

class IfsSpec {
public:
    static IfsSpec similarity(std::vector<double> ratios);
    static IfsSpec conformal_oracle(int alphabet_size,
                                    std::function<double(const Word&)> word_log_norm,
                                    double distortion_log_k);

    int alphabet_size() const;
    bool is_similarity() const { return std::holds_alternative<SimilarityIfs>(kind_); }

    // Similarity accessors; throw input_error on the oracle kind.
    const std::vector<double>& ratios() const;
    const std::vector<double>& log_ratios() const;
    double log_f_min() const;  // log of the smallest ratio
    double log_f_max() const;  // log of the largest ratio

    // Oracle accessors; the log-norm forwards for both kinds (similarities
    // answer with the exact digit sum and K = 1).
    double distortion_log_k() const;
    double oracle_log_norm(const Word& w) const;

private:
    IfsSpec() = default;
    std::variant<SimilarityIfs, ConformalOracleIfs> kind_;
    std::vector<double> log_ratios_;  // cached for similarity
};

// Wraps a similarity system behind the oracle interface, optionally declaring
// a larger distortion constant than the exact K = 1.
IfsSpec as_conformal_oracle(const IfsSpec& sim, double declared_log_k = 0.0);

struct PressureSolverConfig {
    double abs_tol = 1e-12;
    int max_iter = 200;
    double s_upper_seed = 64.0;
};

// Default budget for exhaustive word enumeration: S^n <= 2^24.
inline constexpr std::uint64_t kEnumCap = std::uint64_t{1} << 24;

// log ||f'_w||. Empty word gives 0; similarity kind is the exact digit sum.
double log_deriv_norm(const IfsSpec& ifs, const Word& w);

// P(s) = log sum_i r_i^s for similarities. Strictly decreasing, convex,
// P(0) = log S. Point values are only available for similarities; conformal
// oracles go through pressure_bracket.
double pressure(const IfsSpec& ifs, double s);

// P'(s) = (sum r_i^s log r_i) / (sum r_i^s); always negative.
double pressure_derivative(const IfsSpec& ifs, double s);

// Finite-level pressure bracket for a conformal oracle. With
// a_n = log sum_{|w|=n} ||f'_w||^s the true pressure lies in
// [a_n/n - 2 s K_log / n, a_n/n]; the width shrinks as O(1/n).
std::pair<double, double> pressure_bracket(const IfsSpec& ifs, double s, std::int64_t n,
                                           std::uint64_t enum_cap = kEnumCap);

// The unique root of P(s) = 0, i.e. the attractor dimension of a similarity
// system under the open set condition.
double dim_attractor(const IfsSpec& ifs, const PressureSolverConfig& cfg = {});

// The unique root of P(s) = slope_g * s for slope_g > 0. P is strictly
// decreasing and the line strictly increasing, so plain bisection converges
// unconditionally; the upper bracket doubles from cfg.s_upper_seed.
double pressure_linear_root(const IfsSpec& ifs, double slope_g,
                            const PressureSolverConfig& cfg = {});

} // namespace eahdim
