#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eahdim/target.hpp"
#include "eahdim/word.hpp"

namespace eahdim {

// How windows that run past the end of a finite prefix are treated: as
// wildcard matches (Optimistic) or as mismatches (Pessimistic). Any finite
// proxy of the infinite-time hitting property has to pick one; the two
// together bracket the truth.
enum class Semantics { Optimistic, Pessimistic };

using WindowFn = std::function<std::int64_t(std::int64_t)>;

WindowFn linear_window(double v);   // n -> floor(v * n)
WindowFn zero_window();             // n -> 0
WindowFn quadratic_window();        // n -> n * n

// Maximal runs where e copies a prefix of t. A run anchored at position a
// (e_a = t_1, preceded by a letter != t_1) occupies n'+1 .. m'-1 with
// n' = a-1, and the letter at m' breaks the copy. The filtered subsequence
// keeps runs of strictly increasing length: j_{k+1} is the first later run
// strictly longer than run j_k.
struct MatchDecomposition {
    std::vector<std::int64_t> n_prime, m_prime;        // complete runs
    std::vector<std::int64_t> n_filtered, m_filtered;  // strictly increasing lengths
    std::int64_t depth = 0;                            // prefix length scanned
    bool has_truncated_tail = false;   // a run was still open at the boundary
    std::int64_t truncated_n_prime = -1;
    std::int64_t truncated_len = 0;    // observed body length of that run
};

MatchDecomposition decompose_matches(const Word& e_prefix, const TargetSpec& t);

// Finite-depth stand-ins for the limsup/liminf hitting rates, taken over a
// trailing window of the filtered runs (the filtered indices grow at least
// geometrically, so a short tail dominates).
struct RateEstimate {
    double v_e_hat = 0.0;
    double v_s_hat = 0.0;
    std::int64_t depth = 0;
    int tail_window = 0;
};

RateEstimate estimate_rates(const MatchDecomposition& d, int tail_window = 8);

// Membership certificate for the target class that forbids a prefix of t
// from reappearing inside any single-digit edit of t. Checks every
// n in (N0, n_max], m in [1, n-1] and j != t_n; reports the
// lexicographically first violation if one exists.
struct RigidityViolation {
    std::int64_t n = 0, m = 0;
    Letter j = 0;
};

struct RigidityCheck {
    bool ok = true;
    std::optional<RigidityViolation> first_violation;
};

RigidityCheck edit_rigid_up_to(const TargetSpec& t, std::int64_t N0, std::int64_t n_max);

// True iff every index n in [N_start, len] has some m <= n with
// e|_{m+1}^{m+a_n} = t|_1^{a_n}.
bool eah_feasible(const Word& e_prefix, const TargetSpec& t, const WindowFn& window,
                  std::int64_t N_start, Semantics semantics);

// Smallest shift M >= 0 with e|_{M+1}^{len} = t|_1^{len-M}, provided at least
// half the prefix matches (any finite prefix trivially admits M = len, so a
// threshold is required; one half keeps the answer deterministic).
std::optional<std::int64_t> shifted_target_prefix(const Word& e_prefix, const TargetSpec& t);

} // namespace eahdim
