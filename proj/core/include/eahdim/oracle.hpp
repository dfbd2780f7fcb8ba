#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "eahdim/ifs.hpp"
#include "eahdim/match.hpp"
#include "eahdim/target.hpp"
#include "eahdim/word.hpp"

namespace eahdim {

struct CountResult {
    std::int64_t n = 0;
    std::uint64_t count = 0;
    double log_rate = 0.0;  // log(count)/n, -inf when count = 0
    Semantics semantics = Semantics::Pessimistic;
};

enum class CountMethod { Auto, Enumeration, Automaton };

// Number of length-n words w with eah_feasible(w, t, window, 1, semantics).
// Enumeration walks all S^n words against the literal definition (reference,
// S^n capped); the automaton DP tracks the longest live target-prefix match
// together with the frontier of already-covered deadlines and needs a
// nondecreasing window. The two must agree exactly wherever both run.
CountResult count_eah_words(int S, const TargetSpec& t, const WindowFn& window, std::int64_t n,
                            Semantics semantics, CountMethod method = CountMethod::Auto);

// Box-counting style bracket from a pessimistic/optimistic count pair at the
// largest common n of the list: log(count) / (n * log(1/r)). A sanity
// instrument with no convergence claim at desk scale.
std::pair<double, double> dim_bracket_from_counts(const std::vector<CountResult>& counts,
                                                  double r);

// Explicit witness family: run starts n_k = floor(a*theta^k) and ends
// m_k = floor((theta*v+1)*n_k), with a chosen exactly large enough that
// consecutive runs keep a gap of at least 2. The witness prefix carries the
// target copy inside each run and letters avoiding t_1 elsewhere.
struct WitnessConstruction {
    double theta = 0.0, v = 0.0, a = 0.0;
    std::vector<std::int64_t> n_k, m_k;
    Word witness_prefix;
    std::int64_t depth = 0;
};

WitnessConstruction build_witness(const TargetSpec& t, double theta, double v, std::int64_t depth, int S);

// Prefix-sum inequality over the filtered runs: for every filtered index
// k_i >= k_hat (1-based),
//   sum_{j<=k_i} (m_j - n_j - 2) >= n_{k_i} * ((theta+delta)v/(theta+delta-1) - eps')
// with eps' = epsilon*(((theta+delta)^2+1)/(theta+delta-1)^2 + 1).
bool verify_sum_inequality(const MatchDecomposition& d, double theta, double v, double delta,
                           double epsilon, int k_hat);

// Probability weights ||f'_w||^s, normalized over all length-l words whose
// run-body positions carry the target copy demanded by the schedule (free
// positions range over the whole alphabet). A schedule whose overlapping
// runs demand conflicting letters admits no words at all.
struct DiscreteMeasure {
    std::int64_t level = 0;
    std::map<Word, double> atoms;
};

DiscreteMeasure discrete_measure(const IfsSpec& ifs, const TargetSpec& t, const WitnessConstruction& lc,
                                 std::int64_t l, double s);

// Checks, for every admissible prefix p of length k_prime,
//   mu_k([p]) <= K^2 * ||f'_p||^s / sum_{u admissible, |u|=k_prime} ||f'_u||^s.
bool cylinder_mass_bound_check(const IfsSpec& ifs, const TargetSpec& t, const WitnessConstruction& lc,
                               std::int64_t k_prime, std::int64_t k, double s, double K);

} // namespace eahdim
