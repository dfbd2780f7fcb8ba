#include "eahdim/match.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eahdim/errors.hpp"

namespace eahdim {

WindowFn linear_window(double v) {
    if (v < 0.0) throw input_error("window rate must be >= 0");
    return [v](std::int64_t n) { return static_cast<std::int64_t>(std::floor(v * static_cast<double>(n))); };
}

WindowFn zero_window() {
    return [](std::int64_t) { return std::int64_t{0}; };
}

WindowFn quadratic_window() {
    return [](std::int64_t n) { return n * n; };
}

MatchDecomposition decompose_matches(const Word& e, const TargetSpec& t) {
    if (e.empty()) throw input_error("decompose_matches needs a nonempty prefix");
    const auto len = static_cast<std::int64_t>(e.size());
    const Word tp = t.prefix(len);
    const Letter t1 = tp[0];

    MatchDecomposition d;
    d.depth = len;

    auto at = [&](std::int64_t pos) { return e[static_cast<std::size_t>(pos - 1)]; };

    std::int64_t pos = 1;
    while (pos <= len) {
        const bool anchored = at(pos) == t1 && (pos == 1 || at(pos - 1) != t1);
        if (!anchored) {
            ++pos;
            continue;
        }
        std::int64_t run = 0;  // matched body length
        while (pos + run <= len && at(pos + run) == tp[static_cast<std::size_t>(run)]) ++run;
        if (pos + run > len) {
            // still open at the boundary; its true end is unknown
            d.has_truncated_tail = true;
            d.truncated_n_prime = pos - 1;
            d.truncated_len = run;
            break;
        }
        d.n_prime.push_back(pos - 1);
        d.m_prime.push_back(pos + run);
        pos += run;  // resume at the breaking letter
    }

    std::int64_t best = -1;
    for (std::size_t k = 0; k < d.n_prime.size(); ++k) {
        const std::int64_t span = d.m_prime[k] - d.n_prime[k];
        if (span > best) {
            best = span;
            d.n_filtered.push_back(d.n_prime[k]);
            d.m_filtered.push_back(d.m_prime[k]);
        }
    }
    return d;
}

RateEstimate estimate_rates(const MatchDecomposition& d, int tail_window) {
    if (tail_window < 1) throw input_error("tail_window must be >= 1");
    RateEstimate r;
    r.depth = d.depth;
    r.tail_window = tail_window;

    const auto count = static_cast<std::int64_t>(d.n_filtered.size());
    if (count == 0) return r;

    const std::int64_t first = std::max<std::int64_t>(0, count - tail_window);
    double vs = 0.0;
    for (std::int64_t k = first; k < count; ++k) {
        const auto n_k = static_cast<double>(d.n_filtered[static_cast<std::size_t>(k)]);
        const auto span = static_cast<double>(d.m_filtered[static_cast<std::size_t>(k)] -
                                              d.n_filtered[static_cast<std::size_t>(k)]);
        if (n_k > 0.0) vs = std::max(vs, span / n_k);
    }
    r.v_s_hat = vs;

    if (count >= 2) {
        double ve = std::numeric_limits<double>::infinity();
        for (std::int64_t k = first; k < count - 1; ++k) {
            const auto span = static_cast<double>(d.m_filtered[static_cast<std::size_t>(k)] -
                                                  d.n_filtered[static_cast<std::size_t>(k)]);
            const auto n_next = static_cast<double>(d.n_filtered[static_cast<std::size_t>(k + 1)]);
            ve = std::min(ve, span / n_next);
        }
        if (std::isfinite(ve)) r.v_e_hat = ve;
    }
    return r;
}

RigidityCheck edit_rigid_up_to(const TargetSpec& t, std::int64_t N0, std::int64_t n_max) {
    if (!(1 <= N0 && N0 < n_max)) throw input_error("edit_rigid_up_to requires 1 <= N0 < n_max");
    const Word tp = t.prefix(n_max);

    // z[m] = length of the longest common prefix of t and its shift starting
    // at position m (1-based); classic Z-function.
    std::vector<std::int64_t> z(static_cast<std::size_t>(n_max) + 1, 0);
    z[1] = n_max;
    std::int64_t l = 1, rr = 1;
    for (std::int64_t m = 2; m <= n_max; ++m) {
        std::int64_t k = 0;
        if (m < rr) k = std::min(rr - m, z[static_cast<std::size_t>(m - l + 1)]);
        while (m + k <= n_max && tp[static_cast<std::size_t>(k)] == tp[static_cast<std::size_t>(m + k - 1)]) ++k;
        z[static_cast<std::size_t>(m)] = k;
        if (m + k > rr) {
            l = m;
            rr = m + k;
        }
    }

    // A single-digit edit t(n,j) reproduces t|_1^{n-m+1} in its window m..n
    // exactly when t already matches itself on m..n-1 and the edited digit j
    // agrees with t_{n-m+1} while differing from t_n.
    for (std::int64_t n = N0 + 1; n <= n_max; ++n) {
        for (std::int64_t m = 1; m < n; ++m) {
            if (z[static_cast<std::size_t>(m)] < n - m) continue;
            const Letter want = tp[static_cast<std::size_t>(n - m)];
            if (want != tp[static_cast<std::size_t>(n - 1)])
                return {false, RigidityViolation{n, m, want}};
        }
    }
    return {true, std::nullopt};
}

bool eah_feasible(const Word& e, const TargetSpec& t, const WindowFn& window,
                  std::int64_t N_start, Semantics semantics) {
    if (N_start < 1) throw input_error("N_start must be >= 1");
    const auto len = static_cast<std::int64_t>(e.size());
    const Word tp = t.prefix(len);

    // match_len[m] = longest l with e|_{m+1}^{m+l} = t|_1^l, m = 0..len
    std::vector<std::int64_t> match_len(static_cast<std::size_t>(len) + 1, 0);
    for (std::int64_t m = 0; m <= len; ++m) {
        std::int64_t l = 0;
        while (m + l < len && e[static_cast<std::size_t>(m + l)] == tp[static_cast<std::size_t>(l)]) ++l;
        match_len[static_cast<std::size_t>(m)] = l;
    }

    const auto effective = [&](std::int64_t m) -> std::int64_t {
        const std::int64_t l = match_len[static_cast<std::size_t>(m)];
        if (semantics == Semantics::Optimistic && m + l == len)
            return std::numeric_limits<std::int64_t>::max();  // wildcards extend freely
        return l;
    };

    std::int64_t best = effective(0);
    for (std::int64_t n = 1; n <= len; ++n) {
        best = std::max(best, effective(n));
        if (n < N_start) continue;
        const std::int64_t a_n = window(n);
        if (a_n < 0) throw input_error("window values must be >= 0");
        if (best < a_n) return false;
    }
    return true;
}

std::optional<std::int64_t> shifted_target_prefix(const Word& e, const TargetSpec& t) {
    const auto len = static_cast<std::int64_t>(e.size());
    if (len == 0) return std::nullopt;
    const Word tp = t.prefix(len);
    for (std::int64_t shift = 0; shift <= len / 2; ++shift) {
        bool ok = true;
        for (std::int64_t i = shift + 1; i <= len; ++i) {
            if (e[static_cast<std::size_t>(i - 1)] != tp[static_cast<std::size_t>(i - shift - 1)]) {
                ok = false;
                break;
            }
        }
        if (ok) return shift;
    }
    return std::nullopt;
}

} // namespace eahdim
