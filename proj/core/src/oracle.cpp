#include "eahdim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "eahdim/errors.hpp"

namespace eahdim {

namespace {

constexpr std::int64_t kDpMaxN = 4096;

std::uint64_t checked_pow(int S, std::int64_t n, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < n; ++i) {
        if (total > cap / static_cast<std::uint64_t>(S))
            throw resource_error("S^n exceeds the enumeration cap");
        total *= static_cast<std::uint64_t>(S);
    }
    return total;
}

std::vector<std::int64_t> window_values(const WindowFn& window, std::int64_t n) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t j = 1; j <= n; ++j) {
        a[static_cast<std::size_t>(j)] = window(j);
        if (a[static_cast<std::size_t>(j)] < 0)
            throw input_error("window values must be >= 0");
    }
    return a;
}

std::uint64_t count_by_enumeration(int S, const TargetSpec& t, const WindowFn& window,
                                   std::int64_t n, Semantics semantics) {
    checked_pow(S, n, kEnumCap);
    Word w(static_cast<std::size_t>(n), 1);
    std::uint64_t count = 0;
    while (true) {
        if (eah_feasible(w, t, window, 1, semantics)) ++count;
        std::int64_t pos = n - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(pos)] == S) {
            w[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++w[static_cast<std::size_t>(pos)];
    }
    return count;
}

// Prefix automaton of t|_1^n: state = length of the longest live match.
struct PrefixAutomaton {
    std::int64_t n = 0;
    int S = 0;
    std::vector<std::int64_t> delta;  // (n+1) x S

    std::int64_t next(std::int64_t q, Letter c) const {
        return delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(S) +
                     static_cast<std::size_t>(c - 1)];
    }
};

PrefixAutomaton build_prefix_automaton(const Word& tp, int S) {
    const auto n = static_cast<std::int64_t>(tp.size());
    PrefixAutomaton au;
    au.n = n;
    au.S = S;
    au.delta.assign(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(S), 0);

    std::vector<std::int64_t> fail(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t q = 2; q <= n; ++q) {
        std::int64_t f = fail[static_cast<std::size_t>(q - 1)];
        while (f > 0 && tp[static_cast<std::size_t>(f)] != tp[static_cast<std::size_t>(q - 1)])
            f = fail[static_cast<std::size_t>(f)];
        if (tp[static_cast<std::size_t>(f)] == tp[static_cast<std::size_t>(q - 1)]) ++f;
        fail[static_cast<std::size_t>(q)] = f;
    }
    for (std::int64_t q = 0; q <= n; ++q) {
        for (Letter c = 1; c <= S; ++c) {
            std::int64_t to;
            if (q < n && tp[static_cast<std::size_t>(q)] == c) {
                to = q + 1;
            } else if (q == 0) {
                to = 0;
            } else {
                to = au.next(fail[static_cast<std::size_t>(q)], c);
            }
            au.delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(S) +
                     static_cast<std::size_t>(c - 1)] = to;
        }
    }
    return au;
}

// DP over (longest live match, covered-deadline frontier). A match of length
// l alive at position i certifies every deadline j in [i-l, reach(l)] where
// reach(l) is the last deadline with window <= l; the frontier only needs the
// longest live match because shorter borders start later and reach less.
std::uint64_t count_by_automaton(int S, const TargetSpec& t, const WindowFn& window,
                                 std::int64_t n, Semantics semantics) {
    if (n > kDpMaxN) throw resource_error("n exceeds the DP cap");
    const auto a = window_values(window, n);
    for (std::int64_t j = 2; j <= n; ++j)
        if (a[static_cast<std::size_t>(j)] < a[static_cast<std::size_t>(j - 1)])
            throw input_error("automaton counting needs a nondecreasing window");

    const Word tp = t.prefix(n);
    const PrefixAutomaton au = build_prefix_automaton(tp, S);

    // reach[l] = last deadline j with a_j <= l (or 0 when none)
    std::vector<std::int64_t> reach(static_cast<std::size_t>(n) + 1, 0);
    {
        std::int64_t j = 0;
        for (std::int64_t l = 0; l <= n; ++l) {
            while (j < n && a[static_cast<std::size_t>(j + 1)] <= l) ++j;
            reach[static_cast<std::size_t>(l)] = j;
        }
    }

    auto pack = [n](std::int64_t cur, std::int64_t frontier) {
        return static_cast<std::uint64_t>(cur) * static_cast<std::uint64_t>(n + 1) +
               static_cast<std::uint64_t>(frontier);
    };

    std::unordered_map<std::uint64_t, std::uint64_t> states, next_states;
    states.emplace(pack(0, reach[0]), 1);

    for (std::int64_t i = 1; i <= n; ++i) {
        next_states.clear();
        for (const auto& [key, cnt] : states) {
            const auto cur = static_cast<std::int64_t>(key / static_cast<std::uint64_t>(n + 1));
            const auto frontier = static_cast<std::int64_t>(key % static_cast<std::uint64_t>(n + 1));
            for (Letter c = 1; c <= S; ++c) {
                const std::int64_t cur2 = au.next(cur, c);
                std::int64_t f2 = frontier;
                if (i - cur2 <= f2 + 1)
                    f2 = std::max(f2, reach[static_cast<std::size_t>(cur2)]);
                // i - cur is nondecreasing along any word, so a frontier that
                // fell behind every possible match start can never recover
                if (f2 < n && i - cur2 > f2 + 1) continue;
                next_states[pack(cur2, f2)] += cnt;
            }
        }
        states.swap(next_states);
    }

    std::uint64_t count = 0;
    for (const auto& [key, cnt] : states) {
        const auto cur = static_cast<std::int64_t>(key / static_cast<std::uint64_t>(n + 1));
        const auto frontier = static_cast<std::int64_t>(key % static_cast<std::uint64_t>(n + 1));
        if (frontier == n) {
            count += cnt;
        } else if (semantics == Semantics::Optimistic && n - cur <= frontier + 1) {
            // matches still alive at the end extend over the wildcard tail
            count += cnt;
        }
    }
    return count;
}

// Free/forced layout of the first `len` positions under the run schedule.
// forced[j] = 0 marks a free position.
std::vector<Letter> forced_letters(const TargetSpec& t, const WitnessConstruction& lc,
                                   std::int64_t len) {
    std::vector<Letter> forced(static_cast<std::size_t>(len) + 1, 0);
    for (std::size_t k = 0; k < lc.n_k.size(); ++k) {
        for (std::int64_t j = lc.n_k[k] + 1; j < lc.m_k[k] && j <= len; ++j) {
            if (j < 1) continue;
            const Letter want = t.digit(j - lc.n_k[k]);
            if (forced[static_cast<std::size_t>(j)] != 0 &&
                forced[static_cast<std::size_t>(j)] != want)
                throw input_error("inconsistent run schedule: no admissible words");
            forced[static_cast<std::size_t>(j)] = want;
        }
    }
    return forced;
}

struct AtomSet {
    std::vector<Word> words;
    std::vector<double> log_norms;
};

AtomSet enumerate_admissible(const IfsSpec& ifs, const TargetSpec& t, const WitnessConstruction& lc,
                             std::int64_t l) {
    if (l < 1) throw input_error("level must be >= 1");
    if (l > lc.depth) throw input_error("level exceeds the witness depth");
    const int S = ifs.alphabet_size();
    const auto forced = forced_letters(t, lc, l);

    std::int64_t free_count = 0;
    for (std::int64_t j = 1; j <= l; ++j)
        if (forced[static_cast<std::size_t>(j)] == 0) ++free_count;
    checked_pow(S, free_count, kEnumCap);

    AtomSet atoms;
    Word w(static_cast<std::size_t>(l), 0);
    for (std::int64_t j = 1; j <= l; ++j)
        w[static_cast<std::size_t>(j - 1)] =
            forced[static_cast<std::size_t>(j)] != 0 ? forced[static_cast<std::size_t>(j)] : 1;

    std::vector<std::int64_t> free_pos;
    for (std::int64_t j = 1; j <= l; ++j)
        if (forced[static_cast<std::size_t>(j)] == 0) free_pos.push_back(j - 1);

    while (true) {
        atoms.words.push_back(w);
        atoms.log_norms.push_back(log_deriv_norm(ifs, w));
        std::int64_t pos = static_cast<std::int64_t>(free_pos.size()) - 1;
        while (pos >= 0 && w[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(pos)])] == S) {
            w[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(pos)])] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++w[static_cast<std::size_t>(free_pos[static_cast<std::size_t>(pos)])];
    }
    return atoms;
}

} // namespace

CountResult count_eah_words(int S, const TargetSpec& t, const WindowFn& window, std::int64_t n,
                            Semantics semantics, CountMethod method) {
    if (S < 2) throw input_error("alphabet size S must be >= 2");
    if (n < 1) throw input_error("word length n must be >= 1");
    if (t.max_letter() > S) throw input_error("target letters exceed the alphabet");

    std::uint64_t count = 0;
    switch (method) {
        case CountMethod::Enumeration:
            count = count_by_enumeration(S, t, window, n, semantics);
            break;
        case CountMethod::Automaton:
            count = count_by_automaton(S, t, window, n, semantics);
            break;
        case CountMethod::Auto:
            if (n <= 14 && std::pow(static_cast<double>(S), static_cast<double>(n)) <= 1 << 24)
                count = count_by_enumeration(S, t, window, n, semantics);
            else
                count = count_by_automaton(S, t, window, n, semantics);
            break;
    }

    CountResult res;
    res.n = n;
    res.count = count;
    res.log_rate = count == 0 ? -std::numeric_limits<double>::infinity()
                              : std::log(static_cast<double>(count)) / static_cast<double>(n);
    res.semantics = semantics;
    return res;
}

std::pair<double, double> dim_bracket_from_counts(const std::vector<CountResult>& counts,
                                                  double r) {
    if (!(r > 0.0 && r < 1.0)) throw input_error("homogeneous ratio must lie in (0,1)");
    if (counts.empty()) throw input_error("dim_bracket_from_counts needs counts");

    std::int64_t best_n = -1;
    const CountResult* pess = nullptr;
    const CountResult* opt = nullptr;
    std::map<std::int64_t, std::pair<const CountResult*, const CountResult*>> by_n;
    for (const auto& c : counts) {
        auto& slot = by_n[c.n];
        if (c.semantics == Semantics::Pessimistic)
            slot.first = &c;
        else
            slot.second = &c;
    }
    for (const auto& [n, slot] : by_n) {
        if (slot.first && slot.second && n > best_n) {
            best_n = n;
            pess = slot.first;
            opt = slot.second;
        }
    }
    if (!pess) throw input_error("need both semantics at a common n");
    if (pess->count > opt->count)
        throw input_error("pessimistic count exceeds optimistic count; mixed parameters?");

    const double denom = static_cast<double>(best_n) * (-std::log(r));
    auto value = [&](std::uint64_t cnt) {
        return cnt == 0 ? 0.0 : std::log(static_cast<double>(cnt)) / denom;
    };
    return {value(pess->count), value(opt->count)};
}

WitnessConstruction build_witness(const TargetSpec& t, double theta, double v, std::int64_t depth, int S) {
    if (!(v > 0.0 && v < 1.0)) throw input_error("v must lie in (0,1)");
    if (!(theta > 1.0 / (1.0 - v))) throw input_error("theta must exceed 1/(1-v)");
    if (S < 2) throw input_error("alphabet size S must be >= 2");
    if (depth < 1) throw input_error("depth must be >= 1");
    if (t.max_letter() > S) throw input_error("target letters exceed the alphabet");

    WitnessConstruction lc;
    lc.theta = theta;
    lc.v = v;
    lc.depth = depth;
    const double tv = theta * v;
    lc.a = std::max((5.0 + tv) / ((theta - tv - 1.0) * theta), (5.0 + tv) / (theta * theta * v));

    for (int k = 1;; ++k) {
        const auto n_k = static_cast<std::int64_t>(std::floor(lc.a * std::pow(theta, k)));
        const auto m_k = static_cast<std::int64_t>(std::floor((tv + 1.0) * static_cast<double>(n_k)));
        if (m_k > depth) break;
        if (!lc.n_k.empty()) {
            if (n_k - lc.m_k.back() < 2)
                throw numeric_error("run gap below 2; the sufficiency bound failed");
        }
        if (m_k - n_k < 2) throw numeric_error("run length below 2; the sufficiency bound failed");
        lc.n_k.push_back(n_k);
        lc.m_k.push_back(m_k);
    }

    const Letter t1 = t.digit(1);
    Letter fill = 1;
    while (fill == t1) ++fill;  // smallest letter different from t_1; exists since S >= 2

    lc.witness_prefix.assign(static_cast<std::size_t>(depth), fill);
    for (std::size_t k = 0; k < lc.n_k.size(); ++k) {
        const std::int64_t n_k = lc.n_k[k], m_k = lc.m_k[k];
        for (std::int64_t j = n_k + 1; j < m_k; ++j)
            lc.witness_prefix[static_cast<std::size_t>(j - 1)] = t.digit(j - n_k);
        // the breaking letter must differ from the continuation of the copy;
        // avoiding t_1 as well keeps the scan from anchoring a stray run
        const Letter cont = t.digit(m_k - n_k);
        Letter brk = 0;
        for (Letter c = 1; c <= S; ++c)
            if (c != cont && c != t1) {
                brk = c;
                break;
            }
        if (brk == 0)
            for (Letter c = 1; c <= S; ++c)
                if (c != cont) {
                    brk = c;
                    break;
                }
        lc.witness_prefix[static_cast<std::size_t>(m_k - 1)] = brk;
    }
    return lc;
}

bool verify_sum_inequality(const MatchDecomposition& d, double theta, double v, double delta,
                           double epsilon, int k_hat) {
    if (k_hat < 1) throw input_error("k_hat must be >= 1");
    const double td = theta + delta;
    const double eps_prime = epsilon * ((td * td + 1.0) / ((td - 1.0) * (td - 1.0)) + 1.0);
    const double rate = td * v / (td - 1.0) - eps_prime;

    std::int64_t running = 0;
    for (std::size_t k = 0; k < d.n_filtered.size(); ++k) {
        running += d.m_filtered[k] - d.n_filtered[k] - 2;
        if (static_cast<int>(k) + 1 < k_hat) continue;
        if (static_cast<double>(running) <
            static_cast<double>(d.n_filtered[k]) * rate)
            return false;
    }
    return true;
}

DiscreteMeasure discrete_measure(const IfsSpec& ifs, const TargetSpec& t, const WitnessConstruction& lc,
                                 std::int64_t l, double s) {
    if (!(s > 0.0)) throw input_error("s must be positive");
    const AtomSet atoms = enumerate_admissible(ifs, t, lc, l);

    long double total = 0.0L;
    std::vector<long double> weights(atoms.words.size());
    for (std::size_t i = 0; i < atoms.words.size(); ++i) {
        weights[i] = expl(static_cast<long double>(s * atoms.log_norms[i]));
        total += weights[i];
    }

    DiscreteMeasure mu;
    mu.level = l;
    for (std::size_t i = 0; i < atoms.words.size(); ++i)
        mu.atoms.emplace(atoms.words[i], static_cast<double>(weights[i] / total));
    return mu;
}

bool cylinder_mass_bound_check(const IfsSpec& ifs, const TargetSpec& t, const WitnessConstruction& lc,
                               std::int64_t k_prime, std::int64_t k, double s, double K) {
    if (!(k > k_prime)) throw input_error("k must exceed k_prime");
    if (!(K >= 1.0)) throw input_error("distortion constant K must be >= 1");
    if (!(s > 0.0)) throw input_error("s must be positive");
    const AtomSet fine = enumerate_admissible(ifs, t, lc, k);
    const AtomSet coarse = enumerate_admissible(ifs, t, lc, k_prime);

    long double fine_total = 0.0L;
    std::map<Word, long double> cylinder_mass;
    for (std::size_t i = 0; i < fine.words.size(); ++i) {
        const long double w = expl(static_cast<long double>(s * fine.log_norms[i]));
        fine_total += w;
        Word prefix(fine.words[i].begin(), fine.words[i].begin() + k_prime);
        cylinder_mass[std::move(prefix)] += w;
    }

    long double coarse_total = 0.0L;
    std::map<Word, long double> coarse_weight;
    for (std::size_t i = 0; i < coarse.words.size(); ++i) {
        const long double w = expl(static_cast<long double>(s * coarse.log_norms[i]));
        coarse_total += w;
        coarse_weight.emplace(coarse.words[i], w);
    }

    const long double k2 = static_cast<long double>(K) * static_cast<long double>(K);
    for (const auto& [prefix, mass] : cylinder_mass) {
        const auto it = coarse_weight.find(prefix);
        if (it == coarse_weight.end()) return false;  // a fine word escaped the coarse layout
        const long double lhs = mass / fine_total;
        const long double rhs = k2 * it->second / coarse_total;
        if (lhs > rhs * (1.0L + 1e-12L)) return false;
    }
    return true;
}

} // namespace eahdim
