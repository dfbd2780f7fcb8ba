#include "eahdim/target.hpp"

#include <algorithm>
#include <limits>

#include "eahdim/errors.hpp"

namespace eahdim {

namespace {

void check_letters(const Word& w, const char* what) {
    for (Letter c : w)
        if (c < 1) throw input_error(std::string(what) + ": letters are 1-based");
}

} // namespace

TargetSpec TargetSpec::periodic(Word word) {
    if (word.empty()) throw input_error("periodic target needs a nonempty word");
    check_letters(word, "periodic target");
    TargetSpec t;
    t.kind_ = PeriodicTarget{std::move(word)};
    return t;
}

TargetSpec TargetSpec::explicit_prefix(Word prefix, Letter tail_fill) {
    check_letters(prefix, "explicit prefix target");
    if (tail_fill < 1) throw input_error("tail_fill letter is 1-based");
    TargetSpec t;
    t.kind_ = ExplicitPrefixTarget{std::move(prefix), tail_fill};
    return t;
}

TargetSpec TargetSpec::doubling_blocks(Word head, Letter first, Letter second) {
    check_letters(head, "doubling blocks target");
    if (first < 1 || second < 1) throw input_error("block letters are 1-based");
    TargetSpec t;
    t.kind_ = DoublingBlocksTarget{std::move(head), {first, second}};
    return t;
}

Letter TargetSpec::digit(std::int64_t n) const {
    if (n < 1) throw input_error("target digit index is 1-based");
    if (const auto* p = std::get_if<PeriodicTarget>(&kind_)) {
        const auto len = static_cast<std::int64_t>(p->word.size());
        return p->word[static_cast<std::size_t>((n - 1) % len)];
    }
    if (const auto* e = std::get_if<ExplicitPrefixTarget>(&kind_)) {
        const auto len = static_cast<std::int64_t>(e->prefix.size());
        return n <= len ? e->prefix[static_cast<std::size_t>(n - 1)] : e->tail_fill;
    }
    const auto& d = std::get<DoublingBlocksTarget>(kind_);
    const auto head_len = static_cast<std::int64_t>(d.head.size());
    if (n <= head_len) return d.head[static_cast<std::size_t>(n - 1)];
    std::int64_t offset = n - head_len;  // 1-based within the block schedule
    // Block k has length 2^(2^k). From k = 6 on the length exceeds any
    // representable index, so the walk below always terminates.
    for (int k = 1;; ++k) {
        if (k >= 6) return d.block_letters[static_cast<std::size_t>((k - 1) % 2)];
        const std::int64_t len = std::int64_t{1} << (std::int64_t{1} << k);
        if (offset <= len) return d.block_letters[static_cast<std::size_t>((k - 1) % 2)];
        offset -= len;
    }
}

Word TargetSpec::prefix(std::int64_t len) const {
    if (len < 0) throw input_error("prefix length must be >= 0");
    Word out;
    out.reserve(static_cast<std::size_t>(len));
    for (std::int64_t i = 1; i <= len; ++i) out.push_back(digit(i));
    return out;
}

std::optional<std::int64_t> TargetSpec::period() const {
    if (const auto* p = std::get_if<PeriodicTarget>(&kind_))
        return static_cast<std::int64_t>(p->word.size());
    return std::nullopt;
}

Letter TargetSpec::max_letter() const {
    Letter mx = 1;
    if (const auto* p = std::get_if<PeriodicTarget>(&kind_)) {
        mx = *std::max_element(p->word.begin(), p->word.end());
    } else if (const auto* e = std::get_if<ExplicitPrefixTarget>(&kind_)) {
        mx = e->tail_fill;
        if (!e->prefix.empty())
            mx = std::max(mx, *std::max_element(e->prefix.begin(), e->prefix.end()));
    } else {
        const auto& d = std::get<DoublingBlocksTarget>(kind_);
        mx = std::max(d.block_letters[0], d.block_letters[1]);
        if (!d.head.empty()) mx = std::max(mx, *std::max_element(d.head.begin(), d.head.end()));
    }
    return mx;
}

Letter target_digit(const TargetSpec& t, std::int64_t n) { return t.digit(n); }

} // namespace eahdim
