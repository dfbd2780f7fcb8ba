#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>

#include "eahdim/word.hpp"

namespace eahdim {

// Target kinds. All three expose a deterministic digit(n) for every n >= 1.

struct PeriodicTarget {
    Word word;  // nonempty; digit(n) = word[(n-1) mod len]
};

struct ExplicitPrefixTarget {
    Word prefix;
    Letter tail_fill = 1;  // digit(n) for n beyond the prefix
};

// After the head, a run of 2^(2^1) copies of block_letters[0], then 2^(2^2)
// copies of block_letters[1], then 2^(2^3) of the first again, and so on;
// block k has length 2^(2^k) and the letters alternate.
struct DoublingBlocksTarget {
    Word head;
    std::array<Letter, 2> block_letters{1, 2};
};

class TargetSpec {
public:
    static TargetSpec periodic(Word word);
    static TargetSpec explicit_prefix(Word prefix, Letter tail_fill);
    static TargetSpec doubling_blocks(Word head, Letter first, Letter second);

    Letter digit(std::int64_t n) const;  // n >= 1
    Word prefix(std::int64_t len) const;

    // Period length when the target is periodic, otherwise nullopt.
    std::optional<std::int64_t> period() const;

    // Largest letter the generator can ever emit; used to validate against S.
    Letter max_letter() const;

private:
    TargetSpec() = default;
    std::variant<PeriodicTarget, ExplicitPrefixTarget, DoublingBlocksTarget> kind_;
};

Letter target_digit(const TargetSpec& t, std::int64_t n);

} // namespace eahdim
