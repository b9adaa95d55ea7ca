#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace circsys {

/// A violation of unique readability: w occurs at `offset` inside the
/// concatenation uv with both flanks nonempty.
template <class Letter>
struct ReadabilityWitness {
    std::vector<Letter> u, v, w;
    std::int64_t offset;  // 0 < offset < |uv| - |w|... strictly interior
};

template <class Letter>
struct ReadabilityResult {
    bool uniquely_readable = true;
    std::optional<ReadabilityWitness<Letter>> witness;
};

/**
 * A family of equal-length words is uniquely readable when no member can
 * straddle the junction of a concatenation of two members: uv = pws forces
 * p or s empty.  Checks every (u, v, w) triple at every interior offset and
 * returns the first violation as a witness.
 */
template <class Letter>
ReadabilityResult<Letter> check_unique_readability(
    const std::vector<std::vector<Letter>>& words) {
    if (words.empty()) throw std::invalid_argument("check_unique_readability: empty family");
    const std::size_t len = words[0].size();
    if (len == 0) throw std::invalid_argument("check_unique_readability: empty word");
    for (const auto& w : words)
        if (w.size() != len)
            throw std::invalid_argument("check_unique_readability: words differ in length");

    ReadabilityResult<Letter> result;
    for (const auto& u : words) {
        for (const auto& v : words) {
            std::vector<Letter> uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            for (const auto& w : words) {
                for (std::size_t off = 1; off + len < uv.size(); ++off) {
                    if (std::equal(w.begin(), w.end(), uv.begin() + off)) {
                        result.uniquely_readable = false;
                        result.witness = ReadabilityWitness<Letter>{
                            u, v, w, static_cast<std::int64_t>(off)};
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

/// Re-check a witness against the family it came from.
template <class Letter>
bool verify_witness(const ReadabilityWitness<Letter>& wit) {
    std::vector<Letter> uv = wit.u;
    uv.insert(uv.end(), wit.v.begin(), wit.v.end());
    if (wit.offset <= 0) return false;
    if (static_cast<std::size_t>(wit.offset) + wit.w.size() >= uv.size()) return false;
    return std::equal(wit.w.begin(), wit.w.end(), uv.begin() + wit.offset);
}

}  // namespace circsys
