#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circsys/alphabet.hpp"
#include "circsys/coefficients.hpp"
#include "circsys/numbers.hpp"
#include "circsys/readability.hpp"

namespace circsys {

inline std::int64_t to_i64(const BigInt& v, const char* what = "value") {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

/**
 * The circular operator at level n.  Given k_n words of length q_n it forms
 *
 *   prod_{i=0}^{q-1} prod_{j=0}^{k-1}  b^(q - j_i)  w_j^(l-1)  e^(j_i)
 *
 * with j_i = p_n^{-1} i mod q_n, producing a word of length
 * k_n l_n q_n^2 = q_{n+1}.  At level 0 (q = 1, j_0 = 0) this degenerates to
 * prod_j b w_j^(l-1).
 */
inline Word circular_op(const Alphabet& alpha, const CoefficientSystem& cs, int n,
                        const std::vector<Word>& args) {
    const std::int64_t k = cs.k(n), l = cs.l(n);
    const std::int64_t q = to_i64(cs.q(n), "q_n");
    if (static_cast<std::int64_t>(args.size()) != k)
        throw std::invalid_argument("circular_op: expected k_n arguments");
    for (const Word& w : args)
        if (static_cast<std::int64_t>(w.size()) != q)
            throw std::invalid_argument("circular_op: argument length != q_n");

    Word out;
    out.reserve(to_i64(cs.q(n + 1), "q_{n+1}"));
    for (std::int64_t i = 0; i < q; ++i) {
        const std::int64_t ji = to_i64(cs.j_index(n, i));
        for (std::int64_t j = 0; j < k; ++j) {
            out.insert(out.end(), q - ji, alpha.b());
            for (std::int64_t c = 0; c < l - 1; ++c)
                out.insert(out.end(), args[j].begin(), args[j].end());
            out.insert(out.end(), ji, alpha.e());
        }
    }
    return out;
}

/**
 * Closed form for the reverse of a circular word built from `args`:
 *
 *   prod_{i=0}^{q-1} prod_{j=0}^{k-1}  e^(q - j_{i+1})  rev(w_{k-1-j})^(l-1)  b^(j_{i+1})
 *
 * with j_q = 0.  Equals reversed(circular_op(args)); the literal reversal is
 * the oracle for that equality in the tests.
 */
inline Word reverse_circular_op(const Alphabet& alpha, const CoefficientSystem& cs, int n,
                                const std::vector<Word>& args) {
    const std::int64_t k = cs.k(n), l = cs.l(n);
    const std::int64_t q = to_i64(cs.q(n), "q_n");
    if (static_cast<std::int64_t>(args.size()) != k)
        throw std::invalid_argument("reverse_circular_op: expected k_n arguments");
    std::vector<Word> rev_args;
    rev_args.reserve(args.size());
    for (const Word& w : args) rev_args.push_back(reversed(w));

    Word out;
    out.reserve(to_i64(cs.q(n + 1), "q_{n+1}"));
    for (std::int64_t i = 0; i < q; ++i) {
        // The i+1 = q term comes from the first 2-subsection of the forward
        // word, where the substitution q - j_i = j_{q-i} does not apply: the
        // reversed word must end in b^q, so that term takes j = q.
        const std::int64_t ji1 = (i + 1 == q) ? q : to_i64(cs.j_index(n, i + 1));
        for (std::int64_t j = 0; j < k; ++j) {
            out.insert(out.end(), q - ji1, alpha.e());
            const Word& rw = rev_args[k - 1 - j];
            for (std::int64_t c = 0; c < l - 1; ++c) out.insert(out.end(), rw.begin(), rw.end());
            out.insert(out.end(), ji1, alpha.b());
        }
    }
    return out;
}

enum class SequenceKind { odometer, circular };

/// Occurrence of a one-level-down word inside a word: start position,
/// argument slot, and the child's word index.
struct ChildOcc {
    std::int64_t pos;
    int slot;
    int word;
};

/// Occurrence of a level-n subword inside a level-m word.  The marker lists
/// argument slots most-junior-level-first: <j_n, ..., j_{m-1}>.
struct SubwordOcc {
    std::int64_t pos;
    int word;
    std::vector<int> marker;
};

/**
 * A leveled family of words.  Level 0 is the alphabet; level t+1 is built
 * from level t by the preword tuples: plain concatenation for the odometer
 * kind, the circular operator for the circular kind.  Every level-n word has
 * length K_n (odometer) or q_n (circular).
 *
 * Words materialize eagerly while their length stays at or below
 * `materialize_cap`; beyond that only lazy positional access is available.
 *
 * Immutable after construction; all queries are const and thread-safe.
 */
class ConstructionSequence {
public:
    using Prewords = std::vector<std::vector<std::vector<int>>>;  // [level-1][tuple][slot]

    static ConstructionSequence odometer(Alphabet alpha, CoefficientSystem coeffs,
                                         Prewords prewords,
                                         std::int64_t materialize_cap = 1000000) {
        return ConstructionSequence(SequenceKind::odometer, std::move(alpha), std::move(coeffs),
                                    std::move(prewords), materialize_cap);
    }

    static ConstructionSequence circular(Alphabet alpha, CoefficientSystem coeffs,
                                         Prewords prewords,
                                         std::int64_t materialize_cap = 1000000) {
        return ConstructionSequence(SequenceKind::circular, std::move(alpha), std::move(coeffs),
                                    std::move(prewords), materialize_cap);
    }

    SequenceKind kind() const { return kind_; }
    const Alphabet& alphabet() const { return alpha_; }
    const CoefficientSystem& coeffs() const { return coeffs_; }
    std::int64_t materialize_cap() const { return cap_; }

    /// Highest built level.
    int top_level() const { return static_cast<int>(prewords_.size()); }

    int word_count(int n) const {
        check_level(n);
        return n == 0 ? alpha_.size() : static_cast<int>(prewords_[n - 1].size());
    }

    /// Tuples of level-(n-1) word indices that build level n.
    const std::vector<std::vector<int>>& prewords_at(int n) const {
        if (n < 1 || n > top_level()) throw std::out_of_range("prewords_at: bad level");
        return prewords_[n - 1];
    }

    BigInt word_length(int n) const {
        check_level(n);
        return kind_ == SequenceKind::circular ? coeffs_.q(n) : coeffs_.big_k(n);
    }

    bool materialized(int n) const {
        check_level(n);
        return n == 0 || !words_[n - 1].empty();
    }

    const Word& word(int n, int i) const {
        check_word(n, i);
        if (n == 0) return level0_[i];
        if (words_[n - 1].empty())
            throw std::logic_error("word: level not materialized; use symbol_at");
        return words_[n - 1][i];
    }

    /// Positional access without materializing: descends the construction one
    /// level at a time, so it works for words far beyond the cap.
    Symbol symbol_at(int n, int i, const BigInt& pos) const {
        check_word(n, i);
        if (pos < 0 || pos >= word_length(n)) throw std::out_of_range("symbol_at: position");
        BigInt p = pos;
        int level = n, idx = i;
        while (level > 0) {
            const std::vector<int>& tuple = prewords_[level - 1][idx];
            const int t = level - 1;
            if (kind_ == SequenceKind::odometer) {
                BigInt kk = coeffs_.big_k(t);
                idx = tuple[static_cast<std::size_t>(to_i64(p / kk))];
                p %= kk;
            } else {
                const BigInt q = coeffs_.q(t);
                const BigInt sub2 = q * coeffs_.k(t) * coeffs_.l(t);  // 2-subsection length
                const BigInt sub1 = q * coeffs_.l(t);                 // 1-subsection length
                BigInt i2 = p / sub2;
                BigInt rem = p % sub2;
                std::int64_t j = to_i64(rem / sub1);
                BigInt rem1 = rem % sub1;
                BigInt ji = coeffs_.j_index(t, i2);
                if (rem1 < q - ji) return alpha_.b();
                if (rem1 >= q - ji + (coeffs_.l(t) - 1) * q) return alpha_.e();
                idx = tuple[static_cast<std::size_t>(j)];
                p = (rem1 - (q - ji)) % q;
            }
            --level;
        }
        if (p != 0) throw std::logic_error("symbol_at: descent error");
        return static_cast<Symbol>(idx);
    }

    /// Start positions of the level-(n-1) words inside level-n word i
    /// (structure only; valid for any word whose length fits 64 bits).
    std::vector<ChildOcc> child_occurrences(int n, int i) const {
        check_word(n, i);
        if (n < 1) throw std::invalid_argument("child_occurrences: level 0 has no children");
        const std::vector<int>& tuple = prewords_[n - 1][i];
        const int t = n - 1;
        std::vector<ChildOcc> out;
        if (kind_ == SequenceKind::odometer) {
            const std::int64_t kk = to_i64(coeffs_.big_k(t), "K_t");
            for (std::size_t j = 0; j < tuple.size(); ++j)
                out.push_back({static_cast<std::int64_t>(j) * kk, static_cast<int>(j), tuple[j]});
        } else {
            const std::int64_t q = to_i64(coeffs_.q(t), "q_t");
            const std::int64_t k = coeffs_.k(t), l = coeffs_.l(t);
            out.reserve(static_cast<std::size_t>(q) * k * (l - 1));
            for (std::int64_t i2 = 0; i2 < q; ++i2) {
                const std::int64_t ji = to_i64(coeffs_.j_index(t, i2));
                const std::int64_t base2 = i2 * k * l * q;
                for (std::int64_t j = 0; j < k; ++j) {
                    const std::int64_t copy0 = base2 + j * l * q + (q - ji);
                    for (std::int64_t c = 0; c < l - 1; ++c)
                        out.push_back({copy0 + c * q, static_cast<int>(j),
                                       tuple[static_cast<std::size_t>(j)]});
                }
            }
        }
        return out;
    }

    /// All level-n subword occurrences of level-m word i, with genetic
    /// markers.  Count is prod_{t=n}^{m-1} q_t (l_t - 1) per marker times
    /// prod k_t markers (circular) or K_m / K_n (odometer).
    std::vector<SubwordOcc> subword_occurrences(int m, int i, int n) const {
        check_word(m, i);
        if (n < 0 || n > m) throw std::invalid_argument("subword_occurrences: bad sub level");
        if (n == m) return {SubwordOcc{0, i, {}}};
        std::vector<SubwordOcc> out;
        for (const ChildOcc& c : child_occurrences(m, i)) {
            std::vector<SubwordOcc> inner = subword_occurrences(m - 1, c.word, n);
            for (SubwordOcc& s : inner) {
                s.pos += c.pos;
                s.marker.push_back(c.slot);
                out.push_back(std::move(s));
            }
        }
        return out;
    }

    /// The b/e runs a circular word acquires at its own stage, as half-open
    /// intervals.  Odometer words and level-0 words have none.
    std::vector<std::pair<std::int64_t, std::int64_t>> boundary_intervals(int n) const {
        check_level(n);
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        if (kind_ == SequenceKind::odometer || n == 0) return out;
        const int t = n - 1;
        const std::int64_t q = to_i64(coeffs_.q(t), "q_t");
        const std::int64_t k = coeffs_.k(t), l = coeffs_.l(t);
        for (std::int64_t i2 = 0; i2 < q; ++i2) {
            const std::int64_t ji = to_i64(coeffs_.j_index(t, i2));
            const std::int64_t base2 = i2 * k * l * q;
            for (std::int64_t j = 0; j < k; ++j) {
                const std::int64_t base1 = base2 + j * l * q;
                if (ji < q) out.emplace_back(base1, base1 + (q - ji));
                if (ji > 0) out.emplace_back(base1 + l * q - ji, base1 + l * q);
            }
        }
        return out;
    }

    /// The three subscales of a circular level-n word (n >= 1): scale 2 gives
    /// the q_{n-1} outer sections, scale 1 the k q_{n-1} middle sections,
    /// scale 0 the power blocks w_j^(l-1).
    std::vector<std::pair<std::int64_t, std::int64_t>> subsections(int n, int scale) const {
        check_level(n);
        if (kind_ != SequenceKind::circular || n < 1)
            throw std::invalid_argument("subsections: circular word of level >= 1 required");
        if (scale < 0 || scale > 2) throw std::invalid_argument("subsections: scale in {0,1,2}");
        const int t = n - 1;
        const std::int64_t q = to_i64(coeffs_.q(t), "q_t");
        const std::int64_t k = coeffs_.k(t), l = coeffs_.l(t);
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (std::int64_t i2 = 0; i2 < q; ++i2) {
            const std::int64_t base2 = i2 * k * l * q;
            if (scale == 2) {
                out.emplace_back(base2, base2 + k * l * q);
                continue;
            }
            const std::int64_t ji = to_i64(coeffs_.j_index(t, i2));
            for (std::int64_t j = 0; j < k; ++j) {
                const std::int64_t base1 = base2 + j * l * q;
                if (scale == 1)
                    out.emplace_back(base1, base1 + l * q);
                else
                    out.emplace_back(base1 + (q - ji), base1 + (q - ji) + (l - 1) * q);
            }
        }
        return out;
    }

    /// Locate the level-n subword containing position `pos` of level-m word i.
    /// Returns nothing when the position falls in a boundary run at some stage
    /// above n.  The marker is most-junior-level-first.
    std::optional<SubwordOcc> locate(int m, int i, std::int64_t pos, int n) const {
        check_word(m, i);
        if (n < 0 || n > m) throw std::invalid_argument("locate: bad sub level");
        if (pos < 0 || BigInt(pos) >= word_length(m)) throw std::out_of_range("locate: position");
        std::int64_t start = 0;
        int level = m, idx = i;
        std::vector<int> marker_top_down;
        while (level > n) {
            const std::vector<int>& tuple = prewords_[level - 1][idx];
            const int t = level - 1;
            const std::int64_t rel = pos - start;
            if (kind_ == SequenceKind::odometer) {
                const std::int64_t kk = to_i64(coeffs_.big_k(t), "K_t");
                const std::int64_t j = rel / kk;
                marker_top_down.push_back(static_cast<int>(j));
                idx = tuple[static_cast<std::size_t>(j)];
                start += j * kk;
            } else {
                const std::int64_t q = to_i64(coeffs_.q(t), "q_t");
                const std::int64_t k = coeffs_.k(t), l = coeffs_.l(t);
                const std::int64_t i2 = rel / (k * l * q);
                const std::int64_t rem = rel % (k * l * q);
                const std::int64_t j = rem / (l * q);
                const std::int64_t rem1 = rem % (l * q);
                const std::int64_t ji = to_i64(coeffs_.j_index(t, i2));
                if (rem1 < q - ji || rem1 >= q - ji + (l - 1) * q) return std::nullopt;
                const std::int64_t copy = (rem1 - (q - ji)) / q;
                marker_top_down.push_back(static_cast<int>(j));
                idx = tuple[static_cast<std::size_t>(j)];
                start += i2 * (k * l * q) + j * (l * q) + (q - ji) + copy * q;
            }
            --level;
        }
        SubwordOcc occ;
        occ.pos = start;
        occ.word = idx;
        occ.marker.assign(marker_top_down.rbegin(), marker_top_down.rend());
        return occ;
    }

    /// Readability of the level-n word family over the base alphabet.
    ReadabilityResult<Symbol> readability(int n) const {
        check_level(n);
        if (!materialized(n)) throw std::logic_error("readability: level not materialized");
        std::vector<Word> family;
        for (int i = 0; i < word_count(n); ++i) family.push_back(word(n, i));
        return check_unique_readability(family);
    }

    /// Strong readability: the preword tuples building level n, read as words
    /// over the index alphabet of level n-1.
    ReadabilityResult<int> strong_readability(int n) const {
        if (n < 1 || n > top_level()) throw std::out_of_range("strong_readability: bad level");
        return check_unique_readability(prewords_[n - 1]);
    }

private:
    ConstructionSequence(SequenceKind kind, Alphabet alpha, CoefficientSystem coeffs,
                         Prewords prewords, std::int64_t cap)
        : kind_(kind), alpha_(std::move(alpha)), coeffs_(std::move(coeffs)),
          prewords_(std::move(prewords)), cap_(cap) {
        if (static_cast<int>(prewords_.size()) > coeffs_.top_level())
            throw std::invalid_argument("construction: more levels than derived coefficients");
        for (int i = 0; i < alpha_.size(); ++i) level0_.push_back(Word{static_cast<Symbol>(i)});
        words_.resize(prewords_.size());
        for (int n = 1; n <= top_level(); ++n) {
            const auto& tuples = prewords_[n - 1];
            if (tuples.empty()) throw std::invalid_argument("construction: empty level");
            for (const auto& tup : tuples) {
                if (static_cast<std::int64_t>(tup.size()) != coeffs_.k(n - 1))
                    throw std::invalid_argument("construction: preword arity != k_n");
                for (int idx : tup)
                    if (idx < 0 || idx >= word_count(n - 1))
                        throw std::invalid_argument("construction: preword index out of range");
            }
            if (word_length(n) <= cap_ && materialized(n - 1)) {
                for (const auto& tup : tuples) {
                    std::vector<Word> args;
                    args.reserve(tup.size());
                    for (int idx : tup) args.push_back(word(n - 1, idx));
                    if (kind_ == SequenceKind::circular) {
                        words_[n - 1].push_back(circular_op(alpha_, coeffs_, n - 1, args));
                    } else {
                        Word w;
                        w.reserve(to_i64(word_length(n), "K_n"));
                        for (const Word& a : args) w.insert(w.end(), a.begin(), a.end());
                        words_[n - 1].push_back(std::move(w));
                    }
                }
            }
        }
    }

    void check_level(int n) const {
        if (n < 0 || n > top_level()) throw std::out_of_range("level out of range");
    }
    void check_word(int n, int i) const {
        check_level(n);
        if (i < 0 || i >= word_count(n)) throw std::out_of_range("word index out of range");
    }

    SequenceKind kind_;
    Alphabet alpha_;
    CoefficientSystem coeffs_;
    Prewords prewords_;
    std::int64_t cap_;
    std::vector<Word> level0_;
    std::vector<std::vector<Word>> words_;  // [level-1][index]; empty when beyond cap
};

/// The canonical one-word-per-level circular sequence over the alphabet {*}:
/// the symbolic stand-in for the underlying rotation.
inline ConstructionSequence circle_factor_sequence(const CoefficientSystem& coeffs, int levels,
                                                   std::int64_t cap = 1000000) {
    ConstructionSequence::Prewords pw;
    for (int n = 0; n < levels; ++n)
        pw.push_back({std::vector<int>(static_cast<std::size_t>(coeffs.k(n)), 0)});
    return ConstructionSequence::circular(Alphabet(1), coeffs, std::move(pw), cap);
}

/// Odometer counterpart with a single word per level (the timing factor).
inline ConstructionSequence trivial_odometer_sequence(const CoefficientSystem& coeffs, int levels,
                                                      std::int64_t cap = 1000000) {
    ConstructionSequence::Prewords pw;
    for (int n = 0; n < levels; ++n)
        pw.push_back({std::vector<int>(static_cast<std::size_t>(coeffs.k(n)), 0)});
    return ConstructionSequence::odometer(Alphabet(1), coeffs, std::move(pw), cap);
}

}  // namespace circsys
