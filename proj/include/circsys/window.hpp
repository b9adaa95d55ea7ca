#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circsys/construction.hpp"

namespace circsys {

/**
 * A finite contiguous window of a bi-infinite sequence with a designated
 * origin.  Coordinates run over [lo, hi) with 0 inside.  Windows cut from a
 * construction-sequence word keep their provenance, which principal-block
 * queries use to answer structurally instead of by content scan.
 */
class SampleWindow {
public:
    static SampleWindow from_symbols(std::vector<Symbol> content, std::int64_t origin_index) {
        if (origin_index < 0 || origin_index >= static_cast<std::int64_t>(content.size()))
            throw std::invalid_argument("from_symbols: origin outside content");
        SampleWindow w;
        w.content_ = std::move(content);
        w.origin_ = origin_index;
        return w;
    }

    /// The whole level-`level` word `index`, with the origin placed at
    /// `origin_offset` inside it.
    static SampleWindow from_word(const ConstructionSequence& cs, int level, int index,
                                  std::int64_t origin_offset) {
        const Word& w = cs.word(level, index);
        if (origin_offset < 0 || origin_offset >= static_cast<std::int64_t>(w.size()))
            throw std::invalid_argument("from_word: origin outside word");
        SampleWindow win;
        win.content_ = w;
        win.origin_ = origin_offset;
        win.src_ = &cs;
        win.src_level_ = level;
        win.src_word_ = index;
        return win;
    }

    std::int64_t lo() const { return -origin_; }
    std::int64_t hi() const { return static_cast<std::int64_t>(content_.size()) - origin_; }
    std::int64_t size() const { return static_cast<std::int64_t>(content_.size()); }
    bool contains(std::int64_t a, std::int64_t b) const { return lo() <= a && b <= hi(); }

    Symbol at(std::int64_t coord) const {
        if (coord < lo() || coord >= hi()) throw std::out_of_range("SampleWindow::at");
        return content_[static_cast<std::size_t>(coord + origin_)];
    }

    const std::vector<Symbol>& content() const { return content_; }
    std::int64_t origin_index() const { return origin_; }

    bool has_provenance() const { return src_ != nullptr; }
    const ConstructionSequence& source() const {
        if (!src_) throw std::logic_error("window has no provenance");
        return *src_;
    }
    int source_level() const { return src_level_; }
    int source_word() const { return src_word_; }

private:
    std::vector<Symbol> content_;
    std::int64_t origin_ = 0;
    const ConstructionSequence* src_ = nullptr;
    int src_level_ = -1;
    int src_word_ = -1;
};

struct PrincipalBlock {
    std::int64_t r;  // origin is the r-th symbol of the block [-r, len-r)
    int word;
};

/// r_n and the principal n-subword of the window, when a level-n occurrence
/// covers the origin and fits inside the window.
inline std::optional<PrincipalBlock> principal_block(const SampleWindow& win,
                                                     const ConstructionSequence& cs, int n) {
    const std::int64_t len = to_i64(cs.word_length(n), "word length");
    if (win.has_provenance() && &win.source() == &cs) {
        auto occ = cs.locate(win.source_level(), win.source_word(), win.origin_index(), n);
        if (!occ) return std::nullopt;
        const std::int64_t r = win.origin_index() - occ->pos;
        if (!win.contains(-r, len - r)) return std::nullopt;
        return PrincipalBlock{r, occ->word};
    }
    if (!cs.materialized(n)) throw std::logic_error("principal_block: level not materialized");
    for (std::int64_t r = 0; r < len; ++r) {
        if (!win.contains(-r, len - r)) continue;
        for (int i = 0; i < cs.word_count(n); ++i) {
            const Word& w = cs.word(n, i);
            bool match = true;
            for (std::int64_t t = 0; t < len && match; ++t)
                match = win.at(-r + t) == w[static_cast<std::size_t>(t)];
            if (match) return PrincipalBlock{r, i};
        }
    }
    return std::nullopt;
}

/// Principal data for levels 0..up_to.  Levels where no occurrence covers the
/// origin (or the window is too small) are absent.
inline std::vector<std::optional<PrincipalBlock>> principal_blocks(const SampleWindow& win,
                                                                   const ConstructionSequence& cs,
                                                                   int up_to) {
    std::vector<std::optional<PrincipalBlock>> out;
    for (int n = 0; n <= up_to; ++n) out.push_back(principal_block(win, cs, n));
    return out;
}

struct ParseResult {
    std::vector<std::pair<std::int64_t, int>> occurrences;          // (coord, word index)
    std::vector<std::pair<std::int64_t, std::int64_t>> uncovered;   // complement intervals
};

/**
 * Occurrences of level-n words in the window.  Circular families are parsed
 * by content; odometer families need an alignment anchor (a coordinate where
 * some block starts) because equal-length families are not uniquely readable
 * by content alone.  Occurrences truncated by the window edge are reported as
 * uncovered, never as occurrences.
 */
inline ParseResult parse(const SampleWindow& win, const ConstructionSequence& cs, int n,
                         std::optional<std::int64_t> anchor = std::nullopt) {
    for (std::int64_t c = win.lo(); c < win.hi(); ++c)
        if (!cs.alphabet().valid(win.at(c)))
            throw std::invalid_argument("parse: symbol outside alphabet plus spacers");
    if (!cs.materialized(n)) throw std::logic_error("parse: level not materialized");
    const std::int64_t len = to_i64(cs.word_length(n), "word length");
    if (cs.kind() == SequenceKind::odometer && !anchor)
        throw std::invalid_argument("parse: odometer parsing requires an alignment anchor");

    ParseResult res;
    auto match_at = [&](std::int64_t c) -> int {
        for (int i = 0; i < cs.word_count(n); ++i) {
            const Word& w = cs.word(n, i);
            bool ok = true;
            for (std::int64_t t = 0; t < len && ok; ++t)
                ok = win.at(c + t) == w[static_cast<std::size_t>(t)];
            if (ok) return i;
        }
        return -1;
    };

    std::int64_t step = 1, first = win.lo();
    if (anchor) {
        step = len;
        first = *anchor;
        while (first - step >= win.lo()) first -= step;
    }
    std::int64_t last_end = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t c = first; c + len <= win.hi(); c += step) {
        int idx = match_at(c);
        if (idx < 0) continue;
        if (c < last_end)
            throw std::logic_error("parse: overlapping occurrences (family not uniquely readable)");
        res.occurrences.emplace_back(c, idx);
        last_end = c + len;
    }
    std::int64_t cursor = win.lo();
    for (const auto& [c, idx] : res.occurrences) {
        (void)idx;
        if (c > cursor) res.uncovered.emplace_back(cursor, c);
        cursor = c + len;
    }
    if (cursor < win.hi()) res.uncovered.emplace_back(cursor, win.hi());
    return res;
}

struct BoundaryClassification {
    std::vector<std::int64_t> boundary;  // coords in the stage-n b/e runs of n-subwords
    std::vector<std::int64_t> interior;  // coords covered by level-n structure, not boundary
};

/// Partition of the level-n-covered part of the window into the n-words'
/// own boundary runs and their interior.
inline BoundaryClassification classify_boundary(const SampleWindow& win,
                                                const ConstructionSequence& cs, int n,
                                                std::optional<std::int64_t> anchor = std::nullopt) {
    ParseResult parsed = parse(win, cs, n, anchor);
    BoundaryClassification out;
    std::vector<bool> is_bnd(static_cast<std::size_t>(to_i64(cs.word_length(n))), false);
    for (const auto& [a, b] : cs.boundary_intervals(n))
        for (std::int64_t t = a; t < b; ++t) is_bnd[static_cast<std::size_t>(t)] = true;
    for (const auto& [c, idx] : parsed.occurrences) {
        (void)idx;
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(is_bnd.size()); ++t)
            (is_bnd[static_cast<std::size_t>(t)] ? out.boundary : out.interior).push_back(c + t);
    }
    return out;
}

/// rho_n = (p_n r_n mod q_n) / q_n, the window's stage-n rotation coordinate.
inline Rational rotation_coordinate(const SampleWindow& win, const ConstructionSequence& cs,
                                    int n) {
    auto pb = principal_block(win, cs, n);
    if (!pb) throw std::domain_error("rotation_coordinate: r_n undefined for this window");
    const BigInt& q = cs.coeffs().q(n);
    return Rational(mod_floor(cs.coeffs().p(n) * pb->r, q), q);
}

/// Membership of the origin in the stage-n avoidance sets.  absent = the
/// window cannot decide (structure unresolvable at that level).
struct MaturityReport {
    struct Level {
        int n;
        std::optional<bool> boundary_or_missing;  // E_n
        std::optional<bool> power_edge;           // E^0_n
        std::optional<bool> sub1_edge;            // E^1_n
        std::optional<bool> sub2_edge;            // E^2_n
        bool mature() const {
            return boundary_or_missing && !*boundary_or_missing && power_edge && !*power_edge &&
                   sub1_edge && !*sub1_edge && sub2_edge && !*sub2_edge;
        }
    };
    std::vector<Level> levels;
};

/**
 * Classify the origin against E_n (boundary / no principal block), E^0_n
 * (edge copies of a power), E^1_n (edge 1-subsections), E^2_n (edge
 * 2-subsections), for each n in [n_lo, n_hi].  eps[t] is the cutoff for
 * level t; it defaults to 1/l_t.
 */
inline MaturityReport maturity(const SampleWindow& win, const ConstructionSequence& cs, int n_lo,
                               int n_hi, const std::vector<Rational>& eps = {}) {
    if (cs.kind() != SequenceKind::circular)
        throw std::invalid_argument("maturity: circular sequences only");
    if (!win.has_provenance() || &win.source() != &cs)
        throw std::invalid_argument("maturity: window must come from this sequence");
    const auto& co = cs.coeffs();
    auto eps_at = [&](int t) -> Rational {
        if (t < static_cast<int>(eps.size())) return eps[static_cast<std::size_t>(t)];
        return Rational(1, co.l(t));
    };

    MaturityReport rep;
    const int m = win.source_level();
    const std::int64_t pos = win.origin_index();
    for (int n = n_lo; n <= n_hi && n <= m; ++n) {
        MaturityReport::Level lv;
        lv.n = n;
        // E_n: no principal n-block, or origin inside its b/e runs.
        auto occ = cs.locate(m, win.source_word(), pos, n);
        if (!occ) {
            lv.boundary_or_missing = true;
        } else if (n == 0) {
            lv.boundary_or_missing = false;
        } else {
            std::int64_t rel = pos - occ->pos;
            bool in_bnd = false;
            for (const auto& [a, b] : cs.boundary_intervals(n))
                if (a <= rel && rel < b) { in_bnd = true; break; }
            lv.boundary_or_missing = in_bnd;
        }
        // E^i_n need the containing (n+1)-word.
        if (n + 1 > m) {
            rep.levels.push_back(lv);
            continue;
        }
        auto up = cs.locate(m, win.source_word(), pos, n + 1);
        if (!up) {
            lv.power_edge = false;
            lv.sub1_edge = false;
            lv.sub2_edge = false;
            rep.levels.push_back(lv);
            continue;
        }
        const std::int64_t q = to_i64(co.q(n), "q_n");
        const std::int64_t k = co.k(n), l = co.l(n);
        const std::int64_t rel = pos - up->pos;
        const std::int64_t i2 = rel / (k * l * q);
        const std::int64_t rem = rel % (k * l * q);
        const std::int64_t j1 = rem / (l * q);
        const std::int64_t rem1 = rem % (l * q);
        const std::int64_t ji = to_i64(co.j_index(n, i2));
        // "first or last eps*count units" reads as the first/last
        // floor(eps*count) whole units; fractional counts flag nothing extra.
        const Rational en = eps_at(n);
        auto edge_count = [&](std::int64_t count) {
            Rational scaled = en * count;
            return to_i64(numerator(scaled) / denominator(scaled));
        };
        lv.sub1_edge = j1 < edge_count(k) || j1 >= k - edge_count(k);
        lv.sub2_edge = i2 < edge_count(q) || i2 >= q - edge_count(q);
        if (rem1 < q - ji || rem1 >= q - ji + (l - 1) * q) {
            lv.power_edge = false;  // origin in a b/e run, not in any copy
        } else {
            const std::int64_t copy = (rem1 - (q - ji)) / q;
            lv.power_edge = copy < edge_count(l) || copy >= (l - 1) - edge_count(l);
        }
        rep.levels.push_back(lv);
    }
    return rep;
}

/// Fraction of positions where two equal-length symbol runs differ.
inline Rational dbar(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dbar: length mismatch");
    if (a.empty()) throw std::invalid_argument("dbar: empty interval");
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
    return Rational(diff, static_cast<std::int64_t>(a.size()));
}

inline Rational dbar(const Word& a, const Word& b, std::size_t from, std::size_t to) {
    if (to > a.size() || to > b.size() || from >= to)
        throw std::invalid_argument("dbar: bad interval");
    std::int64_t diff = 0;
    for (std::size_t i = from; i < to; ++i) diff += a[i] != b[i];
    return Rational(diff, static_cast<std::int64_t>(to - from));
}

}  // namespace circsys
