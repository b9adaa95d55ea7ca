#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace circsys {

using Symbol = std::int32_t;
using Word = std::vector<Symbol>;

/**
 * Base symbols are the integer codes 0..size-1; the spacer symbols b and e
 * are the two codes above them, so `sym >= size` tests for a spacer without
 * branching on which one.
 *
 * Rendering uses '0'-'9' then 'A'-'Z' for base symbols ('b' and 'e' are the
 * spacer literals), which caps the printable alphabet at 36 symbols.
 */
class Alphabet {
public:
    explicit Alphabet(int size) : size_(size) {
        if (size < 1) throw std::invalid_argument("Alphabet: size must be >= 1");
    }

    int size() const { return size_; }
    Symbol b() const { return size_; }
    Symbol e() const { return size_ + 1; }

    bool is_base(Symbol s) const { return s >= 0 && s < size_; }
    bool is_spacer(Symbol s) const { return s == b() || s == e(); }
    bool valid(Symbol s) const { return s >= 0 && s <= size_ + 1; }

    char render(Symbol s) const {
        if (s == b()) return 'b';
        if (s == e()) return 'e';
        if (!is_base(s)) throw std::out_of_range("Alphabet::render: bad symbol");
        if (s < 10) return static_cast<char>('0' + s);
        if (s < 36) return static_cast<char>('A' + (s - 10));
        throw std::out_of_range("Alphabet::render: alphabet too large to print");
    }

    Symbol parse(char c) const {
        if (c == 'b') return b();
        if (c == 'e') return e();
        Symbol s;
        if (c >= '0' && c <= '9') s = c - '0';
        else if (c >= 'A' && c <= 'Z') s = 10 + (c - 'A');
        else throw std::invalid_argument(std::string("Alphabet::parse: bad character '") + c + "'");
        if (!is_base(s)) throw std::invalid_argument("Alphabet::parse: symbol outside alphabet");
        return s;
    }

    std::string render_word(const Word& w) const {
        std::string out;
        out.reserve(w.size());
        for (Symbol s : w) out.push_back(render(s));
        return out;
    }

    Word parse_word(const std::string& s) const {
        Word out;
        out.reserve(s.size());
        for (char c : s) out.push_back(parse(c));
        return out;
    }

    bool operator==(const Alphabet& o) const { return size_ == o.size_; }

private:
    int size_;
};

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

}  // namespace circsys
