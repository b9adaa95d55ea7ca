#include <catch2/catch_amalgamated.hpp>

#include "circsys/window.hpp"
#include "test_util.hpp"

using namespace circsys;
using namespace circsys::testutil;

TEST_CASE("parse: level-1 occurrences in a full level-2 word") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    auto win = SampleWindow::from_word(cs, 2, 0, 0);
    auto res = parse(win, cs, 1);
    CHECK(res.occurrences.size() == 36);  // k_1 (l_1 - 1) q_1
    // occurrences agree with the structural positions
    auto occs = cs.subword_occurrences(2, 0, 1);
    REQUIRE(occs.size() == res.occurrences.size());
    std::vector<std::pair<std::int64_t, int>> structural;
    for (const auto& o : occs) structural.emplace_back(o.pos, o.word);
    std::sort(structural.begin(), structural.end());
    CHECK(structural == res.occurrences);
}

TEST_CASE("parse: window shorter than q_n has no occurrences") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    const Word& w = cs.word(1, 0);
    auto win = SampleWindow::from_symbols(Word(w.begin(), w.begin() + 4), 0);
    auto res = parse(win, cs, 1);
    CHECK(res.occurrences.empty());
    REQUIRE(res.uncovered.size() == 1);
    CHECK(res.uncovered[0] == std::make_pair<std::int64_t, std::int64_t>(0, 4));
}

TEST_CASE("parse: concatenation of two words gives two occurrences, no phantom") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    Word uv = cs.word(2, 0);
    const Word& v = cs.word(2, 1);
    uv.insert(uv.end(), v.begin(), v.end());
    auto win = SampleWindow::from_symbols(uv, 0);
    auto res = parse(win, cs, 2);
    REQUIRE(res.occurrences.size() == 2);
    CHECK(res.occurrences[0] == std::make_pair<std::int64_t, int>(0, 0));
    CHECK(res.occurrences[1] == std::make_pair<std::int64_t, int>(288, 1));
    CHECK(res.uncovered.empty());
}

TEST_CASE("parse: odometer windows need an anchor; bad symbols rejected") {
    auto co = small_coeffs();
    auto odo = readable_odometer(co, 2);
    auto win = SampleWindow::from_word(odo, 2, 0, 0);
    CHECK_THROWS_AS(parse(win, odo, 1), std::invalid_argument);
    auto res = parse(win, odo, 1, 0);
    CHECK(res.occurrences.size() == 2);  // K_2 / K_1
    CHECK(res.uncovered.empty());

    auto bad = SampleWindow::from_symbols(Word{0, 99}, 0);
    CHECK_THROWS_AS(parse(bad, odo, 1, 0), std::invalid_argument);
}

TEST_CASE("principal blocks: location, coherence, boundary absence") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    SECTION("origin at offset 10 of a full level-2 word has r_2 = 10") {
        auto win = SampleWindow::from_word(cs, 2, 0, 10);
        auto pb = principal_block(win, cs, 2);
        REQUIRE(pb.has_value());
        CHECK(pb->r == 10);
        CHECK(pb->word == 0);
    }
    SECTION("coherence: the r_{n+1} position sits at position r_n inside an n-occurrence") {
        for (std::int64_t off : {7LL, 40LL, 100LL, 200LL}) {
            auto win = SampleWindow::from_word(cs, 2, 0, off);
            auto p1 = principal_block(win, cs, 1);
            auto p2 = principal_block(win, cs, 2);
            REQUIRE(p2.has_value());
            if (!p1) continue;
            // inside the level-2 word, an occurrence of the level-1 word
            // p1->word starts at relative position p2->r - p1->r
            auto occ = cs.locate(2, 0, off, 1);
            REQUIRE(occ.has_value());
            CHECK(occ->pos == p2->r - p1->r);
            CHECK(occ->word == p1->word);
        }
    }
    SECTION("origin inside a b-run: r_1 absent, r_2 present") {
        auto win = SampleWindow::from_word(cs, 2, 0, 0);  // position 0 is a b
        CHECK_FALSE(principal_block(win, cs, 1).has_value());
        CHECK(principal_block(win, cs, 2).has_value());
    }
    SECTION("content-scan path agrees with the structural path") {
        for (std::int64_t off : {0LL, 10LL, 150LL}) {
            auto wordwin = SampleWindow::from_word(cs, 2, 0, off);
            auto symwin = SampleWindow::from_symbols(cs.word(2, 0), off);
            for (int n = 0; n <= 2; ++n) {
                auto a = principal_block(wordwin, cs, n);
                auto b = principal_block(symwin, cs, n);
                REQUIRE(a.has_value() == b.has_value());
                if (a) {
                    CHECK(a->r == b->r);
                    CHECK(a->word == b->word);
                }
            }
        }
    }
}

TEST_CASE("rotation coordinate") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    SECTION("r_1 = 0 gives rho_1 = 0") {
        // origin at the start of a level-1 occurrence: first copy begins at q_1
        auto win = SampleWindow::from_word(cs, 2, 0, 6);
        auto pb = principal_block(win, cs, 1);
        REQUIRE(pb);
        REQUIRE(pb->r == 0);
        CHECK(rotation_coordinate(win, cs, 1) == 0);
    }
    SECTION("r_2 = 10 gives 202/288") {
        auto win = SampleWindow::from_word(cs, 2, 0, 10);
        CHECK(rotation_coordinate(win, cs, 2) == Rational(202, 288));
    }
    SECTION("|rho_2 - rho_1| < 2/q_1 wherever both are defined (exhaustive)") {
        for (std::int64_t off = 0; off < 288; ++off) {
            auto win = SampleWindow::from_word(cs, 2, 0, off);
            if (!principal_block(win, cs, 1)) continue;
            Rational r1 = rotation_coordinate(win, cs, 1);
            Rational r2 = rotation_coordinate(win, cs, 2);
            CHECK(abs(r2 - r1) < Rational(2, co.q(1)));
        }
    }
    SECTION("r_n undefined is an error") {
        auto win = SampleWindow::from_word(cs, 2, 0, 0);
        CHECK_THROWS_AS(rotation_coordinate(win, cs, 1), std::domain_error);
    }
}

TEST_CASE("maturity classification") {
    auto co = small_coeffs();
    auto cs = readable_circular(co, 2);
    SECTION("first copy of first power is a power edge at eps = 1/3") {
        auto win = SampleWindow::from_word(cs, 2, 0, 6);  // position q_1
        auto rep = maturity(win, cs, 1, 1, {Rational(0), Rational(1, 3)});
        REQUIRE(rep.levels.size() == 1);
        REQUIRE(rep.levels[0].power_edge.has_value());
        CHECK(*rep.levels[0].power_edge);
    }
    SECTION("origin in the boundary is an E_n member") {
        auto win = SampleWindow::from_word(cs, 2, 0, 0);  // a b of the level-2 skeleton
        auto rep = maturity(win, cs, 1, 2);
        CHECK(*rep.levels[0].boundary_or_missing);  // no level-1 block at all
        CHECK(*rep.levels[1].boundary_or_missing);  // inside the level-2 boundary
    }
    SECTION("counting bound: non-mature fraction over a full level-2 word") {
        // eps chosen so eps*l, eps*k, eps*q are integers: no rounding slop.
        auto co4 = CoefficientSystem::derive({4, 4}, {4, 4});
        ConstructionSequence::Prewords pw{{{0, 1, 2, 1}, {2, 1, 0, 1}}, {{0, 1, 1, 0}}};
        auto cs4 = ConstructionSequence::circular(Alphabet(3), co4, pw);
        const Rational eps(1, 4);
        const std::int64_t q2 = to_i64(co4.q(2));
        std::int64_t not_mature = 0;
        for (std::int64_t off = 0; off < q2; ++off) {
            auto win = SampleWindow::from_word(cs4, 2, 0, off);
            auto rep = maturity(win, cs4, 1, 2, {eps, eps});
            bool ok = !*rep.levels[0].boundary_or_missing &&
                      !*rep.levels[1].boundary_or_missing && rep.levels[0].power_edge &&
                      !*rep.levels[0].power_edge && !*rep.levels[0].sub1_edge &&
                      !*rep.levels[0].sub2_edge;
            if (!ok) ++not_mature;
        }
        // boundary mass of stages 1 and 2 plus 6 eps q_2 edge positions
        Rational bound = Rational(1, co4.l(0)) + Rational(1, co4.l(1)) + 6 * eps;
        CHECK(Rational(not_mature, q2) <= bound);
        CHECK(not_mature > 0);
    }
}

TEST_CASE("dbar") {
    Alphabet a(2);
    SECTION("identical words have distance 0") {
        Word w = a.parse_word("b00b11");
        CHECK(dbar(w, w) == 0);
    }
    SECTION("b00b11 vs b01b11 differ in one place") {
        CHECK(dbar(a.parse_word("b00b11"), a.parse_word("b01b11")) == Rational(1, 6));
    }
    SECTION("restriction bound: dbar_I >= delta dbar_J for J inside I") {
        auto g = rng();
        std::uniform_int_distribution<int> sym(0, 2);
        for (int t = 0; t < 50; ++t) {
            Word u, v;
            for (int i = 0; i < 60; ++i) {
                u.push_back(sym(g));
                v.push_back(sym(g));
            }
            std::uniform_int_distribution<std::size_t> from(0, 30);
            std::size_t a0 = from(g), b0 = a0 + 1 + from(g);
            Rational whole = dbar(u, v);
            Rational part = dbar(u, v, a0, b0);
            Rational delta(static_cast<std::int64_t>(b0 - a0), 60);
            CHECK(whole >= delta * part);
        }
    }
    SECTION("length mismatch is an error") {
        CHECK_THROWS_AS(dbar(Word{0}, Word{0, 1}), std::invalid_argument);
    }
}
