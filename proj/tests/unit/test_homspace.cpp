#include <doctest.h>

#include "bwbforge/homspace.hpp"

using namespace bwbforge;

TEST_CASE("dimension, index and embedding of exceptional spaces")
{
    struct Row {
        const char* name;
        int dim, index;
        const char* embed;
    };
    const Row rows[] = {
        {"E6/P1", 16, 12, "26"},     {"E6/P2", 21, 11, "77"},     {"E6/P3", 25, 9, "350"},
        {"E6/P4", 29, 7, "2924"},    {"E7/P1", 33, 17, "132"},    {"E7/P2", 42, 14, "911"},
        {"E7/P3", 47, 11, "8644"},   {"E7/P4", 53, 8, "365749"},  {"E7/P5", 50, 10, "27663"},
        {"E7/P6", 42, 13, "1538"},   {"E7/P7", 27, 18, "55"},     {"E8/P1", 78, 23, "3874"},
        {"E8/P2", 92, 17, "147249"}, {"E8/P3", 98, 13, "6695999"}, {"E8/P4", 106, 9, "6899079263"},
        {"E8/P5", 104, 11, "146325269"}, {"E8/P6", 97, 14, "2450239"}, {"E8/P7", 83, 19, "30379"},
        {"E8/P8", 57, 29, "247"},    {"F4/P1", 15, 8, "51"},      {"F4/P2", 20, 5, "1273"},
        {"F4/P3", 20, 7, "272"},     {"F4/P4", 15, 11, "25"},     {"G2/P1", 5, 5, "6"},
        {"G2/P2", 5, 3, "13"},
    };
    const auto spaces = exceptional_spaces();
    REQUIRE(spaces.size() == 25);
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const auto& x = spaces[i];
        CHECK(x.name() == rows[i].name);
        CHECK_MESSAGE(x.dimension() == rows[i].dim, x.name());
        CHECK_MESSAGE(x.fano_index() == rows[i].index, x.name());
        CHECK_MESSAGE(x.minimal_embedding_dim() == BigInt(rows[i].embed), x.name());
    }
}

TEST_CASE("gradation")
{
    const auto g2p2 = HomSpace::parse("G2/P2");
    const auto& gr = g2p2.gradation();
    REQUIRE(gr.depth == 2);
    CHECK(gr.pieces[0] == IrrDecomp::single(Weight{0, -1}));
    CHECK(gr.pieces[1] == IrrDecomp::single(Weight{3, -2}));

    const auto g2p1 = HomSpace::parse("G2/P1");
    REQUIRE(g2p1.gradation().depth == 3);
    CHECK(g2p1.gradation().pieces[0] == IrrDecomp::single(Weight{-3, 1}));
    CHECK(g2p1.gradation().pieces[1] == IrrDecomp::single(Weight{-1, 0}));
    CHECK(g2p1.gradation().pieces[2] == IrrDecomp::single(Weight{-2, 1}));

    for (const auto& x : exceptional_spaces()) {
        BigInt total = 0;
        long long dex = 0;
        for (const auto& piece : x.gradation().pieces) {
            total += x.rank(piece);
            dex += x.dex(piece);
        }
        CHECK_MESSAGE(total == x.dimension(), x.name());
        CHECK_MESSAGE(dex == -x.fano_index(), x.name());
    }
    const auto p2 = HomSpace::parse("A2/P1");
    CHECK(p2.gradation().depth == 1);
    CHECK(p2.rank(p2.gradation().pieces[0]) == 2);
}

TEST_CASE("dex tables")
{
    auto check = [](const char* space, std::vector<int> w, int rank, int dex) {
        const auto x = HomSpace::parse(space);
        const Weight lambda(w);
        CHECK_MESSAGE(x.rank(lambda) == rank, space, " ", to_string(lambda));
        CHECK_MESSAGE(x.dex(lambda) == dex, space, " ", to_string(lambda));
    };
    // E6/P4
    check("E6/P4", {1, 0, 0, 0, 0, 0}, 3, 1);
    check("E6/P4", {0, 1, 0, 0, 0, 0}, 2, 1);
    check("E6/P4", {0, 0, 1, 0, 0, 0}, 3, 2);
    check("E6/P4", {0, 0, 0, 0, 1, 0}, 3, 2);
    check("E6/P4", {0, 0, 0, 0, 0, 1}, 3, 1);
    check("E6/P4", {1, 1, 0, 0, 0, 0}, 6, 5);
    check("E6/P4", {0, 1, 1, 0, 0, 0}, 6, 7);
    // E7/P2
    check("E7/P2", {1, 0, 0, 0, 0, 0, 0}, 7, 4);
    check("E7/P2", {0, 0, 1, 0, 0, 0, 0}, 21, 24);
    check("E7/P2", {0, 0, 0, 1, 0, 0, 0}, 35, 60);
    check("E7/P2", {0, 0, 0, 0, 1, 0, 0}, 35, 45);
    check("E7/P2", {0, 0, 0, 0, 0, 1, 0}, 21, 18);
    check("E7/P2", {0, 0, 0, 0, 0, 0, 1}, 7, 3);
    check("E7/P2", {2, 0, 0, 0, 0, 0, 0}, 28, 32);
    check("E7/P2", {0, 0, 0, 0, 0, 0, 2}, 28, 24);
    // E6/P2
    check("E6/P2", {1, 0, 0, 0, 0, 0}, 6, 3);
    check("E6/P2", {0, 0, 1, 0, 0, 0}, 15, 15);
    check("E6/P2", {0, 0, 0, 0, 1, 0}, 15, 15);
    check("E6/P2", {0, 0, 0, 0, 0, 1}, 6, 3);
    // E6/P3
    check("E6/P3", {1, 0, 0, 0, 0, 0}, 2, 1);
    check("E6/P3", {2, 0, 0, 0, 0, 0}, 3, 3);
    check("E6/P3", {3, 0, 0, 0, 0, 0}, 4, 6);
    check("E6/P3", {0, 1, 0, 0, 0, 0}, 5, 3);
    check("E6/P3", {0, 0, 0, 0, 1, 0}, 10, 8);
    check("E6/P3", {0, 0, 0, 0, 0, 1}, 5, 2);
    // single values
    check("E7/P1", {0, 0, 0, 0, 0, 0, 1}, 12, 6);
    check("F4/P1", {0, 0, 0, 1}, 6, 3);
    check("F4/P4", {1, 0, 0, 0}, 7, 7);
    check("F4/P4", {0, 0, 1, 0}, 8, 12);
    check("E6/P4", {0, 0, 0, 1, 0, 0}, 1, 1);
}

TEST_CASE("sum of weights sits on the omitted coordinate")
{
    const auto f4 = HomSpace::parse("F4/P1");
    CHECK(sum_of_weights(f4.levi(), Weight{0, 0, 0, 1}) == Weight{3, 0, 0, 0});
    const auto e7 = HomSpace::parse("E7/P1");
    CHECK(sum_of_weights(e7.levi(), Weight{0, 0, 0, 0, 0, 0, 1}) == Weight{6, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("dex is multiplicative-additive over tensor products")
{
    const auto x = HomSpace::parse("E6/P3");
    const Weight a{1, 0, 0, 0, 0, 0}, b{0, 0, 0, 0, 0, 1};
    IrrDecomp prod = tensor_decompose(x.levi(), IrrDecomp::single(a), IrrDecomp::single(b));
    // dex(F1 ⊗ F2) = dex(F1) rk(F2) + dex(F2) rk(F1)
    CHECK(x.dex(prod) == x.dex(a) * 5 + x.dex(b) * 2);
}

TEST_CASE("closed-form dex agrees with the sum of weights on classical spaces")
{
    // Bound each sweep by the Levi dimension to keep the runtime small.
    int checked = 0;
    for (const char* g : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
                          "D4", "D5", "D6", "D7", "D8"}) {
        const auto& rs = RootSystem::get(g);
        const int r = rs.rank();
        const int bound = r <= 4 ? 3 : (r <= 6 ? 2 : 1);
        for (int k = 1; k <= r; ++k) {
            const HomSpace x(rs, k);
            if (!has_dex_closed_form(x))
                continue;
            std::vector<int> c(r, 0);
            for (;;) {
                Weight lambda(c);
                if (x.rank(lambda) <= 3000) {
                    CHECK_MESSAGE(dex_closed_form(x, lambda) == Rational(x.dex(lambda)), x.name(), " ",
                                  to_string(lambda));
                    ++checked;
                }
                int i = 0;
                while (i < r && c[i] == bound)
                    c[i++] = 0;
                if (i == r)
                    break;
                ++c[i];
            }
        }
    }
    CHECK(checked > 1000);
}
