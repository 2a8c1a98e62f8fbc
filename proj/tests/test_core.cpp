#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/builders.hpp"
#include "segalkit/core.hpp"

using namespace sk;

TEST_CASE("word algebra normal forms") {
    CHECK(word_insert({}, 2) == Word{2});
    CHECK(word_insert({1}, 0) == Word{0, 2});
    CHECK(word_insert({1}, 1) == Word{1, 2});
    CHECK(word_insert({1}, 3) == Word{1, 3});
    CHECK(word_insert({0, 2}, 1) == Word{0, 1, 3});
    CHECK(word_strip({0, 2}, {0}) == Word{1});
    CHECK(word_strip({0, 1, 3}, {1}) == Word{0, 2});
    CHECK(word_meet({0, 1, 3}, {1, 2, 3}) == Word({1, 3}));
}

TEST_CASE("standard simplices") {
    auto d2 = standard_simplex(2);
    CHECK(d2.s->size() == 7);
    CHECK(d2.s->count_dim(0) == 3);
    CHECK(d2.s->count_dim(1) == 3);
    CHECK(d2.s->count_dim(2) == 1);

    auto b2 = boundary(2);
    CHECK(b2.s->size() == 6);

    auto h21 = horn(2, 1);
    CHECK(h21.s->size() == 5);
    CHECK(h21.s->count_dim(1) == 2);
    // edges of V[2,1] are 01 and 12
    CHECK(h21.id_of.count({0, 1}) == 1);
    CHECK(h21.id_of.count({1, 2}) == 1);
    CHECK(h21.id_of.count({0, 2}) == 0);

    CHECK_THROWS_AS(horn(0, 0), InvalidParameter);
    CHECK_THROWS_AS(horn(2, 3), InvalidParameter);
}

// The simplices of Delta[n] in dimension m are the weakly monotone tuples
// [m] -> [n]; the operator algebra on refs must match composition of tuples.
TEST_CASE("operator action agrees with the monotone-tuple oracle") {
    for (int n = 1; n <= 3; ++n) {
        auto dn = standard_simplex(n);
        for (int m = 0; m <= 4; ++m) {
            auto refs = dn.s->all_refs(m);
            CHECK(refs.size() == monotone_maps(m, n).size());
            CHECK(dn.s->count_refs(m) == refs.size());
            for (const Ref& r : refs) {
                auto t = dn.tuple_of_ref(r);
                CHECK(dn.ref_of_tuple(t) == r);
                // faces
                for (int i = 0; i <= m && m > 0; ++i) {
                    auto ft = t;
                    ft.erase(ft.begin() + i);
                    CHECK(dn.s->face(r, i) == dn.ref_of_tuple(ft));
                }
                // general operators
                for (int mm = 0; mm <= 3; ++mm)
                    for (const auto& alpha : monotone_maps(mm, m)) {
                        std::vector<int> comp(mm + 1);
                        for (int j = 0; j <= mm; ++j) comp[j] = t[alpha[j]];
                        CHECK(dn.s->act(r, alpha) == dn.ref_of_tuple(comp));
                    }
            }
        }
    }
}

TEST_CASE("map validation catches non-simplicial assignments") {
    auto d1 = standard_simplex(1);
    auto d0 = standard_simplex(0);
    // collapse: fine
    std::vector<Ref> collapse = {Ref{0, {}}, Ref{0, {}}, Ref{0, {0}}};
    CHECK_NOTHROW(SMap(d1.s, d0.s, collapse));
    // edge sent to the edge but a vertex sent to the wrong endpoint: invalid
    auto d1b = standard_simplex(1);
    std::vector<Ref> bad = {Ref{1, {}}, Ref{1, {}}, Ref{2, {}}};
    CHECK_THROWS_AS(SMap(d1.s, d1b.s, bad), InvalidParameter);
}

TEST_CASE("terminal map") {
    auto d3 = standard_simplex(3);
    auto pt = point_sset();
    SMap t = terminal_map(d3.s, pt);
    CHECK(t.apply(Ref{d3.s->size() - 1, {}}) == Ref{0, Word{0, 1, 2}});
}

TEST_CASE("rejects broken face data") {
    // a "2-simplex" whose faces do not satisfy d_i d_j = d_{j-1} d_i
    std::vector<Simplex> simps;
    simps.push_back({0, {}});
    simps.push_back({0, {}});
    simps.push_back({0, {}});
    simps.push_back({1, {Ref{1, {}}, Ref{0, {}}}});  // 0 -> 1
    simps.push_back({1, {Ref{2, {}}, Ref{1, {}}}});  // 1 -> 2
    simps.push_back({1, {Ref{1, {}}, Ref{0, {}}}});  // 0 -> 1 again (wrong long edge)
    simps.push_back({2, {Ref{4, {}}, Ref{5, {}}, Ref{3, {}}}});
    CHECK_THROWS_AS(SSet("bad", simps), InvalidParameter);
}
