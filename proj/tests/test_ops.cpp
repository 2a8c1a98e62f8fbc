#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "segalkit/builders.hpp"
#include "segalkit/ops.hpp"

using namespace sk;

namespace {

// independent oracle: weakly monotone (m+1)-tuples in {0..n}
std::size_t monotone_count(int m, int n) { return monotone_maps(m, n).size(); }

}  // namespace

TEST_CASE("hom enumeration counts against the monotone oracle") {
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 3; ++n) {
            auto A = standard_simplex(m);
            auto X = standard_simplex(n);
            CHECK(hom_enumerate(A.s, X.s).size() == monotone_count(m, n));
        }
    auto d0 = standard_simplex(0);
    auto b2 = boundary(2);
    CHECK(hom_enumerate(d0.s, b2.s).size() == 3);  // vertices
}

TEST_CASE("products") {
    auto d1 = standard_simplex(1);
    auto d0 = standard_simplex(0);

    SUBCASE("unit law") {
        auto P = product({d1.s, d0.s});
        CHECK(P.prod->size() == 3);
        auto iso = find_isomorphism(P.prod, d1.s);
        CHECK(iso.has_value());
    }
    SUBCASE("square") {
        auto P = product({d1.s, d1.s});
        CHECK(P.prod->size() == 11);
        CHECK(P.prod->count_dim(0) == 4);
        CHECK(P.prod->count_dim(1) == 5);
        CHECK(P.prod->count_dim(2) == 2);
        // shuffle-product oracle: nondeg m-simplices of Delta[1]x Delta[1]
        // correspond to monotone injective lattice paths; cross-check Hom
        // bijection Hom(T, AxB) = Hom(T,A) x Hom(T,B) on T = Delta[2]
        auto T = standard_simplex(2);
        auto into_prod = hom_enumerate(T.s, P.prod);
        auto ha = hom_enumerate(T.s, d1.s);
        CHECK(into_prod.size() == ha.size() * ha.size());
        // and the pairing is the projection pairing, bijectively
        std::set<std::pair<std::vector<Ref>, std::vector<Ref>>> seen;
        for (const auto& f : into_prod)
            seen.insert({compose(P.projections[0], f).assignment(),
                         compose(P.projections[1], f).assignment()});
        CHECK(seen.size() == into_prod.size());
    }
    SUBCASE("triple product of points") {
        auto P = product({d0.s, d0.s, d0.s});
        CHECK(P.prod->size() == 1);
    }
}

TEST_CASE("pushouts and quotients") {
    auto d1 = standard_simplex(1);
    auto b1 = boundary(1);

    SUBCASE("circle from two arcs") {
        // glue two copies of Delta[1] along their boundaries crosswise
        SMap i0 = subset_inclusion(b1, d1);
        auto P = pushout(i0, i0);
        CHECK(P.p->count_dim(0) == 2);
        CHECK(P.p->count_dim(1) == 2);
    }
    SUBCASE("pushout along identity") {
        auto d2 = standard_simplex(2);
        SMap id = SMap::identity(d2.s);
        auto P = pushout(id, id);
        auto iso = find_isomorphism(P.p, d2.s);
        CHECK(iso.has_value());
    }
    SUBCASE("collapsing both endpoints of an edge gives one vertex, one edge") {
        auto pt = point_sset();
        SMap collapse(b1.s, pt, {Ref{0, {}}, Ref{0, {}}});
        SMap incl = subset_inclusion(b1, d1);
        auto P = pushout(incl, collapse);
        CHECK(P.p->count_dim(0) == 1);
        CHECK(P.p->count_dim(1) == 1);
    }
    SUBCASE("collapsing a 2-simplex to a point forces degeneracy") {
        auto d2 = standard_simplex(2);
        auto pt = point_sset();
        SMap id = SMap::identity(d2.s);
        SMap t = terminal_map(d2.s, pt);
        auto P = pushout(id, t);
        CHECK(P.p->size() == 1);
        CHECK(P.p->dim_of(0) == 0);
    }
    SUBCASE("quotient by no relations is the identity") {
        auto h = horn(3, 1);
        auto Q = quotient(h.s, {});
        CHECK(Q.to_quotient.is_isomorphism());
    }
}

TEST_CASE("isomorphism search") {
    auto d1 = standard_simplex(1);
    SUBCASE("identity witness") {
        auto iso = find_isomorphism(d1.s, d1.s);
        REQUIRE(iso.has_value());
        CHECK(iso->is_isomorphism());
    }
    SUBCASE("horns V[2,0] vs V[2,1] are not isomorphic") {
        auto a = horn(2, 0);
        auto b = horn(2, 1);
        CHECK_FALSE(find_isomorphism(a.s, b.s).has_value());
    }
    SUBCASE("vertex counts differ") {
        auto two = discrete_sset(2);
        auto one = discrete_sset(1);
        CHECK_FALSE(find_isomorphism(two, one).has_value());
    }
}

TEST_CASE("skeleton") {
    auto d2 = standard_simplex(2);
    SUBCASE("1-skeleton of the triangle is its boundary") {
        auto sk1 = skeleton(d2.s, 1);
        auto b2 = boundary(2);
        CHECK(find_isomorphism(sk1.sk, b2.s).has_value());
    }
    SUBCASE("skeleton at top dimension is everything") {
        auto sk2 = skeleton(d2.s, 2);
        CHECK(sk2.inclusion.is_isomorphism());
    }
    SUBCASE("0-skeleton of an edge") {
        auto d1 = standard_simplex(1);
        auto sk0 = skeleton(d1.s, 0);
        CHECK(sk0.sk->size() == 2);
    }
}

TEST_CASE("pushout universal property on sample cones") {
    // pushout of Delta[1] <- dDelta[1] -> Delta[1] (circle); check that maps
    // out of the pushout to a small test object correspond exactly to
    // compatible pairs of maps out of the legs.
    auto d1 = standard_simplex(1);
    auto b1 = boundary(1);
    SMap i = subset_inclusion(b1, d1);
    auto P = pushout(i, i);
    auto T = standard_simplex(2);
    auto from_p = hom_enumerate(P.p, T.s);
    auto from_leg = hom_enumerate(d1.s, T.s);
    std::size_t pairs = 0;
    for (const auto& u : from_leg)
        for (const auto& v : from_leg)
            if (compose(u, i) == compose(v, i)) ++pairs;
    CHECK(from_p.size() == pairs);
    // injectivity of the comparison
    std::set<std::pair<std::vector<Ref>, std::vector<Ref>>> seen;
    for (const auto& h : from_p)
        seen.insert({compose(h, P.from_b).assignment(),
                     compose(h, P.from_c).assignment()});
    CHECK(seen.size() == from_p.size());
}

TEST_CASE("budget failures are loud") {
    Budget tiny;
    tiny.max_steps = 10;
    auto d2 = standard_simplex(2);
    CHECK_THROWS_AS(hom_enumerate(d2.s, d2.s, tiny), BudgetExceeded);
}
