#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/builders.hpp"
#include "segalkit/lifting.hpp"

using namespace sk;

TEST_CASE("lifts against the empty domain are plain sections over the point") {
    // empty -> Delta[0] on the left, Delta[1] -> point on the right: a lift
    // picks any vertex of Delta[1], so there are exactly two.
    auto pt = standard_simplex(0);
    auto d1 = standard_simplex(1);
    auto e = empty_sset();
    SMap i(e, pt.s, {});
    SMap f = terminal_map(d1.s, pt.s);
    SMap top(e, d1.s, {});
    SMap bottom = SMap::identity(pt.s);
    auto lifts = solve_lifting(LiftingSquare(i, f, top, bottom));
    CHECK(lifts.size() == 2);
}

TEST_CASE("pinned endpoints leave exactly one lift") {
    // boundary(1) -> Delta[1] on the left with the identity-on-endpoints top
    // map: only the identity diagonal works.
    auto b1 = boundary(1);
    auto d1 = standard_simplex(1);
    SMap i = subset_inclusion(b1, d1);
    auto pt = point_sset();
    SMap f = terminal_map(d1.s, pt);
    SMap top(b1.s, d1.s, {d1.ref_of_tuple({0}), d1.ref_of_tuple({1})});
    SMap bottom = terminal_map(d1.s, pt);
    auto lifts = solve_lifting(LiftingSquare(i, f, top, bottom));
    REQUIRE(lifts.size() == 1);
    CHECK(lifts[0].is_identity());
}

TEST_CASE("no lift into a discrete target across a real edge") {
    auto b1 = boundary(1);
    auto d1 = standard_simplex(1);
    SMap i = subset_inclusion(b1, d1);
    auto two = discrete_sset(2);
    auto pt = point_sset();
    SMap f = terminal_map(two, pt);
    // endpoints land on distinct points: the edge cannot follow
    SMap top(b1.s, two, {Ref{0, {}}, Ref{1, {}}});
    SMap bottom = terminal_map(d1.s, pt);
    CHECK(solve_lifting(LiftingSquare(i, f, top, bottom)).empty());
}

TEST_CASE("rlp against horns separates Kan from non-Kan maps") {
    auto pt = point_sset();
    GeneratorFamily horns{GeneratorFamily::Horns, 2};

    auto d0 = discrete_sset(1);
    auto r0 = has_rlp(terminal_map(d0, pt), horns);
    CHECK(r0.verdict.yes());
    CHECK(r0.squares_checked > 0);

    // Delta[1] -> point fails already at the (2,0) horn: two edges out of a
    // common vertex need a filler.
    auto d1 = standard_simplex(1);
    auto r1 = has_rlp(terminal_map(d1.s, pt), horns);
    CHECK(r1.verdict.no());
    CHECK(r1.verdict.kind == "unliftable-square");
}

TEST_CASE("rlp against boundaries detects surjective-on-cells behaviour") {
    auto pt = point_sset();
    GeneratorFamily bnd{GeneratorFamily::Boundaries, 1};

    // identity has the rlp against everything
    auto d1 = standard_simplex(1);
    CHECK(has_rlp(SMap::identity(d1.s), bnd).verdict.yes());

    // point -> Delta[1] misses a vertex: already boundary(0) = empty -> point
    // produces an unliftable square.
    SMap v0(point_sset(), d1.s, {d1.ref_of_tuple({0})});
    CHECK(has_rlp(v0, bnd).verdict.no());
}

TEST_CASE("budget exhaustion reports unknown") {
    Budget tiny;
    tiny.max_steps = 5;
    auto pt = point_sset();
    auto d2 = standard_simplex(2);
    auto r = has_rlp(terminal_map(d2.s, pt), GeneratorFamily{GeneratorFamily::Horns, 3}, tiny);
    CHECK(r.verdict.state == Truth::Unknown);
}
