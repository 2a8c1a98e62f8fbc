#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/builders.hpp"
#include "segalkit/cat.hpp"

using namespace sk;

TEST_CASE("standard finite categories") {
    FiniteCategory p2 = poset_category(2);
    CHECK(p2.nobjects == 3);
    CHECK(p2.narrows() == 6);
    CHECK(p2.hom(0, 2).size() == 1);
    CHECK(p2.hom(2, 0).empty());
    CHECK(!p2.is_iso_arrow(p2.hom(0, 1)[0]));

    FiniteCategory I = codiscrete_groupoid(2);
    CHECK(I.narrows() == 4);
    for (int f = 0; f < I.narrows(); ++f) CHECK(I.is_iso_arrow(f));
    CHECK(I.objects_isomorphic(0, 1));

    CHECK(discrete_category(3).narrows() == 3);
    CHECK(terminal_category().nobjects == 1);
}

TEST_CASE("nerve of a poset is the standard simplex") {
    for (int n = 0; n <= 3; ++n) {
        SSetPtr N = nerve_sset(poset_category(n), n + 2);
        CHECK(find_isomorphism(N, standard_simplex(n).s).has_value());
    }
}

TEST_CASE("nerve of the free-standing isomorphism") {
    SSetPtr E = nerve_sset(codiscrete_groupoid(2), 4);
    for (int d = 0; d <= 4; ++d)
        CHECK(E->count_refs(d) == (std::size_t{1} << (d + 1)));
    // two nondegenerate simplices in every positive dimension
    for (int d = 1; d <= 4; ++d) CHECK(E->count_dim(d) == 2);
}

TEST_CASE("functor enumeration counts") {
    CHECK(functor_enumerate(poset_category(1), poset_category(2)).size() == 6);
    CHECK(functor_enumerate(poset_category(1), poset_category(1)).size() == 3);
    // codiscrete homs are singletons, so only the object map varies
    CHECK(functor_enumerate(codiscrete_groupoid(2), codiscrete_groupoid(2)).size() == 4);
    CHECK(functor_enumerate(discrete_category(2), discrete_category(3)).size() == 9);
}

TEST_CASE("categorical equivalence decisions") {
    CHECK(cat_equiv_check(Functor::identity(poset_category(2))).yes());

    // the terminal category sits inside the contractible groupoid as an
    // equivalence, but inside the discrete two-point category it does not
    auto into_codiscrete = functor_enumerate(terminal_category(), codiscrete_groupoid(2));
    REQUIRE(into_codiscrete.size() == 2);
    for (const auto& F : into_codiscrete) CHECK(cat_equiv_check(F).yes());

    auto into_discrete = functor_enumerate(terminal_category(), discrete_category(2));
    REQUIRE(into_discrete.size() == 2);
    for (const auto& F : into_discrete) {
        Verdict v = cat_equiv_check(F);
        CHECK(v.no());
        CHECK(v.kind == "not-essentially-surjective");
    }

    // collapsing [1] to a point is full on nothing: Hom(1,0) is empty upstairs
    auto collapse = functor_enumerate(poset_category(1), terminal_category());
    REQUIRE(collapse.size() == 1);
    Verdict v = cat_equiv_check(collapse[0]);
    CHECK(v.no());
    CHECK(v.kind == "not-full");
}

TEST_CASE("two-object hom embedding") {
    FiniteSimplicialCategory U = u_functor(standard_simplex(1).s);
    CHECK(U.nobjects == 2);
    CHECK(U.hom[0][1]->size() == 3);
    CHECK(U.hom[1][0]->size() == 0);

    FiniteCategory P = pi0_cat(U);
    CHECK(P.narrows() == 3);  // two identities and one class 0 -> 1
    auto fs = functor_enumerate(P, poset_category(1));
    bool equiv = false;
    for (const auto& F : fs) equiv = equiv || cat_equiv_check(F).yes();
    CHECK(equiv);

    FiniteSimplicialCategory U2 = u_functor(discrete_sset(2));
    CHECK(pi0_cat(U2).narrows() == 4);
}

TEST_CASE("discrete enrichment round-trip") {
    FiniteCategory p2 = poset_category(2);
    FiniteSimplicialCategory S = scat_from_category(p2);
    FiniteCategory back = pi0_cat(S);
    CHECK(back.nobjects == 3);
    CHECK(back.narrows() == 6);
    CHECK(cat_equiv_check(Functor::identity(back)).yes());
}

TEST_CASE("hom-wise weak equivalence of simplicial categories") {
    SSetPtr d1 = standard_simplex(1).s;
    FiniteSimplicialCategory A = u_functor(d1);
    FiniteSimplicialCategory B = u_functor(point_sset());

    SFunctor F{A, B, {0, 1}, {}};
    F.hom_map.assign(2, {});
    F.hom_map[0].push_back(SMap(A.hom[0][0], B.hom[0][0], {Ref{0, {}}}));
    F.hom_map[0].push_back(terminal_map(A.hom[0][1], B.hom[0][1]));
    F.hom_map[1].push_back(SMap(A.hom[1][0], B.hom[1][0], {}));
    F.hom_map[1].push_back(SMap(A.hom[1][1], B.hom[1][1], {Ref{0, {}}}));
    CHECK(dk_check_sc(F).yes());

    CHECK(dk_check_sc(SFunctor::identity(A)).yes());

    FiniteSimplicialCategory C = u_functor(discrete_sset(2));
    SFunctor G{C, B, {0, 1}, {}};
    G.hom_map.assign(2, {});
    G.hom_map[0].push_back(SMap(C.hom[0][0], B.hom[0][0], {Ref{0, {}}}));
    G.hom_map[0].push_back(terminal_map(C.hom[0][1], B.hom[0][1]));
    G.hom_map[1].push_back(SMap(C.hom[1][0], B.hom[1][0], {}));
    G.hom_map[1].push_back(SMap(C.hom[1][1], B.hom[1][1], {Ref{0, {}}}));
    Verdict v = dk_check_sc(G);
    CHECK(v.no());
    CHECK(v.kind == "hom-not-weak-equivalence");
}

TEST_CASE("free category on an acyclic quiver") {
    FiniteCategory F = free_category({3, {{0, 1}, {1, 2}}});
    CHECK(F.nobjects == 3);
    CHECK(F.narrows() == 6);
    CHECK(find_isomorphism(nerve_sset(F, 4), standard_simplex(2).s).has_value());

    FiniteCategory par = free_category({2, {{0, 1}, {0, 1}}});
    CHECK(par.narrows() == 4);

    CHECK_THROWS_AS(free_category({2, {{0, 1}, {1, 0}}}), NonTermination);
    CHECK_THROWS_AS(free_category({1, {{0, 0}}}), NonTermination);
}
