#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/builders.hpp"
#include "segalkit/segal.hpp"

using namespace sk;

TEST_CASE("precategory wrapper and fibers") {
    SegalPrecategory N = nerve_precat(poset_category(1), 3);
    CHECK(N.nobjects() == 2);
    CHECK_THROWS_AS(SegalPrecategory(std::make_shared<ConstantBis>(
                        standard_simplex(1).s)),
                    InvalidParameter);

    CHECK(fiber(N, {0, 1}).sk->size() == 1);
    CHECK(fiber(N, {1, 0}).sk->size() == 0);
    CHECK(fiber(N, {0, 0}).sk->size() == 1);  // the identity
    // fibers partition each row
    for (int n = 1; n <= 2; ++n) {
        int total = 0;
        std::vector<int> t(n + 1, 0);
        while (true) {
            total += fiber(N, t).sk->size();
            int i = n;
            while (i >= 0 && t[i] == 1) t[i--] = 0;
            if (i < 0) break;
            ++t[i];
        }
        CHECK(total == N.bis()->row(n)->size());
    }
}

TEST_CASE("reduction collapses the zeroth row") {
    auto c = std::make_shared<ConstantBis>(standard_simplex(1).s);
    Reduction R = reduce(c);
    for (int n = 0; n <= 3; ++n) CHECK(R.q->row(n)->size() == 1);
    CHECK(R.reduced.nobjects() == 1);
    BisMap u = R.unit(2);
    for (int n = 0; n <= 2; ++n) CHECK(u.row(n).is_surjective());
    check_operator_functoriality(R.q, 3);

    // an already reduced object only gets renamed
    auto t1 = std::make_shared<TransposeBis>(standard_simplex(1).s);
    Reduction R1 = reduce(t1);
    for (int n = 0; n <= 3; ++n)
        CHECK(R1.q->row(n)->size() == t1->row(n)->size());
}

TEST_CASE("spine pair and the Segal condition") {
    SpinePair sp = spine_pair(2, 3);
    CHECK(sp.spine_t->row(0)->size() == 3);
    CHECK(sp.spine_t->row(1)->size() == 5);
    CHECK(sp.spine_t->row(2)->size() == 7);
    for (int j = 0; j <= 3; ++j) CHECK(sp.inclusion.row(j).is_injective());

    SegalPrecategory N = nerve_precat(poset_category(2), 4);
    SegalReport rn = segal_check(N, 3);
    CHECK(rn.overall.yes());
    CHECK(rn.details[0]["row_size"] == 10);
    CHECK(rn.details[0]["limit_size"] == 10);

    SegalPrecategory G(sp.spine_t);
    SegalReport rg = segal_check(G, 2);
    CHECK(rg.overall.no());
    CHECK(rg.details[0]["row_size"] == 7);
    CHECK(rg.details[0]["limit_size"] == 8);
}

TEST_CASE("homotopy category") {
    FiniteCategory h2 = ho_category(nerve_precat(poset_category(2), 3));
    CHECK(h2.nobjects == 3);
    CHECK(h2.narrows() == 6);
    CHECK(!h2.is_iso_arrow(h2.hom(0, 2)[0]));

    FiniteCategory hi = ho_category(nerve_precat(codiscrete_groupoid(2), 3));
    CHECK(hi.narrows() == 4);
    for (int f = 0; f < 4; ++f) CHECK(hi.is_iso_arrow(f));

    // a bare pair of parallel points in row 1 with nothing in row 2 has no
    // composites
    SpinePair sp = spine_pair(2, 3);
    CHECK_THROWS_AS(ho_category(SegalPrecategory(sp.spine_t)), MissingComposite);
}

TEST_CASE("completeness") {
    CHECK(complete_check(nerve_precat(poset_category(1), 4)).yes());
    Verdict v = complete_check(nerve_precat(codiscrete_groupoid(2), 5));
    CHECK(v.no());
}

TEST_CASE("nerve rows of the free-standing isomorphism") {
    SegalPrecategory E = nerve_precat(codiscrete_groupoid(2), 4);
    for (int n = 0; n <= 3; ++n)
        CHECK(E.bis()->row(n)->size() == (1 << (n + 1)));
}

TEST_CASE("point into the contractible groupoid nerve is an equivalence") {
    SegalPrecategory E = nerve_precat(codiscrete_groupoid(2), 4);
    SegalPrecategory P = nerve_precat(terminal_category(), 4);
    auto et = std::dynamic_pointer_cast<const TransposeBis>(E.bis());
    REQUIRE(et);
    std::vector<SMap> rows;
    for (int j = 0; j <= 3; ++j) {
        Word w;
        for (int i = 0; i < j; ++i) w.push_back(i);
        rows.emplace_back(P.bis()->row(j), E.bis()->row(j),
                          std::vector<Ref>{Ref{et->index_of(j, Ref{0, w}), {}}});
    }
    BisMap f(P.bis(), E.bis(), std::move(rows));
    CHECK(dk_check_segal(f).yes());
    CHECK(cat_equiv_check(ho_functor(f)).yes());

    CHECK(dk_check_segal(BisMap::identity(E.bis(), 2)).yes());
}

TEST_CASE("fixed-object simplices and the spine filtration") {
    auto psi1 = std::make_shared<PsiBis>(2, std::vector<int>{0, 1, 2}, 3, 1);
    auto psi2 = std::make_shared<PsiBis>(2, std::vector<int>{0, 1, 2}, 3, 2);
    CHECK(psi1->row(0)->size() == 3);
    CHECK(psi1->row(1)->size() == 5);
    CHECK(psi1->row(2)->size() == 7);
    CHECK(psi2->row(1)->size() == 6);
    CHECK(psi2->row(2)->size() == 10);
    check_operator_functoriality(psi1, 3);
    check_operator_functoriality(psi2, 3);

    SpinePair sp = spine_pair(2, 3);
    CHECK(bis_find_isomorphism(psi1, sp.spine_t, 3).has_value());
    CHECK(bis_find_isomorphism(psi2, sp.simplex_t, 3).has_value());
    CHECK(!bis_find_isomorphism(psi1, psi2, 2).has_value());

    BisMap incl = psi_inclusion(psi1, psi2, 3);
    for (int m = 0; m <= 3; ++m) CHECK(incl.row(m).is_injective());

    // repeated object labels merge only the constant tuples
    auto loop = std::make_shared<PsiBis>(1, std::vector<int>{0, 0}, 1, 1);
    CHECK(loop->row(0)->size() == 1);
    CHECK(loop->row(1)->size() == 2);
    CHECK(loop->row(2)->size() == 3);
    check_operator_functoriality(loop, 3);
}

TEST_CASE("fundamental category") {
    Tau1Result t2 = tau1(nerve_precat(poset_category(2), 3));
    CHECK(t2.decided);
    CHECK(t2.category->narrows() == 6);
    CHECK(static_cast<int>(t2.gen_src.size()) == 3);

    Tau1Result ti = tau1(nerve_precat(codiscrete_groupoid(2), 3));
    CHECK(ti.decided);
    CHECK(ti.category->narrows() == 4);
    CHECK(ti.category->is_iso_arrow(2));

    // the spine filtration stages all present the poset category
    for (int k = 1; k <= 3; ++k) {
        auto psi = std::make_shared<PsiBis>(3, std::vector<int>{0, 1, 2, 3}, 4, k);
        Tau1Result t = tau1(SegalPrecategory(psi));
        CHECK(t.decided);
        CHECK(t.category->narrows() == 10);
        bool equiv = false;
        for (const auto& F : functor_enumerate(*t.category, poset_category(3)))
            equiv = equiv || cat_equiv_check(F).yes();
        CHECK(equiv);
    }
}

TEST_CASE("generating cofibrations") {
    CHECK_THROWS_AS(cofib_generator(1, 0, 2), InvalidParameter);
    CHECK_THROWS_AS(segal_generator(2, 0, 2), InvalidParameter);

    GeneratorMap c00 = cofib_generator(0, 0, 2);
    CHECK(c00.map.src()->row(1)->size() == 0);
    CHECK(c00.map.dst()->row(1)->size() == 1);

    GeneratorMap c01 = cofib_generator(0, 1, 2);
    CHECK(c01.map.src()->row(0)->size() == 2);
    CHECK(c01.map.dst()->row(1)->size() == 3);
    for (int j = 0; j <= 2; ++j) CHECK(c01.map.row(j).is_injective());

    GeneratorMap c11 = cofib_generator(1, 1, 2);
    for (int j = 0; j <= 2; ++j) CHECK(c11.map.row(j).is_injective());
    CHECK(!c11.map.row(1).is_surjective());
    check_operator_functoriality(c11.map.src(), 2);
    check_operator_functoriality(c11.map.dst(), 2);
}

TEST_CASE("segal-type generators") {
    GeneratorMap q11 = segal_generator(1, 1, 2);
    CHECK(q11.map.dst()->row(0)->size() == 2);
    CHECK(q11.map.src()->row(0)->size() == 2);
    for (int j = 0; j <= 2; ++j) CHECK(q11.map.row(j).is_injective());
    check_operator_functoriality(q11.map.src(), 2);
    check_operator_functoriality(q11.map.dst(), 2);

    // from m = 2 on, both hulls agree with the plain reductions
    GeneratorMap q21 = segal_generator(2, 1, 2);
    auto amb = std::make_shared<ProductBis>(std::vector<BisimPtr>{
        std::make_shared<ConstantBis>(standard_simplex(2).s),
        std::make_shared<TransposeBis>(standard_simplex(1).s)});
    Reduction RA = reduce(amb);
    CHECK(bis_find_isomorphism(q21.map.dst(), RA.q, 2).has_value());
}

TEST_CASE("lifting against generators") {
    GeneratorMap c00 = cofib_generator(0, 0, 1);
    auto pt = std::make_shared<ConstantBis>(point_sset());
    CHECK(bis_has_rlp(BisMap::identity(pt, 1), c00.map, 1).yes());

    auto e = std::make_shared<ConstantBis>(empty_sset());
    std::vector<SMap> rows;
    for (int j = 0; j <= 1; ++j)
        rows.emplace_back(e->row(j), pt->row(j), std::vector<Ref>{});
    CHECK(bis_has_rlp(BisMap(e, pt, std::move(rows)), c00.map, 1).no());
}

TEST_CASE("injective fibration characterization") {
    SegalPrecategory N = nerve_precat(poset_category(1), 2);
    CHECK(injective_fibration_check(BisMap::identity(N.bis(), 2), 2, 2).yes());

    auto pt = std::make_shared<ConstantBis>(point_sset());
    std::vector<SMap> rows;
    for (int j = 0; j <= 2; ++j)
        rows.push_back(terminal_map(N.bis()->row(j), pt->base()));
    Verdict v = injective_fibration_check(BisMap(N.bis(), pt, std::move(rows)), 2, 1);
    CHECK(v.no());
    CHECK(v.kind == "fiber-not-fibration");
}

TEST_CASE("discretization") {
    auto w = std::make_shared<Cosk0Bis>(standard_simplex(1).s);
    DiscretizeResult R = discretize(w, 2);
    CHECK(R.rw.nobjects() == 2);
    CHECK(R.rw.bis()->row(1)->size() == 4);
    CHECK(R.rw.bis()->row(2)->size() == 8);
    for (int n = 0; n <= 2; ++n) CHECK(R.inclusion.row(n).is_injective());
    check_operator_functoriality(R.rw.bis(), 2);

    // a discrete-row-0 object is untouched
    SegalPrecategory N = nerve_precat(poset_category(1), 3);
    DiscretizeResult RN = discretize(N.bis(), 2);
    for (int n = 0; n <= 2; ++n)
        CHECK(RN.rw.bis()->row(n)->size() == N.bis()->row(n)->size());
}

TEST_CASE("object-change factorization") {
    SegalPrecategory N = nerve_precat(poset_category(1), 3);
    PhiResult idf = phi_factorization(BisMap::identity(N.bis(), 2), 2);
    CHECK(idf.postcondition.yes());
    CHECK(idf.first.is_levelwise_isomorphism());

    SegalPrecategory D = nerve_precat(discrete_category(2), 3);
    SegalPrecategory P = nerve_precat(terminal_category(), 3);
    std::vector<SMap> rows;
    for (int j = 0; j <= 2; ++j) {
        std::vector<Ref> a(D.bis()->row(j)->size(), Ref{0, {}});
        rows.emplace_back(D.bis()->row(j), P.bis()->row(j), std::move(a));
    }
    PhiResult R = phi_factorization(BisMap(D.bis(), P.bis(), std::move(rows)), 2);
    CHECK(R.postcondition.yes());
    CHECK(R.phi->row(1)->size() == 4);
    CHECK(R.first.row(0).is_isomorphism());
    CHECK(!R.second.row(1).is_injective());
}

TEST_CASE("strict locality") {
    CHECK(strict_local_check(nerve_precat(poset_category(2), 4), 2, 1, 3).yes());
    SpinePair sp = spine_pair(2, 3);
    Verdict v = strict_local_check(SegalPrecategory(sp.spine_t), 2, 0, 3);
    CHECK(v.no());
}

TEST_CASE("nerve of a simplicial category") {
    SegalPrecategory N = nerve_scat(u_functor(standard_simplex(1).s));
    CHECK(N.nobjects() == 2);
    CHECK(N.bis()->row(1)->size() == 5);
    CHECK(N.bis()->row(2)->size() == 8);
    check_operator_functoriality(N.bis(), 3);

    FiniteCategory H = ho_category(N);
    CHECK(H.narrows() == 3);

    SegalReport r = segal_check(N, 2);
    CHECK(r.overall.yes());
}
