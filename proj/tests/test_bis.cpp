#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/bis.hpp"
#include "segalkit/builders.hpp"
#include "segalkit/invariants.hpp"

using namespace sk;

TEST_CASE("transpose rows are discrete with the expected counts") {
    auto t2 = std::make_shared<TransposeBis>(standard_simplex(2).s);
    CHECK(t2->row(0)->size() == 3);
    CHECK(t2->row(1)->size() == 6);
    CHECK(t2->row(2)->size() == 10);
    CHECK(t2->row(1)->top_dim() == 0);

    auto t1 = std::make_shared<TransposeBis>(standard_simplex(1).s);
    CHECK(t1->row(0)->size() == 2);
    CHECK(t1->row(1)->size() == 3);

    check_operator_functoriality(t2, 3);
}

TEST_CASE("constant and transpose agree on the point") {
    auto c = std::make_shared<ConstantBis>(point_sset());
    auto t = std::make_shared<TransposeBis>(point_sset());
    auto iso = bis_find_isomorphism(c, t, 2);
    CHECK(iso.has_value());
    check_operator_functoriality(c, 2);
}

TEST_CASE("levelwise product") {
    auto c1 = std::make_shared<ConstantBis>(standard_simplex(1).s);
    auto t1 = std::make_shared<TransposeBis>(standard_simplex(1).s);

    auto p = std::make_shared<ProductBis>(std::vector<BisimPtr>{c1, t1});
    // row 0: Delta[1] x 2 points = two disjoint edges
    CHECK(p->row(0)->count_dim(0) == 4);
    CHECK(p->row(0)->count_dim(1) == 2);
    CHECK(pi0(p->row(0)).count == 2);
    // row 1: Delta[1] x 3 points
    CHECK(pi0(p->row(1)).count == 3);

    auto tt = std::make_shared<ProductBis>(std::vector<BisimPtr>{t1, t1});
    CHECK(tt->row(1)->size() == 9);
    check_operator_functoriality(tt, 2);

    // unit law up to isomorphism
    auto unit = std::make_shared<ProductBis>(
        std::vector<BisimPtr>{t1, std::make_shared<ConstantBis>(point_sset())});
    CHECK(bis_find_isomorphism(unit, t1, 2).has_value());
}

TEST_CASE("rows of the 0-coskeleton embedding are powers") {
    auto two = std::make_shared<Cosk0Bis>(discrete_sset(2));
    for (int n = 0; n <= 3; ++n) CHECK(two->row(n)->size() == (1 << (n + 1)));
    check_operator_functoriality(two, 2);

    auto pt = std::make_shared<Cosk0Bis>(point_sset());
    CHECK(pt->row(2)->size() == 1);

    auto d1 = std::make_shared<Cosk0Bis>(standard_simplex(1).s);
    CHECK(d1->row(1)->size() == 11);
}

TEST_CASE("coskeleton at degree 0 agrees with the power construction") {
    auto t1 = std::make_shared<TransposeBis>(standard_simplex(1).s);
    auto cs = std::make_shared<CoskeletonBis>(t1, 0);
    auto pw = std::make_shared<Cosk0Bis>(t1->row(0));
    CHECK(bis_find_isomorphism(cs, pw, 3).has_value());
    check_operator_functoriality(cs, 3);
}

TEST_CASE("skeleton of a transpose") {
    auto t2 = std::make_shared<TransposeBis>(standard_simplex(2).s);
    auto sk2 = std::make_shared<SkeletonBis>(t2, 2);
    CHECK(bis_find_isomorphism(sk2, t2, 3).has_value());

    auto sk1 = std::make_shared<SkeletonBis>(t2, 1);
    CHECK(sk1->row(0)->size() == 3);
    CHECK(sk1->row(1)->size() == 6);
    // degenerate 2-simplices of Delta[2] only
    CHECK(sk1->row(2)->size() == 9);
    check_operator_functoriality(sk1, 3);
}

TEST_CASE("skeleton and coskeleton are adjoint by counting") {
    auto X = std::make_shared<TransposeBis>(standard_simplex(2).s);
    auto Y = std::make_shared<TransposeBis>(standard_simplex(1).s);
    auto skX = std::make_shared<SkeletonBis>(X, 1);
    auto cskY = std::make_shared<CoskeletonBis>(Y, 1);
    auto left = bis_hom_enumerate(skX, Y, 3);
    auto right = bis_hom_enumerate(X, cskY, 3);
    CHECK(left.size() == right.size());
    CHECK(!left.empty());
}

TEST_CASE("matching objects") {
    auto t2 = std::make_shared<TransposeBis>(standard_simplex(2).s);
    auto m1 = matching_object(t2, 1);
    CHECK(m1.object->size() == 9);
    CHECK(m1.from_row.src()->size() == 6);
    CHECK(m1.from_row.is_injective());

    auto cpt = std::make_shared<ConstantBis>(point_sset());
    auto mp = matching_object(cpt, 2);
    CHECK(mp.object->size() == 1);
    CHECK(mp.from_row.is_isomorphism());

    // for a constant object the first matching object is the square with
    // the diagonal map
    auto ck = std::make_shared<ConstantBis>(standard_simplex(1).s);
    auto mk = matching_object(ck, 1);
    auto sq = product({standard_simplex(1).s, standard_simplex(1).s});
    CHECK(find_isomorphism(mk.object, sq.prod).has_value());
    CHECK(mk.from_row.is_injective());
}

TEST_CASE("levelwise quotient collapses compatible relations") {
    auto K = standard_simplex(1).s;
    auto t1 = std::make_shared<TransposeBis>(K);
    // identify the degeneracy chains of the two vertices in every row
    auto rels = [t1](int n) {
        std::vector<int> consts(n + 1, 0);
        SMap d = t1->op(0, consts);
        return std::vector<std::pair<Ref, Ref>>{{d.apply(0), d.apply(1)}};
    };
    auto q = std::make_shared<LevelQuotientBis>(t1, rels);
    CHECK(q->row(0)->size() == 1);
    CHECK(q->row(1)->size() == 2);
    CHECK(q->row(2)->size() == 3);
    check_operator_functoriality(q, 2);
}

TEST_CASE("levelwise pushout glues constants") {
    auto b1 = boundary(1);
    auto d1 = standard_simplex(1);
    auto A = std::make_shared<ConstantBis>(b1.s);
    auto B = std::make_shared<ConstantBis>(d1.s);
    SMap inc = subset_inclusion(b1, d1);
    std::vector<SMap> rows(4, inc);
    BisMap f(A, B, rows);
    BisMap g(A, B, rows);
    auto circ = std::make_shared<PushoutBis>(f, g);
    CHECK(circ->row(0)->count_dim(0) == 2);
    CHECK(circ->row(0)->count_dim(1) == 2);
    check_operator_functoriality(circ, 2);
    CHECK(circ->level_bound() == 3);
    CHECK_THROWS_AS(circ->row(4), InvalidParameter);
}

TEST_CASE("subobject rows restrict the operators") {
    auto two = std::make_shared<Cosk0Bis>(discrete_sset(2));
    // the diagonal: constant tuples, which are degeneracies of the vertices
    SubBis::KeepFn keep = [two](const Bisim&, int n) {
        std::vector<int> ids;
        const ProductResult& lv = two->level(n);
        for (const auto& [tuple, id] : lv.id_of) {
            bool diag = true;
            for (const Ref& r : tuple)
                if (r.id != tuple[0].id) { diag = false; break; }
            if (diag) ids.push_back(id);
        }
        return ids;
    };
    auto diag = std::make_shared<SubBis>(two, keep);
    for (int n = 0; n <= 2; ++n) CHECK(diag->row(n)->size() == 2);
    check_operator_functoriality(diag, 2);
}

TEST_CASE("tabulated functor realization round-trips a simplex") {
    // elements of dimension d: monotone maps [d] -> [1]
    int D = 3;
    std::vector<std::vector<std::vector<int>>> els(D + 1);
    for (int d = 0; d <= D; ++d) els[d] = monotone_maps(d, 1);
    auto index_of = [&](int d, const std::vector<int>& t) {
        for (int j = 0; j < static_cast<int>(els[d].size()); ++j)
            if (els[d][j] == t) return j;
        return -1;
    };
    std::vector<int> counts;
    for (auto& v : els) counts.push_back(static_cast<int>(v.size()));
    auto X = tabulate_sset(
        D, counts,
        [&](int d, int i, int j) {
            std::vector<int> t = els[d][j];
            t.erase(t.begin() + i);
            return index_of(d - 1, t);
        },
        [&](int d, int i, int j) {
            std::vector<int> t = els[d][j];
            t.insert(t.begin() + i, t[i]);
            return index_of(d + 1, t);
        });
    CHECK(find_isomorphism(X, standard_simplex(1).s).has_value());
}

TEST_CASE("mapping spaces") {
    auto pt = std::make_shared<ConstantBis>(point_sset());
    auto t2 = std::make_shared<TransposeBis>(standard_simplex(2).s);
    auto m = mapping_space(pt, t2, 1, 2);
    CHECK(m->count_dim(0) == 3);

    // Map(X, X) has the identity among its vertices
    auto t1 = std::make_shared<TransposeBis>(standard_simplex(1).s);
    auto endo = bis_hom_enumerate(t1, t1, 2);
    bool has_id = false;
    for (const auto& f : endo)
        if (f == BisMap::identity(t1, 2)) has_id = true;
    CHECK(has_id);

    auto g2 = std::make_shared<TransposeBis>(spine(2).s);
    auto n2 = std::make_shared<TransposeBis>(standard_simplex(2).s);
    auto mg = mapping_space(g2, n2, 0, 3);
    CHECK(mg->count_dim(0) == 10);
}
