#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segalkit/builders.hpp"
#include "segalkit/io.hpp"
#include "segalkit/segal.hpp"

using namespace sk;

namespace {

bool sset_identical(const SSetPtr& A, const SSetPtr& B) {
    if (A->size() != B->size()) return false;
    for (int id = 0; id < A->size(); ++id) {
        if (A->dim_of(id) != B->dim_of(id)) return false;
        if (A->faces_of(id) != B->faces_of(id)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("sset round-trip preserves canonical ids") {
    std::vector<SSetPtr> corpus = {
        standard_simplex(0).s, standard_simplex(2).s, standard_simplex(3).s,
        boundary(2).s,         horn(2, 1).s,          spine(3).s,
        empty_sset(),          point_sset(),
        nerve_sset(codiscrete_groupoid(2), 3)};
    for (const SSetPtr& X : corpus) {
        SSetPtr Y = parse_sset(emit_sset(*X));
        CHECK(sset_identical(X, Y));
        CHECK(emit_sset(*Y) == emit_sset(*X));
    }
}

TEST_CASE("sset parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_sset("sset x\nsimplex 1 dim 0\n"), ParseError);
    CHECK_THROWS_AS(parse_sset("sset x\nsimplex 0 dim 1\n"), ParseError);

    // face dimension mismatch
    try {
        parse_sset(
            "sset x\n"
            "simplex 0 dim 0\n"
            "simplex 1 dim 2\n"
            "face 1 0 = 0\nface 1 1 = 0\nface 1 2 = 0\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }

    // simplicial identity violation: a 2-simplex whose faces share no vertices
    try {
        parse_sset(
            "sset x\n"
            "simplex 0 dim 0\n"
            "simplex 1 dim 0\n"
            "simplex 2 dim 0\n"
            "simplex 3 dim 0\n"
            "simplex 4 dim 1\nface 4 0 = 1\nface 4 1 = 0\n"
            "simplex 5 dim 1\nface 5 0 = 3\nface 5 1 = 2\n"
            "simplex 6 dim 1\nface 6 0 = 1\nface 6 1 = 0\n"
            "simplex 7 dim 2\nface 7 0 = 4\nface 7 1 = 5\nface 7 2 = 6\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 15);
    }
}

TEST_CASE("stored bss round-trip") {
    SegalPrecategory N = nerve_precat(poset_category(2), 3);
    std::string doc = emit_bss(N.bis(), 3, true);
    BssData D = parse_bss(doc);
    CHECK(D.discrete0);
    CHECK(D.rows == 4);
    for (int n = 0; n <= 3; ++n)
        CHECK(sset_identical(D.bis->row(n), N.bis()->row(n)));
    CHECK(bis_find_isomorphism(D.bis, N.bis(), 3).has_value());
    CHECK(emit_bss(D.bis, 3, true) == doc);
    CHECK(D.bis->level_bound() == 3);
}

TEST_CASE("bss parser rejects bad documents") {
    SegalPrecategory N = nerve_precat(poset_category(1), 2);
    std::string doc = emit_bss(N.bis(), 2, true);

    // dropping the last op line family leaves an operator missing
    std::string cut = doc.substr(0, doc.rfind("op "));
    CHECK_THROWS_AS(parse_bss(cut), ParseError);

    // discrete0 with a non-discrete row 0
    auto c = std::make_shared<ConstantBis>(standard_simplex(1).s, "c");
    std::string bad = emit_bss(c, 1, true);
    CHECK_THROWS_AS(parse_bss(bad), ParseError);
    CHECK_NOTHROW(parse_bss(emit_bss(c, 1, false)));
}

TEST_CASE("virtual bss forms") {
    BssData t = parse_bss(emit_bss_virtual("transpose", standard_simplex(1).s));
    CHECK(t.virtual_rule == "transpose");
    CHECK(t.bis->row(1)->size() == 3);

    BssData c = parse_bss(emit_bss_virtual("cosk0", standard_simplex(1).s));
    CHECK(c.bis->row(1)->count_refs(1) == standard_simplex(1).s->count_refs(1) *
                                              standard_simplex(1).s->count_refs(1));

    BssData p = parse_bss(emit_bss_virtual_psi(2, {0, 1, 2}, 3, 1));
    CHECK(p.virtual_rule == "psi");
    CHECK(p.bis->row(1)->size() == 5);

    CHECK_THROWS_AS(parse_bss("bss-virtual nosuch\n"), ParseError);
}

TEST_CASE("cat round-trip") {
    for (const FiniteCategory& C :
         {poset_category(2), codiscrete_groupoid(3), discrete_category(2),
          terminal_category()}) {
        FiniteCategory D = parse_cat(emit_cat(C));
        CHECK(D.nobjects == C.nobjects);
        CHECK(D.arrow_src == C.arrow_src);
        CHECK(D.arrow_dst == C.arrow_dst);
        CHECK(D.identity == C.identity);
        CHECK(D.table == C.table);
        CHECK(emit_cat(D) == emit_cat(C));
    }

    // association must be re-validated on load
    FiniteCategory C = poset_category(2);
    std::string doc = emit_cat(C);
    auto pos = doc.find("compose 3 1 =");
    REQUIRE(pos != std::string::npos);
    doc[doc.find('=', pos) + 2] = '0';  // misdirect one composite
    CHECK_THROWS_AS(parse_cat(doc), ParseError);
}

TEST_CASE("scat round-trip") {
    for (const FiniteSimplicialCategory& C :
         {u_functor(standard_simplex(1).s), scat_from_category(poset_category(2)),
          u_functor(boundary(2).s)}) {
        FiniteSimplicialCategory D = parse_scat(emit_scat(C));
        CHECK(D.nobjects == C.nobjects);
        CHECK(D.identity_vertex == C.identity_vertex);
        for (int x = 0; x < C.nobjects; ++x)
            for (int y = 0; y < C.nobjects; ++y)
                CHECK(sset_identical(D.hom[x][y], C.hom[x][y]));
        CHECK(emit_scat(D) == emit_scat(C));
    }
}

TEST_CASE("file helpers") {
    std::string path = "io_test_scratch.sset";
    write_file(path, emit_sset(*standard_simplex(2).s));
    SSetPtr X = parse_sset(read_file(path));
    CHECK(X->size() == 7);
    CHECK_THROWS_AS(read_file("definitely/not/a/file"), InvalidParameter);
    std::remove(path.c_str());
}
