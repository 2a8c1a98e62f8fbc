// Finite categories and finite simplicial categories: construction with
// exhaustive law checking, nerves, the two-object hom embedding, component
// categories, and equivalence decisions.
#ifndef SEGALKIT_CAT_HPP
#define SEGALKIT_CAT_HPP

#include <stdexcept>

#include "segalkit/invariants.hpp"
#include "segalkit/ops.hpp"

namespace sk {

struct FiniteCategory {
    std::string name;
    int nobjects = 0;
    std::vector<int> arrow_src, arrow_dst;
    std::vector<int> identity;            // per object, its identity arrow
    std::vector<std::vector<int>> table;  // table[g][f] = g o f, -1 if not composable

    int narrows() const { return static_cast<int>(arrow_src.size()); }
    bool composable(int g, int f) const { return arrow_src[g] == arrow_dst[f]; }
    int compose(int g, int f) const;
    std::vector<int> hom(int x, int y) const;
    bool is_identity_arrow(int f) const { return identity[arrow_src[f]] == f; }
    bool is_iso_arrow(int f) const;
    bool objects_isomorphic(int x, int y) const;

    // Unit and associativity laws, identity bookkeeping; throws on violation.
    void validate() const;
};

FiniteCategory poset_category(int n);          // [n]
FiniteCategory terminal_category();
FiniteCategory discrete_category(int k);
FiniteCategory codiscrete_groupoid(int k);     // k objects, all homs single

struct Functor {
    FiniteCategory src, dst;
    std::vector<int> obj_map;
    std::vector<int> arrow_map;

    void validate() const;
    static Functor identity(const FiniteCategory& C);
};

std::vector<Functor> functor_enumerate(const FiniteCategory& C,
                                       const FiniteCategory& D,
                                       const Budget& budget = {});

// Fully faithful + essentially surjective; exactly decidable, never Unknown.
Verdict cat_equiv_check(const Functor& F);

// Nerve as a simplicial set, truncated at dim_bound (nerves of groupoids
// have nondegenerate simplices in every dimension).
SSetPtr nerve_sset(const FiniteCategory& C, int dim_bound);

struct FiniteSimplicialCategory {
    struct Comp {
        ProductResult pr;  // factors {hom[y][z], hom[x][y]}
        SMap map;          // pr.prod -> hom[x][z]
    };

    std::string name;
    int nobjects = 0;
    std::vector<std::vector<SSetPtr>> hom;  // [x][y]
    std::vector<int> identity_vertex;       // vertex id in hom[x][x]
    std::vector<Comp> comps;                // indexed x, y, z

    const Comp& comp(int x, int y, int z) const {
        return comps[(x * nobjects + y) * nobjects + z];
    }
    // g o f for refs g in hom[y][z], f in hom[x][y] of equal dimension
    Ref compose_refs(int x, int y, int z, const Ref& g, const Ref& f) const;
    Ref identity_ref(int x, int dim) const;

    // Enriched unit and associativity on all simplices up to the stored top
    // dimension; throws on violation.
    void validate() const;
};

// Builds composition data and validates. The hom matrix and identity
// vertices determine everything for the constructions used here.
FiniteSimplicialCategory make_scat(
    std::string name, int nobjects, std::vector<std::vector<SSetPtr>> hom,
    std::vector<int> identity_vertex,
    const std::function<Ref(int, int, int, const Ref&, const Ref&)>& compose,
    const Budget& budget = {});

// Two objects x, y with Hom(x,y) = K and no other nonidentity morphisms.
FiniteSimplicialCategory u_functor(const SSetPtr& K);

// Discrete hom-spaces from an ordinary finite category.
FiniteSimplicialCategory scat_from_category(const FiniteCategory& C);

// Component category: Hom(x,y) = pi0 Hom(x,y).
FiniteCategory pi0_cat(const FiniteSimplicialCategory& C);

struct SFunctor {
    FiniteSimplicialCategory src, dst;
    std::vector<int> obj_map;
    std::vector<std::vector<SMap>> hom_map;  // [x][y]

    void validate() const;
    static SFunctor identity(const FiniteSimplicialCategory& C);
};

Functor pi0_functor(const SFunctor& f);

// Weak equivalence of simplicial categories: every hom map a weak
// equivalence and pi0 an equivalence of categories.
Verdict dk_check_sc(const SFunctor& f, const WeOptions& opts = {});

struct Quiver {
    int nvertices = 0;
    std::vector<std::pair<int, int>> edges;  // (src, dst)
};

struct NonTermination : std::runtime_error {
    explicit NonTermination(const std::string& what) : std::runtime_error(what) {}
};

// Free category on an acyclic quiver; a cycle makes the path category
// infinite and raises NonTermination naming a vertex on the cycle.
FiniteCategory free_category(const Quiver& q);

}  // namespace sk

#endif
