// Exact colimit, limit and enumeration machinery on finite simplicial sets.
#ifndef SEGALKIT_OPS_HPP
#define SEGALKIT_OPS_HPP

#include <functional>
#include <map>
#include <optional>

#include "segalkit/core.hpp"

namespace sk {

// Every simplicial map A -> X, dimension-by-dimension backtracking,
// canonical order. Optional per-simplex filter prunes candidates (it gets
// the source id and the tentative image).
std::vector<SMap> hom_enumerate(
    const SSetPtr& A, const SSetPtr& X, const Budget& budget = {},
    const std::function<bool(int, const Ref&)>& admit = nullptr);

// Categorical product of several factors with projection maps. Nondegenerate
// simplices are tuples of refs of equal dimension whose words have empty
// total intersection.
struct ProductResult {
    SSetPtr prod;
    std::vector<SMap> projections;
    // factor refs of a nondegenerate product simplex
    std::vector<std::vector<Ref>> components;
    std::map<std::vector<Ref>, int> id_of;

    // Normal form of an arbitrary tuple of equal-dimension refs.
    Ref ref_of_tuple(const std::vector<Ref>& refs) const;
};

ProductResult product(const std::vector<SSetPtr>& factors,
                      const Budget& budget = {});
// Mediating map <f_1,...,f_k>: T -> prod for maps f_i : T -> factor_i.
SMap tuple_map(const ProductResult& P, const std::vector<SMap>& fs);

struct CoproductResult {
    SSetPtr sum;
    std::vector<SMap> injections;
    // (leg, id in leg) of each simplex of the sum
    std::vector<std::pair<int, int>> origin;
};
CoproductResult coproduct(const std::vector<SSetPtr>& legs,
                          std::string name = "");

// Quotient of X by the congruence generated by the given ref pairs
// (each pair in equal dimension). Simplices forced degenerate by the
// identification are renormalized away.
struct QuotientResult {
    SSetPtr q;
    SMap to_quotient;                 // X -> q
    std::vector<Ref> section;         // quotient nondeg id -> a nondeg ref of X
};
QuotientResult quotient(const SSetPtr& X,
                        const std::vector<std::pair<Ref, Ref>>& rels,
                        const Budget& budget = {}, std::string name = "");

struct PushoutResult {
    SSetPtr p;
    SMap from_b, from_c;              // B -> p, C -> p
    // provenance of each nondeg simplex of p: leg 0 = B, 1 = C
    std::vector<std::pair<int, Ref>> section;
};
PushoutResult pushout(const SMap& f, const SMap& g, const Budget& budget = {});

// Exhaustive search for an isomorphism; No is definitive.
std::optional<SMap> find_isomorphism(const SSetPtr& A, const SSetPtr& B,
                                     const Budget& budget = {});

struct SkeletonResult {
    SSetPtr sk;
    SMap inclusion;  // sk -> X
};
SkeletonResult skeleton(const SSetPtr& X, int n);

// Subcomplex spanned by a face-closed set of nondegenerate simplices.
SkeletonResult subcomplex(const SSetPtr& X, const std::vector<int>& keep_ids,
                          std::string name = "");

// Restrict f : X -> Y to a subcomplex inclusion of X.
SMap restrict_map(const SMap& f, const SkeletonResult& sub);

// Corestrict f : T -> Y through a subcomplex of Y containing the image.
SMap corestrict_map(const SMap& f, const SkeletonResult& sub);

// Subcomplex of f's codomain spanned by the image of f.
SkeletonResult image_subcomplex(const SMap& f, std::string name = "");

}  // namespace sk

#endif
