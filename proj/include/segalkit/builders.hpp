// Canonical finite simplicial sets: simplices, boundaries, horns, spines,
// discrete sets, and their inclusion maps.
#ifndef SEGALKIT_BUILDERS_HPP
#define SEGALKIT_BUILDERS_HPP

#include <map>
#include <optional>

#include "segalkit/core.hpp"

namespace sk {

// A complex whose nondegenerate simplices are (some of the) nonempty subsets
// of {0..n}, e.g. Delta[n] and its subcomplexes. Keeps the vertex labels so
// simplices can be addressed as monotone tuples.
struct SubsetComplex {
    SSetPtr s;
    std::vector<std::vector<int>> label;        // id -> strictly increasing subset
    std::map<std::vector<int>, int> id_of;      // subset -> id
    int n = 0;                                  // ambient [n]

    // Simplex of the total structure named by a weakly monotone tuple.
    Ref ref_of_tuple(const std::vector<int>& tuple) const;
    // Inverse: tuple of a ref (any dimension).
    std::vector<int> tuple_of_ref(const Ref& r) const;
};

SubsetComplex standard_simplex(int n);
SubsetComplex boundary(int n);
SubsetComplex horn(int n, int k);
// Union of the edges {i,i+1} inside Delta[k] (with all vertices).
SubsetComplex spine(int k);

SSetPtr discrete_sset(int npoints, std::string name = "");
SSetPtr empty_sset(std::string name = "empty");
SSetPtr point_sset();

// Inclusion A -> B between subset complexes over the same [n].
SMap subset_inclusion(const SubsetComplex& A, const SubsetComplex& B);

// The nerve of the poset [n] is Delta[n] itself; a monotone map [m] -> [n]
// induces Delta[m] -> Delta[n].
SMap simplex_map(const SubsetComplex& A, const SubsetComplex& B,
                 const std::vector<int>& alpha);

}  // namespace sk

#endif
