// Computable homotopy invariants of finite simplicial sets and the
// three-valued weak-equivalence verdict built on them.
#ifndef SEGALKIT_INVARIANTS_HPP
#define SEGALKIT_INVARIANTS_HPP

#include <array>
#include <optional>

#include "segalkit/lifting.hpp"
#include "segalkit/ops.hpp"
#include "segalkit/verdict.hpp"

namespace sk {

// Finitely generated abelian group in invariant-factor form.
struct AbGroup {
    long long rank = 0;
    std::vector<long long> torsion;  // each >= 2, each dividing the next

    friend bool operator==(const AbGroup& a, const AbGroup& b) {
        return a.rank == b.rank && a.torsion == b.torsion;
    }
    nlohmann::json to_json() const {
        return {{"rank", rank}, {"torsion", torsion}};
    }
};

struct Pi0Result {
    int count = 0;
    std::vector<int> component;  // per vertex id
};

Pi0Result pi0(const SSetPtr& X);

// Smith normal form diagonal of an integer matrix (helper, exposed for
// oracle use in tests).
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m);

// Integral homology of the normalized chain complex, degrees 0..max_deg.
std::vector<AbGroup> homology(const SSetPtr& X, int max_deg,
                              const Budget& budget = {});

// Simplicial collapse of X down to a single vertex; steps are (cell, free
// face) pairs in removal order.
std::optional<std::vector<std::pair<int, int>>> collapse_to_point(const SSetPtr& X);

// For injective f, a chain of elementary horn-pushout expansions building Y
// from the image of X; steps are (filler simplex, horn index, free face).
std::optional<std::vector<std::array<int, 3>>> anodyne_trace(const SMap& f);

struct WeOptions {
    int homology_bound = 4;
    Budget budget;
};

Verdict we_verdict(const SMap& f, const WeOptions& opts = {});

Verdict is_kan(const SSetPtr& X, int dim_bound, const Budget& budget = {});

}  // namespace sk

#endif
