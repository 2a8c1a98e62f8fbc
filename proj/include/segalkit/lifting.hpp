// Exhaustive diagonal-lift search and right-lifting-property decisions
// against finite generator families.
#ifndef SEGALKIT_LIFTING_HPP
#define SEGALKIT_LIFTING_HPP

#include "segalkit/ops.hpp"
#include "segalkit/verdict.hpp"

namespace sk {

struct LiftingSquare {
    SMap i;       // A -> B
    SMap f;       // X -> Y
    SMap top;     // A -> X
    SMap bottom;  // B -> Y

    LiftingSquare(SMap i_, SMap f_, SMap top_, SMap bottom_);
};

// Every diagonal h: B -> X with h o i = top and f o h = bottom.
std::vector<SMap> solve_lifting(const LiftingSquare& sq, const Budget& budget = {});

struct GeneratorFamily {
    enum Kind { Horns, Boundaries } kind = Horns;
    int max_m = 2;  // horns: 1 <= m <= max_m, 0 <= k <= m; boundaries: 0 <= m <= max_m

    std::string describe() const;
};

struct RlpReport {
    Verdict verdict;
    std::size_t squares_checked = 0;
};

// Yes iff every commuting square against the family admits a lift; the No
// certificate pins down an unliftable square.
RlpReport has_rlp(const SMap& f, const GeneratorFamily& fam,
                  const Budget& budget = {});

}  // namespace sk

#endif
