#include "segalkit/lifting.hpp"

#include "segalkit/builders.hpp"

namespace sk {

LiftingSquare::LiftingSquare(SMap i_, SMap f_, SMap top_, SMap bottom_)
    : i(std::move(i_)), f(std::move(f_)), top(std::move(top_)), bottom(std::move(bottom_)) {
    if (i.src() != top.src() || i.dst() != bottom.src() || f.src() != top.dst() ||
        f.dst() != bottom.dst())
        throw InvalidParameter("lifting square: object mismatch");
    if (!(compose(f, top) == compose(bottom, i)))
        throw InvalidParameter("lifting square does not commute");
}

std::vector<SMap> solve_lifting(const LiftingSquare& sq, const Budget& budget) {
    const SSetPtr& A = sq.i.src();
    const SSetPtr& B = sq.i.dst();
    const SSetPtr& X = sq.f.src();

    // constraints from the top: i(a) = (b0, W) forces s_W h(b0) = top(a)
    std::vector<std::vector<std::pair<Word, Ref>>> pinned(B->size());
    for (int a = 0; a < A->size(); ++a) {
        Ref ia = sq.i.apply(a);
        pinned[ia.id].emplace_back(ia.word, sq.top.apply(a));
    }

    auto admit = [&](int b, const Ref& cand) {
        if (!(sq.f.apply(cand) == sq.bottom.apply(b))) return false;
        for (const auto& [w, want] : pinned[b])
            if (push_word(cand, w) != want) return false;
        return true;
    };
    return hom_enumerate(B, X, budget, admit);
}

std::string GeneratorFamily::describe() const {
    std::string base = kind == Horns ? "horns" : "boundaries";
    return base + " m<=" + std::to_string(max_m);
}

RlpReport has_rlp(const SMap& f, const GeneratorFamily& fam, const Budget& budget) {
    RlpReport rep;
    try {
        auto run_instance = [&](const SubsetComplex& Ac, const SubsetComplex& Bc,
                                const std::string& label) -> bool {
            SMap incl = subset_inclusion(Ac, Bc);
            auto bottoms = hom_enumerate(Bc.s, f.dst(), budget);
            for (const SMap& bottom : bottoms) {
                SMap want = compose(bottom, incl);  // A -> Y
                auto admit = [&](int a, const Ref& cand) {
                    return f.apply(cand) == want.apply(a);
                };
                auto tops = hom_enumerate(Ac.s, f.src(), budget, admit);
                for (const SMap& top : tops) {
                    ++rep.squares_checked;
                    LiftingSquare sq(incl, f, top, bottom);
                    if (solve_lifting(sq, budget).empty()) {
                        nlohmann::json cert;
                        cert["generator"] = label;
                        nlohmann::json tj, bj;
                        for (const Ref& r : top.assignment()) tj.push_back(to_string(r));
                        for (const Ref& r : bottom.assignment()) bj.push_back(to_string(r));
                        cert["top"] = tj;
                        cert["bottom"] = bj;
                        rep.verdict = Verdict::make_no("unliftable-square", cert);
                        return false;
                    }
                }
            }
            return true;
        };

        if (fam.kind == GeneratorFamily::Horns) {
            for (int m = 1; m <= fam.max_m; ++m) {
                auto Bc = standard_simplex(m);
                for (int k = 0; k <= m; ++k) {
                    auto Ac = horn(m, k);
                    if (!run_instance(Ac, Bc,
                                      "V[" + std::to_string(m) + "," + std::to_string(k) +
                                          "] -> Delta[" + std::to_string(m) + "]"))
                        return rep;
                }
            }
        } else {
            for (int m = 0; m <= fam.max_m; ++m) {
                auto Bc = standard_simplex(m);
                auto Ac = boundary(m);
                if (!run_instance(Ac, Bc,
                                  "dDelta[" + std::to_string(m) + "] -> Delta[" +
                                      std::to_string(m) + "]"))
                    return rep;
            }
        }
        rep.verdict = Verdict::make_yes(
            "rlp-exhaustive",
            {{"family", fam.describe()}, {"squares", rep.squares_checked}});
    } catch (const BudgetExceeded& e) {
        rep.verdict = Verdict::make_unknown(
            "budget-exhausted",
            {{"what", e.what()}, {"dimension", e.dimension}, {"steps", budget.used()}});
    }
    return rep;
}

}  // namespace sk
