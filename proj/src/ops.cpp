#include "segalkit/ops.hpp"

#include <algorithm>
#include <numeric>

namespace sk {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the smaller index as root
        parent[b] = a;
        return true;
    }
};

}  // namespace

std::vector<SMap> hom_enumerate(const SSetPtr& A, const SSetPtr& X,
                                const Budget& budget,
                                const std::function<bool(int, const Ref&)>& admit) {
    std::vector<int> order;
    for (int d = 0; d <= A->top_dim(); ++d)
        for (int id : A->ids_of_dim(d)) order.push_back(id);

    // candidate pools per dimension
    std::vector<std::vector<Ref>> pool(A->top_dim() + 1);
    for (int d = 0; d <= A->top_dim(); ++d)
        if (!A->ids_of_dim(d).empty()) pool[d] = X->all_refs(d);

    std::vector<Ref> assign(A->size());
    std::vector<SMap> out;

    auto extend = [&](auto&& self, std::size_t pos) -> void {
        if (pos == order.size()) {
            out.emplace_back(A, X, assign, false);
            return;
        }
        int id = order[pos];
        int d = A->dim_of(id);
        for (const Ref& cand : pool[d]) {
            budget.charge(1, d);
            if (admit && !admit(id, cand)) continue;
            bool ok = true;
            for (int i = 0; i <= d && d > 0; ++i) {
                const Ref& fr = A->faces_of(id)[i];
                if (push_word(assign[fr.id], fr.word) != X->face(cand, i)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assign[id] = cand;
            self(self, pos + 1);
        }
    };
    extend(extend, 0);
    return out;
}

Ref ProductResult::ref_of_tuple(const std::vector<Ref>& refs) const {
    Word common = refs[0].word;
    for (std::size_t i = 1; i < refs.size() && !common.empty(); ++i)
        common = word_meet(common, refs[i].word);
    if (common.empty()) return Ref{id_of.at(refs), {}};
    std::vector<Ref> base(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i)
        base[i] = Ref{refs[i].id, word_strip(refs[i].word, common)};
    return Ref{id_of.at(base), common};
}

ProductResult product(const std::vector<SSetPtr>& factors, const Budget& budget) {
    if (factors.empty()) throw InvalidParameter("product of zero factors");
    ProductResult P;
    int topsum = 0;
    bool any_empty = false;
    for (const auto& f : factors) {
        if (f->size() == 0) any_empty = true;
        topsum += std::max(f->top_dim(), 0);
    }
    std::string name = "prod";
    std::vector<int> dim_start;  // first product id of each dimension

    if (!any_empty) {
        for (int n = 0; n <= topsum && n <= budget.max_dim; ++n) {
            std::vector<std::vector<Ref>> pools(factors.size());
            bool nonempty = true;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                pools[i] = factors[i]->all_refs(n);
                if (pools[i].empty()) nonempty = false;
            }
            if (!nonempty) break;
            std::size_t before = P.components.size();
            std::vector<Ref> cur(factors.size());
            // tuples in lexicographic order, pruning on the running word meet
            auto rec = [&](auto&& self, std::size_t i, Word meet) -> void {
                if (i == factors.size()) {
                    if (meet.empty()) {
                        P.components.push_back(cur);
                        budget.check_size(P.components.size(), n);
                    }
                    return;
                }
                for (const Ref& r : pools[i]) {
                    budget.charge(1, n);
                    Word m2 = (i == 0) ? r.word : word_meet(meet, r.word);
                    cur[i] = r;
                    self(self, i + 1, std::move(m2));
                }
            };
            rec(rec, 0, {});
            if (P.components.size() == before && n > 0) break;  // stabilized
        }
    }
    for (int i = 0; i < static_cast<int>(P.components.size()); ++i)
        P.id_of[P.components[i]] = i;

    std::vector<Simplex> simps(P.components.size());
    for (std::size_t idx = 0; idx < P.components.size(); ++idx) {
        const auto& tup = P.components[idx];
        int n = factors[0]->ref_dim(tup[0]);
        simps[idx].dim = n;
        for (int i = 0; i <= n && n > 0; ++i) {
            std::vector<Ref> ftup(tup.size());
            for (std::size_t j = 0; j < tup.size(); ++j)
                ftup[j] = factors[j]->face(tup[j], i);
            simps[idx].faces.push_back(P.ref_of_tuple(ftup));
        }
    }
    P.prod = SSet::make(name, std::move(simps));
    for (std::size_t j = 0; j < factors.size(); ++j) {
        std::vector<Ref> a(P.components.size());
        for (std::size_t idx = 0; idx < P.components.size(); ++idx)
            a[idx] = P.components[idx][j];
        P.projections.emplace_back(P.prod, factors[j], std::move(a), false);
    }
    return P;
}

SMap tuple_map(const ProductResult& P, const std::vector<SMap>& fs) {
    if (fs.empty()) throw InvalidParameter("tuple_map: no components");
    const SSetPtr& T = fs[0].src();
    std::vector<Ref> a(T->size());
    for (int id = 0; id < T->size(); ++id) {
        std::vector<Ref> refs(fs.size());
        for (std::size_t j = 0; j < fs.size(); ++j) refs[j] = fs[j].apply(id);
        a[id] = P.ref_of_tuple(refs);
    }
    return SMap(T, P.prod, std::move(a));
}

CoproductResult coproduct(const std::vector<SSetPtr>& legs, std::string name) {
    CoproductResult C;
    std::vector<Simplex> simps;
    std::vector<int> offset(legs.size(), 0);
    for (std::size_t l = 0; l < legs.size(); ++l) {
        offset[l] = static_cast<int>(simps.size());
        for (int id = 0; id < legs[l]->size(); ++id) {
            Simplex s = legs[l]->simplex(id);
            for (Ref& f : s.faces) f.id += offset[l];
            simps.push_back(std::move(s));
            C.origin.emplace_back(static_cast<int>(l), id);
        }
    }
    if (name.empty()) name = "coprod";
    C.sum = SSet::make(std::move(name), std::move(simps));
    for (std::size_t l = 0; l < legs.size(); ++l) {
        std::vector<Ref> a(legs[l]->size());
        for (int id = 0; id < legs[l]->size(); ++id) a[id] = Ref{id + offset[l], {}};
        C.injections.emplace_back(legs[l], C.sum, std::move(a), false);
    }
    return C;
}

QuotientResult quotient(const SSetPtr& X,
                        const std::vector<std::pair<Ref, Ref>>& rels,
                        const Budget& budget, std::string name) {
    int D = std::max(X->top_dim(), 0);
    for (const auto& [a, b] : rels) D = std::max(D, X->ref_dim(a));
    // index every simplex of the total structure, dimension by dimension
    std::vector<std::vector<Ref>> elems(D + 1);
    std::vector<std::map<Ref, int>> index(D + 1);
    std::vector<std::size_t> offset(D + 2, 0);
    for (int d = 0; d <= D; ++d) {
        elems[d] = X->all_refs(d);
        for (int i = 0; i < static_cast<int>(elems[d].size()); ++i)
            index[d][elems[d][i]] = i;
        offset[d + 1] = offset[d] + elems[d].size();
    }
    auto code = [&](int d, const Ref& r) {
        return static_cast<int>(offset[d]) + index[d].at(r);
    };
    UnionFind uf(offset[D + 1]);
    std::vector<std::pair<int, int>> work;
    auto unite = [&](int d, const Ref& a, const Ref& b) {
        int ca = code(d, a), cb = code(d, b);
        if (uf.unite(ca, cb)) work.emplace_back(ca, cb);
    };
    for (const auto& [a, b] : rels) {
        int d = X->ref_dim(a);
        if (X->ref_dim(b) != d)
            throw InvalidParameter("quotient: relation between unequal dimensions");
        unite(d, a, b);
    }
    auto decode = [&](int c) -> std::pair<int, Ref> {
        int d = 0;
        while (static_cast<std::size_t>(c) >= offset[d + 1]) ++d;
        return {d, elems[d][c - offset[d]]};
    };
    while (!work.empty()) {
        auto [ca, cb] = work.back();
        work.pop_back();
        budget.charge();
        auto [d, p] = decode(ca);
        auto [d2, q] = decode(cb);
        for (int i = 0; i <= d && d > 0; ++i)
            unite(d - 1, X->face(p, i), X->face(q, i));
        if (d < D)
            for (int i = 0; i <= d; ++i)
                unite(d + 1, push_degeneracy(p, i), push_degeneracy(q, i));
    }

    // classes: root element index -> info
    std::vector<bool> degenerate(offset[D + 1], false);
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i < static_cast<int>(elems[d].size()); ++i)
            if (!elems[d][i].word.empty())
                degenerate[uf.find(static_cast<int>(offset[d]) + i)] = true;

    // nondegenerate classes in canonical order (root index order = minimal
    // element order, since unions keep the smaller index as root)
    QuotientResult R;
    std::vector<int> qid(offset[D + 1], -1);
    std::vector<int> roots;
    for (std::size_t c = 0; c < offset[D + 1]; ++c)
        if (uf.find(static_cast<int>(c)) == static_cast<int>(c) && !degenerate[c])
            roots.push_back(static_cast<int>(c));
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) qid[roots[i]] = i;
    budget.check_size(roots.size());

    // normal form of an arbitrary class, memoized
    std::vector<Ref> nf_memo(offset[D + 1], Ref{-2, {}});
    auto nf = [&](auto&& self, int root) -> Ref {
        if (nf_memo[root].id != -2) return nf_memo[root];
        Ref result;
        if (!degenerate[root]) {
            result = Ref{qid[root], {}};
        } else {
            auto [d, rep] = decode(root);
            // find any member with a nonempty word
            Ref dg{-1, {}};
            if (!rep.word.empty()) {
                dg = rep;
            } else {
                for (std::size_t c = offset[d]; c < offset[d + 1]; ++c)
                    if (uf.find(static_cast<int>(c)) == root &&
                        !elems[d][c - offset[d]].word.empty()) {
                        dg = elems[d][c - offset[d]];
                        break;
                    }
            }
            int base_dim = X->dim_of(dg.id);
            int base_root = uf.find(code(base_dim, Ref{dg.id, {}}));
            result = push_word(self(self, base_root), dg.word);
        }
        nf_memo[root] = result;
        return result;
    };

    std::vector<Simplex> simps(roots.size());
    R.section.resize(roots.size());
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        auto [d, rep] = decode(roots[i]);
        R.section[i] = rep;
        simps[i].dim = d;
        for (int j = 0; j <= d && d > 0; ++j) {
            Ref f = X->face(rep, j);
            simps[i].faces.push_back(nf(nf, uf.find(code(d - 1, f))));
        }
    }
    if (name.empty()) name = X->name() + "/~";
    R.q = SSet::make(std::move(name), std::move(simps));
    std::vector<Ref> qa(X->size());
    for (int id = 0; id < X->size(); ++id)
        qa[id] = nf(nf, uf.find(code(X->dim_of(id), Ref{id, {}})));
    R.to_quotient = SMap(X, R.q, std::move(qa));
    return R;
}

PushoutResult pushout(const SMap& f, const SMap& g, const Budget& budget) {
    if (f.src() != g.src()) throw InvalidParameter("pushout: legs must share a source");
    CoproductResult C = coproduct({f.dst(), g.dst()});
    const SSetPtr& A = f.src();
    std::vector<std::pair<Ref, Ref>> rels;
    for (int id = 0; id < A->size(); ++id)
        rels.emplace_back(C.injections[0].apply(f.apply(id)),
                          C.injections[1].apply(g.apply(id)));
    QuotientResult Q = quotient(C.sum, rels, budget,
                                f.dst()->name() + "+_" + g.dst()->name());
    PushoutResult P;
    P.p = Q.q;
    P.from_b = compose(Q.to_quotient, C.injections[0]);
    P.from_c = compose(Q.to_quotient, C.injections[1]);
    int bsize = f.dst()->size();
    for (const Ref& rep : Q.section) {
        if (rep.id < bsize)
            P.section.emplace_back(0, rep);
        else
            P.section.emplace_back(1, Ref{rep.id - bsize, rep.word});
    }
    return P;
}

std::optional<SMap> find_isomorphism(const SSetPtr& A, const SSetPtr& B,
                                     const Budget& budget) {
    if (A->size() != B->size() || A->top_dim() != B->top_dim()) return std::nullopt;
    for (int d = 0; d <= A->top_dim(); ++d)
        if (A->count_dim(d) != B->count_dim(d)) return std::nullopt;

    std::vector<int> order;
    for (int d = 0; d <= A->top_dim(); ++d)
        for (int id : A->ids_of_dim(d)) order.push_back(id);

    std::vector<Ref> assign(A->size());
    std::vector<bool> used(B->size(), false);
    std::optional<SMap> result;

    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size()) {
            result = SMap(A, B, assign, false);
            return true;
        }
        int id = order[pos];
        int d = A->dim_of(id);
        for (int b : B->ids_of_dim(d)) {
            if (used[b]) continue;
            budget.charge(1, d);
            bool ok = true;
            for (int i = 0; i <= d && d > 0; ++i) {
                const Ref& fr = A->faces_of(id)[i];
                Ref mapped{assign[fr.id].id, fr.word};  // iso sends nondeg to nondeg
                if (mapped != B->faces_of(b)[i]) { ok = false; break; }
            }
            if (!ok) continue;
            used[b] = true;
            assign[id] = Ref{b, {}};
            if (self(self, pos + 1)) return true;
            used[b] = false;
        }
        return false;
    };
    rec(rec, 0);
    return result;
}

SkeletonResult subcomplex(const SSetPtr& X, const std::vector<int>& keep_ids,
                          std::string name) {
    std::vector<int> old_to_new(X->size(), -1);
    std::vector<int> kept = keep_ids;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    // keep canonical (dim, id) order consistent with the ambient complex
    std::stable_sort(kept.begin(), kept.end(), [&](int a, int b) {
        if (X->dim_of(a) != X->dim_of(b)) return X->dim_of(a) < X->dim_of(b);
        return a < b;
    });
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) old_to_new[kept[i]] = i;
    std::vector<Simplex> simps(kept.size());
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
        const Simplex& s = X->simplex(kept[i]);
        simps[i].dim = s.dim;
        for (const Ref& f : s.faces) {
            if (old_to_new[f.id] < 0)
                throw InvalidParameter("subcomplex: set of simplices is not face-closed");
            simps[i].faces.push_back(Ref{old_to_new[f.id], f.word});
        }
    }
    SkeletonResult R;
    if (name.empty()) name = X->name() + "|sub";
    R.sk = SSet::make(std::move(name), std::move(simps));
    std::vector<Ref> a(kept.size());
    for (int i = 0; i < static_cast<int>(kept.size()); ++i) a[i] = Ref{kept[i], {}};
    R.inclusion = SMap(R.sk, X, std::move(a), false);
    return R;
}

SkeletonResult skeleton(const SSetPtr& X, int n) {
    std::vector<int> keep;
    for (int id = 0; id < X->size(); ++id)
        if (X->dim_of(id) <= n) keep.push_back(id);
    SkeletonResult R = subcomplex(X, keep, "sk" + std::to_string(n) + "_" + X->name());
    return R;
}

SMap restrict_map(const SMap& f, const SkeletonResult& sub) {
    return compose(f, sub.inclusion);
}

SMap corestrict_map(const SMap& f, const SkeletonResult& sub) {
    const SSetPtr& Y = f.dst();
    std::vector<int> sub_id(Y->size(), -1);
    const auto& inc = sub.inclusion.assignment();
    for (int s = 0; s < static_cast<int>(inc.size()); ++s)
        sub_id[inc[s].id] = s;
    std::vector<Ref> assign;
    assign.reserve(f.assignment().size());
    for (const Ref& r : f.assignment()) {
        if (sub_id[r.id] < 0)
            throw InvalidParameter("corestrict_map: image leaves the subcomplex");
        assign.push_back(Ref{sub_id[r.id], r.word});
    }
    return SMap(f.src(), sub.sk, std::move(assign));
}

SkeletonResult image_subcomplex(const SMap& f, std::string name) {
    const SSetPtr& Y = f.dst();
    std::vector<bool> keep(Y->size(), false);
    std::vector<int> stack;
    for (const Ref& r : f.assignment())
        if (!keep[r.id]) { keep[r.id] = true; stack.push_back(r.id); }
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        for (const Ref& fc : Y->faces_of(id))
            if (!keep[fc.id]) { keep[fc.id] = true; stack.push_back(fc.id); }
    }
    std::vector<int> ids;
    for (int i = 0; i < Y->size(); ++i)
        if (keep[i]) ids.push_back(i);
    return subcomplex(Y, ids, std::move(name));
}

}  // namespace sk
