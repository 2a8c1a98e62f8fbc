#include "segalkit/segal.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "segalkit/builders.hpp"
#include "segalkit/invariants.hpp"
#include "segalkit/lifting.hpp"

namespace sk {

namespace {

Word full_word(int d) {
    Word w;
    for (int i = 0; i < d; ++i) w.push_back(i);
    return w;
}

std::vector<int> coface_vals(int m, int i) {  // delta^i : [m-1] -> [m]
    std::vector<int> a;
    for (int j = 0; j < m; ++j) a.push_back(j < i ? j : j + 1);
    return a;
}

std::vector<int> codegen_vals(int m, int i) {  // sigma^i : [m+1] -> [m]
    std::vector<int> a;
    for (int j = 0; j <= m + 1; ++j) a.push_back(j <= i ? j : j - 1);
    return a;
}

}  // namespace


SegalPrecategory::SegalPrecategory(BisimPtr b) : b_(std::move(b)) {
    SSetPtr r0 = b_->row(0);
    if (r0->top_dim() > 0)
        throw InvalidParameter("SegalPrecategory: row 0 is not discrete");
    nobjects_ = r0->size();
}

int SegalPrecategory::object_at(int n, const Ref& r, int j) const {
    return b_->op(n, {j}).apply(r).id;
}

std::vector<int> SegalPrecategory::vertex_tuple(int n, const Ref& r) const {
    std::vector<int> out;
    for (int j = 0; j <= n; ++j) out.push_back(object_at(n, r, j));
    return out;
}

SkeletonResult fiber(const SegalPrecategory& X, const std::vector<int>& verts) {
    if (verts.empty()) throw InvalidParameter("fiber: empty vertex tuple");
    int n = static_cast<int>(verts.size()) - 1;
    SSetPtr row = X.bis()->row(n);
    std::vector<int> keep;
    for (int id = 0; id < row->size(); ++id)
        if (X.vertex_tuple(n, Ref{id, {}}) == verts) keep.push_back(id);
    std::string nm = X.bis()->name() + "_fiber";
    for (int v : verts) nm += "_" + std::to_string(v);
    return subcomplex(row, keep, nm);
}

Reduction reduce(const BisimPtr& X, const Budget& budget) {
    BisimPtr parent = X;
    auto rels = [parent](int n) {
        std::vector<std::pair<Ref, Ref>> out;
        SSetPtr r0 = parent->row(0);
        SMap d = parent->op(0, std::vector<int>(n + 1, 0));
        for (int s = 0; s < r0->size(); ++s) {
            int ds = r0->dim_of(s);
            if (ds < 1) continue;
            Ref a = d.apply(Ref{s, {}});
            Ref b = d.apply(r0->act(Ref{s, {}}, {0}));
            for (int t = 0; t < ds; ++t) b = push_degeneracy(b, 0);
            out.emplace_back(a, b);
        }
        return out;
    };
    auto q = std::make_shared<LevelQuotientBis>(X, rels, budget,
                                                "(" + X->name() + ")_r");
    return Reduction{parent, q, SegalPrecategory(q)};
}

BisMap Reduction::unit(int window) const {
    std::vector<SMap> rows;
    for (int n = 0; n <= window; ++n) rows.push_back(q->to_quotient_row(n));
    return BisMap(parent, q, std::move(rows));
}

BisMap reduce_map(const Reduction& RX, const Reduction& RY, const BisMap& f) {
    if (f.src() != RX.parent || f.dst() != RY.parent)
        throw InvalidParameter("reduce_map: endpoints do not match");
    std::vector<SMap> rows;
    for (int n = 0; n <= f.window(); ++n) {
        RX.q->row(n);
        RY.q->row(n);
        std::vector<Ref> assign;
        for (const Ref& sec : RX.q->level(n).section)
            assign.push_back(RY.q->to_quotient_row(n).apply(f.row(n).apply(sec)));
        rows.emplace_back(RX.q->row(n), RY.q->row(n), std::move(assign));
    }
    return BisMap(RX.q, RY.q, std::move(rows));
}

// --- Generators ---

namespace {

void check_bidegree(int m, int n, const char* who) {
    if (m < 0 || n < 0) throw InvalidParameter(std::string(who) + ": negative bidegree");
    if (n == 0 && m >= 1)
        throw InvalidParameter(std::string(who) +
                               ": bidegree (m, 0) with m >= 1 is not a generator");
}

BisMap empty_to_point(int window) {
    auto e = std::make_shared<ConstantBis>(empty_sset(), "empty");
    auto p = std::make_shared<ConstantBis>(point_sset(), "pt");
    std::vector<SMap> rows;
    for (int n = 0; n <= window; ++n)
        rows.emplace_back(e->row(n), p->row(n), std::vector<Ref>{});
    return BisMap(e, p, std::move(rows));
}

// Pointwise-constant inclusion rows: n+1 points into the transpose of
// Delta[n].
SMap vertex_inclusion_row(const SSetPtr& dc, const SubsetComplex& dn,
                          const std::shared_ptr<const TransposeBis>& tn, int j) {
    std::vector<Ref> assign;
    for (int i = 0; i <= dn.n; ++i) {
        Ref r = Ref{dn.id_of.at({i}), full_word(j)};
        assign.push_back(Ref{tn->index_of(j, r), {}});
    }
    return SMap(dc, tn->row(j), std::move(assign));
}

struct Hull {  // pushout of L x (n+1 pts) -> L x Delta[n]^t over the points
    std::shared_ptr<const ProductBis> big;  // L x Delta[n]^t
    std::shared_ptr<const PushoutBis> po;
};

Hull make_hull(const SSetPtr& L, const SubsetComplex& dn,
               const std::shared_ptr<const ConstantBis>& dc,
               const std::shared_ptr<const TransposeBis>& tn, int window,
               const Budget& budget) {
    auto cl = std::make_shared<ConstantBis>(L);
    auto A = std::make_shared<ProductBis>(std::vector<BisimPtr>{cl, dc}, budget);
    auto B = std::make_shared<ProductBis>(std::vector<BisimPtr>{cl, tn}, budget);
    std::vector<SMap> frows, grows;
    for (int j = 0; j <= window; ++j) {
        SMap iota = vertex_inclusion_row(dc->base(), dn, tn, j);
        B->row(j);
        frows.push_back(tuple_map(B->level(j),
                                  {A->projection(0, j),
                                   compose(iota, A->projection(1, j))}));
        grows.push_back(A->projection(1, j));
    }
    BisMap f(A, B, std::move(frows));
    BisMap g(A, dc, std::move(grows));
    Hull h;
    h.big = B;
    h.po = std::make_shared<PushoutBis>(std::move(f), std::move(g), budget);
    return h;
}

}  // namespace

GeneratorMap cofib_generator(int m, int n, int window, const Budget& budget) {
    check_bidegree(m, n, "cofib_generator");
    std::string label = "cofib[" + std::to_string(m) + "," + std::to_string(n) + "]";
    if (n == 0) return GeneratorMap{empty_to_point(window), label};

    SubsetComplex dm = standard_simplex(m);
    SubsetComplex dn = standard_simplex(n);
    auto top_of = [](const SubsetComplex& sc) {
        std::vector<int> full;
        for (int i = 0; i <= sc.n; ++i) full.push_back(i);
        return sc.id_of.at(full);
    };
    int top_m = top_of(dm);
    int top_n = top_of(dn);
    auto tn = std::make_shared<TransposeBis>(dn.s);
    auto amb = std::make_shared<ProductBis>(
        std::vector<BisimPtr>{std::make_shared<ConstantBis>(dm.s), tn}, budget);
    auto keep = [amb, tn, top_m, top_n](const Bisim&, int j) {
        std::vector<int> out;
        amb->row(j);
        const ProductResult& lv = amb->level(j);
        for (std::size_t id = 0; id < lv.components.size(); ++id) {
            const Ref& ra = lv.components[id][0];
            const Ref& rb = lv.components[id][1];
            bool in_bd_m = ra.id != top_m;
            bool in_bd_n = tn->refs_of_row(j).at(rb.id).id != top_n;
            if (in_bd_m || in_bd_n) out.push_back(static_cast<int>(id));
        }
        return out;
    };
    auto U = std::make_shared<SubBis>(amb, keep);
    std::vector<SMap> irows;
    for (int j = 0; j <= window; ++j) irows.push_back(U->inclusion_row(j));
    BisMap incl(U, amb, std::move(irows));
    Reduction RU = reduce(U, budget);
    Reduction RA = reduce(amb, budget);
    return GeneratorMap{reduce_map(RU, RA, incl), label};
}

GeneratorMap segal_generator(int m, int n, int window, const Budget& budget) {
    check_bidegree(m, n, "segal_generator");
    std::string label = "segal[" + std::to_string(m) + "," + std::to_string(n) + "]";
    if (n == 0) return GeneratorMap{empty_to_point(window), label};

    SubsetComplex bm = boundary(m);
    SubsetComplex dm = standard_simplex(m);
    SubsetComplex dn = standard_simplex(n);
    auto dc = std::make_shared<ConstantBis>(discrete_sset(n + 1), "pts");
    auto tn = std::make_shared<TransposeBis>(dn.s);
    Hull P = make_hull(bm.s, dn, dc, tn, window, budget);
    Hull Q = make_hull(dm.s, dn, dc, tn, window, budget);
    SMap lincl = subset_inclusion(bm, dm);
    std::vector<SMap> rows;
    for (int j = 0; j <= window; ++j) {
        P.po->row(j);
        Q.po->row(j);
        Q.big->row(j);
        SMap bmap = tuple_map(Q.big->level(j),
                              {compose(lincl, P.big->projection(0, j)),
                               P.big->projection(1, j)});
        std::vector<Ref> assign;
        for (const auto& [leg, sec] : P.po->level(j).section)
            assign.push_back(leg == 0
                                 ? Q.po->from_b_row(j).apply(bmap.apply(sec))
                                 : Q.po->from_c_row(j).apply(sec));
        rows.emplace_back(P.po->row(j), Q.po->row(j), std::move(assign));
    }
    return GeneratorMap{BisMap(P.po, Q.po, std::move(rows)), label};
}

Verdict bis_has_rlp(const BisMap& f, const BisMap& gen, int window,
                    const Budget& budget) {
    try {
        std::vector<BisMap> tops = bis_hom_enumerate(gen.src(), f.src(), window, budget);
        std::vector<BisMap> bottoms =
            bis_hom_enumerate(gen.dst(), f.dst(), window, budget);
        std::vector<BisMap> cands = bis_hom_enumerate(gen.dst(), f.src(), window, budget);
        std::size_t squares = 0;
        for (const BisMap& top : tops)
            for (const BisMap& bot : bottoms) {
                if (!(bis_compose(f, top) == bis_compose(bot, gen))) continue;
                ++squares;
                bool lifted = false;
                for (const BisMap& h : cands) {
                    if (bis_compose(h, gen) == top && bis_compose(f, h) == bot) {
                        lifted = true;
                        break;
                    }
                }
                if (!lifted)
                    return Verdict::make_no("unliftable-square",
                                            {{"squares_checked", squares}});
            }
        return Verdict::make_yes("all-squares-lifted", {{"squares", squares}});
    } catch (const BudgetExceeded& e) {
        return Verdict::make_unknown("budget-exhausted", {{"what", e.what()}});
    }
}

Verdict injective_fibration_check(const BisMap& f, int max_m, int max_n,
                                  const Budget& budget) {
    SegalPrecategory X(f.src()), Y(f.dst());
    if (!f.row(0).is_surjective())
        return Verdict::make_no("objects-not-surjective");
    GeneratorFamily fam{GeneratorFamily::Boundaries, max_m};
    bool unknown = false;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> tuple(n + 1, 0);
        while (true) {
            SkeletonResult FX = fiber(X, tuple);
            std::vector<int> img;
            for (int v : tuple) img.push_back(f.row(0).apply(Ref{v, {}}).id);
            SkeletonResult FY = fiber(Y, img);
            SMap fm = corestrict_map(compose(f.row(n), FX.inclusion), FY);
            RlpReport rep = has_rlp(fm, fam, budget);
            if (rep.verdict.no())
                return Verdict::make_no("fiber-not-fibration",
                                        {{"n", n},
                                         {"tuple", tuple},
                                         {"inner", rep.verdict.to_json()}});
            if (!rep.verdict.yes()) unknown = true;
            int i = n;
            while (i >= 0 && tuple[i] == X.nobjects() - 1) tuple[i--] = 0;
            if (i < 0) break;
            ++tuple[i];
        }
    }
    if (unknown) return Verdict::make_unknown("fiber-verdict-unknown");
    return Verdict::make_yes("objects-surjective-and-fibers-fibrations");
}

// --- Spines, Segal condition ---

SpinePair spine_pair(int k, int window) {
    SubsetComplex sp = spine(k);
    SubsetComplex dk = standard_simplex(k);
    auto gt = std::make_shared<TransposeBis>(sp.s, "G(" + std::to_string(k) + ")^t");
    auto dt = std::make_shared<TransposeBis>(dk.s);
    SMap m = subset_inclusion(sp, dk);
    std::vector<SMap> rows;
    for (int j = 0; j <= window; ++j) {
        std::vector<Ref> assign;
        for (const Ref& r : gt->refs_of_row(j))
            assign.push_back(Ref{dt->index_of(j, m.apply(r)), {}});
        rows.emplace_back(gt->row(j), dt->row(j), std::move(assign));
    }
    return SpinePair{gt, dt, BisMap(gt, dt, std::move(rows))};
}

namespace {

// Strict k-fold fiber product of row 1 over row 0, with the comparison map
// from row k.
struct SegalStage {
    SkeletonResult limit;  // inside the k-fold product of row 1
    SMap phi;              // row(k) -> limit
};

SegalStage segal_stage(const BisimPtr& X, int k, const Budget& budget) {
    SSetPtr X1 = X->row(1);
    ProductResult P = product(std::vector<SSetPtr>(k, X1), budget);
    SMap src_of = X->op(1, {0}), dst_of = X->op(1, {1});
    std::vector<int> keep;
    for (std::size_t id = 0; id < P.components.size(); ++id) {
        bool ok = true;
        for (int i = 0; i + 1 < k && ok; ++i)
            ok = dst_of.apply(P.components[id][i]).id ==
                 src_of.apply(P.components[id][i + 1]).id;
        if (ok) keep.push_back(static_cast<int>(id));
    }
    SegalStage st;
    st.limit = subcomplex(P.prod, keep, X->name() + "_w" + std::to_string(k));
    std::vector<SMap> edges;
    for (int i = 1; i <= k; ++i) edges.push_back(X->op(k, {i - 1, i}));
    st.phi = corestrict_map(tuple_map(P, edges), st.limit);
    return st;
}

}  // namespace

SegalReport segal_check(const SegalPrecategory& X, int kmax,
                        const WeOptions& opts) {
    if (kmax < 2) throw InvalidParameter("segal_check: kmax must be >= 2");
    SegalReport rep;
    rep.details = nlohmann::json::array();
    Truth overall = Truth::Yes;
    for (int k = 2; k <= kmax; ++k) {
        SegalStage st = segal_stage(X.bis(), k, opts.budget);
        Verdict v = we_verdict(st.phi, opts);
        rep.details.push_back({{"k", k},
                               {"row_size", X.bis()->row(k)->size()},
                               {"limit_size", st.limit.sk->size()},
                               {"verdict", v.to_json()}});
        if (v.no()) overall = Truth::No;
        else if (!v.yes() && overall == Truth::Yes) overall = Truth::Unknown;
        rep.per_k.push_back(std::move(v));
    }
    rep.overall =
        overall == Truth::Yes
            ? Verdict::make_yes("all-segal-maps-weak-equivalences", rep.details)
            : (overall == Truth::No
                   ? Verdict::make_no("segal-map-fails", rep.details)
                   : Verdict::make_unknown("segal-map-undecided", rep.details));
    return rep;
}

// --- Homotopy category ---

namespace {

struct HoData {
    FiniteCategory cat;
    std::map<int, int> class_of_vertex;  // row-1 vertex id -> arrow
    std::vector<int> rep_vertex;         // arrow -> row-1 vertex id
};

HoData ho_data(const SegalPrecategory& X) {
    HoData H;
    int no = X.nobjects();
    H.cat.name = "ho(" + X.bis()->name() + ")";
    H.cat.nobjects = no;
    for (int x = 0; x < no; ++x)
        for (int y = 0; y < no; ++y) {
            SkeletonResult F = fiber(X, {x, y});
            Pi0Result p = pi0(F.sk);
            int offset = H.cat.narrows();
            for (int c = 0; c < p.count; ++c) {
                H.cat.arrow_src.push_back(x);
                H.cat.arrow_dst.push_back(y);
                H.rep_vertex.push_back(-1);
            }
            const auto& verts = F.sk->ids_of_dim(0);
            for (std::size_t s = 0; s < verts.size(); ++s) {
                int rv = F.inclusion.apply(Ref{static_cast<int>(verts[s]), {}}).id;
                int cls = offset + p.component[s];
                H.class_of_vertex[rv] = cls;
                if (H.rep_vertex[cls] < 0) H.rep_vertex[cls] = rv;
            }
        }
    H.cat.identity.resize(no);
    SMap s0 = X.bis()->degen_op(0, 0);
    for (int x = 0; x < no; ++x)
        H.cat.identity[x] = H.class_of_vertex.at(s0.apply(Ref{x, {}}).id);

    int na = H.cat.narrows();
    H.cat.table.assign(na, std::vector<int>(na, -1));
    SMap e01 = X.bis()->op(2, {0, 1});
    SMap e12 = X.bis()->op(2, {1, 2});
    SMap e02 = X.bis()->op(2, {0, 2});
    for (int S : X.bis()->row(2)->ids_of_dim(0)) {
        Ref r{S, {}};
        int cf = H.class_of_vertex.at(e01.apply(r).id);
        int cg = H.class_of_vertex.at(e12.apply(r).id);
        int ch = H.class_of_vertex.at(e02.apply(r).id);
        int& cell = H.cat.table[cg][cf];
        if (cell >= 0 && cell != ch)
            throw SegalDefect("composite of arrows " + std::to_string(cf) + ", " +
                              std::to_string(cg) + " is ambiguous in row 2");
        cell = ch;
    }
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f)
            if (H.cat.composable(g, f) && H.cat.table[g][f] < 0)
                throw MissingComposite("no row-2 witness composing arrows " +
                                       std::to_string(f) + " then " +
                                       std::to_string(g));
    try {
        H.cat.validate();
    } catch (const InvalidParameter& e) {
        throw SegalDefect(std::string("row 2 composition is not categorical: ") +
                          e.what());
    }
    return H;
}

}  // namespace

FiniteCategory ho_category(const SegalPrecategory& X) { return ho_data(X).cat; }

Functor ho_functor(const BisMap& f) {
    SegalPrecategory U(f.src()), V(f.dst());
    HoData HU = ho_data(U), HV = ho_data(V);
    Functor F{HU.cat, HV.cat, {}, {}};
    for (int x = 0; x < U.nobjects(); ++x)
        F.obj_map.push_back(f.row(0).apply(Ref{x, {}}).id);
    for (int a = 0; a < HU.cat.narrows(); ++a)
        F.arrow_map.push_back(
            HV.class_of_vertex.at(f.row(1).apply(Ref{HU.rep_vertex[a], {}}).id));
    F.validate();
    return F;
}

Verdict complete_check(const SegalPrecategory& X, const WeOptions& opts) {
    HoData H = ho_data(X);
    SSetPtr X1 = X.bis()->row(1);
    std::vector<int> keep;
    for (int id = 0; id < X1->size(); ++id) {
        int v = X1->act(Ref{id, {}}, {0}).id;
        if (H.cat.is_iso_arrow(H.class_of_vertex.at(v))) keep.push_back(id);
    }
    SkeletonResult W = subcomplex(X1, keep, X.bis()->name() + "_hoequiv");
    SMap s0 = corestrict_map(X.bis()->degen_op(0, 0), W);
    return we_verdict(s0, opts);
}

Verdict dk_check_segal(const BisMap& f, const WeOptions& opts) {
    SegalPrecategory U(f.src()), V(f.dst());
    bool unknown = false;
    nlohmann::json parts = nlohmann::json::array();
    for (int x = 0; x < U.nobjects(); ++x)
        for (int y = 0; y < U.nobjects(); ++y) {
            SkeletonResult FU = fiber(U, {x, y});
            int fx = f.row(0).apply(Ref{x, {}}).id;
            int fy = f.row(0).apply(Ref{y, {}}).id;
            SkeletonResult FV = fiber(V, {fx, fy});
            SMap fm = corestrict_map(compose(f.row(1), FU.inclusion), FV);
            Verdict v = we_verdict(fm, opts);
            parts.push_back({{"x", x}, {"y", y}, {"verdict", v.to_json()}});
            if (v.no())
                return Verdict::make_no("fiber-not-weak-equivalence",
                                        {{"x", x}, {"y", y}, {"inner", v.to_json()}});
            if (!v.yes()) unknown = true;
        }
    Verdict eq = cat_equiv_check(ho_functor(f));
    if (eq.no()) return Verdict::make_no("ho-not-equivalence", eq.to_json());
    if (unknown) return Verdict::make_unknown("fiber-verdict-unknown", parts);
    return Verdict::make_yes("dk-equivalence", parts);
}

// --- Fixed-object simplices ---

PsiBis::PsiBis(int n, std::vector<int> labels, int nobjects, int spread)
    : Bisim("psi(" + std::to_string(n) + "," + std::to_string(spread) + ")"),
      n_(n), nobjects_(nobjects), k_(spread), labels_(std::move(labels)) {
    if (n < 0 || nobjects < 1 || spread < 1)
        throw InvalidParameter("PsiBis: bad parameters");
    if (static_cast<int>(labels_.size()) != n + 1)
        throw InvalidParameter("PsiBis: need n+1 labels");
    for (int l : labels_)
        if (l < 0 || l >= nobjects) throw InvalidParameter("PsiBis: label out of range");
}

const std::vector<std::vector<int>>& PsiBis::tuples(int m) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = tuples_.find(m);
    if (it != tuples_.end()) return it->second;
    std::vector<std::vector<int>> out;
    for (const auto& t : monotone_maps(m, n_))
        if (t.back() - t.front() >= 1 && t.back() - t.front() <= k_)
            out.push_back(t);
    return tuples_.emplace(m, std::move(out)).first->second;
}

int PsiBis::index_of(int m, const std::vector<int>& t) const {
    if (t.front() == t.back()) return labels_[t.front()];
    const auto& ts = tuples(m);
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.end() || *it != t)
        throw InvalidParameter("PsiBis: tuple not present at this spread");
    return nobjects_ + static_cast<int>(it - ts.begin());
}

SSetPtr PsiBis::compute_row(int m) const {
    return discrete_sset(nobjects_ + static_cast<int>(tuples(m).size()),
                         name() + "_" + std::to_string(m));
}

SMap PsiBis::act(int m_src, int m_dst, const std::vector<int>& alpha) const {
    std::vector<Ref> assign;
    for (int o = 0; o < nobjects_; ++o) assign.push_back(Ref{o, {}});
    for (const auto& t : tuples(m_src)) {
        std::vector<int> t2;
        for (int v : alpha) t2.push_back(t[v]);
        assign.push_back(Ref{index_of(m_dst, t2), {}});
    }
    return SMap(row(m_src), row(m_dst), std::move(assign));
}

SMap PsiBis::compute_face_op(int m, int i) const {
    return act(m, m - 1, coface_vals(m, i));
}

SMap PsiBis::compute_degen_op(int m, int i) const {
    return act(m, m + 1, codegen_vals(m, i));
}

BisMap psi_inclusion(const std::shared_ptr<const PsiBis>& a,
                     const std::shared_ptr<const PsiBis>& b, int window) {
    if (a->base_n() != b->base_n() || a->nobjects() != b->nobjects() ||
        a->spread() > b->spread())
        throw InvalidParameter("psi_inclusion: stages do not nest");
    std::vector<SMap> rows;
    for (int m = 0; m <= window; ++m) {
        std::vector<Ref> assign;
        for (int o = 0; o < a->nobjects(); ++o) assign.push_back(Ref{o, {}});
        for (const auto& t : a->tuples(m))
            assign.push_back(Ref{b->index_of(m, t), {}});
        rows.emplace_back(a->row(m), b->row(m), std::move(assign));
    }
    return BisMap(a, b, std::move(rows));
}

// --- Nerves ---

SegalPrecategory nerve_precat(const FiniteCategory& C, int dim_bound) {
    return SegalPrecategory(std::make_shared<TransposeBis>(
        nerve_sset(C, dim_bound), "nerve(" + C.name + ")^t"));
}

namespace {

struct ScatNerve {
    FiniteSimplicialCategory C;
    Budget budget;
    SSetPtr row0;

    struct Lvl {
        std::vector<std::vector<int>> chains;
        std::vector<ProductResult> prods;
        CoproductResult cp;
    };
    std::mutex mu;
    std::map<int, Lvl> lvls;

    int chain_index(const std::vector<int>& c) const {
        int idx = 0;
        for (int x : c) idx = idx * C.nobjects + x;
        return idx;
    }

    const Lvl& lvl(int n) {
        std::lock_guard<std::mutex> lk(mu);
        auto it = lvls.find(n);
        if (it != lvls.end()) return it->second;
        Lvl L;
        std::vector<int> c(n + 1, 0);
        while (true) {
            budget.charge();
            L.chains.push_back(c);
            std::vector<SSetPtr> factors;
            for (int i = 1; i <= n; ++i) factors.push_back(C.hom[c[i - 1]][c[i]]);
            L.prods.push_back(product(factors, budget));
            int i = n;
            while (i >= 0 && c[i] == C.nobjects - 1) c[i--] = 0;
            if (i < 0) break;
            ++c[i];
        }
        std::vector<SSetPtr> legs;
        for (const auto& p : L.prods) legs.push_back(p.prod);
        L.cp = coproduct(legs, "nerve(" + C.name + ")_" + std::to_string(n));
        return lvls.emplace(n, std::move(L)).first->second;
    }
};

}  // namespace

SegalPrecategory nerve_scat(const FiniteSimplicialCategory& C, const Budget& budget) {
    auto data = std::make_shared<ScatNerve>();
    data->C = C;
    data->budget = budget;
    data->row0 = discrete_sset(C.nobjects, "nerve(" + C.name + ")_0");

    auto row_fn = [data](int n) -> SSetPtr {
        if (n == 0) return data->row0;
        return data->lvl(n).cp.sum;
    };
    // image of a chain-and-components tuple in row n
    auto emit = [data](int n, const std::vector<int>& chain,
                       const std::vector<Ref>& comps) -> Ref {
        const ScatNerve::Lvl& L = data->lvl(n);
        int ci = data->chain_index(chain);
        return L.cp.injections[ci].apply(L.prods[ci].ref_of_tuple(comps));
    };
    auto face_fn = [data, emit](const Bisim& self, int n, int i) -> SMap {
        const FiniteSimplicialCategory& C = data->C;
        SSetPtr src = self.row(n), dst = self.row(n - 1);
        std::vector<Ref> assign;
        const ScatNerve::Lvl& L = data->lvl(n);
        for (int id = 0; id < src->size(); ++id) {
            auto [ci, lid] = L.cp.origin[id];
            const std::vector<int>& c = L.chains[ci];
            std::vector<Ref> gs = L.prods[ci].components[lid];
            if (n == 1) {
                int d = src->dim_of(id);
                assign.push_back(Ref{i == 0 ? c[1] : c[0], full_word(d)});
                continue;
            }
            std::vector<int> c2 = c;
            c2.erase(c2.begin() + i);
            std::vector<Ref> gs2;
            if (i == 0) {
                gs2.assign(gs.begin() + 1, gs.end());
            } else if (i == n) {
                gs2.assign(gs.begin(), gs.end() - 1);
            } else {
                gs2 = gs;
                gs2[i - 1] = C.compose_refs(c[i - 1], c[i], c[i + 1], gs[i], gs[i - 1]);
                gs2.erase(gs2.begin() + i);
            }
            assign.push_back(emit(n - 1, c2, gs2));
        }
        return SMap(src, dst, std::move(assign));
    };
    auto degen_fn = [data, emit](const Bisim& self, int n, int i) -> SMap {
        const FiniteSimplicialCategory& C = data->C;
        SSetPtr src = self.row(n), dst = self.row(n + 1);
        std::vector<Ref> assign;
        if (n == 0) {
            for (int x = 0; x < C.nobjects; ++x)
                assign.push_back(
                    emit(1, {x, x}, {Ref{C.identity_vertex[x], {}}}));
            return SMap(src, dst, std::move(assign));
        }
        const ScatNerve::Lvl& L = data->lvl(n);
        for (int id = 0; id < src->size(); ++id) {
            auto [ci, lid] = L.cp.origin[id];
            const std::vector<int>& c = L.chains[ci];
            std::vector<Ref> gs = L.prods[ci].components[lid];
            int d = src->dim_of(id);
            std::vector<int> c2 = c;
            c2.insert(c2.begin() + i, c[i]);
            std::vector<Ref> gs2 = gs;
            gs2.insert(gs2.begin() + i, C.identity_ref(c[i], d));
            assign.push_back(emit(n + 1, c2, gs2));
        }
        return SMap(src, dst, std::move(assign));
    };
    return SegalPrecategory(std::make_shared<CallbackBis>(
        row_fn, face_fn, degen_fn, "nerve(" + C.name + ")"));
}

// --- Fundamental category ---

namespace {

struct PathWord {
    int src = 0, dst = 0;
    std::vector<int> gens;

    friend bool operator<(const PathWord& a, const PathWord& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.gens < b.gens;
    }
    friend bool operator==(const PathWord& a, const PathWord& b) {
        return a.src == b.src && a.gens == b.gens;
    }
};

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

Tau1Result tau1(const SegalPrecategory& X, const Budget& budget) {
    Tau1Result R;
    R.nobjects = X.nobjects();
    const BisimPtr& B = X.bis();
    SSetPtr X1 = B->row(1);
    SMap s0 = B->degen_op(0, 0);
    std::map<int, int> identity_of;  // row-1 vertex id -> object
    for (int x = 0; x < R.nobjects; ++x) identity_of[s0.apply(Ref{x, {}}).id] = x;
    std::map<int, int> gen_of;  // row-1 vertex id -> generator index
    for (int v : X1->ids_of_dim(0)) {
        if (identity_of.count(v)) continue;
        gen_of[v] = static_cast<int>(R.gen_src.size());
        R.gen_src.push_back(X.object_at(1, Ref{v, {}}, 0));
        R.gen_dst.push_back(X.object_at(1, Ref{v, {}}, 1));
    }
    auto enc = [&](int v) {
        auto it = identity_of.find(v);
        if (it != identity_of.end()) return -1 - it->second;
        return gen_of.at(v);
    };
    SMap d0 = B->face_op(2, 0), d1 = B->face_op(2, 1), d2 = B->face_op(2, 2);
    for (int S : B->row(2)->ids_of_dim(0)) {
        budget.charge();
        Ref r{S, {}};
        R.relations.push_back(
            {enc(d2.apply(r).id), enc(d0.apply(r).id), enc(d1.apply(r).id)});
    }
    std::sort(R.relations.begin(), R.relations.end());
    R.relations.erase(std::unique(R.relations.begin(), R.relations.end()),
                      R.relations.end());

    int ng = static_cast<int>(R.gen_src.size());
    auto obj_of = [&](int e, bool src) {
        return e < 0 ? -1 - e : (src ? R.gen_src[e] : R.gen_dst[e]);
    };
    auto as_path = [&](int e, int fallback_obj) {
        PathWord w;
        if (e < 0) {
            w.src = w.dst = -1 - e;
        } else {
            w.src = R.gen_src[e];
            w.dst = R.gen_dst[e];
            w.gens = {e};
        }
        (void)fallback_obj;
        return w;
    };
    // rewrite rules lhs ~ rhs between parallel paths of length <= 2 / <= 1
    std::vector<std::pair<PathWord, PathWord>> rules;
    for (const auto& rel : R.relations) {
        PathWord lhs = as_path(rel[0], 0);
        PathWord rhs2 = as_path(rel[1], 0);
        lhs.gens.insert(lhs.gens.end(), rhs2.gens.begin(), rhs2.gens.end());
        lhs.dst = obj_of(rel[1], false);
        if (rel[0] < 0) lhs.src = -1 - rel[0];
        rules.emplace_back(lhs, as_path(rel[2], lhs.src));
    }

    // acyclicity of the generator quiver
    bool acyclic = true;
    {
        std::vector<int> state(R.nobjects, 0);
        std::function<void(int)> dfs = [&](int v) {
            state[v] = 1;
            for (int g = 0; g < ng; ++g) {
                if (R.gen_src[g] != v) continue;
                int w = R.gen_dst[g];
                if (state[w] == 1) acyclic = false;
                else if (state[w] == 0) dfs(w);
            }
            state[v] = 2;
        };
        for (int v = 0; v < R.nobjects && acyclic; ++v)
            if (state[v] == 0) dfs(v);
    }

    std::vector<PathWord> words;
    if (acyclic) {
        for (int x = 0; x < R.nobjects; ++x) words.push_back({x, x, {}});
        std::vector<PathWord> frontier;
        for (int g = 0; g < ng; ++g)
            frontier.push_back({R.gen_src[g], R.gen_dst[g], {g}});
        while (!frontier.empty()) {
            std::vector<PathWord> next;
            for (const auto& w : frontier) {
                budget.charge();
                words.push_back(w);
                budget.check_size(words.size());
                for (int g = 0; g < ng; ++g) {
                    if (R.gen_src[g] != w.dst) continue;
                    PathWord w2 = w;
                    w2.gens.push_back(g);
                    w2.dst = R.gen_dst[g];
                    next.push_back(std::move(w2));
                }
            }
            frontier = std::move(next);
        }
    } else {
        // fall back to totality: every composable generator pair must have a
        // unique composite among the relations
        std::vector<std::vector<int>> comp(ng, std::vector<int>(ng, INT_MIN));
        bool total = true, consistent = true;
        for (const auto& rule : rules) {
            if (rule.first.gens.size() != 2) continue;
            int f = rule.first.gens[0], g = rule.first.gens[1];
            int rhs = rule.second.gens.empty() ? -1 - rule.second.src
                                               : rule.second.gens[0];
            if (comp[g][f] != INT_MIN && comp[g][f] != rhs) consistent = false;
            comp[g][f] = rhs;
        }
        // plus the unit-shaped relations must not identify anything
        for (const auto& rule : rules)
            if (rule.first.gens.size() <= 1 && !(rule.first == rule.second))
                consistent = false;
        for (int g = 0; g < ng && total; ++g)
            for (int f = 0; f < ng && total; ++f)
                if (R.gen_src[g] == R.gen_dst[f] && comp[g][f] == INT_MIN)
                    total = false;
        if (total && consistent) {
            FiniteCategory C;
            C.name = "tau1(" + B->name() + ")";
            C.nobjects = R.nobjects;
            for (int x = 0; x < R.nobjects; ++x) {
                C.identity.push_back(x);
                C.arrow_src.push_back(x);
                C.arrow_dst.push_back(x);
            }
            for (int g = 0; g < ng; ++g) {
                C.arrow_src.push_back(R.gen_src[g]);
                C.arrow_dst.push_back(R.gen_dst[g]);
            }
            auto arrow = [&](int e) { return e < 0 ? -1 - e : R.nobjects + e; };
            C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
            for (int b = 0; b < C.narrows(); ++b)
                for (int a = 0; a < C.narrows(); ++a) {
                    if (!C.composable(b, a)) continue;
                    if (a < R.nobjects) C.table[b][a] = b;
                    else if (b < R.nobjects) C.table[b][a] = a;
                    else C.table[b][a] = arrow(comp[b - R.nobjects][a - R.nobjects]);
                }
            try {
                C.validate();
                R.decided = true;
                R.category = std::move(C);
            } catch (const InvalidParameter&) {
            }
        }
        return R;
    }

    // congruence closure over all paths
    std::sort(words.begin(), words.end());
    auto word_index = [&](const PathWord& w) {
        auto it = std::lower_bound(words.begin(), words.end(), w);
        if (it == words.end() || !(*it == w))
            throw InvalidParameter("tau1: word escaped the path set");
        return static_cast<int>(it - words.begin());
    };
    UnionFind uf(static_cast<int>(words.size()));
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        const PathWord& w = words[wi];
        for (const auto& [lhs, rhs] : rules) {
            std::size_t L = lhs.gens.size();
            if (L == 0) {
                // identity-valued left side: splice rhs at matching objects
                int cur = w.src;
                for (std::size_t p = 0; p <= w.gens.size(); ++p) {
                    if (cur == lhs.src) {
                        PathWord w2 = w;
                        w2.gens.insert(w2.gens.begin() + p, rhs.gens.begin(),
                                       rhs.gens.end());
                        uf.unite(static_cast<int>(wi), word_index(w2));
                    }
                    if (p < w.gens.size()) cur = R.gen_dst[w.gens[p]];
                }
                continue;
            }
            if (w.gens.size() < L) continue;
            for (std::size_t p = 0; p + L <= w.gens.size(); ++p) {
                budget.charge();
                if (!std::equal(lhs.gens.begin(), lhs.gens.end(),
                                w.gens.begin() + p))
                    continue;
                PathWord w2 = w;
                w2.gens.erase(w2.gens.begin() + p, w2.gens.begin() + p + L);
                w2.gens.insert(w2.gens.begin() + p, rhs.gens.begin(),
                               rhs.gens.end());
                uf.unite(static_cast<int>(wi), word_index(w2));
            }
        }
    }
    std::vector<int> cls(words.size(), -1);
    FiniteCategory C;
    C.name = "tau1(" + B->name() + ")";
    C.nobjects = R.nobjects;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        int r = uf.find(static_cast<int>(wi));
        if (cls[r] < 0) {
            cls[r] = C.narrows();
            C.arrow_src.push_back(words[r].src);
            C.arrow_dst.push_back(words[r].dst);
        }
        cls[wi] = cls[r];
    }
    C.identity.resize(R.nobjects);
    for (int x = 0; x < R.nobjects; ++x)
        C.identity[x] = cls[word_index({x, x, {}})];
    C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
    for (std::size_t wf = 0; wf < words.size(); ++wf)
        for (std::size_t wg = 0; wg < words.size(); ++wg) {
            if (words[wf].dst != words[wg].src) continue;
            budget.charge();
            PathWord cat = words[wf];
            cat.gens.insert(cat.gens.end(), words[wg].gens.begin(),
                            words[wg].gens.end());
            cat.dst = words[wg].dst;
            int& cell = C.table[cls[wg]][cls[wf]];
            int v = cls[word_index(cat)];
            if (cell >= 0 && cell != v) return R;  // not a congruence: undecided
            cell = v;
        }
    try {
        C.validate();
        R.decided = true;
        R.category = std::move(C);
    } catch (const InvalidParameter&) {
    }
    return R;
}

// --- Discretization and factorization ---

DiscretizeResult discretize(const BisimPtr& W, int window) {
    BisimPtr parent = W;
    auto keep = [parent](const Bisim&, int n) {
        std::vector<int> out;
        SSetPtr row = parent->row(n);
        SSetPtr r0 = parent->row(0);
        std::vector<SMap> vops;
        for (int j = 0; j <= n; ++j) vops.push_back(parent->op(n, {j}));
        for (int id = 0; id < row->size(); ++id) {
            bool ok = true;
            for (int j = 0; j <= n && ok; ++j)
                ok = r0->dim_of(vops[j].apply(Ref{id, {}}).id) == 0;
            if (ok) out.push_back(id);
        }
        return out;
    };
    auto sub = std::make_shared<SubBis>(W, keep, "R(" + W->name() + ")");
    std::vector<SMap> rows;
    for (int n = 0; n <= window; ++n) rows.push_back(sub->inclusion_row(n));
    return DiscretizeResult{SegalPrecategory(sub), BisMap(sub, W, std::move(rows))};
}

PhiResult phi_factorization(const BisMap& f, int window, const Budget& budget) {
    SegalPrecategory X(f.src()), Y(f.dst());
    SSetPtr X0 = f.src()->row(0);
    auto c0 = std::make_shared<Cosk0Bis>(X0, budget);
    auto amb = std::make_shared<ProductBis>(std::vector<BisimPtr>{f.dst(), c0},
                                            budget);
    BisimPtr Yb = f.dst();
    SMap f0 = f.row(0);
    auto keep = [amb, c0, Yb, f0](const Bisim&, int n) {
        std::vector<int> out;
        amb->row(n);
        c0->row(n);
        const ProductResult& lv = amb->level(n);
        std::vector<SMap> yops;
        for (int j = 0; j <= n; ++j) yops.push_back(Yb->op(n, {j}));
        for (std::size_t id = 0; id < lv.components.size(); ++id) {
            const Ref& ry = lv.components[id][0];
            const Ref& rc = lv.components[id][1];
            const std::vector<Ref>& xs = c0->level(n).components[rc.id];
            bool ok = true;
            for (int j = 0; j <= n && ok; ++j)
                ok = yops[j].apply(ry).id == f0.apply(xs[j]).id;
            if (ok) out.push_back(static_cast<int>(id));
        }
        return out;
    };
    auto phi = std::make_shared<SubBis>(amb, keep, "phi(" + Yb->name() + ")");
    std::vector<SMap> frows, srows;
    for (int n = 0; n <= window; ++n) {
        c0->row(n);
        amb->row(n);
        std::vector<SMap> vops;
        for (int j = 0; j <= n; ++j) vops.push_back(f.src()->op(n, {j}));
        SMap can = tuple_map(c0->level(n), vops);
        SMap into_amb = tuple_map(amb->level(n), {f.row(n), can});
        frows.push_back(corestrict_map(
            into_amb, SkeletonResult{phi->row(n), phi->inclusion_row(n)}));
        srows.push_back(compose(amb->projection(0, n), phi->inclusion_row(n)));
    }
    PhiResult R{phi, BisMap(f.src(), phi, std::move(frows)),
                BisMap(phi, Yb, std::move(srows)), {}};

    // postconditions: iso on objects, factorization, iso on row-1 fibers
    if (!R.first.row(0).is_isomorphism()) {
        R.postcondition = Verdict::make_no("row0-not-isomorphism");
        return R;
    }
    for (int n = 0; n <= window; ++n)
        if (!(compose(R.second.row(n), R.first.row(n)) == f.row(n))) {
            R.postcondition = Verdict::make_no("factorization-fails", {{"row", n}});
            return R;
        }
    SegalPrecategory P(phi);
    for (int a = 0; a < P.nobjects(); ++a)
        for (int b = 0; b < P.nobjects(); ++b) {
            SkeletonResult FP = fiber(P, {a, b});
            int ya = R.second.row(0).apply(Ref{a, {}}).id;
            int yb = R.second.row(0).apply(Ref{b, {}}).id;
            SkeletonResult FY = fiber(Y, {ya, yb});
            SMap fm = corestrict_map(compose(R.second.row(1), FP.inclusion), FY);
            if (!fm.is_isomorphism()) {
                R.postcondition =
                    Verdict::make_no("fiber-not-isomorphism", {{"a", a}, {"b", b}});
                return R;
            }
        }
    R.postcondition = Verdict::make_yes("object-change-factorization");
    return R;
}

Verdict strict_local_check(const SegalPrecategory& X, int kmax, int deg_bound,
                           int window, const Budget& budget) {
    try {
        for (int k = 2; k <= kmax; ++k) {
            SpinePair sp = spine_pair(k, window);
            for (int d = 0; d <= deg_bound; ++d) {
                auto cd = std::make_shared<ConstantBis>(standard_simplex(d).s);
                auto PA = std::make_shared<ProductBis>(
                    std::vector<BisimPtr>{sp.simplex_t, cd}, budget);
                auto PG = std::make_shared<ProductBis>(
                    std::vector<BisimPtr>{sp.spine_t, cd}, budget);
                std::vector<SMap> rrows;
                for (int j = 0; j <= window; ++j) {
                    PA->row(j);
                    rrows.push_back(tuple_map(
                        PA->level(j),
                        {compose(sp.inclusion.row(j), PG->projection(0, j)),
                         PG->projection(1, j)}));
                }
                BisMap r(PG, PA, std::move(rrows));
                std::vector<BisMap> homsA =
                    bis_hom_enumerate(PA, X.bis(), window, budget);
                std::vector<BisMap> homsG =
                    bis_hom_enumerate(PG, X.bis(), window, budget);
                std::vector<bool> hit(homsG.size(), false);
                for (const BisMap& h : homsA) {
                    BisMap res = bis_compose(h, r);
                    auto it = std::find(homsG.begin(), homsG.end(), res);
                    if (it == homsG.end() || hit[it - homsG.begin()])
                        return Verdict::make_no(
                            "restriction-not-injective",
                            {{"k", k}, {"degree", d}});
                    hit[it - homsG.begin()] = true;
                }
                if (homsA.size() != homsG.size())
                    return Verdict::make_no("restriction-not-bijective",
                                            {{"k", k},
                                             {"degree", d},
                                             {"simplex_side", homsA.size()},
                                             {"spine_side", homsG.size()}});
            }
        }
    } catch (const BudgetExceeded& e) {
        return Verdict::make_unknown("budget-exhausted", {{"what", e.what()}});
    }
    return Verdict::make_yes("function-complexes-isomorphic");
}

}  // namespace sk
