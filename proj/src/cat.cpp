#include "segalkit/cat.hpp"

#include <algorithm>
#include <map>

#include "segalkit/builders.hpp"

namespace sk {

int FiniteCategory::compose(int g, int f) const {
    if (!composable(g, f)) throw InvalidParameter("arrows not composable");
    return table[g][f];
}

std::vector<int> FiniteCategory::hom(int x, int y) const {
    std::vector<int> out;
    for (int f = 0; f < narrows(); ++f)
        if (arrow_src[f] == x && arrow_dst[f] == y) out.push_back(f);
    return out;
}

bool FiniteCategory::is_iso_arrow(int f) const {
    int x = arrow_src[f], y = arrow_dst[f];
    for (int g : hom(y, x))
        if (table[g][f] == identity[x] && table[f][g] == identity[y]) return true;
    return false;
}

bool FiniteCategory::objects_isomorphic(int x, int y) const {
    if (x == y) return true;
    for (int f : hom(x, y))
        if (is_iso_arrow(f)) return true;
    return false;
}

void FiniteCategory::validate() const {
    int na = narrows();
    if (static_cast<int>(arrow_dst.size()) != na ||
        static_cast<int>(identity.size()) != nobjects ||
        static_cast<int>(table.size()) != na)
        throw InvalidParameter("category: inconsistent sizes");
    for (int f = 0; f < na; ++f) {
        if (static_cast<int>(table[f].size()) != na)
            throw InvalidParameter("category: bad table row");
        if (arrow_src[f] < 0 || arrow_src[f] >= nobjects ||
            arrow_dst[f] < 0 || arrow_dst[f] >= nobjects)
            throw InvalidParameter("category: arrow endpoint out of range");
    }
    for (int x = 0; x < nobjects; ++x) {
        int e = identity[x];
        if (e < 0 || e >= na || arrow_src[e] != x || arrow_dst[e] != x)
            throw InvalidParameter("category: bad identity arrow");
    }
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) {
            int c = table[g][f];
            if (!composable(g, f)) {
                if (c != -1) throw InvalidParameter("category: spurious composite");
                continue;
            }
            if (c < 0 || c >= na || arrow_src[c] != arrow_src[f] ||
                arrow_dst[c] != arrow_dst[g])
                throw InvalidParameter("category: composite endpoints wrong");
        }
    for (int f = 0; f < na; ++f) {
        if (table[f][identity[arrow_src[f]]] != f ||
            table[identity[arrow_dst[f]]][f] != f)
            throw InvalidParameter("category: unit law fails");
    }
    for (int h = 0; h < na; ++h)
        for (int g = 0; g < na; ++g) {
            if (!composable(h, g)) continue;
            for (int f = 0; f < na; ++f) {
                if (!composable(g, f)) continue;
                if (table[table[h][g]][f] != table[h][table[g][f]])
                    throw InvalidParameter("category: associativity fails");
            }
        }
}

FiniteCategory poset_category(int n) {
    if (n < 0) throw InvalidParameter("poset_category: n < 0");
    FiniteCategory C;
    C.name = "[" + std::to_string(n) + "]";
    C.nobjects = n + 1;
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            idx[{i, j}] = C.narrows();
            C.arrow_src.push_back(i);
            C.arrow_dst.push_back(j);
        }
    C.identity.resize(C.nobjects);
    for (int i = 0; i <= n; ++i) C.identity[i] = idx[{i, i}];
    C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
    for (int g = 0; g < C.narrows(); ++g)
        for (int f = 0; f < C.narrows(); ++f)
            if (C.composable(g, f))
                C.table[g][f] = idx[{C.arrow_src[f], C.arrow_dst[g]}];
    C.validate();
    return C;
}

FiniteCategory discrete_category(int k) {
    if (k < 0) throw InvalidParameter("discrete_category: k < 0");
    FiniteCategory C;
    C.name = "discrete(" + std::to_string(k) + ")";
    C.nobjects = k;
    for (int i = 0; i < k; ++i) {
        C.identity.push_back(i);
        C.arrow_src.push_back(i);
        C.arrow_dst.push_back(i);
    }
    C.table.assign(k, std::vector<int>(k, -1));
    for (int i = 0; i < k; ++i) C.table[i][i] = i;
    C.validate();
    return C;
}

FiniteCategory terminal_category() {
    FiniteCategory C = discrete_category(1);
    C.name = "terminal";
    return C;
}

FiniteCategory codiscrete_groupoid(int k) {
    if (k < 0) throw InvalidParameter("codiscrete_groupoid: k < 0");
    FiniteCategory C;
    C.name = "codiscrete(" + std::to_string(k) + ")";
    C.nobjects = k;
    auto idx = [k](int i, int j) { return i * k + j; };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            C.arrow_src.push_back(i);
            C.arrow_dst.push_back(j);
        }
    C.identity.resize(k);
    for (int i = 0; i < k; ++i) C.identity[i] = idx(i, i);
    C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
    for (int g = 0; g < C.narrows(); ++g)
        for (int f = 0; f < C.narrows(); ++f)
            if (C.composable(g, f))
                C.table[g][f] = idx(C.arrow_src[f], C.arrow_dst[g]);
    C.validate();
    return C;
}

void Functor::validate() const {
    if (static_cast<int>(obj_map.size()) != src.nobjects ||
        static_cast<int>(arrow_map.size()) != src.narrows())
        throw InvalidParameter("functor: wrong map sizes");
    for (int x : obj_map)
        if (x < 0 || x >= dst.nobjects)
            throw InvalidParameter("functor: object out of range");
    for (int f = 0; f < src.narrows(); ++f) {
        int Ff = arrow_map[f];
        if (Ff < 0 || Ff >= dst.narrows() ||
            dst.arrow_src[Ff] != obj_map[src.arrow_src[f]] ||
            dst.arrow_dst[Ff] != obj_map[src.arrow_dst[f]])
            throw InvalidParameter("functor: endpoints not preserved");
    }
    for (int x = 0; x < src.nobjects; ++x)
        if (arrow_map[src.identity[x]] != dst.identity[obj_map[x]])
            throw InvalidParameter("functor: identities not preserved");
    for (int g = 0; g < src.narrows(); ++g)
        for (int f = 0; f < src.narrows(); ++f)
            if (src.composable(g, f) &&
                arrow_map[src.table[g][f]] != dst.table[arrow_map[g]][arrow_map[f]])
                throw InvalidParameter("functor: composition not preserved");
}

Functor Functor::identity(const FiniteCategory& C) {
    Functor F{C, C, {}, {}};
    for (int x = 0; x < C.nobjects; ++x) F.obj_map.push_back(x);
    for (int f = 0; f < C.narrows(); ++f) F.arrow_map.push_back(f);
    return F;
}

namespace {

void functor_rec(const FiniteCategory& C, const FiniteCategory& D,
                 const std::vector<int>& obj_map, std::vector<int>& arrow_map,
                 const std::vector<int>& todo, std::size_t pos,
                 const Budget& budget, std::vector<Functor>& out) {
    if (pos == todo.size()) {
        for (int g = 0; g < C.narrows(); ++g)
            for (int f = 0; f < C.narrows(); ++f)
                if (C.composable(g, f) &&
                    arrow_map[C.table[g][f]] != D.table[arrow_map[g]][arrow_map[f]])
                    return;
        out.push_back({C, D, obj_map, arrow_map});
        return;
    }
    int a = todo[pos];
    for (int b : D.hom(obj_map[C.arrow_src[a]], obj_map[C.arrow_dst[a]])) {
        budget.charge();
        arrow_map[a] = b;
        functor_rec(C, D, obj_map, arrow_map, todo, pos + 1, budget, out);
    }
    arrow_map[a] = -1;
}

}  // namespace

std::vector<Functor> functor_enumerate(const FiniteCategory& C,
                                       const FiniteCategory& D,
                                       const Budget& budget) {
    C.validate();
    D.validate();
    std::vector<Functor> out;
    std::vector<int> todo;
    for (int f = 0; f < C.narrows(); ++f)
        if (!C.is_identity_arrow(f)) todo.push_back(f);
    std::vector<int> obj_map(C.nobjects, 0);
    if (C.nobjects > 0 && D.nobjects == 0) return out;
    while (true) {
        budget.charge();
        std::vector<int> arrow_map(C.narrows(), -1);
        for (int x = 0; x < C.nobjects; ++x)
            arrow_map[C.identity[x]] = D.identity[obj_map[x]];
        functor_rec(C, D, obj_map, arrow_map, todo, 0, budget, out);
        int i = C.nobjects - 1;
        while (i >= 0 && obj_map[i] == D.nobjects - 1) obj_map[i--] = 0;
        if (i < 0) break;
        ++obj_map[i];
    }
    return out;
}

Verdict cat_equiv_check(const Functor& F) {
    F.validate();
    for (int x = 0; x < F.src.nobjects; ++x)
        for (int y = 0; y < F.src.nobjects; ++y) {
            std::vector<int> img;
            for (int f : F.src.hom(x, y)) img.push_back(F.arrow_map[f]);
            std::vector<int> tgt = F.dst.hom(F.obj_map[x], F.obj_map[y]);
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end())
                return Verdict::make_no("not-faithful", {{"x", x}, {"y", y}});
            if (img.size() != tgt.size())
                return Verdict::make_no("not-full", {{"x", x}, {"y", y}});
        }
    for (int d = 0; d < F.dst.nobjects; ++d) {
        bool hit = false;
        for (int c = 0; c < F.src.nobjects && !hit; ++c)
            hit = F.dst.objects_isomorphic(F.obj_map[c], d);
        if (!hit)
            return Verdict::make_no("not-essentially-surjective", {{"object", d}});
    }
    return Verdict::make_yes("equivalence");
}

namespace {

// Composable strings of nonidentity arrows, lexicographic by arrow index.
void strings_rec(const FiniteCategory& C, std::vector<int>& cur, int len,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int f = 0; f < C.narrows(); ++f) {
        if (C.is_identity_arrow(f)) continue;
        if (!cur.empty() && C.arrow_src[f] != C.arrow_dst[cur.back()]) continue;
        cur.push_back(f);
        strings_rec(C, cur, len, out);
        cur.pop_back();
    }
}

}  // namespace

SSetPtr nerve_sset(const FiniteCategory& C, int dim_bound) {
    C.validate();
    if (dim_bound < 0) throw InvalidParameter("nerve_sset: negative bound");
    std::vector<Simplex> simps;
    std::map<std::vector<int>, int> id_of;  // string -> id (dim = length)
    // Normal form of a string that may contain identity arrows; `src_obj`
    // resolves the string that reduces all the way down to a vertex.
    std::function<Ref(const std::vector<int>&, int)> nf =
        [&](const std::vector<int>& s, int src_obj) -> Ref {
        if (s.empty()) return Ref{src_obj, {}};
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (!C.is_identity_arrow(s[p])) continue;
            std::vector<int> rest;
            for (std::size_t q = 0; q < s.size(); ++q)
                if (q != p) rest.push_back(s[q]);
            return push_degeneracy(nf(rest, src_obj), static_cast<int>(p));
        }
        return Ref{id_of.at(s), {}};
    };
    for (int x = 0; x < C.nobjects; ++x)
        simps.push_back(Simplex{0, {}});  // vertex id = object index
    auto vertex_of = [&](int obj) { return Ref{obj, {}}; };
    for (int d = 1; d <= dim_bound; ++d) {
        std::vector<std::vector<int>> strings;
        std::vector<int> cur;
        strings_rec(C, cur, d, strings);
        if (strings.empty()) break;
        for (const auto& s : strings) {
            id_of[s] = static_cast<int>(simps.size());
            Simplex sx;
            sx.dim = d;
            for (int i = 0; i <= d; ++i) {
                if (d == 1) {
                    sx.faces.push_back(vertex_of(i == 0 ? C.arrow_dst[s[0]]
                                                        : C.arrow_src[s[0]]));
                    continue;
                }
                std::vector<int> face;
                if (i == 0) {
                    face.assign(s.begin() + 1, s.end());
                } else if (i == d) {
                    face.assign(s.begin(), s.end() - 1);
                } else {
                    face.assign(s.begin(), s.end());
                    face[i - 1] = C.table[s[i]][s[i - 1]];
                    face.erase(face.begin() + i);
                }
                int src_obj = i == 0 ? C.arrow_dst[s[0]] : C.arrow_src[s[0]];
                sx.faces.push_back(nf(face, src_obj));
            }
            simps.push_back(std::move(sx));
        }
    }
    return SSet::make("nerve(" + C.name + ")", std::move(simps));
}

Ref FiniteSimplicialCategory::compose_refs(int x, int y, int z, const Ref& g,
                                           const Ref& f) const {
    const Comp& c = comp(x, y, z);
    return c.map.apply(c.pr.ref_of_tuple({g, f}));
}

Ref FiniteSimplicialCategory::identity_ref(int x, int dim) const {
    Word w;
    for (int i = 0; i < dim; ++i) w.push_back(i);
    return Ref{identity_vertex[x], w};
}

void FiniteSimplicialCategory::validate() const {
    int n = nobjects;
    if (static_cast<int>(hom.size()) != n ||
        static_cast<int>(identity_vertex.size()) != n ||
        static_cast<int>(comps.size()) != n * n * n)
        throw InvalidParameter("scat: inconsistent sizes");
    int top = 0;
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(hom[x].size()) != n)
            throw InvalidParameter("scat: bad hom row");
        for (int y = 0; y < n; ++y) top = std::max(top, hom[x][y]->top_dim());
        int e = identity_vertex[x];
        if (e < 0 || e >= hom[x][x]->size() || hom[x][x]->dim_of(e) != 0)
            throw InvalidParameter("scat: identity is not a vertex");
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const Comp& c = comp(x, y, z);
                if (c.map.src() != c.pr.prod || c.map.dst() != hom[x][z] ||
                    c.pr.projections[0].dst() != hom[y][z] ||
                    c.pr.projections[1].dst() != hom[x][y])
                    throw InvalidParameter("scat: composition endpoints wrong");
            }
    for (int d = 0; d <= top; ++d) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (const Ref& f : hom[x][y]->all_refs(d)) {
                    if (compose_refs(x, y, y, identity_ref(y, d), f) != f ||
                        compose_refs(x, x, y, f, identity_ref(x, d)) != f)
                        throw InvalidParameter("scat: unit law fails");
                }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    for (int w = 0; w < n; ++w)
                        for (const Ref& h : hom[z][w]->all_refs(d))
                            for (const Ref& g : hom[y][z]->all_refs(d))
                                for (const Ref& f : hom[x][y]->all_refs(d)) {
                                    Ref lhs = compose_refs(
                                        x, y, w, compose_refs(y, z, w, h, g), f);
                                    Ref rhs = compose_refs(
                                        x, z, w, h, compose_refs(x, y, z, g, f));
                                    if (lhs != rhs)
                                        throw InvalidParameter(
                                            "scat: associativity fails");
                                }
    }
}

FiniteSimplicialCategory make_scat(
    std::string name, int nobjects, std::vector<std::vector<SSetPtr>> hom,
    std::vector<int> identity_vertex,
    const std::function<Ref(int, int, int, const Ref&, const Ref&)>& compose,
    const Budget& budget) {
    FiniteSimplicialCategory C;
    C.name = std::move(name);
    C.nobjects = nobjects;
    C.hom = std::move(hom);
    C.identity_vertex = std::move(identity_vertex);
    for (int x = 0; x < nobjects; ++x)
        for (int y = 0; y < nobjects; ++y)
            for (int z = 0; z < nobjects; ++z) {
                FiniteSimplicialCategory::Comp c;
                c.pr = product({C.hom[y][z], C.hom[x][y]}, budget);
                std::vector<Ref> assign;
                for (int id = 0; id < c.pr.prod->size(); ++id)
                    assign.push_back(compose(x, y, z, c.pr.components[id][0],
                                             c.pr.components[id][1]));
                c.map = SMap(c.pr.prod, C.hom[x][z], std::move(assign));
                C.comps.push_back(std::move(c));
            }
    C.validate();
    return C;
}

FiniteSimplicialCategory u_functor(const SSetPtr& K) {
    std::vector<std::vector<SSetPtr>> hom(2, std::vector<SSetPtr>(2));
    hom[0][0] = point_sset();
    hom[1][1] = point_sset();
    hom[0][1] = K;
    hom[1][0] = empty_sset();
    auto compose = [](int x, int y, int z, const Ref& g, const Ref& f) -> Ref {
        if (x == 0 && y == 0 && z == 1) return g;
        if (x == 0 && y == 1 && z == 1) return f;
        (void)f;
        return g;  // remaining live cases have all three homs a point
    };
    return make_scat("U(" + K->name() + ")", 2, std::move(hom), {0, 0}, compose);
}

FiniteSimplicialCategory scat_from_category(const FiniteCategory& C) {
    C.validate();
    int n = C.nobjects;
    std::vector<std::vector<SSetPtr>> hom(n, std::vector<SSetPtr>(n));
    // position of each arrow inside its hom set
    std::vector<std::vector<std::vector<int>>> arrows(n,
        std::vector<std::vector<int>>(n));
    std::vector<int> pos(C.narrows(), -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            arrows[x][y] = C.hom(x, y);
            for (std::size_t i = 0; i < arrows[x][y].size(); ++i)
                pos[arrows[x][y][i]] = static_cast<int>(i);
            hom[x][y] = discrete_sset(static_cast<int>(arrows[x][y].size()));
        }
    std::vector<int> idv(n);
    for (int x = 0; x < n; ++x) idv[x] = pos[C.identity[x]];
    auto compose = [&C, &arrows, &pos](int x, int y, int z, const Ref& g,
                                       const Ref& f) -> Ref {
        int gf = C.table[arrows[y][z][g.id]][arrows[x][y][f.id]];
        return Ref{pos[gf], g.word};
    };
    return make_scat("discrete(" + C.name + ")", n, std::move(hom), std::move(idv),
                     compose);
}

namespace {

struct Pi0CatData {
    FiniteCategory cat;
    std::vector<std::vector<Pi0Result>> comp;     // [x][y], indexed by slot
    std::vector<std::vector<int>> offset;         // arrow index base per pair
    std::vector<std::vector<std::vector<int>>> rep;  // rep vertex ID per component

    // component of a vertex given by simplex id
    int comp_of(const FiniteSimplicialCategory& C, int x, int y, int vid) const {
        const auto& verts = C.hom[x][y]->ids_of_dim(0);
        auto it = std::find(verts.begin(), verts.end(), vid);
        return comp[x][y].component[it - verts.begin()];
    }
};

Pi0CatData pi0_cat_data(const FiniteSimplicialCategory& C) {
    Pi0CatData D;
    int n = C.nobjects;
    D.cat.name = "pi0(" + C.name + ")";
    D.cat.nobjects = n;
    D.comp.assign(n, {});
    D.offset.assign(n, std::vector<int>(n, 0));
    D.rep.assign(n, std::vector<std::vector<int>>(n));
    int na = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            D.comp[x].push_back(pi0(C.hom[x][y]));
            const Pi0Result& p = D.comp[x][y];
            const auto& verts = C.hom[x][y]->ids_of_dim(0);
            D.offset[x][y] = na;
            D.rep[x][y].assign(p.count, -1);
            for (std::size_t s = 0; s < verts.size(); ++s)
                if (D.rep[x][y][p.component[s]] < 0)
                    D.rep[x][y][p.component[s]] = verts[s];
            for (int c = 0; c < p.count; ++c) {
                D.cat.arrow_src.push_back(x);
                D.cat.arrow_dst.push_back(y);
            }
            na += p.count;
        }
    D.cat.identity.resize(n);
    for (int x = 0; x < n; ++x)
        D.cat.identity[x] = D.offset[x][x] + D.comp_of(C, x, x, C.identity_vertex[x]);
    D.cat.table.assign(na, std::vector<int>(na, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int cg = 0; cg < D.comp[y][z].count; ++cg)
                    for (int cf = 0; cf < D.comp[x][y].count; ++cf) {
                        Ref r = C.compose_refs(x, y, z, Ref{D.rep[y][z][cg], {}},
                                               Ref{D.rep[x][y][cf], {}});
                        D.cat.table[D.offset[y][z] + cg][D.offset[x][y] + cf] =
                            D.offset[x][z] + D.comp_of(C, x, z, r.id);
                    }
    D.cat.validate();
    return D;
}

}  // namespace

FiniteCategory pi0_cat(const FiniteSimplicialCategory& C) {
    return pi0_cat_data(C).cat;
}

void SFunctor::validate() const {
    int n = src.nobjects;
    if (static_cast<int>(obj_map.size()) != n ||
        static_cast<int>(hom_map.size()) != n)
        throw InvalidParameter("sfunctor: wrong map sizes");
    for (int x = 0; x < n; ++x) {
        if (obj_map[x] < 0 || obj_map[x] >= dst.nobjects)
            throw InvalidParameter("sfunctor: object out of range");
        if (static_cast<int>(hom_map[x].size()) != n)
            throw InvalidParameter("sfunctor: bad hom map row");
    }
    int top = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const SMap& m = hom_map[x][y];
            if (m.src() != src.hom[x][y] ||
                m.dst() != dst.hom[obj_map[x]][obj_map[y]])
                throw InvalidParameter("sfunctor: hom map endpoints wrong");
            top = std::max(top, src.hom[x][y]->top_dim());
        }
    for (int x = 0; x < n; ++x)
        if (hom_map[x][x].apply(Ref{src.identity_vertex[x], {}}) !=
            Ref{dst.identity_vertex[obj_map[x]], {}})
            throw InvalidParameter("sfunctor: identities not preserved");
    for (int d = 0; d <= top; ++d)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    for (const Ref& g : src.hom[y][z]->all_refs(d))
                        for (const Ref& f : src.hom[x][y]->all_refs(d)) {
                            Ref lhs = hom_map[x][z].apply(
                                src.compose_refs(x, y, z, g, f));
                            Ref rhs = dst.compose_refs(
                                obj_map[x], obj_map[y], obj_map[z],
                                hom_map[y][z].apply(g), hom_map[x][y].apply(f));
                            if (lhs != rhs)
                                throw InvalidParameter(
                                    "sfunctor: composition not preserved");
                        }
}

SFunctor SFunctor::identity(const FiniteSimplicialCategory& C) {
    SFunctor F{C, C, {}, {}};
    for (int x = 0; x < C.nobjects; ++x) F.obj_map.push_back(x);
    F.hom_map.assign(C.nobjects, {});
    for (int x = 0; x < C.nobjects; ++x)
        for (int y = 0; y < C.nobjects; ++y)
            F.hom_map[x].push_back(SMap::identity(C.hom[x][y]));
    return F;
}

Functor pi0_functor(const SFunctor& f) {
    Pi0CatData S = pi0_cat_data(f.src);
    Pi0CatData T = pi0_cat_data(f.dst);
    Functor F{S.cat, T.cat, f.obj_map, {}};
    F.arrow_map.assign(S.cat.narrows(), -1);
    int n = f.src.nobjects;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int fx = f.obj_map[x], fy = f.obj_map[y];
            for (int c = 0; c < S.comp[x][y].count; ++c) {
                Ref img = f.hom_map[x][y].apply(Ref{S.rep[x][y][c], {}});
                F.arrow_map[S.offset[x][y] + c] =
                    T.offset[fx][fy] + T.comp_of(f.dst, fx, fy, img.id);
            }
        }
    F.validate();
    return F;
}

Verdict dk_check_sc(const SFunctor& f, const WeOptions& opts) {
    f.validate();
    bool unknown = false;
    nlohmann::json parts = nlohmann::json::array();
    for (int x = 0; x < f.src.nobjects; ++x)
        for (int y = 0; y < f.src.nobjects; ++y) {
            Verdict v = we_verdict(f.hom_map[x][y], opts);
            parts.push_back({{"x", x}, {"y", y}, {"verdict", v.to_json()}});
            if (v.no())
                return Verdict::make_no("hom-not-weak-equivalence",
                                        {{"x", x}, {"y", y}, {"inner", v.to_json()}});
            if (!v.yes()) unknown = true;
        }
    Verdict eq = cat_equiv_check(pi0_functor(f));
    if (eq.no())
        return Verdict::make_no("pi0-not-equivalence", eq.to_json());
    if (unknown) return Verdict::make_unknown("hom-verdict-unknown", parts);
    return Verdict::make_yes("dk-equivalence", parts);
}

FiniteCategory free_category(const Quiver& q) {
    for (const auto& e : q.edges)
        if (e.first < 0 || e.first >= q.nvertices || e.second < 0 ||
            e.second >= q.nvertices)
            throw InvalidParameter("free_category: edge out of range");
    // cycle detection
    std::vector<int> state(q.nvertices, 0);
    std::function<void(int)> dfs = [&](int v) {
        state[v] = 1;
        for (std::size_t e = 0; e < q.edges.size(); ++e) {
            if (q.edges[e].first != v) continue;
            int w = q.edges[e].second;
            if (state[w] == 1)
                throw NonTermination("free_category: quiver has a cycle through vertex " +
                                     std::to_string(w));
            if (state[w] == 0) dfs(w);
        }
        state[v] = 2;
    };
    for (int v = 0; v < q.nvertices; ++v)
        if (state[v] == 0) dfs(v);

    FiniteCategory C;
    C.name = "free";
    C.nobjects = q.nvertices;
    std::map<std::vector<int>, int> idx;   // path (edge list) -> arrow
    std::vector<std::vector<int>> paths;   // identities use {-1 - object}
    auto add = [&](std::vector<int> p, int s, int d) {
        idx[p] = C.narrows();
        paths.push_back(std::move(p));
        C.arrow_src.push_back(s);
        C.arrow_dst.push_back(d);
    };
    for (int v = 0; v < q.nvertices; ++v) {
        C.identity.push_back(C.narrows());
        add({-1 - v}, v, v);
    }
    // breadth-first by length, lexicographic within a length
    std::vector<std::vector<int>> frontier;
    for (std::size_t e = 0; e < q.edges.size(); ++e) frontier.push_back({(int)e});
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier) {
            add(p, q.edges[p.front()].first, q.edges[p.back()].second);
            for (std::size_t e = 0; e < q.edges.size(); ++e) {
                if (q.edges[e].first != q.edges[p.back()].second) continue;
                std::vector<int> np = p;
                np.push_back(static_cast<int>(e));
                next.push_back(std::move(np));
            }
        }
        frontier = std::move(next);
    }
    C.table.assign(C.narrows(), std::vector<int>(C.narrows(), -1));
    for (int g = 0; g < C.narrows(); ++g)
        for (int f = 0; f < C.narrows(); ++f) {
            if (!C.composable(g, f)) continue;
            std::vector<int> cat;
            if (paths[f].front() >= 0)
                cat.insert(cat.end(), paths[f].begin(), paths[f].end());
            if (paths[g].front() >= 0)
                cat.insert(cat.end(), paths[g].begin(), paths[g].end());
            if (cat.empty()) cat = paths[f];  // both identities
            C.table[g][f] = idx.at(cat);
        }
    C.validate();
    return C;
}

}  // namespace sk
