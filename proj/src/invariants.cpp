#include "segalkit/invariants.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "segalkit/builders.hpp"

namespace sk {

Pi0Result pi0(const SSetPtr& X) {
    Pi0Result R;
    std::vector<int> parent(X->ids_of_dim(0).size());
    std::iota(parent.begin(), parent.end(), 0);
    // vertex ids are not necessarily contiguous; map id -> slot
    std::vector<int> slot(X->size(), -1);
    {
        int i = 0;
        for (int v : X->ids_of_dim(0)) slot[v] = i++;
    }
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e : X->ids_of_dim(1)) {
        int a = find(slot[X->faces_of(e)[0].id]);
        int b = find(slot[X->faces_of(e)[1].id]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> label(parent.size(), -1);
    R.component.resize(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (label[r] < 0) label[r] = R.count++;
        R.component[i] = label[r];
    }
    return R;
}

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<long long> diag;
    int r = 0, c = 0;
    while (r < rows && c < cols) {
        // find the entry of minimal absolute value in the remaining block
        int pr = -1, pc = -1;
        long long best = 0;
        for (int i = r; i < rows; ++i)
            for (int j = c; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (pr < 0 || std::llabs(m[i][j]) < best)) {
                    pr = i; pc = j; best = std::llabs(m[i][j]);
                }
        if (pr < 0) break;
        std::swap(m[r], m[pr]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = r + 1; i < rows; ++i)
                if (m[i][c] != 0) {
                    long long q = m[i][c] / m[r][c];
                    for (int j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                    if (m[i][c] != 0) { std::swap(m[r], m[i]); clean = false; }
                }
            for (int j = c + 1; j < cols; ++j)
                if (m[r][j] != 0) {
                    long long q = m[r][j] / m[r][c];
                    for (int i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                    if (m[r][j] != 0) {
                        for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
                        clean = false;
                    }
                }
        }
        diag.push_back(std::llabs(m[r][c]));
        ++r; ++c;
    }
    // enforce the divisibility chain
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j)
            if (diag[j] % diag[i] != 0) {
                long long g = std::gcd(diag[i], diag[j]);
                long long l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
    std::sort(diag.begin(), diag.end());
    return diag;
}

std::vector<AbGroup> homology(const SSetPtr& X, int max_deg, const Budget& budget) {
    auto boundary_matrix = [&](int d) {
        // C_d -> C_{d-1} on nondegenerate simplices
        const auto& rows_ids = X->ids_of_dim(d - 1);
        const auto& cols_ids = X->ids_of_dim(d);
        std::vector<int> row_of(X->size(), -1);
        for (int i = 0; i < static_cast<int>(rows_ids.size()); ++i)
            row_of[rows_ids[i]] = i;
        std::vector<std::vector<long long>> m(
            rows_ids.size(), std::vector<long long>(cols_ids.size(), 0));
        for (int j = 0; j < static_cast<int>(cols_ids.size()); ++j) {
            const Simplex& s = X->simplex(cols_ids[j]);
            for (int i = 0; i <= d; ++i) {
                budget.charge();
                const Ref& f = s.faces[i];
                if (!f.word.empty()) continue;  // normalized chain complex
                m[row_of[f.id]][j] += (i % 2 == 0) ? 1 : -1;
            }
        }
        return m;
    };

    std::vector<AbGroup> H(max_deg + 1);
    std::vector<std::vector<long long>> snf(max_deg + 2);
    for (int d = 1; d <= max_deg + 1; ++d)
        snf[d] = (d <= X->top_dim()) ? smith_diagonal(boundary_matrix(d))
                                     : std::vector<long long>{};
    auto rank_nonzero = [](const std::vector<long long>& v) {
        long long n = 0;
        for (long long x : v)
            if (x != 0) ++n;
        return n;
    };
    for (int d = 0; d <= max_deg; ++d) {
        long long n_d = X->count_dim(d);
        long long rk_in = (d == 0) ? 0 : rank_nonzero(snf[d]);
        long long rk_out = rank_nonzero(snf[d + 1]);
        H[d].rank = n_d - rk_in - rk_out;
        for (long long x : snf[d + 1])
            if (x > 1) H[d].torsion.push_back(x);
    }
    return H;
}

std::optional<std::vector<std::pair<int, int>>> collapse_to_point(const SSetPtr& X) {
    if (X->size() == 0) return std::nullopt;
    std::vector<bool> alive(X->size(), true);
    int remaining = X->size();
    std::vector<std::pair<int, int>> trace;

    // iterated nondegenerate cofaces, recomputed per pass (desk scale)
    auto cofaces_of = [&](int tau) {
        std::vector<int> out;
        for (int s = 0; s < X->size(); ++s) {
            if (!alive[s] || s == tau) continue;
            // is tau an iterated empty-word face of s?
            std::vector<int> stack{s};
            std::vector<bool> seen(X->size(), false);
            bool hit = false;
            while (!stack.empty() && !hit) {
                int cur = stack.back();
                stack.pop_back();
                for (const Ref& f : X->faces_of(cur)) {
                    if (!f.word.empty()) continue;
                    if (f.id == tau) { hit = true; break; }
                    if (!seen[f.id]) { seen[f.id] = true; stack.push_back(f.id); }
                }
            }
            if (hit) out.push_back(s);
        }
        return out;
    };

    bool progress = true;
    while (remaining > 1 && progress) {
        progress = false;
        for (int tau = X->size() - 1; tau >= 0 && !progress; --tau) {
            if (!alive[tau]) continue;
            auto cof = cofaces_of(tau);
            if (cof.size() != 1) continue;
            int sigma = cof[0];
            if (X->dim_of(sigma) != X->dim_of(tau) + 1) continue;
            int occurrences = 0;
            for (const Ref& f : X->faces_of(sigma))
                if (f.word.empty() && f.id == tau) ++occurrences;
            if (occurrences != 1) continue;
            alive[tau] = alive[sigma] = false;
            remaining -= 2;
            trace.emplace_back(sigma, tau);
            progress = true;
        }
    }
    if (remaining == 1) {
        for (int i = 0; i < X->size(); ++i)
            if (alive[i] && X->dim_of(i) != 0) return std::nullopt;
        return trace;
    }
    return std::nullopt;
}

std::optional<std::vector<std::array<int, 3>>> anodyne_trace(const SMap& f) {
    if (!f.is_injective()) return std::nullopt;
    const SSetPtr& Y = f.dst();
    std::vector<bool> in(Y->size(), false);
    int covered = 0;
    for (const Ref& r : f.assignment())
        if (!in[r.id]) { in[r.id] = true; ++covered; }

    std::vector<std::array<int, 3>> trace;
    bool progress = true;
    while (covered < Y->size() && progress) {
        progress = false;
        for (int y = 0; y < Y->size() && !progress; ++y) {
            if (in[y] || Y->dim_of(y) < 1) continue;
            int m = Y->dim_of(y);
            for (int k = 0; k <= m; ++k) {
                const Ref& fk = Y->faces_of(y)[k];
                if (!fk.word.empty() || in[fk.id]) continue;
                bool horn_inside = true;
                for (int j = 0; j <= m; ++j) {
                    if (j == k) continue;
                    if (!in[Y->faces_of(y)[j].id]) { horn_inside = false; break; }
                }
                if (!horn_inside) continue;
                // inner horn only when 0 < k < m is NOT required: all horns
                // V[m,k] -> Delta[m] are generating acyclic cofibrations
                in[y] = in[fk.id] = true;
                covered += 2;
                trace.push_back({y, k, fk.id});
                progress = true;
                break;
            }
        }
    }
    if (covered == Y->size()) return trace;
    return std::nullopt;
}

Verdict we_verdict(const SMap& f, const WeOptions& opts) {
    const SSetPtr& X = f.src();
    const SSetPtr& Y = f.dst();
    // invariant screen: any difference is a definitive No
    Pi0Result px = pi0(X), py = pi0(Y);
    if (px.count != py.count)
        return Verdict::make_no("invariant-differs",
                                {{"invariant", "pi0"},
                                 {"source", px.count},
                                 {"target", py.count}});
    try {
        auto hx = homology(X, opts.homology_bound, opts.budget);
        auto hy = homology(Y, opts.homology_bound, opts.budget);
        for (int d = 0; d <= opts.homology_bound; ++d)
            if (!(hx[d] == hy[d]))
                return Verdict::make_no("invariant-differs",
                                        {{"invariant", "H_" + std::to_string(d)},
                                         {"source", hx[d].to_json()},
                                         {"target", hy[d].to_json()}});

        if (f.is_isomorphism()) {
            nlohmann::json w;
            for (const Ref& r : f.assignment()) w.push_back(to_string(r));
            return Verdict::make_yes("isomorphism", {{"witness", w}});
        }
        if (auto tr = anodyne_trace(f)) {
            nlohmann::json steps;
            for (const auto& [y, k, z] : *tr)
                steps.push_back({{"filler", y}, {"horn", k}, {"free_face", z}});
            return Verdict::make_yes("anodyne-expansion", {{"steps", steps}});
        }
        auto cx = collapse_to_point(X);
        auto cy = collapse_to_point(Y);
        if (cx && cy) {
            nlohmann::json sx, sy;
            for (auto [s, t] : *cx) sx.push_back({s, t});
            for (auto [s, t] : *cy) sy.push_back({s, t});
            return Verdict::make_yes("both-collapse-to-point",
                                     {{"source_trace", sx}, {"target_trace", sy}});
        }
    } catch (const BudgetExceeded& e) {
        return Verdict::make_unknown("budget-exhausted",
                                     {{"what", e.what()}, {"dimension", e.dimension}});
    }
    return Verdict::make_unknown("no-certificate-found",
                                 {{"steps", opts.budget.used()}});
}

Verdict is_kan(const SSetPtr& X, int dim_bound, const Budget& budget) {
    auto pt = point_sset();
    SMap to_pt = terminal_map(X, pt);
    try {
        std::size_t horns_checked = 0;
        for (int m = 1; m <= dim_bound; ++m) {
            auto Dm = standard_simplex(m);
            SMap bottom = terminal_map(Dm.s, pt);
            for (int k = 0; k <= m; ++k) {
                auto H = horn(m, k);
                SMap incl = subset_inclusion(H, Dm);
                for (const SMap& u : hom_enumerate(H.s, X, budget)) {
                    ++horns_checked;
                    LiftingSquare sq(incl, to_pt, u, bottom);
                    if (solve_lifting(sq, budget).empty()) {
                        nlohmann::json uj;
                        for (const Ref& r : u.assignment()) uj.push_back(to_string(r));
                        return Verdict::make_no(
                            "unfillable-horn",
                            {{"m", m}, {"k", k}, {"horn_map", uj}});
                    }
                }
            }
        }
        return Verdict::make_yes("all-horns-fill", {{"dim_bound", dim_bound},
                                                    {"horns", horns_checked}});
    } catch (const BudgetExceeded& e) {
        return Verdict::make_unknown("budget-exhausted",
                                     {{"what", e.what()}, {"dimension", e.dimension}});
    }
}

}  // namespace sk
