#include "segalkit/core.hpp"

#include <algorithm>
#include <sstream>

namespace sk {

const std::vector<int> SSet::empty_ids_{};

std::string to_string(const Ref& r) {
    std::ostringstream os;
    os << r.id;
    if (!r.word.empty()) {
        os << " s[";
        for (std::size_t i = 0; i < r.word.size(); ++i) {
            if (i) os << ",";
            os << r.word[i];
        }
        os << "]";
    }
    return os.str();
}

Word word_insert(const Word& w, int i) {
    Word out;
    out.reserve(w.size() + 1);
    bool placed = false;
    for (int j : w) {
        if (j >= i) {
            if (!placed) {
                out.push_back(i);
                placed = true;
            }
            out.push_back(j + 1);
        } else {
            out.push_back(j);
        }
    }
    if (!placed) out.push_back(i);
    return out;
}

Word word_strip(const Word& w, const Word& c) {
    Word out;
    out.reserve(w.size() - c.size());
    std::size_t ci = 0;
    int removed_below = 0;
    for (int j : w) {
        while (ci < c.size() && c[ci] < j) {
            ++ci;
            ++removed_below;
        }
        if (ci < c.size() && c[ci] == j) {
            ++ci;
            ++removed_below;
            continue;
        }
        out.push_back(j - removed_below);
    }
    return out;
}

Word word_meet(const Word& a, const Word& b) {
    Word out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

bool word_contains(const Word& w, int i) {
    return std::binary_search(w.begin(), w.end(), i);
}

Ref push_degeneracy(const Ref& r, int i) {
    return Ref{r.id, word_insert(r.word, i)};
}

Ref push_word(Ref r, const Word& u) {
    for (int i : u) r.word = word_insert(r.word, i);
    return r;
}

SSet::SSet(std::string name, std::vector<Simplex> simplices)
    : name_(std::move(name)), simps_(std::move(simplices)) {
    for (const auto& s : simps_) top_dim_ = std::max(top_dim_, s.dim);
    by_dim_.assign(top_dim_ + 1, {});
    for (int i = 0; i < size(); ++i) by_dim_[simps_[i].dim].push_back(i);
    validate();
}

const std::vector<int>& SSet::ids_of_dim(int d) const {
    if (d < 0 || d > top_dim_) return empty_ids_;
    return by_dim_[d];
}

Ref SSet::face(const Ref& r, int i) const {
    if (r.word.empty()) {
        return simps_[r.id].faces[i];
    }
    int j = r.word.back();
    Ref inner{r.id, Word(r.word.begin(), r.word.end() - 1)};
    if (i == j || i == j + 1) return inner;
    if (i < j) return push_degeneracy(face(inner, i), j - 1);
    return push_degeneracy(face(inner, i - 1), j);
}

Ref SSet::act(const Ref& r, const std::vector<int>& alpha) const {
    // Contravariant action: faces for indices missing from the image
    // (largest first), then degeneracies at the repeat positions.
    int n = ref_dim(r);
    if (static_cast<int>(alpha.size()) == n + 1) {
        bool ident = true;
        for (int t = 0; t <= n; ++t)
            if (alpha[t] != t) { ident = false; break; }
        if (ident) return r;
    }
    std::vector<int> delta, sigma;
    epi_mono_factor(alpha, delta, sigma);
    Ref cur = r;
    // delta: strictly increasing subset of [n]; drop the complement top-down.
    std::vector<bool> in_image(n + 1, false);
    for (int v : delta) in_image[v] = true;
    for (int i = n; i >= 0; --i)
        if (!in_image[i]) cur = face(cur, i);
    // sigma: [m] ->> [p]; one degeneracy per repeat position, lowest first,
    // which is exactly the normal-form word of the repeat positions.
    for (int j = 0; j + 1 < static_cast<int>(sigma.size()); ++j)
        if (sigma[j] == sigma[j + 1]) cur = push_degeneracy(cur, j);
    return cur;
}

std::vector<Ref> SSet::all_refs(int d) const {
    std::vector<Ref> out;
    for (int dd = 0; dd <= std::min(d, top_dim_); ++dd) {
        int k = d - dd;  // word length; entries from {0..d-1}
        if (k == 0) {
            for (int id : ids_of_dim(dd)) out.push_back(Ref{id, {}});
            continue;
        }
        if (d < 1) continue;
        // enumerate increasing k-subsets of {0..d-1}
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            for (int id : ids_of_dim(dd)) out.push_back(Ref{id, Word(idx.begin(), idx.end())});
            int i = k - 1;
            while (i >= 0 && idx[i] == d - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SSet::count_refs(int d) const {
    // C(d, d-dd) words per nondegenerate simplex of dimension dd.
    std::size_t total = 0;
    for (int dd = 0; dd <= std::min(d, top_dim_); ++dd) {
        std::size_t c = 1;
        int k = d - dd;
        for (int i = 0; i < k; ++i) c = c * (d - i) / (i + 1);
        total += c * ids_of_dim(dd).size();
    }
    return total;
}

void SSet::validate() const {
    for (int id = 0; id < size(); ++id) {
        const Simplex& s = simps_[id];
        if (s.dim < 0) throw InvalidParameter("negative dimension");
        if (static_cast<int>(s.faces.size()) != (s.dim == 0 ? 0 : s.dim + 1))
            throw InvalidParameter("simplex " + std::to_string(id) +
                                   ": wrong face count");
        for (const Ref& f : s.faces) {
            if (f.id < 0 || f.id >= size())
                throw InvalidParameter("simplex " + std::to_string(id) +
                                       ": dangling face reference");
            if (ref_dim(f) != s.dim - 1)
                throw InvalidParameter("simplex " + std::to_string(id) +
                                       ": face of wrong dimension");
        }
        // d_i d_j = d_{j-1} d_i for i < j
        for (int j = 1; j <= s.dim && s.dim >= 2; ++j)
            for (int i = 0; i < j; ++i)
                if (face(s.faces[j], i) != face(s.faces[i], j - 1))
                    throw InvalidParameter(
                        "simplicial identity fails at simplex " +
                        std::to_string(id) + " (i=" + std::to_string(i) +
                        ", j=" + std::to_string(j) + ")");
    }
}

SMap::SMap(SSetPtr src, SSetPtr dst, std::vector<Ref> assign, bool validate)
    : src_(std::move(src)), dst_(std::move(dst)), assign_(std::move(assign)) {
    if (static_cast<int>(assign_.size()) != src_->size())
        throw InvalidParameter("map assignment has wrong length");
    for (int id = 0; id < src_->size(); ++id)
        if (dst_->ref_dim(assign_[id]) != src_->dim_of(id))
            throw InvalidParameter("map does not preserve dimension at simplex " +
                                   std::to_string(id));
    if (validate) {
        for (int id = 0; id < src_->size(); ++id) {
            int d = src_->dim_of(id);
            for (int i = 0; i <= d && d > 0; ++i)
                if (apply(src_->faces_of(id)[i]) != dst_->face(assign_[id], i))
                    throw InvalidParameter(
                        "map does not commute with d_" + std::to_string(i) +
                        " at simplex " + std::to_string(id));
        }
    }
}

SMap SMap::identity(const SSetPtr& X) {
    std::vector<Ref> a(X->size());
    for (int i = 0; i < X->size(); ++i) a[i] = Ref{i, {}};
    return SMap(X, X, std::move(a), false);
}

bool SMap::is_identity() const {
    if (src_ != dst_) return false;
    for (int i = 0; i < src_->size(); ++i)
        if (!(assign_[i].id == i && assign_[i].word.empty())) return false;
    return true;
}

bool SMap::is_injective() const {
    // A mono sends nondegenerate simplices to nondegenerate ones, injectively.
    std::vector<bool> hit(dst_->size(), false);
    for (const Ref& r : assign_) {
        if (!r.word.empty()) return false;
        if (hit[r.id]) return false;
        hit[r.id] = true;
    }
    return true;
}

bool SMap::is_isomorphism() const {
    return src_->size() == dst_->size() && is_injective();
}

bool SMap::is_surjective() const {
    std::vector<bool> hit(dst_->size(), false);
    int n = 0;
    for (const Ref& r : assign_)
        if (r.word.empty() && !hit[r.id]) { hit[r.id] = true; ++n; }
    return n == dst_->size();
}

SMap compose(const SMap& g, const SMap& f) {
    if (f.dst_ != g.src_) throw InvalidParameter("compose: source/target mismatch");
    std::vector<Ref> a(f.src_->size());
    for (int i = 0; i < f.src_->size(); ++i) a[i] = g.apply(f.assign_[i]);
    return SMap(f.src_, g.dst_, std::move(a), false);
}

SMap terminal_map(const SSetPtr& X, const SSetPtr& point) {
    std::vector<Ref> a(X->size());
    for (int i = 0; i < X->size(); ++i) {
        Word w(X->dim_of(i));
        for (int j = 0; j < X->dim_of(i); ++j) w[j] = j;
        a[i] = Ref{0, std::move(w)};
    }
    return SMap(X, point, std::move(a), false);
}

std::vector<std::vector<int>> monotone_maps(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m + 1, 0);
    while (true) {
        out.push_back(cur);
        int i = m;
        while (i >= 0 && cur[i] == n) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j <= m; ++j) cur[j] = cur[i];
    }
    return out;
}

std::vector<std::vector<int>> injective_monotone_maps(int m, int n) {
    std::vector<std::vector<int>> out;
    if (m > n) return out;
    std::vector<int> idx(m + 1);
    for (int i = 0; i <= m; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = m;
        while (i >= 0 && idx[i] == n - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j <= m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

void epi_mono_factor(const std::vector<int>& alpha, std::vector<int>& delta,
                     std::vector<int>& sigma) {
    delta.clear();
    sigma.clear();
    sigma.reserve(alpha.size());
    for (int v : alpha) {
        if (delta.empty() || delta.back() != v) delta.push_back(v);
        sigma.push_back(static_cast<int>(delta.size()) - 1);
    }
}

}  // namespace sk
