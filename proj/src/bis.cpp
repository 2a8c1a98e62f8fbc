#include "segalkit/bis.hpp"

#include <algorithm>
#include <climits>

#include "segalkit/builders.hpp"

namespace sk {

namespace {

std::vector<int> coface_tuple(int n, int i) {
    // delta^i : [n-1] -> [n]
    std::vector<int> a;
    for (int v = 0; v <= n; ++v)
        if (v != i) a.push_back(v);
    return a;
}

std::vector<int> codegeneracy_tuple(int n, int i) {
    // sigma^i : [n+1] -> [n]
    std::vector<int> a;
    for (int v = 0; v <= n; ++v) {
        a.push_back(v);
        if (v == i) a.push_back(v);
    }
    return a;
}

std::vector<int> compose_tuples(const std::vector<int>& alpha,
                                const std::vector<int>& beta) {
    // (alpha o beta)(j) = alpha[beta[j]]
    std::vector<int> c(beta.size());
    for (std::size_t j = 0; j < beta.size(); ++j) c[j] = alpha[beta[j]];
    return c;
}

void check_tuple(const std::vector<int>& alpha, int n, const char* who) {
    if (alpha.empty()) throw InvalidParameter(std::string(who) + ": empty tuple");
    int prev = 0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] < 0 || alpha[j] > n || (j > 0 && alpha[j] < prev))
            throw InvalidParameter(std::string(who) + ": not monotone into [n]");
        prev = alpha[j];
    }
}

std::vector<std::vector<int>> epi_maps(int m, int n) {
    std::vector<std::vector<int>> out;
    for (auto& a : monotone_maps(m, n))
        if (a.back() == n && a.front() == 0 &&
            std::adjacent_find(a.begin(), a.end(),
                               [](int x, int y) { return y > x + 1; }) == a.end())
            out.push_back(a);
    return out;
}

}  // namespace

// --- Bisim base ---

int Bisim::level_bound() const { return INT_MAX; }

SSetPtr Bisim::row(int n) const {
    if (n < 0) throw InvalidParameter("row: negative level");
    if (n > level_bound())
        throw InvalidParameter("row: level beyond the realization window of " +
                               name_);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = rows_.find(n);
        if (it != rows_.end()) return it->second;
    }
    SSetPtr r = compute_row(n);
    std::lock_guard<std::mutex> lk(mu_);
    return rows_.emplace(n, std::move(r)).first->second;
}

SMap Bisim::face_op(int n, int i) const {
    if (n < 1 || i < 0 || i > n) throw InvalidParameter("face_op: bad indices");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = face_memo_.find({n, i});
        if (it != face_memo_.end()) return it->second;
    }
    SMap f = compute_face_op(n, i);
    std::lock_guard<std::mutex> lk(mu_);
    return face_memo_.emplace(std::make_pair(n, i), std::move(f)).first->second;
}

SMap Bisim::degen_op(int n, int i) const {
    if (n < 0 || i < 0 || i > n) throw InvalidParameter("degen_op: bad indices");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = degen_memo_.find({n, i});
        if (it != degen_memo_.end()) return it->second;
    }
    SMap f = compute_degen_op(n, i);
    std::lock_guard<std::mutex> lk(mu_);
    return degen_memo_.emplace(std::make_pair(n, i), std::move(f)).first->second;
}

SMap Bisim::op(int n, const std::vector<int>& alpha) const {
    check_tuple(alpha, n, "op");
    int m = static_cast<int>(alpha.size()) - 1;
    std::vector<bool> hit(n + 1, false);
    for (int v : alpha) hit[v] = true;
    for (int v = n; v >= 0; --v)
        if (!hit[v]) {
            std::vector<int> beta(alpha);
            for (int& x : beta)
                if (x > v) --x;
            return compose(op(n - 1, beta), face_op(n, v));
        }
    if (m == n) return SMap::identity(row(n));
    int j = 0;
    while (alpha[j] != alpha[j + 1]) ++j;
    std::vector<int> shorter(alpha);
    shorter.erase(shorter.begin() + j);
    return compose(degen_op(m - 1, j), op(n, shorter));
}

// --- BisMap ---

BisMap::BisMap(BisimPtr src, BisimPtr dst, std::vector<SMap> rows, bool validate)
    : src_(std::move(src)), dst_(std::move(dst)), rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidParameter("BisMap: empty window");
    int w = window();
    for (int n = 0; n <= w; ++n)
        if (rows_[n].src() != src_->row(n) || rows_[n].dst() != dst_->row(n))
            throw InvalidParameter("BisMap: row map endpoints mismatch");
    if (!validate) return;
    for (int n = 1; n <= w; ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(rows_[n - 1], src_->face_op(n, i)) !=
                compose(dst_->face_op(n, i), rows_[n]))
                throw InvalidParameter("BisMap: face operators do not commute");
    for (int n = 0; n < w; ++n)
        for (int i = 0; i <= n; ++i)
            if (compose(rows_[n + 1], src_->degen_op(n, i)) !=
                compose(dst_->degen_op(n, i), rows_[n]))
                throw InvalidParameter(
                    "BisMap: degeneracy operators do not commute");
}

bool BisMap::is_levelwise_isomorphism() const {
    for (const SMap& f : rows_)
        if (!f.is_isomorphism()) return false;
    return true;
}

BisMap BisMap::identity(const BisimPtr& X, int window) {
    std::vector<SMap> rows;
    for (int n = 0; n <= window; ++n) rows.push_back(SMap::identity(X->row(n)));
    return BisMap(X, X, std::move(rows), false);
}

BisMap bis_compose(const BisMap& g, const BisMap& f) {
    if (f.dst() != g.src()) throw InvalidParameter("bis_compose: mismatch");
    int w = std::min(f.window(), g.window());
    std::vector<SMap> rows;
    for (int n = 0; n <= w; ++n) rows.push_back(compose(g.row(n), f.row(n)));
    return BisMap(f.src(), g.dst(), std::move(rows), false);
}

// --- ConstantBis ---

ConstantBis::ConstantBis(SSetPtr K, std::string name)
    : Bisim(name.empty() ? "const(" + K->name() + ")" : std::move(name)),
      K_(std::move(K)) {}

SMap ConstantBis::compute_face_op(int, int) const { return SMap::identity(K_); }
SMap ConstantBis::compute_degen_op(int, int) const { return SMap::identity(K_); }

// --- TransposeBis ---

TransposeBis::TransposeBis(SSetPtr K, std::string name)
    : Bisim(name.empty() ? K->name() + "^t" : std::move(name)),
      K_(std::move(K)) {}

int TransposeBis::index_of(int n, const Ref& r) const {
    auto refs = K_->all_refs(n);
    auto it = std::lower_bound(refs.begin(), refs.end(), r);
    if (it == refs.end() || *it != r)
        throw InvalidParameter("transpose: ref not in row");
    return static_cast<int>(it - refs.begin());
}

SSetPtr TransposeBis::compute_row(int n) const {
    return discrete_sset(static_cast<int>(K_->count_refs(n)),
                         name() + "_" + std::to_string(n));
}

SMap TransposeBis::act_op(int n, const std::vector<int>& alpha) const {
    int m = static_cast<int>(alpha.size()) - 1;
    auto refs = K_->all_refs(n);
    std::vector<Ref> assign;
    assign.reserve(refs.size());
    for (const Ref& r : refs)
        assign.push_back(Ref{index_of(m, K_->act(r, alpha)), {}});
    return SMap(row(n), row(m), std::move(assign));
}

SMap TransposeBis::compute_face_op(int n, int i) const {
    return act_op(n, coface_tuple(n, i));
}

SMap TransposeBis::compute_degen_op(int n, int i) const {
    return act_op(n, codegeneracy_tuple(n, i));
}

// --- Cosk0Bis ---

Cosk0Bis::Cosk0Bis(SSetPtr K, Budget budget, std::string name)
    : Bisim(name.empty() ? "cosk0(" + K->name() + ")" : std::move(name)),
      K_(std::move(K)), budget_(budget) {}

const ProductResult& Cosk0Bis::level(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    std::vector<SSetPtr> factors(n + 1, K_);
    return levels_.emplace(n, product(factors, budget_)).first->second;
}

SSetPtr Cosk0Bis::compute_row(int n) const { return level(n).prod; }

SMap Cosk0Bis::op_from_tuple_indices(int n, const std::vector<int>& pick) const {
    int m = static_cast<int>(pick.size()) - 1;
    row(n);
    row(m);
    std::vector<SMap> comps;
    for (int v : pick) comps.push_back(level(n).projections[v]);
    return tuple_map(level(m), comps);
}

SMap Cosk0Bis::compute_face_op(int n, int i) const {
    return op_from_tuple_indices(n, coface_tuple(n, i));
}

SMap Cosk0Bis::compute_degen_op(int n, int i) const {
    return op_from_tuple_indices(n, codegeneracy_tuple(n, i));
}

// --- ProductBis ---

ProductBis::ProductBis(std::vector<BisimPtr> factors, Budget budget,
                       std::string name)
    : Bisim(std::move(name)), factors_(std::move(factors)), budget_(budget) {
    if (factors_.empty()) throw InvalidParameter("ProductBis: no factors");
}

int ProductBis::level_bound() const {
    int b = INT_MAX;
    for (const auto& f : factors_) b = std::min(b, f->level_bound());
    return b;
}

const ProductResult& ProductBis::level(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    std::vector<SSetPtr> rows;
    for (const auto& f : factors_) rows.push_back(f->row(n));
    return levels_.emplace(n, product(rows, budget_)).first->second;
}

SSetPtr ProductBis::compute_row(int n) const { return level(n).prod; }

SMap ProductBis::projection(int factor, int n) const {
    row(n);
    return level(n).projections.at(factor);
}

SMap ProductBis::induced(int n_src, int n_dst,
                         const std::vector<SMap>& comps) const {
    row(n_dst);
    return tuple_map(level(n_dst), comps);
}

SMap ProductBis::compute_face_op(int n, int i) const {
    std::vector<SMap> comps;
    for (std::size_t f = 0; f < factors_.size(); ++f)
        comps.push_back(compose(factors_[f]->face_op(n, i),
                                projection(static_cast<int>(f), n)));
    return induced(n, n - 1, comps);
}

SMap ProductBis::compute_degen_op(int n, int i) const {
    std::vector<SMap> comps;
    for (std::size_t f = 0; f < factors_.size(); ++f)
        comps.push_back(compose(factors_[f]->degen_op(n, i),
                                projection(static_cast<int>(f), n)));
    return induced(n, n + 1, comps);
}

// --- CallbackBis ---

CallbackBis::CallbackBis(RowFn row, OpFn face, OpFn degen, std::string name,
                         int level_bound)
    : Bisim(std::move(name)), row_fn_(std::move(row)), face_fn_(std::move(face)),
      degen_fn_(std::move(degen)), bound_(level_bound) {}

int CallbackBis::level_bound() const { return bound_ < 0 ? INT_MAX : bound_; }

// --- SkeletonBis ---

SkeletonBis::SkeletonBis(BisimPtr X, int k, std::string name)
    : Bisim(name.empty() ? "sk" + std::to_string(k) + "(" + X->name() + ")"
                         : std::move(name)),
      X_(std::move(X)), k_(k) {
    if (k_ < 0) throw InvalidParameter("SkeletonBis: negative degree");
}

const SkeletonResult& SkeletonBis::sub(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = subs_.find(n);
    if (it != subs_.end()) return it->second;
    SSetPtr Xn = X_->row(n);
    std::vector<bool> keep(Xn->size(), false);
    for (int m = 0; m <= std::min(k_, n - 1); ++m)
        for (const auto& alpha : epi_maps(n, m)) {
            SMap deg = X_->op(m, alpha);
            for (const Ref& r : deg.assignment()) keep[r.id] = true;
        }
    // face-close
    bool changed = true;
    while (changed) {
        changed = false;
        for (int id = 0; id < Xn->size(); ++id)
            if (keep[id])
                for (const Ref& f : Xn->faces_of(id))
                    if (!keep[f.id]) { keep[f.id] = true; changed = true; }
    }
    std::vector<int> ids;
    for (int id = 0; id < Xn->size(); ++id)
        if (keep[id]) ids.push_back(id);
    return subs_
        .emplace(n, subcomplex(Xn, ids, name() + "_" + std::to_string(n)))
        .first->second;
}

SSetPtr SkeletonBis::compute_row(int n) const {
    return n <= k_ ? X_->row(n) : sub(n).sk;
}

SMap SkeletonBis::inclusion_row(int n) const {
    return n <= k_ ? SMap::identity(row(n)) : sub(n).inclusion;
}

SMap SkeletonBis::transfer(int n_src, int n_dst, const SMap& parent_op) const {
    SMap g = compose(parent_op, inclusion_row(n_src));
    return n_dst <= k_ ? g : corestrict_map(g, sub(n_dst));
}

SMap SkeletonBis::compute_face_op(int n, int i) const {
    return transfer(n, n - 1, X_->face_op(n, i));
}

SMap SkeletonBis::compute_degen_op(int n, int i) const {
    return transfer(n, n + 1, X_->degen_op(n, i));
}

// --- CoskeletonBis ---

CoskeletonBis::CoskeletonBis(BisimPtr X, int k, Budget budget, std::string name)
    : Bisim(name.empty() ? "cosk" + std::to_string(k) + "(" + X->name() + ")"
                         : std::move(name)),
      X_(std::move(X)), k_(k), budget_(budget) {
    if (k_ < 0) throw InvalidParameter("CoskeletonBis: negative degree");
}

const CoskeletonBis::Level& CoskeletonBis::level(int n) const {
    {
        std::lock_guard<std::mutex> lk(lmu_);
        auto it = levels_.find(n);
        if (it != levels_.end()) return it->second;
    }
    Level lv;
    lv.tops = injective_monotone_maps(k_, n);
    SSetPtr Xk = X_->row(k_);
    std::vector<SSetPtr> factors(lv.tops.size(), Xk);
    lv.amb = product(factors, budget_);

    // pairwise compatibility over shared sub-injections
    struct Pair {
        int a, b;
        SMap oa, ob;
    };
    std::vector<Pair> pairs;
    for (int a = 0; a < static_cast<int>(lv.tops.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(lv.tops.size()); ++b) {
            std::vector<int> common;
            std::set_intersection(lv.tops[a].begin(), lv.tops[a].end(),
                                  lv.tops[b].begin(), lv.tops[b].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            auto positions = [&](const std::vector<int>& top) {
                std::vector<int> pos;
                for (int v : common)
                    pos.push_back(static_cast<int>(
                        std::lower_bound(top.begin(), top.end(), v) -
                        top.begin()));
                return pos;
            };
            pairs.push_back(
                {a, b, X_->op(k_, positions(lv.tops[a])),
                 X_->op(k_, positions(lv.tops[b]))});
        }
    std::vector<int> ids;
    for (const auto& [tuple, id] : lv.amb.id_of) {
        budget_.charge();
        bool ok = true;
        for (const Pair& p : pairs)
            if (p.oa.apply(tuple[p.a]) != p.ob.apply(tuple[p.b])) {
                ok = false;
                break;
            }
        if (ok) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    lv.sub = subcomplex(lv.amb.prod, ids, name() + "_" + std::to_string(n));

    std::lock_guard<std::mutex> lk(lmu_);
    return levels_.emplace(n, std::move(lv)).first->second;
}

SSetPtr CoskeletonBis::compute_row(int n) const {
    return n <= k_ ? X_->row(n) : level(n).sub.sk;
}

SMap CoskeletonBis::component(int n, const std::vector<int>& mu) const {
    if (n <= k_) return X_->op(n, mu);
    const Level& lv = level(n);
    int j = static_cast<int>(mu.size()) - 1;
    // complete mu to a top injection with the smallest unused values
    std::vector<int> hat(mu);
    std::vector<bool> used(n + 1, false);
    for (int v : mu) used[v] = true;
    for (int v = 0; v <= n && static_cast<int>(hat.size()) < k_ + 1; ++v)
        if (!used[v]) hat.push_back(v);
    std::sort(hat.begin(), hat.end());
    int idx = static_cast<int>(
        std::lower_bound(lv.tops.begin(), lv.tops.end(), hat) - lv.tops.begin());
    SMap proj = compose(lv.amb.projections[idx], lv.sub.inclusion);
    if (j == k_) return proj;
    std::vector<int> iota;
    for (int v : mu)
        iota.push_back(static_cast<int>(
            std::lower_bound(hat.begin(), hat.end(), v) - hat.begin()));
    return compose(X_->op(k_, iota), proj);
}

SMap CoskeletonBis::induced(int n_src, int n_dst,
                            const std::vector<int>& alpha) const {
    row(n_src);
    std::vector<int> delta, sigma;
    if (n_dst <= k_) {
        epi_mono_factor(alpha, delta, sigma);
        return compose(X_->op(static_cast<int>(delta.size()) - 1, sigma),
                       component(n_src, delta));
    }
    const Level& lv = level(n_dst);
    std::vector<SMap> comps;
    for (const auto& beta : lv.tops) {
        epi_mono_factor(compose_tuples(alpha, beta), delta, sigma);
        comps.push_back(
            compose(X_->op(static_cast<int>(delta.size()) - 1, sigma),
                    component(n_src, delta)));
    }
    return corestrict_map(tuple_map(lv.amb, comps), lv.sub);
}

SMap CoskeletonBis::compute_face_op(int n, int i) const {
    if (n <= k_) return X_->face_op(n, i);
    return induced(n, n - 1, coface_tuple(n, i));
}

SMap CoskeletonBis::compute_degen_op(int n, int i) const {
    if (n + 1 <= k_) return X_->degen_op(n, i);
    return induced(n, n + 1, codegeneracy_tuple(n, i));
}

SMap CoskeletonBis::canonical_row(int n) const {
    if (n <= k_) return SMap::identity(row(n));
    const Level& lv = level(n);
    std::vector<SMap> comps;
    for (const auto& beta : lv.tops) comps.push_back(X_->op(n, beta));
    return corestrict_map(tuple_map(lv.amb, comps), lv.sub);
}

// --- LevelQuotientBis ---

LevelQuotientBis::LevelQuotientBis(BisimPtr X, RelFn rels, Budget budget,
                                   std::string name)
    : Bisim(name.empty() ? X->name() + "/~" : std::move(name)),
      X_(std::move(X)), rels_(std::move(rels)), budget_(budget) {}

const QuotientResult& LevelQuotientBis::level(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    return levels_
        .emplace(n, quotient(X_->row(n), rels_(n), budget_,
                             name() + "_" + std::to_string(n)))
        .first->second;
}

SSetPtr LevelQuotientBis::compute_row(int n) const { return level(n).q; }

SMap LevelQuotientBis::to_quotient_row(int n) const {
    row(n);
    return level(n).to_quotient;
}

SMap LevelQuotientBis::induced(int n_src, int n_dst,
                               const SMap& parent_op) const {
    row(n_src);
    row(n_dst);
    const QuotientResult& qs = level(n_src);
    const QuotientResult& qd = level(n_dst);
    std::vector<Ref> assign;
    assign.reserve(qs.section.size());
    for (const Ref& r : qs.section)
        assign.push_back(qd.to_quotient.apply(parent_op.apply(r)));
    return SMap(qs.q, qd.q, std::move(assign));
}

SMap LevelQuotientBis::compute_face_op(int n, int i) const {
    return induced(n, n - 1, X_->face_op(n, i));
}

SMap LevelQuotientBis::compute_degen_op(int n, int i) const {
    return induced(n, n + 1, X_->degen_op(n, i));
}

// --- PushoutBis ---

PushoutBis::PushoutBis(BisMap f, BisMap g, Budget budget, std::string name)
    : Bisim(std::move(name)), f_(std::move(f)), g_(std::move(g)),
      budget_(budget) {
    if (f_.src() != g_.src())
        throw InvalidParameter("PushoutBis: legs must share a source");
}

int PushoutBis::level_bound() const {
    return std::min(f_.window(), g_.window());
}

const PushoutResult& PushoutBis::level(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    return levels_.emplace(n, pushout(f_.row(n), g_.row(n), budget_))
        .first->second;
}

SSetPtr PushoutBis::compute_row(int n) const { return level(n).p; }

SMap PushoutBis::from_b_row(int n) const {
    row(n);
    return level(n).from_b;
}

SMap PushoutBis::from_c_row(int n) const {
    row(n);
    return level(n).from_c;
}

SMap PushoutBis::induced(int n_src, int n_dst, const SMap& b_op,
                         const SMap& c_op) const {
    row(n_src);
    row(n_dst);
    const PushoutResult& ps = level(n_src);
    const PushoutResult& pd = level(n_dst);
    std::vector<Ref> assign;
    assign.reserve(ps.section.size());
    for (const auto& [leg, r] : ps.section) {
        const SMap& leg_op = leg == 0 ? b_op : c_op;
        const SMap& into = leg == 0 ? pd.from_b : pd.from_c;
        assign.push_back(into.apply(leg_op.apply(r)));
    }
    return SMap(ps.p, pd.p, std::move(assign));
}

SMap PushoutBis::compute_face_op(int n, int i) const {
    return induced(n, n - 1, f_.dst()->face_op(n, i), g_.dst()->face_op(n, i));
}

SMap PushoutBis::compute_degen_op(int n, int i) const {
    return induced(n, n + 1, f_.dst()->degen_op(n, i), g_.dst()->degen_op(n, i));
}

// --- SubBis ---

SubBis::SubBis(BisimPtr X, KeepFn keep, std::string name)
    : Bisim(name.empty() ? "sub(" + X->name() + ")" : std::move(name)),
      X_(std::move(X)), keep_(std::move(keep)) {}

const SkeletonResult& SubBis::sub(int n) const {
    std::lock_guard<std::mutex> lk(lmu_);
    auto it = subs_.find(n);
    if (it != subs_.end()) return it->second;
    return subs_
        .emplace(n, subcomplex(X_->row(n), keep_(*X_, n),
                               name() + "_" + std::to_string(n)))
        .first->second;
}

SSetPtr SubBis::compute_row(int n) const { return sub(n).sk; }

SMap SubBis::inclusion_row(int n) const {
    row(n);
    return sub(n).inclusion;
}

SMap SubBis::compute_face_op(int n, int i) const {
    row(n - 1);
    return corestrict_map(compose(X_->face_op(n, i), inclusion_row(n)),
                          sub(n - 1));
}

SMap SubBis::compute_degen_op(int n, int i) const {
    row(n + 1);
    return corestrict_map(compose(X_->degen_op(n, i), inclusion_row(n)),
                          sub(n + 1));
}

// --- Derived operations ---

MatchingResult matching_object(const BisimPtr& X, int n, const Budget& budget) {
    if (n < 1) throw InvalidParameter("matching_object: n must be >= 1");
    auto cs = std::make_shared<CoskeletonBis>(X, n - 1, budget);
    return MatchingResult{cs->row(n), cs->canonical_row(n)};
}

namespace {

// All isomorphisms A -> B compatible with the admit filter. Backtracks over
// nondegenerate simplices in dimension order with injectivity and face
// consistency enforced during the search, which prunes far harder than
// filtering hom_enumerate output.
std::vector<SMap> iso_enumerate(const SSetPtr& A, const SSetPtr& B,
                                const Budget& budget,
                                const std::function<bool(int, const Ref&)>& admit) {
    std::vector<SMap> out;
    if (A->size() != B->size() || A->top_dim() != B->top_dim()) return out;
    for (int d = 0; d <= A->top_dim(); ++d)
        if (A->count_dim(d) != B->count_dim(d)) return out;

    std::vector<int> order;
    for (int d = 0; d <= A->top_dim(); ++d)
        for (int id : A->ids_of_dim(d)) order.push_back(id);

    std::vector<Ref> assign(A->size());
    std::vector<bool> used(B->size(), false);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == order.size()) {
            out.emplace_back(A, B, assign, false);
            return;
        }
        int id = order[pos];
        int d = A->dim_of(id);
        for (int b : B->ids_of_dim(d)) {
            if (used[b]) continue;
            budget.charge(1, d);
            bool ok = true;
            for (int i = 0; i <= d && d > 0; ++i) {
                const Ref& fr = A->faces_of(id)[i];
                Ref mapped{assign[fr.id].id, fr.word};
                if (mapped != B->faces_of(b)[i]) { ok = false; break; }
            }
            if (!ok || (admit && !admit(id, Ref{b, {}}))) continue;
            used[b] = true;
            assign[id] = Ref{b, {}};
            self(self, pos + 1);
            used[b] = false;
        }
    };
    rec(rec, 0);
    return out;
}

// Backtracking over levels; per-level candidates come from hom_enumerate
// with the face-commutation filter against the level below, then the
// degeneracy constraints are checked as whole maps.
void bis_hom_rec(const BisimPtr& A, const BisimPtr& X, int window,
                 const Budget& budget, std::vector<SMap>& chosen, bool iso_only,
                 bool stop_at_first, std::vector<BisMap>& out) {
    int n = static_cast<int>(chosen.size());
    if (n > window) {
        out.emplace_back(A, X, chosen, false);
        return;
    }
    std::vector<SMap> a_faces, x_faces;
    for (int i = 0; i <= n && n >= 1; ++i) {
        a_faces.push_back(A->face_op(n, i));
        x_faces.push_back(X->face_op(n, i));
    }
    std::function<bool(int, const Ref&)> admit = nullptr;
    if (n >= 1)
        admit = [&](int id, const Ref& c) {
            for (int i = 0; i <= n; ++i) {
                budget.charge();
                if (chosen[n - 1].apply(a_faces[i].apply(Ref{id, {}})) !=
                    x_faces[i].apply(c))
                    return false;
            }
            return true;
        };
    std::vector<SMap> cands =
        iso_only ? iso_enumerate(A->row(n), X->row(n), budget, admit)
                 : hom_enumerate(A->row(n), X->row(n), budget, admit);
    for (SMap& cand : cands) {
        if (iso_only && !cand.is_isomorphism()) continue;
        bool ok = true;
        for (int i = 0; ok && n >= 1 && i <= n - 1; ++i)
            ok = compose(cand, A->degen_op(n - 1, i)) ==
                 compose(X->degen_op(n - 1, i), chosen[n - 1]);
        if (!ok) continue;
        chosen.push_back(std::move(cand));
        bis_hom_rec(A, X, window, budget, chosen, iso_only, stop_at_first, out);
        chosen.pop_back();
        if (stop_at_first && !out.empty()) return;
    }
}

}  // namespace

std::vector<BisMap> bis_hom_enumerate(const BisimPtr& A, const BisimPtr& X,
                                      int window, const Budget& budget) {
    std::vector<BisMap> out;
    std::vector<SMap> chosen;
    bis_hom_rec(A, X, window, budget, chosen, false, false, out);
    return out;
}

std::optional<BisMap> bis_find_isomorphism(const BisimPtr& A,
                                           const BisimPtr& B, int window,
                                           const Budget& budget) {
    for (int n = 0; n <= window; ++n) {
        if (A->row(n)->size() != B->row(n)->size()) return std::nullopt;
        for (int d = 0; d <= std::max(A->row(n)->top_dim(), B->row(n)->top_dim());
             ++d)
            if (A->row(n)->count_dim(d) != B->row(n)->count_dim(d))
                return std::nullopt;
    }
    std::vector<BisMap> out;
    std::vector<SMap> chosen;
    bis_hom_rec(A, B, window, budget, chosen, true, true, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

SSetPtr tabulate_sset(int D, const std::vector<int>& counts,
                      const std::function<int(int, int, int)>& face_idx,
                      const std::function<int(int, int, int)>& degen_idx,
                      std::string name) {
    // locate, per element, the first degeneracy producing it
    std::vector<std::vector<std::pair<int, int>>> made_by(D + 1);
    for (int d = 0; d <= D; ++d) made_by[d].assign(counts[d], {-1, -1});
    for (int d = 0; d < D; ++d)
        for (int i = 0; i <= d; ++i)
            for (int y = 0; y < counts[d]; ++y) {
                int j = degen_idx(d, i, y);
                if (made_by[d + 1][j].first < 0) made_by[d + 1][j] = {i, y};
            }
    std::vector<std::vector<int>> sid(D + 1);
    int next = 0;
    for (int d = 0; d <= D; ++d) {
        sid[d].assign(counts[d], -1);
        for (int j = 0; j < counts[d]; ++j)
            if (made_by[d][j].first < 0) sid[d][j] = next++;
    }
    std::vector<std::vector<std::optional<Ref>>> memo(D + 1);
    for (int d = 0; d <= D; ++d) memo[d].resize(counts[d]);
    std::function<Ref(int, int)> nf = [&](int d, int j) -> Ref {
        if (memo[d][j]) return *memo[d][j];
        Ref r;
        if (sid[d][j] >= 0)
            r = Ref{sid[d][j], {}};
        else {
            auto [i, y] = made_by[d][j];
            r = push_degeneracy(nf(d - 1, y), i);
        }
        memo[d][j] = r;
        return r;
    };
    std::vector<Simplex> simps(next);
    for (int d = 0; d <= D; ++d)
        for (int j = 0; j < counts[d]; ++j) {
            if (sid[d][j] < 0) continue;
            Simplex s;
            s.dim = d;
            for (int i = 0; i <= d && d >= 1; ++i)
                s.faces.push_back(nf(d - 1, face_idx(d, i, j)));
            simps[sid[d][j]] = std::move(s);
        }
    return SSet::make(std::move(name), std::move(simps));
}

SSetPtr mapping_space(const BisimPtr& X, const BisimPtr& Y, int deg_bound,
                      int window, const Budget& budget) {
    std::vector<SubsetComplex> simplices;
    std::vector<std::shared_ptr<const ProductBis>> prods;
    std::vector<std::vector<BisMap>> degs;
    for (int d = 0; d <= deg_bound; ++d) {
        simplices.push_back(standard_simplex(d));
        auto c = std::make_shared<ConstantBis>(simplices[d].s);
        auto P = std::make_shared<ProductBis>(std::vector<BisimPtr>{X, c},
                                              budget);
        prods.push_back(P);
        degs.push_back(bis_hom_enumerate(P, Y, window, budget));
    }
    // precompose an element of degree d_from with id x alpha_* for a
    // monotone alpha : [d_to] -> [d_from]
    auto act = [&](int d_from, int j, const std::vector<int>& alpha,
                   int d_to) -> int {
        SMap da = simplex_map(simplices[d_to], simplices[d_from], alpha);
        std::vector<SMap> rows;
        for (int n = 0; n <= window; ++n) {
            std::vector<SMap> comps{
                prods[d_to]->projection(0, n),
                compose(da, prods[d_to]->projection(1, n))};
            SMap mid = tuple_map(prods[d_from]->level(n), comps);
            rows.push_back(compose(degs[d_from][j].row(n), mid));
        }
        for (int t = 0; t < static_cast<int>(degs[d_to].size()); ++t)
            if (degs[d_to][t].rows() == rows) return t;
        throw InvalidParameter("mapping_space: operator image not found");
    };
    std::vector<int> counts;
    for (auto& v : degs) counts.push_back(static_cast<int>(v.size()));
    return tabulate_sset(
        deg_bound, counts,
        [&](int d, int i, int j) { return act(d, j, coface_tuple(d, i), d - 1); },
        [&](int d, int i, int j) {
            return act(d, j, codegeneracy_tuple(d, i), d + 1);
        },
        "map(" + X->name() + "," + Y->name() + ")");
}

void check_operator_functoriality(const BisimPtr& X, int window) {
    for (int n = 0; n <= window; ++n)
        for (int m = 0; m <= window; ++m)
            for (const auto& alpha : monotone_maps(m, n))
                for (int l = 0; l <= window; ++l)
                    for (const auto& beta : monotone_maps(l, m))
                        if (X->op(n, compose_tuples(alpha, beta)) !=
                            compose(X->op(m, beta), X->op(n, alpha)))
                            throw InvalidParameter(
                                "operator action is not functorial on " +
                                X->name());
}

}  // namespace sk
