#include "segalkit/builders.hpp"

#include <algorithm>

namespace sk {

namespace {

// Build a SubsetComplex from a downward-closed family of nonempty subsets.
SubsetComplex from_subsets(int n, std::vector<std::vector<int>> subsets,
                           std::string name) {
    std::sort(subsets.begin(), subsets.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    SubsetComplex c;
    c.n = n;
    for (int i = 0; i < static_cast<int>(subsets.size()); ++i)
        c.id_of[subsets[i]] = i;
    std::vector<Simplex> simps;
    for (const auto& sub : subsets) {
        Simplex s;
        s.dim = static_cast<int>(sub.size()) - 1;
        for (int i = 0; i <= s.dim && s.dim > 0; ++i) {
            std::vector<int> f = sub;
            f.erase(f.begin() + i);
            s.faces.push_back(Ref{c.id_of.at(f), {}});
        }
        simps.push_back(std::move(s));
    }
    c.label = std::move(subsets);
    c.s = SSet::make(std::move(name), std::move(simps));
    return c;
}

std::vector<std::vector<int>> all_nonempty_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i <= n; ++i)
            if (mask & (1u << i)) sub.push_back(i);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace

Ref SubsetComplex::ref_of_tuple(const std::vector<int>& tuple) const {
    std::vector<int> base;
    Word w;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (!base.empty() && base.back() == tuple[i])
            w.push_back(static_cast<int>(i) - 1);
        else
            base.push_back(tuple[i]);
    }
    auto it = id_of.find(base);
    if (it == id_of.end()) throw InvalidParameter("tuple not in complex");
    return Ref{it->second, w};
}

std::vector<int> SubsetComplex::tuple_of_ref(const Ref& r) const {
    std::vector<int> t = label[r.id];
    for (int j : r.word) t.insert(t.begin() + j + 1, t[j]);
    return t;
}

SubsetComplex standard_simplex(int n) {
    if (n < 0) throw InvalidParameter("standard_simplex: n < 0");
    return from_subsets(n, all_nonempty_subsets(n), "Delta[" + std::to_string(n) + "]");
}

SubsetComplex boundary(int n) {
    if (n < 0) throw InvalidParameter("boundary: n < 0");
    auto subs = all_nonempty_subsets(n);
    subs.erase(std::remove_if(subs.begin(), subs.end(),
                              [&](const std::vector<int>& s) {
                                  return static_cast<int>(s.size()) == n + 1;
                              }),
               subs.end());
    return from_subsets(n, std::move(subs), "dDelta[" + std::to_string(n) + "]");
}

SubsetComplex horn(int n, int k) {
    if (n < 1) throw InvalidParameter("horn: n must be >= 1");
    if (k < 0 || k > n) throw InvalidParameter("horn: k out of range");
    std::vector<int> opposite;  // the face omitting k
    for (int i = 0; i <= n; ++i)
        if (i != k) opposite.push_back(i);
    auto subs = all_nonempty_subsets(n);
    subs.erase(std::remove_if(subs.begin(), subs.end(),
                              [&](const std::vector<int>& s) {
                                  return static_cast<int>(s.size()) == n + 1 ||
                                         s == opposite;
                              }),
               subs.end());
    return from_subsets(n, std::move(subs),
                        "V[" + std::to_string(n) + "," + std::to_string(k) + "]");
}

SubsetComplex spine(int k) {
    std::vector<std::vector<int>> subs;
    for (int i = 0; i <= k; ++i) subs.push_back({i});
    for (int i = 0; i < k; ++i) subs.push_back({i, i + 1});
    return from_subsets(k, std::move(subs), "G(" + std::to_string(k) + ")");
}

SSetPtr discrete_sset(int npoints, std::string name) {
    std::vector<Simplex> simps(npoints);
    if (name.empty()) name = "disc" + std::to_string(npoints);
    return SSet::make(std::move(name), std::move(simps));
}

SSetPtr empty_sset(std::string name) { return SSet::make(std::move(name), {}); }

SSetPtr point_sset() { return discrete_sset(1, "pt"); }

SMap subset_inclusion(const SubsetComplex& A, const SubsetComplex& B) {
    std::vector<Ref> a(A.s->size());
    for (int i = 0; i < A.s->size(); ++i) a[i] = Ref{B.id_of.at(A.label[i]), {}};
    return SMap(A.s, B.s, std::move(a));
}

SMap simplex_map(const SubsetComplex& A, const SubsetComplex& B,
                 const std::vector<int>& alpha) {
    std::vector<Ref> a(A.s->size());
    for (int i = 0; i < A.s->size(); ++i) {
        std::vector<int> t;
        for (int v : A.label[i]) t.push_back(alpha[v]);
        a[i] = B.ref_of_tuple(t);
    }
    return SMap(A.s, B.s, std::move(a));
}

}  // namespace sk
