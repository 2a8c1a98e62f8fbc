// Finite simplicial sets presented by nondegenerate simplices in
// Eilenberg-Zilber normal form, plus the degeneracy-word algebra that
// everything else is built on.
#ifndef SEGALKIT_CORE_HPP
#define SEGALKIT_CORE_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sk {

// Strictly increasing list j_1 < ... < j_k, read as the operator
// s_{j_k} o ... o s_{j_1}. Empty word = identity.
using Word = std::vector<int>;

struct BudgetExceeded : std::runtime_error {
    int dimension;  // the dimension at which enumeration blew up, -1 if n/a
    explicit BudgetExceeded(const std::string& what, int dim = -1)
        : std::runtime_error(what), dimension(dim) {}
};

struct InvalidParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration/size limits. All exhaustive searches charge steps against a
// shared counter and throw BudgetExceeded when it runs out.
struct Budget {
    std::size_t max_simplices = 20000;   // per constructed object
    int max_dim = 12;                    // top dimension of any construction
    std::size_t max_steps = 200000000;   // search-step budget
    mutable std::size_t steps_used = 0;

    void charge(std::size_t n = 1, int dim = -1) const {
        steps_used += n;
        if (steps_used > max_steps)
            throw BudgetExceeded("search budget exceeded", dim);
    }
    void check_size(std::size_t n, int dim = -1) const {
        if (n > max_simplices)
            throw BudgetExceeded("object size budget exceeded", dim);
    }
    std::size_t used() const { return steps_used; }
};

// Reference to a simplex of the generated total structure: the nondegenerate
// base `id` with a degeneracy word applied. (id, {}) is the base itself.
struct Ref {
    int id = -1;
    Word word;

    friend bool operator==(const Ref& a, const Ref& b) {
        return a.id == b.id && a.word == b.word;
    }
    friend bool operator!=(const Ref& a, const Ref& b) { return !(a == b); }
    friend bool operator<(const Ref& a, const Ref& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.word < b.word;
    }
};

std::string to_string(const Ref& r);

// --- Degeneracy-word algebra (pure, complex-independent) ---

// s_i o s_W in normal form: entries >= i shift up, then i is inserted.
Word word_insert(const Word& w, int i);

// Remove the indices in `c` from `w` (c must be a subset of w), shifting the
// survivors down past the removed entries.
Word word_strip(const Word& w, const Word& c);

// Sorted intersection / test.
Word word_meet(const Word& a, const Word& b);
bool word_contains(const Word& w, int i);

Ref push_degeneracy(const Ref& r, int i);
// Apply the word u (as an operator, lowest index first) on top of r.
Ref push_word(Ref r, const Word& u);

class SSet;
using SSetPtr = std::shared_ptr<const SSet>;

struct Simplex {
    int dim = 0;
    std::vector<Ref> faces;  // d_0 .. d_dim; empty when dim == 0
};

// Immutable finite simplicial set. Simplex ids are insertion order; all
// derived enumerations respect that order, so outputs are reproducible.
class SSet {
  public:
    SSet() = default;
    SSet(std::string name, std::vector<Simplex> simplices);

    static SSetPtr make(std::string name, std::vector<Simplex> simplices) {
        return std::make_shared<SSet>(std::move(name), std::move(simplices));
    }

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(simps_.size()); }
    int dim_of(int id) const { return simps_[id].dim; }
    const std::vector<Ref>& faces_of(int id) const { return simps_[id].faces; }
    const Simplex& simplex(int id) const { return simps_[id]; }
    int top_dim() const { return top_dim_; }
    const std::vector<int>& ids_of_dim(int d) const;
    int count_dim(int d) const { return static_cast<int>(ids_of_dim(d).size()); }

    int ref_dim(const Ref& r) const {
        return simps_[r.id].dim + static_cast<int>(r.word.size());
    }

    // d_i applied to an arbitrary simplex of the total structure.
    Ref face(const Ref& r, int i) const;
    // Action of a monotone map alpha: [m] -> [n] on a dim-n simplex.
    Ref act(const Ref& r, const std::vector<int>& alpha) const;

    // All simplices (degenerate included) of dimension d, canonically ordered.
    std::vector<Ref> all_refs(int d) const;
    // Count without materializing.
    std::size_t count_refs(int d) const;

    bool same_as(const SSet& other) const { return this == &other; }

  private:
    void validate() const;

    std::string name_;
    std::vector<Simplex> simps_;
    std::vector<std::vector<int>> by_dim_;
    int top_dim_ = -1;
    static const std::vector<int> empty_ids_;
};

// Simplicial map determined by its values on nondegenerate simplices.
// Commutation with faces is verified at construction.
class SMap {
  public:
    SMap() = default;
    SMap(SSetPtr src, SSetPtr dst, std::vector<Ref> assign, bool validate = true);

    static SMap identity(const SSetPtr& X);

    const SSetPtr& src() const { return src_; }
    const SSetPtr& dst() const { return dst_; }
    const std::vector<Ref>& assignment() const { return assign_; }

    Ref apply(int id) const { return assign_[id]; }
    Ref apply(const Ref& r) const { return push_word(assign_[r.id], r.word); }

    bool is_identity() const;
    bool is_injective() const;   // monomorphism test
    bool is_isomorphism() const;
    bool is_surjective() const;  // on nondegenerate simplices' classes

    friend SMap compose(const SMap& g, const SMap& f);  // g o f
    friend bool operator==(const SMap& a, const SMap& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.assign_ == b.assign_;
    }

  private:
    SSetPtr src_, dst_;
    std::vector<Ref> assign_;
};

SMap compose(const SMap& g, const SMap& f);

// The unique map X -> Delta[0].
SMap terminal_map(const SSetPtr& X, const SSetPtr& point);

// Monotone-map utilities shared by several modules.
// All monotone maps [m] -> [n], lexicographic order.
std::vector<std::vector<int>> monotone_maps(int m, int n);
// Strictly monotone only.
std::vector<std::vector<int>> injective_monotone_maps(int m, int n);
// Factor alpha = delta o sigma with sigma epi, delta mono. Returns the image
// values (delta as a subset of [n]) and sigma as repeat positions resolved:
// sigma[j] = index of alpha[j] in the image.
void epi_mono_factor(const std::vector<int>& alpha, std::vector<int>& delta,
                     std::vector<int>& sigma);

}  // namespace sk

#endif
