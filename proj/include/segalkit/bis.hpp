// Bisimplicial sets as level-accessed rows of simplicial sets with an
// operator action in the diagram direction. Rows are produced on demand and
// memoized; consumers of virtual realizations pass explicit level windows.
#ifndef SEGALKIT_BIS_HPP
#define SEGALKIT_BIS_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "segalkit/ops.hpp"

namespace sk {

class Bisim;
using BisimPtr = std::shared_ptr<const Bisim>;

// Row pointers are canonical: every operator between rows is built on the
// memoized row objects, so maps compose without copying.
class Bisim {
  public:
    virtual ~Bisim() = default;

    const std::string& name() const { return name_; }

    SSetPtr row(int n) const;
    // Action of the coface delta^i : [n-1] -> [n], as a map row(n) -> row(n-1).
    SMap face_op(int n, int i) const;
    // Action of the codegeneracy sigma^i : [n+1] -> [n], row(n) -> row(n+1).
    SMap degen_op(int n, int i) const;
    // Action of an arbitrary monotone alpha : [m] -> [n], row(n) -> row(m).
    SMap op(int n, const std::vector<int>& alpha) const;

    // Levels above this bound are not available (virtual realizations with
    // an inherent window). Default: unbounded.
    virtual int level_bound() const;

  protected:
    explicit Bisim(std::string name) : name_(std::move(name)) {}

    virtual SSetPtr compute_row(int n) const = 0;
    virtual SMap compute_face_op(int n, int i) const = 0;
    virtual SMap compute_degen_op(int n, int i) const = 0;

  private:
    std::string name_;
    mutable std::mutex mu_;
    mutable std::map<int, SSetPtr> rows_;
    mutable std::map<std::pair<int, int>, SMap> face_memo_, degen_memo_;
};

// Levelwise maps commuting with the operator action, checked on the window
// they were built with.
class BisMap {
  public:
    BisMap(BisimPtr src, BisimPtr dst, std::vector<SMap> rows,
           bool validate = true);

    int window() const { return static_cast<int>(rows_.size()) - 1; }
    const SMap& row(int n) const { return rows_.at(n); }
    const BisimPtr& src() const { return src_; }
    const BisimPtr& dst() const { return dst_; }
    const std::vector<SMap>& rows() const { return rows_; }

    bool is_levelwise_isomorphism() const;

    static BisMap identity(const BisimPtr& X, int window);

    friend bool operator==(const BisMap& a, const BisMap& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.rows_ == b.rows_;
    }

  private:
    BisimPtr src_, dst_;
    std::vector<SMap> rows_;
};

BisMap bis_compose(const BisMap& g, const BisMap& f);

// --- Embeddings and virtual realizations ---

class ConstantBis final : public Bisim {
  public:
    explicit ConstantBis(SSetPtr K, std::string name = "");
    const SSetPtr& base() const { return K_; }

  protected:
    SSetPtr compute_row(int) const override { return K_; }
    SMap compute_face_op(int, int) const override;
    SMap compute_degen_op(int, int) const override;

  private:
    SSetPtr K_;
};

// Row n is the discrete simplicial set on all n-simplices of K (degenerate
// ones included); the diagram direction carries K's own structure.
class TransposeBis final : public Bisim {
  public:
    explicit TransposeBis(SSetPtr K, std::string name = "");
    const SSetPtr& base() const { return K_; }

    // Canonically ordered simplices of K indexing the points of row n.
    std::vector<Ref> refs_of_row(int n) const { return K_->all_refs(n); }
    int index_of(int n, const Ref& r) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    SMap act_op(int n, const std::vector<int>& alpha) const;
    SSetPtr K_;
};

// Row n = K^(n+1), operators by projections and diagonals.
class Cosk0Bis final : public Bisim {
  public:
    explicit Cosk0Bis(SSetPtr K, Budget budget = {}, std::string name = "");
    const SSetPtr& base() const { return K_; }
    const ProductResult& level(int n) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    SMap op_from_tuple_indices(int n, const std::vector<int>& pick) const;
    SSetPtr K_;
    Budget budget_;
    mutable std::mutex lmu_;
    mutable std::map<int, ProductResult> levels_;
};

// Levelwise product with componentwise operators.
class ProductBis final : public Bisim {
  public:
    explicit ProductBis(std::vector<BisimPtr> factors, Budget budget = {},
                        std::string name = "");
    const std::vector<BisimPtr>& factors() const { return factors_; }
    const ProductResult& level(int n) const;
    SMap projection(int factor, int n) const;

    int level_bound() const override;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    SMap induced(int n_src, int n_dst, const std::vector<SMap>& comps) const;
    std::vector<BisimPtr> factors_;
    Budget budget_;
    mutable std::mutex lmu_;
    mutable std::map<int, ProductResult> levels_;
};

// Rows given by arbitrary callbacks (file-backed objects, nerves of
// simplicial categories, fibers). The callbacks receive the owning object so
// they can refer to its memoized rows.
class CallbackBis final : public Bisim {
  public:
    using RowFn = std::function<SSetPtr(int)>;
    using OpFn = std::function<SMap(const Bisim&, int, int)>;

    CallbackBis(RowFn row, OpFn face, OpFn degen, std::string name = "",
                int level_bound = -1);

    int level_bound() const override;

  protected:
    SSetPtr compute_row(int n) const override { return row_fn_(n); }
    SMap compute_face_op(int n, int i) const override {
        return face_fn_(*this, n, i);
    }
    SMap compute_degen_op(int n, int i) const override {
        return degen_fn_(*this, n, i);
    }

  private:
    RowFn row_fn_;
    OpFn face_fn_, degen_fn_;
    int bound_;
};

// Diagram-direction k-skeleton: the subobject generated by rows 0..k.
class SkeletonBis final : public Bisim {
  public:
    SkeletonBis(BisimPtr X, int k, std::string name = "");
    const BisimPtr& parent() const { return X_; }
    int degree() const { return k_; }
    // row(n) -> X.row(n)
    SMap inclusion_row(int n) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    const SkeletonResult& sub(int n) const;
    SMap transfer(int n_src, int n_dst, const SMap& parent_op) const;
    BisimPtr X_;
    int k_;
    mutable std::mutex lmu_;
    mutable std::map<int, SkeletonResult> subs_;
};

// Diagram-direction k-coskeleton: row n (for n > k) is the limit of X over
// injective [m] -> [n] with m <= k, realized as a compatibility subcomplex
// of the product over the maximal injections.
class CoskeletonBis final : public Bisim {
  public:
    CoskeletonBis(BisimPtr X, int k, Budget budget = {}, std::string name = "");
    const BisimPtr& parent() const { return X_; }
    int degree() const { return k_; }
    // canonical X.row(n) -> row(n)
    SMap canonical_row(int n) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    struct Level {
        ProductResult amb;                  // product over top injections
        SkeletonResult sub;                 // compatibility subcomplex
        std::vector<std::vector<int>> tops; // the injections [k] -> [n]
    };
    const Level& level(int n) const;
    // row(n) -> X.row(j): the component of the limit at an injective
    // mu : [j] -> [n] (for n <= k this is just the operator action).
    SMap component(int n, const std::vector<int>& mu) const;
    SMap induced(int n_src, int n_dst, const std::vector<int>& alpha) const;

    BisimPtr X_;
    int k_;
    Budget budget_;
    mutable std::mutex lmu_;
    mutable std::map<int, Level> levels_;
};

// Levelwise quotient by relations generated per row; the callback must
// produce operator-compatible relations.
class LevelQuotientBis final : public Bisim {
  public:
    using RelFn = std::function<std::vector<std::pair<Ref, Ref>>(int)>;

    LevelQuotientBis(BisimPtr X, RelFn rels, Budget budget = {},
                     std::string name = "");
    const BisimPtr& parent() const { return X_; }
    const QuotientResult& level(int n) const;
    SMap to_quotient_row(int n) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    SMap induced(int n_src, int n_dst, const SMap& parent_op) const;
    BisimPtr X_;
    RelFn rels_;
    Budget budget_;
    mutable std::mutex lmu_;
    mutable std::map<int, QuotientResult> levels_;
};

// Levelwise pushout of a span g : A -> C, f : A -> B (windowed).
class PushoutBis final : public Bisim {
  public:
    PushoutBis(BisMap f, BisMap g, Budget budget = {}, std::string name = "");
    const PushoutResult& level(int n) const;
    SMap from_b_row(int n) const;
    SMap from_c_row(int n) const;

    int level_bound() const override;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    SMap induced(int n_src, int n_dst, const SMap& b_op, const SMap& c_op) const;
    BisMap f_, g_;
    Budget budget_;
    mutable std::mutex lmu_;
    mutable std::map<int, PushoutResult> levels_;
};

// Levelwise subobject spanned by a face-closed id set per row; the callback
// must be operator-closed.
class SubBis final : public Bisim {
  public:
    using KeepFn = std::function<std::vector<int>(const Bisim&, int)>;

    SubBis(BisimPtr X, KeepFn keep, std::string name = "");
    const BisimPtr& parent() const { return X_; }
    SMap inclusion_row(int n) const;

  protected:
    SSetPtr compute_row(int n) const override;
    SMap compute_face_op(int n, int i) const override;
    SMap compute_degen_op(int n, int i) const override;

  private:
    const SkeletonResult& sub(int n) const;
    BisimPtr X_;
    KeepFn keep_;
    mutable std::mutex lmu_;
    mutable std::map<int, SkeletonResult> subs_;
};

// --- Derived operations ---

// Reedy matching object P_n = (cosk_{n-1} X)_n with the canonical map.
struct MatchingResult {
    SSetPtr object;
    SMap from_row;  // X.row(n) -> object
};
MatchingResult matching_object(const BisimPtr& X, int n,
                               const Budget& budget = {});

// Every bisimplicial map A -> X on the window, canonical order.
std::vector<BisMap> bis_hom_enumerate(const BisimPtr& A, const BisimPtr& X,
                                      int window, const Budget& budget = {});

// Levelwise isomorphism commuting with operators on the window; No is
// definitive for the window.
std::optional<BisMap> bis_find_isomorphism(const BisimPtr& A,
                                           const BisimPtr& B, int window,
                                           const Budget& budget = {});

// Function complex Map(X, Y) through simplicial degree deg_bound; degree d
// is Hom(X x const Delta[d], Y) on the window.
SSetPtr mapping_space(const BisimPtr& X, const BisimPtr& Y, int deg_bound,
                      int window, const Budget& budget = {});

// Simplicial set from a tabulated functor: counts per dimension 0..D with
// face and degeneracy index actions. Used to realize enumerated mapping
// spaces as honest simplicial sets.
SSetPtr tabulate_sset(int D, const std::vector<int>& counts,
                      const std::function<int(int, int, int)>& face_idx,
                      const std::function<int(int, int, int)>& degen_idx,
                      std::string name = "");

// Checks the cosimplicial identities of the operator action on rows
// 0..window; throws InvalidParameter on the first violation.
void check_operator_functoriality(const BisimPtr& X, int window);

}  // namespace sk

#endif
