// Segal precategories: bisimplicial sets with a discrete zeroth row, their
// reduction, fibers, generating (trivial) cofibrations, Segal and
// completeness conditions, homotopy categories, discretization, and the
// fundamental-category functor.
#ifndef SEGALKIT_SEGAL_HPP
#define SEGALKIT_SEGAL_HPP

#include "segalkit/bis.hpp"
#include "segalkit/cat.hpp"

namespace sk {

struct SegalDefect : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingComposite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class SegalPrecategory {
  public:
    explicit SegalPrecategory(BisimPtr b);

    const BisimPtr& bis() const { return b_; }
    int nobjects() const { return nobjects_; }
    // object (vertex of row 0) at position j of a simplex of row n
    int object_at(int n, const Ref& r, int j) const;
    std::vector<int> vertex_tuple(int n, const Ref& r) const;

  private:
    BisimPtr b_;
    int nobjects_ = 0;
};

// Subcomplex of row |verts|-1 sitting over the given object tuple.
SkeletonResult fiber(const SegalPrecategory& X, const std::vector<int>& verts);

// Reduction: collapse row 0 to its set of components in every row. The
// result is the universal Segal precategory under X.
struct Reduction {
    BisimPtr parent;
    std::shared_ptr<const LevelQuotientBis> q;
    SegalPrecategory reduced;

    BisMap unit(int window) const;  // parent -> reduced
};
Reduction reduce(const BisimPtr& X, const Budget& budget = {});
// Functoriality of reduction on a levelwise map.
BisMap reduce_map(const Reduction& RX, const Reduction& RY, const BisMap& f);

// --- Generating cofibrations and trivial cofibrations ---

struct GeneratorMap {
    BisMap map;
    std::string label;
};

// Reduced boundary inclusion in bidegree (m, n). Legal bidegrees are n >= 1
// with any m >= 0, plus (0, 0); for n = 0, m = 1 the reduction identifies
// the two endpoints and the map is not injective, and for n = 0, m >= 2 it
// is an isomorphism, so those bidegrees are rejected.
GeneratorMap cofib_generator(int m, int n, int window, const Budget& budget = {});

// Segal-type generating trivial cofibration in bidegree (m, n), the induced
// map between the two pushout hulls of the pointwise-constant inclusion.
// Same legal bidegrees as cofib_generator, with the (0, 0) convention
// empty -> point.
GeneratorMap segal_generator(int m, int n, int window, const Budget& budget = {});

// Right lifting property of f against a single bisimplicial map, decided by
// exhaustive enumeration on the window.
Verdict bis_has_rlp(const BisMap& f, const BisMap& gen, int window,
                    const Budget& budget = {});

// Characterization of maps with the RLP against the reduced boundary
// inclusions: surjective on objects and every fiber map a fibration in the
// boundary sense, fibers taken over rows 1..max_n, boundaries up to max_m.
Verdict injective_fibration_check(const BisMap& f, int max_m, int max_n,
                                  const Budget& budget = {});

// --- Spines, Segal condition, completeness ---

struct SpinePair {
    BisimPtr spine_t;    // G(k) transposed
    BisimPtr simplex_t;  // Delta[k] transposed
    BisMap inclusion;
};
SpinePair spine_pair(int k, int window);

struct SegalReport {
    std::vector<Verdict> per_k;  // indices 0.. for k = 2..kmax
    Verdict overall;
    nlohmann::json details;
};
// Weak-equivalence verdicts for the maps row(k) -> row(1) x_row(0) ... on
// k = 2..kmax.
SegalReport segal_check(const SegalPrecategory& X, int kmax,
                        const WeOptions& opts = {});

// Homotopy category: objects are the points of row 0, arrows the components
// of the fibers of row 1, composition read off the fibers of row 2. Throws
// MissingComposite / SegalDefect when row 2 does not determine a category.
FiniteCategory ho_category(const SegalPrecategory& X);

// Image of f in the homotopy categories. f must be a map of Segal
// precategories whose homotopy categories exist.
Functor ho_functor(const BisMap& f);

// Completeness: the degeneracy row(0) -> W_hoequiv into the components of
// row 1 whose points are homotopy-category isomorphisms.
Verdict complete_check(const SegalPrecategory& X, const WeOptions& opts = {});

// Dwyer-Kan equivalence for maps of Segal precategories: every fiber map of
// row 1 a weak equivalence and an equivalence of homotopy categories.
Verdict dk_check_segal(const BisMap& f, const WeOptions& opts = {});

// --- Fixed-object simplices and the spine filtration ---

// Rows are the monotone tuples [m] -> [n] of spread at most k, with the
// constant tuples merged into one point per object according to `labels`.
// spread = n gives the fixed-object n-simplex, spread = 1 its spine.
class PsiBis final : public Bisim {
  public:
    PsiBis(int n, std::vector<int> labels, int nobjects, int spread);

    int base_n() const { return n_; }
    int spread() const { return k_; }
    int nobjects() const { return nobjects_; }
    const std::vector<std::vector<int>>& tuples(int m) const;
    // objects come first; a constant tuple resolves to its object's point
    int index_of(int m, const std::vector<int>& t) const;

  protected:
    SSetPtr compute_row(int m) const override;
    SMap compute_face_op(int m, int i) const override;
    SMap compute_degen_op(int m, int i) const override;

  private:
    SMap act(int m_src, int m_dst, const std::vector<int>& alpha) const;
    int n_, nobjects_, k_;
    std::vector<int> labels_;
    mutable std::mutex lmu_;
    mutable std::map<int, std::vector<std::vector<int>>> tuples_;
};

// Inclusion between two stages of the filtration (same base and labels,
// a.spread() <= b.spread()).
BisMap psi_inclusion(const std::shared_ptr<const PsiBis>& a,
                     const std::shared_ptr<const PsiBis>& b, int window);

// --- Nerves and the fundamental category ---

// Nerve of an ordinary finite category as a Segal precategory (the transpose
// of its simplicial-set nerve, built through row dim_bound).
SegalPrecategory nerve_precat(const FiniteCategory& C, int dim_bound);

// Nerve of a finite simplicial category: row n is the coproduct over object
// chains of the product of consecutive hom-spaces.
SegalPrecategory nerve_scat(const FiniteSimplicialCategory& C,
                            const Budget& budget = {});

// Fundamental category: generated by the nondegenerate points of row 1 with
// one relation per point of row 2. Decided by congruence closure when the
// generator quiver is acyclic or the relations give a total composition;
// otherwise only the presentation is returned.
struct Tau1Result {
    int nobjects = 0;
    std::vector<int> gen_src, gen_dst;
    // (first, second, composite); identity entries are -1 - object
    std::vector<std::array<int, 3>> relations;
    bool decided = false;
    std::optional<FiniteCategory> category;
};
Tau1Result tau1(const SegalPrecategory& X, const Budget& budget = {});

// --- Discretization and the object-change factorization ---

struct DiscretizeResult {
    SegalPrecategory rw;
    BisMap inclusion;  // into the parent, on the window
};
// Largest sub-bisimplicial set of W all of whose simplices sit over honest
// points of row 0; W need not have a discrete row 0.
DiscretizeResult discretize(const BisimPtr& W, int window);

struct PhiResult {
    BisimPtr phi;
    BisMap first;   // X -> phi, an isomorphism on row 0
    BisMap second;  // phi -> Y, an isomorphism on every fiber
    Verdict postcondition;
};
// Factor f : X -> Y through the pullback of Y along the object map.
PhiResult phi_factorization(const BisMap& f, int window,
                            const Budget& budget = {});

// Whether restriction along the spine inclusion induces isomorphisms of
// function complexes Map(Delta[k]^t, X) -> Map(G(k)^t, X) through the given
// simplicial degree, for k = 2..kmax.
Verdict strict_local_check(const SegalPrecategory& X, int kmax, int deg_bound,
                           int window, const Budget& budget = {});

}  // namespace sk

#endif
