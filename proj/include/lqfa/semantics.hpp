// Executable semantics for Latvian quantum finite automata over a unary
// alphabet: weighted pure-state ensembles, per-symbol stage pipelines,
// complement/product combinators, event tables and cut-point reports.
#pragma once

#include "lqfa/linalg.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqfa {

inline constexpr double kProbabilityTol = 1e-9;
inline constexpr double kBranchPruneWeight = 1e-12;
inline constexpr std::size_t kDefaultDimCap = 10'000;

// Raised when a construction would exceed the configured basis-state cap.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Superposition stored as sorted (basis index, amplitude) pairs. The
// automata built here mix over many basis states of very large product
// spaces, but each ensemble member stays sharply supported, so a sparse
// layout is what keeps the end-to-end constructions simulable.
struct SparseVec {
    std::size_t dim = 0;
    std::vector<std::pair<std::uint32_t, Complex>> amps; // sorted by index

    static SparseVec basis(std::size_t dim, std::uint32_t index);
    static SparseVec from_dense(const CVec &v, double cutoff = 0.0);
    CVec to_dense() const;

    double squared_norm() const;
    void normalize();
};

// Unitary acting as small dense blocks on disjoint index sets and as the
// identity everywhere else. A fully dense matrix is the one-block case.
struct UnitaryBlock {
    std::vector<std::uint32_t> idx;
    std::shared_ptr<const ComplexMatrix> u;
};

class BlockUnitary {
  public:
    BlockUnitary() = default;
    explicit BlockUnitary(std::size_t dim) : dim_(dim) {} // identity
    BlockUnitary(std::size_t dim, std::vector<UnitaryBlock> blocks);

    static BlockUnitary dense(ComplexMatrix m);
    static BlockUnitary identity(std::size_t dim) { return BlockUnitary(dim); }

    std::size_t dim() const { return dim_; }
    const std::vector<UnitaryBlock> &blocks() const { return blocks_; }
    bool is_identity() const { return blocks_.empty(); }

    SparseVec apply(const SparseVec &v) const;
    ComplexMatrix to_dense() const;

    // Kronecker product; small block matrices shared between equal pairs.
    static BlockUnitary tensor(const BlockUnitary &a, const BlockUnitary &b);

  private:
    // block id per basis index, or npos for identity indices
    const std::vector<std::uint32_t> &block_map() const;

    std::size_t dim_ = 0;
    std::vector<UnitaryBlock> blocks_;
    mutable std::vector<std::uint32_t> block_map_; // built on first use
};

// Projective observable whose projectors are spanned by basis states:
// a partition of {0..dim-1} into outcome cells. Canonical, identity, and
// canonical-on-a-subset observables are all instances, and the class is
// closed under tensor product, which is exactly what the constructions
// in scope need.
class Observable {
  public:
    Observable() = default;

    static Observable identity(std::size_t dim);
    static Observable canonical(std::size_t dim);
    // Canonical on `subset`, one identity cell on everything else.
    static Observable canonical_on(std::size_t dim, const std::vector<std::uint32_t> &subset);
    static Observable from_cells(std::size_t dim, std::vector<std::uint32_t> cell_of);
    static Observable tensor(const Observable &a, const Observable &b);

    std::size_t dim() const { return cell_of_.size(); }
    std::uint32_t n_cells() const { return n_cells_; }
    std::uint32_t cell(std::uint32_t index) const { return cell_of_[index]; }
    bool is_identity() const { return n_cells_ == 1; }

    // Dense diagonal projector of one outcome cell (for predicate tests).
    ComplexMatrix cell_projector(std::uint32_t cell_id) const;

  private:
    std::vector<std::uint32_t> cell_of_;
    std::uint32_t n_cells_ = 0;
};

// One evolution-plus-observation step of a symbol transformation.
struct Stage {
    BlockUnitary unitary;
    Observable observable;

    static Stage identity(std::size_t dim);
};

// Weighted ensemble of norm-1 pure states. Weights sum to 1 up to
// roundoff; members equal up to a global phase are merged.
class MixedState {
  public:
    MixedState() = default;
    static MixedState pure(SparseVec state);

    const std::vector<std::pair<double, SparseVec>> &members() const { return members_; }
    double total_weight() const;
    std::size_t size() const { return members_.size(); }

    void add(double weight, SparseVec state); // no merging
    void merge_equivalent(double phase_tol = 1e-9);

  private:
    std::vector<std::pair<double, SparseVec>> members_;
};

struct Lqfa {
    std::size_t dim = 0;
    SparseVec initial;
    std::vector<Stage> sigma_pipeline;
    // Endmarker transformation; the final stage's observable is never
    // measured (the accept projector takes its place).
    std::vector<Stage> end_pipeline;
    std::vector<std::uint32_t> accept; // sorted basis indices of Q_acc

    ComplexMatrix accept_projector_dense() const;
};

// All-accepting one-state automaton, the unit of the product.
Lqfa trivial_accepting_lqfa();

MixedState apply_stage(const MixedState &m, const Stage &s, double prune = kBranchPruneWeight);

double accept_probability(const Lqfa &a, std::size_t k);

// Same automaton with Q_acc complemented; induces 1 - p_a pointwise.
Lqfa complement(const Lqfa &a);

// Component-wise tensor product; shorter pipeline padded with identity
// stages. Induces the product event for the canonical-or-identity
// observable class used throughout.
Lqfa product(const Lqfa &a, const Lqfa &b, std::size_t dim_cap = kDefaultDimCap);

struct EventTable {
    std::vector<std::pair<std::size_t, double>> probabilities; // (k, p), k contiguous from 0
};

// Evaluates p(sigma^k) for k = 0..k_max, advancing one ensemble
// incrementally instead of restarting per length.
EventTable event_table(const Lqfa &a, std::size_t k_max);

struct CutPointReport {
    double lambda = 0.0;     // midpoint of the claimed bounds
    double rho = 0.0;        // half their gap
    double min_accept = 1.0; // empirical min over member lengths
    double max_reject = 0.0; // empirical max over non-member lengths
    std::vector<std::size_t> violations;
};

// `members[k]` says whether length k is in the language.
CutPointReport cut_point_report(const EventTable &t, const std::vector<bool> &members,
                                double claimed_accept_bound, double claimed_reject_bound,
                                double tol = kProbabilityTol);

// MM-QFA acceptance: sum over halting prefixes of sigma^k followed by the
// endmarker. Evaluation only; no combinators.
double mm_accept_probability(const std::vector<std::uint32_t> &q_acc,
                             const std::vector<std::uint32_t> &q_rej,
                             const ComplexMatrix &u_sigma, const ComplexMatrix &u_end,
                             const CVec &pi0, std::size_t k);

} // namespace lqfa
