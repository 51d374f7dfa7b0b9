#include "lqfa/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

namespace lqfa {

namespace {

constexpr std::uint32_t kNoBlock = std::numeric_limits<std::uint32_t>::max();
constexpr double kAmplitudeDust = 1e-16;

void check_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

// ---------------------------------------------------------------------------
// SparseVec

SparseVec SparseVec::basis(std::size_t dim, std::uint32_t index) {
    if (index >= dim)
        throw std::invalid_argument("SparseVec::basis: index out of range");
    return SparseVec{dim, {{index, Complex(1.0)}}};
}

SparseVec SparseVec::from_dense(const CVec &v, double cutoff) {
    SparseVec s;
    s.dim = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > cutoff)
            s.amps.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return s;
}

CVec SparseVec::to_dense() const {
    CVec v(dim);
    for (const auto &[i, a] : amps)
        v[i] = a;
    return v;
}

double SparseVec::squared_norm() const {
    double s = 0.0;
    for (const auto &[i, a] : amps)
        s += std::norm(a);
    return s;
}

void SparseVec::normalize() {
    const double n = std::sqrt(squared_norm());
    if (n == 0.0)
        throw std::invalid_argument("SparseVec::normalize: zero vector");
    for (auto &[i, a] : amps)
        a /= n;
}

// ---------------------------------------------------------------------------
// BlockUnitary

BlockUnitary::BlockUnitary(std::size_t dim, std::vector<UnitaryBlock> blocks)
    : dim_(dim), blocks_(std::move(blocks)) {
    for (const auto &b : blocks_) {
        if (!b.u || b.u->rows() != b.idx.size() || b.u->cols() != b.idx.size())
            throw std::invalid_argument("BlockUnitary: block matrix shape mismatch");
        for (std::uint32_t i : b.idx)
            if (i >= dim_)
                throw std::invalid_argument("BlockUnitary: block index out of range");
    }
}

BlockUnitary BlockUnitary::dense(ComplexMatrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("BlockUnitary::dense: matrix must be square");
    const std::size_t n = m.rows();
    UnitaryBlock b;
    b.idx.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        b.idx[i] = static_cast<std::uint32_t>(i);
    b.u = std::make_shared<const ComplexMatrix>(std::move(m));
    return BlockUnitary(n, {std::move(b)});
}

const std::vector<std::uint32_t> &BlockUnitary::block_map() const {
    if (block_map_.empty() && !blocks_.empty()) {
        block_map_.assign(dim_, kNoBlock);
        for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
            for (std::uint32_t i : blocks_[bi].idx) {
                if (block_map_[i] != kNoBlock)
                    throw std::invalid_argument("BlockUnitary: overlapping blocks");
                block_map_[i] = static_cast<std::uint32_t>(bi);
            }
    }
    return block_map_;
}

SparseVec BlockUnitary::apply(const SparseVec &v) const {
    check_same_dim(v.dim, dim_, "BlockUnitary::apply");
    if (blocks_.empty())
        return v;

    const auto &bmap = block_map();
    SparseVec out;
    out.dim = dim_;

    // Entries in identity territory pass through; the rest are gathered
    // per touched block and multiplied by its small matrix.
    std::unordered_map<std::uint32_t, CVec> local;
    for (const auto &[i, a] : v.amps) {
        const std::uint32_t bi = bmap[i];
        if (bi == kNoBlock) {
            out.amps.emplace_back(i, a);
            continue;
        }
        const auto &blk = blocks_[bi];
        auto [it, inserted] = local.try_emplace(bi);
        if (inserted)
            it->second.assign(blk.idx.size(), Complex(0.0));
        // position of i inside the block
        for (std::size_t p = 0; p < blk.idx.size(); ++p)
            if (blk.idx[p] == i) {
                it->second[p] = a;
                break;
            }
    }
    CVec y;
    for (const auto &[bi, x] : local) {
        const auto &blk = blocks_[bi];
        const ComplexMatrix &u = *blk.u;
        const std::size_t bs = blk.idx.size();
        y.assign(bs, Complex(0.0));
        for (std::size_t r = 0; r < bs; ++r) {
            if (x[r] == 0.0)
                continue;
            const Complex xr = x[r];
            for (std::size_t c = 0; c < bs; ++c)
                y[c] += xr * u(r, c);
        }
        for (std::size_t c = 0; c < bs; ++c)
            if (std::abs(y[c]) > kAmplitudeDust)
                out.amps.emplace_back(blk.idx[c], y[c]);
    }
    std::sort(out.amps.begin(), out.amps.end(),
              [](const auto &l, const auto &r) { return l.first < r.first; });
    return out;
}

ComplexMatrix BlockUnitary::to_dense() const {
    ComplexMatrix m = ComplexMatrix::identity(dim_);
    for (const auto &blk : blocks_) {
        for (std::uint32_t i : blk.idx)
            m(i, i) = 0.0;
        for (std::size_t r = 0; r < blk.idx.size(); ++r)
            for (std::size_t c = 0; c < blk.idx.size(); ++c)
                m(blk.idx[r], blk.idx[c]) = (*blk.u)(r, c);
    }
    return m;
}

BlockUnitary BlockUnitary::tensor(const BlockUnitary &a, const BlockUnitary &b) {
    const std::size_t db = b.dim_;
    const std::size_t dim = a.dim_ * db;
    std::vector<UnitaryBlock> blocks;

    std::vector<bool> a_covered(a.dim_, false), b_covered(db, false);
    for (const auto &blk : a.blocks_)
        for (std::uint32_t i : blk.idx)
            a_covered[i] = true;
    for (const auto &blk : b.blocks_)
        for (std::uint32_t i : blk.idx)
            b_covered[i] = true;

    // Equal block pairs share one Kronecker matrix.
    std::map<std::pair<const void *, const void *>, std::shared_ptr<const ComplexMatrix>> kron_cache;
    auto kron_of = [&](const std::shared_ptr<const ComplexMatrix> &ma,
                       const std::shared_ptr<const ComplexMatrix> &mb) {
        auto key = std::make_pair(static_cast<const void *>(ma.get()),
                                  static_cast<const void *>(mb.get()));
        auto it = kron_cache.find(key);
        if (it == kron_cache.end())
            it = kron_cache.emplace(key, std::make_shared<const ComplexMatrix>(
                                             lqfa::tensor(*ma, *mb))).first;
        return it->second;
    };

    for (const auto &ba : a.blocks_)
        for (const auto &bb : b.blocks_) {
            UnitaryBlock nb;
            nb.idx.reserve(ba.idx.size() * bb.idx.size());
            for (std::uint32_t ia : ba.idx)
                for (std::uint32_t ib : bb.idx)
                    nb.idx.push_back(static_cast<std::uint32_t>(ia * db + ib));
            nb.u = kron_of(ba.u, bb.u);
            blocks.push_back(std::move(nb));
        }
    for (const auto &ba : a.blocks_)
        for (std::uint32_t ib = 0; ib < db; ++ib) {
            if (b_covered[ib])
                continue;
            UnitaryBlock nb;
            nb.idx.reserve(ba.idx.size());
            for (std::uint32_t ia : ba.idx)
                nb.idx.push_back(static_cast<std::uint32_t>(ia * db + ib));
            nb.u = ba.u;
            blocks.push_back(std::move(nb));
        }
    for (std::uint32_t ia = 0; ia < a.dim_; ++ia) {
        if (a_covered[ia])
            continue;
        for (const auto &bb : b.blocks_) {
            UnitaryBlock nb;
            nb.idx.reserve(bb.idx.size());
            for (std::uint32_t ib : bb.idx)
                nb.idx.push_back(static_cast<std::uint32_t>(ia * db + ib));
            nb.u = bb.u;
            blocks.push_back(std::move(nb));
        }
    }
    return BlockUnitary(dim, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Observable

Observable Observable::identity(std::size_t dim) {
    Observable o;
    o.cell_of_.assign(dim, 0);
    o.n_cells_ = 1;
    return o;
}

Observable Observable::canonical(std::size_t dim) {
    Observable o;
    o.cell_of_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        o.cell_of_[i] = static_cast<std::uint32_t>(i);
    o.n_cells_ = static_cast<std::uint32_t>(dim);
    return o;
}

Observable Observable::canonical_on(std::size_t dim, const std::vector<std::uint32_t> &subset) {
    Observable o;
    const auto rest = static_cast<std::uint32_t>(subset.size());
    o.cell_of_.assign(dim, rest);
    std::uint32_t next = 0;
    for (std::uint32_t i : subset) {
        if (i >= dim)
            throw std::invalid_argument("Observable::canonical_on: index out of range");
        o.cell_of_[i] = next++;
    }
    o.n_cells_ = rest + (subset.size() < dim ? 1 : 0);
    return o;
}

Observable Observable::from_cells(std::size_t dim, std::vector<std::uint32_t> cell_of) {
    if (cell_of.size() != dim)
        throw std::invalid_argument("Observable::from_cells: size mismatch");
    Observable o;
    o.cell_of_ = std::move(cell_of);
    std::uint32_t mx = 0;
    for (std::uint32_t c : o.cell_of_)
        mx = std::max(mx, c);
    o.n_cells_ = dim == 0 ? 0 : mx + 1;
    return o;
}

Observable Observable::tensor(const Observable &a, const Observable &b) {
    Observable o;
    o.cell_of_.resize(a.dim() * b.dim());
    for (std::size_t ia = 0; ia < a.dim(); ++ia)
        for (std::size_t ib = 0; ib < b.dim(); ++ib)
            o.cell_of_[ia * b.dim() + ib] = a.cell_of_[ia] * b.n_cells_ + b.cell_of_[ib];
    o.n_cells_ = a.n_cells_ * b.n_cells_;
    return o;
}

ComplexMatrix Observable::cell_projector(std::uint32_t cell_id) const {
    ComplexMatrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        if (cell_of_[i] == cell_id)
            m(i, i) = 1.0;
    return m;
}

Stage Stage::identity(std::size_t dim) {
    return Stage{BlockUnitary::identity(dim), Observable::identity(dim)};
}

// ---------------------------------------------------------------------------
// MixedState

MixedState MixedState::pure(SparseVec state) {
    MixedState m;
    m.members_.emplace_back(1.0, std::move(state));
    return m;
}

double MixedState::total_weight() const {
    double w = 0.0;
    for (const auto &[wi, s] : members_)
        w += wi;
    return w;
}

void MixedState::add(double weight, SparseVec state) {
    members_.emplace_back(weight, std::move(state));
}

void MixedState::merge_equivalent(double phase_tol) {
    if (members_.size() < 2)
        return;
    std::vector<std::pair<double, SparseVec>> merged;

    // Members supported on a single basis state are equal up to a global
    // phase whenever the index matches; fold them by index directly.
    std::unordered_map<std::uint32_t, std::size_t> single;
    std::vector<std::size_t> multi;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].second.amps.size() == 1) {
            const std::uint32_t idx = members_[i].second.amps[0].first;
            auto [it, inserted] = single.try_emplace(idx, merged.size());
            if (inserted)
                merged.push_back(std::move(members_[i]));
            else
                merged[it->second].first += members_[i].first;
        } else {
            multi.push_back(i);
        }
    }
    if (multi.empty()) {
        members_ = std::move(merged);
        return;
    }

    // Bucket by support; only same-support members can match up to phase.
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> by_support;
    std::vector<std::uint32_t> support;
    for (std::size_t i : multi) {
        support.clear();
        for (const auto &[idx, a] : members_[i].second.amps)
            support.push_back(idx);
        by_support[support].push_back(i);
    }
    for (auto &[sup, ids] : by_support) {
        std::vector<std::size_t> reps;
        for (std::size_t id : ids) {
            bool absorbed = false;
            for (std::size_t rep : reps) {
                // identical support, so the inner product is a direct sum
                Complex ip = 0.0;
                const auto &x = members_[id].second.amps;
                const auto &y = merged[rep].second.amps;
                for (std::size_t p = 0; p < x.size(); ++p)
                    ip += x[p].second * std::conj(y[p].second);
                if (std::abs(ip) >= 1.0 - phase_tol) {
                    merged[rep].first += members_[id].first;
                    absorbed = true;
                    break;
                }
            }
            if (!absorbed) {
                merged.push_back(std::move(members_[id]));
                reps.push_back(merged.size() - 1);
            }
        }
    }
    members_ = std::move(merged);
}

// ---------------------------------------------------------------------------
// Stage application and acceptance

MixedState apply_stage(const MixedState &m, const Stage &s, double prune) {
    MixedState out;
    const Observable &obs = s.observable;

    std::vector<std::uint32_t> cell_size;
    if (!obs.is_identity()) {
        cell_size.assign(obs.n_cells(), 0);
        for (std::uint32_t i = 0; i < obs.dim(); ++i)
            ++cell_size[obs.cell(i)];
    }

    std::unordered_map<std::uint32_t, SparseVec> cells;
    for (const auto &[w, state] : m.members()) {
        SparseVec evolved = s.unitary.apply(state);
        if (obs.is_identity()) {
            out.add(w, std::move(evolved));
            continue;
        }
        check_same_dim(evolved.dim, obs.dim(), "apply_stage");
        cells.clear();
        for (const auto &[i, a] : evolved.amps) {
            const std::uint32_t c = obs.cell(i);
            if (cell_size[c] == 1) {
                // singleton outcome: the branch is a basis state
                const double p = std::norm(a);
                if (w * p > prune)
                    out.add(w * p, SparseVec{evolved.dim, {{i, a / std::abs(a)}}});
                continue;
            }
            auto &cv = cells[c];
            cv.dim = evolved.dim;
            cv.amps.emplace_back(i, a);
        }
        for (auto &[cid, cv] : cells) {
            const double p = cv.squared_norm();
            if (w * p <= prune)
                continue;
            const double inv = 1.0 / std::sqrt(p);
            for (auto &[i, a] : cv.amps)
                a *= inv;
            out.add(w * p, std::move(cv));
        }
    }
    out.merge_equivalent();
    return out;
}

namespace {

// Final observation: end-pipeline unitaries (with the intermediate
// observables, final one omitted), then the accept projector.
double acceptance_of(MixedState ens, const Lqfa &a) {
    for (std::size_t s = 0; s + 1 < a.end_pipeline.size(); ++s)
        ens = apply_stage(ens, a.end_pipeline[s]);
    double acc = 0.0;
    for (const auto &[w, state] : ens.members()) {
        SparseVec fin = a.end_pipeline.empty()
                            ? state
                            : a.end_pipeline.back().unitary.apply(state);
        double p = 0.0;
        for (const auto &[i, amp] : fin.amps)
            if (std::binary_search(a.accept.begin(), a.accept.end(), i))
                p += std::norm(amp);
        acc += w * p;
    }
    return acc;
}

MixedState advance_one_symbol(MixedState ens, const Lqfa &a) {
    for (const Stage &s : a.sigma_pipeline)
        ens = apply_stage(ens, s);
    return ens;
}

} // namespace

ComplexMatrix Lqfa::accept_projector_dense() const {
    ComplexMatrix m(dim, dim);
    for (std::uint32_t i : accept)
        m(i, i) = 1.0;
    return m;
}

Lqfa trivial_accepting_lqfa() {
    Lqfa a;
    a.dim = 1;
    a.initial = SparseVec::basis(1, 0);
    a.end_pipeline = {Stage::identity(1)};
    a.accept = {0};
    return a;
}

double accept_probability(const Lqfa &a, std::size_t k) {
    MixedState ens = MixedState::pure(a.initial);
    for (std::size_t step = 0; step < k; ++step)
        ens = advance_one_symbol(std::move(ens), a);
    return acceptance_of(std::move(ens), a);
}

Lqfa complement(const Lqfa &a) {
    Lqfa c = a;
    std::vector<std::uint32_t> rest;
    rest.reserve(a.dim - a.accept.size());
    for (std::uint32_t i = 0; i < a.dim; ++i)
        if (!std::binary_search(a.accept.begin(), a.accept.end(), i))
            rest.push_back(i);
    c.accept = std::move(rest);
    return c;
}

namespace {

std::vector<Stage> padded_pipeline(const std::vector<Stage> &p, std::size_t dim, std::size_t len) {
    std::vector<Stage> out = p;
    while (out.size() < len)
        out.push_back(Stage::identity(dim));
    return out;
}

} // namespace

Lqfa product(const Lqfa &a, const Lqfa &b, std::size_t dim_cap) {
    const std::size_t dim = a.dim * b.dim;
    if (dim > dim_cap)
        throw CapacityError("product: " + std::to_string(a.dim) + " x " +
                            std::to_string(b.dim) + " basis states exceeds cap " +
                            std::to_string(dim_cap));
    Lqfa p;
    p.dim = dim;

    p.initial.dim = dim;
    for (const auto &[ia, aa] : a.initial.amps)
        for (const auto &[ib, ab] : b.initial.amps)
            p.initial.amps.emplace_back(static_cast<std::uint32_t>(ia * b.dim + ib), aa * ab);
    std::sort(p.initial.amps.begin(), p.initial.amps.end(),
              [](const auto &l, const auto &r) { return l.first < r.first; });

    auto pair_pipelines = [&](const std::vector<Stage> &pa, const std::vector<Stage> &pb) {
        const std::size_t len = std::max(pa.size(), pb.size());
        const std::vector<Stage> qa = padded_pipeline(pa, a.dim, len);
        const std::vector<Stage> qb = padded_pipeline(pb, b.dim, len);
        std::vector<Stage> out;
        out.reserve(len);
        for (std::size_t s = 0; s < len; ++s)
            out.push_back(Stage{BlockUnitary::tensor(qa[s].unitary, qb[s].unitary),
                                Observable::tensor(qa[s].observable, qb[s].observable)});
        return out;
    };
    p.sigma_pipeline = pair_pipelines(a.sigma_pipeline, b.sigma_pipeline);
    p.end_pipeline = pair_pipelines(a.end_pipeline, b.end_pipeline);
    if (p.end_pipeline.empty())
        p.end_pipeline = {Stage::identity(dim)};

    p.accept.reserve(a.accept.size() * b.accept.size());
    for (std::uint32_t ia : a.accept)
        for (std::uint32_t ib : b.accept)
            p.accept.push_back(static_cast<std::uint32_t>(ia * b.dim + ib));
    std::sort(p.accept.begin(), p.accept.end());
    return p;
}

EventTable event_table(const Lqfa &a, std::size_t k_max) {
    EventTable t;
    MixedState ens = MixedState::pure(a.initial);
    t.probabilities.emplace_back(0, acceptance_of(ens, a));
    for (std::size_t k = 1; k <= k_max; ++k) {
        ens = advance_one_symbol(std::move(ens), a);
        t.probabilities.emplace_back(k, acceptance_of(ens, a));
    }
    return t;
}

CutPointReport cut_point_report(const EventTable &t, const std::vector<bool> &members,
                                double claimed_accept_bound, double claimed_reject_bound,
                                double tol) {
    if (t.probabilities.empty())
        throw std::invalid_argument("cut_point_report: empty event table");
    if (members.size() < t.probabilities.size())
        throw std::invalid_argument("cut_point_report: membership shorter than table");
    if (claimed_accept_bound <= claimed_reject_bound)
        throw std::invalid_argument("cut_point_report: accept bound must exceed reject bound");

    CutPointReport r;
    r.lambda = 0.5 * (claimed_accept_bound + claimed_reject_bound);
    r.rho = 0.5 * (claimed_accept_bound - claimed_reject_bound);
    for (const auto &[k, p] : t.probabilities) {
        if (members[k]) {
            r.min_accept = std::min(r.min_accept, p);
            if (p < claimed_accept_bound - tol)
                r.violations.push_back(k);
        } else {
            r.max_reject = std::max(r.max_reject, p);
            if (p > claimed_reject_bound + tol)
                r.violations.push_back(k);
        }
    }
    return r;
}

double mm_accept_probability(const std::vector<std::uint32_t> &q_acc,
                             const std::vector<std::uint32_t> &q_rej,
                             const ComplexMatrix &u_sigma, const ComplexMatrix &u_end,
                             const CVec &pi0, std::size_t k) {
    for (std::uint32_t i : q_acc)
        for (std::uint32_t j : q_rej)
            if (i == j)
                throw std::invalid_argument("mm_accept_probability: halting sets overlap");
    const std::size_t dim = pi0.size();
    std::vector<bool> halting(dim, false);
    std::vector<bool> accepting(dim, false);
    for (std::uint32_t i : q_acc) {
        halting[i] = true;
        accepting[i] = true;
    }
    for (std::uint32_t i : q_rej)
        halting[i] = true;

    double acc = 0.0;
    CVec psi = pi0; // unhalted component, not renormalized
    for (std::size_t j = 0; j <= k; ++j) {
        const CVec phi = lqfa::apply(psi, j < k ? u_sigma : u_end);
        CVec go(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (accepting[i])
                acc += std::norm(phi[i]);
            if (!halting[i])
                go[i] = phi[i];
        }
        psi = std::move(go);
    }
    return acc;
}

} // namespace lqfa
