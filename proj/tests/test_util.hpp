// Shared test-only helpers: an independent dense evaluation of the
// acceptance probability by explicit summation over measurement-outcome
// sequences, and randomized automata generators.
#pragma once

#include "lqfa/linalg.hpp"
#include "lqfa/semantics.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace lqfa_test {

// Sums || pi0 * U1 * P_i1 * ... * U_end * P_acc ||^2 over every outcome
// sequence, with dense matrices throughout. Deliberately shares nothing
// with the ensemble simulator it cross-checks.
inline double multisum_accept_probability(const lqfa::Lqfa &a, std::size_t k) {
    using lqfa::CVec;
    using lqfa::ComplexMatrix;

    struct FlatStage {
        ComplexMatrix u;
        std::vector<ComplexMatrix> projectors; // empty = no measurement
    };
    std::vector<FlatStage> flat;
    auto push = [&](const lqfa::Stage &s, bool measured) {
        FlatStage f;
        f.u = s.unitary.to_dense();
        if (measured && !s.observable.is_identity())
            for (std::uint32_t c = 0; c < s.observable.n_cells(); ++c)
                f.projectors.push_back(s.observable.cell_projector(c));
        flat.push_back(std::move(f));
    };
    for (std::size_t step = 0; step < k; ++step)
        for (const lqfa::Stage &s : a.sigma_pipeline)
            push(s, true);
    for (std::size_t s = 0; s < a.end_pipeline.size(); ++s)
        push(a.end_pipeline[s], s + 1 < a.end_pipeline.size());

    const ComplexMatrix p_acc = a.accept_projector_dense();
    double total = 0.0;
    // depth-first over outcome sequences with unnormalized branch vectors
    auto recurse = [&](auto &&self, const CVec &v, std::size_t stage) -> void {
        double w = 0.0;
        for (const lqfa::Complex &z : v)
            w += std::norm(z);
        if (w < 1e-30)
            return;
        if (stage == flat.size()) {
            const CVec fin = lqfa::apply(v, p_acc);
            for (const lqfa::Complex &z : fin)
                total += std::norm(z);
            return;
        }
        const CVec evolved = lqfa::apply(v, flat[stage].u);
        if (flat[stage].projectors.empty()) {
            self(self, evolved, stage + 1);
            return;
        }
        for (const ComplexMatrix &p : flat[stage].projectors)
            self(self, lqfa::apply(evolved, p), stage + 1);
    };
    recurse(recurse, a.initial.to_dense(), 0);
    return total;
}

// Haar-ish random unitary: Gram-Schmidt of a Gaussian complex matrix.
inline lqfa::ComplexMatrix random_unitary(std::size_t dim, std::mt19937 &rng) {
    std::normal_distribution<double> gauss;
    lqfa::ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) = lqfa::Complex(gauss(rng), gauss(rng));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t o = 0; o < r; ++o) {
            lqfa::Complex ip = 0.0;
            for (std::size_t c = 0; c < dim; ++c)
                ip += m(r, c) * std::conj(m(o, c));
            for (std::size_t c = 0; c < dim; ++c)
                m(r, c) -= ip * m(o, c);
        }
        double nrm = 0.0;
        for (std::size_t c = 0; c < dim; ++c)
            nrm += std::norm(m(r, c));
        nrm = std::sqrt(nrm);
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) /= nrm;
    }
    return m;
}

// Random partition of the basis into outcome cells.
inline lqfa::Observable random_observable(std::size_t dim, std::mt19937 &rng) {
    std::uniform_int_distribution<std::uint32_t> cell(0, static_cast<std::uint32_t>(dim - 1));
    std::vector<std::uint32_t> cells(dim);
    for (auto &c : cells)
        c = cell(rng);
    return lqfa::Observable::from_cells(dim, cells);
}

inline lqfa::Lqfa random_lqfa(std::size_t dim, std::size_t stages, std::mt19937 &rng) {
    lqfa::Lqfa a;
    a.dim = dim;
    a.initial = lqfa::SparseVec::basis(dim, 0);
    for (std::size_t s = 0; s < stages; ++s)
        a.sigma_pipeline.push_back(
            lqfa::Stage{lqfa::BlockUnitary::dense(random_unitary(dim, rng)),
                        random_observable(dim, rng)});
    a.end_pipeline = {lqfa::Stage{lqfa::BlockUnitary::dense(random_unitary(dim, rng)),
                                  lqfa::Observable::identity(dim)}};
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::uint32_t i = 0; i < dim; ++i)
        if (coin(rng))
            a.accept.push_back(i);
    return a;
}

} // namespace lqfa_test
