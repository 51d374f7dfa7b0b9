#include "lqfa/unary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqfa {

void UnaryDfa::validate() const {
    if (p < 1)
        throw std::invalid_argument("UnaryDfa: period must be at least 1");
    for (std::size_t r : accept)
        if (r >= t + p)
            throw std::invalid_argument("UnaryDfa: accepting residue out of range");
}

bool membership(const UnaryDfa &d, std::size_t k) {
    if (k < d.t)
        return d.accept.count(k) > 0;
    return d.accept.count(d.t + (k - d.t) % d.p) > 0;
}

std::vector<bool> membership_table(const UnaryDfa &d, std::size_t k_max) {
    std::vector<bool> m(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k)
        m[k] = membership(d, k);
    return m;
}

std::vector<std::size_t> lift_finite_part(const UnaryDfa &d) {
    if (d.t < 1)
        throw std::invalid_argument("lift_finite_part: preperiod must be at least 1");
    std::vector<std::size_t> residues;
    for (std::size_t i = 0; i <= d.t; ++i)
        if (membership(d, i))
            residues.push_back(i);
    return residues;
}

std::vector<std::size_t> lift_periodic_part(const UnaryDfa &d) {
    std::vector<std::size_t> residues;
    for (std::size_t i = 0; i < d.p; ++i)
        if (membership(d, d.t + 1 + i))
            residues.push_back((d.t + 1 + i) % d.p);
    std::sort(residues.begin(), residues.end());
    return residues;
}

Lqfa build_periodic_moqfa(std::size_t m, const std::vector<std::size_t> &residues) {
    if (m < 1)
        throw std::invalid_argument("build_periodic_moqfa: need at least one state");
    Lqfa a;
    a.dim = m;
    a.initial = SparseVec::basis(m, 0);
    a.sigma_pipeline = {Stage{BlockUnitary::dense(cyclic_permutation(m)),
                              Observable::identity(m)}};
    a.end_pipeline = {Stage::identity(m)};
    for (std::size_t r : residues) {
        if (r >= m)
            throw std::invalid_argument("build_periodic_moqfa: residue out of range");
        a.accept.push_back(static_cast<std::uint32_t>(r));
    }
    std::sort(a.accept.begin(), a.accept.end());
    a.accept.erase(std::unique(a.accept.begin(), a.accept.end()), a.accept.end());
    return a;
}

std::size_t choose_n(std::size_t t) {
    if (t < 1)
        throw std::invalid_argument("choose_n: preperiod must be at least 1");
    std::size_t n = 2;
    while (std::pow((static_cast<double>(n) - 1.0) / static_cast<double>(n),
                    static_cast<double>(t + 1)) <= 0.5)
        ++n;
    return n;
}

SynthesisParams SynthesisParams::defaults(const UnaryDfa &d, std::optional<std::size_t> n) {
    SynthesisParams p;
    p.n = n ? *n : (d.t > 0 ? choose_n(d.t) : 0);
    p.k_max = d.t + 3 * d.p + 5;
    return p;
}

AssembledRecognizer assemble(const UnaryDfa &d, const SynthesisParams &params) {
    d.validate();
    AssembledRecognizer r;
    r.params = params;

    if (d.t == 0) {
        // Purely periodic language: the cyclic recognizer alone is exact,
        // no length filter needed.
        std::vector<std::size_t> residues(d.accept.begin(), d.accept.end());
        r.automaton = build_periodic_moqfa(d.p, residues);
        r.part_periodic = r.automaton;
        r.bound = 1.0;
        r.lambda = 0.5;
        r.rho = 0.5;
        r.periodic_only = true;
        return r;
    }

    const std::size_t n = params.n;
    if (n < 2)
        throw std::invalid_argument("assemble: n must be at least 2");
    const double bound = std::pow((static_cast<double>(n) - 1.0) / static_cast<double>(n),
                                  static_cast<double>(d.t + 1));
    if (bound <= 0.5)
        throw std::invalid_argument(
            "assemble: ((n-1)/n)^(t+1) = " + std::to_string(bound) +
            " <= 1/2, no isolation; increase n");

    const MellAutomaton len_filter = build_mell(n, d.t + 1, params.dim_cap);
    r.part_len_filter = len_filter.automaton;
    r.part_len_filter_comp = complement(len_filter.automaton);
    r.part_finite = build_periodic_moqfa(d.t + 1, lift_finite_part(d));
    r.part_periodic = build_periodic_moqfa(d.p, lift_periodic_part(d));

    r.part_a_t = product(r.part_finite, r.part_len_filter_comp, params.dim_cap);
    r.part_a_p = product(r.part_periodic, r.part_len_filter, params.dim_cap);
    r.automaton = complement(
        product(complement(r.part_a_t), complement(r.part_a_p), params.dim_cap));

    r.bound = bound;
    r.lambda = 0.5;
    r.rho = bound - 0.5;
    return r;
}

CutPointReport verify(const AssembledRecognizer &r, const UnaryDfa &d) {
    const std::size_t k_max = r.params.k_max;
    if (k_max < d.t + 2 * d.p)
        throw std::invalid_argument("verify: horizon must cover the preperiod plus two periods");
    const EventTable table = event_table(r.automaton, k_max);
    return cut_point_report(table, membership_table(d, k_max), r.bound, 1.0 - r.bound,
                            r.params.tolerance);
}

} // namespace lqfa
