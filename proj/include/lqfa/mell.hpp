// The family of automata recognizing sigma^{>= ell}: inductive
// construction, the stochastic recurrence system describing its dynamics,
// and the ell = 3 closed form with its shortcut cut point.
#pragma once

#include "lqfa/semantics.hpp"

#include <cstdint>
#include <vector>

namespace lqfa {

// The automaton plus its construction metadata. Basis states are laid
// out depth-first by construction history; `groups[h]` lists the indices
// added at expansion step h (group 0 is the start state alone).
struct MellAutomaton {
    std::size_t n = 0;   // Fourier dimension of the base machine
    std::size_t ell = 0; // number of expansions, language is sigma^{>= ell}
    Lqfa automaton;
    std::vector<std::vector<std::uint32_t>> groups;

    std::size_t dim() const { return automaton.dim; }
};

// Base machine: n states, Fourier evolution, canonical observable,
// everything but the start state accepting. Requires n >= 2.
MellAutomaton build_m1(std::size_t n, std::size_t dim_cap = kDefaultDimCap);

// One expansion step: n-1 fresh children per accepting state, a new
// block-Fourier stage at the front of the symbol pipeline, acceptance
// moved to the new deepest group.
MellAutomaton expand(const MellAutomaton &m, std::size_t dim_cap = kDefaultDimCap);

MellAutomaton build_mell(std::size_t n, std::size_t ell, std::size_t dim_cap = kDefaultDimCap);

// Per-state probabilities x_h(k) within each depth group, evolved by the
// linear recurrence system that mirrors the stage dynamics.
struct RecurrenceState {
    std::size_t n = 0;
    std::size_t ell = 0;
    std::vector<double> x; // x[h-1] = x_h(k), h = 1..ell
    std::size_t k = 0;
};

// State after the first symbol: x_1(1) = 1/n, the rest zero.
RecurrenceState recurrence_initial(std::size_t n, std::size_t ell);

RecurrenceState recurrence_step(const RecurrenceState &s);

// Group-multiplicity-weighted total probability; 1 at every step.
double recurrence_mass(const RecurrenceState &s);

// p(sigma^k) = (n-1)^ell * x_ell(k), in O(k * ell^2) arithmetic.
double recurrence_event(std::size_t n, std::size_t ell, std::size_t k);

// Closed form of the ell = 3 event.
double closed_form_m3(std::size_t n, std::size_t k);

// Cut point between the ell = 3 event at lengths t-1 and t, which
// recognizes sigma^{>= t} for t >= 4 with n-independent state count.
struct ShortcutIsolation {
    double cut_point = 0.0;
    double rho = 0.0; // half the gap between the two consecutive values
};

ShortcutIsolation shortcut_isolation_m3(std::size_t n, std::size_t t);

} // namespace lqfa
