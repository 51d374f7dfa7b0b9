// From a minimal unary DFA given as (preperiod, period, accepting
// residues) to an assembled quantum recognizer with isolated cut point
// 1/2, plus the membership oracle and the finite-horizon verifier.
#pragma once

#include "lqfa/mell.hpp"
#include "lqfa/semantics.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace lqfa {

// Minimal-DFA view of a unary regular language: an initial path of t
// states joined to a cycle of p states, accepting residues on both.
struct UnaryDfa {
    std::size_t t = 0;          // preperiod, >= 0
    std::size_t p = 1;          // period, >= 1
    std::set<std::size_t> accept; // subset of {0 .. t+p-1}

    void validate() const;
};

// Ground-truth oracle: is sigma^k in the language?
bool membership(const UnaryDfa &d, std::size_t k);

// Accepting residues of the period-(t+1) continuation of the finite part
// (lengths 0..t). Requires t >= 1.
std::vector<std::size_t> lift_finite_part(const UnaryDfa &d);

// Accepting residues mod p of the continuation of the tail part
// (lengths >= t+1).
std::vector<std::size_t> lift_periodic_part(const UnaryDfa &d);

// Cyclic-permutation automaton over m states accepting exactly the
// lengths congruent to one of `residues` mod m; a deterministic event.
Lqfa build_periodic_moqfa(std::size_t m, const std::vector<std::size_t> &residues);

// Smallest n >= 2 with ((n-1)/n)^(t+1) > 1/2; never exceeds 4t.
std::size_t choose_n(std::size_t t);

struct SynthesisParams {
    std::size_t n = 0;        // Fourier dimension of the length filter
    std::size_t k_max = 0;    // verification horizon
    double tolerance = kProbabilityTol;
    std::size_t dim_cap = kDefaultDimCap;

    static SynthesisParams defaults(const UnaryDfa &d, std::optional<std::size_t> n = {});
};

struct AssembledRecognizer {
    Lqfa automaton; // the assembled recognizer
    SynthesisParams params;
    double bound = 1.0;   // ((n-1)/n)^(t+1); members sit at or above it
    double lambda = 0.5;
    double rho = 0.5;     // bound - 1/2
    bool periodic_only = false; // t = 0 degenerate mode

    // Sub-automata of the full construction (empty dims in periodic-only
    // mode except the periodic recognizer itself).
    Lqfa part_finite;     // length-residue filter for the finite part
    Lqfa part_periodic;   // length-residue filter for the tail part
    Lqfa part_len_filter;      // accepts long inputs
    Lqfa part_len_filter_comp; // accepts short inputs
    Lqfa part_a_t;        // finite-part recognizer
    Lqfa part_a_p;        // tail-part recognizer
};

AssembledRecognizer assemble(const UnaryDfa &d, const SynthesisParams &params);

// Event table over 0..k_max checked against the membership oracle and
// the assembled bounds.
CutPointReport verify(const AssembledRecognizer &r, const UnaryDfa &d);

std::vector<bool> membership_table(const UnaryDfa &d, std::size_t k_max);

} // namespace lqfa
