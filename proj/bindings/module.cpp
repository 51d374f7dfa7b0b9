// Python bindings for the main operations: threshold-automaton events,
// recognizer synthesis, verification, and the CSV codec.
#include "lqfa/event_csv.hpp"
#include "lqfa/mell.hpp"
#include "lqfa/semantics.hpp"
#include "lqfa/unary.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <vector>

namespace py = pybind11;

namespace {

std::vector<double> table_values(const lqfa::EventTable &t) {
    std::vector<double> out;
    out.reserve(t.probabilities.size());
    for (const auto &[k, p] : t.probabilities)
        out.push_back(p);
    return out;
}

lqfa::UnaryDfa make_dfa(std::size_t t, std::size_t p, const std::vector<std::size_t> &accept) {
    lqfa::UnaryDfa d;
    d.t = t;
    d.p = p;
    d.accept = std::set<std::size_t>(accept.begin(), accept.end());
    d.validate();
    return d;
}

lqfa::AssembledRecognizer make_recognizer(std::size_t t, std::size_t p,
                                          const std::vector<std::size_t> &accept,
                                          std::optional<std::size_t> n, std::size_t dim_cap) {
    const lqfa::UnaryDfa d = make_dfa(t, p, accept);
    lqfa::SynthesisParams params = lqfa::SynthesisParams::defaults(d, n);
    params.dim_cap = dim_cap;
    return lqfa::assemble(d, params);
}

} // namespace

PYBIND11_MODULE(_lqfa, m) {
    m.doc() = "Latvian QFA constructions for unary regular languages";

    py::register_exception<lqfa::CapacityError>(m, "CapacityError");

    m.def(
        "mell_event",
        [](std::size_t n, std::size_t ell, std::size_t k_max, const std::string &engine,
           std::size_t dim_cap) {
            lqfa::EventTable t;
            if (engine == "simulate") {
                t = lqfa::event_table(lqfa::build_mell(n, ell, dim_cap).automaton, k_max);
            } else if (engine == "recurrence") {
                for (std::size_t k = 0; k <= k_max; ++k)
                    t.probabilities.emplace_back(k, lqfa::recurrence_event(n, ell, k));
            } else if (engine == "closed-form") {
                if (ell != 3)
                    throw std::invalid_argument("closed-form engine requires ell == 3");
                for (std::size_t k = 0; k <= k_max; ++k)
                    t.probabilities.emplace_back(k, lqfa::closed_form_m3(n, k));
            } else {
                throw std::invalid_argument("unknown engine: " + engine);
            }
            return table_values(t);
        },
        py::arg("n"), py::arg("ell"), py::arg("k_max"), py::arg("engine") = "simulate",
        py::arg("dim_cap") = lqfa::kDefaultDimCap,
        "Acceptance probabilities of the sigma^{>=ell} automaton for k = 0..k_max.");

    m.def(
        "membership",
        [](std::size_t t, std::size_t p, const std::vector<std::size_t> &accept, std::size_t k) {
            return lqfa::membership(make_dfa(t, p, accept), k);
        },
        py::arg("t"), py::arg("p"), py::arg("accept"), py::arg("k"),
        "DFA ground truth: is sigma^k in the language?");

    m.def(
        "choose_n", &lqfa::choose_n, py::arg("t"),
        "Smallest Fourier dimension giving an isolated cut point for preperiod t.");

    m.def(
        "synthesize",
        [](std::size_t t, std::size_t p, const std::vector<std::size_t> &accept,
           std::optional<std::size_t> n, std::size_t dim_cap) {
            const lqfa::AssembledRecognizer r = make_recognizer(t, p, accept, n, dim_cap);
            py::dict out;
            out["mode"] = r.periodic_only ? "periodic-only" : "full";
            out["n"] = r.params.n;
            out["dim"] = r.automaton.dim;
            out["bound"] = r.bound;
            out["lambda"] = r.lambda;
            out["rho"] = r.rho;
            return out;
        },
        py::arg("t"), py::arg("p"), py::arg("accept"), py::arg("n") = std::nullopt,
        py::arg("dim_cap") = lqfa::kDefaultDimCap,
        "Assemble a recognizer and return its manifest.");

    m.def(
        "recognizer_event",
        [](std::size_t t, std::size_t p, const std::vector<std::size_t> &accept,
           std::optional<std::size_t> n, std::size_t k_max, std::size_t dim_cap) {
            lqfa::AssembledRecognizer r = make_recognizer(t, p, accept, n, dim_cap);
            if (k_max == 0)
                k_max = r.params.k_max;
            return table_values(lqfa::event_table(r.automaton, k_max));
        },
        py::arg("t"), py::arg("p"), py::arg("accept"), py::arg("n") = std::nullopt,
        py::arg("k_max") = 0, py::arg("dim_cap") = lqfa::kDefaultDimCap,
        "Acceptance probabilities of the assembled recognizer for k = 0..k_max.");

    m.def(
        "verify",
        [](std::size_t t, std::size_t p, const std::vector<std::size_t> &accept,
           std::optional<std::size_t> n, std::size_t k_max, std::size_t dim_cap) {
            lqfa::AssembledRecognizer r = make_recognizer(t, p, accept, n, dim_cap);
            if (k_max > 0)
                r.params.k_max = k_max;
            const lqfa::CutPointReport rep = lqfa::verify(r, make_dfa(t, p, accept));
            py::dict out;
            out["lambda"] = rep.lambda;
            out["rho"] = rep.rho;
            out["min_accept"] = rep.min_accept;
            out["max_reject"] = rep.max_reject;
            out["violations"] = rep.violations;
            return out;
        },
        py::arg("t"), py::arg("p"), py::arg("accept"), py::arg("n") = std::nullopt,
        py::arg("k_max") = 0, py::arg("dim_cap") = lqfa::kDefaultDimCap,
        "Check the assembled recognizer against the DFA oracle over 0..k_max.");

    m.def(
        "format_event_csv",
        [](const std::vector<double> &values) {
            lqfa::EventTable t;
            for (std::size_t k = 0; k < values.size(); ++k)
                t.probabilities.emplace_back(k, values[k]);
            return lqfa::format_event_csv(t);
        },
        py::arg("values"), "Render probabilities (index = length) as a k,probability CSV.");

    m.def(
        "parse_event_csv",
        [](const std::string &csv) { return table_values(lqfa::parse_event_csv(csv)); },
        py::arg("csv"), "Parse a k,probability CSV back into a list of probabilities.");
}
