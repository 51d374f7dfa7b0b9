// Command-line front end: synthesize recognizers from DFA descriptions,
// emit event tables as CSV, and run oracle-checked verification sweeps.
#include "lqfa/event_csv.hpp"
#include "lqfa/mell.hpp"
#include "lqfa/semantics.hpp"
#include "lqfa/unary.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitViolations = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapacity = 3;

std::size_t dim_cap_from_env() {
    if (const char *v = std::getenv("QFA_DIM_CAP")) {
        char *end = nullptr;
        const unsigned long long cap = std::strtoull(v, &end, 10);
        if (end == v || *end != '\0' || cap == 0)
            throw std::invalid_argument("QFA_DIM_CAP must be a positive integer");
        return static_cast<std::size_t>(cap);
    }
    return lqfa::kDefaultDimCap;
}

lqfa::UnaryDfa load_dfa(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open DFA file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw std::invalid_argument("malformed DFA JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("T") || !doc.contains("P") || !doc.contains("accept"))
        throw std::invalid_argument("DFA JSON must be {\"T\": int, \"P\": int, \"accept\": [int...]}");
    lqfa::UnaryDfa d;
    try {
        d.t = doc.at("T").get<std::size_t>();
        d.p = doc.at("P").get<std::size_t>();
        for (const auto &r : doc.at("accept")) {
            const auto v = r.get<std::size_t>();
            if (!d.accept.insert(v).second)
                throw std::invalid_argument("duplicate accepting residue " + std::to_string(v));
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument("malformed DFA JSON: " + std::string(e.what()));
    }
    d.validate();
    return d;
}

std::optional<std::size_t> parse_n(const std::string &n_flag) {
    if (n_flag == "auto")
        return std::nullopt;
    char *end = nullptr;
    const unsigned long long n = std::strtoull(n_flag.c_str(), &end, 10);
    if (end == n_flag.c_str() || *end != '\0' || n < 2)
        throw std::invalid_argument("--n must be 'auto' or an integer >= 2");
    return static_cast<std::size_t>(n);
}

// Builds the full output before touching the target, so a failure never
// leaves a partial file behind.
void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

lqfa::AssembledRecognizer synthesize(const lqfa::UnaryDfa &d, const std::string &n_flag,
                                     std::size_t k_max) {
    lqfa::SynthesisParams params = lqfa::SynthesisParams::defaults(d, parse_n(n_flag));
    params.dim_cap = dim_cap_from_env();
    if (k_max > 0)
        params.k_max = k_max;
    return lqfa::assemble(d, params);
}

int run_mell(std::size_t n, std::size_t ell, std::size_t k_max, const std::string &engine,
             const std::string &out_path) {
    lqfa::EventTable table;
    if (engine == "simulate") {
        table = lqfa::event_table(lqfa::build_mell(n, ell, dim_cap_from_env()).automaton, k_max);
    } else if (engine == "recurrence") {
        for (std::size_t k = 0; k <= k_max; ++k)
            table.probabilities.emplace_back(k, lqfa::recurrence_event(n, ell, k));
    } else if (engine == "closed-form") {
        if (ell != 3)
            throw std::invalid_argument("--engine closed-form requires --ell 3");
        for (std::size_t k = 0; k <= k_max; ++k)
            table.probabilities.emplace_back(k, lqfa::closed_form_m3(n, k));
    } else {
        throw std::invalid_argument("unknown engine: " + engine);
    }
    emit(lqfa::format_event_csv(table), out_path);
    return 0;
}

int run_synthesize(const std::string &dfa_path, const std::string &n_flag,
                   const std::string &out_path) {
    const lqfa::UnaryDfa d = load_dfa(dfa_path);
    const lqfa::AssembledRecognizer r = synthesize(d, n_flag, 0);
    json manifest;
    manifest["mode"] = r.periodic_only ? "periodic-only" : "full";
    manifest["T"] = d.t;
    manifest["P"] = d.p;
    manifest["n"] = r.params.n;
    manifest["bound"] = r.bound;
    manifest["lambda"] = r.lambda;
    manifest["rho"] = r.rho;
    json dims;
    dims["A_L"] = r.automaton.dim;
    if (!r.periodic_only) {
        dims["A_T"] = r.part_a_t.dim;
        dims["A_P"] = r.part_a_p.dim;
        dims["A_Tcirc"] = r.part_finite.dim;
        dims["A_Pcirc"] = r.part_periodic.dim;
        dims["M_T1"] = r.part_len_filter.dim;
        dims["Mbar_T1"] = r.part_len_filter_comp.dim;
    } else {
        dims["A_Pcirc"] = r.part_periodic.dim;
    }
    manifest["dims"] = dims;
    emit(manifest.dump(2) + "\n", out_path);
    return 0;
}

int run_verify(const std::string &dfa_path, const std::string &n_flag, std::size_t k_max) {
    const lqfa::UnaryDfa d = load_dfa(dfa_path);
    const lqfa::AssembledRecognizer r = synthesize(d, n_flag, k_max);
    const lqfa::EventTable table = lqfa::event_table(r.automaton, r.params.k_max);
    const std::vector<bool> members = lqfa::membership_table(d, r.params.k_max);
    const lqfa::CutPointReport report =
        lqfa::cut_point_report(table, members, r.bound, 1.0 - r.bound, r.params.tolerance);

    std::ostringstream out;
    out << "k  member  p              bound-ok\n";
    for (const auto &[k, p] : table.probabilities) {
        const bool ok = members[k] ? p >= r.bound - r.params.tolerance
                                   : p <= 1.0 - r.bound + r.params.tolerance;
        char row[96];
        std::snprintf(row, sizeof(row), "%-3zu%-8s%-15.12f%s\n", k,
                      members[k] ? "yes" : "no", p, ok ? "ok" : "VIOLATION");
        out << row;
    }
    out << "lambda = " << report.lambda << "\n"
        << "rho    = " << report.rho << "\n"
        << "violations = " << report.violations.size() << "\n";
    std::cout << out.str();
    return report.violations.empty() ? 0 : kExitViolations;
}

int run_event(const std::string &dfa_path, const std::string &n_flag, std::size_t k_max,
              const std::string &out_path) {
    const lqfa::UnaryDfa d = load_dfa(dfa_path);
    const lqfa::AssembledRecognizer r = synthesize(d, n_flag, k_max);
    emit(lqfa::format_event_csv(lqfa::event_table(r.automaton, r.params.k_max)), out_path);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Latvian QFA toolkit for unary regular languages"};
    app.require_subcommand(1);

    std::size_t n = 0, ell = 0, k_max = 0;
    std::string engine = "simulate";
    std::string dfa_path;
    std::string n_flag = "auto";
    std::string out_path;

    auto *mell = app.add_subcommand("mell", "event table of the length-threshold automaton");
    mell->add_option("--n", n, "Fourier dimension (>= 2)")->required();
    mell->add_option("--ell", ell, "length threshold (>= 1)")->required();
    mell->add_option("--kmax", k_max, "largest input length")->required();
    mell->add_option("--engine", engine, "simulate | recurrence | closed-form");
    mell->add_option("--out", out_path, "write CSV here instead of stdout");

    auto *synth = app.add_subcommand("synthesize", "build a recognizer, print its manifest");
    synth->add_option("--dfa", dfa_path, "DFA JSON file")->required();
    synth->add_option("--n", n_flag, "Fourier dimension or 'auto'");
    synth->add_option("--out", out_path, "write manifest here instead of stdout");

    auto *verify = app.add_subcommand("verify", "check the recognizer against the DFA oracle");
    verify->add_option("--dfa", dfa_path, "DFA JSON file")->required();
    verify->add_option("--n", n_flag, "Fourier dimension or 'auto'");
    verify->add_option("--kmax", k_max, "verification horizon (default T+3P+5)");

    auto *event = app.add_subcommand("event", "event table of the assembled recognizer");
    event->add_option("--dfa", dfa_path, "DFA JSON file")->required();
    event->add_option("--n", n_flag, "Fourier dimension or 'auto'");
    event->add_option("--kmax", k_max, "horizon (default T+3P+5)");
    event->add_option("--out", out_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        if (mell->parsed())
            return run_mell(n, ell, k_max, engine, out_path);
        if (synth->parsed())
            return run_synthesize(dfa_path, n_flag, out_path);
        if (verify->parsed())
            return run_verify(dfa_path, n_flag, k_max);
        return run_event(dfa_path, n_flag, k_max, out_path);
    } catch (const lqfa::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
