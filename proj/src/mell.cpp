#include "lqfa/mell.hpp"

#include <cmath>
#include <stdexcept>

namespace lqfa {

namespace {

std::size_t mell_dim(std::size_t n, std::size_t ell) {
    // summation form; the closed form divides by n-2 and breaks at n = 2
    std::size_t dim = 0, pw = 1;
    for (std::size_t i = 0; i <= ell; ++i) {
        dim += pw;
        pw *= n - 1;
    }
    return dim;
}

struct StateTree {
    std::vector<std::size_t> depth_of;
    std::vector<std::vector<std::uint32_t>> children_of;
    std::vector<std::vector<std::uint32_t>> groups;
};

// Depth-first enumeration: each node immediately followed by the subtree
// of its first child, matching the construction-history layout.
void visit(StateTree &t, std::size_t n, std::size_t ell, std::size_t depth,
           std::uint32_t &next) {
    const std::uint32_t me = next++;
    t.depth_of.push_back(depth);
    t.children_of.emplace_back();
    t.groups[depth].push_back(me);
    if (depth == ell)
        return;
    for (std::size_t j = 1; j < n; ++j) {
        t.children_of[me].push_back(next);
        visit(t, n, ell, depth + 1, next);
    }
}

} // namespace

MellAutomaton build_mell(std::size_t n, std::size_t ell, std::size_t dim_cap) {
    if (n < 2)
        throw std::invalid_argument("build_mell: n must be at least 2");
    if (ell < 1)
        throw std::invalid_argument("build_mell: ell must be at least 1");
    const std::size_t dim = mell_dim(n, ell);
    if (dim > dim_cap)
        throw CapacityError("build_mell: " + std::to_string(dim) +
                            " basis states exceeds cap " + std::to_string(dim_cap));

    StateTree tree;
    tree.groups.resize(ell + 1);
    std::uint32_t next = 0;
    // q0 plus one depth-1 subtree per accepting state of the base machine
    tree.depth_of.push_back(0);
    tree.children_of.emplace_back();
    tree.groups[0].push_back(next++);
    for (std::size_t j = 1; j < n; ++j) {
        tree.children_of[0].push_back(next);
        visit(tree, n, ell, 1, next);
    }

    const auto fn = std::make_shared<const ComplexMatrix>(fourier(n));

    MellAutomaton m;
    m.n = n;
    m.ell = ell;
    m.groups = tree.groups;
    m.automaton.dim = dim;
    m.automaton.initial = SparseVec::basis(dim, 0);
    m.automaton.end_pipeline = {Stage::identity(dim)};
    m.automaton.accept = tree.groups[ell];

    // Base stage: Fourier across {q0} and group 1, measured canonically
    // there; extended by the identity on every deeper state.
    std::vector<std::uint32_t> base_set = {0};
    base_set.insert(base_set.end(), tree.groups[1].begin(), tree.groups[1].end());
    Stage base{BlockUnitary(dim, {UnitaryBlock{base_set, fn}}),
               Observable::canonical_on(dim, base_set)};

    // Expansion stage h: Fourier on each accepting state of step h-1
    // together with its n-1 children, canonical observable on groups
    // h-1 and h, identity projector elsewhere. Newest stage runs first.
    for (std::size_t h = ell; h >= 2; --h) {
        std::vector<UnitaryBlock> blocks;
        blocks.reserve(tree.groups[h - 1].size());
        for (std::uint32_t parent : tree.groups[h - 1]) {
            std::vector<std::uint32_t> idx = {parent};
            idx.insert(idx.end(), tree.children_of[parent].begin(),
                       tree.children_of[parent].end());
            blocks.push_back(UnitaryBlock{std::move(idx), fn});
        }
        std::vector<std::uint32_t> measured = tree.groups[h - 1];
        measured.insert(measured.end(), tree.groups[h].begin(), tree.groups[h].end());
        m.automaton.sigma_pipeline.push_back(
            Stage{BlockUnitary(dim, std::move(blocks)),
                  Observable::canonical_on(dim, measured)});
    }
    m.automaton.sigma_pipeline.push_back(std::move(base));
    return m;
}

MellAutomaton build_m1(std::size_t n, std::size_t dim_cap) {
    return build_mell(n, 1, dim_cap);
}

MellAutomaton expand(const MellAutomaton &m, std::size_t dim_cap) {
    return build_mell(m.n, m.ell + 1, dim_cap);
}

RecurrenceState recurrence_initial(std::size_t n, std::size_t ell) {
    if (n < 2 || ell < 1)
        throw std::invalid_argument("recurrence_initial: need n >= 2, ell >= 1");
    RecurrenceState s;
    s.n = n;
    s.ell = ell;
    s.x.assign(ell, 0.0);
    s.x[0] = 1.0 / static_cast<double>(n);
    s.k = 1;
    return s;
}

RecurrenceState recurrence_step(const RecurrenceState &s) {
    const double n = static_cast<double>(s.n);
    const std::size_t ell = s.ell;
    const double r = (n - 1.0) / n;
    RecurrenceState out = s;
    out.k = s.k + 1;

    // coef(j) = (n-1)^j / n^(j+1) = r^j / n
    auto coef = [&](std::size_t j) { return std::pow(r, static_cast<double>(j)) / n; };

    // x_1 takes the start state's share plus every group's feedback
    double x1 = s.x[0] / n;
    for (std::size_t j = 1; j <= ell - 1; ++j)
        x1 += coef(j) * s.x[j - 1];
    x1 += std::pow(r, static_cast<double>(ell)) * s.x[ell - 1];
    out.x[0] = x1;

    for (std::size_t h = 2; h <= ell; ++h) {
        double xh = 0.0;
        for (std::size_t j = 0; j <= ell - h; ++j)
            xh += coef(j) * s.x[j + h - 2];
        xh += std::pow(r, static_cast<double>(ell - h + 1)) * s.x[ell - 1];
        out.x[h - 1] = xh;
    }
    return out;
}

double recurrence_mass(const RecurrenceState &s) {
    const double nm1 = static_cast<double>(s.n) - 1.0;
    // start state and group 1 share x_1
    double mass = (1.0 + nm1) * s.x[0];
    double mult = nm1;
    for (std::size_t h = 2; h <= s.ell; ++h) {
        mult *= nm1;
        mass += mult * s.x[h - 1];
    }
    return mass;
}

double recurrence_event(std::size_t n, std::size_t ell, std::size_t k) {
    if (n < 2 || ell < 1)
        throw std::invalid_argument("recurrence_event: need n >= 2, ell >= 1");
    if (k == 0)
        return 0.0;
    RecurrenceState s = recurrence_initial(n, ell);
    while (s.k < k)
        s = recurrence_step(s);
    return std::pow(static_cast<double>(n) - 1.0, static_cast<double>(ell)) * s.x[ell - 1];
}

double closed_form_m3(std::size_t n, std::size_t k) {
    if (n < 2)
        throw std::invalid_argument("closed_form_m3: n must be at least 2");
    if (k <= 2)
        return 0.0;
    const double nd = static_cast<double>(n);
    const double a = (2.0 * nd - 2.0) / (nd * nd);
    const double b = (nd - 1.0) * (nd - 1.0);
    const double decay = std::pow(a, static_cast<double>(k - 2));
    return (nd - 1.0) / nd * (1.0 - (decay * b + 1.0) / (b + 1.0));
}

ShortcutIsolation shortcut_isolation_m3(std::size_t n, std::size_t t) {
    if (n < 2)
        throw std::invalid_argument("shortcut_isolation_m3: n must be at least 2");
    if (t < 4)
        throw std::invalid_argument("shortcut_isolation_m3: t must be at least 4");
    const double lo = closed_form_m3(n, t - 1);
    const double hi = closed_form_m3(n, t);
    return ShortcutIsolation{0.5 * (lo + hi), 0.5 * (hi - lo)};
}

} // namespace lqfa
