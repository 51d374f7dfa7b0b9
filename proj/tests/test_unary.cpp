#include "lqfa/unary.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace lqfa;

namespace {

UnaryDfa dfa(std::size_t t, std::size_t p, std::set<std::size_t> accept) {
    UnaryDfa d;
    d.t = t;
    d.p = p;
    d.accept = std::move(accept);
    d.validate();
    return d;
}

AssembledRecognizer assemble_capped(const UnaryDfa &d, std::size_t cap = 200000) {
    SynthesisParams ps = SynthesisParams::defaults(d, {});
    ps.dim_cap = cap;
    return assemble(d, ps);
}

} // namespace

TEST_CASE("dfa validation") {
    CHECK_THROWS_AS(dfa(1, 2, {3}), std::invalid_argument);
    UnaryDfa bad;
    bad.p = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("membership oracle") {
    const UnaryDfa all = dfa(0, 1, {0});
    for (std::size_t k = 0; k <= 20; ++k)
        CHECK(membership(all, k));

    const UnaryDfa d = dfa(2, 3, {0, 3});
    CHECK(membership(d, 0));
    CHECK_FALSE(membership(d, 1));
    CHECK(membership(d, 3));
    CHECK_FALSE(membership(d, 4));
    CHECK(membership(d, 6));

    // ultimately periodic law
    for (std::size_t k = d.t; k <= 50; ++k)
        CHECK(membership(d, k) == membership(d, k + d.p));

    const std::vector<bool> table = membership_table(d, 9);
    REQUIRE(table.size() == 10);
    CHECK(table[0]);
    CHECK(table[9]);
}

TEST_CASE("finite-part lift") {
    CHECK_THROWS_AS(lift_finite_part(dfa(0, 2, {0})), std::invalid_argument);
    CHECK(lift_finite_part(dfa(2, 3, {0, 3})) == std::vector<std::size_t>{0});
    CHECK(lift_finite_part(dfa(2, 3, {3})).empty());

    // restricted to lengths <= t the lifted residues reproduce membership
    const UnaryDfa d = dfa(3, 2, {1, 3, 4});
    const std::vector<std::size_t> res = lift_finite_part(d);
    for (std::size_t k = 0; k <= d.t; ++k) {
        const bool lifted = std::find(res.begin(), res.end(), k % (d.t + 1)) != res.end();
        CHECK(lifted == membership(d, k));
    }
}

TEST_CASE("periodic-part lift") {
    CHECK(lift_periodic_part(dfa(2, 3, {0, 3})) == std::vector<std::size_t>{0});
    CHECK(lift_periodic_part(dfa(2, 3, {0})).empty());

    // restricted to lengths >= t+1 the lifted residues reproduce membership
    const UnaryDfa d = dfa(2, 4, {1, 2, 4, 5});
    const std::vector<std::size_t> res = lift_periodic_part(d);
    for (std::size_t k = d.t + 1; k <= d.t + 1 + 3 * d.p; ++k) {
        const bool lifted = std::find(res.begin(), res.end(), k % d.p) != res.end();
        CHECK(lifted == membership(d, k));
    }
}

TEST_CASE("cyclic recognizer induces an exact 0/1 event") {
    const Lqfa all = build_periodic_moqfa(3, {0, 1, 2});
    for (std::size_t k = 0; k <= 8; ++k)
        CHECK(accept_probability(all, k) == doctest::Approx(1.0).epsilon(1e-12));

    const Lqfa mod3 = build_periodic_moqfa(3, {0});
    for (std::size_t k = 0; k <= 12; ++k) {
        const double p = accept_probability(mod3, k);
        if (k % 3 == 0)
            CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
        else
            CHECK(p <= 1e-12);
    }
    CHECK_THROWS_AS(build_periodic_moqfa(2, {2}), std::invalid_argument);
    CHECK_THROWS_AS(build_periodic_moqfa(0, {}), std::invalid_argument);
}

TEST_CASE("choose_n") {
    CHECK(choose_n(1) == 4);
    CHECK_THROWS_AS(choose_n(0), std::invalid_argument);
    for (std::size_t t = 1; t <= 12; ++t) {
        const std::size_t n = choose_n(t);
        CHECK(n <= 4 * t);
        CHECK(std::pow((double(n) - 1.0) / double(n), double(t + 1)) > 0.5);
        if (n > 2)
            CHECK(std::pow((double(n) - 2.0) / double(n - 1), double(t + 1)) <= 0.5);
    }
}

TEST_CASE("periodic-only assembly is deterministic and exact") {
    const UnaryDfa d = dfa(0, 3, {1});
    const AssembledRecognizer r = assemble_capped(d);
    CHECK(r.periodic_only);
    CHECK(r.bound == 1.0);
    CHECK(r.rho == doctest::Approx(0.5));
    for (std::size_t k = 0; k <= 12; ++k) {
        const double p = accept_probability(r.automaton, k);
        CHECK(p == doctest::Approx(membership(d, k) ? 1.0 : 0.0).epsilon(1e-12));
    }
    CHECK(verify(r, d).violations.empty());
}

TEST_CASE("empty language assembles to the constant-zero event") {
    const UnaryDfa d = dfa(0, 1, {});
    const AssembledRecognizer r = assemble_capped(d);
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(accept_probability(r.automaton, k) <= 1e-12);
    CHECK(verify(r, d).violations.empty());
}

TEST_CASE("sigma-star assembles with the bound satisfied everywhere") {
    const UnaryDfa d = dfa(1, 1, {0, 1});
    const AssembledRecognizer r = assemble_capped(d);
    CHECK_FALSE(r.periodic_only);
    for (std::size_t k = 0; k <= 12; ++k)
        CHECK(accept_probability(r.automaton, k) >= r.bound - 1e-9);
}

TEST_CASE("full assembly satisfies the claimed bounds") {
    const UnaryDfa d = dfa(2, 3, {0, 3});
    const AssembledRecognizer r = assemble_capped(d);
    CHECK(r.params.n == 5);
    CHECK(r.bound == doctest::Approx(std::pow(0.8, 3.0)));
    CHECK(r.lambda == 0.5);
    CHECK(r.rho == doctest::Approx(r.bound - 0.5));

    const EventTable t = event_table(r.automaton, 20);
    for (const auto &[k, p] : t.probabilities) {
        if (membership(d, k))
            CHECK(p >= r.bound - 1e-9);
        else
            CHECK(p <= 1.0 - r.bound + 1e-9);
        if (k <= d.t)
            CHECK(p == doctest::Approx(membership(d, k) ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("verify reports the claimed isolation") {
    const UnaryDfa d = dfa(1, 2, {0, 2});
    const AssembledRecognizer r = assemble_capped(d);
    const CutPointReport rep = verify(r, d);
    CHECK(rep.lambda == doctest::Approx(0.5));
    CHECK(rep.rho == doctest::Approx(r.bound - 0.5));
    CHECK(rep.violations.empty());
    CHECK(rep.min_accept >= r.bound - 1e-9);
    CHECK(rep.max_reject <= 1.0 - r.bound + 1e-9);

    AssembledRecognizer tight = r;
    tight.params.k_max = d.t + 2 * d.p - 1;
    CHECK_THROWS_AS(verify(tight, d), std::invalid_argument);
}

TEST_CASE("deterministic sub-events and inclusion-exclusion") {
    const UnaryDfa d = dfa(1, 2, {1, 2});
    const AssembledRecognizer r = assemble_capped(d);

    const std::vector<std::size_t> fin = lift_finite_part(d);
    const std::vector<std::size_t> per = lift_periodic_part(d);
    for (std::size_t k = 0; k <= 14; ++k) {
        const double pf = accept_probability(r.part_finite, k);
        const double pp = accept_probability(r.part_periodic, k);
        const bool fin_hit = std::find(fin.begin(), fin.end(), k % (d.t + 1)) != fin.end();
        const bool per_hit = std::find(per.begin(), per.end(), k % d.p) != per.end();
        CHECK(pf == doctest::Approx(fin_hit ? 1.0 : 0.0).epsilon(1e-12));
        CHECK(pp == doctest::Approx(per_hit ? 1.0 : 0.0).epsilon(1e-12));

        const double pt = accept_probability(r.part_a_t, k);
        const double pa = accept_probability(r.part_a_p, k);
        const double pl = accept_probability(r.automaton, k);
        CHECK(pl == doctest::Approx(pt + pa - pt * pa).epsilon(1e-9));
        // the finite and tail parts are disjoint languages
        const bool both_high = pt >= r.bound - 1e-9 && pa >= r.bound - 1e-9;
        CHECK_FALSE(both_high);
    }
}

TEST_CASE("assembly rejects parameters without isolation") {
    const UnaryDfa d = dfa(1, 1, {0});
    SynthesisParams ps = SynthesisParams::defaults(d, 2);
    CHECK_THROWS_AS(assemble(d, ps), std::invalid_argument);
}

TEST_CASE("assembly respects the dimension cap") {
    const UnaryDfa d = dfa(2, 3, {0, 3});
    SynthesisParams ps = SynthesisParams::defaults(d, {});
    ps.dim_cap = 1000;
    CHECK_THROWS_AS(assemble(d, ps), CapacityError);
}

TEST_CASE("default parameters") {
    const UnaryDfa d = dfa(2, 3, {0});
    const SynthesisParams ps = SynthesisParams::defaults(d, {});
    CHECK(ps.n == choose_n(2));
    CHECK(ps.k_max == 2 + 9 + 5);
    const SynthesisParams forced = SynthesisParams::defaults(d, 7);
    CHECK(forced.n == 7);
}
