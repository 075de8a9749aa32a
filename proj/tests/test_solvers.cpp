#include <algorithm>

#include "doctest.h"
#include "minflip/solvers.hpp"
#include "oracles.hpp"

using namespace minflip;
namespace mt = minflip::testing;

namespace {

DraftGraph uniform_draft(std::uint32_t nc, std::uint32_t ns, ExtendedWeight w) {
    std::vector<std::string> characters;
    for (std::uint32_t c = 0; c < nc; ++c) characters.push_back("c" + std::to_string(c + 1));
    DraftGraph out(std::move(characters), mt::species_names(ns));
    for (std::uint32_t c = 0; c < nc; ++c)
        for (std::uint32_t s = 0; s < ns; ++s) out.set_weight(c, s, w);
    return out;
}

// +1 on the four edges of one M, -1 on its two non-edges.
DraftGraph single_m_draft() {
    DraftGraph h({"c1", "c2"}, {"s1", "s2", "s3"});
    h.set_weight(0, 0, ExtendedWeight(1));
    h.set_weight(0, 1, ExtendedWeight(1));
    h.set_weight(0, 2, ExtendedWeight(-1));
    h.set_weight(1, 0, ExtendedWeight(-1));
    h.set_weight(1, 1, ExtendedWeight(1));
    h.set_weight(1, 2, ExtendedWeight(1));
    return h;
}

DraftGraph hard_crossing_draft() {
    DraftGraph h({"c1", "c2"}, {"s1", "s2", "s3"});
    h.set_weight(0, 0, ExtendedWeight::pos_infinity());
    h.set_weight(0, 1, ExtendedWeight::pos_infinity());
    h.set_weight(0, 2, ExtendedWeight::neg_infinity());
    h.set_weight(1, 0, ExtendedWeight::neg_infinity());
    h.set_weight(1, 1, ExtendedWeight::pos_infinity());
    h.set_weight(1, 2, ExtendedWeight::pos_infinity());
    return h;
}

std::size_t edge_difference(const BipartiteGraph& a, const BipartiteGraph& b) {
    std::size_t diff = 0;
    for (std::uint32_t c = 0; c < a.num_characters(); ++c)
        for (std::uint32_t s = 0; s < a.num_species(); ++s)
            diff += a.has_edge(c, s) != b.has_edge(c, s);
    return diff;
}

}  // namespace

TEST_CASE("classify_range picks the most specific tag in order") {
    auto range_of = [](std::vector<ExtendedWeight> ws) {
        DraftGraph h({"c1"}, mt::species_names(static_cast<std::uint32_t>(ws.size())));
        for (std::uint32_t s = 0; s < ws.size(); ++s) h.set_weight(0, s, ws[s]);
        return classify_range(h);
    };
    CHECK(range_of({ExtendedWeight(1), ExtendedWeight(1)}) == WeightRange::AllNonnegative);
    CHECK(range_of({ExtendedWeight(0), ExtendedWeight(2), ExtendedWeight::pos_infinity()}) ==
          WeightRange::AllNonnegative);
    CHECK(range_of({ExtendedWeight(-1), ExtendedWeight(0)}) == WeightRange::AllNonpositive);
    CHECK(range_of({ExtendedWeight::neg_infinity(), ExtendedWeight::pos_infinity()}) ==
          WeightRange::HardOnly);
    CHECK(range_of({ExtendedWeight::neg_infinity(), ExtendedWeight(0),
                    ExtendedWeight::pos_infinity()}) == WeightRange::HardAndJoker);
    CHECK(range_of({ExtendedWeight(-1), ExtendedWeight(1)}) == WeightRange::JokerFree);
    CHECK(range_of({ExtendedWeight(-1), ExtendedWeight::pos_infinity()}) ==
          WeightRange::JokerFree);
    CHECK(range_of({ExtendedWeight(-1), ExtendedWeight(0), ExtendedWeight(1)}) ==
          WeightRange::General);
    CHECK(classify_range(DraftGraph({}, {"s1"})) == WeightRange::AllNonnegative);
}

TEST_CASE("solve_trivial") {
    SUBCASE("no non-edge: the complete graph is free") {
        DraftGraph h({"c1", "c2"}, {"s1", "s2"});
        h.set_weight(0, 0, ExtendedWeight(0));
        h.set_weight(0, 1, ExtendedWeight(2));
        h.set_weight(1, 0, ExtendedWeight::pos_infinity());
        h.set_weight(1, 1, ExtendedWeight(2));
        const auto sol = solve_trivial(h);
        REQUIRE(sol);
        CHECK(sol->cost == ExtendedWeight(0));
        CHECK(sol->optimal);
        CHECK(sol->edition == BipartiteGraph::complete(h.characters(), h.species()));
    }
    SUBCASE("no edge: the empty graph is free") {
        const auto sol = solve_trivial(uniform_draft(2, 3, ExtendedWeight(-1)));
        REQUIRE(sol);
        CHECK(sol->cost == ExtendedWeight(0));
        CHECK(sol->edition.num_edges() == 0);
    }
    SUBCASE("mixed signs: not trivial") {
        CHECK_FALSE(solve_trivial(single_m_draft()));
    }
}

TEST_CASE("solve_hard_only") {
    SUBCASE("nested hard neighborhoods are feasible") {
        DraftGraph h({"c1", "c2"}, {"s1", "s2"});
        h.set_weight(0, 0, ExtendedWeight::pos_infinity());
        h.set_weight(0, 1, ExtendedWeight::pos_infinity());
        h.set_weight(1, 0, ExtendedWeight::pos_infinity());
        h.set_weight(1, 1, ExtendedWeight::neg_infinity());
        const auto sol = solve_hard_only(h);
        REQUIRE(sol);
        CHECK(sol->cost == ExtendedWeight(0));
        CHECK(delta(sol->edition, h) == ExtendedWeight(0));
    }
    SUBCASE("a hard M is infeasible") {
        CHECK_FALSE(solve_hard_only(hard_crossing_draft()));
    }
    SUBCASE("no characters is feasible") {
        CHECK(solve_hard_only(DraftGraph({}, {"s1", "s2"})));
    }
    SUBCASE("rejects finite weights") {
        CHECK_THROWS_AS(solve_hard_only(single_m_draft()), ValidationError);
    }
}

TEST_CASE("fpt_edit") {
    SUBCASE("an M-free draft needs no flips") {
        DraftGraph h({"c1"}, {"s1", "s2"});
        h.set_weight(0, 0, ExtendedWeight(1));
        h.set_weight(0, 1, ExtendedWeight(-1));
        const auto sol = fpt_edit(h, 0);
        REQUIRE(sol);
        CHECK(sol->cost == ExtendedWeight(0));
        CHECK(sol->edition == h.sign_induced_edition());
    }
    SUBCASE("the single-M draft needs exactly one flip") {
        const DraftGraph h = single_m_draft();
        CHECK_FALSE(fpt_edit(h, 0));
        const auto sol = fpt_edit(h, 1);
        REQUIRE(sol);
        CHECK(sol->cost == ExtendedWeight(1));
        CHECK(is_m_free(sol->edition));
        CHECK(edge_difference(sol->edition, h.sign_induced_edition()) == 1);
        CHECK(mt::edition_scan_min(h) == 1);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(fpt_edit(single_m_draft(), -1), ValidationError);
        CHECK_THROWS_AS(fpt_edit(uniform_draft(1, 1, ExtendedWeight(0)), 1), ValidationError);
    }
    SUBCASE("decisions agree with the exhaustive scan") {
        mt::Rng rng(53);
        for (int trial = 0; trial < 60; ++trial) {
            const std::uint32_t nc = 1 + rng.below(3);
            const std::uint32_t ns = 1 + rng.below(12 / nc);
            const DraftGraph h = mt::random_joker_free_draft(rng, nc, ns, true);
            const auto opt = mt::edition_scan_min(h);
            const long long limit = opt ? *opt + 1 : 3;
            for (long long k = 0; k <= limit; ++k) {
                const auto sol = fpt_edit(h, k);
                const bool expect = opt && *opt <= k;
                CHECK(sol.has_value() == expect);
                if (sol) {
                    CHECK(is_m_free(sol->edition));
                    CHECK(sol->cost == delta(sol->edition, h));
                    CHECK(sol->cost <= ExtendedWeight(k));
                }
            }
        }
    }
}

TEST_CASE("any M-free edition differs on one of the six quintuple cells") {
    mt::Rng rng(59);
    for (int trial = 0; trial < 60; ++trial) {
        const BipartiteGraph g = mt::random_graph(rng, 2, 3);
        const auto m = find_m_quintuple(g);
        if (!m) continue;
        const std::pair<std::uint32_t, std::uint32_t> cells[6] = {
            {m->c, m->s}, {m->c, m->sp}, {m->cp, m->sp},
            {m->cp, m->spp}, {m->c, m->spp}, {m->cp, m->s}};
        for (std::uint64_t mask = 0; mask < (1u << 6); ++mask) {
            BipartiteGraph other({"c1", "c2"}, {"s1", "s2", "s3"});
            for (std::size_t cell = 0; cell < 6; ++cell)
                other.set_edge(static_cast<std::uint32_t>(cell / 3),
                               static_cast<std::uint32_t>(cell % 3), (mask >> cell) & 1);
            if (!is_m_free(other)) continue;
            bool differs = false;
            for (auto [c, s] : cells) differs |= other.has_edge(c, s) != g.has_edge(c, s);
            CHECK(differs);
        }
    }
}

TEST_CASE("exact_min_edit") {
    SUBCASE("an M-free sign pattern costs nothing") {
        DraftGraph h({"c1"}, {"s1", "s2"});
        h.set_weight(0, 0, ExtendedWeight(2));
        h.set_weight(0, 1, ExtendedWeight(-2));
        const EditSolution sol = exact_min_edit(h);
        CHECK(sol.cost == ExtendedWeight(0));
        CHECK(sol.optimal);
    }
    SUBCASE("matches the exhaustive scan on random drafts") {
        mt::Rng rng(61);
        for (int trial = 0; trial < 40; ++trial) {
            const DraftGraph h = mt::random_joker_free_draft(rng, 1 + rng.below(3), 1 + rng.below(4),
                                                             true);
            const auto opt = mt::edition_scan_min(h);
            if (opt) {
                const EditSolution sol = exact_min_edit(h);
                CHECK(sol.cost == ExtendedWeight(*opt));
                CHECK(is_m_free(sol.edition));
                CHECK(delta(sol.edition, h) == sol.cost);
                CHECK(sol.optimal);
            } else {
                CHECK_THROWS_AS(exact_min_edit(h), InfeasibleError);
            }
        }
    }
    SUBCASE("matches the scan over all 65536 editions of 4x4 drafts") {
        mt::Rng rng(97);
        for (int trial = 0; trial < 8; ++trial) {
            const DraftGraph h = mt::random_joker_free_draft(rng, 4, 4, false);
            const auto opt = mt::edition_scan_min(h);
            REQUIRE(opt);
            CHECK(exact_min_edit(h).cost == ExtendedWeight(*opt));
        }
    }
    SUBCASE("jokered drafts agree with the scan too") {
        mt::Rng rng(67);
        for (int trial = 0; trial < 30; ++trial) {
            DraftGraph h = mt::random_joker_free_draft(rng, 2, 3, false);
            for (std::uint32_t c = 0; c < 2; ++c)
                for (std::uint32_t s = 0; s < 3; ++s)
                    if (rng.chance(1, 4)) h.set_weight(c, s, ExtendedWeight(0));
            const auto opt = mt::edition_scan_min(h);
            REQUIRE(opt);  // jokers or finite flips always allow some M-free edition
            CHECK(exact_min_edit(h).cost == ExtendedWeight(*opt));
        }
    }
    SUBCASE("hard infeasibility carries a witness") {
        try {
            exact_min_edit(hard_crossing_draft());
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(std::string(e.what()).find("M-quintuple") != std::string::npos);
        }
    }
    SUBCASE("caps are enforced") {
        SolverCaps caps;
        caps.max_cells = 4;
        CHECK_THROWS_AS(exact_min_edit(single_m_draft(), caps), CapExceededError);
        DraftGraph jokered({"c1", "c2"}, {"s1", "s2", "s3"});
        jokered.set_weight(0, 0, ExtendedWeight(1));
        jokered.set_weight(1, 2, ExtendedWeight(-1));
        SolverCaps joker_caps;
        joker_caps.max_jokers = 2;
        CHECK_THROWS_AS(exact_min_edit(jokered, joker_caps), CapExceededError);
    }
}

TEST_CASE("optimal cost scales with the weights and the edition is unchanged") {
    mt::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        const DraftGraph h = mt::random_joker_free_draft(rng, 2, 4, false);
        const EditSolution base = exact_min_edit(h);
        for (long long m : {2, 3}) {
            DraftGraph scaled(h.characters(), h.species());
            for (std::uint32_t c = 0; c < 2; ++c)
                for (std::uint32_t s = 0; s < 4; ++s)
                    scaled.set_weight(c, s, h.weight(c, s).scaled(m));
            const EditSolution sol = exact_min_edit(scaled);
            CHECK(sol.cost == base.cost.scaled(m));
            CHECK(sol.edition == base.edition);
        }
    }
}

TEST_CASE("supertree_of") {
    SUBCASE("all jokers give the star") {
        const auto [tree, cost] = supertree_of(uniform_draft(2, 3, ExtendedWeight(0)));
        CHECK(cost == ExtendedWeight(0));
        CHECK(tree == star_phylogeny(mt::species_names(3)));
    }
    SUBCASE("one character is always M-free") {
        DraftGraph h({"c1"}, {"a", "b", "c"});
        h.set_weight(0, 0, ExtendedWeight(1));
        h.set_weight(0, 1, ExtendedWeight(1));
        h.set_weight(0, 2, ExtendedWeight(-1));
        const auto [tree, cost] = supertree_of(h);
        CHECK(cost == ExtendedWeight(0));
        CHECK(tree == triplet_tree(ResolvedTriplet("a", "b", "c")));
    }
}
