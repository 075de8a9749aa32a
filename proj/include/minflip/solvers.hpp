#pragma once

#include <optional>
#include <string>
#include <utility>

#include "minflip/bipartite.hpp"

namespace minflip {

// Weight-range taxonomy, most specific tag first. classify_range tests the
// tags in declaration order and returns the first that applies.
enum class WeightRange {
    AllNonnegative,  // no non-edge: every weight >= 0
    AllNonpositive,  // no edge: every weight <= 0
    HardOnly,        // subset of {-inf, +inf}
    HardAndJoker,    // subset of {-inf, 0, +inf}
    JokerFree,       // no zero weight
    General,
};

std::string_view weight_range_name(WeightRange r);
WeightRange classify_range(const DraftGraph& h);

// An instance of the edition decision problem.
struct EditInstance {
    DraftGraph graph;
    std::optional<long long> budget;  // finite, >= 0 when present

    static EditInstance make(DraftGraph graph, std::optional<long long> budget = std::nullopt);
};

struct EditSolution {
    BipartiteGraph edition;  // M-free
    ExtendedWeight cost;     // delta(edition, instance)
    bool optimal = false;
};

// Size caps for the exact paths.
struct SolverCaps {
    long long max_cells = 64;   // |C|*|S| bound for the branching paths
    int max_jokers = 20;        // bound on 2^j joker assignment enumeration
    std::size_t max_species = kDefaultEnumerationCap;  // phylogeny enumeration
};

// The no-non-edge / no-edge cases: returns the complete (resp. empty)
// edition at cost 0, or nullopt when weights of both signs occur.
std::optional<EditSolution> solve_trivial(const DraftGraph& h);

// Weight range within {-inf, +inf}: the only finite-cost edition has edges
// exactly at the +inf cells. Returns it iff it is M-free; nullopt means no
// finite-cost edition exists.
std::optional<EditSolution> solve_hard_only(const DraftGraph& h);

// Bounded-search decision procedure for joker-free drafts: is there an
// M-free edition of h with cost at most k? Starts from the sign-induced
// edition and branches six ways on the least M-quintuple (delete one of
// the four edges or insert one of the two non-edges), freezing each
// flipped cell along its branch and pruning with a greedy packing lower
// bound. Returns a witness edition or nullopt.
std::optional<EditSolution> fpt_edit(const DraftGraph& h, long long k);

// Provably optimal edition. Dispatch: trivial ranges, then hard-only, then
// iterative deepening over fpt_edit with joker cells expanded by explicit
// assignment enumeration. Cost ties are broken by the least canonical
// serialization of the edition. Throws CapExceededError or, when hard
// constraints admit no finite-cost edition, InfeasibleError.
EditSolution exact_min_edit(const DraftGraph& h, const SolverCaps& caps = {});

// T_G of an optimal edition together with the optimal cost.
std::pair<Phylogeny, ExtendedWeight> supertree_of(const DraftGraph& h,
                                                  const SolverCaps& caps = {});

}  // namespace minflip
