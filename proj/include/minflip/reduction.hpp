#pragma once

#include <string>
#include <utility>
#include <vector>

#include "minflip/phylo.hpp"
#include "minflip/solvers.hpp"

namespace minflip {

// Parameters of the triplet-inconsistency-to-edition reduction: weights
// -alpha / 0 / +beta with alpha, beta positive (possibly +inf but not
// both) and gamma = min(alpha, beta), always finite.
struct ReductionParams {
    ExtendedWeight alpha;
    ExtendedWeight beta;
    long long gamma;

    static ReductionParams make(ExtendedWeight alpha, ExtendedWeight beta);
};

// The reduced instance plus the character-to-triplet correspondence.
// Characters are named by 1-based triplet index; row c has weight beta at
// x_c and y_c, -alpha at z_c and 0 elsewhere. The target budget is
// gamma * k when the source carries a budget k.
struct ReductionMap {
    RtiInstance source;
    ReductionParams params;
    EditInstance target;
    std::vector<ResolvedTriplet> character_triplets;  // index i <-> character i+1
};

ReductionMap reduce_rti_to_edit(const RtiInstance& inst, const ReductionParams& params);

// From an M-free edition g of the reduced instance to a phylogeny: returns
// T_G(g) and the bound floor(delta(g, H) / gamma) on the number of
// non-fitting triplets (saturated to |R| when delta is infinite). Every
// triplet whose three cells are conflict-free fits the result.
std::pair<Phylogeny, long long> lift_edition_to_phylogeny(const ReductionMap& map,
                                                          const BipartiteGraph& g);

// From a phylogeny T for S to an edition of the reduced instance: each
// fitting triplet keeps its first witness cluster in canonical order as
// its neighborhood; each non-fitting triplet takes S when alpha <= beta
// and {x_c} otherwise. T is a perfect phylogeny of the result and
// delta(result, H) = gamma * rti_cost(T, R).
BipartiteGraph lift_phylogeny_to_edition(const ReductionMap& map, const Phylogeny& T);

// Oracle cross-check of the reduction on one instance: computes the
// brute-force triplet optimum and the exact edition optimum, verifies
// OPT_Edit = gamma * OPT_RTI, both lifting guarantees, and the decision
// equivalence for every budget from 0 to |R|.
struct ReductionReport {
    long long opt_rti = 0;
    ExtendedWeight opt_edit;
    long long gamma = 0;
    bool opt_equality = false;
    bool lift_phylogeny_ok = false;  // delta == gamma * unfit count
    bool lift_edition_ok = false;    // unfit count <= floor(delta / gamma)
    bool decision_equivalence = false;
    bool pass = false;

    // Line-oriented `key: value` text with a stable key order.
    std::string to_text() const;
};

ReductionReport verify_reduction(const RtiInstance& inst, const ReductionParams& params,
                                 const SolverCaps& caps = {});

}  // namespace minflip
