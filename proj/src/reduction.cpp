#include "minflip/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace minflip {

ReductionParams ReductionParams::make(ExtendedWeight alpha, ExtendedWeight beta) {
    const std::pair<const char*, ExtendedWeight> checks[] = {{"alpha", alpha}, {"beta", beta}};
    for (const auto& [name, w] : checks) {
        if (w.is_neg_infinity() || (w.is_finite() && w.value() <= 0))
            throw ValidationError(std::string(name) + " must be a positive integer or inf");
    }
    if (alpha.is_pos_infinity() && beta.is_pos_infinity())
        throw ValidationError("alpha and beta must not both be inf");
    const ExtendedWeight g = std::min(alpha, beta);
    return ReductionParams{alpha, beta, g.value()};
}

ReductionMap reduce_rti_to_edit(const RtiInstance& inst, const ReductionParams& params) {
    std::vector<std::string> characters;
    characters.reserve(inst.triplets.size());
    for (std::size_t i = 0; i < inst.triplets.size(); ++i)
        characters.push_back(std::to_string(i + 1));
    DraftGraph h(std::move(characters), inst.species);
    const ExtendedWeight minus_alpha =
        params.alpha.is_pos_infinity() ? ExtendedWeight::neg_infinity()
                                       : ExtendedWeight(-params.alpha.value());
    for (std::uint32_t c = 0; c < inst.triplets.size(); ++c) {
        const auto& t = inst.triplets[c];
        h.set_weight(c, *h.species_index(t.x), params.beta);
        h.set_weight(c, *h.species_index(t.y), params.beta);
        h.set_weight(c, *h.species_index(t.z), minus_alpha);
    }
    std::optional<long long> budget;
    if (inst.budget) budget = params.gamma * *inst.budget;
    return ReductionMap{inst, params, EditInstance::make(std::move(h), budget), inst.triplets};
}

std::pair<Phylogeny, long long> lift_edition_to_phylogeny(const ReductionMap& map,
                                                          const BipartiteGraph& g) {
    const DraftGraph& h = map.target.graph;
    Phylogeny t = build_tg(g);  // throws if g is not M-free
    const ExtendedWeight d = delta(g, h);
    const long long max_unfit = static_cast<long long>(map.character_triplets.size());
    const long long bound = d.is_finite() ? std::min(max_unfit, d.value() / map.params.gamma)
                                          : max_unfit;
    return {std::move(t), bound};
}

BipartiteGraph lift_phylogeny_to_edition(const ReductionMap& map, const Phylogeny& T) {
    const DraftGraph& h = map.target.graph;
    std::vector<std::string> h_names = h.species();
    std::sort(h_names.begin(), h_names.end());
    if (h_names != T.species())
        throw ValidationError("lift_phylogeny_to_edition: species sets differ");

    const bool alpha_le_beta = map.params.alpha <= map.params.beta;
    BipartiteGraph g(h.characters(), h.species());
    for (std::uint32_t c = 0; c < map.character_triplets.size(); ++c) {
        const auto& t = map.character_triplets[c];
        std::vector<std::string> chosen;
        if (fits(t, T)) {
            // First witness cluster in canonical order.
            const std::uint32_t xi = *T.species_index(t.x);
            const std::uint32_t yi = *T.species_index(t.y);
            const std::uint32_t zi = *T.species_index(t.z);
            for (const auto& cluster : T.clusters()) {
                const bool hx = std::binary_search(cluster.begin(), cluster.end(), xi);
                const bool hy = std::binary_search(cluster.begin(), cluster.end(), yi);
                const bool hz = std::binary_search(cluster.begin(), cluster.end(), zi);
                if (hx && hy && !hz) {
                    chosen = T.cluster_names(cluster);
                    break;
                }
            }
        } else if (alpha_le_beta) {
            chosen = T.species();
        } else {
            chosen = {t.x};
        }
        for (const auto& name : chosen) g.set_edge(c, *g.species_index(name), true);
    }
    return g;
}

std::string ReductionReport::to_text() const {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream out;
    out << "gamma: " << gamma << "\n"
        << "opt_rti: " << opt_rti << "\n"
        << "opt_edit: " << opt_edit.str() << "\n"
        << "opt_equality: " << yn(opt_equality) << "\n"
        << "lift_phylogeny: " << yn(lift_phylogeny_ok) << "\n"
        << "lift_edition: " << yn(lift_edition_ok) << "\n"
        << "decision_equivalence: " << yn(decision_equivalence) << "\n"
        << "pass: " << yn(pass) << "\n";
    return out.str();
}

ReductionReport verify_reduction(const RtiInstance& inst, const ReductionParams& params,
                                 const SolverCaps& caps) {
    ReductionReport report;
    report.gamma = params.gamma;

    auto [best_tree, opt_rti] = min_rti_bruteforce(inst, caps.max_species);
    report.opt_rti = opt_rti;

    const ReductionMap map = reduce_rti_to_edit(inst, params);
    EditSolution sol = exact_min_edit(map.target.graph, caps);
    report.opt_edit = sol.cost;
    report.opt_equality = sol.cost == ExtendedWeight(params.gamma * opt_rti);

    // Phylogeny -> edition: cost exactly gamma times the unfit count.
    const BipartiteGraph lifted = lift_phylogeny_to_edition(map, best_tree);
    report.lift_phylogeny_ok =
        is_m_free(lifted) && is_perfect_phylogeny(lifted, best_tree) &&
        delta(lifted, map.target.graph) ==
            ExtendedWeight(params.gamma * rti_cost(best_tree, inst.triplets));

    // Edition -> phylogeny: unfit count within the delta/gamma bound.
    auto [tree, bound] = lift_edition_to_phylogeny(map, sol.edition);
    report.lift_edition_ok = rti_cost(tree, inst.triplets) <= bound;

    // Budget sweep: accepting k triplet misses is accepting gamma*k flips.
    report.decision_equivalence = true;
    for (long long k = 0; k <= static_cast<long long>(inst.triplets.size()); ++k) {
        const bool rti_yes = opt_rti <= k;
        const bool edit_yes = sol.cost <= ExtendedWeight(params.gamma * k);
        if (rti_yes != edit_yes) report.decision_equivalence = false;
    }

    report.pass = report.opt_equality && report.lift_phylogeny_ok && report.lift_edition_ok &&
                  report.decision_equivalence;
    return report;
}

}  // namespace minflip
