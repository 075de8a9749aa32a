#include "minflip/solvers.hpp"

#include <algorithm>
#include <array>

namespace minflip {

std::string_view weight_range_name(WeightRange r) {
    switch (r) {
        case WeightRange::AllNonnegative: return "all-nonnegative";
        case WeightRange::AllNonpositive: return "all-nonpositive";
        case WeightRange::HardOnly: return "hard-only";
        case WeightRange::HardAndJoker: return "hard-and-joker";
        case WeightRange::JokerFree: return "joker-free";
        case WeightRange::General: return "general";
    }
    return "?";
}

WeightRange classify_range(const DraftGraph& h) {
    bool any_negative = false, any_positive = false, any_zero = false, any_finite_nonzero = false;
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s) {
            const ExtendedWeight w = h.weight(c, s);
            if (w < ExtendedWeight(0)) any_negative = true;
            if (w > ExtendedWeight(0)) any_positive = true;
            if (w == ExtendedWeight(0)) any_zero = true;
            if (w.is_finite() && w != ExtendedWeight(0)) any_finite_nonzero = true;
        }
    if (!any_negative) return WeightRange::AllNonnegative;
    if (!any_positive) return WeightRange::AllNonpositive;
    if (!any_finite_nonzero && !any_zero) return WeightRange::HardOnly;
    if (!any_finite_nonzero) return WeightRange::HardAndJoker;
    if (!any_zero) return WeightRange::JokerFree;
    return WeightRange::General;
}

EditInstance EditInstance::make(DraftGraph graph, std::optional<long long> budget) {
    if (budget && *budget < 0)
        throw ValidationError("edit budget must be non-negative");
    return EditInstance{std::move(graph), budget};
}

std::optional<EditSolution> solve_trivial(const DraftGraph& h) {
    bool has_edge = false, has_non_edge = false;
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s) {
            const CellKind kind = h.classify(c, s);
            has_edge |= kind == CellKind::Edge;
            has_non_edge |= kind == CellKind::NonEdge;
        }
    if (!has_non_edge)
        return EditSolution{BipartiteGraph::complete(h.characters(), h.species()),
                            ExtendedWeight(0), true};
    if (!has_edge)
        return EditSolution{BipartiteGraph(h.characters(), h.species()), ExtendedWeight(0), true};
    return std::nullopt;
}

std::optional<EditSolution> solve_hard_only(const DraftGraph& h) {
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s)
            if (!h.weight(c, s).is_infinite())
                throw ValidationError("solve_hard_only: weight range must be within {-inf, +inf}");
    BipartiteGraph g = h.sign_induced_edition();
    if (!is_m_free(g)) return std::nullopt;
    return EditSolution{std::move(g), ExtendedWeight(0), true};
}

namespace {

// One branching node's view of the search.
struct BranchState {
    const DraftGraph& draft;
    BipartiteGraph edition;
    std::vector<std::uint8_t> frozen;  // per cell, row-major

    std::size_t cell(std::uint32_t c, std::uint32_t s) const {
        return static_cast<std::size_t>(c) * draft.num_species() + s;
    }
    void flip(std::uint32_t c, std::uint32_t s) {
        edition.set_edge(c, s, !edition.has_edge(c, s));
    }
};

struct ScanResult {
    std::optional<MQuintuple> least;   // least M-quintuple, if any
    bool feasible = true;              // false: some M has no flippable cell
    long long lower_bound = 0;         // admissible bound on remaining flip cost
};

std::array<std::pair<std::uint32_t, std::uint32_t>, 6> quintuple_cells(const MQuintuple& m) {
    // Branch order: the four edge deletions, then the two insertions.
    return {{{m.c, m.s}, {m.c, m.sp}, {m.cp, m.sp}, {m.cp, m.spp}, {m.c, m.spp}, {m.cp, m.s}}};
}

// Finds the least M-quintuple and greedily packs cell-disjoint quintuples,
// each contributing its cheapest unfrozen finite flip. Disjointness makes
// the sum admissible.
ScanResult scan_quintuples(const BranchState& st) {
    ScanResult res;
    const auto& g = st.edition;
    const std::uint32_t nc = static_cast<std::uint32_t>(g.num_characters());
    std::vector<std::vector<std::uint32_t>> nbr(nc);
    for (std::uint32_t c = 0; c < nc; ++c) nbr[c] = g.neighborhood(c);
    std::vector<std::uint8_t> used(st.draft.num_cells(), 0);
    for (std::uint32_t c = 0; c < nc; ++c) {
        for (std::uint32_t cp = 0; cp < nc; ++cp) {
            std::optional<std::uint32_t> s, sp, spp;
            std::size_t i = 0, j = 0;
            const auto& a = nbr[c];
            const auto& b = nbr[cp];
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) { if (!s) s = a[i]; ++i; }
                else if (b[j] < a[i]) { if (!spp) spp = b[j]; ++j; }
                else { if (!sp) sp = a[i]; ++i; ++j; }
            }
            if (!s && i < a.size()) s = a[i];
            if (!spp && j < b.size()) spp = b[j];
            if (!(s && sp && spp)) continue;
            const MQuintuple m{*s, c, *sp, cp, *spp};
            if (!res.least) res.least = m;
            const auto cells = quintuple_cells(m);
            bool disjoint = true;
            for (auto [qc, qs] : cells) disjoint &= used[st.cell(qc, qs)] == 0;
            if (!disjoint) continue;
            std::optional<long long> cheapest;
            for (auto [qc, qs] : cells) {
                used[st.cell(qc, qs)] = 1;
                if (st.frozen[st.cell(qc, qs)]) continue;
                const ExtendedWeight w = st.draft.weight(qc, qs).abs();
                if (!w.is_finite()) continue;
                if (!cheapest || w.value() < *cheapest) cheapest = w.value();
            }
            if (!cheapest) {
                res.feasible = false;
                return res;
            }
            res.lower_bound += *cheapest;
        }
    }
    return res;
}

bool branch(BranchState& st, long long budget) {
    const ScanResult scan = scan_quintuples(st);
    if (!scan.least) return true;
    if (!scan.feasible || scan.lower_bound > budget) return false;
    for (auto [c, s] : quintuple_cells(*scan.least)) {
        const std::size_t cell = st.cell(c, s);
        if (st.frozen[cell]) continue;
        const ExtendedWeight w = st.draft.weight(c, s).abs();
        if (!w.is_finite() || w.value() > budget) continue;
        st.flip(c, s);
        st.frozen[cell] = 1;
        if (branch(st, budget - w.value())) return true;
        st.frozen[cell] = 0;
        st.flip(c, s);
    }
    return false;
}

}  // namespace

std::optional<EditSolution> fpt_edit(const DraftGraph& h, long long k) {
    if (k < 0) throw ValidationError("fpt_edit: budget must be non-negative");
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s)
            if (h.classify(c, s) == CellKind::Joker)
                throw ValidationError("fpt_edit: draft-graph must be joker-free");
    BranchState st{h, h.sign_induced_edition(),
                   std::vector<std::uint8_t>(h.num_cells(), 0)};
    if (!branch(st, k)) return std::nullopt;
    ExtendedWeight cost = delta(st.edition, h);
    return EditSolution{std::move(st.edition), cost, false};
}

namespace {

DraftGraph residual_for_assignment(const DraftGraph& h,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& jokers,
                                   std::uint64_t assignment) {
    DraftGraph residual = h;
    for (std::size_t b = 0; b < jokers.size(); ++b) {
        auto [c, s] = jokers[b];
        const bool edge = (assignment >> b) & 1;
        residual.set_weight(c, s,
                            edge ? ExtendedWeight::pos_infinity() : ExtendedWeight::neg_infinity());
    }
    return residual;
}

}  // namespace

EditSolution exact_min_edit(const DraftGraph& h, const SolverCaps& caps) {
    if (auto trivial = solve_trivial(h)) return *std::move(trivial);
    if (classify_range(h) == WeightRange::HardOnly) {
        if (auto sol = solve_hard_only(h)) return *std::move(sol);
        const BipartiteGraph forced = h.sign_induced_edition();
        const auto witness = find_m_quintuple(forced);
        std::string detail = witness ? " (" + witness->str(forced) + ")" : "";
        throw InfeasibleError(
            "infeasible hard constraints: the forced edition contains an M-quintuple" + detail);
    }

    if (static_cast<long long>(h.num_cells()) > caps.max_cells)
        throw CapExceededError("exact_min_edit: " + std::to_string(h.num_cells()) +
                               " cells exceed the cap of " + std::to_string(caps.max_cells));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> jokers;
    long long finite_total = 0;
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s) {
            const ExtendedWeight w = h.weight(c, s);
            if (w == ExtendedWeight(0)) jokers.emplace_back(c, s);
            else if (w.is_finite()) finite_total += w.abs().value();
        }
    if (static_cast<long long>(jokers.size()) > std::min<long long>(caps.max_jokers, 62))
        throw CapExceededError("exact_min_edit: " + std::to_string(jokers.size()) +
                               " joker cells exceed the cap of " +
                               std::to_string(caps.max_jokers));

    const std::uint64_t num_assignments = std::uint64_t{1} << jokers.size();
    // Iterative deepening; the first budget with a hit is the optimum. Every
    // finite-cost edition conflicts only on finite cells, so finite_total
    // bounds the optimum of every feasible instance.
    for (long long k = 0; k <= finite_total; ++k) {
        std::optional<EditSolution> best;
        std::string best_key;
        for (std::uint64_t a = 0; a < num_assignments; ++a) {
            const DraftGraph residual = residual_for_assignment(h, jokers, a);
            auto sol = fpt_edit(residual, k);
            if (!sol) continue;
            // All editions of cost 0 agree outside the jokers, and the
            // all-non-edge assignment serializes least among them.
            if (k == 0 && a == 0)
                return EditSolution{std::move(sol->edition), ExtendedWeight(0), true};
            std::string key = sol->edition.serialize();
            if (!best || key < best_key) {
                best_key = std::move(key);
                best = std::move(sol);
            }
        }
        if (best) {
            const ExtendedWeight cost = delta(best->edition, h);
            return EditSolution{std::move(best->edition), cost, true};
        }
    }
    throw InfeasibleError("infeasible hard constraints: no finite-cost M-free edition exists");
}

std::pair<Phylogeny, ExtendedWeight> supertree_of(const DraftGraph& h, const SolverCaps& caps) {
    EditSolution sol = exact_min_edit(h, caps);
    return {build_tg(sol.edition), sol.cost};
}

}  // namespace minflip
