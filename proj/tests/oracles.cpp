#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace minflip::testing {

long long phylogeny_count_recurrence(int n) {
    static std::map<int, long long> memo;
    if (n <= 1) return 1;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    // Restricted-growth strings over [n]; element 0 stays in block 0.
    long long total = 0;
    std::vector<int> assign(n, 0);
    auto rec = [&](auto&& self, int i, int max_block) -> void {
        if (i == n) {
            const int blocks = max_block + 1;
            if (blocks < 2) return;
            std::vector<int> sizes(blocks, 0);
            for (int b : assign) ++sizes[b];
            long long prod = 1;
            for (int s : sizes) prod *= phylogeny_count_recurrence(s);
            total += prod;
            return;
        }
        for (int b = 0; b <= max_block + 1; ++b) {
            assign[i] = b;
            self(self, i + 1, std::max(max_block, b));
        }
    };
    rec(rec, 1, 0);
    memo[n] = total;
    return total;
}

std::optional<MQuintuple> quintuple_scan(const BipartiteGraph& g) {
    const std::uint32_t nc = static_cast<std::uint32_t>(g.num_characters());
    const std::uint32_t ns = static_cast<std::uint32_t>(g.num_species());
    for (std::uint32_t c = 0; c < nc; ++c)
        for (std::uint32_t cp = 0; cp < nc; ++cp)
            for (std::uint32_t s = 0; s < ns; ++s)
                for (std::uint32_t sp = 0; sp < ns; ++sp)
                    for (std::uint32_t spp = 0; spp < ns; ++spp)
                        if (g.has_edge(c, s) && g.has_edge(c, sp) && g.has_edge(cp, sp) &&
                            g.has_edge(cp, spp) && !g.has_edge(c, spp) && !g.has_edge(cp, s))
                            return MQuintuple{s, c, sp, cp, spp};
    return std::nullopt;
}

std::optional<long long> edition_scan_min(const DraftGraph& h) {
    const std::size_t cells = h.num_cells();
    if (cells > 24) throw std::logic_error("edition_scan_min: instance too large");
    const std::uint32_t ns = static_cast<std::uint32_t>(h.num_species());
    std::optional<long long> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        BipartiteGraph g(h.characters(), h.species());
        for (std::size_t cell = 0; cell < cells; ++cell)
            if ((mask >> cell) & 1)
                g.set_edge(static_cast<std::uint32_t>(cell / ns),
                           static_cast<std::uint32_t>(cell % ns), true);
        if (!is_m_free(g)) continue;
        const ExtendedWeight cost = delta(g, h);
        if (!cost.is_finite()) continue;
        if (!best || cost.value() < *best) best = cost.value();
    }
    return best;
}

BipartiteGraph random_graph(Rng& rng, std::uint32_t nc, std::uint32_t ns) {
    std::vector<std::string> characters, species;
    for (std::uint32_t c = 0; c < nc; ++c) characters.push_back("c" + std::to_string(c + 1));
    for (std::uint32_t s = 0; s < ns; ++s) species.push_back("s" + std::to_string(s + 1));
    BipartiteGraph g(std::move(characters), std::move(species));
    const std::uint32_t density = 20 + rng.below(61);  // percent
    for (std::uint32_t c = 0; c < nc; ++c)
        for (std::uint32_t s = 0; s < ns; ++s)
            g.set_edge(c, s, rng.chance(density, 100));
    return g;
}

DraftGraph random_joker_free_draft(Rng& rng, std::uint32_t nc, std::uint32_t ns,
                                   bool allow_infinite) {
    std::vector<std::string> characters, species;
    for (std::uint32_t c = 0; c < nc; ++c) characters.push_back("c" + std::to_string(c + 1));
    for (std::uint32_t s = 0; s < ns; ++s) species.push_back("s" + std::to_string(s + 1));
    DraftGraph h(std::move(characters), std::move(species));
    for (std::uint32_t c = 0; c < nc; ++c)
        for (std::uint32_t s = 0; s < ns; ++s) {
            ExtendedWeight w(0);
            if (allow_infinite && rng.chance(1, 15)) {
                w = rng.chance(1, 2) ? ExtendedWeight::pos_infinity()
                                     : ExtendedWeight::neg_infinity();
            } else {
                const long long magnitude = 1 + rng.below(2);
                w = ExtendedWeight(rng.chance(1, 2) ? magnitude : -magnitude);
            }
            h.set_weight(c, s, w);
        }
    return h;
}

namespace {

void random_partition_tree(Rng& rng, const Cluster& leaves, std::vector<Cluster>& clusters) {
    clusters.push_back(leaves);
    if (leaves.size() == 1) return;
    const std::uint32_t n = static_cast<std::uint32_t>(leaves.size());
    const std::uint32_t num_blocks = 2 + rng.below(n - 1);
    std::vector<Cluster> blocks;
    while (true) {
        blocks.assign(num_blocks, {});
        for (std::uint32_t leaf : leaves) blocks[rng.below(num_blocks)].push_back(leaf);
        if (std::none_of(blocks.begin(), blocks.end(),
                         [](const Cluster& b) { return b.empty(); }))
            break;
    }
    for (const auto& block : blocks) random_partition_tree(rng, block, clusters);
}

}  // namespace

Phylogeny random_phylogeny(Rng& rng, const std::vector<std::string>& species) {
    std::vector<std::string> names = species;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    Cluster all(names.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<Cluster> clusters;
    clusters.push_back({});
    random_partition_tree(rng, all, clusters);
    return PhylogenyBuilder(std::move(names)).build(std::move(clusters));
}

std::vector<std::string> species_names(std::uint32_t n) {
    std::vector<std::string> out;
    for (std::uint32_t i = 1; i <= n; ++i) out.push_back("s" + std::to_string(i));
    return out;
}

}  // namespace minflip::testing
