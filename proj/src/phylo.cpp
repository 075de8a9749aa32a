#include "minflip/phylo.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace minflip {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out + "}";
}

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

// Sorted intersection size of two sorted index vectors.
std::size_t intersection_size(const Cluster& a, const Cluster& b) {
    std::size_t n = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

// Canonicalize: sort each cluster, sort the family, drop duplicates.
std::vector<Cluster> canonicalize(std::vector<Cluster> clusters) {
    for (auto& c : clusters) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(clusters.begin(), clusters.end(), cluster_less);
    clusters.erase(std::unique(clusters.begin(), clusters.end()), clusters.end());
    return clusters;
}

// Axiom check over index clusters (already canonical, all indices < n).
std::optional<std::string> check_index_clusters(const std::vector<std::string>& species,
                                                const std::vector<Cluster>& clusters) {
    const std::uint32_t n = static_cast<std::uint32_t>(species.size());
    auto has = [&](const Cluster& c) {
        return std::binary_search(clusters.begin(), clusters.end(), c, cluster_less);
    };
    if (!has(Cluster{}))
        return "missing mandated cluster: the empty set";
    Cluster full(n);
    for (std::uint32_t i = 0; i < n; ++i) full[i] = i;
    if (!has(full))
        return "missing mandated cluster: the full species set";
    for (std::uint32_t i = 0; i < n; ++i)
        if (!has(Cluster{i}))
            return "missing mandated cluster: singleton {" + species[i] + "}";
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        for (std::size_t b = a + 1; b < clusters.size(); ++b) {
            const std::size_t inter = intersection_size(clusters[a], clusters[b]);
            if (inter != 0 && inter != clusters[a].size() && inter != clusters[b].size()) {
                auto names = [&](const Cluster& c) {
                    std::vector<std::string> out;
                    for (auto i : c) out.push_back(species[i]);
                    return join_names(out);
                };
                return "laminarity violation between " + names(clusters[a]) + " and " +
                       names(clusters[b]);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

bool cluster_less(const Cluster& a, const Cluster& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::optional<std::uint32_t> Phylogeny::species_index(std::string_view name) const {
    auto it = std::lower_bound(species_.begin(), species_.end(), name);
    if (it == species_.end() || *it != name) return std::nullopt;
    return static_cast<std::uint32_t>(it - species_.begin());
}

bool Phylogeny::contains_cluster(const Cluster& sorted_indices) const {
    return std::binary_search(clusters_.begin(), clusters_.end(), sorted_indices, cluster_less);
}

std::vector<std::string> Phylogeny::cluster_names(const Cluster& c) const {
    std::vector<std::string> out;
    out.reserve(c.size());
    for (auto i : c) out.push_back(species_[i]);
    return out;
}

PhylogenyBuilder::PhylogenyBuilder(std::vector<std::string> sorted_species)
    : species_(std::move(sorted_species)) {
    if (!std::is_sorted(species_.begin(), species_.end()) ||
        std::adjacent_find(species_.begin(), species_.end()) != species_.end())
        throw ValidationError("PhylogenyBuilder: species must be sorted and unique");
}

Phylogeny PhylogenyBuilder::build(std::vector<Cluster> clusters) const {
    for (const auto& c : clusters)
        for (auto i : c)
            if (i >= species_.size())
                throw ValidationError("PhylogenyBuilder: cluster index out of range");
    Phylogeny t;
    t.species_ = species_;
    t.clusters_ = canonicalize(std::move(clusters));
    if (auto why = check_index_clusters(t.species_, t.clusters_))
        throw ValidationError("invalid phylogeny: " + *why);
    return t;
}

std::optional<std::string> check_phylogeny(const std::vector<std::string>& species,
                                           const std::vector<std::vector<std::string>>& clusters) {
    const auto names = sorted_unique(species);
    std::vector<Cluster> index_clusters;
    index_clusters.reserve(clusters.size());
    for (const auto& cluster : clusters) {
        Cluster c;
        c.reserve(cluster.size());
        for (const auto& name : cluster) {
            auto it = std::lower_bound(names.begin(), names.end(), name);
            if (it == names.end() || *it != name)
                return "cluster member '" + name + "' is not in the species set";
            c.push_back(static_cast<std::uint32_t>(it - names.begin()));
        }
        index_clusters.push_back(std::move(c));
    }
    return check_index_clusters(names, canonicalize(std::move(index_clusters)));
}

Phylogeny validate_phylogeny(std::vector<std::string> species,
                             const std::vector<std::vector<std::string>>& clusters) {
    if (auto why = check_phylogeny(species, clusters))
        throw ValidationError("invalid phylogeny: " + *why);
    Phylogeny t;
    t.species_ = sorted_unique(std::move(species));
    std::vector<Cluster> index_clusters;
    index_clusters.reserve(clusters.size());
    for (const auto& cluster : clusters) {
        Cluster c;
        for (const auto& name : cluster) {
            auto it = std::lower_bound(t.species_.begin(), t.species_.end(), name);
            c.push_back(static_cast<std::uint32_t>(it - t.species_.begin()));
        }
        index_clusters.push_back(std::move(c));
    }
    t.clusters_ = canonicalize(std::move(index_clusters));
    return t;
}

Phylogeny star_phylogeny(std::vector<std::string> species) {
    auto names = sorted_unique(std::move(species));
    const std::uint32_t n = static_cast<std::uint32_t>(names.size());
    std::vector<Cluster> clusters;
    clusters.emplace_back();
    Cluster full(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        full[i] = i;
        clusters.push_back(Cluster{i});
    }
    clusters.push_back(std::move(full));
    return PhylogenyBuilder(std::move(names)).build(std::move(clusters));
}

bool is_refinement(const Phylogeny& coarse, const Phylogeny& fine) {
    if (!coarse.same_species(fine))
        throw ValidationError("is_refinement: species sets differ");
    return std::includes(fine.clusters().begin(), fine.clusters().end(),
                         coarse.clusters().begin(), coarse.clusters().end(), cluster_less);
}

ResolvedTriplet::ResolvedTriplet(std::string x_, std::string y_, std::string z_)
    : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
    if (x == y || x == z || y == z)
        throw ValidationError("resolved triplet leaves must be pairwise distinct");
    if (y < x) std::swap(x, y);
}

std::string ResolvedTriplet::str() const { return x + " " + y + " | " + z; }

Phylogeny triplet_tree(const ResolvedTriplet& t) {
    return validate_phylogeny({t.x, t.y, t.z},
                              {{}, {t.x}, {t.y}, {t.z}, {t.x, t.y}, {t.x, t.y, t.z}});
}

bool fits(const ResolvedTriplet& t, const Phylogeny& T) {
    auto xi = T.species_index(t.x);
    auto yi = T.species_index(t.y);
    auto zi = T.species_index(t.z);
    if (!xi || !yi || !zi)
        throw ValidationError("fits: triplet leaf outside the species set");
    for (const auto& cluster : T.clusters()) {
        const bool hx = std::binary_search(cluster.begin(), cluster.end(), *xi);
        const bool hy = std::binary_search(cluster.begin(), cluster.end(), *yi);
        const bool hz = std::binary_search(cluster.begin(), cluster.end(), *zi);
        if (hx && hy && !hz) return true;
    }
    return false;
}

long long rti_cost(const Phylogeny& T, std::span<const ResolvedTriplet> R) {
    long long unfit = 0;
    for (const auto& t : R)
        if (!fits(t, T)) ++unfit;
    return unfit;
}

RtiInstance RtiInstance::make(std::vector<std::string> species,
                              std::vector<ResolvedTriplet> triplets,
                              std::optional<long long> budget) {
    RtiInstance inst;
    inst.species = sorted_unique(std::move(species));
    for (const auto& t : triplets)
        for (const auto& leaf : {t.x, t.y, t.z})
            if (!std::binary_search(inst.species.begin(), inst.species.end(), leaf))
                throw ValidationError("triplet leaf '" + leaf + "' is not in the species set");
    if (budget && *budget < 0)
        throw ValidationError("budget must be non-negative");
    inst.triplets = std::move(triplets);
    inst.budget = budget;
    return inst;
}

namespace {

// All set partitions of `items` into >= 2 blocks, canonical order: each
// element joins an existing block or opens a new one, lowest element
// leads. Blocks arrive ordered by their smallest element.
void for_each_partition(const std::vector<std::uint32_t>& items,
                        const std::function<void(const std::vector<Cluster>&)>& fn) {
    std::vector<Cluster> blocks;
    auto recurse = [&](auto&& self, std::size_t next) -> void {
        if (next == items.size()) {
            if (blocks.size() >= 2) fn(blocks);
            return;
        }
        // Index loop: deeper calls grow and shrink `blocks`.
        const std::size_t existing = blocks.size();
        for (std::size_t i = 0; i < existing; ++i) {
            blocks[i].push_back(items[next]);
            self(self, next + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({items[next]});
        self(self, next + 1);
        blocks.pop_back();
    };
    recurse(recurse, 0);
}

// Cluster families of every phylogeny on `leaves`, recursively: the leaf
// set itself plus, per top partition, the families of the block subtrees.
std::vector<std::vector<Cluster>> phylogeny_families(const std::vector<std::uint32_t>& leaves) {
    std::vector<std::vector<Cluster>> out;
    if (leaves.size() == 1) {
        out.push_back({Cluster{}, Cluster{leaves[0]}});
        return out;
    }
    for_each_partition(leaves, [&](const std::vector<Cluster>& blocks) {
        std::vector<std::vector<std::vector<Cluster>>> block_families;
        block_families.reserve(blocks.size());
        for (const auto& block : blocks) block_families.push_back(phylogeny_families(block));
        // Cartesian product across blocks, first block varying slowest.
        std::vector<std::size_t> pick(blocks.size(), 0);
        while (true) {
            std::vector<Cluster> family;
            family.push_back(leaves);
            for (std::size_t b = 0; b < blocks.size(); ++b)
                for (const auto& c : block_families[b][pick[b]]) family.push_back(c);
            out.push_back(std::move(family));
            std::size_t b = blocks.size();
            while (b > 0) {
                --b;
                if (++pick[b] < block_families[b].size()) break;
                pick[b] = 0;
                if (b == 0) return;
            }
        }
    });
    return out;
}

}  // namespace

void for_each_phylogeny(const std::vector<std::string>& species,
                        const std::function<void(const Phylogeny&)>& fn, std::size_t cap) {
    const auto names = sorted_unique(species);
    if (names.size() > cap)
        throw CapExceededError("enumerate_phylogenies: " + std::to_string(names.size()) +
                               " species exceeds the cap of " + std::to_string(cap));
    if (names.empty()) return;
    std::vector<std::uint32_t> leaves(names.size());
    for (std::uint32_t i = 0; i < leaves.size(); ++i) leaves[i] = i;
    const PhylogenyBuilder builder(names);
    std::set<std::vector<Cluster>> seen;
    for (auto& family : phylogeny_families(leaves)) {
        auto t = builder.build(std::move(family));
        if (seen.insert(t.clusters()).second) fn(t);
    }
}

std::vector<Phylogeny> enumerate_phylogenies(const std::vector<std::string>& species,
                                             std::size_t cap) {
    std::vector<Phylogeny> out;
    for_each_phylogeny(species, [&](const Phylogeny& t) { out.push_back(t); }, cap);
    return out;
}

std::pair<Phylogeny, long long> min_rti_bruteforce(const RtiInstance& inst, std::size_t cap) {
    std::optional<Phylogeny> best;
    long long best_cost = 0;
    for_each_phylogeny(inst.species, [&](const Phylogeny& t) {
        const long long cost = rti_cost(t, inst.triplets);
        if (!best || cost < best_cost) {
            best = t;
            best_cost = cost;
        }
    }, cap);
    if (!best) throw ValidationError("min_rti_bruteforce: empty species set");
    return {std::move(*best), best_cost};
}

std::vector<ResolvedTriplet> parse_triplet_lines(std::string_view text) {
    std::vector<ResolvedTriplet> out;
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (fields >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (tokens.size() != 4 || tokens[2] != "|")
            throw ParseError("triplet line " + std::to_string(lineno) +
                             ": expected `x y | z`, got: " + line);
        try {
            out.emplace_back(tokens[0], tokens[1], tokens[3]);
        } catch (const ValidationError& e) {
            throw ParseError("triplet line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

RtiInstance parse_rti_instance(std::string_view text, std::optional<long long> budget) {
    auto triplets = parse_triplet_lines(text);
    std::vector<std::string> species;
    for (const auto& t : triplets) {
        species.push_back(t.x);
        species.push_back(t.y);
        species.push_back(t.z);
    }
    return RtiInstance::make(std::move(species), std::move(triplets), budget);
}

}  // namespace minflip
