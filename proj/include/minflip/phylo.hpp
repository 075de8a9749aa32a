#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minflip/errors.hpp"

namespace minflip {

// A set of species indices, sorted ascending.
using Cluster = std::vector<std::uint32_t>;

// Canonical cluster order: by size, then lexicographically on the index
// sequence. Species are stored sorted, so index order is name order.
bool cluster_less(const Cluster& a, const Cluster& b);

// A rooted phylogeny encoded as its cluster family: a laminar set of
// subsets of the species set that contains the empty set, every singleton
// and the full species set. Immutable after construction; every instance
// satisfies the four axioms.
class Phylogeny {
  public:
    const std::vector<std::string>& species() const { return species_; }
    const std::vector<Cluster>& clusters() const { return clusters_; }

    std::size_t num_species() const { return species_.size(); }
    std::optional<std::uint32_t> species_index(std::string_view name) const;

    bool contains_cluster(const Cluster& sorted_indices) const;
    std::vector<std::string> cluster_names(const Cluster& c) const;

    bool same_species(const Phylogeny& other) const { return species_ == other.species_; }
    bool operator==(const Phylogeny& other) const = default;

    friend Phylogeny validate_phylogeny(std::vector<std::string> species,
                                        const std::vector<std::vector<std::string>>& clusters);
    friend class PhylogenyBuilder;

  private:
    Phylogeny() = default;
    std::vector<std::string> species_;   // sorted, unique
    std::vector<Cluster> clusters_;      // canonical order, unique
};

// Builds phylogenies from index clusters over an already-sorted species
// vector. Used by the enumerator and the T_G construction; the result is
// validated like any other phylogeny.
class PhylogenyBuilder {
  public:
    explicit PhylogenyBuilder(std::vector<std::string> sorted_species);
    Phylogeny build(std::vector<Cluster> clusters) const;

  private:
    std::vector<std::string> species_;
};

// Checks the phylogeny axioms; returns a failure description or nullopt.
// Axioms: mandated clusters present (empty set, full set, singletons),
// every cluster a subset of the species set, and laminarity
// (X n Y in {0, X, Y} for all cluster pairs X, Y).
std::optional<std::string> check_phylogeny(const std::vector<std::string>& species,
                                           const std::vector<std::vector<std::string>>& clusters);

// Constructs a Phylogeny or throws ValidationError naming the failed axiom.
Phylogeny validate_phylogeny(std::vector<std::string> species,
                             const std::vector<std::vector<std::string>>& clusters);

// The phylogeny with only the mandated clusters.
Phylogeny star_phylogeny(std::vector<std::string> species);

// true iff coarse's clusters are all clusters of fine, i.e. fine can be
// contracted to coarse. Both phylogenies must share the species set.
bool is_refinement(const Phylogeny& coarse, const Phylogeny& fine);

// The rooted triplet xy|z: x and y grouped apart from z. Unordered in
// (x, y); the canonical form stores min(x, y) first.
struct ResolvedTriplet {
    std::string x, y, z;

    ResolvedTriplet(std::string x_, std::string y_, std::string z_);

    bool operator==(const ResolvedTriplet&) const = default;
    auto operator<=>(const ResolvedTriplet&) const = default;
    std::string str() const;
};

// The unique phylogeny on {x, y, z} having {x, y} as a cluster.
Phylogeny triplet_tree(const ResolvedTriplet& t);

// true iff some cluster X of T satisfies X n {x,y,z} = {x,y}.
bool fits(const ResolvedTriplet& t, const Phylogeny& T);

// Number of triplets of R (with multiplicity) that do not fit T.
long long rti_cost(const Phylogeny& T, std::span<const ResolvedTriplet> R);

// An instance of resolved-triplets inconsistency: species set, a multiset
// of triplets over it, and an optional budget.
struct RtiInstance {
    std::vector<std::string> species;       // sorted, unique
    std::vector<ResolvedTriplet> triplets;  // multiset; duplicates count
    std::optional<long long> budget;

    static RtiInstance make(std::vector<std::string> species,
                            std::vector<ResolvedTriplet> triplets,
                            std::optional<long long> budget = std::nullopt);
};

inline constexpr std::size_t kDefaultEnumerationCap = 6;

// Calls fn for every phylogeny on the given species, each exactly once, in
// a deterministic order. Generation recurses over canonical set partitions
// into >= 2 blocks; duplicates are removed by canonical cluster-set form.
void for_each_phylogeny(const std::vector<std::string>& species,
                        const std::function<void(const Phylogeny&)>& fn,
                        std::size_t cap = kDefaultEnumerationCap);

std::vector<Phylogeny> enumerate_phylogenies(const std::vector<std::string>& species,
                                             std::size_t cap = kDefaultEnumerationCap);

// Optimal phylogeny by exhaustive enumeration, ties broken by enumeration
// order. Returns the tree and its rti_cost.
std::pair<Phylogeny, long long> min_rti_bruteforce(const RtiInstance& inst,
                                                   std::size_t cap = kDefaultEnumerationCap);

// Triplet text format: one triplet per line, `x y | z`, whitespace
// separated. Blank lines are skipped. The species set is the sorted union
// of all leaves.
std::vector<ResolvedTriplet> parse_triplet_lines(std::string_view text);
RtiInstance parse_rti_instance(std::string_view text,
                               std::optional<long long> budget = std::nullopt);

}  // namespace minflip
