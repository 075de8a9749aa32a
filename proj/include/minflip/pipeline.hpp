#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minflip/bipartite.hpp"
#include "minflip/phylo.hpp"
#include "minflip/solvers.hpp"

namespace minflip {

// Parses one semicolon-terminated Newick tree. Internal node labels and
// branch lengths are accepted and ignored; leaf labels are the species.
Phylogeny parse_newick(std::string_view line);

// Canonical Newick: children ordered by decreasing cluster size, then by
// lexicographically least leaf. parse . serialize is the identity on
// cluster sets.
std::string serialize_newick(const Phylogeny& T);

// A list of input phylogenies over possibly different, overlapping leaf
// sets.
struct InputForest {
    std::vector<Phylogeny> trees;
    std::vector<std::string> union_species;  // sorted union of all leaf sets
};

// One Newick tree per line; blank lines are skipped.
InputForest parse_newick_forest(std::string_view text);

// Matrix representation of a forest: one character per non-trivial cluster
// (neither empty, nor a singleton, nor the tree's whole leaf set) of each
// input tree, named by 1-based index. Weight +1 inside the cluster, -1 on
// the rest of that tree's leaves, 0 (joker) on species the tree does not
// mention.
DraftGraph build_mrf_matrix(const InputForest& forest);

struct RunConfig {
    enum class Command { Check, Solve, Supertree, Reduce, Oracle, Verify };

    Command command = Command::Check;
    std::string input_path;
    std::string out_path;  // empty: artifacts go to stdout
    std::optional<ExtendedWeight> alpha;
    std::optional<ExtendedWeight> beta;
    std::optional<long long> budget;
    SolverCaps caps;
};

// Executes one CLI command. Returns the process exit status: 0 on
// success, 1 on infeasible (or a failed verification), 2 on usage, parse,
// I/O or cap errors. Diagnostics go to err with a distinct prefix per
// error family.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace minflip
