#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minflip/errors.hpp"
#include "minflip/extended_weight.hpp"
#include "minflip/phylo.hpp"

namespace minflip {

// An unweighted bipartite graph between characters and species. Characters
// and species keep their given order; edges are cells of the C x S grid.
class BipartiteGraph {
  public:
    BipartiteGraph(std::vector<std::string> characters, std::vector<std::string> species);

    static BipartiteGraph complete(std::vector<std::string> characters,
                                   std::vector<std::string> species);

    std::size_t num_characters() const { return characters_.size(); }
    std::size_t num_species() const { return species_.size(); }
    const std::vector<std::string>& characters() const { return characters_; }
    const std::vector<std::string>& species() const { return species_; }

    std::optional<std::uint32_t> character_index(std::string_view name) const;
    std::optional<std::uint32_t> species_index(std::string_view name) const;

    bool has_edge(std::uint32_t c, std::uint32_t s) const { return adj_[cell(c, s)] != 0; }
    void set_edge(std::uint32_t c, std::uint32_t s, bool present) { adj_[cell(c, s)] = present; }

    // Species indices adjacent to character c, ascending.
    std::vector<std::uint32_t> neighborhood(std::uint32_t c) const;

    std::size_t num_edges() const;

    bool operator==(const BipartiteGraph&) const = default;

    // Graph TSV: `#graph<TAB>s_1<TAB>...` then one `name<TAB>1/0...` row
    // per character.
    std::string serialize() const;
    static BipartiteGraph parse(std::string_view text);

  private:
    std::size_t cell(std::uint32_t c, std::uint32_t s) const {
        return static_cast<std::size_t>(c) * species_.size() + s;
    }
    std::vector<std::string> characters_, species_;
    std::vector<std::uint8_t> adj_;  // row-major
};

enum class CellKind { Edge, Joker, NonEdge };

// A bipartite draft-graph: every cell of C x S carries an extended-integer
// weight. Sign classifies the cell (>= 1 edge, 0 joker, <= -1 non-edge);
// magnitude is the edit cost.
class DraftGraph {
  public:
    // All weights start at 0 (joker).
    DraftGraph(std::vector<std::string> characters, std::vector<std::string> species);

    std::size_t num_characters() const { return characters_.size(); }
    std::size_t num_species() const { return species_.size(); }
    const std::vector<std::string>& characters() const { return characters_; }
    const std::vector<std::string>& species() const { return species_; }
    std::size_t num_cells() const { return weights_.size(); }

    std::optional<std::uint32_t> character_index(std::string_view name) const;
    std::optional<std::uint32_t> species_index(std::string_view name) const;

    ExtendedWeight weight(std::uint32_t c, std::uint32_t s) const { return weights_[cell(c, s)]; }
    void set_weight(std::uint32_t c, std::uint32_t s, ExtendedWeight w) { weights_[cell(c, s)] = w; }

    CellKind classify(std::uint32_t c, std::uint32_t s) const;

    // The edition with edges exactly at the positive cells.
    BipartiteGraph sign_induced_edition() const;

    bool operator==(const DraftGraph&) const = default;

    // Matrix TSV: `#matrix<TAB>s_1<TAB>...` then one
    // `name<TAB>w_1<TAB>...` row per character, each w a decimal integer,
    // `inf` or `-inf`.
    std::string serialize() const;
    static DraftGraph parse(std::string_view text);

  private:
    std::size_t cell(std::uint32_t c, std::uint32_t s) const {
        return static_cast<std::size_t>(c) * species_.size() + s;
    }
    std::vector<std::string> characters_, species_;
    std::vector<ExtendedWeight> weights_;  // row-major
};

// classify by name; throws on unknown character or species.
CellKind classify_cell(const DraftGraph& h, std::string_view character, std::string_view species);

// The five-vertex obstruction (s, c, s', c', s''): (c,s), (c,s'), (c',s'),
// (c',s'') are edges while (c,s''), (c',s) are not. The conditions force
// c != cp and pairwise distinct species; construction asserts both.
struct MQuintuple {
    std::uint32_t s, c, sp, cp, spp;

    static MQuintuple checked(const BipartiteGraph& g, std::uint32_t s, std::uint32_t c,
                              std::uint32_t sp, std::uint32_t cp, std::uint32_t spp);
    std::string str(const BipartiteGraph& g) const;
    bool operator==(const MQuintuple&) const = default;
};

// Least M-quintuple under the ordering (c, c', s, s', s'') over index
// order, or nullopt if the graph is M-free.
std::optional<MQuintuple> find_m_quintuple(const BipartiteGraph& g);

// true iff character neighborhoods form a laminar family. Runs the
// sort-and-sweep check: counting sort by decreasing neighborhood size,
// then one pass maintaining the deepest containing set per species;
// O(|C||S|) overall.
bool is_m_free(const BipartiteGraph& g);

// T_G: the mandated clusters plus every character neighborhood. Requires
// an M-free graph; the result is the minimal perfect phylogeny of g.
Phylogeny build_tg(const BipartiteGraph& g);

// true iff every character's neighborhood is a cluster of T. The species
// sets must coincide.
bool is_perfect_phylogeny(const BipartiteGraph& g, const Phylogeny& T);

// Cells where g and h disagree: edges of g at non-edges of h, and
// non-edges of g at edges of h. Jokers of h never conflict. Row-major
// order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> conflicts(const BipartiteGraph& g,
                                                               const DraftGraph& h);

// Total edit cost of g as an edition of h: sum of |weight| over all
// conflicts, saturating to +inf.
ExtendedWeight delta(const BipartiteGraph& g, const DraftGraph& h);

}  // namespace minflip
