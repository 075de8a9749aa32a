#include "minflip/bipartite.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace minflip {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
    std::unordered_map<std::string_view, int> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ValidationError(std::string(what) + " name must not be empty");
        if (++seen[n] > 1) throw ValidationError(std::string("duplicate ") + what + " name: " + n);
    }
}

std::optional<std::uint32_t> index_of(const std::vector<std::string>& names,
                                      std::string_view name) {
    for (std::uint32_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

// Shared frame of both TSV formats: a tagged header naming the species,
// then one row per character.
struct TsvTable {
    std::vector<std::string> species;
    std::vector<std::string> characters;
    std::vector<std::vector<std::string>> cells;
};

// Name problems found while reading a file are parse errors, not contract
// violations.
template <class Graph>
Graph construct_parsed(std::string_view tag, std::vector<std::string> characters,
                       std::vector<std::string> species) {
    try {
        return Graph(std::move(characters), std::move(species));
    } catch (const ValidationError& e) {
        throw ParseError(std::string(tag) + ": " + e.what());
    }
}

TsvTable parse_tsv(std::string_view text, std::string_view tag) {
    TsvTable table;
    std::istringstream lines{std::string(text)};
    std::string line;
    if (!std::getline(lines, line))
        throw ParseError(std::string(tag) + ": empty input");
    auto header = split_tabs(line);
    if (header.empty() || header[0] != tag)
        throw ParseError(std::string(tag) + ": first field of the header must be `" +
                         std::string(tag) + "`");
    table.species.assign(header.begin() + 1, header.end());
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != table.species.size() + 1)
            throw ParseError(std::string(tag) + ": row `" + fields[0] + "` has " +
                             std::to_string(fields.size() - 1) + " cells, expected " +
                             std::to_string(table.species.size()));
        table.characters.push_back(fields[0]);
        table.cells.emplace_back(fields.begin() + 1, fields.end());
    }
    return table;
}

}  // namespace

BipartiteGraph::BipartiteGraph(std::vector<std::string> characters,
                               std::vector<std::string> species)
    : characters_(std::move(characters)), species_(std::move(species)),
      adj_(characters_.size() * species_.size(), 0) {
    require_unique(characters_, "character");
    require_unique(species_, "species");
}

BipartiteGraph BipartiteGraph::complete(std::vector<std::string> characters,
                                        std::vector<std::string> species) {
    BipartiteGraph g(std::move(characters), std::move(species));
    std::fill(g.adj_.begin(), g.adj_.end(), 1);
    return g;
}

std::optional<std::uint32_t> BipartiteGraph::character_index(std::string_view name) const {
    return index_of(characters_, name);
}

std::optional<std::uint32_t> BipartiteGraph::species_index(std::string_view name) const {
    return index_of(species_, name);
}

std::vector<std::uint32_t> BipartiteGraph::neighborhood(std::uint32_t c) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < species_.size(); ++s)
        if (has_edge(c, s)) out.push_back(s);
    return out;
}

std::size_t BipartiteGraph::num_edges() const {
    std::size_t n = 0;
    for (auto b : adj_) n += b;
    return n;
}

std::string BipartiteGraph::serialize() const {
    std::string out = "#graph";
    for (const auto& s : species_) out += "\t" + s;
    out += "\n";
    for (std::uint32_t c = 0; c < characters_.size(); ++c) {
        out += characters_[c];
        for (std::uint32_t s = 0; s < species_.size(); ++s)
            out += has_edge(c, s) ? "\t1" : "\t0";
        out += "\n";
    }
    return out;
}

BipartiteGraph BipartiteGraph::parse(std::string_view text) {
    auto table = parse_tsv(text, "#graph");
    auto g = construct_parsed<BipartiteGraph>("#graph", std::move(table.characters),
                                              std::move(table.species));
    for (std::uint32_t c = 0; c < g.num_characters(); ++c)
        for (std::uint32_t s = 0; s < g.num_species(); ++s) {
            const auto& cell = table.cells[c][s];
            if (cell != "0" && cell != "1")
                throw ParseError("#graph: cell must be 0 or 1, got `" + cell + "`");
            g.set_edge(c, s, cell == "1");
        }
    return g;
}

DraftGraph::DraftGraph(std::vector<std::string> characters, std::vector<std::string> species)
    : characters_(std::move(characters)), species_(std::move(species)),
      weights_(characters_.size() * species_.size()) {
    require_unique(characters_, "character");
    require_unique(species_, "species");
}

std::optional<std::uint32_t> DraftGraph::character_index(std::string_view name) const {
    return index_of(characters_, name);
}

std::optional<std::uint32_t> DraftGraph::species_index(std::string_view name) const {
    return index_of(species_, name);
}

CellKind DraftGraph::classify(std::uint32_t c, std::uint32_t s) const {
    const ExtendedWeight w = weight(c, s);
    if (w > ExtendedWeight(0)) return CellKind::Edge;
    if (w == ExtendedWeight(0)) return CellKind::Joker;
    return CellKind::NonEdge;
}

BipartiteGraph DraftGraph::sign_induced_edition() const {
    BipartiteGraph g(characters_, species_);
    for (std::uint32_t c = 0; c < characters_.size(); ++c)
        for (std::uint32_t s = 0; s < species_.size(); ++s)
            g.set_edge(c, s, classify(c, s) == CellKind::Edge);
    return g;
}

std::string DraftGraph::serialize() const {
    std::string out = "#matrix";
    for (const auto& s : species_) out += "\t" + s;
    out += "\n";
    for (std::uint32_t c = 0; c < characters_.size(); ++c) {
        out += characters_[c];
        for (std::uint32_t s = 0; s < species_.size(); ++s)
            out += "\t" + weight(c, s).str();
        out += "\n";
    }
    return out;
}

DraftGraph DraftGraph::parse(std::string_view text) {
    auto table = parse_tsv(text, "#matrix");
    auto h = construct_parsed<DraftGraph>("#matrix", std::move(table.characters),
                                          std::move(table.species));
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s) {
            const auto& cell = table.cells[c][s];
            auto w = ExtendedWeight::parse(cell);
            if (!w)
                throw ParseError("#matrix: cell must be an integer, inf or -inf, got `" + cell +
                                 "`");
            h.set_weight(c, s, *w);
        }
    return h;
}

CellKind classify_cell(const DraftGraph& h, std::string_view character, std::string_view species) {
    auto c = h.character_index(character);
    if (!c) throw ValidationError("unknown character: " + std::string(character));
    auto s = h.species_index(species);
    if (!s) throw ValidationError("unknown species: " + std::string(species));
    return h.classify(*c, *s);
}

MQuintuple MQuintuple::checked(const BipartiteGraph& g, std::uint32_t s, std::uint32_t c,
                               std::uint32_t sp, std::uint32_t cp, std::uint32_t spp) {
    const bool adjacency = g.has_edge(c, s) && g.has_edge(c, sp) && g.has_edge(cp, sp) &&
                           g.has_edge(cp, spp) && !g.has_edge(c, spp) && !g.has_edge(cp, s);
    if (!adjacency)
        throw ValidationError("MQuintuple: adjacency conditions violated");
    if (c == cp || s == sp || s == spp || sp == spp)
        throw ValidationError("MQuintuple: vertices must be distinct");
    return MQuintuple{s, c, sp, cp, spp};
}

std::string MQuintuple::str(const BipartiteGraph& g) const {
    return "s=" + g.species()[s] + " c=" + g.characters()[c] + " s'=" + g.species()[sp] +
           " c'=" + g.characters()[cp] + " s''=" + g.species()[spp];
}

std::optional<MQuintuple> find_m_quintuple(const BipartiteGraph& g) {
    const std::uint32_t nc = static_cast<std::uint32_t>(g.num_characters());
    std::vector<std::vector<std::uint32_t>> nbr(nc);
    for (std::uint32_t c = 0; c < nc; ++c) nbr[c] = g.neighborhood(c);
    for (std::uint32_t c = 0; c < nc; ++c) {
        for (std::uint32_t cp = 0; cp < nc; ++cp) {
            // Least witnesses: s in N(c)\N(c'), s' in the intersection,
            // s'' in N(c')\N(c). The three minima are independent.
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
            if (s && sp && spp)
                return MQuintuple::checked(g, *s, c, *sp, cp, *spp);
        }
    }
    return std::nullopt;
}

bool is_m_free(const BipartiteGraph& g) {
    const std::uint32_t nc = static_cast<std::uint32_t>(g.num_characters());
    const std::uint32_t ns = static_cast<std::uint32_t>(g.num_species());
    std::vector<std::vector<std::uint32_t>> nbr(nc);
    for (std::uint32_t c = 0; c < nc; ++c) nbr[c] = g.neighborhood(c);

    // Counting sort by decreasing neighborhood size.
    std::vector<std::vector<std::uint32_t>> buckets(ns + 1);
    for (std::uint32_t c = 0; c < nc; ++c) buckets[nbr[c].size()].push_back(c);

    // Sweep: deepest[s] is the most recently placed set containing s. A new
    // set nests in the laminar forest built so far iff all its members agree
    // on that deepest set.
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> deepest(ns, kNone);
    for (std::size_t size = ns + 1; size-- > 0;) {
        for (std::uint32_t c : buckets[size]) {
            const auto& n = nbr[c];
            if (n.empty()) continue;
            const std::uint32_t d = deepest[n[0]];
            for (std::uint32_t s : n)
                if (deepest[s] != d) return false;
            for (std::uint32_t s : n) deepest[s] = c;
        }
    }
    return true;
}

Phylogeny build_tg(const BipartiteGraph& g) {
    if (!is_m_free(g))
        throw ValidationError("build_tg: graph is not M-free");
    // Species get re-sorted for the phylogeny; remap neighborhoods.
    std::vector<std::string> names = g.species();
    std::sort(names.begin(), names.end());
    std::vector<std::uint32_t> remap(g.num_species());
    for (std::uint32_t s = 0; s < g.num_species(); ++s) {
        auto it = std::lower_bound(names.begin(), names.end(), g.species()[s]);
        remap[s] = static_cast<std::uint32_t>(it - names.begin());
    }
    std::vector<Cluster> clusters;
    clusters.emplace_back();
    Cluster full(names.size());
    for (std::uint32_t i = 0; i < names.size(); ++i) {
        full[i] = i;
        clusters.push_back(Cluster{i});
    }
    clusters.push_back(std::move(full));
    for (std::uint32_t c = 0; c < g.num_characters(); ++c) {
        Cluster cluster;
        for (std::uint32_t s : g.neighborhood(c)) cluster.push_back(remap[s]);
        clusters.push_back(std::move(cluster));
    }
    return PhylogenyBuilder(std::move(names)).build(std::move(clusters));
}

bool is_perfect_phylogeny(const BipartiteGraph& g, const Phylogeny& T) {
    std::vector<std::string> names = g.species();
    std::sort(names.begin(), names.end());
    if (names != T.species())
        throw ValidationError("is_perfect_phylogeny: species sets differ");
    for (std::uint32_t c = 0; c < g.num_characters(); ++c) {
        Cluster cluster;
        for (std::uint32_t s : g.neighborhood(c))
            cluster.push_back(*T.species_index(g.species()[s]));
        std::sort(cluster.begin(), cluster.end());
        if (!T.contains_cluster(cluster)) return false;
    }
    return true;
}

namespace {

void require_same_shape(const BipartiteGraph& g, const DraftGraph& h) {
    if (g.characters() != h.characters() || g.species() != h.species())
        throw ValidationError("edition and draft-graph must share characters and species");
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> conflicts(const BipartiteGraph& g,
                                                               const DraftGraph& h) {
    require_same_shape(g, h);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t c = 0; c < h.num_characters(); ++c)
        for (std::uint32_t s = 0; s < h.num_species(); ++s) {
            const CellKind kind = h.classify(c, s);
            if (kind == CellKind::Joker) continue;
            if (g.has_edge(c, s) != (kind == CellKind::Edge)) out.emplace_back(c, s);
        }
    return out;
}

ExtendedWeight delta(const BipartiteGraph& g, const DraftGraph& h) {
    ExtendedWeight total(0);
    for (auto [c, s] : conflicts(g, h)) total += h.weight(c, s).abs();
    return total;
}

}  // namespace minflip
