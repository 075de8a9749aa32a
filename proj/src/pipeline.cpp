#include "minflip/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "minflip/reduction.hpp"

namespace minflip {

namespace {

bool is_label_char(char ch) {
    switch (ch) {
        case '(': case ')': case ',': case ':': case ';':
        case ' ': case '\t': case '\r': case '\n':
            return false;
        default:
            return true;
    }
}

// Recursive-descent Newick reader. Collects the leaf set of every node as
// a cluster; labels after ')' and branch lengths are consumed and dropped.
class NewickReader {
  public:
    explicit NewickReader(std::string_view text) : text_(text) {}

    Phylogeny parse() {
        skip_space();
        if (eof() || peek() == ';')
            throw ParseError("newick: empty tree");
        std::vector<std::string> leaves = subtree();
        skip_space();
        if (eof() || get() != ';')
            throw ParseError("newick: expected `;` at the end of the tree");
        skip_space();
        if (!eof())
            throw ParseError("newick: trailing text after `;`");
        clusters_.push_back({});  // the empty cluster
        return validate_phylogeny(leaves, clusters_);
    }

  private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }
    void skip_space() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
    }

    std::string label() {
        std::string out;
        while (!eof() && is_label_char(peek())) out += get();
        return out;
    }

    void skip_length() {
        skip_space();
        if (!eof() && peek() == ':') {
            ++pos_;
            while (!eof() && (is_label_char(peek()) || peek() == ' ')) {
                if (peek() == ' ') { ++pos_; continue; }
                ++pos_;
            }
        }
    }

    std::vector<std::string> subtree() {
        skip_space();
        if (eof())
            throw ParseError("newick: unexpected end of input");
        if (peek() == '(') {
            ++pos_;
            std::vector<std::string> leaves;
            while (true) {
                auto child = subtree();
                leaves.insert(leaves.end(), child.begin(), child.end());
                skip_space();
                if (eof())
                    throw ParseError("newick: unbalanced parentheses");
                const char ch = get();
                if (ch == ',') continue;
                if (ch == ')') break;
                throw ParseError(std::string("newick: unexpected `") + ch + "` inside a subtree");
            }
            label();       // internal label, ignored
            skip_length();
            clusters_.push_back(leaves);
            return leaves;
        }
        std::string leaf = label();
        if (leaf.empty())
            throw ParseError("newick: empty subtree or leaf label");
        if (!seen_.insert(leaf).second)
            throw ParseError("newick: duplicate leaf label `" + leaf + "`");
        skip_length();
        clusters_.push_back({leaf});
        return {leaf};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::vector<std::string>> clusters_;
    std::set<std::string, std::less<>> seen_;
};

}  // namespace

Phylogeny parse_newick(std::string_view line) { return NewickReader(line).parse(); }

namespace {

struct NewickNode {
    const Cluster* cluster = nullptr;
    std::vector<std::size_t> children;
};

void render(const Phylogeny& T, const std::vector<NewickNode>& nodes, std::size_t idx,
            std::string& out) {
    const auto& node = nodes[idx];
    if (node.cluster->size() == 1) {
        out += T.species()[(*node.cluster)[0]];
        return;
    }
    out += '(';
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += ',';
        render(T, nodes, node.children[i], out);
    }
    out += ')';
}

}  // namespace

std::string serialize_newick(const Phylogeny& T) {
    if (T.num_species() == 0)
        throw ValidationError("serialize_newick: empty species set");
    // Non-empty clusters, largest first; each node's parent is the smallest
    // strictly containing cluster placed before it.
    std::vector<const Cluster*> order;
    for (const auto& c : T.clusters())
        if (!c.empty()) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Cluster* a, const Cluster* b) {
        return cluster_less(*b, *a);
    });
    std::vector<NewickNode> nodes(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) nodes[i].cluster = order[i];
    for (std::size_t i = 1; i < order.size(); ++i) {
        std::size_t parent = order.size();
        for (std::size_t j = 0; j < i; ++j) {
            if (order[j]->size() > order[i]->size() &&
                std::includes(order[j]->begin(), order[j]->end(), order[i]->begin(),
                              order[i]->end()))
                parent = j;  // later hits are smaller, keep the last
        }
        nodes[parent].children.push_back(i);
    }
    // Children by decreasing size, then by least leaf.
    for (auto& node : nodes)
        std::sort(node.children.begin(), node.children.end(), [&](std::size_t a, std::size_t b) {
            if (nodes[a].cluster->size() != nodes[b].cluster->size())
                return nodes[a].cluster->size() > nodes[b].cluster->size();
            return nodes[a].cluster->front() < nodes[b].cluster->front();
        });
    std::string out;
    render(T, nodes, 0, out);
    out += ';';
    return out;
}

InputForest parse_newick_forest(std::string_view text) {
    InputForest forest;
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::set<std::string> all_species;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            forest.trees.push_back(parse_newick(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        for (const auto& s : forest.trees.back().species()) all_species.insert(s);
    }
    if (forest.trees.empty())
        throw ParseError("newick forest: no trees found");
    forest.union_species.assign(all_species.begin(), all_species.end());
    return forest;
}

DraftGraph build_mrf_matrix(const InputForest& forest) {
    if (forest.trees.empty())
        throw ValidationError("build_mrf_matrix: the forest has no trees");
    const auto& species = forest.union_species;
    for (const auto& tree : forest.trees)
        for (const auto& s : tree.species())
            if (!std::binary_search(species.begin(), species.end(), s))
                throw ValidationError("build_mrf_matrix: species `" + s +
                                      "` missing from the union");

    struct Row {
        const Phylogeny* tree;
        const Cluster* cluster;
    };
    std::vector<Row> rows;
    for (const auto& tree : forest.trees)
        for (const auto& cluster : tree.clusters()) {
            const bool trivial =
                cluster.size() <= 1 || cluster.size() == tree.num_species();
            if (!trivial) rows.push_back({&tree, &cluster});
        }

    std::vector<std::string> characters;
    characters.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) characters.push_back(std::to_string(i + 1));
    DraftGraph h(std::move(characters), species);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
        const auto& [tree, cluster] = rows[r];
        for (std::uint32_t s = 0; s < species.size(); ++s) {
            const auto local = tree->species_index(species[s]);
            if (!local) continue;  // joker: species absent from this tree
            const bool inside = std::binary_search(cluster->begin(), cluster->end(), *local);
            h.set_weight(r, s, ExtendedWeight(inside ? 1 : -1));
        }
    }
    return h;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit_artifact(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file || !(file << text) || !file.flush())
        throw Error("cannot write output file: " + config.out_path);
}

ReductionParams require_params(const RunConfig& config) {
    if (!config.alpha || !config.beta)
        throw ValidationError("this command requires --alpha and --beta");
    return ReductionParams::make(*config.alpha, *config.beta);
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    using Command = RunConfig::Command;
    if (config.caps.max_cells <= 0 || config.caps.max_jokers < 0 || config.caps.max_species == 0)
        throw ValidationError("caps must be positive");
    const std::string text = read_file(config.input_path);
    switch (config.command) {
        case Command::Check: {
            BipartiteGraph g = text.starts_with("#matrix")
                                   ? DraftGraph::parse(text).sign_induced_edition()
                                   : BipartiteGraph::parse(text);
            std::string report;
            if (auto witness = find_m_quintuple(g)) {
                report = "m_free: no\nwitness: " + witness->str(g) + "\n";
            } else {
                report = "m_free: yes\n";
            }
            emit_artifact(config, report, out);
            return 0;
        }
        case Command::Solve: {
            const DraftGraph h = DraftGraph::parse(text);
            const EditSolution sol = exact_min_edit(h, config.caps);
            emit_artifact(config, sol.edition.serialize() + "cost: " + sol.cost.str() + "\n", out);
            return 0;
        }
        case Command::Supertree: {
            const InputForest forest = parse_newick_forest(text);
            const DraftGraph h = build_mrf_matrix(forest);
            if (h.num_characters() == 0)
                err << "warning: no non-trivial input cluster; the supertree is unconstrained\n";
            const auto [tree, cost] = supertree_of(h, config.caps);
            emit_artifact(config,
                          "cost: " + cost.str() + "\ntree: " + serialize_newick(tree) + "\n", out);
            return 0;
        }
        case Command::Reduce: {
            const ReductionParams params = require_params(config);
            const RtiInstance inst = parse_rti_instance(text, config.budget);
            const ReductionMap map = reduce_rti_to_edit(inst, params);
            std::string artifact = map.target.graph.serialize();
            artifact += "gamma: " + std::to_string(params.gamma) + "\n";
            if (map.target.budget)
                artifact += "budget: " + std::to_string(*map.target.budget) + "\n";
            emit_artifact(config, artifact, out);
            return 0;
        }
        case Command::Oracle: {
            const RtiInstance inst = parse_rti_instance(text, config.budget);
            const auto [tree, cost] = min_rti_bruteforce(inst, config.caps.max_species);
            std::string artifact =
                "opt: " + std::to_string(cost) + "\ntree: " + serialize_newick(tree) + "\n";
            if (inst.budget)
                artifact += std::string("accepted: ") + (cost <= *inst.budget ? "yes" : "no") +
                            "\n";
            emit_artifact(config, artifact, out);
            return 0;
        }
        case Command::Verify: {
            const ReductionParams params = require_params(config);
            const RtiInstance inst = parse_rti_instance(text, config.budget);
            const ReductionReport report = verify_reduction(inst, params, config.caps);
            emit_artifact(config, report.to_text(), out);
            return report.pass ? 0 : 1;
        }
    }
    throw ValidationError("unknown command");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(config, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceededError& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace minflip
