#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minflip/pipeline.hpp"

namespace {

using minflip::ExtendedWeight;
using minflip::RunConfig;

struct CliOptions {
    RunConfig config;
    std::string alpha, beta;
};

void add_common(CLI::App* sub, CliOptions& opts) {
    sub->add_option("input", opts.config.input_path, "input file")->required();
    sub->add_option("--out", opts.config.out_path, "write the artifact to this file");
    sub->add_option("--cap-species", opts.config.caps.max_species,
                    "phylogeny enumeration cap (species)");
    sub->add_option("--cap-cells", opts.config.caps.max_cells,
                    "exact solver cap (|C| * |S| cells)");
    sub->add_option("--cap-jokers", opts.config.caps.max_jokers,
                    "exact solver cap (joker cells)");
}

void add_params(CLI::App* sub, CliOptions& opts) {
    sub->add_option("--alpha", opts.alpha, "non-edge weight magnitude (integer or `inf`)");
    sub->add_option("--beta", opts.beta, "edge weight (integer or `inf`)");
}

int parse_weight(const std::string& text, const char* name,
                 std::optional<ExtendedWeight>& slot) {
    if (text.empty()) return 0;
    auto w = ExtendedWeight::parse(text);
    if (!w) {
        std::cerr << "usage error: --" << name << " must be an integer, inf or -inf\n";
        return 2;
    }
    slot = *w;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minflip: exact minimum-flip supertree toolkit"};
    app.require_subcommand(1);

    CliOptions opts;
    long long budget = -1;

    auto* check = app.add_subcommand(
        "check", "report whether a #graph (or the sign pattern of a #matrix) is M-free");
    auto* solve = app.add_subcommand("solve", "optimally edit a #matrix draft to an M-free graph");
    auto* supertree =
        app.add_subcommand("supertree", "build a minimum-flip supertree from a Newick forest");
    auto* reduce = app.add_subcommand(
        "reduce", "map a triplet instance to an edition instance (matrix TSV)");
    auto* oracle =
        app.add_subcommand("oracle", "brute-force optimum of a triplet instance");
    auto* verify = app.add_subcommand(
        "verify", "cross-check the triplet-to-edition reduction on one instance");

    using Command = RunConfig::Command;
    const std::pair<CLI::App*, Command> commands[] = {
        {check, Command::Check},     {solve, Command::Solve},
        {supertree, Command::Supertree}, {reduce, Command::Reduce},
        {oracle, Command::Oracle},   {verify, Command::Verify},
    };
    for (auto& [sub, command] : commands) {
        add_common(sub, opts);
        sub->callback([&opts, command = command] { opts.config.command = command; });
    }
    add_params(reduce, opts);
    add_params(verify, opts);
    for (auto* sub : {reduce, oracle, verify})
        sub->add_option("--budget", budget, "decision budget k (non-negative)")
            ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (int rc = parse_weight(opts.alpha, "alpha", opts.config.alpha)) return rc;
    if (int rc = parse_weight(opts.beta, "beta", opts.config.beta)) return rc;
    if (budget >= 0) opts.config.budget = budget;

    return minflip::run(opts.config, std::cout, std::cerr);
}
