#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <set>
#include <tuple>

#include "minflip/pipeline.hpp"
#include "minflip/reduction.hpp"

namespace py = pybind11;
using namespace minflip;

namespace {

ExtendedWeight weight_from_py(py::handle obj) {
    if (py::isinstance<py::int_>(obj)) return ExtendedWeight(obj.cast<long long>());
    if (py::isinstance<py::float_>(obj)) {
        const double d = obj.cast<double>();
        if (std::isinf(d))
            return d > 0 ? ExtendedWeight::pos_infinity() : ExtendedWeight::neg_infinity();
        throw py::value_error("weights must be integers, +-inf floats, or 'inf'/'-inf' strings");
    }
    if (py::isinstance<py::str>(obj)) {
        if (auto w = ExtendedWeight::parse(obj.cast<std::string>())) return *w;
    }
    throw py::value_error("weights must be integers, +-inf floats, or 'inf'/'-inf' strings");
}

py::object weight_to_py(ExtendedWeight w) {
    if (w.is_finite()) return py::int_(w.value());
    return py::float_(w.is_pos_infinity() ? INFINITY : -INFINITY);
}

ResolvedTriplet triplet_from_py(const std::tuple<std::string, std::string, std::string>& t) {
    return ResolvedTriplet(std::get<0>(t), std::get<1>(t), std::get<2>(t));
}

std::vector<ResolvedTriplet> triplets_from_py(
    const std::vector<std::tuple<std::string, std::string, std::string>>& ts) {
    std::vector<ResolvedTriplet> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(triplet_from_py(t));
    return out;
}

SolverCaps caps_from_kwargs(long long max_cells, int max_jokers, std::size_t max_species) {
    SolverCaps caps;
    caps.max_cells = max_cells;
    caps.max_jokers = max_jokers;
    caps.max_species = max_species;
    return caps;
}

py::object quintuple_to_py(const BipartiteGraph& g, const std::optional<MQuintuple>& m) {
    if (!m) return py::none();
    return py::make_tuple(g.species()[m->s], g.characters()[m->c], g.species()[m->sp],
                          g.characters()[m->cp], g.species()[m->spp]);
}

std::uint32_t require_character(const BipartiteGraph& g, const std::string& name) {
    if (auto c = g.character_index(name)) return *c;
    throw py::value_error("unknown character: " + name);
}

std::uint32_t require_species(const BipartiteGraph& g, const std::string& name) {
    if (auto s = g.species_index(name)) return *s;
    throw py::value_error("unknown species: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact solvers for editing weighted bipartite drafts to M-free graphs, "
              "plus the supertree pipeline built on them";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapExceededError>(m, "CapExceededError", PyExc_RuntimeError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

    py::class_<Phylogeny>(m, "Phylogeny")
        .def(py::init([](std::vector<std::string> species,
                         std::vector<std::vector<std::string>> clusters) {
                 return validate_phylogeny(std::move(species), clusters);
             }),
             py::arg("species"), py::arg("clusters"))
        .def_property_readonly("species", &Phylogeny::species)
        .def_property_readonly("clusters",
                               [](const Phylogeny& t) {
                                   std::vector<std::vector<std::string>> out;
                                   for (const auto& c : t.clusters())
                                       out.push_back(t.cluster_names(c));
                                   return out;
                               })
        .def("newick", &serialize_newick)
        .def_static("from_newick",
                    [](const std::string& text) { return parse_newick(text); },
                    py::arg("text"))
        .def_static("star",
                    [](std::vector<std::string> species) {
                        return star_phylogeny(std::move(species));
                    },
                    py::arg("species"))
        .def("__eq__", [](const Phylogeny& a, const Phylogeny& b) { return a == b; })
        .def("__repr__",
             [](const Phylogeny& t) { return "Phylogeny(" + serialize_newick(t) + ")"; });

    py::class_<BipartiteGraph>(m, "BipartiteGraph")
        .def(py::init([](std::vector<std::string> characters, std::vector<std::string> species,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
                 BipartiteGraph g(std::move(characters), std::move(species));
                 for (const auto& [c, s] : edges)
                     g.set_edge(require_character(g, c), require_species(g, s), true);
                 return g;
             }),
             py::arg("characters"), py::arg("species"),
             py::arg("edges") = std::vector<std::pair<std::string, std::string>>{})
        .def_property_readonly("characters", &BipartiteGraph::characters)
        .def_property_readonly("species", &BipartiteGraph::species)
        .def("has_edge",
             [](const BipartiteGraph& g, const std::string& c, const std::string& s) {
                 return g.has_edge(require_character(g, c), require_species(g, s));
             })
        .def("neighborhood",
             [](const BipartiteGraph& g, const std::string& c) {
                 std::vector<std::string> out;
                 for (std::uint32_t s : g.neighborhood(require_character(g, c)))
                     out.push_back(g.species()[s]);
                 return out;
             })
        .def("is_m_free", [](const BipartiteGraph& g) { return is_m_free(g); })
        .def("find_m_quintuple",
             [](const BipartiteGraph& g) { return quintuple_to_py(g, find_m_quintuple(g)); })
        .def("tg", [](const BipartiteGraph& g) { return build_tg(g); })
        .def("serialize", &BipartiteGraph::serialize)
        .def_static("parse", [](const std::string& text) { return BipartiteGraph::parse(text); })
        .def("__eq__", [](const BipartiteGraph& a, const BipartiteGraph& b) { return a == b; });

    py::class_<DraftGraph>(m, "DraftGraph")
        .def(py::init([](std::vector<std::string> characters, std::vector<std::string> species,
                         const std::vector<std::vector<py::object>>& rows) {
                 DraftGraph h(std::move(characters), std::move(species));
                 if (rows.size() != h.num_characters())
                     throw py::value_error("expected one row per character");
                 for (std::uint32_t c = 0; c < rows.size(); ++c) {
                     if (rows[c].size() != h.num_species())
                         throw py::value_error("expected one weight per species");
                     for (std::uint32_t s = 0; s < rows[c].size(); ++s)
                         h.set_weight(c, s, weight_from_py(rows[c][s]));
                 }
                 return h;
             }),
             py::arg("characters"), py::arg("species"), py::arg("rows"))
        .def_property_readonly("characters", &DraftGraph::characters)
        .def_property_readonly("species", &DraftGraph::species)
        .def("weight",
             [](const DraftGraph& h, const std::string& c, const std::string& s) {
                 auto ci = h.character_index(c);
                 auto si = h.species_index(s);
                 if (!ci || !si) throw py::value_error("unknown character or species");
                 return weight_to_py(h.weight(*ci, *si));
             })
        .def("classify",
             [](const DraftGraph& h, const std::string& c, const std::string& s) {
                 switch (classify_cell(h, c, s)) {
                     case CellKind::Edge: return "edge";
                     case CellKind::Joker: return "joker";
                     default: return "non-edge";
                 }
             })
        .def("sign_induced_edition", &DraftGraph::sign_induced_edition)
        .def("serialize", &DraftGraph::serialize)
        .def_static("parse", [](const std::string& text) { return DraftGraph::parse(text); })
        .def("__eq__", [](const DraftGraph& a, const DraftGraph& b) { return a == b; });

    m.def("is_perfect_phylogeny", &is_perfect_phylogeny, py::arg("graph"), py::arg("tree"));
    m.def("delta",
          [](const BipartiteGraph& g, const DraftGraph& h) { return weight_to_py(delta(g, h)); },
          py::arg("edition"), py::arg("draft"));
    m.def("classify_range",
          [](const DraftGraph& h) { return std::string(weight_range_name(classify_range(h))); });

    m.def(
        "exact_min_edit",
        [](const DraftGraph& h, long long max_cells, int max_jokers, std::size_t max_species) {
            const EditSolution sol =
                exact_min_edit(h, caps_from_kwargs(max_cells, max_jokers, max_species));
            return py::make_tuple(sol.edition, weight_to_py(sol.cost), sol.optimal);
        },
        py::arg("draft"), py::arg("max_cells") = SolverCaps{}.max_cells,
        py::arg("max_jokers") = SolverCaps{}.max_jokers,
        py::arg("max_species") = SolverCaps{}.max_species,
        "Provably optimal M-free edition: returns (edition, cost, optimal)");

    m.def(
        "fpt_edit",
        [](const DraftGraph& h, long long k) -> py::object {
            auto sol = fpt_edit(h, k);
            if (!sol) return py::none();
            return py::make_tuple(sol->edition, weight_to_py(sol->cost));
        },
        py::arg("draft"), py::arg("budget"),
        "Bounded-cost edition of a joker-free draft, or None");

    m.def(
        "supertree_of",
        [](const DraftGraph& h, long long max_cells, int max_jokers, std::size_t max_species) {
            auto [tree, cost] =
                supertree_of(h, caps_from_kwargs(max_cells, max_jokers, max_species));
            return py::make_tuple(std::move(tree), weight_to_py(cost));
        },
        py::arg("draft"), py::arg("max_cells") = SolverCaps{}.max_cells,
        py::arg("max_jokers") = SolverCaps{}.max_jokers,
        py::arg("max_species") = SolverCaps{}.max_species);

    m.def(
        "enumerate_phylogenies",
        [](std::vector<std::string> species, std::size_t cap) {
            return enumerate_phylogenies(species, cap);
        },
        py::arg("species"), py::arg("cap") = kDefaultEnumerationCap);

    m.def(
        "fits",
        [](const std::tuple<std::string, std::string, std::string>& t, const Phylogeny& tree) {
            return fits(triplet_from_py(t), tree);
        },
        py::arg("triplet"), py::arg("tree"));

    m.def(
        "rti_cost",
        [](const Phylogeny& tree,
           const std::vector<std::tuple<std::string, std::string, std::string>>& ts) {
            return rti_cost(tree, triplets_from_py(ts));
        },
        py::arg("tree"), py::arg("triplets"));

    m.def(
        "min_rti_bruteforce",
        [](std::vector<std::string> species,
           const std::vector<std::tuple<std::string, std::string, std::string>>& ts,
           std::size_t cap) {
            const auto inst = RtiInstance::make(std::move(species), triplets_from_py(ts));
            auto [tree, cost] = min_rti_bruteforce(inst, cap);
            return py::make_tuple(std::move(tree), cost);
        },
        py::arg("species"), py::arg("triplets"), py::arg("cap") = kDefaultEnumerationCap);

    m.def(
        "reduce_rti_to_edit",
        [](std::vector<std::string> species,
           const std::vector<std::tuple<std::string, std::string, std::string>>& ts,
           py::object alpha, py::object beta) {
            const auto inst = RtiInstance::make(std::move(species), triplets_from_py(ts));
            const auto params =
                ReductionParams::make(weight_from_py(alpha), weight_from_py(beta));
            auto map = reduce_rti_to_edit(inst, params);
            return py::make_tuple(std::move(map.target.graph), params.gamma);
        },
        py::arg("species"), py::arg("triplets"), py::arg("alpha"), py::arg("beta"),
        "Returns (draft, gamma): row c is beta on x_c and y_c, -alpha on z_c, joker elsewhere");

    m.def(
        "verify_reduction",
        [](std::vector<std::string> species,
           const std::vector<std::tuple<std::string, std::string, std::string>>& ts,
           py::object alpha, py::object beta) {
            const auto inst = RtiInstance::make(std::move(species), triplets_from_py(ts));
            const auto report = verify_reduction(
                inst, ReductionParams::make(weight_from_py(alpha), weight_from_py(beta)));
            py::dict out;
            out["opt_rti"] = report.opt_rti;
            out["opt_edit"] = weight_to_py(report.opt_edit);
            out["gamma"] = report.gamma;
            out["opt_equality"] = report.opt_equality;
            out["lift_phylogeny"] = report.lift_phylogeny_ok;
            out["lift_edition"] = report.lift_edition_ok;
            out["decision_equivalence"] = report.decision_equivalence;
            out["pass"] = report.pass;
            out["text"] = report.to_text();
            return out;
        },
        py::arg("species"), py::arg("triplets"), py::arg("alpha"), py::arg("beta"));

    m.def(
        "parse_newick_forest",
        [](const std::string& text) { return parse_newick_forest(text).trees; },
        py::arg("text"));

    m.def(
        "build_mrf_matrix",
        [](const std::vector<Phylogeny>& trees) {
            InputForest forest;
            forest.trees = trees;
            std::set<std::string> names;
            for (const auto& t : trees)
                names.insert(t.species().begin(), t.species().end());
            forest.union_species.assign(names.begin(), names.end());
            return build_mrf_matrix(forest);
        },
        py::arg("trees"));

    m.def(
        "supertree",
        [](const std::string& newick_forest, long long max_cells, int max_jokers,
           std::size_t max_species) {
            const InputForest forest = parse_newick_forest(newick_forest);
            const DraftGraph h = build_mrf_matrix(forest);
            auto [tree, cost] =
                supertree_of(h, caps_from_kwargs(max_cells, max_jokers, max_species));
            return py::make_tuple(weight_to_py(cost), serialize_newick(tree));
        },
        py::arg("newick_forest"), py::arg("max_cells") = SolverCaps{}.max_cells,
        py::arg("max_jokers") = SolverCaps{}.max_jokers,
        py::arg("max_species") = SolverCaps{}.max_species,
        "Full pipeline: Newick forest text in, (cost, Newick supertree) out");
}
