"""Smoke tests for the Python bindings."""

import math

import pytest

import minflip


def test_phylogeny_round_trip():
    t = minflip.Phylogeny.from_newick("((a,b),c);")
    assert t.newick() == "((a,b),c);"
    assert ["a", "b"] in t.clusters
    assert t == minflip.Phylogeny(
        ["a", "b", "c"], [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "b", "c"]]
    )


def test_phylogeny_validation_error():
    with pytest.raises(minflip.ValidationError):
        minflip.Phylogeny(["a", "b", "c", "d"],
                          [[], ["a"], ["b"], ["c"], ["d"],
                           ["a", "b", "c"], ["b", "c", "d"], ["a", "b", "c", "d"]])


def test_m_free_recognition():
    g = minflip.BipartiteGraph(
        ["c1", "c2"], ["s1", "s2", "s3"],
        edges=[("c1", "s1"), ("c1", "s2"), ("c2", "s2"), ("c2", "s3")])
    assert not g.is_m_free()
    assert g.find_m_quintuple() == ("s1", "c1", "s2", "c2", "s3")

    nested = minflip.BipartiteGraph(
        ["c1", "c2"], ["s1", "s2", "s3"],
        edges=[("c1", "s1"), ("c1", "s2"), ("c1", "s3"), ("c2", "s1")])
    assert nested.is_m_free()
    assert nested.find_m_quintuple() is None
    assert minflip.is_perfect_phylogeny(nested, nested.tg())


def test_exact_min_edit_on_the_single_m():
    h = minflip.DraftGraph(
        ["c1", "c2"], ["s1", "s2", "s3"],
        rows=[[1, 1, -1], [-1, 1, 1]])
    assert minflip.classify_range(h) == "joker-free"
    edition, cost, optimal = minflip.exact_min_edit(h)
    assert cost == 1
    assert optimal
    assert edition.is_m_free()
    assert minflip.delta(edition, h) == 1
    assert minflip.fpt_edit(h, 0) is None
    assert minflip.fpt_edit(h, 1) is not None


def test_infinite_weights():
    h = minflip.DraftGraph(
        ["c1", "c2"], ["s1", "s2", "s3"],
        rows=[[math.inf, math.inf, -math.inf], [-math.inf, math.inf, math.inf]])
    assert h.weight("c1", "s1") == math.inf
    with pytest.raises(minflip.InfeasibleError):
        minflip.exact_min_edit(h)


def test_supertree_pipeline():
    cost, tree = minflip.supertree("((a,b),c);\n((c,d),b);\n")
    assert cost == 0
    parsed = minflip.Phylogeny.from_newick(tree)
    assert ["a", "b"] in parsed.clusters
    assert ["c", "d"] in parsed.clusters


def test_reduction_and_oracle():
    species = ["a", "b", "c"]
    triplets = [("a", "b", "c"), ("a", "c", "b"), ("b", "c", "a")]
    tree, opt = minflip.min_rti_bruteforce(species, triplets)
    assert opt == 2
    assert minflip.rti_cost(tree, triplets) == 2

    draft, gamma = minflip.reduce_rti_to_edit(species, triplets, alpha=2, beta=3)
    assert gamma == 2
    assert draft.weight("1", "a") == 3
    assert draft.weight("1", "c") == -2

    report = minflip.verify_reduction(species, triplets, alpha=1, beta=1)
    assert report["pass"]
    assert report["opt_rti"] == 2
    assert report["opt_edit"] == 2


def test_enumeration_counts():
    assert len(minflip.enumerate_phylogenies(["a", "b", "c"])) == 4
    assert len(minflip.enumerate_phylogenies(["a", "b", "c", "d"])) == 26
    with pytest.raises(minflip.CapExceededError):
        minflip.enumerate_phylogenies([f"s{i}" for i in range(7)])
