from importlib import resources

import pytest

from oracles import in_p22, restricted_growth_words
from sparseblock import golden

FILES = sorted(p.name for p in resources.files("sparseblock").joinpath("data").iterdir() if p.name.endswith(".json"))


def test_data_files_present():
    assert len(FILES) == 10


@pytest.mark.parametrize("name", FILES)
def test_each_file_loads_and_cites_source(name):
    data = golden.load(name)
    assert data["description"] and data["source"]


def test_reference_orders():
    assert golden.tree_walk_orders() == [2, 4, 6, 8, 10, 12]
    assert golden.finite_d_orders() == [2, 4, 6, 8]
    assert golden.planar_orders()[:8] == [2, 4, 6, 8, 10, 12, 14, 16]
    assert golden.planar_orders()[-1] == 22


@pytest.mark.parametrize("order", [2, 4, 6, 8, 10])
def test_tree_walk_multiplicities_count_tree_walk_words(order):
    total = sum(1 for w in restricted_growth_words(order, even_only=True) if in_p22(w))
    assert sum(m for m, _ in golden.tree_walk_table(order).values()) == total


def test_parse_cumulant_formula():
    assert golden.parse_cumulant_formula("a4 + 4 a1 a3 + 2 a2^2") == {(4,): 1, (1, 3): 4, (2, 2): 2}
    assert golden.parse_cumulant_formula("f2 - f1^2") == {(2,): 1, (1, 1): -1}
    with pytest.raises(ValueError):
        golden.parse_cumulant_formula("a1 + ?")
