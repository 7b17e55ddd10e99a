import itertools
import json
import os
from fractions import Fraction

import pytest

import mltoric

FIXTURES = os.environ.get("MLTORIC_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))


def load(name):
    with open(os.path.join(FIXTURES, name + ".json")) as f:
        doc = json.load(f)
    return mltoric.AffineMonoid(doc["generators"], rank=doc["rank"])


def sums(gens, bound):
    seen = {tuple(0 for _ in gens[0])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if sum(q) <= bound and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_second_example():
    p = load("example2")
    assert p.rank == 2 and p.facet_count == 2
    r = mltoric.analyze(p, name="example2")
    assert r["status"] == "complete"
    assert r["splitting"]["k"] == 1
    assert r["splitting"]["core_generators_ambient"] == [[0, 2], [0, 3]]
    assert r["flags"]["is_rigid_core"] is True
    assert "ml face:" in mltoric.report_text(p)


def test_holes_match_sums():
    p = load("example5")
    reached = sums([(1, 0), (1, 2), (0, 3), (0, 4), (0, 5)], 8)
    cone = [(a, b) for a, b in itertools.product(range(9), repeat=2) if a + b <= 6]
    expected = sorted(x for x in cone if x not in reached)
    assert [tuple(h) for h in p.holes(6)] == expected
    assert p.is_hole((0, 2)) and not p.contains((0, 2))
    assert p.contains((1, 2))


def test_roots_and_derivations():
    p = load("example2")
    rs = mltoric.roots(p, 1, height=2)
    assert [tuple(r["e"]) for r in rs] == [(-1, 0), (-1, 1), (-1, 2)]
    assert [r["descends"] for r in rs] == ["yes", "no", "yes"]
    assert mltoric.derive(p, 1, (-1, 2), (1, 0)) == {(0, 2): 1}
    assert mltoric.descends(p, 1, (-1, 0))
    assert not mltoric.descends(p, 1, (-1, 1))
    assert mltoric.derive(p, 1, (-1, 0), (2, 3)) == {(1, 3): 2}
    assert mltoric.derive(p, 1, (-1, 0), (2, 0), t=1) == {(2, 0): 1, (1, 0): 2, (0, 0): 1}
    half = mltoric.derive(p, 1, (-1, 0), (1, 0), t=Fraction(1, 2))
    assert half == {(1, 0): 1, (0, 0): Fraction(1, 2)}


def test_errors():
    with pytest.raises(mltoric.UnsupportedMonoid):
        mltoric.AffineMonoid([[1], [-1]])
    p = load("example2")
    with pytest.raises(mltoric.ClosureError):
        mltoric.derive(p, 1, (-1, 1), (1, 0))
    with pytest.raises(mltoric.InputError):
        mltoric.derive(p, 1, (1, 0), (1, 0))
    assert issubclass(mltoric.InputError, mltoric.MltoricError)


def test_big_integers_and_partial_reports():
    p = mltoric.AffineMonoid([[10**30]])
    assert p.generators == [(10**30,)]
    r = mltoric.analyze(load("example2_line"), degree_bound=1)
    assert r["status"] == "partial"


def test_property_suite():
    assert all(passed for _, passed, _ in mltoric.check(load("example1")))
