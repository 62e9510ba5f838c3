"""Known PBW expressions of maximal vectors, checked modulo 2.

Mod 2 the sign choices of the Chevalley basis drop out, so these
expressions are convention-free and must land in the computed
maximal-vector spaces.
"""

import re

import numpy as np
import pytest

from weylkit.linalg import Echelon
from weylkit.modules import build_weyl_module, maximal_space
from weylkit.roots import root_system

G2 = root_system("G2")

EXPRESSIONS = {
    (2, 0): {(0, 1): "y1", (1, 0): "y4"},
    (3, 0): {
        (0, 1): "y1 y4",
        (1, 0): "y1 y3 y4 + y1 y6 + y3 y5",
        (0, 0): "y1 y4 y6 + y3 y4 y5 + y4^(3)",
    },
    (0, 2): {(3, 0): "y2", (2, 0): "y2 y4", (0, 1): "y2 y5 + y3 y4"},
    (2, 1): {
        (0, 2): "y1",
        (3, 0): "y1 y2 + y3",
        (2, 0): "y1 y2 y4 + y2 y5 + y3 y4",
        (0, 1): "y1 y2 y5 + y1 y3 y4",
    },
    (4, 0): {
        (2, 1): "y1",
        (3, 0): "y4",
        (2, 0): "y1 y3 y4",
        (1, 0): "y1 y4 y6 + y3 y4 y5",
        (0, 0): "y1 y3 y5 y6 + y1^(2) y3 y4 y6 + y4 y5 y6",
    },
    (1, 2): {
        (4, 0): "y2",
        (2, 1): "y1 y2",
        (3, 0): "y2 y4",
        (2, 0): "y1 y2 y3 y4",
        (1, 0): "y1 y2 y4 y6 + y2 y3 y4 y5 + y3 y4 y6",
    },
    (3, 1): {(1, 1): "y1 y2 y5 + y1 y3 y4 + y1 y6 + y3 y5 + y4^(2)"},
    (0, 3): {
        (4, 0): "y2 y3",
        (0, 2): "y2 y5 + y3 y4 + y6",
        (3, 0): "y2 y3 y4 + y2 y6",
        (1, 0): "y2 y3^(2) y4 y5",
        (0, 0): "y2 y3 y4 y5 y6",
    },
    (5, 0): {
        (1, 2): "y1^(2)",
        (2, 1): "y1 y4",
        (0, 2): "y1^(3) y3",
        (3, 0): "y1 y3 y4 + y1 y6 + y3 y5",
        (2, 0): "y1 y4 y6 + y3 y4 y5 + y4^(3)",
        (0, 1): "y1 y3 y4 y5 + y1 y4^(3)",
        (1, 0): "y1 y3 y4^(3) + y1 y3 y5 y6 + y1 y4^(2) y6 + y3 y4^(2) y5 + y4 y5 y6",
        (0, 0): "y1 y3 y4 y5 y6",
    },
    (2, 2): {
        (0, 3): "y1",
        (5, 0): "y2",
        (1, 2): "y1^(2) y2",
        (2, 1): "y1 y2 y4",
        (0, 2): "y1 y2 y5 + y1 y3 y4 + y1 y6",
        (3, 0): "y1 y2 y3 y4 + y1 y2 y6 + y2 y3 y5 + y3 y6",
        (2, 0): "y1 y2 y4 y6 + y2 y3 y4 y5 + y2 y4^(3) + y3 y4 y6",
        (0, 1): "y1 y2 y3 y4 y5 + y1 y2 y4^(3) + y1 y3 y4 y6",
        (0, 0): "y1 y2 y3 y4 y5 y6",
    },
}

# weights carrying a two-dimensional maximal space: both listed vectors must span it
PAIRS = {
    (3, 0): ((2, 0), ["y4", "y1 y3"]),
    (5, 0): ((4, 0), ["y1 y3", "y4"]),
    (2, 2): ((4, 0), ["y1 y2 y3", "y2 y4"]),
}

FACTOR = re.compile(r"y(\d)(?:\^\((\d+)\))?")


def parse(expr):
    """``"y1 y3 + y4^(2)"`` -> list of exponent tuples."""
    terms = []
    for chunk in expr.split("+"):
        e = [0] * 6
        for root, power in FACTOR.findall(chunk):
            e[int(root) - 1] += int(power or 1)
        terms.append(tuple(e))
    return terms


def vector(module, expr):
    total = None
    for e in parse(expr):
        v = module.pbw_element(e)
        total = v if total is None else total + v
    return total


CASES = [(lam, mu, expr) for lam, table in EXPRESSIONS.items() for mu, expr in table.items()]


@pytest.mark.parametrize("lam,mu,expr", CASES, ids=[f"{l}-{m}" for l, m, _ in CASES])
def test_expression_is_a_maximal_vector(lam, mu, expr):
    module = build_weyl_module(lam, 2, G2)
    v = vector(module, expr)
    assert v.weight == mu and not v.is_zero()
    space = Echelon(module.dim_at(mu), 2)
    for row in maximal_space(module, mu):
        space.add(row)
    assert space.contains(v.coords)


@pytest.mark.parametrize("lam", sorted(PAIRS))
def test_two_vectors_span_the_ambiguous_space(lam):
    module = build_weyl_module(lam, 2, G2)
    mu, exprs = PAIRS[lam]
    k = maximal_space(module, mu)
    assert len(k) == 2
    span = Echelon(module.dim_at(mu), 2)
    for e in exprs:
        span.add(vector(module, e).coords)
    assert len(span) == 2
    assert all(span.contains(r) for r in k)


def test_parser():
    assert parse("y1 y3 + y4^(2)") == [(1, 0, 1, 0, 0, 0), (0, 0, 0, 2, 0, 0)]
    assert np.array_equal(np.array(parse("y6")), np.array([[0, 0, 0, 0, 0, 1]]))
