"""Shared fixtures: cached groups and the weight catalog used across the
suite and the acceptance criteria."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest

from whitkl import Weight, build_root_system, enumerate_group


@lru_cache(maxsize=None)
def get_group(type_letter: str, rank: int):
    return enumerate_group(build_root_system(type_letter, rank))


SMALL_TYPES = [("A", 1), ("A", 2), ("B", 2), ("A", 3), ("B", 3), ("G", 2)]


def weight_catalog(rank: int) -> list[Weight]:
    """At least five integrality patterns per rank: fully integral, fully
    non-integral, mixed with non-simple integral roots, half-integral
    rationals, and a singular integral point."""
    half = Fraction(1, 2)
    patterns = [
        Weight.from_values([-1] * rank),
        Weight.from_values(
            [(-1, (Fraction(i + 1),)) for i in range(rank)], n_transcendentals=1
        ),
    ]
    # mixed: opposite transcendental coefficients on the first two simples
    tcoeffs = [Fraction(0)] * rank
    if rank >= 2:
        tcoeffs[0], tcoeffs[1] = Fraction(-1), Fraction(1)
    else:
        tcoeffs[0] = Fraction(1)
    patterns.append(
        Weight.from_values(
            [(-1, (tcoeffs[i],)) for i in range(rank)], n_transcendentals=1
        )
    )
    patterns.append(Weight.from_values([-half] + [-1] * (rank - 1)))
    patterns.append(Weight.from_values([-half] * rank))
    patterns.append(Weight.from_values([0] + [-1] * (rank - 1)))
    patterns.append(Weight.from_values([-2] + [-1] * (rank - 1)))
    return patterns


def lambda_golden_a3() -> Weight:
    return Weight.from_values([(-5, (-4,)), (-5, (4,)), (-5, (0,))])


@pytest.fixture(scope="session")
def a3_group():
    return get_group("A", 3)


@pytest.fixture(scope="session")
def lam_g():
    return lambda_golden_a3()


def check_structural_invariants(table):
    """KL-table invariants: off-diagonal polynomials in qZ[q], block
    support, unitriangularity, and parity homogeneity."""
    from whitkl import LaurentPoly

    tc = table.tc
    for (c, d), poly in table.polys.items():
        if c == d:
            assert poly == LaurentPoly.one()
            continue
        assert poly.in_qZq(), (c, d, poly.text())
        model = table.model_of_coset(c)
        assert d in model.restrict, f"({c},{d}) crosses a block boundary"
        f, g = model.restrict[c], model.restrict[d]
        assert model.leq(g, f) and f != g
        assert tc.length(d) < tc.length(c)
        gap = model.length(f) - model.length(g)
        assert poly.parity_homogeneous(gap), (c, d, poly.text(), gap)
    # phi rows agree with the polynomial table
    for c, elt in table.phi.items():
        assert elt.coeff(c) == LaurentPoly.one()
        for d, poly in elt.coeffs.items():
            if d != c:
                assert table.polys.get((c, d)) == poly
