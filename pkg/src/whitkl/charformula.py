"""Character formulas for irreducible modules in terms of standard ones.

Characters are formal integer vectors over standard-module labels; rows
come from evaluating Kazhdan-Lusztig polynomials at q = -1.  Regular mode
is indexed by right cosets, singular mode by stabilizer double-coset
representatives, Verma mode by group elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosetlab import StabilizerData
from .klengine import KLTable, build_kl_table
from .rootsystem import Weight, antidominance_witness, is_zero, pair
from .weylgroup import WeylGroup

__all__ = [
    "CharacterFormula",
    "regular_formula",
    "invert_multiplicities",
    "singular_formula",
    "verma_mode",
]


@dataclass(frozen=True)
class CharacterFormula:
    mode: str  # "regular" | "singular"
    label_kind: str  # "coset" | "element"
    labels: tuple[int, ...]
    rows: dict[int, tuple[tuple[int, int], ...]]


def _require_antidominant(group: WeylGroup, lam: Weight, regular_needed: bool):
    # singular weights are antidominant in the weak sense: no positive
    # integer pairing on a positive root
    witness = antidominance_witness(group.rs, lam, allow_zero=not regular_needed)
    if witness is not None:
        root, value = witness
        raise ValueError(
            f"lambda is not antidominant: coroot pairing {value} on root {root}"
        )
    if regular_needed:
        for r in range(group.rs.positive_root_count):
            if is_zero(pair(group.rs, r, lam)):
                raise ValueError(
                    f"lambda is not regular: coroot pairing 0 on root {r}"
                )


def regular_formula(kl: KLTable) -> CharacterFormula:
    """Rows ch L(C) = sum_D P_{CD}(-1) ch M(D) over D in C's block."""
    _require_antidominant(kl.group, kl.lam, regular_needed=True)
    rows: dict[int, tuple[tuple[int, int], ...]] = {}
    labels = tuple(range(kl.tc.n_cosets))
    entries_by_row: dict[int, list[tuple[int, int]]] = {c: [] for c in labels}
    for (c, d), poly in kl.polys.items():
        value = poly.eval_minus_one()
        if value != 0:
            entries_by_row[c].append((d, value))
    for c in labels:
        rows[c] = tuple(sorted(entries_by_row[c]))
    return CharacterFormula("regular", "coset", labels, rows)


def invert_multiplicities(cf: CharacterFormula) -> list[list[int]]:
    """Inverse of the unitriangular coefficient matrix, over Z.

    Row i of the result gives the multiplicities of irreducibles in the
    standard module labeled cf.labels[i].
    """
    if cf.mode != "regular":
        raise ValueError("only regular-mode formulas can be inverted")
    n = len(cf.labels)
    index = {label: i for i, label in enumerate(cf.labels)}
    m = [[0] * n for _ in range(n)]
    for label, entries in cf.rows.items():
        for target, coeff in entries:
            m[index[label]][index[target]] = coeff
    # labels are sorted by coset length, so m is unitriangular
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        if m[i][i] != 1:
            raise AssertionError("coefficient matrix is not unitriangular")
        for j in range(i):
            if m[i][j]:
                f = m[i][j]
                for k in range(n):
                    if inv[j][k]:
                        inv[i][k] -= f * inv[j][k]
    return inv


def singular_formula(kl: KLTable, stab: StabilizerData) -> CharacterFormula:
    """Rows indexed by stabilizer double-coset representatives; entries
    group the regular coefficients over (W_Theta, W^lambda)-cosets."""
    group = kl.group
    _require_antidominant(group, kl.lam, regular_needed=False)
    tc = kl.tc
    w_theta = sorted(tc.w_theta_ids)
    w_stab = sorted(stab.w_stab_ids)
    rep_of_coset: dict[int, int] = {}
    for z in stab.a_theta_stab:
        for a in w_theta:
            az = group.mult(a, z)
            for b in w_stab:
                rep_of_coset[tc.coset_of[group.mult(az, b)]] = z
    if len(rep_of_coset) != tc.n_cosets:
        raise AssertionError("stabilizer double cosets do not cover all cosets")
    labels = tuple(stab.a_theta_stab)
    rows: dict[int, tuple[tuple[int, int], ...]] = {}
    for v in labels:
        c = tc.coset_of[v]
        if tc.cosets[c].shortest != v:
            raise AssertionError("stabilizer representative is not coset-shortest")
        acc: dict[int, int] = {}
        for (cc, d), poly in kl.polys.items():
            if cc != c:
                continue
            z = rep_of_coset[d]
            acc[z] = acc.get(z, 0) + poly.eval_minus_one()
        rows[v] = tuple(sorted((z, coeff) for z, coeff in acc.items() if coeff))
    return CharacterFormula("singular", "element", labels, rows)


def verma_mode(group: WeylGroup, lam: Weight) -> CharacterFormula:
    """The full pipeline with empty Theta; labels are group elements."""
    _require_antidominant(group, lam, regular_needed=True)
    kl = build_kl_table(group, (), lam)
    cf = regular_formula(kl)
    member = {c.id: c.member_ids[0] for c in kl.tc.cosets}
    labels = tuple(member[c] for c in cf.labels)
    rows = {
        member[c]: tuple(sorted((member[d], coeff) for d, coeff in entries))
        for c, entries in cf.rows.items()
    }
    return CharacterFormula("regular", "element", labels, rows)
