"""Crystallographic root systems and exact weights.

Roots are integer vectors in the simple-root basis.  Weights live in
"simple-coroot-value" coordinates: a weight is the tuple of values
``alpha_i^vee(lambda)``, each an exact rational plus a rational vector of
coefficients of finitely many formal transcendentals ``t_1, ..., t_k``.
All integrality, regularity and dominance questions reduce to evaluating
coroots against these coordinates, which stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = [
    "RootSystem",
    "Weight",
    "Kind",
    "Classification",
    "WeightFlags",
    "build_root_system",
    "pair",
    "classify",
    "weight_flags",
]

MAX_RANK = 6

Value = tuple[Fraction, tuple[Fraction, ...]]


class Kind(Enum):
    INTEGER = "integer"
    RATIONAL_NON_INTEGER = "rational-non-integer"
    IRRATIONAL = "irrational"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    integer: int | None = None


@dataclass(frozen=True)
class WeightFlags:
    antidominant: bool
    regular: bool
    integral: bool


@dataclass(frozen=True)
class Weight:
    """Exact point of h*, as the tuple of simple-coroot values."""

    coords: tuple[Value, ...]
    n_transcendentals: int

    def __post_init__(self):
        for rational, tvec in self.coords:
            if len(tvec) != self.n_transcendentals:
                raise ValueError("inconsistent transcendental dimensions")
            if not isinstance(rational, Fraction) or not all(
                isinstance(c, Fraction) for c in tvec
            ):
                raise TypeError("weight coordinates must be Fractions")

    @property
    def rank(self) -> int:
        return len(self.coords)

    @classmethod
    def from_values(cls, values, n_transcendentals: int = 0) -> "Weight":
        """Build from per-simple values; plain rationals get a zero t-vector."""
        coords = []
        for v in values:
            if isinstance(v, tuple):
                rational, tvec = v
                coords.append(
                    (Fraction(rational), tuple(Fraction(c) for c in tvec))
                )
            else:
                coords.append(
                    (Fraction(v), (Fraction(0),) * n_transcendentals)
                )
        k = n_transcendentals
        for _, tvec in coords:
            k = max(k, len(tvec))
        coords = [
            (r, tvec + (Fraction(0),) * (k - len(tvec))) for r, tvec in coords
        ]
        return cls(tuple(coords), k)

    @classmethod
    def rho(cls, rank: int) -> "Weight":
        return cls.from_values([1] * rank)

    @classmethod
    def minus_rho(cls, rank: int) -> "Weight":
        return cls.from_values([-1] * rank)

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls.from_values([0] * rank)


class RootSystem:
    """Finite crystallographic root datum.

    ``roots[:rank]`` are the simple roots in Cartan order; the remaining
    positive roots follow sorted by (height, coordinates); the negative of
    ``roots[i]`` sits at index ``i + positive_root_count``.
    """

    def __init__(self, type_letter: str, rank: int, cartan_matrix):
        self.type_letter = type_letter
        self.rank = rank
        self.cartan_matrix = tuple(tuple(row) for row in cartan_matrix)
        positives = _close_positive_roots(self.cartan_matrix)
        simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        others = sorted(
            (r for r in positives if r not in set(simple)),
            key=lambda r: (sum(r), r),
        )
        pos_roots = simple + others
        self.positive_root_count = len(pos_roots)
        self.roots = tuple(pos_roots + [tuple(-c for c in r) for r in pos_roots])
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.coroot_coords = tuple(_coroots_for(self.cartan_matrix, self.roots))

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    def is_positive(self, root_index: int) -> bool:
        return root_index < self.positive_root_count

    def negate(self, root_index: int) -> int:
        p = self.positive_root_count
        return root_index - p if root_index >= p else root_index + p

    def root_pairing(self, i: int, j: int) -> int:
        """Integer pairing roots[i]^vee(roots[j])."""
        d = self.coroot_coords[i]
        r = self.roots[j]
        return sum(
            d[k] * sum(self.cartan_matrix[k][m] * r[m] for m in range(self.rank))
            for k in range(self.rank)
        )

    def reflect(self, simple_index: int, root_index: int) -> int:
        """Index of s_i(roots[root_index])."""
        r = self.roots[root_index]
        p = sum(self.cartan_matrix[simple_index][m] * r[m] for m in range(self.rank))
        image = list(r)
        image[simple_index] -= p
        return self.root_index[tuple(image)]

    def __repr__(self):
        return f"RootSystem({self.type_letter}{self.rank}, {self.n_roots} roots)"


def _cartan_matrix(type_letter: str, rank: int):
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def bond(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    if type_letter == "A":
        if n < 1:
            return None
        for i in range(n - 1):
            bond(i, i + 1)
    elif type_letter == "B":
        if n < 2:
            return None
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=-1, up=-2)  # alpha_n short
    elif type_letter == "C":
        if n < 2:
            return None
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=-2, up=-1)  # alpha_n long
    elif type_letter == "D":
        if n < 3:
            return None
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif type_letter == "E":
        if n != 6:
            return None
        # Bourbaki numbering: node 2 hangs off node 4
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (1, 3)):
            bond(i, j)
    elif type_letter == "F":
        if n != 4:
            return None
        bond(0, 1)
        bond(1, 2, down=-1, up=-2)  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        bond(2, 3)
    elif type_letter == "G":
        if n != 2:
            return None
        bond(0, 1, down=-1, up=-3)  # alpha_1 long, alpha_2 short
    else:
        return None
    return a


def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Construct the root system of the given finite type, rank <= 6."""
    letter = type_letter.upper()
    if letter not in "ABCDEFG":
        raise ValueError(f"unknown type letter {type_letter!r}")
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank {rank} out of range 1..{MAX_RANK}")
    cartan = _cartan_matrix(letter, rank)
    if cartan is None:
        raise ValueError(f"{letter}{rank} is not a valid finite type at this rank")
    return RootSystem(letter, rank, cartan)


def _close_positive_roots(cartan):
    """All roots via closure of the simple roots under simple reflections."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        r = queue.pop()
        for i in range(n):
            p = sum(cartan[i][m] * r[m] for m in range(n))
            image = list(r)
            image[i] -= p
            t = tuple(image)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    positives = [r for r in seen if all(c >= 0 for c in r)]
    if 2 * len(positives) != len(seen):
        raise AssertionError("roots do not split into +/- halves")
    return positives


def _coroots_for(cartan, roots):
    """Coroot coordinates (simple-coroot basis) for every root, via the
    same reflection closure used for the roots themselves."""
    n = len(cartan)
    by_root = {}
    start = [
        (
            tuple(1 if j == i else 0 for j in range(n)),
            tuple(1 if j == i else 0 for j in range(n)),
        )
        for i in range(n)
    ]
    queue = list(start)
    for r, d in start:
        by_root[r] = d
    while queue:
        r, d = queue.pop()
        for i in range(n):
            p = sum(cartan[i][m] * r[m] for m in range(n))
            image = list(r)
            image[i] -= p
            # s_i on coroots: d'_i = d_i - sum_k d_k * cartan[k][i]
            pd = sum(d[k] * cartan[k][i] for k in range(n))
            dimage = list(d)
            dimage[i] -= pd
            t, td = tuple(image), tuple(dimage)
            if t not in by_root:
                by_root[t] = td
                queue.append((t, td))
    return [by_root[r] for r in roots]


def pair(rs: RootSystem, root_index: int, lam: Weight) -> Value:
    """Evaluate the coroot of roots[root_index] against lam, exactly."""
    if lam.rank != rs.rank:
        raise ValueError(f"weight rank {lam.rank} does not match system rank {rs.rank}")
    d = rs.coroot_coords[root_index]
    rational = Fraction(0)
    tvec = [Fraction(0)] * lam.n_transcendentals
    for k, dk in enumerate(d):
        if dk == 0:
            continue
        r, t = lam.coords[k]
        rational += dk * r
        for j, c in enumerate(t):
            tvec[j] += dk * c
    return (rational, tuple(tvec))


def classify(value: Value) -> Classification:
    rational, tvec = value
    if any(c != 0 for c in tvec):
        return Classification(Kind.IRRATIONAL)
    if rational.denominator == 1:
        return Classification(Kind.INTEGER, int(rational))
    return Classification(Kind.RATIONAL_NON_INTEGER)


def is_integer(value: Value) -> bool:
    rational, tvec = value
    return rational.denominator == 1 and all(c == 0 for c in tvec)


def is_zero(value: Value) -> bool:
    rational, tvec = value
    return rational == 0 and all(c == 0 for c in tvec)


def weight_flags(rs: RootSystem, lam: Weight) -> WeightFlags:
    antidominant = True
    regular = True
    integral = True
    for i in range(rs.positive_root_count):
        v = pair(rs, i, lam)
        c = classify(v)
        if c.kind is Kind.INTEGER and c.integer >= 0:
            antidominant = False
        if is_zero(v):
            regular = False
        if c.kind is not Kind.INTEGER:
            integral = False
    return WeightFlags(antidominant, regular, integral)


def antidominance_witness(rs: RootSystem, lam: Weight, allow_zero: bool = False):
    """First positive root violating antidominance, with its value, or None.

    With allow_zero, zero pairings are tolerated: that is the weaker sense
    under which singular weights can still be antidominant.
    """
    bound = 0 if allow_zero else -1
    for i in range(rs.positive_root_count):
        c = classify(pair(rs, i, lam))
        if c.kind is Kind.INTEGER and c.integer > bound:
            return i, c.integer
    return None
