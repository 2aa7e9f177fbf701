"""Right W_Theta-cosets, integral data, cross-sections, integral models,
conjugation transport, descent-chain search, and stabilizer data.

Coset ids (global and model-level) are assigned by sorting on
(length of longest element, element id), so all derived tables are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .rootsystem import (
    RootSystem,
    Weight,
    antidominance_witness,
    is_integer,
    is_zero,
    pair,
)
from .weylgroup import WeylGroup

__all__ = [
    "CosetStep",
    "CosetRecord",
    "ThetaCosets",
    "IntegralData",
    "IntegralModel",
    "StabilizerData",
    "SubgroupBruhat",
    "build_theta_cosets",
    "integral_data",
    "build_integral_model",
    "conjugate_model",
    "descent_chain",
    "stabilizer_data",
    "subgroup_bruhat",
]


class CosetStep(Enum):
    RAISE = "raise"
    FIX = "fix"
    LOWER = "lower"


@dataclass(frozen=True)
class CosetRecord:
    id: int
    member_ids: tuple[int, ...]
    longest: int
    shortest: int


class ThetaCosets:
    """The set W_Theta \\ W with its partial order and simple-step moves."""

    def __init__(self, group: WeylGroup, theta):
        self.group = group
        self.theta = tuple(sorted(theta))
        if any(not 0 <= i < group.rs.rank for i in self.theta):
            raise ValueError(f"theta {theta} not a subset of simple indices")
        self.w_theta_ids = group.subgroup_closure(
            [group.simple_ids[i] for i in self.theta]
        )
        self._build()

    def _build(self):
        group = self.group
        coset_of = [-1] * group.size
        raw = []
        for start in range(group.size):
            if coset_of[start] != -1:
                continue
            members = {start}
            queue = [start]
            while queue:
                x = queue.pop()
                for i in self.theta:
                    y = group.left_table[x][i]
                    if y not in members:
                        members.add(y)
                        queue.append(y)
            for x in members:
                coset_of[x] = len(raw)
            raw.append(members)
        order_key = []
        for members in raw:
            longest = max(members, key=lambda x: (group.length(x), x))
            order_key.append((group.length(longest), longest))
        ranking = sorted(range(len(raw)), key=lambda k: order_key[k])
        relabel = {old: new for new, old in enumerate(ranking)}
        cosets = []
        for old in ranking:
            members = sorted(raw[old])
            lengths = [group.length(x) for x in members]
            longest = members[max(range(len(members)), key=lambda k: lengths[k])]
            shortest = members[min(range(len(members)), key=lambda k: lengths[k])]
            cosets.append(
                CosetRecord(len(cosets), tuple(members), longest, shortest)
            )
        self.cosets = cosets
        self.coset_of = [relabel[c] for c in coset_of]
        self.n_cosets = len(cosets)

    def leq(self, c: int, d: int) -> bool:
        return self.group.bruhat_leq(self.cosets[c].longest, self.cosets[d].longest)

    def length(self, c: int) -> int:
        return self.group.length(self.cosets[c].longest)

    def times_simple(self, c: int, i: int) -> tuple[CosetStep, int]:
        """Classify C s_i against C and return the target coset."""
        group = self.group
        wc = self.cosets[c].longest
        x = group.right_table[wc][i]
        target = self.coset_of[x]
        if target == c:
            return (CosetStep.FIX, c)
        # in the moving cases the longest element of the target is w^C s_i
        if self.cosets[target].longest != x:
            raise AssertionError("coset step does not move the longest element")
        if group.length(x) > group.length(wc):
            return (CosetStep.RAISE, target)
        return (CosetStep.LOWER, target)

    def times_element(self, c: int, w: int) -> int:
        """Coset of C w (well-defined from any member)."""
        return self.coset_of[self.group.mult(self.cosets[c].longest, w)]


def build_theta_cosets(group: WeylGroup, theta) -> ThetaCosets:
    return ThetaCosets(group, theta)


@dataclass(frozen=True)
class IntegralData:
    lam: Weight
    sigma_lambda_pos: tuple[int, ...]
    pi_lambda: tuple[int, ...]
    w_lambda_ids: frozenset[int]
    a_lambda: tuple[int, ...]
    a_theta_lambda: tuple[int, ...]


def _integral_positive_roots(rs: RootSystem, lam: Weight) -> tuple[int, ...]:
    return tuple(
        r for r in range(rs.positive_root_count) if is_integer(pair(rs, r, lam))
    )


def _simple_roots_of(rs: RootSystem, positive_indices) -> tuple[int, ...]:
    coords = {rs.roots[r]: r for r in positive_indices}
    simple = []
    for r in positive_indices:
        target = rs.roots[r]
        decomposable = any(
            tuple(t - s for t, s in zip(target, other)) in coords
            for other in coords
            if other != target
        )
        if not decomposable:
            simple.append(r)
    return tuple(simple)


def _cartan_inverse(rs: RootSystem):
    """Exact inverse of the Cartan matrix, via Gauss-Jordan elimination."""
    n = rs.rank
    a = [[Fraction(rs.cartan_matrix[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = 1 / a[col][col]
        a[col] = [x * scale for x in a[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def _in_root_lattice(cartan_inv, value_vector) -> bool:
    """Whether a weight given by coroot values lies in Z.Sigma.

    Membership needs cartan^-1 * values integral and vanishing
    transcendental parts.
    """
    for _, tvec in value_vector:
        if any(c != 0 for c in tvec):
            return False
    for row in cartan_inv:
        entry = sum(x * v[0] for x, v in zip(row, value_vector))
        if entry.denominator != 1:
            return False
    return True


def integral_data(group: WeylGroup, theta, lam: Weight) -> IntegralData:
    rs = group.rs
    if lam.rank != rs.rank:
        raise ValueError("weight rank does not match root system")
    sigma_pos = _integral_positive_roots(rs, lam)
    pi_lambda = _simple_roots_of(rs, sigma_pos)
    w_lambda = group.subgroup_closure([group.reflection(r) for r in sigma_pos])
    # cross-check the lattice description {w : w lam - lam in Z.Sigma}
    cartan_inv = _cartan_inverse(rs)
    lattice_stab = frozenset(
        w
        for w in range(group.size)
        if _in_root_lattice(
            cartan_inv,
            [
                (
                    wv[0] - lv[0],
                    tuple(a - b for a, b in zip(wv[1], lv[1])),
                )
                for wv, lv in zip(group.act_on_weight(w, lam).coords, lam.coords)
            ],
        )
    )
    if lattice_stab != w_lambda:
        raise AssertionError(
            "integral Weyl group disagrees with its lattice description"
        )
    p = rs.positive_root_count
    a_lambda = tuple(
        sorted(
            (
                u
                for u in range(group.size)
                if all(group.elements[u].images[r] < p for r in sigma_pos)
            ),
            key=lambda u: (group.length(u), u),
        )
    )
    if len(a_lambda) * len(w_lambda) != group.size:
        raise AssertionError("|A_lambda| * |W_lambda| != |W|")
    theta = tuple(sorted(theta))
    shortest_reps = _shortest_coset_reps(group, theta)
    a_theta_lambda = tuple(u for u in a_lambda if u in shortest_reps)
    return IntegralData(
        lam=lam,
        sigma_lambda_pos=sigma_pos,
        pi_lambda=pi_lambda,
        w_lambda_ids=w_lambda,
        a_lambda=a_lambda,
        a_theta_lambda=a_theta_lambda,
    )


def _shortest_coset_reps(group: WeylGroup, theta) -> frozenset[int]:
    """w_Theta . ^Theta W = {w : w^-1 Theta inside positive roots}."""
    p = group.rs.positive_root_count
    result = set()
    for w in range(group.size):
        inv_images = group.elements[group.inverse[w]].images
        if all(inv_images[i] < p for i in theta):
            result.add(w)
    return frozenset(result)


class SubgroupBruhat:
    """Bruhat order of the Coxeter system (W_lambda, Pi_lambda).

    This is genuinely smaller than the restriction of the Bruhat order of
    W: e.g. in B2 with an A1 x A1 integral system, the two orthogonal
    simple reflections are incomparable here although one is a subword of
    the other in W.  Computed by the lifting recursion with lengths and
    descents taken inside the subgroup.
    """

    def __init__(self, group: WeylGroup, sigma_lambda_pos, pi_lambda, members):
        self.group = group
        self.pi = tuple(pi_lambda)
        p = group.rs.positive_root_count
        self._neg_bound = p
        self._ell = {
            w: sum(1 for r in sigma_lambda_pos if group.elements[w].images[r] >= p)
            for w in members
        }
        self._right = {
            p_root: {
                w: group.mult(w, group.reflection(p_root)) for w in members
            }
            for p_root in self.pi
        }
        self._memo: dict[tuple[int, int], bool] = {}

    def ell(self, w: int) -> int:
        return self._ell[w]

    def _first_descent(self, w: int) -> int:
        images = self.group.elements[w].images
        for p_root in self.pi:
            if images[p_root] >= self._neg_bound:
                return p_root
        raise AssertionError("non-identity subgroup element has no descent")

    def leq(self, v: int, w: int) -> bool:
        if v == w:
            return True
        if self._ell[v] >= self._ell[w]:
            return False
        key = (v, w)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        s = self._first_descent(w)
        ws = self._right[s][w]
        vs = self._right[s][v]
        if self._ell[vs] < self._ell[v]:
            result = self.leq(vs, ws)
        else:
            result = self.leq(v, ws)
        self._memo[key] = result
        return result


def subgroup_bruhat(group: WeylGroup, idata: "IntegralData") -> SubgroupBruhat:
    return SubgroupBruhat(
        group, idata.sigma_lambda_pos, idata.pi_lambda, idata.w_lambda_ids
    )


@dataclass(frozen=True)
class ModelCoset:
    id: int
    member_ids: tuple[int, ...]
    longest: int
    shortest: int


class IntegralModel:
    """Right W_{lambda,Theta(u,lambda)}-cosets of W_lambda for one double
    coset, with the transport bijections ind / restrict."""

    def __init__(
        self,
        tc: ThetaCosets,
        idata: IntegralData,
        u: int,
        order: SubgroupBruhat | None = None,
    ):
        group = tc.group
        if u not in idata.a_theta_lambda:
            raise ValueError(f"element {u} is not in A_Theta_lambda")
        self.tc = tc
        self.idata = idata
        self.group = group
        self.u = u
        rs = group.rs
        theta_set = set(tc.theta)
        self.theta_u_lambda = tuple(
            r
            for r in idata.pi_lambda
            if _root_supported_on(rs, group.act_on_root(u, r), theta_set)
        )
        self.pi_lambda = idata.pi_lambda
        self._reflections = {r: group.reflection(r) for r in idata.pi_lambda}
        sub_ids = group.subgroup_closure(
            [self._reflections[r] for r in self.theta_u_lambda]
        )
        self.w_sub_ids = sub_ids
        self.order = order if order is not None else subgroup_bruhat(group, idata)
        self._ell_lambda = {w: self.order.ell(w) for w in idata.w_lambda_ids}
        self._build_cosets()
        self._build_transport()

    def _build_cosets(self):
        group = self.group
        coset_of: dict[int, int] = {}
        raw = []
        for start in sorted(self.idata.w_lambda_ids):
            if start in coset_of:
                continue
            members = {start}
            queue = [start]
            while queue:
                x = queue.pop()
                for r in self.theta_u_lambda:
                    y = group.mult(self._reflections[r], x)
                    if y not in members:
                        members.add(y)
                        queue.append(y)
            for x in members:
                coset_of[x] = len(raw)
            raw.append(members)
        ranking = sorted(
            range(len(raw)),
            key=lambda k: (
                max(self._ell_lambda[x] for x in raw[k]),
                max(raw[k], key=lambda x: (self._ell_lambda[x], x)),
            ),
        )
        cosets = []
        relabel = {}
        for old in ranking:
            members = sorted(raw[old])
            longest = max(members, key=lambda x: (self._ell_lambda[x], x))
            shortest = min(members, key=lambda x: (self._ell_lambda[x], x))
            if sum(1 for x in members if self._ell_lambda[x] == self._ell_lambda[longest]) != 1:
                raise AssertionError("model coset has no unique longest element")
            relabel[old] = len(cosets)
            cosets.append(ModelCoset(len(cosets), tuple(members), longest, shortest))
        self.cosets = cosets
        self.coset_of = {x: relabel[c] for x, c in coset_of.items()}
        self.n_cosets = len(cosets)

    def _build_transport(self):
        group = self.group
        tc = self.tc
        ind = []
        for f in self.cosets:
            targets = {tc.coset_of[group.mult(self.u, x)] for x in f.member_ids}
            if len(targets) != 1:
                raise AssertionError("ind is not well defined on a model coset")
            ind.append(targets.pop())
        if len(set(ind)) != len(ind):
            raise AssertionError("ind is not injective")
        self.ind = tuple(ind)
        self.restrict = {c: f for f, c in enumerate(ind)}

    def ell_lambda(self, w: int) -> int:
        return self._ell_lambda[w]

    def length(self, f: int) -> int:
        return self._ell_lambda[self.cosets[f].longest]

    def leq(self, f: int, g: int) -> bool:
        """Model order: the Bruhat order of (W_lambda, Pi_lambda) on the
        longest coset elements."""
        return self.order.leq(self.cosets[f].longest, self.cosets[g].longest)

    def times_simple(self, f: int, alpha_root: int) -> tuple[CosetStep, int]:
        """Classify F s_alpha for alpha in Pi_lambda."""
        if alpha_root not in self.pi_lambda:
            raise ValueError(f"root {alpha_root} is not in Pi_lambda")
        vf = self.cosets[f].longest
        x = self.group.mult(vf, self._reflections[alpha_root])
        target = self.coset_of[x]
        if target == f:
            return (CosetStep.FIX, f)
        if self.cosets[target].longest != x:
            raise AssertionError("model coset step does not move the longest element")
        if self._ell_lambda[x] > self._ell_lambda[vf]:
            return (CosetStep.RAISE, target)
        return (CosetStep.LOWER, target)

    def global_cosets(self) -> tuple[int, ...]:
        """Global right W_Theta-cosets of this double coset."""
        return self.ind

    def __repr__(self):
        return f"IntegralModel(u={self.u}, cosets={self.n_cosets})"


def _root_supported_on(rs: RootSystem, root_index: int, theta_set) -> bool:
    coords = rs.roots[root_index]
    return all(c == 0 or i in theta_set for i, c in enumerate(coords))


def build_integral_model(
    tc: ThetaCosets,
    idata: IntegralData,
    u: int,
    order: SubgroupBruhat | None = None,
) -> IntegralModel:
    return IntegralModel(tc, idata, u, order)


def conjugate_model(model: IntegralModel, beta: int):
    """Transport a model through the non-integral simple reflection s_beta.

    Returns (model for (r, s_beta lam), mapping old model coset id -> new
    model coset id) where the mapping is F |-> s_beta F s_beta.
    """
    group = model.group
    tc = model.tc
    lam = model.idata.lam
    if is_integer(pair(group.rs, beta, lam)):
        raise ValueError(f"simple root {beta} is integral to lambda")
    s_b = group.simple_ids[beta]
    new_lam = group.act_on_weight(s_b, lam)
    new_idata = integral_data(group, tc.theta, new_lam)
    j = group.mult(model.u, s_b)
    r = tc.cosets[tc.coset_of[j]].shortest
    if r not in new_idata.a_theta_lambda:
        raise AssertionError("conjugated representative escaped A_Theta_lambda")
    new_model = IntegralModel(tc, new_idata, r)
    mapping = {}
    for f in model.cosets:
        x = group.mult(group.mult(s_b, f.longest), s_b)
        mapping[f.id] = new_model.coset_of[x]
    if len(set(mapping.values())) != model.n_cosets or model.n_cosets != new_model.n_cosets:
        raise AssertionError("conjugation did not give a coset bijection")
    return new_model, mapping


def descent_chain(tc: ThetaCosets, idata: IntegralData, c: int):
    """Find alpha in Pi_lambda and a chain of non-integral simple roots
    realizing a model descent of C, per the descent-search procedure.

    Returns (alpha_root_index, chain) with chain a list of simple indices.
    """
    group = tc.group
    rs = group.rs
    rep = _double_coset_rep(tc, idata, c)
    if tc.coset_of[rep] == c:
        raise ValueError(
            "coset is the smallest in its double coset; no descent chain exists"
        )
    chain: list[int] = []
    z = 0
    cur_c = c
    cur_lam = idata.lam
    cur_pi = set(idata.pi_lambda)
    # the chain strictly shortens the coset, so this terminates
    while True:
        found = None
        for i in range(rs.rank):
            if i not in cur_pi:
                continue
            step, target = tc.times_simple(cur_c, i)
            if step is CosetStep.LOWER:
                found = i
                break
        if found is not None:
            alpha = group.act_on_root(z, found)
            if alpha not in idata.pi_lambda:
                raise AssertionError("transported descent left Pi_lambda")
            return alpha, chain
        extended = False
        for b in range(rs.rank):
            if is_integer(pair(rs, b, cur_lam)):
                continue
            step, target = tc.times_simple(cur_c, b)
            if step is CosetStep.LOWER:
                chain.append(b)
                z = group.mult(z, group.simple_ids[b])
                cur_c = target
                cur_lam = group.act_on_weight(group.simple_ids[b], cur_lam)
                cur_pi = set(
                    _simple_roots_of(rs, _integral_positive_roots(rs, cur_lam))
                )
                extended = True
                break
        if not extended:
            raise AssertionError("descent-chain search is stuck; this contradicts "
                                 "the termination guarantee")


def _double_coset_rep(tc: ThetaCosets, idata: IntegralData, c: int) -> int:
    """The A_Theta_lambda representative of the double coset containing C."""
    group = tc.group
    for u in idata.a_theta_lambda:
        # C is in W_Theta u W_lambda iff the u-translate of some v hits C
        for v in idata.w_lambda_ids:
            if tc.coset_of[group.mult(u, v)] == c:
                return u
    raise AssertionError(f"coset {c} not covered by any double coset")


@dataclass(frozen=True)
class StabilizerData:
    w_stab_ids: frozenset[int]
    a_theta_stab: tuple[int, ...]


def stabilizer_data(group: WeylGroup, theta, lam: Weight) -> StabilizerData:
    """Stabilizer W^lambda and its double-coset cross-section A_Theta^lambda.

    Antidominance is checked in the weak sense (no positive-integer coroot
    pairing), which is the one compatible with singular weights.
    """
    rs = group.rs
    witness = antidominance_witness(rs, lam, allow_zero=True)
    if witness is not None:
        root, value = witness
        raise ValueError(
            f"lambda is not antidominant: coroot pairing {value} on root {root}"
        )
    stab = frozenset(
        w for w in range(group.size) if group.act_on_weight(w, lam) == lam
    )
    zero_pos = [
        r for r in range(rs.positive_root_count) if is_zero(pair(rs, r, lam))
    ]
    refl_subgroup = group.subgroup_closure([group.reflection(r) for r in zero_pos])
    if refl_subgroup != stab:
        raise AssertionError(
            "stabilizer is not the reflection subgroup of the zero roots"
        )
    p = rs.positive_root_count
    shortest_reps = _shortest_coset_reps(group, tuple(sorted(theta)))
    a_stab = tuple(
        sorted(
            (
                u
                for u in range(group.size)
                if all(group.elements[u].images[r] < p for r in zero_pos)
                and u in shortest_reps
            ),
            key=lambda u: (group.length(u), u),
        )
    )
    return StabilizerData(w_stab_ids=stab, a_theta_stab=a_stab)
