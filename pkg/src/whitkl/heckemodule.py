"""Free Laurent-polynomial modules on coset bases with the three-case
operators T_alpha, the right W-action on labels, and the restriction map.

Every element carries a space tag identifying its basis-index set; mixing
tags is a hard error, because the global coset module and the per-double-
coset models are all isomorphic-looking and silent index confusion is the
main hazard here.
"""

from __future__ import annotations

from .cosetlab import CosetStep, IntegralData, IntegralModel, ThetaCosets
from .laurent import LaurentPoly

__all__ = [
    "SpaceMismatchError",
    "HeckeElt",
    "global_tag",
    "model_tag",
    "delta",
    "t_alpha",
    "t_alpha_model",
    "right_mult_simple",
    "restrict_lambda",
]


class SpaceMismatchError(ValueError):
    pass


def global_tag(tc: ThetaCosets):
    return ("global", tc.theta)


def model_tag(model: IntegralModel):
    return ("model", model.tc.theta, model.u, model.idata.lam)


class HeckeElt:
    """Finitely supported map from coset ids to Laurent polynomials."""

    __slots__ = ("tag", "coeffs")

    def __init__(self, tag, coeffs=None):
        self.tag = tag
        clean = {}
        if coeffs:
            for cid, poly in coeffs.items():
                if poly:
                    clean[cid] = poly
        self.coeffs = clean

    def coeff(self, cid: int) -> LaurentPoly:
        return self.coeffs.get(cid, LaurentPoly.zero())

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def _check(self, other: "HeckeElt"):
        if self.tag != other.tag:
            raise SpaceMismatchError(
                f"cannot combine elements tagged {self.tag} and {other.tag}"
            )

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        coeffs = dict(self.coeffs)
        for cid, poly in other.coeffs.items():
            coeffs[cid] = coeffs.get(cid, LaurentPoly.zero()) + poly
        return HeckeElt(self.tag, coeffs)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        coeffs = dict(self.coeffs)
        for cid, poly in other.coeffs.items():
            coeffs[cid] = coeffs.get(cid, LaurentPoly.zero()) - poly
        return HeckeElt(self.tag, coeffs)

    def scale(self, factor) -> "HeckeElt":
        return HeckeElt(
            self.tag, {cid: poly * factor for cid, poly in self.coeffs.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.tag == other.tag and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        body = " + ".join(
            f"({poly.text()})*d{cid}" for cid, poly in sorted(self.coeffs.items())
        )
        return f"HeckeElt({body or '0'})"


def delta(tag, cid: int) -> HeckeElt:
    return HeckeElt(tag, {cid: LaurentPoly.one()})


def _apply_three_case(x: HeckeElt, step_of, tag) -> HeckeElt:
    q = LaurentPoly.q()
    qinv = LaurentPoly.monomial(-1)
    out: dict[int, LaurentPoly] = {}

    def accumulate(cid, poly):
        out[cid] = out.get(cid, LaurentPoly.zero()) + poly

    for cid, poly in x.coeffs.items():
        step, target = step_of(cid)
        if step is CosetStep.FIX:
            continue
        if step is CosetStep.RAISE:
            accumulate(cid, poly * q)
        else:
            accumulate(cid, poly * qinv)
        accumulate(target, poly)
    return HeckeElt(tag, out)


def t_alpha(tc: ThetaCosets, alpha: int, x: HeckeElt) -> HeckeElt:
    """T_alpha on the global module: q d_C + d_{C s} / 0 / q^-1 d_C + d_{C s}."""
    tag = global_tag(tc)
    if x.tag != tag:
        raise SpaceMismatchError(f"element tagged {x.tag} is not in {tag}")
    return _apply_three_case(x, lambda cid: tc.times_simple(cid, alpha), tag)


def t_alpha_model(model: IntegralModel, alpha_root: int, x: HeckeElt) -> HeckeElt:
    """The same three-case operator inside one integral model."""
    if alpha_root not in model.pi_lambda:
        raise ValueError(f"root {alpha_root} is not in Pi_lambda")
    tag = model_tag(model)
    if x.tag != tag:
        raise SpaceMismatchError(f"element tagged {x.tag} is not in {tag}")
    return _apply_three_case(
        x, lambda cid: model.times_simple(cid, alpha_root), tag
    )


def right_mult_simple(tc: ThetaCosets, x: HeckeElt, i: int) -> HeckeElt:
    """Relabel basis indices by C -> C s_i (the right W-action on labels)."""
    tag = global_tag(tc)
    if x.tag != tag:
        raise SpaceMismatchError(f"element tagged {x.tag} is not in {tag}")
    out: dict[int, LaurentPoly] = {}
    for cid, poly in x.coeffs.items():
        _, target = tc.times_simple(cid, i)
        out[target] = out.get(target, LaurentPoly.zero()) + poly
    return HeckeElt(tag, out)


def restrict_lambda(
    tc: ThetaCosets,
    idata: IntegralData,
    models: list[IntegralModel],
    x: HeckeElt,
) -> list[HeckeElt]:
    """Split along double cosets and relabel into each integral model."""
    tag = global_tag(tc)
    if x.tag != tag:
        raise SpaceMismatchError(f"element tagged {x.tag} is not in {tag}")
    pieces = []
    seen: set[int] = set()
    for model in models:
        coeffs = {}
        for cid, poly in x.coeffs.items():
            f = model.restrict.get(cid)
            if f is not None:
                coeffs[f] = poly
                seen.add(cid)
        pieces.append(HeckeElt(model_tag(model), coeffs))
    missing = set(x.coeffs) - seen
    if missing:
        raise ValueError(f"coset ids {sorted(missing)} not covered by any model")
    return pieces
