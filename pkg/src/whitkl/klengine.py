"""Kazhdan-Lusztig bases and polynomials for the coset modules.

Two independent paths compute the basis phi on the global coset module:

* Path A (production): run the parabolic recursion inside each integral
  model, then transport along ind.
* Path B (cross-check): recurse directly on global cosets, using the
  T-operator for integral simple descents and label relabeling plus a
  weight move for non-integral ones.

The two must agree everywhere; disagreement is the strongest available
bug detector and is surfaced, never patched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosetlab import (
    CosetStep,
    IntegralData,
    IntegralModel,
    ThetaCosets,
    build_integral_model,
    build_theta_cosets,
    integral_data,
    subgroup_bruhat,
)
from .heckemodule import (
    HeckeElt,
    delta,
    global_tag,
    model_tag,
    right_mult_simple,
    t_alpha,
    t_alpha_model,
)
from .laurent import LaurentPoly
from .oracle import classical_kl
from .rootsystem import Weight, is_integer, pair, weight_flags
from .weylgroup import WeylGroup

__all__ = [
    "KLTable",
    "kl_basis_model",
    "phi_transport",
    "phi_direct",
    "build_kl_table",
    "kl_classical_relation_check",
]


@dataclass
class KLTable:
    group: WeylGroup
    tc: ThetaCosets
    lam: Weight
    idata: IntegralData
    models: list[IntegralModel]
    psi: dict[int, dict[int, HeckeElt]]  # u -> model coset -> element
    phi: dict[int, HeckeElt]  # global coset -> element
    polys: dict[tuple[int, int], LaurentPoly]  # (C, D) global ids -> P_{CD}

    def model_of_coset(self, cid: int) -> IntegralModel:
        for model in self.models:
            if cid in model.restrict:
                return model
        raise KeyError(f"coset {cid} not in any model")


def kl_basis_model(model: IntegralModel):
    """Kazhdan-Lusztig basis of one integral model.

    Returns (psi, polys) where psi maps model coset ids to basis elements
    and polys maps (F, G) model coset pairs, diagonal included.
    """
    tag = model_tag(model)
    psi: dict[int, HeckeElt] = {}
    polys: dict[tuple[int, int], LaurentPoly] = {}
    order = sorted(range(model.n_cosets), key=lambda f: (model.length(f), f))
    base = order[0]
    if 0 not in model.cosets[base].member_ids:
        raise AssertionError("base model coset does not contain the identity")
    for f in order:
        if f == base:
            psi[f] = delta(tag, f)
            polys[(f, f)] = LaurentPoly.one()
            continue
        alpha = None
        for r in model.pi_lambda:
            step, lower = model.times_simple(f, r)
            if step is CosetStep.LOWER:
                alpha = (r, lower)
                break
        if alpha is None:
            raise AssertionError("non-base model coset admits no descent")
        r, lower = alpha
        xi = t_alpha_model(model, r, psi[lower])
        for g in sorted(
            (g for g in range(model.n_cosets) if model.length(g) < model.length(f)),
            key=lambda g: (-model.length(g), g),
        ):
            c = xi.coeff(g).coeff(0)
            if c:
                xi = xi - psi[g].scale(c)
        _assert_kl_shape(xi, f, model.leq)
        psi[f] = xi
        polys[(f, f)] = LaurentPoly.one()
        for g, poly in xi.coeffs.items():
            if g != f:
                polys[(f, g)] = poly
    return psi, polys


def _assert_kl_shape(elt: HeckeElt, top: int, leq) -> None:
    if elt.coeff(top) != LaurentPoly.one():
        raise AssertionError(f"leading coefficient at {top} is not 1")
    for cid, poly in elt.coeffs.items():
        if cid == top:
            continue
        if not poly.in_qZq():
            raise AssertionError(
                f"coefficient {poly.text()} at {cid} has a constant term"
            )
        if not leq(cid, top):
            raise AssertionError(f"support at {cid} escapes the lower interval")


def phi_transport(tc: ThetaCosets, models, psi_by_u) -> dict[int, HeckeElt]:
    """Path A: transport each model basis along ind."""
    tag = global_tag(tc)
    phi: dict[int, HeckeElt] = {}
    for model in models:
        psi = psi_by_u[model.u]
        for f, elt in psi.items():
            coeffs = {model.ind[g]: poly for g, poly in elt.coeffs.items()}
            phi[model.ind[f]] = HeckeElt(tag, coeffs)
    return phi


def phi_direct(tc: ThetaCosets, lam: Weight) -> dict[int, HeckeElt]:
    """Path B: direct recursion on global cosets across weight moves."""
    group = tc.group
    rs = group.rs
    tag = global_tag(tc)
    memo: dict[tuple[Weight, int], HeckeElt] = {}
    integral_simples_cache: dict[Weight, tuple[int, ...]] = {}

    def integral_simples(weight: Weight) -> tuple[int, ...]:
        cached = integral_simples_cache.get(weight)
        if cached is None:
            cached = tuple(
                i for i in range(rs.rank) if is_integer(pair(rs, i, weight))
            )
            integral_simples_cache[weight] = cached
        return cached

    def compute(weight: Weight, c: int) -> HeckeElt:
        key = (weight, c)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if c == 0:
            result = delta(tag, 0)
            memo[key] = result
            return result
        integral = set(integral_simples(weight))
        result = None
        for beta in range(rs.rank):
            if beta in integral:
                continue
            step, target = tc.times_simple(c, beta)
            if step is CosetStep.LOWER:
                moved = compute(group.act_on_weight(group.simple_ids[beta], weight), target)
                result = right_mult_simple(tc, moved, beta)
                break
        if result is None:
            for alpha in sorted(integral):
                step, target = tc.times_simple(c, alpha)
                if step is CosetStep.LOWER:
                    xi = t_alpha(tc, alpha, compute(weight, target))
                    for d in sorted(
                        (
                            d
                            for d in range(tc.n_cosets)
                            if tc.length(d) < tc.length(c)
                        ),
                        key=lambda d: (-tc.length(d), d),
                    ):
                        coefficient = xi.coeff(d).coeff(0)
                        if coefficient:
                            xi = xi - compute(weight, d).scale(coefficient)
                    result = xi
                    break
        if result is None:
            raise AssertionError(f"coset {c} admits no simple descent")
        _assert_kl_shape(result, c, tc.leq)
        memo[key] = result
        return result

    return {c: compute(lam, c) for c in range(tc.n_cosets)}


def build_kl_table(group: WeylGroup, theta, lam: Weight) -> KLTable:
    """Full Path-A pipeline: cosets, integral data, models, bases, phi."""
    tc = build_theta_cosets(group, theta)
    idata = integral_data(group, theta, lam)
    order = subgroup_bruhat(group, idata)
    models = [
        build_integral_model(tc, idata, u, order) for u in idata.a_theta_lambda
    ]
    psi_by_u = {}
    model_polys = {}
    for model in models:
        psi, polys = kl_basis_model(model)
        psi_by_u[model.u] = psi
        model_polys[model.u] = polys
    phi = phi_transport(tc, models, psi_by_u)
    global_polys: dict[tuple[int, int], LaurentPoly] = {}
    for model in models:
        for (f, g), poly in model_polys[model.u].items():
            global_polys[(model.ind[f], model.ind[g])] = poly
    return KLTable(
        group=group,
        tc=tc,
        lam=lam,
        idata=idata,
        models=models,
        psi=psi_by_u,
        phi=phi,
        polys=global_polys,
    )


def kl_classical_relation_check(group: WeylGroup, lam: Weight) -> bool:
    """Check P_{wv}(q) = q^{l(w)-l(v)} P_{v,w}(q^-2) against the
    R-polynomial oracle, for Theta empty and integral regular lam."""
    flags = weight_flags(group.rs, lam)
    if not (flags.integral and flags.regular):
        raise ValueError("classical comparison needs an integral regular weight")
    table = build_kl_table(group, (), lam)
    coset_of_elt = {}
    for c in table.tc.cosets:
        if len(c.member_ids) != 1:
            raise AssertionError("cosets are not singletons with empty theta")
        coset_of_elt[c.member_ids[0]] = c.id
    oracle_p = classical_kl(group)
    for (v, w), poly in oracle_p.items():
        gap = group.length(w) - group.length(v)
        expected = poly.subst_q_power(-2) * LaurentPoly.monomial(gap)
        ours = table.polys.get((coset_of_elt[w], coset_of_elt[v]), LaurentPoly.zero())
        if ours != expected:
            return False
    # no extra support on the engine side
    for (cw, cv), poly in table.polys.items():
        w = table.tc.cosets[cw].member_ids[0]
        v = table.tc.cosets[cv].member_ids[0]
        if poly and (v, w) not in oracle_p:
            return False
    return True
