"""Command-line surface: parse a job, run the pipeline, emit tables.

Subcommands: info, cosets, klpolys, characters, verify.  Output formats:
text (default), json, latex.  All output is byte-stable for identical
inputs: orderings are fixed everywhere and no randomness is involved.

Exit codes: 0 ok, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import laurent
from .charformula import (
    invert_multiplicities,
    regular_formula,
    singular_formula,
    verma_mode,
)
from .cosetlab import build_theta_cosets, integral_data, stabilizer_data
from .klengine import build_kl_table, kl_classical_relation_check, phi_direct
from .oracle import OracleReport, bruhat_subword, recompute_cosets
from .rootsystem import Weight, build_root_system, weight_flags
from .weylgroup import enumerate_group

__all__ = ["main", "parse_lambda", "parse_theta", "parse_output"]

GREEK = ["α", "β", "γ", "δ", "ε", "ζ"]
GREEK_NAMES = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"]

MAX_TRANSCENDENTALS = 4


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<num>\d+)(?:/(?P<den>\d+))?\s*"
    r"(?:\*\s*t(?P<tk>\d+))?\s*"
)


def parse_lambda(text: str, rank: int) -> Weight:
    """Parse comma-separated coordinate expressions into an exact Weight.

    Each coordinate is a sum of terms ``<rational>`` or ``<rational>*t<k>``
    giving the value of the i-th simple coroot on lambda.
    """
    pieces = text.split(",")
    if len(pieces) != rank:
        raise InputError(
            f"lambda has {len(pieces)} coordinates but the rank is {rank}"
        )
    offset = 0
    coords = []
    max_k = 0
    for piece in pieces:
        if not piece.strip():
            raise InputError(f"empty coordinate at position {offset}")
        rational = Fraction(0)
        tcoeffs: dict[int, Fraction] = {}
        pos = 0
        first = True
        while pos < len(piece):
            m = _TERM_RE.match(piece, pos)
            if not m or m.end() == pos:
                raise InputError(
                    f"syntax error at position {offset + pos}: "
                    f"cannot read a term in {piece.strip()!r}"
                )
            if m.group("sign") is None and not first:
                raise InputError(
                    f"syntax error at position {offset + pos}: missing +/- "
                    f"between terms"
                )
            sign = -1 if m.group("sign") == "-" else 1
            value = Fraction(int(m.group("num")), int(m.group("den") or 1)) * sign
            if m.group("tk") is not None:
                k = int(m.group("tk"))
                if not 1 <= k <= MAX_TRANSCENDENTALS:
                    raise InputError(
                        f"transcendental index t{k} at position {offset + pos} "
                        f"out of range 1..{MAX_TRANSCENDENTALS}"
                    )
                tcoeffs[k] = tcoeffs.get(k, Fraction(0)) + value
                max_k = max(max_k, k)
            else:
                rational += value
            pos = m.end()
            first = False
        coords.append((rational, tcoeffs))
        offset += len(piece) + 1
    return Weight.from_values(
        [
            (
                rational,
                tuple(tcoeffs.get(k, Fraction(0)) for k in range(1, max_k + 1)),
            )
            for rational, tcoeffs in coords
        ],
        n_transcendentals=max_k,
    )


def parse_theta(text: str, rank: int) -> tuple[int, ...]:
    """Simple-root names (α/alpha/...) or 1-based indices, comma-separated."""
    if text is None or not text.strip():
        return ()
    indices = []
    for piece in text.split(","):
        name = piece.strip()
        if not name:
            continue
        if name in GREEK:
            idx = GREEK.index(name)
        elif name.lower() in GREEK_NAMES:
            idx = GREEK_NAMES.index(name.lower())
        elif name.isdigit():
            idx = int(name) - 1
        else:
            raise InputError(f"unknown simple root {name!r}")
        if not 0 <= idx < rank:
            raise InputError(f"simple root {name!r} out of range for rank {rank}")
        indices.append(idx)
    return tuple(sorted(set(indices)))


def parse_type(text: str):
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
    if not m:
        raise InputError(f"cannot parse type {text!r}; expected e.g. A3, B2, G2")
    return m.group(1).upper(), int(m.group(2))


# ---------------------------------------------------------------------------
# rendering helpers


def root_name(rs, root_index: int) -> str:
    coords = rs.roots[root_index]
    parts = []
    for i, c in enumerate(coords):
        if c == 0:
            continue
        letter = GREEK[i]
        if c == 1:
            term = letter
        elif c == -1:
            term = f"-{letter}"
        else:
            term = f"{c}{letter}"
        if parts and c > 0:
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts) or "0"


def elt_name(group, elt_id: int) -> str:
    word = group.elements[elt_id].word
    if not word:
        return "e"
    return " ".join(f"s_{GREEK[i]}" for i in word)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def weight_name(lam: Weight) -> str:
    parts = []
    for rational, tvec in lam.coords:
        terms = [_frac(rational)]
        for k, c in enumerate(tvec, start=1):
            if c == 0:
                continue
            sign = "+" if c > 0 else "-"
            terms.append(f"{sign}{_frac(abs(c))}*t{k}")
        parts.append("".join(terms))
    return ",".join(parts)


# ---------------------------------------------------------------------------
# job execution


class Job:
    def __init__(self, type_letter, rank, theta, lam):
        self.rs = build_root_system(type_letter, rank)
        self.group = enumerate_group(self.rs)
        self.theta = theta
        self.lam = lam
        if lam is not None and lam.rank != rank:
            raise InputError(
                f"lambda has rank {lam.rank} but the root system has rank {rank}"
            )

    def context(self) -> dict:
        flags = weight_flags(self.rs, self.lam) if self.lam is not None else None
        return {
            "type": f"{self.rs.type_letter}{self.rs.rank}",
            "rank": self.rs.rank,
            "theta": [GREEK[i] for i in self.theta],
            "theta_indices": list(self.theta),
            "lambda": weight_name(self.lam) if self.lam is not None else None,
            "flags": None
            if flags is None
            else {
                "antidominant": flags.antidominant,
                "regular": flags.regular,
                "integral": flags.integral,
            },
        }


def _coset_entry(group, tc, record):
    return {
        "id": record.id,
        "longest": {
            "word": list(group.elements[record.longest].word),
            "name": elt_name(group, record.longest),
        },
        "shortest": {
            "word": list(group.elements[record.shortest].word),
            "name": elt_name(group, record.shortest),
        },
        "length": group.length(record.longest),
        "below": [d for d in range(tc.n_cosets) if d != record.id and tc.leq(d, record.id)],
    }


def _model_entry(job, model):
    group = job.group
    return {
        "u": {
            "word": list(group.elements[model.u].word),
            "name": elt_name(group, model.u),
        },
        "theta_u_lambda": [root_name(job.rs, r) for r in model.theta_u_lambda],
        "cosets": [
            {
                "id": f.id,
                "longest": {
                    "word": list(group.elements[f.longest].word),
                    "name": elt_name(group, f.longest),
                },
                "length_lambda": model.length(f.id),
                "global": model.ind[f.id],
            }
            for f in model.cosets
        ],
    }


def run_info(job):
    tc = build_theta_cosets(job.group, job.theta)
    idata = integral_data(job.group, job.theta, job.lam)
    table = build_kl_table(job.group, job.theta, job.lam)
    data = {
        "context": job.context(),
        "sigma_lambda_pos": [root_name(job.rs, r) for r in idata.sigma_lambda_pos],
        "pi_lambda": [root_name(job.rs, r) for r in idata.pi_lambda],
        "a_lambda": [elt_name(job.group, u) for u in idata.a_lambda],
        "a_theta_lambda": [elt_name(job.group, u) for u in idata.a_theta_lambda],
        "cosets": [_coset_entry(job.group, tc, c) for c in tc.cosets],
        "models": [_model_entry(job, m) for m in table.models],
    }
    return data


def run_cosets(job):
    data = run_info(job)
    for key in ("sigma_lambda_pos", "pi_lambda", "a_lambda", "a_theta_lambda"):
        del data[key]
    return data


def run_klpolys(job):
    table = build_kl_table(job.group, job.theta, job.lam)
    data = {
        "context": job.context(),
        "cosets": [_coset_entry(job.group, table.tc, c) for c in table.tc.cosets],
        "models": [_model_entry(job, m) for m in table.models],
        "kl_polynomials": [
            {"c": c, "d": d, "poly": poly.text()}
            for (c, d), poly in sorted(table.polys.items())
        ],
    }
    return data


def run_characters(job, invert=False, verma=False):
    group = job.group
    if verma:
        cf = verma_mode(group, job.lam)
        table = build_kl_table(group, (), job.lam)
    else:
        table = build_kl_table(group, job.theta, job.lam)
        flags = weight_flags(job.rs, job.lam)
        if flags.regular:
            cf = regular_formula(table)
        else:
            stab = stabilizer_data(group, job.theta, job.lam)
            cf = singular_formula(table, stab)

    def label(x: int) -> str:
        if cf.label_kind == "coset":
            return elt_name(group, table.tc.cosets[x].longest)
        return elt_name(group, x)

    data = {
        "context": job.context(),
        "cosets": [_coset_entry(group, table.tc, c) for c in table.tc.cosets],
        "models": [_model_entry(job, m) for m in table.models],
        "characters": [
            {
                "irreducible": label(x),
                "irreducible_id": x,
                "entries": [
                    {"standard": label(d), "standard_id": d, "coeff": coeff}
                    for d, coeff in cf.rows[x]
                ],
            }
            for x in cf.labels
        ],
    }
    if invert:
        if cf.mode != "regular":
            raise InputError("--invert needs a regular-mode character formula")
        inverse = invert_multiplicities(cf)
        data["multiplicities"] = [
            {
                "standard": label(cf.labels[i]),
                "standard_id": cf.labels[i],
                "entries": [
                    {
                        "irreducible": label(cf.labels[j]),
                        "irreducible_id": cf.labels[j],
                        "coeff": inverse[i][j],
                    }
                    for j in range(len(cf.labels))
                    if inverse[i][j]
                ],
            }
            for i in range(len(cf.labels))
        ]
    return data


def run_verify(job):
    group = job.group
    report = OracleReport()
    scope = f"{job.rs.type_letter}{job.rs.rank}"
    # Bruhat order against the subword oracle
    if group.size <= 48:
        pairs = [(v, w) for v in range(group.size) for w in range(group.size)]
        kind = "exhaustive"
    else:
        state = 1
        pairs = []
        while len(pairs) < 10_000:
            state = (state * 48271) % 2147483647  # fixed-seed Lehmer stream
            v = state % group.size
            state = (state * 48271) % 2147483647
            w = state % group.size
            if len(group.elements[w].word) <= 12:
                pairs.append((v, w))
        kind = "sampled-10k"
    ok = True
    witness = None
    for v, w in pairs:
        if len(group.elements[w].word) > 12:
            continue
        if bruhat_subword(group, v, w) != group.bruhat_leq(v, w):
            ok = False
            witness = f"(v={v}, w={w})"
            break
    report.add("bruhat-vs-subword", f"{scope} {kind}", ok, witness)
    # definition-level coset recomputation
    if job.lam is not None and job.rs.rank <= 3:
        tc = build_theta_cosets(group, job.theta)
        idata = integral_data(group, job.theta, job.lam)
        table = build_kl_table(group, job.theta, job.lam)
        sub = recompute_cosets(group, job.theta, job.lam, tc, idata, table.models)
        report.checks.extend(sub.checks)
        # the two phi paths must agree
        pd = phi_direct(tc, job.lam)
        ok = all(pd[c] == table.phi[c] for c in range(tc.n_cosets))
        report.add("phi-direct-vs-transport", scope, ok)
    else:
        report.add(
            "coset-recomputation",
            scope,
            True,
            "skipped: exhaustive scope is rank <= 3 with a lambda",
        )
    # classical Kazhdan-Lusztig relation at -rho
    if group.size <= 1152:
        ok = kl_classical_relation_check(group, Weight.minus_rho(job.rs.rank))
        report.add("classical-kl-relation", f"{scope} at -rho", ok)
    return report


# ---------------------------------------------------------------------------
# output formatting


def render_json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_output(text: str) -> dict:
    """Parse rendered JSON back; polynomial strings become LaurentPoly."""
    data = json.loads(text)
    for entry in data.get("kl_polynomials", []):
        entry["poly"] = laurent.parse(entry["poly"])
    return data


def _text_cosets(lines, data):
    lines.append("cosets (id: longest | shortest | length):")
    for c in data["cosets"]:
        lines.append(
            f"  {c['id']}: {c['longest']['name']} | "
            f"{c['shortest']['name']} | {c['length']}"
        )
    for m in data.get("models", []):
        lines.append(
            f"model u = {m['u']['name']}, Theta(u,lambda) = "
            f"{{{', '.join(m['theta_u_lambda'])}}}:"
        )
        for f in m["cosets"]:
            lines.append(
                f"  {f['id']}: {f['longest']['name']} | "
                f"ell_lambda {f['length_lambda']} | global {f['global']}"
            )


def render_text(command, data) -> str:
    lines = []
    ctx = data["context"]
    theta = ",".join(ctx["theta"]) or "(empty)"
    lines.append(f"{ctx['type']}  theta={theta}  lambda={ctx['lambda']}")
    if ctx["flags"]:
        f = ctx["flags"]
        lines.append(
            f"flags: antidominant={f['antidominant']} "
            f"regular={f['regular']} integral={f['integral']}"
        )
    if command == "info":
        lines.append(f"Sigma_lambda^+ = {{{', '.join(data['sigma_lambda_pos'])}}}")
        lines.append(f"Pi_lambda = {{{', '.join(data['pi_lambda'])}}}")
        lines.append(f"A_lambda = {{{', '.join(data['a_lambda'])}}}")
        lines.append(f"A_theta_lambda = {{{', '.join(data['a_theta_lambda'])}}}")
        _text_cosets(lines, data)
    elif command == "cosets":
        _text_cosets(lines, data)
    elif command == "klpolys":
        _text_cosets(lines, data)
        lines.append("P (c, d): poly")
        for entry in data["kl_polynomials"]:
            lines.append(f"  ({entry['c']}, {entry['d']}): {entry['poly']}")
    elif command == "characters":
        for row in data["characters"]:
            terms = []
            for e in row["entries"]:
                coeff = e["coeff"]
                sign = "-" if coeff < 0 else "+"
                mag = abs(coeff)
                body = f"ch M({e['standard']})" if mag == 1 else f"{mag} ch M({e['standard']})"
                terms.append((sign, body))
            rhs = ""
            for i, (sign, body) in enumerate(terms):
                if i == 0:
                    rhs = body if sign == "+" else f"-{body}"
                else:
                    rhs += f" {sign} {body}"
            lines.append(f"ch L({row['irreducible']}) = {rhs or '0'}")
        for row in data.get("multiplicities", []):
            terms = " + ".join(
                (f"{e['coeff']} " if e["coeff"] != 1 else "")
                + f"[L({e['irreducible']})]"
                for e in row["entries"]
            )
            lines.append(f"[M({row['standard']})] = {terms}")
    return "\n".join(lines) + "\n"


def _latex_elt(name: str) -> str:
    if name == "e":
        return "e"
    for letter, macro in zip(GREEK, GREEK_NAMES):
        name = name.replace(letter, "\\" + macro + " ")
    return " ".join(name.split())


def render_latex(command, data) -> str:
    lines = []
    ctx = data["context"]
    lines.append("% " + ctx["type"] + " theta=" + (",".join(ctx["theta"]) or "empty"))
    if command == "klpolys":
        for m in data["models"]:
            cols = [f["longest"]["name"] for f in m["cosets"]]
            ids = [f["id"] for f in m["cosets"]]
            globals_ = {f["id"]: f["global"] for f in m["cosets"]}
            polys = {
                (e["c"], e["d"]): e["poly"] for e in data["kl_polynomials"]
            }
            lines.append("\\begin{tabular}{c|" + "c" * len(cols) + "}")
            lines.append(
                "$P$ & "
                + " & ".join(f"${_latex_elt(c)}$" for c in cols)
                + " \\\\ \\hline"
            )
            for fid, name in zip(ids, cols):
                row = [
                    polys.get((globals_[fid], globals_[gid]), "0")
                    for gid in ids
                ]
                lines.append(
                    f"${_latex_elt(name)}$ & "
                    + " & ".join(f"${p}$" for p in row)
                    + " \\\\"
                )
            lines.append("\\end{tabular}")
    elif command == "characters":
        lines.append("\\begin{align*}")
        for row in data["characters"]:
            terms = []
            for e in row["entries"]:
                coeff = e["coeff"]
                mag = abs(coeff)
                body = f"\\ch M({_latex_elt(e['standard'])}\\lambda)"
                if mag != 1:
                    body = f"{mag} {body}"
                terms.append((("-" if coeff < 0 else "+"), body))
            rhs = ""
            for i, (sign, body) in enumerate(terms):
                rhs += (
                    (body if sign == "+" else f"-{body}")
                    if i == 0
                    else f" {sign} {body}"
                )
            lines.append(
                f"\\ch L({_latex_elt(row['irreducible'])}\\lambda) &= {rhs} \\\\"
            )
        lines.append("\\end{align*}")
    else:
        lines.append("% use --format text or json for this command")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="whitkl", description=__doc__)
    parser.add_argument("--type", required=True, help="root system type, e.g. A3")
    parser.add_argument(
        "--theta",
        default="",
        help="subset of simple roots: names (α, beta, ...) or 1-based indices",
    )
    parser.add_argument(
        "--lambda",
        dest="lam",
        default=None,
        help='weight in coroot coordinates, e.g. "-5-4*t1,-5+4*t1,-5"',
    )
    parser.add_argument(
        "--format", choices=["text", "json", "latex"], default="text"
    )
    parser.add_argument(
        "--seed-order",
        choices=["fixed"],
        default="fixed",
        help="ordering of all enumerations (only fixed is supported)",
    )
    parser.add_argument("--max-rank", type=int, default=6)
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "info": sub.add_parser(
            "info", help="flags, integral data, cross-sections, models"
        ),
        "cosets": sub.add_parser("cosets", help="coset tables and orders"),
        "klpolys": sub.add_parser(
            "klpolys", help="Whittaker Kazhdan-Lusztig polynomial tables"
        ),
        "characters": sub.add_parser("characters", help="character formula rows"),
        "verify": sub.add_parser("verify", help="run the independent oracle suite"),
    }
    commands["characters"].add_argument("--invert", action="store_true")
    commands["characters"].add_argument("--verma", action="store_true")
    for child in commands.values():
        # accept --format after the subcommand as well
        child.add_argument(
            "--format",
            choices=["text", "json", "latex"],
            default=argparse.SUPPRESS,
        )
    return parser


def _join_lambda_value(argv):
    """Fold "--lambda <value>" into "--lambda=<value>" so that weights
    starting with a minus sign are not mistaken for option names."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--lambda" and i + 1 < len(argv):
            out.append(f"--lambda={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_lambda_value(list(argv)))
    try:
        letter, rank = parse_type(args.type)
        if rank > args.max_rank:
            raise InputError(f"rank {rank} exceeds --max-rank {args.max_rank}")
        theta_probe = parse_theta(args.theta, rank)
        lam = parse_lambda(args.lam, rank) if args.lam is not None else None
        if args.command != "verify" and lam is None:
            raise InputError(f"command {args.command!r} needs --lambda")
        job = Job(letter, rank, theta_probe, lam)
        if args.command == "verify":
            report = run_verify(job)
            if args.format == "json":
                sys.stdout.write(report.to_json() + "\n")
            else:
                for check in report.checks:
                    status = "pass" if check.passed else "FAIL"
                    extra = f"  [{check.counterexample}]" if check.counterexample else ""
                    sys.stdout.write(
                        f"{status}  {check.name}  ({check.scope}){extra}\n"
                    )
            return 0 if report.passed else 2
        if args.command == "info":
            data = run_info(job)
        elif args.command == "cosets":
            data = run_cosets(job)
        elif args.command == "klpolys":
            data = run_klpolys(job)
        else:
            data = run_characters(job, invert=args.invert, verma=args.verma)
        if args.format == "json":
            sys.stdout.write(render_json(data))
        elif args.format == "latex":
            sys.stdout.write(render_latex(args.command, data))
        else:
            sys.stdout.write(render_text(args.command, data))
        return 0
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"whitkl: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
