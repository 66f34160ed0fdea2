"""Command-line verification harness.

Subcommands:

  verify <formula-id> [--alpha .. --beta .. --xi .. --x/--u .. --q ..]
      run one identity at one parameter point
  sweep <formula-id> [--grid FILE | --count N] --seed S
      run a grid of points (file-supplied or seeded random draws)
  expand <family> --form <T|G|Q|A|C> --order <n> [--base .. --q .. --at ..]
      expansion coefficients of a built-in function family
  bounds --q <v> --samples <n> --rho <v> --delta <v> [--seed S]
      sweep the two-sided magnitude estimates for (x;q)_inf

Reports are JSON lines (default) or CSV, one record per parameter point,
with numbers carrying 17 significant digits so doubles round-trip exactly.
Writing a report to disk also renders companion figures next to it unless
--no-figures is given.  Exit status: 0 all points pass, 1 numerical failure
or a failed identity, 2 parameter-domain rejection or unknown formula.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Sequence

from .awop import AnalyticFunction, Domain, exp_fn, rational_fn
from .binom import BinomialInstance, general_binomial_check, phi_partial_identity_check, table2_check
from .psequence import CanonicalForm, PSequence
from .qcore import (
    ConvergenceError,
    DomainError,
    Tolerances,
    q_pochhammer_inf,
    pochhammer_lower_ratio,
    pochhammer_upper_bound,
    set_A_membership,
)
from .qseries import (
    VerificationReport,
    joukowski_inverse,
    sym_qpoch,
    verify_new_formula,
    verify_nonterminating_q_saalschutz,
    verify_q_gauss,
    verify_q_vandermonde_nonsym,
)
from .taylor import taylor_coefficients, taylor_eval
from . import figures

EXIT_PASS = 0
EXIT_NUMERICAL = 1
EXIT_DOMAIN = 2


@dataclass
class RunConfig:
    """One harness invocation: a command, a formula, points, and outputs."""

    command: str
    formula_id: str = ""
    parameters: dict = field(default_factory=dict)
    grid: Optional[list] = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    identity_tol: Optional[float] = None
    output_path: Optional[str] = None
    output_format: str = "json"
    seed: int = 0
    count: int = 20
    workers: int = 4
    figures: bool = True


# ---------------------------------------------------------------------------
# formula registry


def _randc(rng: random.Random, rmax: float, rmin: float = 0.0) -> complex:
    return rng.uniform(rmin, rmax) * cmath.exp(2j * math.pi * rng.random())


def _sample_q_gauss(rng: random.Random) -> dict:
    while True:
        q = rng.uniform(0.25, 0.85)
        alpha, beta = _randc(rng, 0.9, 0.1), _randc(rng, 0.9, 0.1)
        xi, x = _randc(rng, 0.9, 0.1), _randc(rng, 0.9, 0.1)
        if abs(beta * x) <= 0.9 and abs(alpha * xi) <= 0.9:
            return {"alpha": alpha, "beta": beta, "xi": xi, "x": x, "q": q}


def _sample_new_saalschutz(rng: random.Random) -> dict:
    while True:
        q = rng.uniform(0.3, 0.6)
        alpha = rng.uniform(-0.45, 0.75)
        beta = rng.uniform(0.25, 1.1)
        xi = rng.uniform(-2.2, -1.0)
        u = complex(-rng.uniform(1.0, 2.0), rng.uniform(-1.2, 1.2))
        if abs(u) >= 1.0 and abs(alpha) >= 0.02 and abs(alpha * xi) <= 0.9:
            return {"alpha": alpha, "beta": beta, "xi": xi, "u": u, "q": q}


def _sample_saalschutz(rng: random.Random) -> dict:
    while True:
        q = rng.uniform(0.3, 0.6)
        alpha = rng.uniform(-0.5, 0.75)
        beta = rng.uniform(0.25, 1.0)
        xi = rng.uniform(-2.0, -1.0)
        u = complex(-rng.uniform(1.0, 1.9), rng.uniform(-1.0, 1.0))
        if abs(u) >= 1.0 and abs(alpha) >= 0.02 and abs(alpha * xi) <= 0.9:
            return {"alpha": alpha, "beta": beta, "xi": xi, "u": u, "q": q}


def _sample_vandermonde(rng: random.Random) -> dict:
    q = rng.uniform(0.3, 0.7)
    return {
        "alpha": rng.uniform(-0.6, 0.8),
        "beta": rng.uniform(0.3, 1.0),
        "xi": rng.uniform(-1.8, -0.7),
        "x": complex(-rng.uniform(0.2, 1.2), rng.uniform(-0.8, 0.8)),
        "q": q,
    }


def _sample_general_binomial(form: str):
    def sample(rng: random.Random) -> dict:
        n = rng.randrange(0, 11)
        if form in ("T", "G"):
            q = rng.uniform(0.5, 0.9)
            yu, zu = _randc(rng, 1.3, 0.75), _randc(rng, 1.3, 0.75)
            z_form = CanonicalForm.from_q(form, zu, q)
            spread = max(abs(z_form.value(2 * k)) for k in range(max(n, 1)))
            x = _randc(rng, 2.0, 1.2) * spread
            return {"form": form, "n": n, "x": x, "y_u": yu, "z_u": zu, "q": q}
        return {
            "form": form,
            "n": n,
            "x": _randc(rng, 1.6, 0.3),
            "y_u": _randc(rng, 1.2, 0.1),
            "z_u": _randc(rng, 1.2, 0.1),
        }

    return sample


def _sample_table2(row: str):
    def sample(rng: random.Random) -> dict:
        n = rng.randrange(0, 11)
        if row in ("C", "A"):
            return {
                "x": _randc(rng, 1.5),
                "y": _randc(rng, 1.2),
                "z": _randc(rng, 1.2),
                "n": n,
            }
        if row == "Q":
            # moderate moduli keep the rising-factorial cancellation mild
            return {
                "u": _randc(rng, 0.9, 0.2),
                "v": _randc(rng, 0.9, 0.2),
                "w": _randc(rng, 0.9, 0.2),
                "n": n,
            }
        if row == "G":
            return {
                "x": _randc(rng, 1.5, 0.3),
                "y": _randc(rng, 1.2, 0.3),
                "z": _randc(rng, 1.2, 0.3),
                "q": rng.uniform(0.35, 0.85),
                "n": n,
            }
        return {
            "u": _randc(rng, 1.4, 0.6),
            "v": _randc(rng, 1.2, 0.5),
            "w": _randc(rng, 1.2, 0.5),
            "q": rng.uniform(0.4, 0.8),
            "n": n,
        }

    return sample


def _sample_phi_partial(rng: random.Random) -> dict:
    n = rng.randrange(1, 9)
    return {
        "n": n,
        "k": rng.randrange(0, n + 1),
        "form": rng.choice(["G", "T"]),
        "u": _randc(rng, 1.4, 0.6),
        "y": _randc(rng, 1.5, 0.3),
        "q": rng.uniform(0.45, 0.85),
    }


def _run_q_gauss(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    return verify_q_gauss(
        p["alpha"], p["beta"], p["xi"], p["x"], p["q"],
        tol, identity_tol if identity_tol is not None else 1e-9,
    )


def _run_new_saalschutz(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    return verify_new_formula(
        _real(p["alpha"]), _real(p["beta"]), _real(p["xi"]), _cplx(p["u"]), _real(p["q"]),
        tol, identity_tol if identity_tol is not None else 1e-5,
    )


def _run_saalschutz(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    return verify_nonterminating_q_saalschutz(
        p["alpha"], p["beta"], p["xi"], p["u"], _real(p["q"]),
        tol, identity_tol if identity_tol is not None else 1e-9,
    )


def _run_vandermonde(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    return verify_q_vandermonde_nonsym(
        _real(p["alpha"]), _real(p["beta"]), _real(p["xi"]), _cplx(p["x"]), _real(p["q"]),
        tol, identity_tol if identity_tol is not None else 1e-5,
    )


def _run_general_binomial(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    inst = BinomialInstance(
        p["form"], int(p["n"]), _cplx(p["x"]),
        {"u": _cplx(p["y_u"])}, {"u": _cplx(p["z_u"])},
        p.get("q"), bool(p.get("exact", False)),
    )
    return general_binomial_check(
        inst, tol, identity_tol if identity_tol is not None else 1e-11
    )


def _run_table2(row: str):
    def run(p: dict, tol: Tolerances, identity_tol: Optional[float]):
        params = {k: v for k, v in p.items() if k not in ("n", "exact")}
        return table2_check(
            row, params, int(p["n"]), tol,
            identity_tol if identity_tol is not None else 1e-11,
            bool(p.get("exact", False)),
        )

    return run


def _run_phi_partial(p: dict, tol: Tolerances, identity_tol: Optional[float]):
    q = _real(p["q"])
    form = CanonicalForm.from_q(p.get("form", "G"), _cplx(p["u"]), q)
    seq = PSequence.from_canonical(form)
    return phi_partial_identity_check(
        int(p["n"]), int(p["k"]), form.lam, seq, _cplx(p["y"]),
        identity_tol=identity_tol if identity_tol is not None else 1e-9,
    )


def _real(v) -> float:
    c = _cplx(v)
    if abs(c.imag) > 1e-12 * (1.0 + abs(c.real)):
        raise DomainError(f"expected a real value, got {v!r}")
    return c.real


def _cplx(v) -> complex:
    if isinstance(v, complex):
        return v
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    raise DomainError(f"cannot interpret {v!r} as a complex number")


@dataclass(frozen=True)
class Formula:
    runner: Callable
    sampler: Callable
    defaults: dict
    description: str


FORMULAS: dict[str, Formula] = {
    "q-gauss": Formula(
        _run_q_gauss,
        _sample_q_gauss,
        {"alpha": 0.3, "beta": 0.7, "xi": -0.2, "x": 0.4, "q": 0.5},
        "q-Gauss sum: 2phi1 against the q-shifted-factorial quotient",
    ),
    "new-saalschutz": Formula(
        _run_new_saalschutz,
        _sample_new_saalschutz,
        {"alpha": 0.2, "beta": 0.6, "xi": -1.5, "u": -2.0, "q": 0.5},
        "one-term-plus-integral (non-symmetrized) q-Saalschuetz identity",
    ),
    "nonterminating-q-saalschutz": Formula(
        _run_saalschutz,
        _sample_saalschutz,
        {"alpha": 0.15, "beta": 0.5, "xi": -1.2, "u": -1.7, "q": 0.4},
        "two-term non-terminating q-Saalschuetz sum (pure series)",
    ),
    "q-vandermonde": Formula(
        _run_vandermonde,
        _sample_vandermonde,
        {"alpha": 0.3, "beta": 0.8, "xi": -1.0, "x": -0.5, "q": 0.5},
        "non-symmetrized non-terminating q-Vandermonde sum",
    ),
    "phi-partial": Formula(
        _run_phi_partial,
        _sample_phi_partial,
        {"n": 3, "k": 1, "form": "G", "u": 1.3, "y": 0.9 + 0.4j, "q": 0.64},
        "order-lowering identity for the interpolation polynomials",
    ),
}
for _tag in ("T", "G", "Q", "A", "C"):
    FORMULAS[f"general-binomial-{_tag.lower()}"] = Formula(
        _run_general_binomial,
        _sample_general_binomial(_tag),
        {"form": _tag, "n": 4, "x": 1.5, "y_u": 1.1, "z_u": 0.8,
         **({"q": 0.6} if _tag in ("T", "G") else {})},
        f"general binomial identity on canonical form {_tag}",
    )
for _row in ("C", "A", "Q", "G", "T"):
    _defaults: dict = {"n": 4}
    if _row in ("C", "A"):
        _defaults.update({"x": 1.3, "y": 0.4, "z": -0.2})
    elif _row == "Q":
        _defaults.update({"u": 1.1, "v": 0.5, "w": -0.3})
    elif _row == "G":
        _defaults.update({"x": 1.3, "y": 0.4, "z": -0.2, "q": 0.5})
    else:
        _defaults.update({"u": 1.4, "v": 0.8, "w": -0.6, "q": 0.5})
    FORMULAS[f"table2-{_row.lower()}"] = Formula(
        _run_table2(_row),
        _sample_table2(_row),
        _defaults,
        f"binomial-identity table, row {_row}",
    )


# ---------------------------------------------------------------------------
# serialization


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _fmt_complex(c: complex) -> str:
    return f"{c.real:.17g}{c.imag:+.17g}j"


def _encode(v):
    if isinstance(v, complex):
        return v.real if v.imag == 0.0 else _fmt_complex(v)
    return v


def _dumps(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return json.dumps(_fmt_complex(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_dumps(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dumps(v) for v in obj) + "]"
    return json.dumps(str(obj))


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, complex):
        return _fmt_complex(v)
    if isinstance(v, (dict, list, tuple)):
        s = _dumps(v)
    else:
        s = str(v)
    if any(ch in s for ch in ",\"\n"):
        s = '"' + s.replace('"', '""') + '"'
    return s


def write_report(
    records: Sequence[dict],
    meta: dict,
    path: Optional[str],
    fmt: str = "json",
) -> None:
    if fmt == "json":
        lines = [_dumps({"meta": meta})]
        lines += [_dumps(r) for r in records]
        text = "\n".join(lines) + "\n"
    elif fmt == "csv":
        keys: list[str] = []
        for r in records:
            for k in r:
                if k not in keys:
                    keys.append(k)
        lines = ["# meta " + _dumps(meta), ",".join(keys)]
        for r in records:
            lines.append(",".join(_csv_cell(r.get(k, "")) for k in keys))
        text = "\n".join(lines) + "\n"
    else:
        raise DomainError(f"unknown output format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# command implementations


def _report_record(rep: VerificationReport) -> dict:
    rec = rep.as_record()
    rec["params"] = {k: _encode(v) for k, v in sorted(rec["params"].items())}
    rec["diagnostics"] = {k: _encode(v) for k, v in sorted(rec["diagnostics"].items())}
    return rec


def _run_points(config: RunConfig, points: list[dict]) -> tuple[int, list[dict], str]:
    formula = FORMULAS[config.formula_id]

    def one(p: dict):
        merged = {**formula.defaults, **p}
        try:
            rep = formula.runner(merged, config.tolerances, config.identity_tol)
            return ("ok", _report_record(rep))
        except DomainError as e:
            return ("domain", {"params": {k: _encode(v) for k, v in merged.items()},
                               "error": "domain", "message": str(e)})
        except ConvergenceError as e:
            return ("numerical", {"params": {k: _encode(v) for k, v in merged.items()},
                                  "error": "numerical", "message": str(e)})

    if len(points) > 1 and config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(one, points))
    else:
        outcomes = [one(p) for p in points]

    records = [rec for _, rec in outcomes]
    kinds = [kind for kind, _ in outcomes]
    npass = sum(1 for k, r in outcomes if k == "ok" and r.get("pass"))
    worst = max((r.get("rel_error", 0.0) for k, r in outcomes if k == "ok"), default=0.0)
    if "domain" in kinds:
        code = EXIT_DOMAIN
    elif "numerical" in kinds or npass < len(outcomes):
        code = EXIT_NUMERICAL
    else:
        code = EXIT_PASS
    summary = (
        f"{config.formula_id}: {npass}/{len(outcomes)} points pass, "
        f"worst relative residual {worst:.3e}"
    )
    return code, records, summary


def _expand_family(config: RunConfig) -> tuple[int, list[dict], str]:
    p = config.parameters
    family = config.formula_id
    q = _real(p.get("q", 0.5))
    form_tag = str(p.get("form", "G"))
    base = _cplx(p.get("base", 0.1))
    order = int(p.get("order", 10))
    tol = config.tolerances

    if form_tag in ("T", "G"):
        form = CanonicalForm.from_q(form_tag, base, q)
    else:
        form = CanonicalForm(form_tag, base)
    seq = PSequence.from_canonical(form)

    if family == "exp":
        f = exp_fn()
    elif family == "rational":
        poles = [ _cplx(s) for s in str(p.get("poles", "40+5j")).split(";") ]
        f = rational_fn(poles)
    elif family == "qpoch-ratio":
        a, b = _cplx(p.get("alpha", 0.3)), _cplx(p.get("beta", 0.7))
        f = AnalyticFunction(
            lambda z: q_pochhammer_inf(a * z, q, tol) / q_pochhammer_inf(b * z, q, tol),
            Domain.disk(0.9 / max(abs(b), 1e-9)),
        )
    elif family == "qpoch-ratio-sym":
        a, b = _real(p.get("alpha", 0.3)), _real(p.get("beta", 0.7))

        def fx(x: complex) -> complex:
            v = joukowski_inverse(x)
            return sym_qpoch(a, v, q, tol) / sym_qpoch(b, v, q, tol)

        f = AnalyticFunction(fx, Domain.left_half_plane())
    else:
        raise DomainError(f"unknown expand family {family!r}")

    exp = taylor_coefficients(f, seq, order)
    nodes = exp.nodes()
    at = p.get("at")
    records = []
    prod = 1.0 + 0j
    x = _cplx(at) if at is not None else None
    for k, c in enumerate(exp.coefficients):
        rec = {
            "k": k,
            "node_re": nodes[k].real,
            "node_im": nodes[k].imag,
            "coeff_re": c.real,
            "coeff_im": c.imag,
            "coeff_abs": abs(c),
        }
        if x is not None:
            rec["term_abs"] = abs(c * prod)
            prod *= x - nodes[k]
        records.append(rec)
    summary = f"expanded {family} on form {form_tag} to order {order}"
    if x is not None:
        s = taylor_eval(exp, x)
        summary += f"; partial sum at {x} = {s}"
        try:
            summary += f", direct value = {f(x)}"
        except Exception:
            pass
    return EXIT_PASS, records, summary


def _bounds_sweep(config: RunConfig) -> tuple[int, list[dict], str]:
    p = config.parameters
    q = _real(p.get("q", 0.5))
    if not 0.0 < q < 1.0:
        raise DomainError("bounds sweep needs real q in (0,1)")
    samples = int(p.get("samples", 1000))
    rho = _real(p.get("rho", 0.3))
    delta = _real(p.get("delta", 0.1))
    rng = random.Random(config.seed)
    h1 = abs(q_pochhammer_inf(-1.0, q, config.tolerances))
    upper_const = q ** (-0.125) * h1 * h1
    log_span = 10.0 * math.log(1.0 / q)
    records = []
    violations = 0
    member_min = math.inf
    for _ in range(samples):
        r = math.exp(rng.uniform(1e-6, log_span))
        x = r * cmath.exp(2j * math.pi * rng.random())
        ratio = pochhammer_lower_ratio(x, q)
        violation = ratio > upper_const * (1.0 + 1e-12)
        member = abs(x) >= delta and set_A_membership(x, q, rho)
        if violation:
            violations += 1
        if member:
            member_min = min(member_min, ratio)
        records.append(
            {
                "x_re": x.real,
                "x_im": x.imag,
                "abs_x": abs(x),
                "ratio": ratio,
                "upper_constant": upper_const,
                "violation": violation,
                "in_set": member,
            }
        )
    ok = violations == 0 and member_min > 0.0
    summary = (
        f"bounds sweep at q={q:g}: {violations} upper violations over {samples} samples, "
        f"lower-ratio infimum on the admissible set {member_min:.6g}"
    )
    return (EXIT_PASS if ok else EXIT_NUMERICAL), records, summary


def run(config: RunConfig) -> int:
    """Execute a RunConfig: verify, sweep, expand, or bounds."""
    meta = {
        "command": config.command,
        "formula_id": config.formula_id,
        "seed": config.seed,
        "tolerances": {
            "series_tol": config.tolerances.series_tol,
            "max_terms": config.tolerances.max_terms,
            "identity_tol": config.tolerances.identity_tol,
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    try:
        if config.command == "verify":
            if config.formula_id not in FORMULAS:
                raise DomainError(f"unknown formula {config.formula_id!r}")
            code, records, summary = _run_points(config, [config.parameters])
        elif config.command == "sweep":
            if config.formula_id not in FORMULAS:
                raise DomainError(f"unknown formula {config.formula_id!r}")
            if config.grid is not None:
                points = list(config.grid)
            else:
                rng = random.Random(config.seed)
                sampler = FORMULAS[config.formula_id].sampler
                points = [sampler(rng) for _ in range(config.count)]
            code, records, summary = _run_points(config, points)
        elif config.command == "expand":
            code, records, summary = _expand_family(config)
        elif config.command == "bounds":
            code, records, summary = _bounds_sweep(config)
        else:
            raise DomainError(f"unknown command {config.command!r}")
    except DomainError as e:
        print(f"domain rejection: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    write_report(records, meta, config.output_path, config.output_format)
    if config.output_path and config.figures:
        stem = Path(config.output_path)
        tol = config.identity_tol or config.tolerances.identity_tol
        made = []
        if config.command in ("verify", "sweep"):
            made.append(
                figures.render_residual_figure(
                    records, stem.with_name(stem.stem + "_residuals.png"), tol
                )
            )
        elif config.command == "expand":
            made.append(
                figures.render_expand_figure(
                    records, stem.with_name(stem.stem + "_coefficients.png")
                )
            )
        elif config.command == "bounds":
            made.append(
                figures.render_bounds_figure(
                    records, stem.with_name(stem.stem + "_bounds.png")
                )
            )
        for m in made:
            if m is not None:
                print(f"figure written: {m}")
    print(summary)
    return code


# ---------------------------------------------------------------------------
# argument parsing

_PARAM_FLAGS = (
    "alpha", "beta", "xi", "x", "u", "v", "w", "y", "z", "q",
    "y_u", "z_u", "base", "at", "poles",
)
_INT_FLAGS = ("n", "k", "order", "samples")
_REAL_FLAGS = ("rho", "delta")


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    for name in _PARAM_FLAGS:
        sub.add_argument(f"--{name.replace('_', '-')}", dest=name, default=None)
    for name in _INT_FLAGS:
        sub.add_argument(f"--{name}", dest=name, type=int, default=None)
    for name in _REAL_FLAGS:
        sub.add_argument(f"--{name}", dest=name, type=float, default=None)
    sub.add_argument("--form", default=None, help="canonical form tag T|G|Q|A|C")
    sub.add_argument("--row", default=None, help="alias feeding the table row id")
    sub.add_argument("--exact", action="store_true", help="exact rational arithmetic")


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", default=None, help="JSON run configuration file")
    sub.add_argument("--output", "-o", default=None, help="report file (default stdout)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--no-figures", action="store_true")
    sub.add_argument("--tol", type=float, default=None, help="pass/fail residual threshold")
    sub.add_argument("--series-tol", type=float, default=None)
    sub.add_argument("--max-terms", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=4)


def _collect_params(args: argparse.Namespace) -> dict:
    params: dict = {}
    for name in _PARAM_FLAGS:
        val = getattr(args, name, None)
        if val is not None:
            if name == "poles":
                params[name] = val
            else:
                c = _cplx(val)
                params[name] = c.real if c.imag == 0.0 else c
    for name in _INT_FLAGS + _REAL_FLAGS:
        val = getattr(args, name, None)
        if val is not None:
            params[name] = val
    if getattr(args, "form", None):
        params["form"] = args.form
    if getattr(args, "exact", False):
        params["exact"] = True
    return params


def _tolerances(args: argparse.Namespace) -> Tolerances:
    kwargs = {}
    if args.series_tol is not None:
        kwargs["series_tol"] = args.series_tol
    if args.max_terms is not None:
        kwargs["max_terms"] = args.max_terms
    if args.tol is not None:
        kwargs["identity_tol"] = args.tol
    return Tolerances(**kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awtaylor",
        description="verification harness for q-series summation identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify one formula at one point")
    p_verify.add_argument("formula", help="formula id, e.g. q-gauss")
    _add_param_flags(p_verify)
    _add_output_flags(p_verify)

    p_sweep = sub.add_parser("sweep", help="verify a formula over a parameter grid")
    p_sweep.add_argument("formula")
    p_sweep.add_argument("--grid", default=None, help="JSON file with a list of points")
    p_sweep.add_argument("--count", type=int, default=20, help="random points if no grid")
    _add_param_flags(p_sweep)
    _add_output_flags(p_sweep)

    p_expand = sub.add_parser("expand", help="expansion coefficients of a built-in family")
    p_expand.add_argument(
        "family", choices=("exp", "rational", "qpoch-ratio", "qpoch-ratio-sym")
    )
    _add_param_flags(p_expand)
    _add_output_flags(p_expand)

    p_bounds = sub.add_parser("bounds", help="sweep the (x;q)_inf magnitude estimates")
    _add_param_flags(p_bounds)
    _add_output_flags(p_bounds)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tolerances = _tolerances(args)
        params = _collect_params(args)
        grid = None
        if getattr(args, "grid", None):
            loaded = json.loads(Path(args.grid).read_text())
            grid = loaded["grid"] if isinstance(loaded, dict) else loaded
        formula_id = getattr(args, "formula", "") or ""
        if args.command == "expand":
            formula_id = args.family
        if getattr(args, "row", None) and args.command in ("verify", "sweep"):
            formula_id = f"table2-{args.row.lower()}"
        config = RunConfig(
            command=args.command,
            formula_id=formula_id,
            parameters=params,
            grid=grid,
            tolerances=tolerances,
            identity_tol=args.tol,
            output_path=args.output,
            output_format=args.format,
            seed=args.seed,
            count=getattr(args, "count", 20),
            workers=args.workers,
            figures=not args.no_figures,
        )
        return run(config)
    except DomainError as e:
        print(f"domain rejection: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
