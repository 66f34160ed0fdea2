"""Static figure rendering for CLI reports.

Each report written to disk gets companion PNGs next to it: residual charts
for verification runs, coefficient decay for expansions, and the two-sided
envelope picture for bound sweeps.  Rendering is headless (Agg) and file
based; there is no interactive surface.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

_FLOOR = 1e-18


def _agg_pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_residual_figure(
    records: Sequence[dict], path: Path, identity_tol: float
) -> Path | None:
    rows = [r for r in records if "rel_error" in r]
    if not rows:
        return None
    plt = _agg_pyplot()
    idx = list(range(len(rows)))
    rel = [max(r["rel_error"], _FLOOR) for r in rows]
    ab = [max(r["abs_error"], _FLOOR) for r in rows]
    colors = ["tab:blue" if r.get("pass") else "tab:red" for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.scatter(idx, rel, c=colors, s=18, label="relative residual")
    ax.scatter(idx, ab, facecolors="none", edgecolors="gray", s=18, label="absolute residual")
    ax.axhline(identity_tol, color="k", ls="--", lw=1, label=f"tolerance {identity_tol:g}")
    ax.set_yscale("log")
    ax.set_xlabel("parameter point")
    ax.set_ylabel("residual")
    ax.set_title(rows[0].get("formula_id", "verification"))
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_expand_figure(records: Sequence[dict], path: Path) -> Path | None:
    rows = [r for r in records if "k" in r and "coeff_abs" in r]
    if not rows:
        return None
    plt = _agg_pyplot()
    ks = [r["k"] for r in rows]
    mags = [max(r["coeff_abs"], _FLOOR) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.semilogy(ks, mags, "o-", ms=4, label="|c_k|")
    if any("term_abs" in r for r in rows):
        terms = [max(r.get("term_abs", _FLOOR), _FLOOR) for r in rows]
        ax.semilogy(ks, terms, "s--", ms=4, label="|term at x|")
    ax.set_xlabel("order k")
    ax.set_ylabel("magnitude")
    ax.set_title("expansion coefficients")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_bounds_figure(records: Sequence[dict], path: Path) -> Path | None:
    rows = [r for r in records if "ratio" in r]
    if not rows:
        return None
    plt = _agg_pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    xs = [r["abs_x"] for r in rows]
    ratios = [max(r["ratio"], _FLOOR) for r in rows]
    members = [bool(r["in_set"]) for r in rows]
    upper = rows[0]["upper_constant"]
    ax1.scatter(xs, ratios, s=10, c=["tab:red" if r["violation"] else "tab:blue" for r in rows])
    ax1.axhline(upper, color="k", ls="--", lw=1, label="upper constant")
    ax1.set_xscale("log")
    ax1.set_yscale("log")
    ax1.set_xlabel("|x|")
    ax1.set_ylabel("|h(x)| / envelope")
    ax1.set_title("upper estimate")
    ax1.legend(fontsize=8)
    in_x = [x for x, m in zip(xs, members) if m]
    in_r = [r for r, m in zip(ratios, members) if m]
    out_x = [x for x, m in zip(xs, members) if not m]
    out_r = [r for r, m in zip(ratios, members) if not m]
    ax2.scatter(out_x, out_r, s=8, c="lightgray", label="outside the admissible set")
    ax2.scatter(in_x, in_r, s=10, c="tab:green", label="inside")
    if in_r:
        ax2.axhline(min(in_r), color="tab:green", ls=":", lw=1, label="empirical infimum")
    ax2.set_xscale("log")
    ax2.set_yscale("log")
    ax2.set_xlabel("|x|")
    ax2.set_title("lower-ratio sweep")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
