"""Assemble analysis reports and render them as JSON or text."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources
from typing import Optional

from . import __version__
from .counting import ROUTES, CountOptions, D4CountReport, count_d4
from .germ import (
    FrontalityVerdict,
    InconsistentSystem,
    Normalization,
    WavefrontResult,
    corank_at_origin,
    frontality_check,
    normalize_corank2,
    recover_alpha_beta,
    wavefront_check,
)
from .germfile import GermFile
from .local import ColengthResult

WAVEFRONT_CRITERION = "wave front (criterion det M(0)!=0)"


def _num(x) -> object:
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "INFINITE"
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def input_section(gf: GermFile) -> dict:
    out = {
        "name": gf.name,
        "digest": gf.digest,
        "vars": list(gf.context.names),
        "components": [str(c) for c in gf.components],
    }
    if gf.has_split:
        out["split"] = {"u": list(gf.u_vars), "v": gf.v, "w": gf.w}
    return out


def frontality_section(v: FrontalityVerdict) -> dict:
    out: dict = {"status": v.status}
    if v.generator is not None:
        out["generator"] = str(v.generator)
    if v.note:
        out["note"] = v.note
    return out


def wavefront_section(w: Optional[WavefrontResult], coeffs=None, note: str = "") -> dict:
    if w is None:
        return {"holds": None, "M0": None, "criterion": WAVEFRONT_CRITERION, "note": note}
    out = {
        "holds": w.holds,
        "M0": [[_num(x) for x in row] for row in w.M0],
        "criterion": WAVEFRONT_CRITERION,
    }
    if coeffs is not None:
        out["alpha"] = str(coeffs.alpha)
        out["beta"] = str(coeffs.beta)
        out["exact"] = coeffs.exact
        out["unique"] = coeffs.unique
    return out


def colength_section(res: Optional[ColengthResult]) -> Optional[dict]:
    if res is None:
        return None
    return {
        "value": _num(res.value),
        "status": res.status,
        "certificate": res.certificate,
        "stabilization_degree": res.stabilization_degree,
        "basis": res.basis_strings(),
    }


def normal_form_section(norm: Normalization) -> dict:
    g = norm.germ
    return {
        "u": list(g.u_vars),
        "v": g.v,
        "w": g.w,
        "p": str(g.p),
        "q": str(g.q),
        "r": str(g.r),
        "identity": norm.is_identity,
        "source_change": {k: str(x) for k, x in sorted(norm.source_change.items())},
        "target_rows": [i + 1 for i in norm.target_rows],
    }


def d4_section(rep: D4CountReport) -> dict:
    return {
        "count": _num(rep.count),
        "routes": {name: colength_section(rep.routes.get(name)) for name in ROUTES},
        "agreement": dict(sorted(rep.agreement.items())),
        "staircase_oracle": _num(rep.oracle),
        "skipped": dict(sorted(rep.skipped.items())),
        "warnings": list(rep.warnings),
    }


def check_report(gf: GermFile, max_degree: int = 24, order: int = 12) -> dict:
    """Frontality, corank and (for corank 2) the wave-front test."""
    f = gf.germ()
    verdict = frontality_check(f, max_degree)
    corank = corank_at_origin(f)
    report = {
        "input": input_section(gf),
        "frontality": frontality_section(verdict),
        "corank": corank,
        "wavefront": None,
        "d4": None,
        "version": __version__,
    }
    if corank == 2:
        norm = normalize_corank2(f, gf.column_order())
        report["normal_form"] = normal_form_section(norm)
        try:
            coeffs = recover_alpha_beta(norm.germ, order)
        except InconsistentSystem as exc:
            report["wavefront"] = wavefront_section(None, note=str(exc))
        else:
            report["wavefront"] = wavefront_section(wavefront_check(norm.germ, coeffs), coeffs)
    return report


def count_report(gf: GermFile, options: CountOptions) -> tuple[dict, D4CountReport]:
    """Full report; raises :class:`~frontcount.germ.GermError` on a wrong shape or corank."""
    f = gf.germ()
    norm = normalize_corank2(f, gf.column_order())
    rep = count_d4(norm.germ, options)
    report = {
        "input": input_section(gf),
        "frontality": frontality_section(rep.frontality),
        "corank": corank_at_origin(f),
        "normal_form": normal_form_section(norm),
        "wavefront": wavefront_section(rep.wavefront, rep.coefficients),
        "d4": d4_section(rep),
        "options": {
            "order": options.order,
            "max_degree": options.max_degree,
            "routes": options.routes,
        },
        "version": __version__,
    }
    return report, rep


def to_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("frontcount").joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def render_text(report: dict) -> str:
    lines = []
    inp = report["input"]
    lines.append(f"germ: {inp['name']}  ({', '.join(inp['vars'])})")
    for i, c in enumerate(inp["components"], start=1):
        lines.append(f"  f{i} = {c}")
    fr = report["frontality"]
    gen = f", generator {fr['generator']}" if "generator" in fr else ""
    lines.append(f"frontality: {fr['status']}{gen}")
    if fr.get("note"):
        lines.append(f"  note: {fr['note']}")
    lines.append(f"corank at origin: {report['corank']}")
    nf = report.get("normal_form")
    if nf:
        lines.append(
            f"normal form: u = {', '.join(nf['u'])}; v = {nf['v']}, w = {nf['w']}"
            + ("" if nf["identity"] else " (after linear changes)")
        )
        for key in ("p", "q", "r"):
            lines.append(f"  {key} = {nf[key]}")
    wf = report.get("wavefront")
    if wf:
        if wf["holds"] is None:
            lines.append(f"wave front: unknown ({wf.get('note', '')})")
        else:
            lines.append(f"wave front: {'yes' if wf['holds'] else 'no'}  M(0) = {wf['M0']}")
            if "alpha" in wf:
                lines.append(f"  alpha = {wf['alpha']}")
                lines.append(f"  beta = {wf['beta']}")
    d4 = report.get("d4")
    if d4:
        lines.append(f"D4 count: {d4['count']}")
        for name, res in d4["routes"].items():
            if res is None:
                why = d4["skipped"].get(name, "not computed")
                lines.append(f"  {name:<19} skipped ({why})")
            else:
                shown = res["value"] if res["value"] is not None else res["status"]
                lines.append(f"  {name:<19} {shown}")
        if d4["staircase_oracle"] is not None:
            lines.append(f"  {'staircase oracle':<19} {d4['staircase_oracle']}")
        bad = [k for k, ok in d4["agreement"].items() if not ok]
        lines.append("routes agree" if not bad else f"DISAGREEMENT: {', '.join(bad)}")
        for w in d4["warnings"]:
            lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
