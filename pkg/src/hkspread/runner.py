"""Execute parsed session scripts and emit machine-readable reports.

Reports are deterministic for fixed input and config: timing lives in a
separate top-level field so byte comparisons can exclude it.  Exact
rationals serialize as {"num": .., "den": ..}.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import AlgebraError
from .groebner import GuardConfig, use_guard
from .ideals import Ideal, ideal_colon
from .lengths import ehk_estimate, length_quotient
from .orders import order_by_name
from .poly import FrobeniusExponent
from .script import (
    ColonCommand,
    EhkCommand,
    GbCommand,
    IdentityBasechangeCommand,
    IdentityCorollaryCommand,
    IdentityLemma33Command,
    IdentityProductCommand,
    IdentitySelfCommand,
    IndependentCommand,
    LengthCommand,
    SessionScript,
    SpreadCommand,
    SpreadHkCommand,
    format_command,
)
from .spread import (
    check_base_change,
    check_corollary_vanishing,
    check_lemma33_additivity,
    check_product_identity,
    check_self_product,
    star_independence_diagnostic,
    star_spread_estimate,
    star_spread_hk_difference,
)

SCHEMA_VERSION = 1
DEFAULT_E_MAX = 3


@dataclass(frozen=True)
class RunConfig:
    order: str = "degrevlex"
    max_gb_steps: int = GuardConfig.max_steps
    max_exponent: int = GuardConfig.max_exponent
    format: str = "json"


@dataclass
class CommandResult:
    command: str
    kind: str
    status: str
    data: dict | None = None
    error: dict | None = None


@dataclass
class Report:
    config: RunConfig
    ring: object
    bindings: tuple
    results: list = field(default_factory=list)
    ok: bool = True
    total_seconds: float = 0.0
    per_command_seconds: list = field(default_factory=list)


def _frac(x: Fraction | None):
    if x is None:
        return None
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _length_dict(lam):
    return {"finite": lam.is_finite, "value": lam.value}


def _sample_dict(s):
    return {"e": s.e, "q": s.q, "colength": s.colength,
            "normalized": _frac(s.normalized)}


def _estimate_dict(name, est, dimension):
    return {
        "ideal": name,
        "method": est.method,
        "value": _frac(est.value),
        "value_float": float(est.value),
        "dimension": dimension,
        "samples": [_sample_dict(s) for s in est.samples],
        "residuals": None if est.residuals is None
        else [_frac(r) for r in est.residuals],
        "error_bound": _frac(est.error_bound),
        "secondary": _frac(est.secondary),
        "ratio_trend": est.ratio_trend,
    }


def _spread_dict(rep, j_name, a_name):
    p = rep.J.ring.characteristic
    data = {
        "ideal": j_name,
        "a": a_name,
        "method": rep.method,
        "dimension": rep.dimension,
        "ehk_a": _frac(rep.ehk_a),
        "q0_schedule": [p ** e for e in rep.q0_schedule],
        "cells": [{"q0": c.q0, "e": c.e, "q": c.q, "length": c.length,
                   "ratio": _frac(c.ratio)} for c in rep.cells],
        "estimate": rep.estimate,
        "stabilized": rep.stabilized,
        "rounding_distance": _frac(rep.rounding_distance),
    }
    if rep.method == "hk-difference":
        data["value"] = _frac(rep.value)
        data["components"] = {k: _frac(v) for k, v in rep.components}
    return data


def _identity_dict(rep):
    return {
        "name": rep.name,
        "exact": rep.exact,
        "tolerance": _frac(rep.tolerance),
        "pass": rep.passed,
        "rows": [{"label": r.label, "lhs": _frac(r.lhs), "rhs": _frac(r.rhs),
                  "residual": _frac(r.residual), "pass": r.passed}
                 for r in rep.rows],
        "notes": list(rep.notes),
    }


def _colon_rows(rep):
    return [{"e": r.e, "q": r.q, "unit_colon": r.unit_colon,
             "least_q0": r.least_q0, "contained": r.contained}
            for r in rep.rows]


def _independence_dict(rep, name):
    return {
        "ideal": name,
        "verdict": rep.verdict,
        "caveat": rep.caveat,
        "generators": [{"generator": str(g), "verdict": sub.verdict,
                        "rows": _colon_rows(sub)}
                       for g, sub in zip(rep.generators, rep.reports)],
    }


class _Session:
    def __init__(self, script: SessionScript, config: RunConfig):
        self.ring = script.ring
        self.config = config
        self.order = order_by_name(config.order)
        self.ideals = script.ideals()
        self.p = self.ring.characteristic

    def lookup(self, name: str) -> Ideal:
        return self.ideals[name]

    def a_or_none(self, name):
        return None if name is None else self.lookup(name)

    def q0_exponent(self, q0_value):
        q0 = 1 if q0_value is None else q0_value
        return FrobeniusExponent.from_q(self.p, q0).e

    def e_list(self, q_values):
        return [FrobeniusExponent.from_q(self.p, q).e for q in q_values]

    def execute(self, cmd):
        e_max = getattr(cmd, "e_max", None) or DEFAULT_E_MAX
        if isinstance(cmd, GbCommand):
            gb = self.lookup(cmd.name).groebner_basis(self.order)
            return "gb", {"ideal": cmd.name, "order": self.order.name,
                          "basis": [str(f) for f in gb.polys]}
        if isinstance(cmd, LengthCommand):
            lam = length_quotient(self.lookup(cmd.name))
            return "length", {"ideal": cmd.name, **_length_dict(lam)}
        if isinstance(cmd, ColonCommand):
            col = ideal_colon(self.lookup(cmd.left), self.lookup(cmd.right))
            gb = col.groebner_basis(self.order)
            return "colon", {"left": cmd.left, "right": cmd.right,
                             "basis": [str(f) for f in gb.polys]}
        if isinstance(cmd, EhkCommand):
            ideal = self.lookup(cmd.name)
            est = ehk_estimate(ideal, e_max, cmd.method or "auto")
            return "ehk", _estimate_dict(cmd.name, est, ideal.ring.dimension)
        if isinstance(cmd, SpreadCommand):
            rep = star_spread_estimate(self.lookup(cmd.name),
                                       self.a_or_none(cmd.a),
                                       self.q0_exponent(cmd.q0), e_max)
            return "spread", _spread_dict(rep, cmd.name, cmd.a or "m")
        if isinstance(cmd, SpreadHkCommand):
            rep = star_spread_hk_difference(self.lookup(cmd.name),
                                            self.a_or_none(cmd.a),
                                            self.q0_exponent(cmd.q0), e_max)
            return "spread_hk", _spread_dict(rep, cmd.name, cmd.a or "m")
        if isinstance(cmd, IdentityProductCommand):
            rep = check_product_identity(self.lookup(cmd.left),
                                         self.lookup(cmd.right), cmd.ell,
                                         self.e_list(cmd.q), e_max)
            return "identity", _identity_dict(rep)
        if isinstance(cmd, IdentitySelfCommand):
            rep = check_self_product(self.lookup(cmd.name),
                                     self.e_list(cmd.q),
                                     self.q0_exponent(cmd.q0), e_max)
            return "identity", _identity_dict(rep)
        if isinstance(cmd, IdentityLemma33Command):
            rep = check_lemma33_additivity(self.lookup(cmd.name), cmd.z,
                                           self.a_or_none(cmd.a),
                                           self.q0_exponent(cmd.q0), e_max)
            return "identity", _identity_dict(rep)
        if isinstance(cmd, IdentityBasechangeCommand):
            rep = check_base_change(self.ring, self.lookup(cmd.name), cmd.s,
                                    self.e_list(cmd.q), e_max)
            return "identity", _identity_dict(rep)
        if isinstance(cmd, IdentityCorollaryCommand):
            rep = check_corollary_vanishing(self.ring, self.lookup(cmd.name),
                                            self.q0_exponent(cmd.q0), e_max)
            return "identity", _identity_dict(rep)
        if isinstance(cmd, IndependentCommand):
            ideal = self.lookup(cmd.name)
            rep = star_independence_diagnostic(
                ideal.gens, 2 if cmd.q0 is None else self.q0_exponent(cmd.q0),
                e_max)
            return "independent", _independence_dict(rep, cmd.name)
        raise AlgebraError(f"unhandled command {cmd!r}")  # pragma: no cover


def run_script(script: SessionScript, config: RunConfig | None = None) -> Report:
    """Run every command; one failure does not abort later commands."""
    config = config or RunConfig()
    guard = GuardConfig(max_steps=config.max_gb_steps,
                        max_exponent=config.max_exponent)
    report = Report(config=config, ring=script.ring, bindings=script.bindings)
    start = time.perf_counter()
    with use_guard(guard):
        session = _Session(script, config)
        for cmd in script.commands:
            echo = format_command(cmd)
            t0 = time.perf_counter()
            try:
                kind, data = session.execute(cmd)
                result = CommandResult(echo, kind, "ok", data=data)
                if kind == "identity" and not data["pass"]:
                    report.ok = False
            except AlgebraError as exc:
                result = CommandResult(
                    echo, "error", "error",
                    error={"type": type(exc).__name__, "message": str(exc)})
                report.ok = False
            report.per_command_seconds.append(time.perf_counter() - t0)
            report.results.append(result)
    report.total_seconds = time.perf_counter() - start
    return report


def report_document(report: Report, include_timing: bool = True) -> dict:
    ring = report.ring
    doc = {
        "tool": "hkspread",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "config": {
            "order": report.config.order,
            "max_gb_steps": report.config.max_gb_steps,
            "max_exponent": report.config.max_exponent,
            "format": report.config.format,
        },
        "ring": {
            "characteristic": ring.characteristic,
            "variables": list(ring.variables),
            "relations": [str(r) for r in ring.relations],
            "dimension": ring.dimension,
        },
        "bindings": [{"name": name, "generators": [str(g) for g in gens]}
                     for name, gens in report.bindings],
        "ok": report.ok,
        "results": [
            {"command": r.command, "kind": r.kind, "status": r.status,
             **({"data": r.data} if r.data is not None else {}),
             **({"error": r.error} if r.error is not None else {})}
            for r in report.results
        ],
    }
    if include_timing:
        doc["timing"] = {
            "total_seconds": report.total_seconds,
            "per_command_seconds": report.per_command_seconds,
        }
    return doc


def error_document(exc) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if hasattr(exc, "line"):
        err.update({"message": exc.message, "line": exc.line,
                    "column": exc.column})
    return {"tool": "hkspread", "version": __version__,
            "schema": SCHEMA_VERSION, "ok": False, "error": err}


def report_json(report: Report, include_timing: bool = True) -> str:
    return json.dumps(report_document(report, include_timing), indent=2)


def report_csv(report: Report) -> str:
    """Flatten table-bearing results; scalar results get a single row."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["command", "section", "label", "q0", "e", "q",
                     "value", "num", "den", "pass"])
    for result in report.results:
        echo = result.command
        if result.status != "ok":
            writer.writerow([echo, "error", result.error["type"], "", "", "",
                             result.error["message"], "", "", ""])
            continue
        data = result.data
        kind = result.kind
        if kind == "length":
            writer.writerow([echo, "length", "", "", "", "",
                             "inf" if not data["finite"] else data["value"],
                             "", "", ""])
        elif kind in ("gb", "colon"):
            for i, g in enumerate(data["basis"]):
                writer.writerow([echo, "basis", i, "", "", "", g, "", "", ""])
        elif kind == "ehk":
            v = data["value"]
            writer.writerow([echo, "estimate", data["method"], "", "", "",
                             data["value_float"], v["num"], v["den"], ""])
            for s in data["samples"]:
                nm = s["normalized"]
                writer.writerow([echo, "sample", "", "", s["e"], s["q"],
                                 s["colength"], nm["num"], nm["den"], ""])
        elif kind in ("spread", "spread_hk"):
            writer.writerow([echo, "estimate", "", "", "", "",
                             "" if data["estimate"] is None else data["estimate"],
                             "", "", data["stabilized"]])
            for c in data["cells"]:
                r = c["ratio"]
                writer.writerow([echo, "cell", "", c["q0"], c["e"], c["q"],
                                 c["length"], r["num"], r["den"], ""])
        elif kind == "identity":
            for row in data["rows"]:
                res = row["residual"]
                writer.writerow([echo, "row", row["label"], "", "", "", "",
                                 res["num"], res["den"], row["pass"]])
        elif kind == "independent":
            for gen in data["generators"]:
                for row in gen["rows"]:
                    writer.writerow([echo, gen["generator"], gen["verdict"],
                                     row["least_q0"] or "", row["e"], row["q"],
                                     row["unit_colon"], "", "",
                                     row["contained"]])
    return out.getvalue()
