"""Command-line front end: ``python -m hochkit --input alg.txt ...``.

Writes a JSON report (schema in ``report.schema.json``) and exits with
status 1 when any verification fails, 2 on input or window errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .atiyah import DecompositionMaps, build
from .bar import bar_dims
from .chern import (atiyah_is_closed, atiyah_of_complex, chern_character, check_twisted,
                    twisted)
from .checks import run_checks
from .gca import PresentationError
from .homology import WindowError, decompose, deviation_from_identity, homology_dims, verify_iso
from .parsing import ParseError, format_algebra, parse_algebra, parse_polynomial
from .resolvent import AffineAlgebra, koszul_tate_resolve

TASKS = ("resolve", "hochschild", "decompose", "verify-phi", "verify-psi", "oracle", "chern")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    input: Path
    max_degree: int
    max_weight: int
    tasks: list[str]
    out: Path | None = None
    threads: int = 1
    check_level: str = "fast"
    complex: Path | None = None
    timings: bool = False

    def validate(self) -> None:
        if self.max_degree < 1 or self.max_weight < 1:
            raise ConfigError("window needs --max-degree >= 1 and --max-weight >= 1")
        if not self.tasks:
            raise ConfigError("no tasks selected")
        unknown = [t for t in self.tasks if t not in TASKS]
        if unknown:
            raise ConfigError(f"unknown task(s): {', '.join(unknown)}")
        if "chern" in self.tasks and self.complex is None:
            raise ConfigError("task 'chern' needs --complex FILE")


def parse_tasks(text: str) -> list[str]:
    """Comma list; ``all`` expands to every task except ``chern``."""
    out: list[str] = []
    for t in (t.strip() for t in text.split(",")):
        for name in (TASKS[:-1] if t == "all" else (t,) if t else ()):
            if name not in out:
                out.append(name)
    return out


def _rows(table: dict, keys: tuple[str, ...]) -> list[dict]:
    return [dict(zip(keys, (*k, v))) for k, v in sorted(table.items())]


def _iso_json(report) -> dict:
    return {"passed": report.passed,
            "failures": [{"n": -c.degree, "w": c.weight, "source_dim": c.source_dim,
                          "target_dim": c.target_dim, "rank": c.rank,
                          "chain_residual_zero": c.residual_zero} for c in report.failures()]}


def _probe_json(devs) -> dict:
    return {"identity_on_chains": all(d.chain_rank == 0 for d in devs),
            "identity_on_homology": all(d.homology_rank == 0 for d in devs),
            "cells": [{"n": -d.degree, "w": d.weight, "dim": d.dim, "chain_rank": d.chain_rank,
                       "homology_rank": d.homology_rank} for d in devs]}


def run_chern(M: DecompositionMaps, path: Path) -> dict:
    data = json.loads(Path(path).read_text())
    R = M.R
    basis = [(g["name"], int(g["degree"]), int(g["weight"])) for g in data["generators"]]
    D = [[parse_polynomial(str(x), R) for x in row] for row in data["differential"]]
    F = twisted(R, basis, D)
    diagnostics = check_twisted(F)
    out = {"diagnostics": diagnostics, "atiyah": None, "atiyah_closed": None, "ch": None}
    if not diagnostics:
        At = atiyah_of_complex(F, M.cotangent)
        out["atiyah"] = [[str(x) for x in row] for row in At]
        out["atiyah_closed"] = atiyah_is_closed(F, At, M.cotangent)
        out["ch"] = str(chern_character(F, M.cotangent))
    return out


def run(cfg: JobConfig) -> tuple[int, dict]:
    """Execute the configured tasks; returns ``(exit status, report)``."""
    cfg.validate()
    text = Path(cfg.input).read_text()
    A: AffineAlgebra = parse_algebra(text)
    N, W = cfg.max_degree, cfg.max_weight
    tasks = set(cfg.tasks)
    timings: dict[str, float] = {}
    report: dict = {
        "algebra": format_algebra(A),
        "window": {"max_degree": N, "max_weight": W},
        "tasks": [t for t in TASKS if t in tasks],
        "hh": [], "decomposition": [], "oracle": [],
        "checks": {"phi_iso": None, "psi_iso": None, "phi_psi_identity": None,
                   "oracle_match": None, "sum_rule": None, "properties": []},
    }
    failed = False

    def timed(name, fn):
        t0 = time.perf_counter()
        value = fn()
        timings[name] = round(time.perf_counter() - t0, 4)
        return value

    res = timed("resolve", lambda: koszul_tate_resolve(A, N, W))
    M = timed("build", lambda: build(res))
    if "resolve" in tasks:
        report["resolvent"] = [
            {"name": v.name, "degree": v.degree, "weight": v.weight, "d": str(M.R.d_value(i))}
            for i, v in enumerate(M.R.variables)]
        props = timed("checks", lambda: run_checks(M, cfg.check_level))
        report["checks"]["properties"] = props
        failed |= not all(p["passed"] for p in props)

    degrees = [-n for n in range(N + 1)]
    weights = list(range(W + 1))
    hh = None
    if tasks & {"hochschild", "decompose", "oracle"}:
        raw = timed("hochschild", lambda: homology_dims(M.H, degrees, weights,
                                                         threads=cfg.threads))
        hh = {(-n, w): d for (n, w), d in raw.items()}
        if "hochschild" in tasks or "decompose" in tasks:
            report["hh"] = _rows(hh, ("n", "w", "dim"))
    if "decompose" in tasks:
        dec = timed("decompose", lambda: decompose(M.C, M.cotangent.sym_degree, M.H, N, W,
                                                   threads=cfg.threads))
        report["decomposition"] = _rows(dec.parts, ("n", "w", "p", "dim"))
        report["checks"]["sum_rule"] = dec.sum_rule
        failed |= not dec.sum_rule
    if "oracle" in tasks:
        orc = timed("oracle", lambda: bar_dims(A, N, W))
        report["oracle"] = _rows(orc, ("n", "w", "dim"))
        match = all(hh.get(k) == d for k, d in orc.items())
        report["checks"]["oracle_match"] = match
        failed |= not match
    if "verify-phi" in tasks:
        rep = timed("verify-phi", lambda: verify_iso(M.Phi, M.H, M.C, degrees, weights,
                                                     threads=cfg.threads))
        report["checks"]["phi_iso"] = rep.passed
        report["checks"]["phi_iso_failures"] = _iso_json(rep)["failures"]
        failed |= not rep.passed
    if "verify-psi" in tasks:
        rep = timed("verify-psi", lambda: verify_iso(M.Psi, M.C, M.H, degrees, weights,
                                                     threads=cfg.threads))
        report["checks"]["psi_iso"] = rep.passed
        report["checks"]["psi_iso_failures"] = _iso_json(rep)["failures"]
        failed |= not rep.passed
    if {"verify-phi", "verify-psi"} <= tasks:
        # reported only; the answer is not known in general
        report["checks"]["phi_psi_identity"] = timed("probe", lambda: {
            "phi_after_psi": _probe_json(deviation_from_identity(
                lambda c: M.Phi(M.Psi(c)), M.C, degrees, weights)),
            "psi_after_phi": _probe_json(deviation_from_identity(
                lambda h: M.Psi(M.Phi(h)), M.H, degrees, weights)),
        })
    if "chern" in tasks:
        ch = timed("chern", lambda: run_chern(M, cfg.complex))
        report["chern"] = ch
        failed |= bool(ch["diagnostics"]) or ch["atiyah_closed"] is False
    report["timings"] = timings if cfg.timings else {}
    return (1 if failed else 0), report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hochkit",
        description="Hochschild homology of a weighted-homogeneous algebra via a "
                    "Koszul-Tate resolvent, checked against the bar complex.")
    p.add_argument("--input", required=True, type=Path, help="algebra file (var/rel statements)")
    p.add_argument("--max-degree", type=int, default=4, help="homological window N")
    p.add_argument("--max-weight", type=int, default=6, help="weight window W")
    p.add_argument("--tasks", default="all",
                   help=f"comma-separated subset of {', '.join(TASKS)}, or 'all'")
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")
    p.add_argument("--threads", type=int, default=1, help="worker threads for bidegree work")
    p.add_argument("--check-level", choices=("fast", "full"), default="fast")
    p.add_argument("--complex", type=Path, help="twisted complex JSON for the chern task")
    p.add_argument("--timings", action="store_true",
                   help="record wall times (makes the report non-reproducible)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig(args.input, args.max_degree, args.max_weight, parse_tasks(args.tasks),
                    args.out, max(1, args.threads), args.check_level, args.complex,
                    args.timings)
    try:
        status, report = run(cfg)
    except (OSError, ParseError, ConfigError, WindowError, PresentationError,
            json.JSONDecodeError, KeyError) as exc:
        print(f"hochkit: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


def schema() -> dict:
    return json.loads(resources.files("hochkit").joinpath("report.schema.json").read_text())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
