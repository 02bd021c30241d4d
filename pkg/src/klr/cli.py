"""Command-line front end: ``klr {datum,verify,gdim,cyclo} QUIVER [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cyclotomic import MAX_DEGREE as CYCLO_MAX_DEGREE
from .cyclotomic import MAX_HEIGHT as CYCLO_MAX_HEIGHT
from .cyclotomic import DominantWeight, cyclotomic_dims
from .fixedpoint import FixedPointModel
from .gradeddim import verify_series
from .presentation import KLRAlgebra
from .quiver import Quiver, QuiverParseError, RootVector, derive_datum, parse_quiver, parse_root_vector

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
HARD_CAPS = {"exact": 5, "randomized": 8}
GDIM_CAP = 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    quiver: str
    command: str
    alpha: str | None = None
    nu_in: str | None = None
    nu_out: str | None = None
    weight: str | None = None
    backend: str = "exact"
    seed: int = 0
    max_degree: int | None = None
    trials: int = 3
    format: str = "text"


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("klr") / "fixtures" / name))


def resolve_quiver(path: str) -> Quiver:
    """Load ``path``, falling back to a bundled fixture of the same name."""
    p = Path(path)
    if not p.exists():
        bundled = fixture_path(p.name if p.suffix else p.name + ".json")
        if p.parent == Path(".") and bundled.exists():
            p = bundled
        else:
            raise InputError(f"no such file: {path}")
    try:
        return parse_quiver(p.read_text(encoding="utf-8"))
    except QuiverParseError as exc:
        raise InputError(f"{p}: {exc}") from exc


def _alpha(cfg: RunConfig, q: Quiver) -> RootVector:
    if cfg.alpha is None:
        raise InputError("--alpha is required")
    try:
        alpha = parse_root_vector(q, cfg.alpha)
    except QuiverParseError as exc:
        raise InputError(f"--alpha: {exc}") from exc
    if alpha.height == 0:
        raise InputError("--alpha must be nonzero")
    return alpha


def _sequence(text: str, alpha: RootVector, flag: str) -> tuple:
    try:
        seq = json.loads(text) if text.lstrip().startswith("[") else [s.strip() for s in text.split(",")]
    except json.JSONDecodeError as exc:
        raise InputError(f"{flag}: {exc}") from exc
    counts: dict = {}
    for c in seq:
        counts[c] = counts.get(c, 0) + 1
    if counts != {k: v for k, v in alpha.as_dict().items() if v}:
        raise InputError(f"{flag}: {seq} is not a sequence of the given alpha")
    return tuple(seq)


def cmd_datum(cfg: RunConfig) -> tuple[int, dict]:
    q = resolve_quiver(cfg.quiver)
    return EXIT_PASS, {"command": "datum", "datum": derive_datum(q).to_json()}


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    q = resolve_quiver(cfg.quiver)
    alpha = _alpha(cfg, q)
    if cfg.backend not in HARD_CAPS:
        raise InputError(f"unknown backend {cfg.backend!r}")
    if alpha.height > HARD_CAPS[cfg.backend]:
        raise InputError(f"height {alpha.height} exceeds the {cfg.backend} cap {HARD_CAPS[cfg.backend]}")
    model = FixedPointModel(KLRAlgebra(q, alpha))
    kw = {} if cfg.backend == "exact" else {"points": cfg.trials, "seed": cfg.seed}
    counts: dict = {}
    first_failure = None
    worst_bound = 0.0
    for inst in model.alg.relation_catalogue():
        cert = model.verify_relation(inst, backend=cfg.backend, **kw)
        c = counts.setdefault(inst.relation, {"checked": 0, "failed": 0})
        c["checked"] += 1
        if cert.failure_bound is not None:
            worst_bound = max(worst_bound, cert.failure_bound)
        if not cert.ok:
            c["failed"] += 1
            if first_failure is None:
                first_failure = inst.report("fail", cfg.backend)
                first_failure["instance"] = str(inst)
                first_failure["counterexample"] = cert.failure
    maxdeg = 4 if cfg.max_degree is None else cfg.max_degree
    cc = model.cross_check_theorem(maxdeg=maxdeg, backend=cfg.backend, **kw)
    ok = first_failure is None and cc.ok
    report = {
        "command": "verify",
        "alpha": alpha.as_dict(),
        "backend": cfg.backend,
        "seed": cfg.seed,
        "relations": counts,
        "first_failure": first_failure,
        "cross_check": cc.to_json(),
        "status": "pass" if ok else "fail",
    }
    if cfg.backend == "randomized":
        report["points"] = cfg.trials
        report["failure_bound"] = worst_bound
    return (EXIT_PASS if ok else EXIT_FAIL), report


def cmd_gdim(cfg: RunConfig) -> tuple[int, dict]:
    q = resolve_quiver(cfg.quiver)
    alpha = _alpha(cfg, q)
    if alpha.height > GDIM_CAP:
        raise InputError(f"height {alpha.height} exceeds the graded-dimension cap {GDIM_CAP}")
    model = FixedPointModel(KLRAlgebra(q, alpha))
    seqs = model.alg.sequences
    outs = [_sequence(cfg.nu_out, alpha, "--nu-out")] if cfg.nu_out else seqs
    ins = [_sequence(cfg.nu_in, alpha, "--nu-in")] if cfg.nu_in else seqs
    width = 8 if cfg.max_degree is None else cfg.max_degree
    seeds = (cfg.seed, cfg.seed + 1, cfg.seed + 2)
    reports = [verify_series(model, o, i, width=width, seeds=seeds) for o in outs for i in ins]
    ok = all(r.match for r in reports)
    return (EXIT_PASS if ok else EXIT_FAIL), {
        "command": "gdim", "alpha": alpha.as_dict(), "seeds": list(seeds), "width": width,
        "blocks": [r.to_json() for r in reports], "status": "pass" if ok else "fail",
    }


def cmd_cyclo(cfg: RunConfig) -> tuple[int, dict]:
    q = resolve_quiver(cfg.quiver)
    alpha = _alpha(cfg, q)
    if cfg.weight is None:
        raise InputError("--lambda is required")
    try:
        lam = DominantWeight.of(q, json.loads(cfg.weight))
    except (json.JSONDecodeError, QuiverParseError, AttributeError) as exc:
        raise InputError(f"--lambda: {exc}") from exc
    D = CYCLO_MAX_DEGREE if cfg.max_degree is None else cfg.max_degree
    if alpha.height > CYCLO_MAX_HEIGHT or D > CYCLO_MAX_DEGREE:
        raise InputError(f"caps exceeded: height <= {CYCLO_MAX_HEIGHT}, degree <= {CYCLO_MAX_DEGREE}")
    seeds = (cfg.seed, cfg.seed + 1, cfg.seed + 2)
    rep = cyclotomic_dims(q, alpha, lam, D, seeds=seeds)
    out = {"command": "cyclo", **rep.to_json()}
    out["status"] = "pass" if rep.stable else "unstable"
    return (EXIT_PASS if rep.stable else EXIT_FAIL), out


COMMANDS = {"datum": cmd_datum, "verify": cmd_verify, "gdim": cmd_gdim, "cyclo": cmd_cyclo}


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = []
    if cmd == "datum":
        d = report["datum"]
        lines.append(f"vertices: {' '.join(d['vertices'])}")
        lines.append("matrix: " + json.dumps(d["matrix"]))
        lines.append("loops: " + json.dumps(d["loops"], sort_keys=True))
        lines.append(f"real: {' '.join(d['real']) or '-'}  imaginary: {' '.join(d['imaginary']) or '-'}")
    elif cmd == "verify":
        lines.append(f"alpha={json.dumps(report['alpha'], sort_keys=True)} backend={report['backend']} seed={report['seed']}")
        for rel, c in sorted(report["relations"].items()):
            lines.append(f"  {rel:<13} checked={c['checked']} failed={c['failed']}")
        cc = report["cross_check"]
        lines.append(f"  cross-check   checked={cc.get('checked', 0)} status={cc['status']}")
        if report.get("failure_bound") is not None:
            lines.append(f"  failure probability bound per instance <= {report['failure_bound']:.3g}")
        if report["first_failure"]:
            f = report["first_failure"]
            lines.append(f"FIRST FAILURE: {f['instance']}")
            lines.append(f"  counterexample: {json.dumps(f['counterexample'], sort_keys=True)}")
        elif cc.get("failure"):
            lines.append(f"FIRST FAILURE: {json.dumps(cc['failure'], sort_keys=True)}")
        lines.append(report["status"].upper())
    elif cmd == "gdim":
        for b in report["blocks"]:
            mark = "ok" if b["match"] else "MISMATCH"
            coeffs = " ".join(f"{d}:{s}/{r}" for (d, s), (_, r) in zip(b["series"], b["oracle"]))
            lines.append(f"{','.join(b['nu_out'])} <- {','.join(b['nu_in'])}  {mark}  {coeffs}")
        lines.append(report["status"].upper())
    elif cmd == "cyclo":
        lines.append(f"alpha={json.dumps(report['alpha'], sort_keys=True)} "
                     f"lambda={json.dumps(report['lambda'], sort_keys=True)} seeds={report['seeds']}")
        for row in report["degrees"]:
            if not (row["full"] or row["ideal"]):
                continue
            lines.append(f"  d={row['d']:>3} full={row['full']} ideal={row['ideal']} quotient={row['quotient']}")
        lines.append(f"total quotient: {report['total_quotient']} ({report['note']})")
        lines.append(report["status"].upper())
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("datum", "print the Borcherds-Cartan datum"),
                        ("verify", "check all defining relations in the fixed-point model"),
                        ("gdim", "compare graded dimensions with numerical ranks"),
                        ("cyclo", "truncated dimensions of a cyclotomic quotient")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("quiver", help="quiver JSON file, or the name of a bundled fixture")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "datum":
            continue
        p.add_argument("--alpha", required=True, help='root vector as JSON, e.g. \'{"i":2}\'')
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-degree", type=int, default=None)
        if name == "verify":
            p.add_argument("--backend", choices=("exact", "randomized"), default="exact")
            p.add_argument("--trials", type=int, default=3, help="random points per check")
        if name == "gdim":
            p.add_argument("--nu-in")
            p.add_argument("--nu-out")
        if name == "cyclo":
            p.add_argument("--lambda", dest="weight", required=True, help='levels as JSON, e.g. \'{"i":1}\'')
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    try:
        code, report = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
