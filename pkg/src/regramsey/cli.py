"""Command-line front end.

Every command prints a short summary on stdout and writes a result document
(the full resolved configuration plus the result) to ``--output``, by
default ``regramsey-<command>.json`` in the working directory.  ``--output -``
sends the document to stdout instead of the summary.

Exit codes: 0 result / PASS, 1 FAIL or failed re-verification, 2 usage
error, 3 budget exhausted or value above the cap.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click
import numpy as np

from . import __version__
from .arith import default_cap, parse_cap
from .bounds import parse_bound
from .claims import REGISTRY, run_claim
from .colorings import Coloring, export_coloring, from_matrix, verify_regressive
from .hierarchy import ACKERMANN, GStep, HierarchySpec, RootStep, Status
from .registry import build_coloring
from .search import (InstanceTooLarge, SearchBudget, Witness, export_cnf, max_homogeneous,
                     max_min_homogeneous, nu_exact)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
# fields that may differ between two runs of the same configuration
VOLATILE_KEYS = frozenset({"wall_time_ms", "nodes_explored", "nodes"})

_STATUS_EXIT = {
    Status.PASS: EXIT_OK,
    Status.NOT_APPLICABLE: EXIT_OK,
    Status.FAIL: EXIT_FAIL,
    Status.INDETERMINATE: EXIT_BUDGET,
}


def format_cap(cap: int) -> str:
    if cap > 1 and cap & (cap - 1) == 0:
        return f"2^{cap.bit_length() - 1}"
    return str(cap)


@dataclass
class RunConfig:
    command: str
    parameters: dict
    cap: int
    budget: SearchBudget = field(default_factory=SearchBudget)
    output_path: str | None = None
    format: str = "json"

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "cap": format_cap(self.cap),
            "budget": asdict(self.budget),
            "output_path": self.output_path,
            "format": self.format,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RunConfig":
        return cls(doc["command"], doc["parameters"], parse_cap(doc["cap"]),
                   SearchBudget(**doc.get("budget", {})), doc.get("output_path"), doc.get("format", "json"))


@dataclass
class RunResult:
    summary: str
    result: dict
    exit_code: int = EXIT_OK
    rows: list[dict] | None = None  # tabular form, for --format csv

    @property
    def status(self) -> str:
        return {EXIT_OK: "ok", EXIT_FAIL: "fail", EXIT_BUDGET: "budget"}[self.exit_code]


def strip_volatile(obj):
    if isinstance(obj, dict):
        return {k: strip_volatile(v) for k, v in obj.items() if k not in VOLATILE_KEYS}
    if isinstance(obj, list):
        return [strip_volatile(v) for v in obj]
    return obj


# ---------------------------------------------------------------- runners
# Each runner maps a RunConfig to a RunResult; ``verify --from-file`` reuses
# them to re-run a recorded configuration.

def hierarchy_from_spec(spec: str) -> HierarchySpec:
    head, _, arg = spec.strip().partition(":")
    key, _, val = arg.partition("=")
    if head == "ack" and not arg:
        return ACKERMANN
    if head == "ft" and key == "t":
        t = int(val)
        if t < 1:
            raise ValueError("t must be at least 1")
        return HierarchySpec(RootStep(t))
    if head == "fg" and key == "g":
        return HierarchySpec(GStep(parse_bound(val)))
    raise ValueError(f"bad hierarchy {spec!r}; expected ack, ft:t=T or fg:g=BOUND")


def run_eval(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    h = hierarchy_from_spec(p["spec"])
    if p.get("iterate") is None:
        v = h.eval(p["i"], p["n"], cfg.cap)
    else:
        v = h.iterate(p["i"], p["iterate"], p["n"], cfg.cap)
    summary = f"TOP (exceeds cap {format_cap(cfg.cap)})" if v.is_top else str(v.value)
    return RunResult(summary, {"hierarchy": h.describe(), "value": None if v.is_top else v.value,
                               "top": v.is_top})


def _color_stats(col: Coloring) -> dict:
    used: set[int] = set()
    top = -1
    for m in range(col.lo, col.hi - 1):
        row = col.row(m)
        if row.size:
            used.update(np.unique(row).tolist())
            top = max(top, int(row.max()))
    return {"domain": [col.lo, col.hi], "pairs": col.size * (col.size - 1) // 2,
            "distinct_colors": len(used), "max_color": top}


def run_color(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    col = build_coloring(p["spec"], cap=cfg.cap)
    result = {"coloring": col.header(), **_color_stats(col)}
    code = EXIT_OK
    lines = [f"{col.name} on [{col.lo}, {col.hi}): {result['distinct_colors']} colors, "
             f"max {result['max_color']}"]
    if p.get("g"):
        v = verify_regressive(col, parse_bound(p["g"]))
        result["regressive"] = {"g": p["g"], "holds": v is None,
                                "counterexample": None if v is None else v.to_json()}
        if v is None:
            lines.append(f"{p['g']}-regressive: PASS")
        else:
            lines.append(f"{p['g']}-regressive: FAIL at ({v.m}, {v.n}): color {v.color} > {v.bound}")
            code = EXIT_FAIL
    return RunResult("\n".join(lines), result, code)


def _parse_interval(text: str | None) -> tuple[int, int] | None:
    if not text:
        return None
    lo, sep, hi = text.partition(",")
    if not sep:
        raise ValueError(f"interval must be LO,HI, got {text!r}")
    return int(lo), int(hi)


def run_search(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    col = build_coloring(p["spec"], cap=cfg.cap)
    interval = _parse_interval(p.get("interval"))
    if p["mode"] == "homogeneous":
        out = max_homogeneous(col, interval, p.get("target"), cfg.budget, engine=p.get("engine", "auto"))
    else:
        out = max_min_homogeneous(col, interval, p.get("target"), cfg.budget)
    best = out.best
    elems = "none" if best is None else " ".join(map(str, best.elements))
    if out.found:
        summary = f"found size {len(best)}: {elems}"
        if out.maximum is not None:
            summary = f"maximum {out.maximum}: {elems}"
        code = EXIT_OK
    elif out.exhaustive:
        summary = f"no set of size {out.target}; maximum {out.maximum}: {elems}"
        code = EXIT_OK
    else:
        summary = f"budget exhausted; best size {0 if best is None else len(best)}: {elems}"
        code = EXIT_BUDGET
    return RunResult(summary, out.to_json(), code)


def run_nu(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    g = parse_bound(p["g"])
    ks = p["k"]
    lines, results, rows = [], [], []
    code = EXIT_OK
    for k in ks:
        ck = p.get("checkpoint")
        if ck and len(ks) > 1:
            path = Path(ck)
            ck = str(path.with_name(f"{path.stem}-k{k}{path.suffix}"))
        res = nu_exact(g, k, p["limit"], cfg.budget, ck)
        text = str(res.value) if res.exhaustive else f"NotFoundBelow({res.not_found_below})"
        lines.append(text if len(ks) == 1 else f"k={k}: {text}")
        if not res.exhaustive:
            code = EXIT_BUDGET
        results.append(res.to_json())
        rows.append({"g": p["g"], "k": k, "value": res.value, "not_found_below": res.not_found_below,
                     "exhaustive": res.exhaustive, "nodes_explored": res.nodes_explored,
                     "wall_time_ms": res.wall_time_ms})
    return RunResult("\n".join(lines), {"g": g.describe(), "values": results}, code, rows)


def _claim_summary(rep) -> str:
    head = f"{rep.status.value} {rep.claim} " + " ".join(f"{k}={v}" for k, v in rep.params.items())
    lines = [head.rstrip()]
    sym = {">=": "≥", ">": ">"}
    for c in rep.details.get("checks", []):
        if c["status"] in ("PASS", "FAIL"):
            extra = f" j={c['params']['j']}" if "j" in c["params"] else ""
            lines.append(f"  {c['name']}{extra}: {c['lhs']} {sym[c['relation']]} {c['rhs']} ({c['status']})")
    if rep.details.get("maximum") is not None:
        lines.append(f"  exact maximum {rep.details['maximum']}: {rep.details['elements']}")
    elif rep.details.get("found"):
        lines.append(f"  witness: {rep.details['elements']}")
    for key in ("counterexample", "strict_counterexample"):
        if rep.details.get(key):
            lines.append(f"  {key.replace('_', ' ')}: {rep.details[key]}")
    return "\n".join(lines)


def run_verify(cfg: RunConfig) -> RunResult:
    p = dict(cfg.parameters)
    claim = p.pop("claim")
    b = cfg.budget
    rep = run_claim(claim, **p, cap=cfg.cap, jobs=b.parallelism, max_nodes=b.max_nodes,
                    time_limit=b.time_limit)
    return RunResult(_claim_summary(rep), rep.to_json(), _STATUS_EXIT[rep.status])


def run_export_cnf(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    g = parse_bound(p["g"])
    with open(p["out"], "w") as fh:
        nv, nc = export_cnf(g, p["k"], p["N"], fh)
    return RunResult(f"wrote {p['out']}: {nv} variables, {nc} clauses",
                     {"g": g.describe(), "k": p["k"], "N": p["N"], "path": p["out"],
                      "num_vars": nv, "num_clauses": nc})


def run_export_coloring(cfg: RunConfig) -> RunResult:
    p = cfg.parameters
    col = build_coloring(p["spec"], cap=cfg.cap)
    bound = parse_bound(p["g"]).describe() if p.get("g") else None
    header, data = export_coloring(col, p["out"], p["data_format"], bound)
    return RunResult(f"wrote {header} and {data}", {"header": str(header), "data": str(data),
                                                     "coloring": col.header(bound)})


RUNNERS = {
    "eval": run_eval,
    "color": run_color,
    "search": run_search,
    "nu": run_nu,
    "verify": run_verify,
    "export-cnf": run_export_cnf,
    "export-coloring": run_export_coloring,
}


# ---------------------------------------------------------------- re-verification

def _check_witnesses(cmd: str, cfg: RunConfig, result: dict) -> list[str]:
    """Re-check every witness in a recorded result; returns problems found."""
    problems = []
    if cmd == "search" and result.get("elements"):
        spec = result["coloring"].get("parameters", {}).get("spec", cfg.parameters["spec"])
        col = build_coloring(spec, cap=cfg.cap)
        try:
            Witness(result["elements"], result["mode"]).verify(col)
        except AssertionError as exc:
            problems.append(str(exc))
    if cmd == "nu":
        g = parse_bound(cfg.parameters["g"])
        for res in result["values"]:
            bad = res.get("bad_coloring")
            if not bad:
                continue
            col = from_matrix([[max(c, 0) for c in row] for row in bad], 0, "bad")
            v = verify_regressive(col, g)
            if v is not None:
                problems.append(f"k={res['k']}: stored coloring is not regressive at ({v.m}, {v.n})")
            out = max_min_homogeneous(col, target_k=res["k"])
            if out.found:
                problems.append(f"k={res['k']}: stored coloring has min-homogeneous {list(out.best.elements)}")
    return problems


def reverify(doc: dict, rerun: bool = True) -> RunResult:
    cfg = RunConfig.from_json(doc["config"])
    cmd = cfg.command
    if cmd not in RUNNERS:
        raise ValueError(f"document has unknown command {cmd!r}")
    problems = _check_witnesses(cmd, cfg, doc["result"])
    matches = None
    if rerun:
        fresh = RUNNERS[cmd](cfg)
        matches = strip_volatile(fresh.result) == strip_volatile(doc["result"])
        if not matches:
            problems.append("re-running the recorded configuration gave a different result")
    ok = not problems
    summary = ("PASS" if ok else "FAIL") + f" re-verified {cmd} document"
    if problems:
        summary += "\n" + "\n".join(f"  {p}" for p in problems)
    return RunResult(summary, {"command": cmd, "rerun": rerun, "matches": matches, "problems": problems},
                     EXIT_OK if ok else EXIT_FAIL)


# ---------------------------------------------------------------- click plumbing

def _document(cfg: RunConfig, res: RunResult) -> dict:
    return {"regramsey": __version__, "config": cfg.to_json(), "status": res.status, "result": res.result}


def _write_csv(cfg: RunConfig, res: RunResult, fh) -> None:
    fh.write(f"# config: {json.dumps(cfg.to_json(), sort_keys=True)}\n")
    rows = res.rows or []
    if rows:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def _emit(cfg: RunConfig, res: RunResult) -> None:
    if cfg.format == "csv" and res.rows is None:
        raise click.UsageError(f"--format csv is only available for tabular commands (nu), not {cfg.command}")
    buf = io.StringIO()
    if cfg.format == "csv":
        _write_csv(cfg, res, buf)
    else:
        buf.write(json.dumps(_document(cfg, res), indent=2) + "\n")
    if cfg.output_path == "-":
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(res.summary)
        Path(cfg.output_path).write_text(buf.getvalue())


def _run(command: str, parameters: dict, cap: str | None, output: str | None, fmt: str,
         budget: SearchBudget | None = None) -> None:
    try:
        cap_value = parse_cap(cap) if cap else default_cap()
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--cap") from None
    out = output or f"regramsey-{command}.{fmt}"
    cfg = RunConfig(command, parameters, cap_value, budget or SearchBudget(), out, fmt)
    try:
        res = RUNNERS[command](cfg)
    except (ValueError, KeyError, FileNotFoundError, InstanceTooLarge) as exc:
        raise click.UsageError(str(exc)) from None
    _emit(cfg, res)
    sys.exit(res.exit_code)


def common(fn):
    @click.option("--cap", default=None, help="Saturation cap, e.g. 2^256 (env REGRAMSEY_CAP).")
    @click.option("--output", "-o", default=None,
                  help="Result document path ('-' for stdout); default regramsey-<command>.<format>.")
    @click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return fn(*args, **kwargs)
    return wrapper


def budget_options(fn):
    @click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
    @click.option("--max-nodes", type=click.IntRange(min=1), default=None, help="Node budget.")
    @click.option("--time-limit", type=click.FloatRange(min=0), default=None, help="Seconds.")
    @functools.wraps(fn)
    def wrapper(*args, jobs, max_nodes, time_limit, **kwargs):
        return fn(*args, budget=SearchBudget(max_nodes, time_limit, jobs), **kwargs)
    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="regramsey")
def main():
    """Regressive Ramsey numbers: hierarchies, colorings, searches and checks."""


@main.command("eval")
@click.argument("spec")
@click.argument("i", type=click.IntRange(min=1))
@click.argument("n", type=click.IntRange(min=0))
@click.option("--iterate", type=click.IntRange(min=0), default=None, help="Apply level I this many times.")
@common
def eval_cmd(spec, i, n, iterate, cap, output, fmt):
    """Evaluate level I of a hierarchy at N.  SPEC is ack, ft:t=T or fg:g=BOUND."""
    _run("eval", {"spec": spec, "i": i, "n": n, "iterate": iterate}, cap, output, fmt)


@main.command("color")
@click.argument("spec")
@click.option("--g", default=None, help="Also check regressivity against this bound.")
@common
def color_cmd(spec, g, cap, output, fmt):
    """Build a coloring and summarize it.  SPEC as in ``search``."""
    _run("color", {"spec": spec, "g": g}, cap, output, fmt)


@main.command("search")
@click.argument("spec")
@click.option("--mode", type=click.Choice(["min-hom", "homogeneous"]), default="min-hom", show_default=True)
@click.option("--target", type=click.IntRange(min=1), default=None,
              help="Stop at the first set of this size; without it the maximum is computed.")
@click.option("--interval", default=None, help="LO,HI sub-interval to search.")
@click.option("--engine", type=click.Choice(["auto", "python", "compiled"]), default="auto", show_default=True)
@budget_options
@common
def search_cmd(spec, mode, target, interval, engine, budget, cap, output, fmt):
    """Exact search for (min-)homogeneous sets of a coloring.

    SPEC: cg:g=id,k=3 | base10[:lo=43,hi=10000] | base-s:s=2,hi=10001 |
    table42 | ramsey42 | stitched[:schedule=F] | const:c=0,lo=0,hi=10 | file:H.json
    """
    params = {"spec": spec, "mode": mode, "target": target, "interval": interval, "engine": engine}
    _run("search", params, cap, output, fmt, budget)


@main.command("nu")
@click.option("--g", "g", required=True, help="Bound: const:C, id, root:t, pow:j, logq:f=logstar, sched:@F.")
@click.option("--k", "k", type=click.IntRange(min=2), multiple=True, required=True,
              help="Repeat for a sweep.")
@click.option("--limit", type=click.IntRange(min=2), default=64, show_default=True, help="Largest N tried.")
@click.option("--checkpoint", default=None, help="Progress file; resumed when present.")
@budget_options
@common
def nu_cmd(g, k, limit, checkpoint, budget, cap, output, fmt):
    """Exact nu_g(k) by backtracking over N = k, k+1, ..."""
    params = {"g": g, "k": list(k), "limit": limit, "checkpoint": checkpoint}
    _run("nu", params, cap, output, fmt, budget)


@main.command("verify")
@click.argument("claim", required=False)
@click.option("--from-file", "from_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Re-verify a result document instead of running a claim.")
@click.option("--no-rerun", is_flag=True, help="With --from-file, only re-check stored witnesses.")
@click.option("--param", "-p", "extra", multiple=True, help="Extra claim parameter KEY=VALUE.")
@click.option("--g", default=None)
@click.option("--k", default=None, type=int)
@click.option("--t", default=None, type=int)
@click.option("--i", default=None, type=int)
@click.option("--n", default=None, type=int)
@click.option("--s", default=None, type=int)
@click.option("--target", default=None, type=int)
@click.option("--hi", default=None, type=int)
@budget_options
@common
def verify_cmd(claim, from_file, no_rerun, extra, g, k, t, i, n, s, target, hi, budget, cap, output, fmt):
    """Run a registered claim check, or re-verify a document with --from-file.

    Claims: smallDg, g-regressive, noMinHom, svalues, regHom2, obs-prei1,
    obs-i1, induction-step, monotonicity, base10-nominhom, table42-nohom,
    stitched-regressive.
    """
    if from_file:
        if claim:
            raise click.UsageError("give either a claim id or --from-file, not both")
        try:
            doc = json.loads(Path(from_file).read_text())
            res = reverify(doc, rerun=not no_rerun)
        except (ValueError, KeyError) as exc:
            raise click.UsageError(f"cannot re-verify {from_file}: {exc}") from None
        cfg = RunConfig("verify", {"from_file": from_file, "rerun": not no_rerun},
                        parse_cap(cap) if cap else default_cap(), budget,
                        output or f"regramsey-verify.{fmt}", fmt)
        _emit(cfg, res)
        sys.exit(res.exit_code)
    if not claim:
        raise click.UsageError("missing claim id (or --from-file)")
    if claim not in REGISTRY:
        raise click.UsageError(f"unknown claim {claim!r}; known: {', '.join(REGISTRY)}")
    params = {"claim": claim}
    named = {"g": g, "k": k, "t": t, "i": i, "n": n, "s": s, "target": target, "hi": hi}
    params.update({key: v for key, v in named.items() if v is not None})
    for item in extra:
        key, sep, val = item.partition("=")
        if not sep:
            raise click.UsageError(f"--param expects KEY=VALUE, got {item!r}")
        params[key] = val
    _run("verify", params, cap, output, fmt, budget)


@main.group("export")
def export_group():
    """Write CNF instances or colorings to files."""


@export_group.command("cnf")
@click.option("--g", "g", required=True, help="Bound, as for nu.")
@click.option("--k", "k", type=click.IntRange(min=2), required=True)
@click.option("--N", "N", type=click.IntRange(min=1), required=True, help="Domain [0, N).")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="DIMACS file.")
@common
def export_cnf_cmd(g, k, N, out, cap, output, fmt):
    """DIMACS CNF: satisfiable iff a g-regressive coloring of [0, N) has no
    min-homogeneous k-set."""
    _run("export-cnf", {"g": g, "k": k, "N": N, "out": out}, cap, output, fmt)


@export_group.command("coloring")
@click.argument("spec")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Path stem; .json header is added.")
@click.option("--data-format", type=click.Choice(["csv", "bin"]), default="csv", show_default=True)
@click.option("--g", default=None, help="Bound recorded in the header.")
@common
def export_coloring_cmd(spec, out, data_format, g, cap, output, fmt):
    """Write a coloring as CSV or binary plus a JSON header."""
    _run("export-coloring", {"spec": spec, "out": out, "data_format": data_format, "g": g}, cap, output, fmt)


if __name__ == "__main__":
    main()
