"""Build colorings from short construction strings.

    cg:g=id,k=3              c_g on [mu_g(k), (f_g)_k(mu_g(k)))
    base10[:lo=43,hi=10000]  base-10 interval coloring
    base-s:s=2,hi=10001      base-s coloring on [1, hi)
    table42                  the 42-vertex table on [0, 43) (minima 0, 1 colored 0)
    ramsey42                 the raw 42-vertex graph on [0, 42)
    stitched[:schedule=F]    table42 then base10 over a two-interval schedule
    const:c=0,lo=0,hi=10     constant coloring
    file:PATH.json           a coloring written by ``export``

The string is stored in the coloring's parameters under ``spec`` so result
documents can be re-verified.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .bounds import parse_bound
from .colorings import (Coloring, base10_interval_coloring, base_s_coloring, cg_coloring,
                        constant_coloring, from_matrix, load_coloring, load_graph,
                        small_interval_coloring, stitched_coloring)
from .hierarchy import Schedule

TOY_SCHEDULE = "toy-schedule.json"


def _kv(arg: str) -> dict[str, str]:
    out = {}
    if not arg:
        return out
    for part in arg.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        out[key.strip()] = val.strip()
    return out


def toy_schedule() -> Schedule:
    with resources.as_file(resources.files("regramsey.data").joinpath(TOY_SCHEDULE)) as p:
        return Schedule.load(p)


def _with_spec(col: Coloring, spec: str) -> Coloring:
    params = dict(col.params, spec=spec)
    return Coloring(col.lo, col.hi, col.color_of, col.name, params, col.row_fn, col.translation_invariant)


def build_coloring(spec: str, base_dir: str | Path | None = None, cap: int | None = None) -> Coloring:
    head, _, arg = spec.strip().partition(":")
    if head == "file":
        return load_coloring(Path(base_dir or ".") / arg if not Path(arg).is_absolute() else arg)
    kv = _kv(arg)
    if head == "cg":
        g = parse_bound(kv.get("g", "id"), base_dir)
        col = cg_coloring(g, int(kv.get("k", "3")), int(kv.get("limit", str(10**6))), cap)
    elif head == "base10":
        col = base10_interval_coloring(int(kv.get("lo", "43")), int(kv.get("hi", "10000")))
    elif head == "base-s":
        col = base_s_coloring(int(kv.get("s", "2")), int(kv.get("hi", "10001")), int(kv.get("lo", "1")))
    elif head == "table42":
        col = small_interval_coloring()
    elif head == "ramsey42":
        col = from_matrix(load_graph(), 0, "ramsey42")
    elif head == "stitched":
        sched = Schedule.load(Path(base_dir or ".") / kv["schedule"]) if "schedule" in kv else toy_schedule()
        if len(sched.mu) != 3 or sched.mu[1] != 43:
            raise ValueError("stitched construction needs a schedule [0, 43, hi]")
        col = stitched_coloring(sched, [small_interval_coloring(), base10_interval_coloring(43, sched.mu[2])])
    elif head == "const":
        col = constant_coloring(int(kv.get("lo", "0")), int(kv.get("hi", "10")), int(kv.get("c", "0")))
    else:
        raise ValueError(f"unknown construction {spec!r}")
    return _with_spec(col, spec.strip())
