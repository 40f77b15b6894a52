"""Batch command-line front end.

Subcommands: pair, transform, walls, chamberpath, wallsolve, epoly,
partition, reduce, dims, gitweight.  Inputs are JSON documents (inline or
from files) in the shared schema; output is deterministic JSON or TSV
with exact rationals (never decimals).  Exit codes: 0 success, 1 domain
error (the violated precondition is named), 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import partition as partition_mod
from . import reductions, series, transforms, walls
from .errors import MukaiLabError, ParseError, PreconditionError
from .jsonio import (fmt_rational, laurent_to_json, loads, parse_box,
                     parse_class, parse_cohmap, parse_gamma, parse_laurent,
                     parse_rational, parse_surface, parse_vector,
                     vector_to_json)
from .lattice import mukai_pair

SUBCOMMANDS = ("pair", "transform", "walls", "chamberpath", "wallsolve",
               "epoly", "partition", "reduce", "dims", "gitweight")


@dataclass
class JobSpec:
    subcommand: str
    surface: dict = None
    inputs: dict = None
    output_format: str = "json"
    order: int = 8
    box: object = None
    samples: int = 200
    selftest: bool = False
    extra: dict = None


def run(job, out=None):
    """Execute a job; returns the exit code and writes to ``out``."""
    out = out or sys.stdout
    try:
        if job.subcommand not in SUBCOMMANDS:
            raise ParseError("unknown subcommand: %r" % job.subcommand)
        if job.selftest:
            lines = _selftest(job)
        else:
            lines = _dispatch(job)
        for line in lines:
            out.write(line + "\n")
        return 0
    except ParseError as exc:
        out.write("parse error: %s\n" % exc)
        return 2
    except PreconditionError as exc:
        out.write("domain error [%s]: %s\n" % (exc.precondition, exc))
        return 1
    except MukaiLabError as exc:
        out.write("domain error: %s\n" % exc)
        return 1


def _need(job, key):
    if job.inputs is None or key not in job.inputs:
        raise ParseError("missing input field: %r" % key)
    return job.inputs[key]


def _surface(job):
    if job.surface is None:
        raise ParseError("this subcommand needs --surface")
    return parse_surface(job.surface)


def _emit(job, doc, tsv_rows):
    if job.output_format == "tsv":
        return ["\t".join(str(c) for c in row) for row in tsv_rows]
    return [json.dumps(doc, sort_keys=True)]


# --- subcommand bodies -----------------------------------------------------


def _dispatch(job):
    return {
        "pair": _run_pair,
        "transform": _run_transform,
        "walls": _run_walls,
        "chamberpath": _run_chamberpath,
        "wallsolve": _run_wallsolve,
        "epoly": _run_epoly,
        "partition": _run_partition,
        "reduce": _run_reduce,
        "dims": _run_dims,
        "gitweight": _run_gitweight,
    }[job.subcommand](job)


def _run_pair(job):
    m = _surface(job)
    v = parse_vector(_need(job, "v"), m)
    w = parse_vector(_need(job, "w"), m)
    value = mukai_pair(v, w)
    return _emit(job, {"pair": fmt_rational(value)}, [[fmt_rational(value)]])


def _run_transform(job):
    m = _surface(job)
    cmap = parse_cohmap(_need(job, "map"), m)
    v = parse_vector(_need(job, "vector"), m)
    img = cmap.apply(v)
    doc = {"vector": vector_to_json(img), "kind": cmap.kind, "sign": cmap.sign}
    row = [fmt_rational(img.r)] + [fmt_rational(x) for x in img.c.coords] + [fmt_rational(img.t)]
    return _emit(job, doc, [row])


def _parse_walls_inputs(job, m):
    gamma = parse_gamma(_need(job, "gamma"), m)
    H = parse_class(_need(job, "H"), m.ns)
    box = parse_box(job.box if job.box is not None else _need(job, "box"), m.ns.rank)
    return gamma, H, box


def _run_walls(job):
    m = _surface(job)
    gamma, H, box = _parse_walls_inputs(job, m)
    found = walls.walls_dim1(gamma, H, box, m)
    rows = []
    docs = []
    for w in found:
        rows.append([",".join(fmt_rational(x) for x in w.D.coords), w.n,
                     ",".join(str(c) for c in w.normal), w.offset])
        docs.append({"D": [fmt_rational(x) for x in w.D.coords], "n": w.n,
                     "normal": list(w.normal), "offset": w.offset})
    note = "walls are numerical candidates; absence certifies generality only numerically"
    return _emit(job, {"walls": docs, "note": note}, rows)


def _run_chamberpath(job):
    m = _surface(job)
    gamma, H, box = _parse_walls_inputs(job, m)
    found = walls.walls_dim1(gamma, H, box, m)
    alpha = parse_class(_need(job, "alpha"), m.ns)
    alpha2 = parse_class(_need(job, "alpha2"), m.ns)
    crossings = walls.chamber_path(alpha, alpha2, found)
    rows = [[fmt_rational(c.t), c.index,
             ",".join(fmt_rational(x) for x in c.wall.D.coords), c.wall.n]
            for c in crossings]
    docs = [{"t": fmt_rational(c.t), "wall_index": c.index,
             "D": [fmt_rational(x) for x in c.wall.D.coords], "n": c.wall.n}
            for c in crossings]
    return _emit(job, {"crossings": docs}, rows)


def _run_wallsolve(job):
    m = _surface(job)
    v = parse_vector(_need(job, "v"), m)
    v_sub = parse_vector(_need(job, "v_sub"), m)
    H = parse_class(_need(job, "H"), m.ns)
    direction = parse_class(_need(job, "dir"), m.ns)
    res = walls.wall_solve_tf(v, v_sub, H, direction, m)
    doc = {"roots": [fmt_rational(t) for t in res.roots],
           "no_wall": res.identical,
           "irrational": list(res.irrational) if res.irrational else None}
    rows = [["no-wall" if res.identical else " ".join(fmt_rational(t) for t in res.roots) or "-"]]
    return _emit(job, doc, rows)


def _run_epoly(job):
    base = parse_laurent(_need(job, "base"))
    strata = []
    for stratum in _need(job, "strata"):
        matrix = [[parse_rational(x) for x in row] for row in stratum["pairings"]]
        factors = [parse_laurent(f) for f in stratum["factors"]]
        strata.append((matrix, factors))
    result = series.wallcross_epoly(base, strata)
    rows = [[i, j, fmt_rational(c)] for (i, j), c in result.sorted_terms()]
    return _emit(job, laurent_to_json(result), rows)


def _run_partition(job):
    r = int((job.extra or {}).get("r", (job.inputs or {}).get("r", 1)))
    m = _surface(job) if job.surface else None
    from .lattice import enriques_lattice
    lat = m.ns if m is not None else enriques_lattice()
    box = parse_box(job.box, lat.rank) if job.box is not None else \
        tuple((0, 0) for _ in range(lat.rank))
    box = tuple((int(lo), int(hi)) for lo, hi in box)
    terms = partition_mod.hecke_zr(r, lat, job.order, box)
    rows = []
    docs = []
    for t in terms:
        rows.append([fmt_rational(t.hol_scalar), ",".join(str(x) for x in t.xi),
                     fmt_rational(t.pos_coef), fmt_rational(t.coeff)])
        docs.append({"q_exponent": fmt_rational(t.hol_scalar),
                     "xi": list(t.xi),
                     "split_tag": fmt_rational(t.pos_coef),
                     "coeff": fmt_rational(t.coeff)})
    return _emit(job, {"order": job.order, "r": r, "terms": docs}, rows)


def _run_reduce(job):
    kind = (job.extra or {}).get("kind") or _need(job, "kind")
    if kind == "rank-one":
        m = _surface(job)
        c1 = parse_class(_need(job, "c1"), m.ns)
        trace = reductions.reduce_to_rank_one(int(_need(job, "l")), int(_need(job, "r")),
                                              c1, int(_need(job, "a")), m)
        extra = {}
    elif kind == "enriques":
        m = _surface(job)
        v = parse_vector(_need(job, "v"), m)
        red = reductions.enriques_reduce(v, m)
        trace = red.trace
        extra = {"n": red.n, "hodge": laurent_to_json(red.hodge)}
    elif kind == "elliptic-jacobian":
        trace = reductions.elliptic_gcd_reduce(int(_need(job, "r")), int(_need(job, "d")))
        extra = {}
    else:
        raise ParseError("unknown reduce kind: %r" % kind)
    steps = []
    rows = []
    for step, inv in zip(trace.steps, trace.invariant_log[1:]):
        state = _state_doc(step.after)
        steps.append({"move": step.move, "params": [list(p) for p in step.params],
                      "state": state,
                      "square": fmt_rational(inv[0]) if inv[0] is not None else None,
                      "multiplicity": inv[1]})
        rows.append([step.move, json.dumps(state, sort_keys=True),
                     "-" if inv[0] is None else fmt_rational(inv[0]), inv[1]])
    doc = {"steps": steps, "final": _state_doc(trace.final)}
    doc.update(extra)
    return _emit(job, doc, rows)


def _state_doc(state):
    if isinstance(state, tuple):
        return list(state)
    return vector_to_json(state)


def _run_dims(job):
    m = _surface(job)
    v = parse_vector(_need(job, "v"), m)
    flavor = (job.inputs or {}).get("flavor", "stack")
    value = reductions.moduli_dim(v, m, flavor)
    return _emit(job, {"dim": fmt_rational(value), "flavor": flavor},
                 [[flavor, fmt_rational(value)]])


def _run_gitweight(job):
    dims_doc = _need(job, "dims")
    data_doc = _need(job, "data")
    dims = reductions.GitDims(
        parse_rational(dims_doc["dimV"]), parse_rational(dims_doc["dimVp"]),
        parse_rational(dims_doc["dim_alpha_VW"]), parse_rational(dims_doc["dim_alpha_VpW"]),
        tuple(parse_rational(x) for x in dims_doc["dim_alpha_i_V"]),
        tuple(parse_rational(x) for x in dims_doc["dim_V_i"]))
    data = reductions.GitData(
        parse_rational(data_doc["h_m"]),
        tuple(parse_rational(x) for x in data_doc["h_i_m"]),
        tuple(parse_rational(x) for x in data_doc["eps_i"]),
        parse_rational(data_doc["a1"]), parse_rational(data_doc["n"]))
    value = reductions.git_weight(dims, data)
    return _emit(job, {"weight": fmt_rational(value)}, [[fmt_rational(value)]])


# --- self tests ------------------------------------------------------------


def _selftest(job):
    """Run the subcommand's bundled fixture plus quick property checks."""
    name = job.subcommand
    fixture = _load_fixture(name)
    lines = []
    if fixture is not None:
        sub_job = _job_from_doc(fixture["job"])
        import io
        buf = io.StringIO()
        code = run(sub_job, out=buf)
        got = buf.getvalue().strip()
        want = fixture["expect"].strip()
        ok = (code == fixture.get("exit", 0)) and got == want
        lines.append("fixture %s: %s" % (fixture["name"], "ok" if ok else "FAIL"))
        if not ok:
            lines.append("  expected: %s" % want)
            lines.append("  got     : %s (exit %d)" % (got, code))
            raise PreconditionError("selftest-failed", name)
    lines.extend(_property_checks(name, job.samples))
    return lines


def _property_checks(name, samples):
    rng = random.Random(11 + len(name))
    from .lattice import k3_model, random_mukai_vector
    m = k3_model()
    ok = True
    if name in ("pair", "transform"):
        for _ in range(samples):
            v = random_mukai_vector(m, rng)
            w = random_mukai_vector(m, rng)
            ok = ok and mukai_pair(v, w) == mukai_pair(w, v)
    if name == "transform":
        D = m.cls((rng.randint(-3, 3), rng.randint(-3, 3)))
        ok = ok and transforms.check_isometry(transforms.twist_map(m, D), samples, rng)
    if name in ("walls", "chamberpath", "wallsolve"):
        from .lattice import elliptic_model, GammaTriple
        el = elliptic_model()
        g = GammaTriple(0, el.cls((1, 2)), 1)
        found = walls.walls_dim1(g, el.cls((1, 3)), ((-2, 2), (-2, 2)), el)
        ok = ok and any(w.normal == (3, -1) and w.offset == -1 for w in found)
    if name in ("epoly", "partition"):
        ok = ok and series.e_gl(1) == series.LaurentPoly({(1, 1): 1, (0, 0): -1})
        ok = ok and len(series.hecke_cosets(3)) == 4
    if name in ("reduce", "dims"):
        tr = reductions.elliptic_gcd_reduce(5, 2)
        ok = ok and reductions.trace_rank_sequence(tr, 5) == [5, 2, 1]
    if name == "gitweight":
        ok = ok and reductions.parabolic_euler(3, [2], [Fraction(1, 2)], 5) == 4
    if not ok:
        raise PreconditionError("selftest-failed", name)
    return ["properties %s: ok (%d samples)" % (name, samples)]


def _load_fixture(name):
    try:
        text = resources.files("mukailab").joinpath("fixtures/%s.json" % name).read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        return None
    return json.loads(text)


def _job_from_doc(doc):
    return JobSpec(subcommand=doc["subcommand"],
                   surface=doc.get("surface"),
                   inputs=doc.get("inputs"),
                   output_format=doc.get("format", "json"),
                   order=doc.get("order", 8),
                   box=doc.get("box"),
                   extra=doc.get("extra"))


# --- argparse front end ----------------------------------------------------


def _read_doc(value):
    if value is None:
        return None
    text = value
    if not value.lstrip().startswith(("{", "[")):
        with open(value) as fh:
            text = fh.read()
    return loads(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="mukailab",
                                     description="Exact Mukai-lattice calculations")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--surface", help="surface model: file path or inline JSON")
        p.add_argument("--in", dest="inputs", help="inputs: file path or inline JSON")
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--order", type=int, default=8, help="series truncation order")
        p.add_argument("--box", help='coordinate box "lo,hi;lo,hi;..."')
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--selftest", action="store_true")
        if name == "partition":
            p.add_argument("--r", type=int, default=1, help="Hecke order (odd)")
        if name == "reduce":
            p.add_argument("--kind", choices=("rank-one", "enriques", "elliptic-jacobian"))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        surface = _read_doc(args.surface)
        inputs = _read_doc(args.inputs)
    except ParseError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return 2
    extra = {}
    if getattr(args, "r", None) is not None:
        extra["r"] = args.r
    if getattr(args, "kind", None) is not None:
        extra["kind"] = args.kind
    job = JobSpec(subcommand=args.subcommand, surface=surface, inputs=inputs,
                  output_format=args.format, order=args.order, box=args.box,
                  samples=args.samples, selftest=args.selftest, extra=extra)
    if args.out:
        with open(args.out, "w") as fh:
            return run(job, out=fh)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
