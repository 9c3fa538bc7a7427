"""Command line interface: ``qgt <command> ...``.

Exit codes: 0 success, 1 I/O, 2 validation, 3 computation cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import families
from .algebra import cartan_matrix, radical_series, socle_series
from .analysis import find_all_triangulations, gqt_report
from .errors import QGTError, ValidationError
from .fields import parse_field
from .homological import resolution
from .io import cached_build, dumps, load_any, load_presentation, read_json, write_output
from .presentations import (
    Presentation,
    deformed_relations,
    make_weights,
    presentation_from_json,
    tetrahedral_presentation,
    weighted_relations,
)
from .quiver import export_dot, triangulation_from_json
from .surface import cell_complex, quiver_of_surface, surface_of_quiver, surface_of_quiver_data, validate_surface

log = logging.getLogger("qgt")

FAMILIES = ("markov", "triangle-disk", "torus-projective", "tetrahedral", "quiver", "surface",
            "weighted", "deformed")


def _weights_arg(text):
    """'2' or 'alpha=3,delta=2'."""
    if text is None:
        return None
    if "=" not in text:
        return text
    out = {}
    for item in text.split(","):
        k, _, v = item.partition("=")
        if not k.strip() or not v.strip():
            raise ValidationError(f"bad weight assignment {item!r}")
        out[k.strip()] = v.strip()
    return out


def with_field(pres: Presentation, field_arg) -> Presentation:
    if field_arg is None:
        return pres
    F = parse_field(field_arg)
    if F == pres.field:
        return pres
    data = pres.to_json()
    data.pop("p", None)
    data.update(F.header())
    out = presentation_from_json(data)
    return Presentation(out.quiver, out.relations, out.field, {**pres.meta, **out.meta})


def _base_quiver(args):
    fam = args.family
    if fam == "markov":
        return families.markov_quiver()
    if fam == "triangle-disk":
        return families.triangle_disk_quiver()
    if fam == "torus-projective":
        return families.torus_projective_quiver()
    if fam in ("quiver", "surface", "weighted", "deformed"):
        if args.quiver:
            data = read_json(args.quiver)
            return triangulation_from_json(data.get("quiver", data))
        if args.surface:
            return quiver_of_surface(validate_surface(read_json(args.surface)))
        raise ValidationError(f"family {fam!r} needs --quiver FILE or --surface FILE")
    raise ValidationError(f"unknown family {fam!r}")


def generate_presentation(args) -> Presentation:
    """Relations of the family named by ``args.family`` over ``--field`` (default Q)."""
    F = parse_field(args.field or "Q")
    if args.family == "tetrahedral":
        return tetrahedral_presentation(int(args.m or 1), args.lam or "1", F)
    tq = _base_quiver(args)
    m = _weights_arg(args.m or "1")
    if isinstance(m, str):
        m = int(m)
    b = _weights_arg(args.b)
    w = make_weights(tq, F, m, _weights_arg(args.c or "1"), b)
    if args.family == "deformed" or (b is not None and args.family != "weighted"):
        return deformed_relations(tq, w, F)
    return weighted_relations(tq, w, F)


def _sources(args) -> list[tuple[str, Presentation]]:
    """(label, presentation) pairs from --input files or from --family parameters."""
    if args.input and args.family:
        raise ValidationError("give either --input or --family, not both")
    if args.family:
        return [(f"family:{args.family}", generate_presentation(args))]
    if not args.input:
        raise ValidationError("an --input file or a --family is required")
    paths = args.input if isinstance(args.input, list) else [args.input]
    return [(p, with_field(load_presentation(p, args.quiver), args.field)) for p in paths]


# -- commands -------------------------------------------------------------------

def cmd_validate(args) -> str:
    kind, obj = load_any(args.input)
    out = {"kind": kind, "valid": True}
    if kind == "surface":
        out["cell_complex"] = cell_complex(obj).to_json()
    elif kind == "triangulation":
        out["g_orbits"] = [list(o) for o in obj.g_orbits]
        out["f_orbits"] = [list(o) for o in obj.f_orbits]
    else:
        pres = with_field(obj, args.field)
        out["relations"] = len(pres.relations)
        out.update(pres.field.header())
        if args.build:
            A = cached_build(pres, max_len=args.cap)
            out["dimension"] = A.dimension
            out["nilpotency"] = A.nilpotency
    return dumps(out)


def cmd_generate(args) -> str:
    if args.family_pos and args.family and args.family_pos != args.family:
        raise ValidationError("conflicting family arguments")
    args.family = args.family or args.family_pos
    if not args.family:
        raise ValidationError("name a family")
    pres = generate_presentation(args)
    if args.format == "dsl":
        return pres.dsl()
    if args.output and args.output != "-" and args.output.endswith(".json"):
        # the DSL text goes next to the JSON file
        write_output(pres.dsl(), args.output[: -len(".json")] + ".dsl")
    return dumps(pres.to_json())


def _analyze_one(label, pres, seed, bound, cap, trials, enumerate_all):
    A = cached_build(pres, max_len=cap)
    rep = gqt_report(A, seed=seed, bound=bound, trials=trials)
    rep["input"] = label
    rep["radical_layers"] = radical_series(A)
    rep["socle"] = socle_series(A)
    if enumerate_all:
        rep["all_triangulations"] = [[list(c) for c in f.cycles] for f in find_all_triangulations(A)]
    return rep


def _map(fn, calls, jobs):
    """Apply ``fn`` to each argument tuple, in a process pool when jobs > 1; order is kept."""
    if jobs > 1 and len(calls) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, *zip(*calls)))
    return [fn(*c) for c in calls]


def _report_text(rep: dict) -> str:
    keys = ("input", "dimension", "family", "symmetric", "simple_periods", "tube_ranks",
            "cartan_det", "triangulation", "verdict", "tameness")
    lines = [f"{k}: {json.dumps(rep[k], sort_keys=True)}" for k in keys if k in rep]
    lines.append(f"census: {json.dumps(rep['census']['classification'], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> str:
    calls = [(label, pres, args.seed, args.bound, args.cap, args.trials, args.all)
             for label, pres in _sources(args)]
    reports = _map(_analyze_one, calls, max(1, args.jobs))
    if args.format == "text":
        body = "\n".join(_report_text(r) for r in reports)
    else:
        body = dumps(reports[0] if len(reports) == 1 else reports)
    if args.report:
        write_output(body, args.report)
    return body


def _resolve_one(pres, vertex, bound, seed, random_lifts, cap):
    A = cached_build(pres, max_len=cap)
    rng = random.Random(f"{seed}:{vertex}") if random_lifts else None
    return resolution(A, vertex, bound, rng=rng).to_json()


def cmd_resolve(args) -> str:
    if isinstance(args.input, list):
        args.input = args.input[0] if args.input else None
    (_, pres), = _sources(args)
    vertices = list(pres.quiver.vertices) if args.vertex == "all" else [args.vertex]
    for v in vertices:
        if v not in pres.quiver.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
    calls = [(pres, v, args.bound, args.seed, args.random_lifts, args.cap) for v in vertices]
    traces = _map(_resolve_one, calls, max(1, args.jobs))
    return dumps(traces[0] if len(traces) == 1 else traces)


def cmd_surface(args) -> str:
    args.input = args.input or args.input_pos
    if not args.input:
        raise ValidationError("surface needs an input file")
    data = read_json(args.input)
    if args.direction == "to-quiver":
        s = validate_surface(data)
        tq = quiver_of_surface(s)
        return dumps({"quiver": tq.to_json(), "cell_complex": cell_complex(s).to_json()})
    tq = triangulation_from_json(data.get("quiver", data))
    return dumps({"surface": surface_of_quiver_data(tq).to_json(),
                  "cell_complex": surface_of_quiver(tq).to_json()})


def cmd_export_dot(args) -> str:
    kind, obj = load_any(args.input)
    if kind == "surface":
        tq = quiver_of_surface(obj)
        return export_dot(tq.quiver, tq.f)
    if kind == "triangulation":
        return export_dot(obj.quiver, obj.f)
    tq = obj.meta.get("tq")
    return export_dot(obj.quiver, tq.f if tq is not None else None)


def cmd_cartan(args) -> str:
    (_, pres), = _sources(args)
    A = cached_build(pres, max_len=args.cap)
    return dumps(cartan_matrix(A).to_json())


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or GF:p (overrides the file header)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines")
    common.add_argument("--bound", type=int, default=8, help="syzygy bound for period detection")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--cap", type=int, default=64, help="hard cap on word length")
    common.add_argument("-v", "--verbose", action="store_true")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--family", choices=FAMILIES, help="build the presentation instead of reading a file")
    source.add_argument("--m", help="weight: integer or arrow=value list (tetrahedral: degree)")
    source.add_argument("--c", help="parameter: scalar or arrow=value list")
    source.add_argument("--b", help="border function: scalar or vertex=value list")
    source.add_argument("--lambda", dest="lam", help="tetrahedral parameter")
    source.add_argument("--quiver", help="triangulation quiver JSON (also needed with a DSL --input)")
    source.add_argument("--surface", help="surface JSON")

    p = argparse.ArgumentParser(prog="qgt", description="Algebras of generalized quaternion type.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a surface, quiver or presentation file")
    s.add_argument("--input", required=True)
    s.add_argument("--build", action="store_true", help="also build the algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("generate", parents=[common, source], help="write the relations of a family")
    s.add_argument("family_pos", nargs="?", choices=FAMILIES, metavar="family")
    s.add_argument("--format", choices=("json", "dsl"), default="json")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("analyze", parents=[common, source], help="full report for one or more presentations")
    s.add_argument("--input", action="append", help="presentation JSON or DSL file; repeatable")
    s.add_argument("--report", help="report file (same as --output)")
    s.add_argument("--trials", type=int, default=32, help="random trials for the symmetric form")
    s.add_argument("--all", action="store_true", help="list every triangulation f (at most 16 arrows)")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("resolve", parents=[common, source], help="minimal resolution of a simple module")
    s.add_argument("--input")
    s.add_argument("--vertex", required=True, help="vertex id or 'all'")
    s.add_argument("--random-lifts", action="store_true", help="perturb cover lifts using --seed")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("surface", parents=[common], help="pass between surfaces and quivers")
    s.add_argument("direction", choices=("to-quiver", "from-quiver"))
    s.add_argument("input_pos", nargs="?", metavar="input")
    s.add_argument("--input")
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz DOT of the quiver")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("cartan", parents=[common, source], help="Cartan matrix and determinant")
    s.add_argument("--input")
    s.set_defaults(func=cmd_cartan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = args.func(args)
        if args.command == "analyze" and args.report and not args.output:
            return 0
        write_output(text, args.output)
    except QGTError as exc:
        print(f"qgt: {exc}", file=sys.stderr)
        return exc.exit_code
    except (KeyError, TypeError) as exc:
        print(f"qgt: malformed input: {exc}", file=sys.stderr)
        return ValidationError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
