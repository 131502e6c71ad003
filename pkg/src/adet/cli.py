"""Command line front end: ``adet compute|validate|kasteleyn|oracle|render``.

Exit codes: 0 success, 1 a check failed, 2 the input could not be used.
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .errors import AdetError, InputError
from .intlinalg import validate_input
from .pattern import LEVELS, ZigzagPattern, validate

log = logging.getLogger("adet")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputProblem(Exception):
    """Raised inside a command when the user's file is unusable."""


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputProblem(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputProblem(f"{path} is not valid JSON: {exc}") from exc


def _load_pattern(path):
    obj = _load_json(path)
    try:
        return ZigzagPattern.from_json(obj)
    except (KeyError, TypeError, ValueError, AdetError) as exc:
        raise InputProblem(f"{path} does not describe a pattern: {exc}") from exc


def _load_relations(path):
    obj = _load_json(path)
    if not isinstance(obj, dict) or not ({"A", "B"} & obj.keys()):
        raise InputProblem(f"{path} needs an \"A\" or \"B\" key")
    try:
        if "B" in obj:
            return validate_input(B=obj["B"])
        return validate_input(A=obj["A"])
    except InputError as exc:
        raise InputProblem(f"{type(exc).__name__}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputProblem(f"malformed matrix in {path}: {exc}") from exc


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ------------------------------------------------------------------


def cmd_compute(args):
    from .kasteleyn import compute_adet

    B_A = _load_relations(args.input)
    result = compute_adet(B_A, keep_trace=bool(args.trace), multiplicity=args.multiplicity)
    newton = result.newton
    log.info("Newton polygon check passed; edge lengths %s", newton.edge_lengths())

    if args.trace:
        outdir = Path(args.trace)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, pat in result.run.trace:
            (outdir / f"{name}.json").write_text(_dump(pat.to_json()))

    doc = {
        "B_A": [[int(x) for x in row] for row in result.B_A],
        "principal_A_determinant": result.value.to_json(),
        "text": str(result.value),
        "monomial_factor": str(result.value.monomial_factor()[0]),
        "pattern": result.run.pattern.to_json(),
        "provenance": result.run.provenance.as_triples(),
        "iterations": result.run.iterations,
        "multiplicity": args.multiplicity,
        "newton_polygon": {"passed": newton.passed, "edge_lengths": newton.edge_lengths()},
    }
    if args.keep_u:
        doc["u_form"] = result.u_form.to_json()
        doc["u_text"] = str(result.u_form)

    lines = [f"E_A = {result.value}"]
    mono, rest = result.value.monomial_factor()
    if len(mono.terms) == 1 and next(iter(mono.terms)):
        lines.append(f"    = {mono} * ({rest})")
    if args.keep_u:
        lines.append(f"u-form = {result.u_form}")
    lines.append(f"newton polygon check: passed, edge lengths {newton.edge_lengths()}")
    if args.output:
        Path(args.output).write_text(_dump(doc))
    print("\n".join(lines))
    return EXIT_OK


def cmd_validate(args):
    pat = _load_pattern(args.pattern)
    report = validate(pat, args.level)
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_kasteleyn(args):
    from .kasteleyn import build_K, complement_K

    pat = _load_pattern(args.pattern)
    K = build_K(pat)
    if args.complement:
        K = complement_K(K)
    sys.stdout.write(_dump(K.to_json()))
    return EXIT_OK


def cmd_oracle(args):
    from .oracle import univariate_EA_oracle

    print(univariate_EA_oracle(3))
    return EXIT_OK


def render_svg(graph, size=480):
    """Dimer graph as SVG: black nodes on the inner circle, white on the outer."""
    cx = cy = size / 2
    radii = (size * 0.22, size * 0.40)

    def place(count, radius, offset):
        pts = []
        for k in range(count):
            angle = 2 * math.pi * (k + offset) / max(count, 1) - math.pi / 2
            pts.append((cx + radius * math.cos(angle), cy + radius * math.sin(angle)))
        return pts

    black = place(len(graph.black), radii[0], 0.0)
    white = place(len(graph.white), radii[1], 0.5)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    seen = {}
    for b, w, i, j in graph.edges:
        k = seen.get((b, w), 0)
        seen[(b, w)] = k + 1
        (x0, y0), (x1, y1) = black[b], white[w]
        # parallel edges fan out as quadratic curves
        bend = ((k + 1) // 2) * (1 if k % 2 else -1) * 18
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        length = math.hypot(x1 - x0, y1 - y0) or 1.0
        qx, qy = mx - bend * (y1 - y0) / length, my + bend * (x1 - x0) / length
        out.append(f'<path d="M {x0:.2f} {y0:.2f} Q {qx:.2f} {qy:.2f} {x1:.2f} {y1:.2f}" '
                   f'fill="none" stroke="#555" stroke-width="1.5">'
                   f'<title>u{i + 1} u{j + 1}</title></path>')
    for k, (x, y) in enumerate(black):
        out.append(f'<circle class="black" cx="{x:.2f}" cy="{y:.2f}" r="9" fill="black" '
                   f'stroke="black"><title>b{k}</title></circle>')
    for k, (x, y) in enumerate(white):
        out.append(f'<circle class="white" cx="{x:.2f}" cy="{y:.2f}" r="9" fill="white" '
                   f'stroke="black" stroke-width="2"><title>w{k}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args):
    from .kasteleyn import to_dimer_graph

    pat = _load_pattern(args.pattern)
    graph = to_dimer_graph(pat, check=False)
    Path(args.svg).write_text(render_svg(graph))
    print(f"wrote {args.svg}: {len(graph.black) + len(graph.white)} nodes, {len(graph.edges)} edges")
    return EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="adet", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="principal A-determinant of an input lattice")
    p.add_argument("--input", required=True, help='JSON file with an "A" or "B" matrix')
    p.add_argument("--output", help="write the full JSON result here")
    p.add_argument("--keep-u", action="store_true", help="also report the form in u before u -> v")
    p.add_argument("--trace", metavar="DIR", help="dump the pattern after every merge and clean")
    p.add_argument("--multiplicity", choices=("paper", "inverse"), default="paper",
                   help="fold split columns back with u = d*v (paper) or u = v/d (inverse)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="check pattern conditions")
    p.add_argument("--pattern", required=True)
    p.add_argument("--level", choices=LEVELS, default="good")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("kasteleyn", help="print the Kasteleyn matrix of a good pattern as JSON")
    p.add_argument("--pattern", required=True)
    p.add_argument("--complement", action="store_true", help="print the complementary matrix")
    p.set_defaults(func=cmd_kasteleyn)

    p = sub.add_parser("oracle", help="brute-force reference values")
    p.add_argument("which", choices=["cubic"])
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="draw the dimer graph of a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--svg", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AdetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
