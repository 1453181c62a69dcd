"""Command-line front end.

Every command is a thin wrapper over the library: parse inputs, call one
operation, serialize.  Outputs are deterministic (exact scalars are strings
in JSON, term lists are in the canonical composition order); timing goes to
stderr so reruns stay byte-identical on stdout and in files.

Exit codes: 0 success, 2 parse error, 3 guard exceeded, 4 invariant
violation in the input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import algebra, composition, grid as gridmod, signature
from .composition import InvalidComposition, MatrixComposition
from .grid import EvConstGrid, EvZeroGrid
from .scalars import kind_by_name
from .signature import GuardExceeded

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_INVARIANT = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc


def _load_composition(path: str) -> MatrixComposition:
    text = _read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}", EXIT_PARSE) from exc
    try:
        return MatrixComposition.from_json_dict(obj)
    except InvalidComposition as exc:
        raise CliError(f"{path}: {exc}", EXIT_INVARIANT) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{path}: malformed composition: {exc}", EXIT_PARSE) from exc


def _load_cells(path: str, kind, d: int):
    text = _read_text(path)
    try:
        if text.lstrip().startswith("P2"):
            if d != 1:
                raise ValueError("PGM input is d = 1 only")
            cells = gridmod.parse_pgm(text)
            if kind.name == "rational":
                cells = [[(kind.parse(str(c[0])),) for c in row] for row in cells]
            return cells
        return gridmod.parse_grid_cells(kind, d, text)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_out(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands -----------------------------------------------------------------


def cmd_features(args) -> int:
    kind = kind_by_name(args.scalar)
    cells = _load_cells(args.input, kind, args.d)
    x = EvConstGrid(kind, args.d, cells)
    z = gridmod.delta(x)
    comps = composition.compositions_up_to_weight(args.d, args.max_weight)
    values = []
    timings = {"auto": 0.0, "naive": 0.0}
    for a in comps:
        t0 = time.perf_counter()
        try:
            val = signature.ss_coeff(z, a)
        except GuardExceeded as exc:
            raise CliError(str(exc), EXIT_GUARD) from exc
        timings["auto"] += time.perf_counter() - t0
        values.append((a, val))
    if args.verify_invariance:
        rng = random.Random(0)
        warped = x
        for _ in range(3):
            axis = rng.choice([1, 2])
            k = rng.randint(1, max(warped.stored_rows, warped.stored_cols))
            warped = gridmod.warp(axis, k, warped)
        zw = gridmod.delta(warped)
        for a, val in values:
            check = signature.ss_coeff(zw, a)
            if check != val:
                raise CliError(
                    f"invariance verification failed at {a!r}", EXIT_INVARIANT
                )
    report = {
        "input": args.input,
        "scalar": kind.name,
        "d": args.d,
        "max_weight": args.max_weight,
        "features": [
            {"composition": a.to_json_dict(), "value": kind.format(v)}
            for a, v in values
        ],
    }
    _write(args.output, _json_out(report))
    print(f"features: {len(values)} values in {timings['auto'] * 1000:.1f} ms", file=sys.stderr)
    return EXIT_OK


def cmd_qshuffle(args) -> int:
    a = _load_composition(args.a)
    b = _load_composition(args.b)
    if a.d != b.d:
        raise CliError("compositions have different d", EXIT_INVARIANT)
    result = algebra.qshuffle(a, b)
    _write(args.output, _json_out(result.to_json_dict()))
    return EXIT_OK


def cmd_coproduct(args) -> int:
    a = _load_composition(args.a)
    result = algebra.coproduct(a)
    terms = [
        {
            "coeff": algebra.format_coeff(c),
            "left": left.to_json_dict(),
            "right": right.to_json_dict(),
        }
        for (left, right), c in result.sorted_items()
    ]
    _write(args.output, _json_out({"terms": terms}))
    return EXIT_OK


def cmd_antipode(args) -> int:
    a = _load_composition(args.a)
    result = algebra.antipode(a)
    _write(args.output, _json_out(result.to_json_dict()))
    return EXIT_OK


def cmd_signature(args) -> int:
    kind = kind_by_name(args.scalar)
    cells = _load_cells(args.input, kind, args.d)
    z = EvZeroGrid(kind, args.d, cells)
    try:
        sig = signature.ss_truncated(z, args.max_weight)
    except GuardExceeded as exc:
        raise CliError(str(exc), EXIT_GUARD) from exc
    _write(args.output, _json_out(sig.to_json_dict()))
    return EXIT_OK


def cmd_equiv(args) -> int:
    kind = kind_by_name(args.scalar)
    if not kind.is_ring:
        raise CliError("equivalence needs a ring-tier scalar", EXIT_PARSE)
    x = EvConstGrid(kind, args.d, _load_cells(args.x, kind, args.d))
    y = EvConstGrid(kind, args.d, _load_cells(args.y, kind, args.d))
    nf_x = gridmod.nf_sim(x)
    nf_y = gridmod.nf_sim(y)
    out = {
        "equivalent": nf_x == nf_y,
        "nf_x": gridmod.format_grid_csv(nf_x).strip().splitlines(),
        "nf_y": gridmod.format_grid_csv(nf_y).strip().splitlines(),
    }
    _write(args.output, _json_out(out))
    return EXIT_OK


def cmd_normalform(args) -> int:
    kind = kind_by_name(args.scalar)
    cells = _load_cells(args.input, kind, args.d)
    if args.form == "zero":
        out = gridmod.nf_zero(EvZeroGrid(kind, args.d, cells))
    elif args.form == "warp":
        out = gridmod.nf_warp(EvConstGrid(kind, args.d, cells))
    elif args.form == "const":
        out = gridmod.nf_const(EvConstGrid(kind, args.d, cells))
    else:
        out = gridmod.nf_sim(EvConstGrid(kind, args.d, cells))
    _write(args.output, gridmod.format_grid_csv(out))
    return EXIT_OK


def cmd_concat(args) -> int:
    kind = kind_by_name(args.scalar)
    if args.op == "diag":
        a = EvZeroGrid(kind, args.d, _load_cells(args.x, kind, args.d))
        b = EvZeroGrid(kind, args.d, _load_cells(args.y, kind, args.d))
        out = gridmod.diag_concat(a, b)
    else:
        x = EvConstGrid(kind, args.d, _load_cells(args.x, kind, args.d))
        y = EvConstGrid(kind, args.d, _load_cells(args.y, kind, args.d))
        out = gridmod.box_concat(x, y)
    _write(args.output, gridmod.format_grid_csv(out))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .composition import ChainedComposition, from_int_matrix
    from .scalars import INT

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()] if args.sizes else []
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    rng = random.Random(args.seed)
    writer = sys.stdout
    writer.write("size,strategy,composition,seconds\n")
    for n in sizes:
        cells = [[(rng.randint(-2, 2),) for _ in range(n)] for _ in range(n)]
        cells[-1][-1] = (1,)  # pin the support window
        z = EvZeroGrid(INT, 1, cells)
        chained = ChainedComposition(
            1, (1,), ((0, (1,)), (1, (1,)), (2, (2,)), (0, (1,)))
        )
        comp = chained.materialize()
        twobytwo = from_int_matrix(1, [[1, 2], [1, 1]])
        cases = [("chained", comp), ("2x2", twobytwo)]
        for strategy in strategies:
            for label, a in cases:
                applicable = (
                    strategy == "naive"
                    or (strategy == "chained" and label == "chained")
                    or (strategy == "2x2" and label == "2x2")
                )
                if not applicable:
                    continue
                t0 = time.perf_counter()
                try:
                    val = signature.ss_coeff(z, a, strategy=strategy)
                    elapsed = time.perf_counter() - t0
                except GuardExceeded:
                    writer.write(f"{n},{strategy},{label},guard\n")
                    continue
                if strategy != "naive":
                    ref_ok = True
                    try:
                        ref = signature.ss_coeff(z, a, strategy="naive")
                        ref_ok = ref == val
                    except GuardExceeded:
                        pass
                    if not ref_ok:
                        raise CliError(
                            f"strategy disagreement at size {n} / {label}", EXIT_INVARIANT
                        )
                writer.write(f"{n},{strategy},{label},{elapsed:.6f}\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twosig",
        description="Warping-invariant features of matrix data via two-parameter sums signatures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output=True):
        p.add_argument("--scalar", default="int", choices=["int", "rational"], help="scalar kind")
        p.add_argument("--d", type=int, default=1, help="number of data channels")
        if output:
            p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = sub.add_parser("features", help="warping invariants of an image/grid")
    p.add_argument("input", help="grid CSV or ASCII PGM path")
    p.add_argument("--max-weight", "-W", type=int, default=4)
    p.add_argument("--verify-invariance", action="store_true", help="re-check features on a warped copy")
    add_common(p)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("qshuffle", help="two-parameter quasi-shuffle of two compositions")
    p.add_argument("a", help="composition JSON path")
    p.add_argument("b", help="composition JSON path")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_qshuffle)

    p = sub.add_parser("coproduct", help="deconcatenation coproduct of a composition")
    p.add_argument("a", help="composition JSON path")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("antipode", help="antipode of a composition")
    p.add_argument("a", help="composition JSON path")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("signature", help="truncated sums signature of an eventually-zero grid")
    p.add_argument("input", help="grid CSV or ASCII PGM path")
    p.add_argument("--max-weight", "-W", type=int, default=4)
    add_common(p)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("equiv", help="decide equivalence modulo constants and warping")
    p.add_argument("x")
    p.add_argument("y")
    add_common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("normalform", help="normal form of a grid")
    p.add_argument("input")
    p.add_argument("--form", choices=["zero", "warp", "const", "sim"], default="sim")
    add_common(p)
    p.set_defaults(func=cmd_normalform)

    p = sub.add_parser("concat", help="diagonal (evZ) or box (evC) concatenation")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--op", choices=["diag", "box"], default="diag")
    add_common(p)
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("bench", help="compare evaluation strategies on synthetic grids")
    p.add_argument("--sizes", default="", help="comma-separated grid sizes")
    p.add_argument("--strategies", default="chained,2x2,naive")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvalidComposition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
