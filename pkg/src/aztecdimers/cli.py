"""Command-line surface for exact Aztec-diamond tiling statistics.

Commands
--------
``count --n N``
    Exact number of tilings of the order-``N`` diamond, annotated as a
    power of two when it is one.

``coupling --n N --white X Y --black X Y``
    One coupling value as an exact dyadic rational plus a decimal
    approximation.

``prob FILE``
    Probability of the pattern described by ``FILE`` (format below), as an
    exact reduced fraction plus a decimal approximation.

``heatmap --n N --d0 D0 --d1 D1 --out FILE``
    Signed inverse-Kasteleyn entries for every hole position ``(w0, w1)``
    at fixed offsets, as CSV with header ``w0,w1,numerator,scale,approx``.
    The exact columns are never rounded; ``approx`` is a 12-significant-
    digit round-half-even decimal and is not authoritative.  Output rows
    are sorted by ``w0`` then ``w1`` and byte-identical across runs and
    thread counts (``AZTEC_DIMERS_THREADS`` sets the worker count).

``verify --level quick|full``
    Run the oracle self-checks; exit 1 on any mismatch.

Pattern files are JSON, one object::

    {"format": 1,
     "n": 3,
     "dominoes": [[["white", 1, 1], ["black", 1, 1]],
                  [["black", 2, 1], ["white", 1, 2]]]}

``format`` must be 1.  Each domino lists its two cells as
``[color, x, y]`` triples in diagonal coordinates, one white and one black
in either order; the pair must be adjacent on the order-``n`` diamond and
no cell may repeat.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from decimal import Context, Decimal, ROUND_HALF_EVEN
from typing import Optional, Sequence

from . import verify as verify_mod
from .coupling import coupling, coupling_signed, pattern_probability
from .kasteleyn import count_matchings_det
from .lattice import BoardError, Color, Pattern, PatternError, Vertex, build_diamond

HEATMAP_ORDER_LIMIT = 200

_APPROX_CONTEXT = Context(prec=12, rounding=ROUND_HALF_EVEN)


def _approx(numerator: int, denominator: int) -> str:
    """12-significant-digit decimal string, round-half-even."""
    return str(_APPROX_CONTEXT.divide(Decimal(numerator), Decimal(denominator)))


def _cmd_count(args: argparse.Namespace) -> int:
    count = count_matchings_det(build_diamond(args.n))
    if count > 0 and count & (count - 1) == 0:
        print(f"{count} (= 2^{count.bit_length() - 1})")
    else:
        print(count)
    return 0


def _cmd_coupling(args: argparse.Namespace) -> int:
    v = Vertex(Color.WHITE, args.white[0], args.white[1])
    w = Vertex(Color.BLACK, args.black[0], args.black[1])
    value = coupling(args.n, v, w)
    print(f"{value} ({_approx(value.numerator, 2 ** value.scale)})")
    return 0


def load_pattern_file(path: str) -> tuple[int, Pattern]:
    """Parse a pattern file into its diamond order and :class:`Pattern`."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: parse error at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object")
    if doc.get("format") != 1:
        raise ValueError(f"{path}: unsupported format {doc.get('format')!r} (expected 1)")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"{path}: n must be a positive integer, got {n!r}")
    dominoes = []
    for k, pair in enumerate(doc.get("dominoes", [])):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"{path}: domino {k} must list exactly two cells")
        cells = []
        for cell in pair:
            if not (isinstance(cell, list) and len(cell) == 3):
                raise ValueError(f"{path}: domino {k}: cell must be [color, x, y]")
            color_name, x, y = cell
            try:
                color = Color(color_name)
            except ValueError:
                raise ValueError(f"{path}: domino {k}: unknown color {color_name!r}") from None
            if not isinstance(x, int) or not isinstance(y, int):
                raise ValueError(f"{path}: domino {k}: coordinates must be integers")
            cells.append(Vertex(color, x, y))
        colors = {c.color for c in cells}
        if colors != {Color.WHITE, Color.BLACK}:
            raise ValueError(f"{path}: domino {k} needs one white and one black cell")
        w, b = (cells[0], cells[1]) if cells[0].color is Color.WHITE else (cells[1], cells[0])
        dominoes.append((w, b))
    return n, Pattern(tuple(dominoes))


def _cmd_prob(args: argparse.Namespace) -> int:
    try:
        n, pattern = load_pattern_file(args.pattern_file)
        p = pattern_probability(n, pattern)
    except (ValueError, PatternError, BoardError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{p.numerator}/{p.denominator} ({_approx(p.numerator, p.denominator)})")
    return 0


def _heatmap_rows(n: int, d0: int, d1: int) -> list[tuple[int, int]]:
    w0s = range(max(1, 1 - d0), min(n, n + 1 - d0) + 1)
    w1s = range(max(1, 1 - d1), min(n, n + 1 - d1) + 1)
    return [(w0, w1) for w0 in w0s for w1 in w1s]


def _cmd_heatmap(args: argparse.Namespace) -> int:
    n, d0, d1 = args.n, args.d0, args.d1
    cells = _heatmap_rows(n, d0, d1)
    if not cells:
        print(f"error: offsets d0={d0}, d1={d1} fit nowhere on the order-{n} diamond",
              file=sys.stderr)
        return 2

    def evaluate(cell: tuple[int, int]) -> str:
        w0, w1 = cell
        value = coupling_signed(n, w0, d0, w1, d1)
        approx = _approx(value.numerator, 2 ** value.scale)
        return f"{w0},{w1},{value.numerator},{value.scale},{approx}"

    workers = max(1, int(os.environ.get("AZTEC_DIMERS_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            lines = list(pool.map(evaluate, cells))
    else:
        lines = [evaluate(cell) for cell in cells]
    text = "w0,w1,numerator,scale,approx\n" + "\n".join(lines) + "\n"
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    print(f"wrote {len(cells)} entries to {args.out}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify_mod.run_checks(args.level)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name} ({r.detail})")
        failed += 0 if r.ok else 1
    if failed:
        print(f"{failed} of {len(results)} checks failed")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aztec-dimers",
        description="Exact local statistics of random domino tilings of the Aztec diamond.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of tilings of the order-n diamond")
    p.add_argument("--n", type=_positive, required=True, help="diamond order")
    p.set_defaults(run=_cmd_count)

    p = sub.add_parser("coupling", help="one coupling value, exact plus decimal")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--white", type=int, nargs=2, metavar=("X", "Y"), required=True)
    p.add_argument("--black", type=int, nargs=2, metavar=("X", "Y"), required=True)
    p.set_defaults(run=_cmd_coupling)

    p = sub.add_parser("prob", help="probability of the pattern in a pattern file")
    p.add_argument("pattern_file", help="JSON pattern file (see module docs)")
    p.set_defaults(run=_cmd_prob)

    p = sub.add_parser("heatmap", help="CSV sweep of signed entries over hole positions")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--force", action="store_true", help="allow n beyond the cost guard")
    p.set_defaults(run=_cmd_heatmap)

    p = sub.add_parser("verify", help="run the oracle self-checks")
    p.add_argument("--level", choices=verify_mod.LEVELS, default="quick")
    p.set_defaults(run=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "heatmap" and args.n > HEATMAP_ORDER_LIMIT and not args.force:
        parser.error(f"n={args.n} exceeds the cost guard ({HEATMAP_ORDER_LIMIT}); pass --force")
    try:
        return args.run(args)
    except (BoardError, PatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
