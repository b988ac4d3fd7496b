"""Command-line front end: ``multcode {params,encode,extract,decompose}``.

Field elements are written as their enumeration indices.  Message files
hold one integer per line (``#`` starts a comment); codeword files hold one
line per point with ``sigma`` space-separated symbols.

Exit codes: 0 on success, 2 for invalid code parameters, 3 for invalid data.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import MultcodeError, NonPrimeCharacteristic, UnsupportedSize
from .finite_field import field_new
from .mpoly import MVPoly, multi_indices
from .multiplicity import (MultCode, code_new, decompose, ev_s, extract_message, recompose,
                           systematic_encode, systematic_encode_fast)

EXIT_PARAMS = 2
EXIT_DATA = 3


class DataError(Exception):
    pass


def _code_from_args(args) -> MultCode:
    field = field_new(args.p, args.t)
    return code_new(field, args.m, args.s, args.d)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def read_message(text: str, code: MultCode) -> np.ndarray:
    try:
        values = [int(tok) for line in _data_lines(text) for tok in line.split()]
    except ValueError as exc:
        raise DataError(f"message: {exc}") from None
    if len(values) != code.k:
        raise DataError(f"message has {len(values)} symbols, expected k = {code.k}")
    if any(not 0 <= v < code.q for v in values):
        raise DataError(f"message symbols must lie in [0, {code.q})")
    return np.array(values, dtype=np.int64)


def format_message(msg) -> str:
    return "".join(f"{int(v)}\n" for v in msg)


def read_codeword(text: str, code: MultCode) -> np.ndarray:
    lines = _data_lines(text)
    if len(lines) != code.n:
        raise DataError(f"codeword has {len(lines)} lines, expected n = {code.n}")
    try:
        rows = [[int(tok) for tok in line.split()] for line in lines]
    except ValueError as exc:
        raise DataError(f"codeword: {exc}") from None
    if any(len(r) != code.sigma for r in rows):
        raise DataError(f"every codeword line needs sigma = {code.sigma} symbols")
    arr = np.array(rows, dtype=np.int64).reshape(code.n, code.sigma)
    if arr.size and (arr.min() < 0 or arr.max() >= code.q):
        raise DataError(f"codeword symbols must lie in [0, {code.q})")
    return arr


def format_codeword(cw) -> str:
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in np.asarray(cw))


def _fmt_index(j) -> str:
    return "(" + ",".join(map(str, j)) + ")"


def cmd_params(args) -> int:
    code = _code_from_args(args)
    lines = [f"p={args.p}", f"t={args.t}", f"q={code.q}", f"m={code.m}", f"s={code.s}",
             f"d={code.d}", f"n={code.n}", f"sigma={code.sigma}", f"k={code.k}"]
    for j in code.S:
        lines.append(f"j={_fmt_index(j)} d_j={code.dj[j]} size={code.infoset_size(j)}")
    lines.append(f"infoset={len(code.infoset)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_encode(args) -> int:
    code = _code_from_args(args)
    msg = read_message(_read_text(args.input), code)
    if args.mode == "monomial":
        exps = multi_indices(code.m, code.d)
        F = MVPoly(code.field, code.m, dict(zip(exps, msg.tolist())))
        cw = ev_s(F, code)
    elif args.mode == "fast":
        cw = systematic_encode_fast(msg, code)
    else:
        cw = systematic_encode(msg, code)
    _write_text(args.out, format_codeword(cw))
    return 0


def cmd_extract(args) -> int:
    code = _code_from_args(args)
    cw = read_codeword(_read_text(args.input), code)
    _write_text(args.out, format_message(extract_message(cw, code)))
    return 0


def cmd_decompose(args) -> int:
    code = _code_from_args(args)
    text = " ".join(_data_lines(_read_text(args.input))).replace(" ", "")
    try:
        F = MVPoly.from_text(text, code.field, code.m)
        dec = decompose(F, code)
    except (ValueError, MultcodeError) as exc:
        raise DataError(str(exc)) from None
    if recompose(dec, code) != F:
        raise RuntimeError("decomposition does not recompose to the input")
    lines = [f"j={_fmt_index(j)} deg={Fj.degree} poly={Fj.to_text()}" for j, Fj in dec.items()]
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="field characteristic")
    common.add_argument("--t", type=int, default=1, help="extension degree (q = p^t)")
    common.add_argument("--m", type=int, required=True, help="number of variables")
    common.add_argument("--s", type=int, required=True, help="multiplicity (derivative orders < s)")
    common.add_argument("--d", type=int, required=True, help="degree bound, 0 <= d < s*q")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="multcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="print code parameters")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("encode", parents=[common], help="encode a message file")
    p.add_argument("--in", dest="input", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--systematic", dest="mode", action="store_const", const="systematic")
    mode.add_argument("--fast", dest="mode", action="store_const", const="fast")
    mode.add_argument("--monomial", dest="mode", action="store_const", const="monomial")
    p.set_defaults(func=cmd_encode, mode="systematic")

    p = sub.add_parser("extract", parents=[common], help="read the message off a codeword")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("decompose", parents=[common], help="split F into F_j V_j components")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _code_from_args(args)
    except (NonPrimeCharacteristic, UnsupportedSize, ValueError, MultcodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
