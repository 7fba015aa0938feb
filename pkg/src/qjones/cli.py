"""Command-line front end: ``qjones <verb> [flags]``.

Output is the canonical JSON serialization of the result unless ``--pretty``
is given.  Exit status: 0 on success, 1 when a mathematical check fails
(``check-eval``, ``rec-verify``, ``aj-check``, ``selftest``), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable

from .cyclo import CycNumber, RootSpec
from .cyclojones import CyclotomicCoeffs, CyclotomicError, colored_jones, cyclotomic_solve
from .fixtures import load_knot, read_json
from .habiro import HabiroElement, HabiroError, h_eval, h_taylor
from .ore import APoly, OreError, OrePoly, Sequence, aj_compare, builtin_seq, guess_recurrence, guess_search
from .ore import specialize_q1, verify_recurrence
from .qpoly import InexactDivisionError, LaurentPoly
from .skein import Diagram, MalformedDiagramError, jones_from_pd
from .surgery import SurgeryError, SurgeryPresentation, evaluation_pair, surgery_relative, wrt_state_sum

__all__ = ["main", "dispatch", "build_parser"]

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("qjones")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnostic, exit 2
        raise InputError(f"{self.prog}: {message}")


# ------------------------------------------------------------------ rendering


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _cyc_pretty(z: CycNumber) -> str:
    parts = []
    for i, c in enumerate(z.coords):
        if not c:
            continue
        mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
        coef = str(abs(c))
        body = mono if mono and abs(c) == 1 else f"{coef}*{mono}" if mono else coef
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        text = "0"
    else:
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        text += "".join(f" {s} {b}" for s, b in parts[1:])
    return f"{text}  (x = q^(1/4), primitive {z.m}-th root of unity)"


def _render(value, pretty: bool) -> str:
    if isinstance(value, LaurentPoly):
        return value.pretty() if pretty else _dumps(value.to_json())
    if isinstance(value, CyclotomicCoeffs):
        if pretty:
            return "\n".join(f"C({k}) = {c.pretty()}" for k, c in enumerate(value.coeffs))
        return _dumps(value.to_json())
    if isinstance(value, CycNumber):
        return _cyc_pretty(value) if pretty else _dumps(value.to_json())
    if isinstance(value, HabiroElement):
        return value.pretty() if pretty else _dumps(value.to_json())
    if isinstance(value, (OrePoly, APoly)):
        return value.pretty() if pretty else _dumps(value.to_json())
    if isinstance(value, str):
        return value
    return _dumps(value)


# ------------------------------------------------------------------ inputs


def _diagram(args) -> Diagram:
    src = args.pd or args.knot
    if not src:
        raise InputError("need --pd FILE or --knot NAME")
    data = read_json(src)
    if "pd" not in data:
        raise InputError(f"{src} has no pd field")
    return Diagram.from_json(data)


def _coeffs(args) -> CyclotomicCoeffs:
    if not args.knot:
        raise InputError("need --knot NAME")
    return load_knot(args.knot).coeffs


def _presentation(args) -> SurgeryPresentation:
    if not args.knot:
        raise InputError("need --knot NAME or a presentation file")
    data = read_json(args.knot)
    if "framings" in data or "knot" in data:
        if args.framing is not None and "knot" in data:
            data = dict(data, framing=args.framing)
        return SurgeryPresentation.from_json(data)
    if args.framing is None:
        raise InputError("knot surgery needs --framing +1 or -1")
    return SurgeryPresentation.knot_surgery(CyclotomicCoeffs.from_json(data), args.framing)


def _colors(args, p: SurgeryPresentation) -> tuple[int, ...]:
    if not args.color:
        return ()
    try:
        return tuple(int(x) for x in str(args.color).split(","))
    except ValueError:
        raise InputError(f"--color expects integers separated by commas, got {args.color!r}") from None


def _habiro(args) -> HabiroElement:
    """A Habiro element file, or the surgery series of a knot/presentation."""
    if args.knot:
        data = read_json(args.knot)
        if "prefactor_e" in data:
            return HabiroElement.from_json(data)
    p = _presentation(args)
    N = args.trunc if args.trunc is not None else max(args.d or 0, 10)
    return surgery_relative(p, _colors(args, p), N)


def _sequence(name: str | None) -> Sequence:
    if not name:
        raise InputError("need --knot NAME (a knot fixture or a builtin sequence)")
    try:
        return builtin_seq(name)
    except OreError:
        pass
    C = load_knot(name).coeffs
    return Sequence("laurent", lambda n: colored_jones(C, n), C.knot_name, C.kmax + 1)


def _load_op(path: str) -> OrePoly:
    return OrePoly.from_json(json.loads(Path(path).read_text()))


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.verb} needs {' '.join(missing)}")


# ------------------------------------------------------------------ verbs

Result = tuple[object, int]


def cmd_jones(args) -> Result:
    return jones_from_pd(_diagram(args)), EXIT_OK


def cmd_cjones(args) -> Result:
    _need(args, "color")
    return colored_jones(_coeffs(args), args.color), EXIT_OK


def cmd_cyclotomic(args) -> Result:
    C = _coeffs(args)
    nmax = args.color if args.color is not None else min(C.kmax + 1, 10)
    return cyclotomic_solve([colored_jones(C, n) for n in range(1, nmax + 1)], C.knot_name), EXIT_OK


def cmd_habiro_eval(args) -> Result:
    _need(args, "d")
    return h_eval(_habiro(args), RootSpec.from_d(args.d)), EXIT_OK


def cmd_habiro_taylor(args) -> Result:
    h = _habiro(args)
    return h_taylor(h, h.trunc), EXIT_OK


def cmd_surgery(args) -> Result:
    p = _presentation(args)
    N = args.trunc if args.trunc is not None else 10
    return surgery_relative(p, _colors(args, p), N), EXIT_OK


def cmd_wrt(args) -> Result:
    _need(args, "d")
    p = _presentation(args)
    return wrt_state_sum(p, _colors(args, p), args.d), EXIT_OK


def cmd_check_eval(args) -> Result:
    _need(args, "d")
    p = _presentation(args)
    a, b = evaluation_pair(p, _colors(args, p), args.d, args.trunc)
    verdict = "EQUAL" if a == b else "DIFFERENT"
    if args.pretty:
        text = f"habiro: {_cyc_pretty(a)}\nwrt:    {_cyc_pretty(b)}\n{verdict}"
    else:
        text = _dumps({"habiro": a.to_json(), "wrt": b.to_json()}) + "\n" + verdict
    return text, EXIT_OK if a == b else EXIT_CHECK


def _guess(args) -> OrePoly:
    """Exact degrees when both --dL and --dM are given, otherwise a lattice search."""
    f = _sequence(args.knot)
    train = args.train if args.train is not None else 14
    if args.dL is not None and args.dM is not None:
        P = guess_recurrence(f, args.dL, args.dM, train)
    else:
        P = guess_search(f, args.dL if args.dL is not None else 3, args.dM if args.dM is not None else 8, train)
    if P is None:
        raise OreError("no recurrence found at the requested degrees")
    return P


def cmd_rec_guess(args) -> Result:
    P = _guess(args)
    meta = {k: v for k, v in P.meta.items()}
    print(f"# {_dumps(meta)}", file=sys.stderr)
    return P, EXIT_OK


def cmd_rec_verify(args) -> Result:
    _need(args, "op")
    P = _load_op(args.op)
    f = _sequence(args.knot)
    hi = args.train if args.train is not None else 20
    ok = verify_recurrence(P, f, 1, hi)
    return f"{'VERIFIED' if ok else 'FAILED'} on n = 1..{hi}", EXIT_OK if ok else EXIT_CHECK


def cmd_aj_check(args) -> Result:
    _need(args, "apoly")
    P = _load_op(args.op) if args.op else _guess(args)
    A = APoly.from_json(read_json(args.apoly))
    verdict = aj_compare(specialize_q1(P), A)
    return str(verdict), EXIT_OK if verdict.essentially_equal else EXIT_CHECK


def cmd_selftest(args) -> Result:
    from .acceptance import run_all

    rows = run_all(echo=print)
    failed = [r for r in rows if not r.ok]
    summary = f"{len(rows) - len(failed)}/{len(rows)} checks as expected"
    return summary, EXIT_OK if not failed else EXIT_CHECK


VERBS: dict[str, tuple[Callable, str, tuple[str, ...]]] = {
    "jones": (cmd_jones, "Jones polynomial of a PD diagram", ("pd", "knot")),
    "cjones": (cmd_cjones, "colored Jones J(n) from cyclotomic coefficients", ("knot", "color")),
    "cyclotomic": (cmd_cyclotomic, "recover C(k) from J(1..color)", ("knot", "color")),
    "habiro-eval": (cmd_habiro_eval, "evaluate a Habiro element at q^(1/4) of order 4d", ("knot", "framing", "color", "d", "trunc")),
    "habiro-taylor": (cmd_habiro_taylor, "Taylor coefficients at q = 1", ("knot", "framing", "color", "trunc")),
    "surgery": (cmd_surgery, "surgery series as a truncated Habiro element", ("knot", "framing", "color", "trunc")),
    "wrt": (cmd_wrt, "WRT state sum at q^(1/4) of order 4d", ("knot", "framing", "color", "d")),
    "check-eval": (cmd_check_eval, "compare h_eval of the surgery series with the WRT state sum", ("knot", "framing", "color", "d", "trunc")),
    "rec-guess": (cmd_rec_guess, "guess a q-recurrence", ("knot", "dL", "dM", "train")),
    "rec-verify": (cmd_rec_verify, "verify an operator on n = 1..train", ("op", "knot", "train")),
    "aj-check": (cmd_aj_check, "compare alpha(L,M,1) with an A-polynomial", ("op", "knot", "dL", "dM", "train", "apoly")),
    "selftest": (cmd_selftest, "run the acceptance checks", ()),
}

_FLAGS = {
    "pd": dict(help="diagram file or fixture name"),
    "knot": dict(help="fixture name, file, or builtin sequence"),
    "color": dict(help="color n (a comma list for presentations)"),
    "framing": dict(type=int, choices=(-1, 1), help="surgery framing"),
    "d": dict(type=int, help="root parameter; q^(1/4) has order 4d"),
    "trunc": dict(type=int, help="Habiro truncation"),
    "dL": dict(type=int, help="L-degree of the ansatz"),
    "dM": dict(type=int, help="M-degree of the ansatz"),
    "train": dict(type=int, help="training / verification range"),
    "op": dict(help="operator file"),
    "apoly": dict(help="A-polynomial file or fixture name"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qjones", description="Exact colored Jones, Habiro-ring and WRT computations.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, (_, help_text, flags) in VERBS.items():
        sp = sub.add_parser(verb, help=help_text)
        for flag in flags:
            opts = dict(_FLAGS[flag])
            if flag == "color" and verb in ("cjones", "cyclotomic"):
                opts["type"] = int
            sp.add_argument(f"--{flag}", dest=flag, **opts)
        sp.add_argument("--out", help="write output to this file")
        sp.add_argument("--pretty", action="store_true", help="human-readable q-power notation")
        sp.set_defaults(**{f: None for f in _FLAGS if f not in flags})
    return parser


def dispatch(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    fn = VERBS[args.verb][0]
    try:
        value, code = fn(args)
    except (InputError, FileNotFoundError, json.JSONDecodeError, KeyError, MalformedDiagramError) as exc:
        print(f"qjones {args.verb}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CyclotomicError, HabiroError, SurgeryError, OreError, InexactDivisionError, ValueError) as exc:
        print(f"qjones {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = _render(value, args.pretty)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
