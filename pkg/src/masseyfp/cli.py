"""Command line front end.

Exit codes: 0 success, 1 computation error (e.g. an undefined Massey
product), 2 usage error, 3 ``verify`` did not reproduce the expected result.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .cohomology import (
    UndefinedProductError,
    cpi_component,
    cup,
    in_resonance,
    massey_mod_indeterminacy,
)
from .magnus import eps
from .presentations import (
    PresentationError,
    dumps_presentation,
    kty_presentation,
    load_presentation,
    monomial_presentation,
    presentation_to_json,
)
from .verify import verify_kty, verify_main
from .words import WordSyntaxError, parse_word


class UsageError(Exception):
    pass


def _csv_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_source(parser, required=True):
    g = parser.add_mutually_exclusive_group(required=required)
    g.add_argument("--monomial", type=int, metavar="R", help="P(R,1,3)")
    g.add_argument("--kty", action="store_true", help="conic with three tangent lines")
    g.add_argument("--file", metavar="PATH", help="presentation file")


def _source(args):
    if args.monomial is not None:
        return monomial_presentation(args.monomial)
    if args.kty:
        return kty_presentation()
    return load_presentation(args.file)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masseyfp",
        description="Cup products, triple Massey products and resonance over F_p "
        "for finitely presented groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("present", help="print a presentation")
    _add_source(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("magnus", help="Magnus coefficient of a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--index", required=True, type=_csv_ints)
    sp.add_argument("--mod", type=int, default=0)
    sp.add_argument("--generators", type=int)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("cup", help="cup product of two degree-one classes")
    _add_source(sp)
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--alpha", type=_csv_ints, required=True)
    sp.add_argument("--beta", type=_csv_ints, required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("massey", help="triple Massey product modulo indeterminacy")
    _add_source(sp)
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--alpha", type=_csv_ints, required=True)
    sp.add_argument("--beta", type=_csv_ints, required=True)
    sp.add_argument("--gamma", type=_csv_ints, required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("resonance", help="the component C_Pi or a membership test")
    sp.add_argument("--monomial", type=int, required=True, metavar="R")
    sp.add_argument("--mod", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--cpi", action="store_true", help="equations and basis of C_Pi (default)")
    g.add_argument("--test", type=_csv_ints, metavar="CSV", help="is this class resonant?")
    sp.add_argument("--block-sums", action="store_true", help="add the three block-sum equations")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("verify", help="reproduce a non-vanishing result end to end")
    sp.add_argument("--theorem", choices=["main", "kty"], required=True)
    sp.add_argument("--prime", type=int, default=3)
    sp.add_argument("--json", action="store_true")
    return parser


def _emit(args, payload, text):
    print(json.dumps(payload) if args.json else text)


def _cmd_present(args):
    pres = _source(args)
    if args.json:
        print(presentation_to_json(pres))
    else:
        sys.stdout.write(dumps_presentation(pres))
    return 0


def _cmd_magnus(args):
    idx = args.index
    if not idx or min(idx) < 1:
        raise UsageError("--index needs positive generator indices")
    n = args.generators
    if n is None:
        found = [int(m) for m in re.findall(r"x(\d+)", args.word)]
        n = max(found + idx)
    word = parse_word(args.word, n)
    if max(idx) > n:
        raise UsageError(f"index out of range 1..{n}")
    val = eps(tuple(idx), word, args.mod)
    _emit(args, {"index": idx, "mod": args.mod, "value": val}, str(val))
    return 0


def _cmd_cup(args):
    pres = _source(args)
    v = cup(pres, args.alpha, args.beta, args.mod)
    payload = {"relator_names": pres.relator_names, "cup": [int(x) for x in v]}
    text = "\n".join(f"{name}\t{int(x)}" for name, x in zip(pres.relator_names, v) if x)
    _emit(args, payload, text or "0")
    return 0


def _cmd_massey(args):
    pres = _source(args)
    out = massey_mod_indeterminacy(pres, args.alpha, args.beta, args.gamma, args.mod)
    lines = [f"{name}\t{int(x)}" for name, x in zip(pres.relator_names, out.representative) if x]
    lines.append(f"indeterminacy rank: {out.indeterminacy_rank}")
    lines.append("vanishes" if out.vanishes else "does not vanish")
    _emit(args, out.as_dict(), "\n".join(lines))
    return 0


def _cmd_resonance(args):
    if args.test is not None:
        pres = monomial_presentation(args.monomial)
        ok, mu = in_resonance(pres, args.test, args.mod)
        payload = {"resonant": ok, "witness": None if mu is None else [int(x) for x in mu]}
        text = f"resonant, witness {payload['witness']}" if ok else "not resonant"
        _emit(args, payload, text)
        return 0
    comp = cpi_component(args.monomial, args.mod, block_sums=args.block_sums)
    payload = {
        "r": comp.r,
        "p": comp.p,
        "dim": comp.dim,
        "equations": comp.equations.tolist(),
        "basis": [b.tolist() for b in comp.basis],
    }
    text = f"dim C_Pi = {comp.dim}\n" + "\n".join(
        ",".join(str(int(x)) for x in b) for b in comp.basis
    )
    _emit(args, payload, text)
    return 0


def _cmd_verify(args):
    rep = verify_main(args.prime) if args.theorem == "main" else verify_kty()
    if args.json:
        print(rep.to_json())
    else:
        print("\n".join(rep.lines()))
    return 0 if rep.passed else 3


_COMMANDS = {
    "present": _cmd_present,
    "magnus": _cmd_magnus,
    "cup": _cmd_cup,
    "massey": _cmd_massey,
    "resonance": _cmd_resonance,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, WordSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UndefinedProductError, PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
