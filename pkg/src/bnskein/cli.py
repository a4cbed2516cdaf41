"""Command-line entry point: ``bnskein <command> key=value ...``."""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from typing import Callable

from bnskein import acceptance
from bnskein.core import ParseError, SkeinError, format_state, parse_state_file
from bnskein.evaluators import Canonical, S1xS2State, T3State, basis_name, eval_s3, normalize_s1xs2, normalize_t3
from bnskein.mbn import (
    MbnComponent,
    NormalizationConstants,
    check_normalization,
    enumerate_normalization_families,
    format_bits,
    mbn_evaluate,
    parse_bits,
)
from bnskein.ring import RingError, format_coeff, format_exponent, parse_coeff
from bnskein.sbn import ClassificationError, Region, Stack, SurfaceSpec, dotted_normalize, graded_dimension, parse_class
from bnskein.seifert import HorizontalClass, HorizontalState, SeifertData, bn_decompose, normalize_horizontal

PAIR_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


class UsageError(ValueError):
    pass


# --- argument parsing helpers ----------------------------------------------------


def key_values(tokens: list[str], allowed: dict[str, bool]) -> dict[str, str]:
    """``key=value`` tokens; ``allowed`` maps each key to whether it is required."""
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {tok!r}")
        if key not in allowed:
            raise UsageError(f"unknown parameter {key!r}; expected one of {', '.join(sorted(allowed))}")
        if key in out:
            raise UsageError(f"parameter {key!r} given twice")
        out[key] = value
    missing = [k for k, req in allowed.items() if req and k not in out]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(missing)}")
    return out


def parse_int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {text!r}") from None


def parse_int_list(text: str, name: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_int(x, name) for x in text.split(","))


def parse_pairs(text: str) -> list[tuple[int, int]]:
    """``(a,b)`` groups separated by spaces or semicolons."""
    pairs = [(int(a), int(b)) for a, b in PAIR_RE.findall(text)]
    rest = PAIR_RE.sub("", text)
    if rest.strip(" ;") or (text.strip() and not pairs):
        raise UsageError(f"cannot read pairs from {text!r}; use '(g,d);(g,d)'")
    return pairs


def parse_stacks(text: str) -> list[Stack]:
    """``class:weight[:p.p...]`` separated by ``/``; ``p`` are dotted positions."""
    stacks = []
    for item in filter(None, (x.strip() for x in text.split("/"))):
        parts = item.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"stack {item!r} is not class:weight[:dots]")
        dots = tuple(parse_int(p, "dot position") for p in parts[2].split(".") if p) if len(parts) == 3 else ()
        try:
            cls = parse_class(parts[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        stacks.append(Stack(cls, parse_int(parts[1], "weight"), dots))
    return stacks


def parse_regions(text: str) -> list[Region]:
    """``s,s,...[@genus[@singular]]`` separated by ``;``."""
    regions = []
    for item in filter(None, (x.strip() for x in text.split(";"))):
        parts = item.split("@")
        if len(parts) > 3:
            raise UsageError(f"region {item!r} is not ends[@genus[@singular]]")
        ends = parse_int_list(parts[0], "stack index")
        genus = parse_int(parts[1], "region genus") if len(parts) > 1 else 0
        sing = parse_int(parts[2], "singular count") if len(parts) > 2 else 0
        regions.append(Region(ends, genus, sing))
    return regions


# --- output ---------------------------------------------------------------------


def render_canonical(c: Canonical, machine: bool) -> str:
    if c.is_zero():
        return "0"
    if machine:
        return f"{format_coeff(c.coefficient)}\t{basis_name(c.basis)}"
    return str(c)


# --- commands -------------------------------------------------------------------


def cmd_eval_s3(args) -> str:
    pairs = parse_pairs(" ".join(args.components))
    if not pairs:
        raise UsageError("give at least one component as (genus,dots)")
    value = eval_s3(pairs)
    return render_canonical(Canonical(value, ("empty",)) if value else Canonical.zero(), args.machine)


def cmd_normalize_s1s2(args) -> str:
    kv = key_values(args.params, {"k": True, "dots": False, "extras": False})
    s = S1xS2State(parse_int(kv["k"], "k"), parse_int_list(kv.get("dots", ""), "dots"), parse_pairs(kv.get("extras", "")))
    return render_canonical(normalize_s1xs2(s), args.machine)


def cmd_normalize_t3(args) -> str:
    kv = key_values(args.params, {"dir": True, "k": True, "dots": False, "extras": False})
    direction = parse_int_list(kv["dir"], "dir")
    s = T3State(direction, parse_int(kv["k"], "k"), parse_int_list(kv.get("dots", ""), "dots"), parse_pairs(kv.get("extras", "")))
    return render_canonical(normalize_t3(s), args.machine)


def cmd_mbn_solve(args) -> str:
    kv = key_values(args.params, {"x": False, "y": False, "z": False})
    families = enumerate_normalization_families()
    if not kv:
        return "\n".join(f"{f.name}: {f.description}" for f in families)
    if set(kv) != {"x", "y", "z"}:
        raise UsageError("give all of x, y, z or none")
    c = NormalizationConstants(*(parse_coeff(kv[k]) for k in "xyz"))
    hits = [f.name for f in families if f.contains(c)]
    if not check_normalization(c):
        return "not a solution"
    return f"solution in family {hits[0]}" if hits else "solution outside the listed families"


def cmd_mbn_eval(args) -> str:
    kv = key_values(args.params, {"b": True, "surfaces": True})
    b = parse_int(kv["b"], "b")
    comps = []
    for item in filter(None, (x.strip() for x in kv["surfaces"].split(";"))):
        parts = item.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("o", "n")):
            raise UsageError(f"surface {item!r} is not euler:dots:bits[:o|n]")
        try:
            cls = parse_bits(parts[2])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        orientable = len(parts) == 3 or parts[3] == "o"
        comps.append(MbnComponent(parse_int(parts[0], "euler"), parse_int(parts[1], "dots"), cls, orientable))
    elem = mbn_evaluate(comps, b, allow_half=args.allow_half)
    if not args.machine:
        return str(elem)
    lines = []
    for h in sorted(elem.terms):
        p = elem.terms[h]
        for e in sorted(p.terms, reverse=True):
            lines.append(f"{format_coeff(p.terms[e])}\t{format_exponent(e)}\t{format_bits(h, b)}")
    return "\n".join(lines) or "0"


def cmd_sbn_normalize(args) -> str:
    kv = key_values(args.params, {"g": True, "l": False, "stacks": True, "regions": True})
    spec = SurfaceSpec(parse_int(kv["g"], "g"), parse_int(kv.get("l", "0"), "l"))
    res = dotted_normalize(spec, parse_stacks(kv["stacks"]), parse_regions(kv["regions"]))
    if args.machine:
        return "0" if res.signed_coefficient == 0 else f"{format_coeff(res.signed_coefficient)}\t{str(res.canonical)[1:]}"
    return str(res)


def cmd_sbn_dim(args) -> str:
    kv = key_values(args.params, {"g": True, "n": True, "l": False})
    spec = SurfaceSpec(parse_int(kv["g"], "g"), parse_int(kv.get("l", "0"), "l"))
    return str(graded_dimension(spec, parse_int(kv["n"], "n"), exclude_zero_class=args.exclude_zero_class))


def parse_horizontal(text: str) -> list[HorizontalClass]:
    out = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        parts = item.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"horizontal class {item!r} is not name:degree[:genus]")
        genus = parse_int(parts[2], "genus") if len(parts) == 3 else 0
        out.append(HorizontalClass(parts[0], parse_int(parts[1], "degree"), genus))
    return out


def cmd_seifert_report(args) -> str:
    kv = key_values(args.params, {"g": True, "fibers": False, "horiz": False})
    data = SeifertData(parse_int(kv["g"], "g"), tuple(parse_pairs(kv.get("fibers", ""))))
    return str(bn_decompose(data, parse_horizontal(kv.get("horiz", ""))))


def cmd_horiz_normalize(args) -> str:
    kv = key_values(args.params, {"f": True, "k": True, "dots": False, "genus": False, "degree": False})
    cls = HorizontalClass(kv["f"], parse_int(kv.get("degree", "1"), "degree"), parse_int(kv.get("genus", "0"), "genus"))
    s = HorizontalState(cls, parse_int(kv["k"], "k"), parse_int_list(kv.get("dots", ""), "dots"))
    return render_canonical(normalize_horizontal(s), args.machine)


def cmd_print_state(args) -> str:
    s = parse_state_file(args.path)
    if args.machine and not s.is_zero():
        return "\n".join(line.replace(" * ", "\t", 1) for line in format_state(s).splitlines())
    return format_state(s)


def cmd_selftest(args) -> tuple[str, int]:
    numbers = sorted(acceptance.CRITERIA) if not args.only else list(parse_int_list(args.only, "only"))
    for k in numbers:
        if k not in acceptance.CRITERIA:
            raise UsageError(f"no acceptance criterion {k}")
    results = acceptance.run(numbers)
    lines = [r.line() for r in results]
    failed = [r.number for r in results if not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} criteria pass" + (f"; failing: {failed}" if failed else ""))
    return "\n".join(lines), 1 if failed else 0


COMMANDS: dict[str, tuple[Callable, str]] = {
    "eval-s3": (cmd_eval_s3, "evaluate closed surfaces in S^3, given as (genus,dots)"),
    "normalize-s1s2": (cmd_normalize_s1s2, "normal form of k parallel essential spheres: k=K dots=i,j extras='(g,d)'"),
    "normalize-t3": (cmd_normalize_t3, "normal form of k parallel tori in T^3: dir=p,q,r k=K dots=i,j"),
    "mbn-solve": (cmd_mbn_solve, "list normalization families, or test x=.. y=.. z=.."),
    "mbn-eval": (cmd_mbn_eval, "evaluate in MBN: b=B surfaces='euler:dots:bits[:o|n];...'"),
    "sbn-normalize": (cmd_sbn_normalize, "canonical form of a dotted curve state: g=G stacks='cls:w:dots/...' regions='0,1@genus;...'"),
    "sbn-dim": (cmd_sbn_dim, "rank of the graded piece G_n: g=G n=N"),
    "seifert-report": (cmd_seifert_report, "vertical/horizontal decomposition: g=G fibers='(p,q);...' horiz='f:degree:genus,...'"),
    "horiz-normalize": (cmd_horiz_normalize, "normal form of parallel horizontal surfaces: f=NAME k=K dots=i,j genus=G"),
    "print-state": (cmd_print_state, "parse a state file and print it canonically"),
    "selftest": (cmd_selftest, "run every acceptance property"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bnskein", description="Bar-Natan skein module calculator.")
    parser.add_argument("--format", choices=("text", "machine"), default="text", help="machine: one term per line, tab separated")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name == "eval-s3":
            p.add_argument("components", nargs="+", help="components such as '(1,0)'")
        elif name == "print-state":
            p.add_argument("path", help="file with one 'COEFF * [label:genus:dots, ...]' line per term")
        elif name == "selftest":
            p.add_argument("--only", default="", help="comma separated criterion numbers")
        else:
            p.add_argument("params", nargs="*", help="key=value parameters")
        if name == "sbn-dim":
            p.add_argument("--exclude-zero-class", action="store_true", help="count with |H_1| - 1 classes")
        if name == "mbn-eval":
            p.add_argument("--allow-half", action="store_true", help="permit half-integer powers of x")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.machine = args.format == "machine"
    handler = COMMANDS[args.command][0]
    try:
        out = handler(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ParseError as exc:
        print(f"bnskein: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"bnskein: {exc}", file=sys.stderr)
        return 2
    except (SkeinError, RingError, ClassificationError) as exc:
        print(f"bnskein: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bnskein: parse error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
