"""Command line front end.

Exit codes: 0 success, 1 parse error (rule text or command line), 2
precondition violation, 3 inconclusive verdict under --strict.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import fibonacci as fib
from . import geometric
from .errors import RuleSyntaxError, SubgfError
from .genfun import (
    CHARACTERISTIC,
    POSITION,
    char_series,
    position_series,
    rational_form_from_witness,
    series_verdict,
)
from .periodicity import detect_period
from .serialize import (
    aperiodicity_json,
    canonical_dumps,
    certificate_json,
    frac_str,
    quadratic_json,
    rational_form_json,
    series_json,
    series_verdict_json,
    value_decimal,
    value_str,
    witness_json,
)
from .substitutions import (
    InconclusiveUpTo,
    aperiodicity_verdict,
    fixed_point_seed,
    fixed_word_prefix,
    is_primitive,
    parse_substitution,
    pf_data,
    substitution_matrix,
)

DEFAULT_ORDER = 2048
DEFAULT_MAX_PREPERIOD = 1000
DEFAULT_MAX_PERIOD = 200

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_INCONCLUSIVE = 3


def _load(path: str):
    with open(path, encoding="utf-8") as handle:
        return parse_substitution(handle.read())


def _analyze(args) -> int:
    s = _load(args.file)
    bounds = (args.max_preperiod, args.max_period)
    matrix = substitution_matrix(s)
    witness = is_primitive(matrix)
    report = {
        "defaults": {
            "order": args.order,
            "max_preperiod": args.max_preperiod,
            "max_period": args.max_period,
        },
        "substitution": {
            "alphabet": list(s.alphabet.letters),
            "rules": dict(s.rules),
        },
        "matrix": [list(row) for row in matrix.rows],
        "primitivity_witness": witness,
    }
    inconclusive = False
    if witness is None:
        report["pf"] = None
        report["aperiodicity"] = None
        report["series"] = None
        report["geometric"] = None
        inconclusive = True
    else:
        data = pf_data(matrix)
        report["pf"] = {
            "char_poly": [frac_str(c) for c in data.char_poly.coefficients],
            "min_poly": [frac_str(c) for c in data.min_poly_of_pf.coefficients],
            "is_rational": data.is_rational,
            "enclosure": {
                "lower": frac_str(data.pf_lower),
                "upper": frac_str(data.pf_upper),
            },
        }
        verdict = aperiodicity_verdict(s, *bounds)
        report["aperiodicity"] = aperiodicity_json(verdict)
        inconclusive |= isinstance(verdict, InconclusiveUpTo)
        seed = fixed_point_seed(s)
        series = {}
        for letter in s.alphabet:
            char_v = series_verdict(s, seed, letter, CHARACTERISTIC, bounds)
            pos_v = series_verdict(s, seed, letter, POSITION, bounds)
            inconclusive |= isinstance(char_v, InconclusiveUpTo)
            inconclusive |= isinstance(pos_v, InconclusiveUpTo)
            series[letter] = {
                "characteristic": series_verdict_json(char_v),
                "position": series_verdict_json(pos_v),
            }
        report["series"] = series
        report["geometric"] = None
        if len(s.alphabet) == 2:
            lengths = geometric.natural_lengths(s)
            cls = geometric.classify_two_letter(s, seed, lengths, bounds)
            inconclusive |= cls.case == "inconclusive"
            report["geometric"] = {
                "lengths": {
                    a: quadratic_json(v) for a, v in lengths.by_letter.items()
                },
                "exact": lengths.exact,
                "radicand": lengths.radicand,
                "classification": _classification_json(cls),
            }
    print(canonical_dumps(report))
    if args.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _classification_json(cls) -> dict:
    out = {"case": cls.case, "verified": cls.verified}
    if cls.case == "equal-lengths":
        out["length"] = value_str(cls.shared_length)
    elif cls.case == "periodic-rational":
        out["numerator"] = [frac_str(c) for c in cls.numerator.coefficients]
        out["period_d"] = cls.period
        out["difference"] = value_str(cls.difference)
        out["second_weight"] = value_str(cls.second_weight)
    elif cls.case == "transcendental":
        out["reason"] = cls.reason
    return out


def _expand(args) -> int:
    s = _load(args.file)
    seed = fixed_point_seed(s)
    print(fixed_word_prefix(s, seed, args.n))
    return EXIT_OK


def _series(args) -> int:
    s = _load(args.file)
    seed = fixed_point_seed(s)
    if args.kind == "char":
        ts = char_series(s, seed, args.letter, args.order)
    else:
        ts = position_series(s, seed, args.letter, args.order)
    if args.format == "json":
        payload = {
            "letter": args.letter,
            "kind": CHARACTERISTIC if args.kind == "char" else POSITION,
            **series_json(ts.order, ts.coefficients),
        }
        print(canonical_dumps(payload))
    else:
        print("index,value")
        for i, c in enumerate(ts.coefficients):
            print(f"{i},{frac_str(c)}")
    return EXIT_OK


def _period(args) -> int:
    s = _load(args.file)
    if args.letter not in s.alphabet:
        raise SubgfError(f"letter {args.letter!r} not in alphabet")
    seed = fixed_point_seed(s)
    need = args.max_preperiod + 10 * args.max_period
    prefix = fixed_word_prefix(s, seed, need)
    indicator = [int(ch == args.letter) for ch in prefix]
    witness = detect_period(indicator, args.max_preperiod, args.max_period)
    payload = {
        "letter": args.letter,
        "bounds": {
            "max_preperiod": args.max_preperiod,
            "max_period": args.max_period,
        },
        "witness": witness_json(witness) if witness else None,
        "rational_form": (
            rational_form_json(rational_form_from_witness(indicator, witness))
            if witness
            else None
        ),
    }
    print(canonical_dumps(payload))
    if args.strict and witness is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _roots(args) -> int:
    tolerance = Fraction(args.tol)
    bound = fib.positivity_bound(args.level, tolerance)
    payload = {
        "level": bound.level,
        "tolerance": frac_str(tolerance),
        "alpha_hat": frac_str(bound.alpha_hat),
        "alpha_hat_decimal": value_decimal(bound.alpha_hat, 12),
        "binding": bound.binding,
        "bracket": [frac_str(bound.bracket[0]), frac_str(bound.bracket[1])],
        "certs": [
            {"polynomial": label, **certificate_json(cert)}
            for label, cert in sorted(bound.certificates.items())
        ],
    }
    print(canonical_dumps(payload))
    return EXIT_OK


def _geom(args) -> int:
    s = _load(args.file)
    seed = fixed_point_seed(s)
    if args.lengths == "natural":
        lengths = geometric.natural_lengths(s)
        table = lengths.by_letter
        exact = lengths.exact
        radicand = lengths.radicand
    else:
        parts = args.lengths.split(",")
        if len(parts) != len(s.alphabet):
            raise SubgfError(
                f"need {len(s.alphabet)} lengths, got {len(parts)}"
            )
        table = {a: Fraction(p) for a, p in zip(s.alphabet, parts)}
        exact = True
        radicand = None
    points = geometric.endpoint_sequence(s, seed, table, args.order)
    if args.format == "csv":
        print("index,exact,decimal50")
        for i, t in enumerate(points):
            print(f"{i},{value_str(t).replace(' ', '')},{value_decimal(t, 50)}")
        return EXIT_OK
    identity_ok = geometric.geometric_identity_ok(s, seed, table, args.order)
    payload = {
        "lengths": {a: quadratic_json(v) for a, v in table.items()},
        "exact": exact,
        "radicand": radicand,
        "order": args.order,
        "identity_ok": identity_ok,
        "endpoints_preview": [value_str(t) for t in points[: min(8, len(points))]],
        "classification": None,
    }
    inconclusive = False
    if len(s.alphabet) == 2:
        cls = geometric.classify_two_letter(s, seed, table)
        payload["classification"] = _classification_json(cls)
        inconclusive = cls.case == "inconclusive"
    print(canonical_dumps(payload))
    if args.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subgf",
        description="Exact analysis of substitutions and their generating functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_strict=True):
        if with_strict:
            p.add_argument("--strict", action="store_true",
                           help="exit 3 when any verdict is inconclusive")

    p = sub.add_parser("analyze", help="full report for a rule file")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--max-preperiod", type=int, default=DEFAULT_MAX_PREPERIOD)
    p.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD)
    common(p)
    p.set_defaults(run=_analyze)

    p = sub.add_parser("expand", help="prefix of the fixed word")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=_expand)

    p = sub.add_parser("series", help="characteristic or position series")
    p.add_argument("file")
    p.add_argument("--letter", required=True)
    p.add_argument("--kind", choices=["char", "pos"], default="char")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(run=_series)

    p = sub.add_parser("period", help="periodicity certificate for a letter")
    p.add_argument("file")
    p.add_argument("--letter", required=True)
    p.add_argument("--max-preperiod", type=int, default=DEFAULT_MAX_PREPERIOD)
    p.add_argument("--max-period", type=int, default=DEFAULT_MAX_PERIOD)
    common(p)
    p.set_defaults(run=_period)

    p = sub.add_parser("roots", help="certified positivity bound at a pair level")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--tol", default="1e-8",
                   help="rational or scientific tolerance, e.g. 1e-8 or 1/100000000")
    p.set_defaults(run=_roots)

    p = sub.add_parser("geom", help="geometric realisation and classification")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--lengths", default="natural",
                   help="'natural' or comma-separated rationals per letter")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(run=_geom)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        return args.run(args)
    except RuleSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SubgfError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
