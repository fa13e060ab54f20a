"""Canonical JSON and CSV serialization.

All numeric payloads are exact rational strings (or plain JSON integers);
floats never appear.  Dict key order is fixed by construction so that
parse -> dump round-trips are byte-identical.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .genfun import RationalForm, Rational, TranscendentalByAperiodicity
from .periodicity import PeriodWitness
from .polynomials import ExactPolynomial
from .quadratic import QuadraticReal
from .realroots import ExclusionCertificate
from .substitutions import (
    AperiodicByIrrationalPF,
    EventuallyPeriodic,
    InconclusiveUpTo,
)


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def frac_decimal(x: Fraction, digits: int = 50) -> str:
    """Fixed-point decimal, truncated toward zero."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x.numerator * 10**digits) // x.denominator
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else sign + str(scaled)


def value_str(x) -> str:
    """Exact human-readable form of a rational or quadratic value."""
    if isinstance(x, QuadraticReal):
        if x.is_rational:
            return str(x.a)
        b = f"{x.b}*sqrt({x.d})"
        if x.a == 0:
            return b if x.b > 0 else f"-{abs(x.b)}*sqrt({x.d})"
        op = "+" if x.b > 0 else "-"
        return f"{x.a} {op} {abs(x.b)}*sqrt({x.d})"
    return frac_str(x)


def value_decimal(x, digits: int = 50) -> str:
    if isinstance(x, QuadraticReal):
        return x.decimal(digits)
    return frac_decimal(Fraction(x), digits)


def quadratic_json(x) -> dict:
    if isinstance(x, QuadraticReal):
        return {
            "a": frac_str(x.a),
            "b": frac_str(x.b),
            "D": x.d if not x.is_rational else None,
        }
    return {"a": frac_str(x), "b": "0", "D": None}


def poly_json(p: ExactPolynomial) -> list[str]:
    return [frac_str(c) for c in p.coefficients]


def poly_from_json(coeffs) -> ExactPolynomial:
    return ExactPolynomial([Fraction(c) for c in coeffs])


def series_json(order: int, coefficients) -> dict:
    return {"order": order, "coefficients": [frac_str(c) for c in coefficients]}


def rational_form_json(form: RationalForm) -> dict:
    out = {"numerator": poly_json(form.numerator), "period_d": form.period}
    if form.summatory_power:
        out["summatory_power"] = form.summatory_power
    return out


def witness_json(w: PeriodWitness) -> dict:
    return {"preperiod": w.preperiod, "period": w.period}


def aperiodicity_json(verdict) -> dict:
    if isinstance(verdict, AperiodicByIrrationalPF):
        return {"verdict": "aperiodic-by-irrational-pf"}
    if isinstance(verdict, EventuallyPeriodic):
        return {
            "verdict": "eventually-periodic",
            "preperiod": verdict.preperiod,
            "period": verdict.period,
        }
    if isinstance(verdict, InconclusiveUpTo):
        return {
            "verdict": "inconclusive",
            "max_preperiod": verdict.preperiod_bound,
            "max_period": verdict.period_bound,
        }
    raise TypeError(f"not an aperiodicity verdict: {verdict!r}")


def series_verdict_json(verdict) -> dict:
    if isinstance(verdict, Rational):
        return {
            "kind": "rational",
            "form": rational_form_json(verdict.form),
            "witness": witness_json(verdict.witness),
        }
    if isinstance(verdict, TranscendentalByAperiodicity):
        return {"kind": "transcendental-by-aperiodicity", "reason": verdict.reason}
    if isinstance(verdict, InconclusiveUpTo):
        return {
            "kind": "inconclusive",
            "max_preperiod": verdict.preperiod_bound,
            "max_period": verdict.period_bound,
        }
    raise TypeError(f"not a series verdict: {verdict!r}")


def certificate_json(cert: ExclusionCertificate) -> dict:
    return {
        "degree": cert.poly_degree,
        "sha256": cert.poly_sha256,
        "interval": [frac_str(cert.lower), frac_str(cert.upper)],
        "root_count_in_interval": cert.root_count_in_interval,
        "sample_point": frac_str(cert.sample_point),
        "sign_at_sample": cert.sample_sign,
    }


def canonical_dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
