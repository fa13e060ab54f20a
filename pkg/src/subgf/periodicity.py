"""Detection of eventual periodicity in finite sequences of exact values."""
from __future__ import annotations

from array import array
from dataclasses import dataclass

from .errors import InsufficientDataError


@dataclass(frozen=True)
class PeriodWitness:
    """c[n + period] == c[n] for every checked n >= preperiod."""

    preperiod: int
    period: int


def detect_period(coeffs, max_preperiod: int, max_period: int) -> PeriodWitness | None:
    """Smallest-period, then smallest-preperiod witness over the whole given
    sequence, or None if no witness fits the bounds.

    The sequence must be at least max_preperiod + 10 * max_period long so
    that any reported witness has been confirmed well past its preperiod.
    """
    if max_preperiod < 0 or max_period < 1:
        raise ValueError("bounds must satisfy max_preperiod >= 0, max_period >= 1")
    seq = list(coeffs)
    size = len(seq)
    if size < max_preperiod + 10 * max_period:
        raise InsufficientDataError(
            f"need at least {max_preperiod + 10 * max_period} values, got {size}"
        )
    ids: dict = {}
    enc = []
    for v in seq:
        i = ids.get(v)
        if i is None:
            i = len(ids)
            ids[v] = i
        enc.append(i)
    if len(ids) <= 256:
        buf = bytes(enc)
        width = 1
    else:
        buf = array("q", enc).tobytes()
        width = 8
    for d in range(1, max_period + 1):
        head = buf[: (size - d) * width]
        tail = buf[d * width :]
        if head == tail:
            return PeriodWitness(0, d)
        # position of the last mismatching element, via the top byte of a xor
        x = int.from_bytes(head, "little") ^ int.from_bytes(tail, "little")
        last_bad = (x.bit_length() - 1) // (8 * width)
        if last_bad + 1 <= max_preperiod:
            return PeriodWitness(last_bad + 1, d)
    return None


def verify_witness(coeffs, witness: PeriodWitness) -> bool:
    """Check c[n + d] == c[n] for all preperiod <= n <= len - d - 1."""
    seq = coeffs if isinstance(coeffs, (list, tuple)) else list(coeffs)
    d = witness.period
    return all(
        seq[n] == seq[n + d] for n in range(witness.preperiod, len(seq) - d)
    )
