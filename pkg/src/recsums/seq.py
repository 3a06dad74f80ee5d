"""Direct evaluation of recurrence sequences: iterative, fast doubling, negative indices.

A ``SequenceHandle`` pairs a :class:`RecurrenceSpec` with a kind tag: ``U`` for
the general sequence with the spec's initial values, ``V`` for the companion
sequence (V_0 = 2, V_1 = a, same recurrence).  ``term`` walks the recurrence in
exact rational arithmetic and is the trusted oracle; ``term_fast`` is the
log-time doubling path and is validated against ``term``, never trusted alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qfield import RecurrenceSpec


@dataclass(frozen=True)
class SequenceHandle:
    spec: RecurrenceSpec
    kind: str = "U"

    def __post_init__(self):
        if self.kind not in ("U", "V"):
            raise ValueError(f"kind must be 'U' or 'V', got {self.kind!r}")


PRESETS = {
    "fibonacci": (1, 1, 0, 1),
    "lucas": (1, 1, 2, 1),
    "pell": (2, 1, 0, 1),
    "pell-q": (2, 1, 1, 1),
}


def preset(name: str) -> SequenceHandle:
    if name.startswith("gen-pell:"):
        p, q = name.split(":", 1)[1].split(",")
        return generalized_pell(Fraction(p), Fraction(q))
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}")
    a, b, u0, u1 = PRESETS[name]
    return SequenceHandle(RecurrenceSpec(a, b, u0, u1))


def fibonacci() -> SequenceHandle:
    return SequenceHandle(RecurrenceSpec(1, 1, 0, 1))


def lucas() -> SequenceHandle:
    return SequenceHandle(RecurrenceSpec(1, 1, 2, 1))


def pell() -> SequenceHandle:
    return SequenceHandle(RecurrenceSpec(2, 1, 0, 1))


def pell_q() -> SequenceHandle:
    # the half-companion sequence: same recurrence, first two terms 1, 3
    return generalized_pell(1, 3)


def generalized_pell(p, q) -> SequenceHandle:
    # P_1 = p, P_2 = q under P_{n+1} = 2 P_n + P_{n-1}, so P_0 = q - 2p
    p, q = Fraction(p), Fraction(q)
    return SequenceHandle(RecurrenceSpec(2, 1, q - 2 * p, p))


def companion(spec: RecurrenceSpec) -> SequenceHandle:
    return SequenceHandle(spec, "V")


def _initial(h: SequenceHandle) -> tuple[Fraction, Fraction]:
    if h.kind == "V":
        return Fraction(2), Fraction(h.spec.a)
    return h.spec.u0, h.spec.u1


def term(h: SequenceHandle, n: int) -> Fraction:
    """Exact n-th term by the recurrence; negative n by the backward recurrence
    U_{n-1} = (U_{n+1} - a U_n) / b, which stays in Q for any nonzero b."""
    a, b = h.spec.a, h.spec.b
    lo, hi = _initial(h)
    if n >= 0:
        for _ in range(n):
            lo, hi = hi, a * hi + b * lo
        return lo
    for _ in range(-n):
        lo, hi = (hi - a * lo) / b, lo
    return lo


def terms(h: SequenceHandle, count: int) -> list[Fraction]:
    """Terms at indices 0 .. count-1."""
    a, b = h.spec.a, h.spec.b
    lo, hi = _initial(h)
    out = []
    for _ in range(count):
        out.append(lo)
        lo, hi = hi, a * hi + b * lo
    return out


def _fundamental_pair(a: int, b: int, n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) for the fundamental solution F_0 = 0, F_1 = 1, by doubling:
    F_{2m} = F_m (2 F_{m+1} - a F_m), F_{2m+1} = F_{m+1}^2 + b F_m^2."""
    if n == 0:
        return 0, 1
    u, w = _fundamental_pair(a, b, n >> 1)
    even = u * (2 * w - a * u)
    odd = w * w + b * u * u
    if n & 1:
        return odd, a * odd + b * even
    return even, odd


def term_fast(h: SequenceHandle, n: int) -> Fraction:
    """Log-time evaluation for n >= 0; identical value to term(h, n).

    General initial values decompose over the fundamental pair:
    U_n = u1 * F_n + u0 * b * F_{n-1}, with b * F_{n-1} = F_{n+1} - a F_n.
    """
    if n < 0:
        raise ValueError("term_fast requires n >= 0")
    a, b = h.spec.a, h.spec.b
    fn, fnext = _fundamental_pair(a, b, n)
    if h.kind == "V":
        return Fraction(2 * fnext - a * fn)
    u0, u1 = h.spec.u0, h.spec.u1
    return u1 * fn + u0 * (fnext - a * fn)


def power_term(h: SequenceHandle, n: int, r: int) -> Fraction:
    """term(h, n) raised to the r-th power, r >= 1."""
    if r < 1:
        raise ValueError("exponent must be >= 1")
    return term(h, n) ** r
