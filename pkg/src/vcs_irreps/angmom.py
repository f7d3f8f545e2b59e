"""Exact SU(2) coupling coefficients: Clebsch-Gordan and unitary Racah U.

All coefficients are evaluated from the closed-form alternating sums over
arbitrary-precision integers and returned as :class:`~vcs_irreps.radical.Radical`
values (the alternating sum is rational and the prefactor is the square root
of a rational, so the result is always exactly representable).

Phase convention is Condon-Shortley throughout.  ``racah_u`` is the unitary
recoupling coefficient normalised so that ``sum_f U(abcd;ef) U(abcd;e'f) =
delta(e,e')``, i.e. ``U = sqrt((2e+1)(2f+1)) W(abcd;ef)``.

Angular momenta may be passed as ints, ``Fraction``, :class:`Spin`, or floats
that are exact multiples of 1/2; they are converted to twice-integer form
internally.  Everything here is a pure function of its arguments; the memo
caches are ``functools.lru_cache`` instances, safe for concurrent callers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from .radical import Radical

SpinLike = Union[int, float, Fraction, "Spin"]


class SpinError(ValueError):
    """Malformed spin or projection input (range or parity violation)."""


class Spin:
    """An angular momentum stored as its doubled (integer) value."""

    __slots__ = ("twice",)

    def __init__(self, value: SpinLike):
        if isinstance(value, Spin):
            twice = value.twice
        else:
            twice = _twice(value)
        if twice < 0:
            raise SpinError(f"spin must be non-negative, got {Fraction(twice, 2)}")
        object.__setattr__(self, "twice", twice)

    def __setattr__(self, name, value):
        raise AttributeError("Spin is immutable")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def projections(self) -> list[Fraction]:
        """All m with |m| <= j and j - m integer, ascending."""
        return [Fraction(tm, 2) for tm in range(-self.twice, self.twice + 1, 2)]

    def __eq__(self, other):
        if isinstance(other, Spin):
            return self.twice == other.twice
        try:
            return self.twice == _twice(other)
        except (TypeError, SpinError):
            return NotImplemented

    def __hash__(self):
        return hash(("Spin", self.twice))

    def __repr__(self):
        return f"Spin({self.value})"


def _twice(value: SpinLike) -> int:
    """Twice the value of a spin-like number, validating half-integerness."""
    if isinstance(value, Spin):
        return value.twice
    if isinstance(value, bool):
        raise SpinError("bool is not a spin")
    if isinstance(value, int):
        return 2 * value
    q = Fraction(value)
    t = q * 2
    if t.denominator != 1:
        raise SpinError(f"{value} is not an integer or half-odd-integer")
    return int(t)


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of negative integer")
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def _tfact(twice: int) -> int:
    """Factorial of ``twice/2``, which must be a non-negative even twice-integer."""
    if twice % 2:
        raise ValueError("factorial argument is not an integer")
    return _fact(twice // 2)


def _triangle_ok(ta: int, tb: int, tc: int) -> bool:
    return (
        abs(ta - tb) <= tc <= ta + tb
        and (ta + tb + tc) % 2 == 0
        and ta >= 0
        and tb >= 0
        and tc >= 0
    )


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    """Squared triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!."""
    return Fraction(
        _tfact(ta + tb - tc) * _tfact(ta - tb + tc) * _tfact(-ta + tb + tc),
        _tfact(ta + tb + tc + 2),
    )


def _validate_pair(tj: int, tm: int, what: str):
    """Parity mismatches are errors; out-of-range projections just give zero."""
    if (tj + tm) % 2:
        raise SpinError(f"{what} projection has wrong parity for its spin")


@lru_cache(maxsize=None)
def _cg_twice(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> Radical:
    if tM != tm1 + tm2 or not _triangle_ok(tj1, tj2, tJ):
        return Radical.zero()
    # Racah's single-sum form of the Condon-Shortley coefficient.
    kmin = max(0, -(tJ - tj2 + tm1) // 2, -(tJ - tj1 - tm2) // 2)
    kmax = min((tj1 + tj2 - tJ) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    if kmin > kmax:
        return Radical.zero()
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            _fact(k)
            * _tfact(tj1 + tj2 - tJ - 2 * k)
            * _tfact(tj1 - tm1 - 2 * k)
            * _tfact(tj2 + tm2 - 2 * k)
            * _tfact(tJ - tj2 + tm1 + 2 * k)
            * _tfact(tJ - tj1 - tm2 + 2 * k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return Radical.zero()
    prefactor = (
        Fraction(tJ + 1)
        * _delta_sq(tj1, tj2, tJ)
        * _tfact(tJ + tM)
        * _tfact(tJ - tM)
        * _tfact(tj1 + tm1)
        * _tfact(tj1 - tm1)
        * _tfact(tj2 + tm2)
        * _tfact(tj2 - tm2)
    )
    return Radical(1 if total > 0 else -1, prefactor * total * total)


def clebsch_gordan(
    j1: SpinLike, m1: SpinLike, j2: SpinLike, m2: SpinLike, J: SpinLike, M: SpinLike
) -> Radical:
    """Condon-Shortley coefficient ``(j1 m1, j2 m2 | J M)``, exact.

    Returns zero when ``M != m1 + m2`` or the triangle condition fails; raises
    :class:`SpinError` for malformed spin/projection pairings.
    """
    tj1, tm1 = Spin(j1).twice, _twice(m1)
    tj2, tm2 = Spin(j2).twice, _twice(m2)
    tJ, tM = Spin(J).twice, _twice(M)
    _validate_pair(tj1, tm1, "j1")
    _validate_pair(tj2, tm2, "j2")
    _validate_pair(tJ, tM, "J")
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return Radical.zero()
    return _cg_twice(tj1, tm1, tj2, tm2, tJ, tM)


def _sixj_canonical_key(ta, tb, tc, td, te, tf):
    """Canonical form of a 6j symbol under column permutations and row flips."""
    cols = [(ta, td), (tb, te), (tc, tf)]
    best = None
    for p in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        perm = [cols[i] for i in p]
        for flips in range(4):
            cand = list(perm)
            if flips & 1:
                cand[0] = cand[0][::-1]
                cand[1] = cand[1][::-1]
            if flips & 2:
                cand[1] = cand[1][::-1]
                cand[2] = cand[2][::-1]
            key = (cand[0][0], cand[1][0], cand[2][0], cand[0][1], cand[1][1], cand[2][1])
            if best is None or key < best:
                best = key
    return best


@lru_cache(maxsize=None)
def _sixj_twice(ta: int, tb: int, tc: int, td: int, te: int, tf: int) -> Radical:
    for tri in ((ta, tb, tc), (ta, te, tf), (td, tb, tf), (td, te, tc)):
        if not _triangle_ok(*tri):
            return Radical.zero()
    key = (ta, tb, tc, td, te, tf)
    canon = _sixj_canonical_key(*key)
    if canon != key:
        return _sixj_twice(*canon)
    t1 = ta + tb + tc
    t2 = ta + te + tf
    t3 = td + tb + tf
    t4 = td + te + tc
    t5 = ta + tb + td + te
    t6 = tb + tc + te + tf
    t7 = ta + tc + td + tf
    zmin = max(t1, t2, t3, t4)
    zmax = min(t5, t6, t7)
    total = Fraction(0)
    for tz in range(zmin, zmax + 1, 2):
        den = (
            _tfact(tz - t1)
            * _tfact(tz - t2)
            * _tfact(tz - t3)
            * _tfact(tz - t4)
            * _tfact(t5 - tz)
            * _tfact(t6 - tz)
            * _tfact(t7 - tz)
        )
        num = _tfact(tz + 2)
        term = Fraction(num, den)
        total += -term if (tz // 2) % 2 else term
    if total == 0:
        return Radical.zero()
    pref = _delta_sq(ta, tb, tc) * _delta_sq(ta, te, tf) * _delta_sq(td, tb, tf) * _delta_sq(td, te, tc)
    return Radical(1 if total > 0 else -1, pref * total * total)


def wigner_6j(
    a: SpinLike, b: SpinLike, c: SpinLike, d: SpinLike, e: SpinLike, f: SpinLike
) -> Radical:
    """The 6j symbol ``{a b c; d e f}``, exact."""
    return _sixj_twice(*(Spin(x).twice for x in (a, b, c, d, e, f)))


def racah_u(
    a: SpinLike, b: SpinLike, c: SpinLike, d: SpinLike, e: SpinLike, f: SpinLike
) -> Radical:
    """Unitary recoupling coefficient ``U(a b c d; e f)``.

    Relates ``|(ab)e, d; c>`` to ``|a, (bd)f; c>``:
    ``U(abcd;ef) = sqrt((2e+1)(2f+1)) * (-1)**(a+b+c+d) * {a b e; d c f}``.
    Returns zero when any of the four triangle conditions fails.
    """
    ta, tb, tc, td, te, tf = (Spin(x).twice for x in (a, b, c, d, e, f))
    if not (
        _triangle_ok(ta, tb, te)
        and _triangle_ok(te, td, tc)
        and _triangle_ok(tb, td, tf)
        and _triangle_ok(ta, tf, tc)
    ):
        return Radical.zero()
    six = _sixj_twice(ta, tb, te, td, tc, tf)
    if six.is_zero():
        return Radical.zero()
    norm = Radical.sqrt_of(Fraction((te + 1) * (tf + 1)))
    tsum = ta + tb + tc + td
    if tsum % 2:
        raise SpinError("a+b+c+d is not an integer despite valid triangles")
    phase = -1 if (tsum // 2) % 2 else 1
    return norm * six * phase
