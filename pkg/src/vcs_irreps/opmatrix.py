"""Sparse generator matrices over a declared ordered basis.

Entries may be exact (``int``/``Fraction``/``Radical``/``RadicalSum``) or
floats.  Exact matrices support exact products, sums and adjoints, with sums
of mixed square classes accumulated in :class:`~vcs_irreps.radical.RadicalSum`;
this is what lets commutator identities be verified with zero residual.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .radical import Radical, RadicalSum, as_float

_EXACT_TYPES = (int, Fraction, Radical, RadicalSum)


class OperatorMatrix:
    """A named operator matrix stored sparsely over an ordered basis."""

    def __init__(self, name: str, basis, entries: dict | None = None):
        self.name = name
        self.basis = tuple(basis)
        self.entries: dict[tuple[int, int], object] = {}
        for (r, c), v in (entries or {}).items():
            self[r, c] = v

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_exact(self) -> bool:
        return all(isinstance(v, _EXACT_TYPES) for v in self.entries.values())

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __setitem__(self, key, value):
        r, c = key
        if not (0 <= r < self.dim and 0 <= c < self.dim):
            raise IndexError(f"entry {key} outside {self.dim}x{self.dim} matrix")
        if _value_is_zero(value):
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def items(self):
        return self.entries.items()

    def copy(self, name: str | None = None) -> "OperatorMatrix":
        return OperatorMatrix(name or self.name, self.basis, dict(self.entries))

    # -- linear algebra ------------------------------------------------------

    def dagger(self, name: str | None = None) -> "OperatorMatrix":
        """Adjoint; entries here are real, so this is the transpose."""
        out = OperatorMatrix(name or f"{self.name}+", self.basis)
        for (r, c), v in self.entries.items():
            out[c, r] = v
        return out

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (r, k), v in other.entries.items():
            by_row.setdefault(r, []).append((k, v))
        acc: dict[tuple[int, int], RadicalSum] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                term = RadicalSum.from_value(a) * RadicalSum.from_value(b)
                key = (r, c)
                acc[key] = acc[key] + term if key in acc else term
        out = OperatorMatrix(f"{self.name}*{other.name}", self.basis)
        for key, v in acc.items():
            out[key] = _simplify(v)
        return out

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, -1)

    def _combine(self, other: "OperatorMatrix", sgn: int) -> "OperatorMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = self.copy()
        for key, v in other.entries.items():
            cur = RadicalSum.from_value(out[key])
            add = RadicalSum.from_value(v)
            out[key] = _simplify(cur + add if sgn > 0 else cur - add)
        return out

    def scale(self, factor) -> "OperatorMatrix":
        out = OperatorMatrix(self.name, self.basis)
        if _value_is_zero(factor):
            return out
        for key, v in self.entries.items():
            out[key] = _simplify(RadicalSum.from_value(factor) * RadicalSum.from_value(v))
        return out

    # -- conversions and norms -------------------------------------------------

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        for (r, c), v in self.entries.items():
            m[r, c] = as_float(v)
        return m

    def is_zero(self) -> bool:
        """Exact zero test (entries are pruned on assignment)."""
        return not self.entries

    def frobenius(self) -> float:
        return float(np.sqrt(sum(as_float(v) ** 2 for v in self.entries.values())))

    def max_abs_diff(self, other: "OperatorMatrix") -> float:
        keys = set(self.entries) | set(other.entries)
        return max((abs(as_float(self[k]) - as_float(other[k])) for k in keys), default=0.0)

    def __repr__(self):
        return f"OperatorMatrix({self.name!r}, dim={self.dim}, nnz={len(self.entries)})"


def _value_is_zero(value) -> bool:
    if isinstance(value, Radical):
        return value.is_zero()
    if isinstance(value, RadicalSum):
        return value.is_zero()
    return value == 0


def _simplify(value):
    """Collapse RadicalSums that fit in a single square class back to Radical."""
    if isinstance(value, RadicalSum):
        if value.is_zero():
            return 0
        if len(value.terms) == 1:
            return value.to_radical()
    return value


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    out = (a @ b) - (b @ a)
    out.name = f"[{a.name},{b.name}]"
    return out


def identity_like(m: OperatorMatrix, value=1) -> OperatorMatrix:
    out = OperatorMatrix("I", m.basis)
    for i in range(m.dim):
        out[i, i] = value
    return out
