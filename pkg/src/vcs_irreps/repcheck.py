"""Reusable verification suite for representation matrices.

An :class:`AlgebraSpec` is a structure-constant table ``[X, Y] = sum c Z``
over named generators, validated once (antisymmetry and the Jacobi identity,
exactly) at construction.  Residual functions measure how well a concrete set
of matrices realizes the table, how well declared Hermiticity pairs hold, and
whether a Casimir is a multiple of the identity (Schur test).  All residuals
are relative, so tolerances need no retuning with irrep size.

Shipped tables: su(1,1), u(3) (all 81 relations), and su(3) in its
SO(3)-tensor form (angular momentum plus the five quadrupole components).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .opmatrix import OperatorMatrix
from .radical import Radical, RadicalSum, as_float

Bracket = tuple[tuple[object, str], ...]


@dataclass(frozen=True)
class AlgebraSpec:
    """Named generators plus the full antisymmetric bracket table."""

    name: str
    generators: tuple[str, ...]
    brackets: dict[tuple[str, str], Bracket]
    hermiticity_pairs: tuple[tuple[str, str, int], ...]

    def __post_init__(self):
        self._validate_antisymmetry()
        self._validate_jacobi()

    def bracket(self, x: str, y: str) -> Bracket:
        if (x, y) in self.brackets:
            return self.brackets[(x, y)]
        if (y, x) in self.brackets:
            return tuple((_neg(c), z) for c, z in self.brackets[(y, x)])
        if x == y:
            return ()
        raise KeyError(f"no bracket for ({x}, {y})")

    def _validate_antisymmetry(self):
        for (x, y) in self.brackets:
            if x == y:
                if self.brackets[(x, y)]:
                    raise ValueError(f"[{x},{x}] must vanish")
            if (y, x) in self.brackets and (x, y) != (y, x):
                fwd = _coeff_map(self.brackets[(x, y)])
                bwd = _coeff_map(self.brackets[(y, x)])
                names = set(fwd) | set(bwd)
                for n in names:
                    if not (fwd.get(n, RadicalSum()) + bwd.get(n, RadicalSum())).is_zero():
                        raise ValueError(f"brackets for ({x},{y}) are not antisymmetric")

    def _validate_jacobi(self):
        gens = self.generators
        for i, x in enumerate(gens):
            for j in range(i + 1, len(gens)):
                for k in range(j + 1, len(gens)):
                    y, z = gens[j], gens[k]
                    total: dict[str, RadicalSum] = {}
                    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                        for coeff, w in self.bracket(b, c):
                            for coeff2, v in self.bracket(a, w):
                                cur = total.get(v, RadicalSum())
                                total[v] = cur + RadicalSum.from_value(coeff) * RadicalSum.from_value(coeff2)
                    for v, acc in total.items():
                        if not acc.is_zero():
                            raise ValueError(
                                f"Jacobi identity fails for ({x},{y},{z}) at {v}"
                            )

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "brackets": [
                {
                    "pair": [x, y],
                    "terms": [[_coeff_to_json(c), z] for c, z in terms],
                }
                for (x, y), terms in self.brackets.items()
            ],
            "hermiticity_pairs": [list(p) for p in self.hermiticity_pairs],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AlgebraSpec":
        brackets = {}
        for item in doc["brackets"]:
            x, y = item["pair"]
            brackets[(x, y)] = tuple((_coeff_from_json(c), z) for c, z in item["terms"])
        return cls(
            name=doc["name"],
            generators=tuple(doc["generators"]),
            brackets=brackets,
            hermiticity_pairs=tuple((a, b, int(p)) for a, b, p in doc["hermiticity_pairs"]),
        )


def _neg(coeff):
    if isinstance(coeff, Radical):
        return -coeff
    if isinstance(coeff, RadicalSum):
        return -coeff
    return -coeff


def _coeff_map(terms: Bracket) -> dict[str, RadicalSum]:
    out: dict[str, RadicalSum] = {}
    for c, z in terms:
        out[z] = out.get(z, RadicalSum()) + RadicalSum.from_value(c)
    return out


def _coeff_to_json(coeff):
    if isinstance(coeff, RadicalSum):
        coeff = coeff.to_radical()
    if not isinstance(coeff, Radical):
        coeff = Radical.from_rational(Fraction(coeff))
    return coeff.to_json()


def _coeff_from_json(obj):
    if isinstance(obj, dict):
        return Radical.from_json(obj)
    return Fraction(obj)


# -- shipped algebra tables ----------------------------------------------------


def su11_spec() -> AlgebraSpec:
    """su(1,1): ``[S0, S+-] = +-S+-``, ``[S-, S+] = 2 S0``."""
    return AlgebraSpec(
        name="su11",
        generators=("S0", "S+", "S-"),
        brackets={
            ("S0", "S+"): ((1, "S+"),),
            ("S0", "S-"): ((-1, "S-"),),
            ("S-", "S+"): ((2, "S0"),),
        },
        hermiticity_pairs=(("S0", "S0", 1), ("S+", "S-", 1)),
    )


def u3_spec() -> AlgebraSpec:
    """u(3): ``[C(ij), C(kl)] = d(kj) C(il) - d(il) C(kj)`` for all 81 pairs."""
    names = [(i, k) for i in (1, 2, 3) for k in (1, 2, 3)]
    brackets = {}
    for i, k in names:
        for l, m in names:
            terms = []
            if k == l:
                terms.append((1, f"C{i}{m}"))
            if i == m:
                terms.append((-1, f"C{l}{k}"))
            combined: dict[str, int] = {}
            for c, z in terms:
                combined[z] = combined.get(z, 0) + c
            brackets[(f"C{i}{k}", f"C{l}{m}")] = tuple(
                (c, z) for z, c in combined.items() if c
            )
    herm = tuple((f"C{i}{k}", f"C{k}{i}", 1) for i, k in names)
    return AlgebraSpec(
        name="u3",
        generators=tuple(f"C{i}{k}" for i, k in names),
        brackets=brackets,
        hermiticity_pairs=herm,
    )


def su3_so3_spec() -> AlgebraSpec:
    """su(3) in SO(3)-tensor form: L0, L+-, and the rank-2 quadrupole Q(-2..2).

    The quadrupole components transform as a spherical rank-2 tensor under L,
    close on L among themselves (in particular ``[Q2, Q-2] = 6 L0``), and obey
    ``Q(n)^dag = (-1)**n Q(-n)``.
    """
    rt6 = Radical.sqrt_of(6)
    c32 = rt6 * Fraction(3, 2)
    brackets: dict[tuple[str, str], Bracket] = {
        ("L0", "L+"): ((1, "L+"),),
        ("L0", "L-"): ((-1, "L-"),),
        ("L+", "L-"): ((2, "L0"),),
        ("Q-2", "Q-1"): (),
        ("Q-2", "Q0"): (),
        ("Q-2", "Q1"): ((-3, "L-"),),
        ("Q-2", "Q2"): ((-6, "L0"),),
        ("Q-1", "Q0"): ((c32, "L-"),),
        ("Q-1", "Q1"): ((3, "L0"),),
        ("Q-1", "Q2"): ((3, "L+"),),
        ("Q0", "Q1"): ((-c32, "L+"),),
        ("Q0", "Q2"): (),
        ("Q1", "Q2"): (),
    }
    for n in range(-2, 3):
        brackets[("L0", f"Q{n}")] = ((n, f"Q{n}"),) if n else ()
        up = (2 - n) * (3 + n)
        brackets[("L+", f"Q{n}")] = (
            ((Radical.sqrt_of(up), f"Q{n + 1}"),) if up else ()
        )
        down = (2 + n) * (3 - n)
        brackets[("L-", f"Q{n}")] = (
            ((Radical.sqrt_of(down), f"Q{n - 1}"),) if down else ()
        )
    herm = [("L0", "L0", 1), ("L+", "L-", 1)] + [
        (f"Q{n}", f"Q{-n}", (-1) ** n) for n in range(-2, 3)
    ]
    return AlgebraSpec(
        name="su3-so3",
        generators=("L0", "L+", "L-", "Q-2", "Q-1", "Q0", "Q1", "Q2"),
        brackets=brackets,
        hermiticity_pairs=tuple(herm),
    )


# -- residual functions --------------------------------------------------------


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, OperatorMatrix):
        return m.to_dense()
    return np.asarray(m)


def commutator_residual(spec: AlgebraSpec, matrices: dict) -> float:
    """Max over generator pairs of ``|[A,B] - sum c C| / (1 + |A| |B|)`` (Frobenius).

    When every matrix is an exact OperatorMatrix the defect is computed in
    exact radical arithmetic, so a holding identity reports exactly 0.0.
    """
    missing = [g for g in spec.generators if g not in matrices]
    if missing:
        raise ValueError(f"matrices missing for generators {missing}")
    dims = {np.shape(_as_matrix(matrices[g]))[0] for g in spec.generators}
    if len(dims) != 1:
        raise ValueError("matrices have mismatched dimensions")

    exact = all(
        isinstance(matrices[g], OperatorMatrix) and matrices[g].is_exact()
        for g in spec.generators
    )
    worst = 0.0
    gens = spec.generators
    for i, x in enumerate(gens):
        for y in gens[i:]:
            terms = spec.bracket(x, y)
            if exact:
                defect = (matrices[x] @ matrices[y]) - (matrices[y] @ matrices[x])
                for c, z in terms:
                    defect = defect - matrices[z].scale(c)
                if defect.is_zero():
                    continue
                num = defect.frobenius()
            else:
                a, b = _as_matrix(matrices[x]), _as_matrix(matrices[y])
                defect = a @ b - b @ a
                for c, z in terms:
                    defect = defect - as_float(c) * _as_matrix(matrices[z])
                num = float(np.linalg.norm(defect))
            den = 1.0 + _frob(matrices[x]) * _frob(matrices[y])
            worst = max(worst, num / den)
    return worst


def hermiticity_residual(spec: AlgebraSpec, matrices: dict) -> float:
    """Max over declared pairs of ``|A^dag - phase B| / (1 + |A|)``."""
    worst = 0.0
    for a_name, b_name, phase in spec.hermiticity_pairs:
        a = _as_matrix(matrices[a_name])
        b = _as_matrix(matrices[b_name])
        num = float(np.linalg.norm(a.conj().T - phase * b))
        worst = max(worst, num / (1.0 + float(np.linalg.norm(a))))
    return worst


def _frob(m) -> float:
    if isinstance(m, OperatorMatrix):
        return m.frobenius()
    return float(np.linalg.norm(np.asarray(m)))


def schur_constancy(matrix) -> tuple[float, float]:
    """Mean diagonal value and max normalized deviation from that multiple of I."""
    m = _as_matrix(matrix)
    n = m.shape[0]
    mean = float(np.trace(m).real) / n
    dev = float(np.abs(m - mean * np.eye(n)).max()) / (1.0 + abs(mean))
    return mean, dev


def spectrum_multiset(matrix, hermitian_tol: float = 1e-9) -> list[float]:
    """Sorted eigenvalue list (uses the symmetric solver when applicable)."""
    m = _as_matrix(matrix)
    if np.abs(m - m.conj().T).max() <= hermitian_tol * (1.0 + np.abs(m).max()):
        ev = np.linalg.eigvalsh(m)
    else:
        ev = np.sort_complex(np.linalg.eigvals(m))
        if np.abs(ev.imag).max() < 1e-9:
            ev = ev.real
    return [float(x) for x in np.sort(ev.real)]
