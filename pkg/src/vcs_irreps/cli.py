"""Command-line front end: generate irrep matrices, verify them, cross-check bases.

Subcommands
-----------
``gen``     build an irrep and write basis, sparse generator matrices and the
            reduced-matrix-element table as JSON (or the table alone as CSV).
``check``   run the verification suite (commutators, Hermiticity, Casimir
            constancy, branching cross-check where applicable); also replays
            a previously generated JSON document with ``--replay``.
``branch``  print the L-multiplicity table of an su(3) irrep from both the
            rotor enumeration and the canonical-basis L^2 oracle.

Exit codes: 0 success, 1 verification failure, 2 usage error.  The default
tolerance is 1e-10, overridable per-call with ``--tol`` or globally with the
``VCS_IRREPS_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import repcheck, su3_so3, su11, u3
from .opmatrix import OperatorMatrix
from .radical import Radical, RadicalSum, as_float

SCHEMA_VERSION = 1
DEFAULT_TOL = 1e-10


class UsageError(Exception):
    pass


def _tol_default() -> float:
    env = os.environ.get("VCS_IRREPS_TOL")
    return float(env) if env else DEFAULT_TOL


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _parse_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated values, got {text!r}")
    return tuple(_parse_fraction(p) for p in parts)  # type: ignore[return-value]


def _parse_lm(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected lam,mu - got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"lam and mu must be integers: {text!r}") from exc


def _value_to_json(value, mode: str):
    if mode == "exact":
        if isinstance(value, RadicalSum):
            value = value.to_radical()
        if isinstance(value, (int, Fraction)):
            value = Radical.from_rational(Fraction(value))
        if isinstance(value, Radical):
            return value.to_json()
        raise UsageError("exact output requested but matrix entries are floats")
    return repr(as_float(value))


def _value_from_json(obj) -> float:
    if isinstance(obj, dict):
        return float(Radical.from_json(obj))
    return float(obj)


def _matrix_to_json(mat: OperatorMatrix, mode: str) -> dict:
    entries = [
        [r, c, _value_to_json(v, mode)] for (r, c), v in sorted(mat.entries.items())
    ]
    return {"dim": mat.dim, "entries": entries}


def _matrices_from_doc(doc: dict) -> dict[str, np.ndarray]:
    out = {}
    for name, info in doc["generators"].items():
        m = np.zeros((info["dim"], info["dim"]))
        for r, c, v in info["entries"]:
            m[int(r), int(c)] = _value_from_json(v)
        out[name] = m
    return out


# -- document builders -----------------------------------------------------


def _build_su11(lam: Fraction, nmax: int, mode: str) -> dict:
    irrep = su11.Su11Irrep(lam, nmax)
    gens = su11.generator_matrices(irrep)
    reduced = [
        {"bra": str(n + 1), "ket": str(n), "value": _value_to_json(gens["S+"][n + 1, n], mode)}
        for n in range(irrep.n_max)
    ]
    return {
        "schema": SCHEMA_VERSION,
        "algebra": "su11",
        "weight": {"lambda": str(irrep.lam), "nmax": irrep.n_max},
        "mode": mode,
        "basis": [str(n) for n in range(irrep.dim)],
        "generators": {k: _matrix_to_json(v, mode) for k, v in gens.items()},
        "reduced_matrix_elements": reduced,
        "metadata": {"kernel_convergence_radius": su11.KERNEL_CONVERGENCE_RADIUS},
    }


def _build_u3(weight, mode: str) -> dict:
    hw = u3.U3HighestWeight(*weight)
    gens = u3.assemble_generators(hw)
    labels = u3.basis_enumeration(hw)
    reduced = []
    seen = set()
    for lbl in labels:
        for tSp in (lbl.tS - 1, lbl.tS + 1):
            key = (lbl.tj, lbl.tS, tSp)
            if key in seen:
                continue
            seen.add(key)
            val = u3.reduced_me(hw, lbl.tj, lbl.tS, tSp, "f")
            if val.is_zero():
                continue
            reduced.append(
                {
                    "bra": f"j={Fraction(lbl.tj + 1, 2)},S={Fraction(tSp, 2)}",
                    "ket": f"j={Fraction(lbl.tj, 2)},S={Fraction(lbl.tS, 2)}",
                    "value": _value_to_json(val, mode),
                }
            )
    return {
        "schema": SCHEMA_VERSION,
        "algebra": "u3",
        "weight": {"w": [str(w) for w in (hw.w1, hw.w2, hw.w3)]},
        "mode": mode,
        "basis": [str(lbl) for lbl in labels],
        "generators": {k: _matrix_to_json(v, mode) for k, v in gens.items()},
        "reduced_matrix_elements": reduced,
    }


def _build_su3_so3(lam: int, mu: int) -> dict:
    lm = su3_so3.Su3Label(lam, mu)
    gens = su3_so3.assemble_so3_generators(lm)
    labels = su3_so3.basis_labels(lm)
    mults = su3_so3.rotor_multiplicities(lm)
    reduced = []
    for L in sorted(mults):
        for Lp in sorted(mults):
            if abs(Lp - L) > 2:
                continue
            for alpha in range(mults[L]):
                for beta in range(mults[Lp]):
                    val = su3_so3.reduced_q(lm, beta, Lp, alpha, L)
                    if val == 0.0:
                        continue
                    reduced.append(
                        {
                            "bra": f"L={Lp},alpha={beta}",
                            "ket": f"L={L},alpha={alpha}",
                            "value": repr(val),
                        }
                    )
    return {
        "schema": SCHEMA_VERSION,
        "algebra": "su3-so3",
        "weight": {"lam": lam, "mu": mu},
        # The SO(3)-basis matrices pass through a numeric diagonalization, so
        # entries are floats regardless of the requested mode.
        "mode": "float",
        "basis": [f"L={b.L},alpha={b.alpha},M={b.M}" for b in labels],
        "generators": {k: _matrix_to_json(v, "float") for k, v in gens.items()},
        "reduced_matrix_elements": reduced,
    }


def _doc_to_csv(doc: dict) -> str:
    weight = doc["weight"]
    if doc["algebra"] == "su11":
        wstr = f"lambda={weight['lambda']}"
    elif doc["algebra"] == "u3":
        wstr = ",".join(weight["w"])
    else:
        wstr = f"{weight['lam']},{weight['mu']}"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["weight", "bra", "ket", "value"])
    for row in doc["reduced_matrix_elements"]:
        value = row["value"]
        if isinstance(value, dict):
            value = str(Radical.from_json(value))
        writer.writerow([wstr, row["bra"], row["ket"], value])
    return buf.getvalue()


# -- verification ------------------------------------------------------------


def _su11_report(gens: dict, dim: int, tol: float) -> list[tuple[str, float, bool]]:
    """Interior-block residuals: the truncation defect lives in the last row/column."""
    interior = dim - 1
    names = ("S0", "S+", "S-")

    def _interior(matrix) -> np.ndarray:
        if isinstance(matrix, OperatorMatrix):
            matrix = matrix.to_dense()
        return np.asarray(matrix)[:interior, :interior]

    dense = {k: np.asarray(v.to_dense() if isinstance(v, OperatorMatrix) else v) for k, v in gens.items()}
    spec = repcheck.su11_spec()
    worst = 0.0
    for i, x in enumerate(names):
        for y in names[i:]:
            defect = dense[x] @ dense[y] - dense[y] @ dense[x]
            for c, z in spec.bracket(x, y):
                defect = defect - float(c) * dense[z]
            num = float(np.linalg.norm(defect[:interior, :interior]))
            den = 1.0 + float(np.linalg.norm(dense[x])) * float(np.linalg.norm(dense[y]))
            worst = max(worst, num / den)
    herm = repcheck.hermiticity_residual(spec, dense)
    casimir = dense["S0"] @ dense["S0"] - (dense["S+"] @ dense["S-"] + dense["S-"] @ dense["S+"]) / 2
    _, dev = repcheck.schur_constancy(_interior(casimir))
    return [
        ("commutators (interior)", worst, worst <= tol),
        ("hermiticity", herm, herm <= tol),
        ("casimir constancy (interior)", dev, dev <= tol),
    ]


def _u3_report(gens: dict, tol: float) -> list[tuple[str, float, bool]]:
    spec = repcheck.u3_spec()
    comm = repcheck.commutator_residual(spec, gens)
    herm = repcheck.hermiticity_residual(spec, gens)
    dense = {k: (v.to_dense() if isinstance(v, OperatorMatrix) else np.asarray(v)) for k, v in gens.items()}
    cas = sum(
        (dense[f"C{i}{k}"] @ dense[f"C{k}{i}"] for i in (1, 2, 3) for k in (1, 2, 3)),
        np.zeros_like(dense["C11"]),
    )
    _, dev = repcheck.schur_constancy(cas)
    return [
        ("commutators", comm, comm <= tol),
        ("hermiticity", herm, herm <= tol),
        ("casimir constancy", dev, dev <= tol),
    ]


def _su3_so3_report(gens: dict, tol: float, lm: su3_so3.Su3Label | None) -> list[tuple[str, float, bool]]:
    spec = repcheck.su3_so3_spec()
    comm = repcheck.commutator_residual(spec, gens)
    herm = repcheck.hermiticity_residual(spec, gens)
    dense = {k: (v.to_dense() if isinstance(v, OperatorMatrix) else np.asarray(v)) for k, v in gens.items()}
    qq = sum(
        ((-1.0) ** nu * dense[f"Q{nu}"] @ dense[f"Q{-nu}"] for nu in range(-2, 3)),
        np.zeros_like(dense["L0"]),
    )
    ll = dense["L0"] @ dense["L0"] + (dense["L+"] @ dense["L-"] + dense["L-"] @ dense["L+"]) / 2
    _, dev = repcheck.schur_constancy(qq + 3 * ll)
    checks = [
        ("commutators", comm, comm <= tol),
        ("hermiticity", herm, herm <= tol),
        ("casimir constancy", dev, dev <= tol),
    ]
    if lm is not None:
        match = su3_so3.rotor_multiplicities(lm) == su3_so3.branching_oracle(lm)
        checks.append(("branching cross-check", 0.0 if match else 1.0, match))
    return checks


def _print_report(title: str, checks) -> bool:
    ok = True
    print(title)
    for name, residual, passed in checks:
        status = "PASS" if passed else "FAIL"
        print(f"  {name:32s} residual {residual:.3e}  {status}")
        ok = ok and passed
    return ok


# -- command implementations -------------------------------------------------


def cmd_gen(args) -> int:
    if args.algebra == "su11":
        if args.lam is None or args.nmax is None:
            raise UsageError("gen su11 requires --lambda and --nmax")
        doc = _build_su11(_parse_fraction(args.lam), args.nmax, args.mode)
    elif args.algebra == "u3":
        if args.weight is None:
            raise UsageError("gen u3 requires --weight w1,w2,w3")
        try:
            doc = _build_u3(_parse_triple(args.weight), args.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        if args.lm is None:
            raise UsageError("gen su3-so3 requires --lm lam,mu")
        try:
            doc = _build_su3_so3(*_parse_lm(args.lm))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    text = _doc_to_csv(doc) if args.format == "csv" else json.dumps(doc, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def _check_replay(path: str, tol: float) -> int:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("schema") != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema {doc.get('schema')!r}")
    matrices = _matrices_from_doc(doc)
    algebra = doc["algebra"]
    if algebra == "su11":
        checks = _su11_report(matrices, matrices["S0"].shape[0], tol)
    elif algebra == "u3":
        checks = _u3_report(matrices, tol)
    elif algebra == "su3-so3":
        lm = su3_so3.Su3Label(int(doc["weight"]["lam"]), int(doc["weight"]["mu"]))
        checks = _su3_so3_report(matrices, tol, lm)
    else:
        raise UsageError(f"unknown algebra {algebra!r} in document")
    ok = _print_report(f"replay {path} ({algebra})", checks)
    return 0 if ok else 1


def cmd_check(args) -> int:
    tol = args.tol if args.tol is not None else _tol_default()
    if args.replay:
        return _check_replay(args.replay, tol)
    if args.algebra is None:
        raise UsageError("check requires an algebra or --replay FILE")
    if args.algebra == "su11":
        if args.lam is None or args.nmax is None:
            raise UsageError("check su11 requires --lambda and --nmax")
        irrep = su11.Su11Irrep(_parse_fraction(args.lam), args.nmax)
        checks = _su11_report(su11.generator_matrices(irrep), irrep.dim, tol)
        title = f"su11 lambda={irrep.lam} nmax={irrep.n_max}"
    elif args.algebra == "u3":
        if args.weight is None:
            raise UsageError("check u3 requires --weight w1,w2,w3")
        try:
            hw = u3.U3HighestWeight(*_parse_triple(args.weight))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        checks = _u3_report(u3.assemble_generators(hw), tol)
        title = f"u3 weight {{{hw.w1},{hw.w2},{hw.w3}}}"
    else:
        if args.lm is None:
            raise UsageError("check su3-so3 requires --lm lam,mu")
        try:
            lm = su3_so3.Su3Label(*_parse_lm(args.lm))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        checks = _su3_so3_report(su3_so3.assemble_so3_generators(lm), tol, lm)
        title = f"su3-so3 ({lm.lam},{lm.mu})"
    ok = _print_report(title, checks)
    return 0 if ok else 1


def cmd_branch(args) -> int:
    try:
        lm = su3_so3.Su3Label(*_parse_lm(args.lm))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rotor = su3_so3.rotor_multiplicities(lm)
    oracle = su3_so3.branching_oracle(lm)
    print(f"L multiplicities for ({lm.lam},{lm.mu}):")
    print(f"  {'L':>3s} {'rotor':>6s} {'oracle':>6s}")
    ok = True
    for L in sorted(set(rotor) | set(oracle)):
        a, b = rotor.get(L, 0), oracle.get(L, 0)
        flag = "" if a == b else "  MISMATCH"
        ok = ok and a == b
        print(f"  {L:3d} {a:6d} {b:6d}{flag}")
    print("agreement:", "yes" if ok else "NO")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcs-irreps",
        description="Unitary irrep matrices of su(1,1), u(3) and su(3) with built-in verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an irrep document")
    gen.add_argument("algebra", choices=("su11", "u3", "su3-so3"))
    gen.add_argument("--lambda", dest="lam", help="su(1,1) lowest weight (positive rational)")
    gen.add_argument("--nmax", type=int, help="su(1,1) truncation order")
    gen.add_argument("--weight", help="u(3) weight as w1,w2,w3")
    gen.add_argument("--lm", help="su(3) weight as lam,mu")
    gen.add_argument("--format", choices=("json", "csv"), default="json")
    gen.add_argument("--mode", choices=("exact", "float"), default="exact")
    gen.add_argument("--out", help="write to file instead of stdout")
    gen.set_defaults(func=cmd_gen)

    chk = sub.add_parser("check", help="verify algebra relations")
    chk.add_argument("algebra", nargs="?", choices=("su11", "u3", "su3-so3"))
    chk.add_argument("--lambda", dest="lam")
    chk.add_argument("--nmax", type=int)
    chk.add_argument("--weight")
    chk.add_argument("--lm")
    chk.add_argument("--replay", help="re-verify a generated JSON document")
    chk.add_argument("--tol", type=float, help="residual tolerance (default 1e-10 or VCS_IRREPS_TOL)")
    chk.set_defaults(func=cmd_check)

    br = sub.add_parser("branch", help="L-multiplicity table from both constructions")
    br.add_argument("--lm", required=True)
    br.set_defaults(func=cmd_branch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
