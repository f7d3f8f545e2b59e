"""Verification suite: structure-constant tables and residual functions."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from vcs_irreps import repcheck, su11, u3
from vcs_irreps.opmatrix import OperatorMatrix
from vcs_irreps.radical import Radical


def defining_u3_matrices():
    out = {}
    for i in (1, 2, 3):
        for k in (1, 2, 3):
            m = np.zeros((3, 3))
            m[i - 1, k - 1] = 1.0
            out[f"C{i}{k}"] = m
    return out


def test_shipped_specs_validate():
    # construction runs antisymmetry + Jacobi, exactly
    assert len(repcheck.su11_spec().generators) == 3
    assert len(repcheck.u3_spec().brackets) == 81
    assert len(repcheck.su3_so3_spec().generators) == 8


def test_jacobi_rejects_corrupt_table():
    with pytest.raises(ValueError):
        repcheck.AlgebraSpec(
            name="broken",
            generators=("S0", "S+", "S-"),
            brackets={
                ("S0", "S+"): ((1, "S+"),),
                ("S0", "S-"): ((1, "S-"),),  # flipped sign breaks Jacobi
                ("S-", "S+"): ((2, "S0"),),
            },
            hermiticity_pairs=(),
        )


def test_antisymmetry_rejects_self_bracket():
    with pytest.raises(ValueError):
        repcheck.AlgebraSpec(
            name="broken",
            generators=("X",),
            brackets={("X", "X"): ((1, "X"),)},
            hermiticity_pairs=(),
        )


def test_commutator_residual_defining_matrices_is_zero():
    assert repcheck.commutator_residual(repcheck.u3_spec(), defining_u3_matrices()) == 0.0


def test_commutator_residual_detects_corruption():
    mats = defining_u3_matrices()
    mats["C12"] = mats["C12"].copy()
    mats["C12"][2, 0] = 0.3
    assert repcheck.commutator_residual(repcheck.u3_spec(), mats) > 1e-6


def test_commutator_residual_exact_path():
    gens = u3.assemble_generators(u3.U3HighestWeight(4, 2, 0))
    assert repcheck.commutator_residual(repcheck.u3_spec(), gens) == 0.0


def test_commutator_residual_requires_all_generators():
    with pytest.raises(ValueError):
        repcheck.commutator_residual(repcheck.su11_spec(), {"S0": np.eye(2)})


def test_residual_invariant_under_basis_permutation():
    gens = u3.assemble_generators(u3.U3HighestWeight(2, 1, 0))
    dense = {k: v.to_dense() for k, v in gens.items()}
    rng = np.random.default_rng(11)
    perm = rng.permutation(8)
    p = np.eye(8)[perm]
    permuted = {k: p @ v @ p.T for k, v in dense.items()}
    spec = repcheck.u3_spec()
    assert repcheck.commutator_residual(spec, permuted) == pytest.approx(
        repcheck.commutator_residual(spec, dense), abs=1e-14
    )
    assert repcheck.hermiticity_residual(spec, permuted) == pytest.approx(
        repcheck.hermiticity_residual(spec, dense), abs=1e-14
    )


def test_schur_constancy_examples():
    mean, dev = repcheck.schur_constancy(np.eye(4))
    assert (mean, dev) == (1.0, 0.0)
    irrep = su11.Su11Irrep(3, 8)
    cas = su11.casimir_matrix(irrep).to_dense()[:8, :8]
    mean, dev = repcheck.schur_constancy(cas)
    assert mean == pytest.approx(0.75)
    assert dev <= 1e-12
    rng = np.random.default_rng(3)
    noisy = rng.normal(size=(5, 5))
    _, dev = repcheck.schur_constancy(noisy)
    assert dev > 0.1


def test_spectrum_multiset_examples():
    assert repcheck.spectrum_multiset(np.diag([2.0, 1.0, 2.0])) == [1.0, 2.0, 2.0]
    assert repcheck.spectrum_multiset(np.zeros((3, 3))) == [0.0, 0.0, 0.0]
    # L^2 on {2,0,0} has eigenvalues 0 (x1) and 6 (x5), i.e. L in {0, 2}
    gens = u3.assemble_generators(u3.U3HighestWeight(2, 0, 0))
    l0, lp, lm = u3.angular_momentum_dense(gens)
    lsq = l0 @ l0 + (lp @ lm + lm @ lp) / 2
    spec = repcheck.spectrum_multiset(lsq)
    assert spec == pytest.approx([0.0] + [6.0] * 5, abs=1e-9)


def test_hermiticity_residual_detects_flip():
    gens = {k: v.to_dense() for k, v in su11.generator_matrices(su11.Su11Irrep(2, 5)).items()}
    assert repcheck.hermiticity_residual(repcheck.su11_spec(), gens) == 0.0
    gens["S-"] = -gens["S-"]
    assert repcheck.hermiticity_residual(repcheck.su11_spec(), gens) > 0.1


def test_spec_json_round_trip():
    spec = repcheck.su3_so3_spec()
    doc = json.loads(json.dumps(spec.to_json()))
    loaded = repcheck.AlgebraSpec.from_json(doc)
    assert loaded.generators == spec.generators
    assert loaded.hermiticity_pairs == spec.hermiticity_pairs
    for pair, terms in spec.brackets.items():
        got = loaded.brackets[pair]
        assert len(got) == len(terms)
        for (c1, z1), (c2, z2) in zip(terms, got):
            assert z1 == z2
            assert Radical.from_rational(Fraction(c1)) == c2 if isinstance(c1, int) else c1 == c2


def test_exact_residual_on_operator_matrices_with_radical_coeffs():
    # the su3-so3 table has sqrt(6) coefficients; exercise the exact path
    basis = (0, 1)
    zero = OperatorMatrix("z", basis)
    mats = {name: zero.copy(name) for name in repcheck.su3_so3_spec().generators}
    assert repcheck.commutator_residual(repcheck.su3_so3_spec(), mats) == 0.0
