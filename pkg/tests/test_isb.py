import itertools
from fractions import Fraction

import pytest

from sunisb.coherent import irrep_rep
from sunisb.fock import MixedSectorError, basis_state, create, hop, plet_number, vacuum
from sunisb.isb import (
    InvalidIrrepError,
    IrrepLabel,
    basis_from_json,
    basis_to_json,
    f_coefficient,
    irrep_basis,
    irreps_up_to,
    isb_create,
    monomial_state,
    weyl_dimension,
)
from sunisb.liealg import apply_generator, build_gell_mann


def count_ssyt(rows, N):
    """Brute-force count of semistandard tableaux with entries 1..N."""
    shape = [r for r in rows if r]
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    count = 0
    for fill in itertools.product(range(1, N + 1), repeat=len(cells)):
        t = dict(zip(cells, fill))
        if all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t) and all(
            t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t
        ):
            count += 1
    return count


# values computed with count_ssyt and frozen
WEYL_CASES = [
    ((3,), 2, 4),
    ((4,), 2, 5),
    ((1, 1), 3, 3),
    ((2, 1), 3, 8),
    ((2, 2), 3, 6),
    ((3, 0), 3, 10),
    ((1, 1, 1), 4, 4),
    ((2, 1, 0), 4, 20),
    ((2, 1, 1), 4, 15),
    ((1, 0, 0, 0), 5, 5),
    ((2, 1, 1, 0), 5, 45),
]


@pytest.mark.parametrize("rows,N,expected", WEYL_CASES)
def test_frozen_weyl_values_match_oracle(rows, N, expected):
    assert count_ssyt(rows, N) == expected


@pytest.mark.parametrize("rows,N,expected", WEYL_CASES)
def test_weyl_dimension(rows, N, expected):
    assert weyl_dimension(IrrepLabel(rows, N)) == expected


def test_weyl_su2_general():
    for n in range(8):
        assert weyl_dimension(IrrepLabel((n,), 2)) == n + 1


def test_irrep_label_validation():
    with pytest.raises(InvalidIrrepError):
        IrrepLabel((1, 2), 3)
    with pytest.raises(InvalidIrrepError):
        IrrepLabel((1,), 3)
    with pytest.raises(InvalidIrrepError):
        IrrepLabel((-1,), 2)
    assert IrrepLabel.parse("2,1", 4).rows == (2, 1, 0)
    assert IrrepLabel.parse("3", 2).rows == (3,)
    with pytest.raises(InvalidIrrepError):
        IrrepLabel.parse("1,1,1", 3)


def test_f_coefficient():
    assert f_coefficient(2, 1, (1, 1)) == Fraction(-1, 2)
    assert f_coefficient(3, 1, (2, 1, 0)) == Fraction(-1, 5)
    assert f_coefficient(2, 1, (0, 0)) == Fraction(-1, 2)


def test_f_coefficient_matches_su3_special_case():
    # -1/(N_1 - N_2 + 2) for k=2, i=1
    for n1, n2 in itertools.product(range(5), repeat=2):
        if n1 - n2 + 2:
            assert f_coefficient(2, 1, (n1, n2)) == Fraction(-1, n1 - n2 + 2)


def test_isb_first_plet_is_plain_creator():
    v = basis_state(3, {(1, 2): 1, (2, 1): 1})
    for a in (1, 2, 3):
        assert isb_create(1, a, v) == create(v, (1, a))


def asr_oracle(alpha, beta):
    """1/2 (a^dag_beta[2] a^dag_alpha[1] - a^dag_alpha[2] a^dag_beta[1]) |0> by hand."""
    plus = basis_state(3, {(2, beta): 1, (1, alpha): 1})
    minus = basis_state(3, {(2, alpha): 1, (1, beta): 1})
    return (plus - minus) * Fraction(1, 2)


@pytest.mark.parametrize("alpha,beta", list(itertools.permutations((1, 2, 3), 2)))
def test_isb_reproduces_antisymmetric_state(alpha, beta):
    v = isb_create(2, beta, create(vacuum(3), (1, alpha)))
    assert v == asr_oracle(alpha, beta)
    w = isb_create(2, alpha, create(vacuum(3), (1, beta)))
    assert w == -v
    assert hop(v, 1, 2).is_zero()


def test_isb_requires_sector_eigenstate():
    v = create(vacuum(3), (1, 1)) + create(create(vacuum(3), (1, 1)), (1, 2))
    with pytest.raises(MixedSectorError):
        isb_create(2, 1, v)


def test_monomial_examples():
    assert monomial_state(IrrepLabel((2,), 2), [[1, 1]]) == basis_state(2, {(1, 1): 2})
    for a in (1, 2, 3):
        assert monomial_state(IrrepLabel((1, 1), 3), [[a], [a]]).is_zero()
    v = monomial_state(IrrepLabel((2, 1), 3), [[1, 2], [3]])
    assert not v.is_zero()
    assert plet_number(v, 1) == 2 and plet_number(v, 2) == 1
    assert hop(v, 1, 2).is_zero()


def test_monomial_shape_errors():
    with pytest.raises(InvalidIrrepError):
        monomial_state(IrrepLabel((2, 1), 3), [[1], [2]])
    with pytest.raises(InvalidIrrepError):
        monomial_state(IrrepLabel((1, 0), 3), [[4], []])


@pytest.mark.parametrize("rows,N,dim", [((3,), 2, 4), ((1, 1), 3, 3), ((2, 1), 3, 8), ((1, 1, 1), 4, 4)])
def test_irrep_basis_dimensions(rows, N, dim):
    assert len(irrep_basis(IrrepLabel(rows, N))) == dim


SWEEP = [lab for N in (2, 3, 4) for lab in irreps_up_to(N, 3)]


@pytest.mark.parametrize("lab", SWEEP, ids=lambda lab: f"SU{lab.N}{lab}")
def test_basis_properties(lab):
    basis = irrep_basis(lab)
    assert len(basis) == count_ssyt(lab.rows, lab.N)
    for v in basis:
        assert v.exact
        for i in range(1, lab.N):
            assert plet_number(v, i) == lab.rows[i - 1]
            for j in range(i + 1, lab.N):
                assert hop(v, i, j).is_zero()


@pytest.mark.parametrize("lab", [lab for lab in SWEEP if lab.total], ids=lambda lab: f"SU{lab.N}{lab}")
def test_basis_is_invariant(lab):
    rep = irrep_rep(lab)
    g = build_gell_mann(lab.N)
    assert rep.invariance_residual < 1e-10
    for v in irrep_basis(lab)[:3]:
        for a in range(1, lab.N ** 2):
            assert rep.projection_residual(apply_generator(a, v, g)) < 1e-10


@pytest.mark.parametrize("lab", [IrrepLabel((1, 0), 3), IrrepLabel((1, 1), 3), IrrepLabel((2, 1, 0), 4)],
                         ids=str)
def test_weak_commutators_and_row_exchange(lab):
    N = lab.N
    for v in irrep_basis(lab):
        for k in range(1, N):
            for a in range(1, N + 1):
                w = isb_create(k, a, v)
                for i in range(1, N):
                    for j in range(i + 1, N):
                        # [L_ij, A^dag] v reduces to L_ij A^dag v because L_ij v = 0
                        assert hop(w, i, j).is_zero()
                for b in range(a + 1, N + 1):
                    assert isb_create(k, a, isb_create(k, b, v)) == isb_create(k, b, isb_create(k, a, v))


def test_basis_ordering_is_deterministic():
    b = irrep_basis(IrrepLabel((1, 1), 3))
    # lexicographic colors with row-1 non-decreasing, earliest independent kept
    expected = [monomial_state(IrrepLabel((1, 1), 3), c) for c in ([[1], [2]], [[1], [3]], [[2], [3]])]
    assert b == expected


def test_basis_json_round_trip(tmp_path):
    lab = IrrepLabel((2, 1), 3)
    text = basis_to_json(lab, irrep_basis(lab))
    lab2, states = basis_from_json(text)
    assert lab2 == lab
    assert states == irrep_basis(lab)
    assert basis_to_json(lab2, states) == text
