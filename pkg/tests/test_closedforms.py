import pytest

from cnslab.closedforms import (
    cd_closed,
    cd_closed_exact,
    closed_for,
    dsh_closed,
    dsh_closed_exact,
    main_closed,
    main_closed_exact,
)
from cnslab.coeffengine import coeff_full_sum, coeff_single_point
from cnslab.constructions import cd_model, dsh_model, main_model
from cnslab.errors import DeltaTooLarge
from oracles import top_coefficient


def test_cd_examples():
    assert cd_closed(2, 2, 0, 7).residue == 2
    assert cd_closed(1, 1, 0, 101).residue == 1
    assert cd_closed(3, 3, 1, 5).residue == 3


def test_dsh_examples():
    assert dsh_closed(3, 2, 0, 11).residue == 1
    for d in range(2, 9):
        assert dsh_closed_exact(d, 1, 0).to_fraction() == 1
    M = dsh_model(7, 3, 11)
    assert dsh_closed(7, 3, 2, 11).residue == coeff_single_point(M) == coeff_full_sum(M)


def test_main_examples():
    assert main_closed(2, 1, 0, 7).residue == 2
    assert main_closed(3, 3, 0, 13).residue == coeff_full_sum(main_model(3, 3, 13))
    M = main_model(5, 2, 11)
    assert main_closed(5, 2, 2, 11).residue == coeff_single_point(M)


def test_delta_preconditions():
    with pytest.raises(DeltaTooLarge):
        dsh_closed(3, 2, 2, 11)
    with pytest.raises(DeltaTooLarge):
        cd_closed(2, 2, 2, 7)


# integer coefficients of the homogeneous top part; frozen from the symbolic oracle
@pytest.mark.parametrize("d, h", [(d, h) for d in range(1, 6) for h in range(1, d + 1)])
def test_dsh_exact_matches_integer_coefficient(d, h):
    M = dsh_model(d, h, 31)
    assert M.delta == 0
    want = top_coefficient(M.nvars, len(M.roots), True, None, M.monomial)
    assert dsh_closed_exact(d, h, 0).to_fraction() == want


@pytest.mark.parametrize("d, alpha", [(d, a) for d in range(1, 5) for a in range(d + 1)])
def test_main_exact_matches_integer_coefficient(d, alpha):
    M = main_model(d, alpha, 31)
    assert M.delta == 0
    want = top_coefficient(M.nvars, len(M.roots), True, alpha, M.monomial)
    assert main_closed_exact(d, alpha, 0).to_fraction() == want


@pytest.mark.parametrize("n, m", [(n, m) for n in range(1, 7) for m in range(1, 7)])
def test_cd_exact_matches_integer_coefficient(n, m):
    M = cd_model(n, m, 31)
    want = top_coefficient(2, len(M.roots), False, None, M.monomial)
    assert cd_closed_exact(n, m, 0).to_fraction() == want


def test_positive_delta_against_oracle():
    for M in (dsh_model(7, 3, 11), dsh_model(7, 4, 11), dsh_model(9, 3, 17),
              main_model(5, 2, 11), cd_model(5, 6, 7), cd_model(4, 6, 7)):
        assert M.delta > 0
        want = top_coefficient(M.nvars, len(M.roots), M.vandermonde, M.plus_cutoff, M.monomial) % M.p
        assert closed_for(M.kind, M.params, M.delta, M.p).residue == want


def test_frozen_values():
    # independent symbolic expansion
    assert dsh_closed_exact(4, 2, 0).to_fraction() == 2
    assert dsh_closed_exact(5, 2, 0).to_fraction() == 5
    assert main_closed_exact(2, 1, 0).to_fraction() == 2
    assert main_closed_exact(3, 1, 0).to_fraction() == 16
    assert main_closed_exact(3, 2, 0).to_fraction() == 4
