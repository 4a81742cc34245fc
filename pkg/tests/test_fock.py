"""Tests for the truncated Fock representation and relation certification."""

import math

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings, strategies as st

from qmodes.fock import (
    RELATION_FAMILIES,
    FockSpaceConfig,
    annihilator,
    build_state,
    coordinate_text,
    corrupted_annihilator,
    creator,
    decode_occupation,
    encode_occupation,
    interior_indices,
    number_op,
    occupation_table,
    scale_op,
    verify_algebra,
)
from qmodes.qcore import DeformationParams, q_number


def cfg_for(q: float = 0.5, modes: int = 2, cutoff: int = 4) -> FockSpaceConfig:
    return FockSpaceConfig(modes, cutoff, DeformationParams(q))


# ---------------------------------------------------------------------------
# configuration and indexing


def test_config_guards():
    params = DeformationParams(0.5)
    with pytest.raises(ValueError):
        FockSpaceConfig(0, 4, params)
    with pytest.raises(ValueError):
        FockSpaceConfig(2, 0, params)
    with pytest.raises(ValueError):
        FockSpaceConfig(9, 10, params)  # 10^9 over the dimension guard
    assert cfg_for(modes=3, cutoff=4).dimension == 64


def test_encode_decode_round_trip_everywhere():
    cfg = cfg_for(modes=3, cutoff=3)
    for index in range(cfg.dimension):
        occupation = decode_occupation(cfg, index)
        assert encode_occupation(cfg, occupation) == index
    table = occupation_table(cfg)
    assert table.shape == (27, 3)
    np.testing.assert_array_equal(table[5], decode_occupation(cfg, 5))


def test_mode_one_is_most_significant():
    cfg = cfg_for(modes=2, cutoff=4)
    assert encode_occupation(cfg, (1, 0)) == 4
    assert encode_occupation(cfg, (0, 1)) == 1


def test_encode_bounds():
    cfg = cfg_for()
    with pytest.raises(ValueError):
        encode_occupation(cfg, (0,))
    with pytest.raises(ValueError):
        encode_occupation(cfg, (0, 4))
    with pytest.raises(ValueError):
        decode_occupation(cfg, cfg.dimension)


def test_occupation_table_is_read_only():
    table = occupation_table(cfg_for())
    with pytest.raises(ValueError):
        table[0, 0] = 7


@given(
    modes=st.integers(min_value=1, max_value=3),
    cutoff=st.integers(min_value=2, max_value=5),
    data=st.data(),
)
@settings(max_examples=40, deadline=None)
def test_encode_decode_property(modes, cutoff, data):
    cfg = FockSpaceConfig(modes, cutoff, DeformationParams(0.5))
    occupation = tuple(
        data.draw(st.integers(min_value=0, max_value=cutoff - 1)) for _ in range(modes)
    )
    assert decode_occupation(cfg, encode_occupation(cfg, occupation)) == occupation


# ---------------------------------------------------------------------------
# ladder operator actions on basis states


def test_creator_amplitude_with_twist():
    # raising mode 1 out of |0,1> passes one quantum in mode 2: factor q
    cfg = cfg_for(q=0.5, modes=2, cutoff=4)
    raise_1 = creator(cfg, 1)
    source = encode_occupation(cfg, (0, 1))
    target = encode_occupation(cfg, (1, 1))
    column = raise_1[:, source].toarray().ravel()
    assert column[target] == pytest.approx(0.5, rel=1e-15)
    assert np.count_nonzero(column) == 1


def test_annihilator_amplitudes():
    cfg = cfg_for(q=0.5, modes=2, cutoff=4)
    lower_1 = annihilator(cfg, 1)
    lower_2 = annihilator(cfg, 2)
    # a_2 |1,1> = sqrt([1]) |1,0> with empty suffix: amplitude exactly 1
    src = encode_occupation(cfg, (1, 1))
    assert lower_2[encode_occupation(cfg, (1, 0)), src] == pytest.approx(1.0)
    # a_1 |1,1> = q sqrt([1]) |0,1>
    assert lower_1[encode_occupation(cfg, (0, 1)), src] == pytest.approx(0.5)
    # a_1 |2,0> = sqrt([2]) |1,0>
    src = encode_occupation(cfg, (2, 0))
    params = cfg.params
    assert lower_1[encode_occupation(cfg, (1, 0)), src] == pytest.approx(
        math.sqrt(q_number(params, 2))
    )


def test_vacuum_is_annihilated():
    cfg = cfg_for(modes=3, cutoff=3)
    vacuum = np.zeros(cfg.dimension)
    vacuum[0] = 1.0
    for i in (1, 2, 3):
        assert np.linalg.norm(annihilator(cfg, i) @ vacuum) == 0.0


def test_top_rung_truncates_to_zero():
    cfg = cfg_for(modes=1, cutoff=4)
    top = encode_occupation(cfg, (3,))
    assert creator(cfg, 1)[:, top].nnz == 0


def test_creator_is_adjoint_of_annihilator():
    cfg = cfg_for(q=0.9, modes=2, cutoff=5)
    for i in (1, 2):
        delta = (annihilator(cfg, i).conj().T - creator(cfg, i)).tocsr()
        assert delta.nnz == 0 or np.max(np.abs(delta.data)) == 0.0


def test_mode_index_bounds():
    cfg = cfg_for()
    for op in (annihilator, creator, number_op, scale_op):
        with pytest.raises(ValueError):
            op(cfg, 0)
        with pytest.raises(ValueError):
            op(cfg, 3)


def test_diagonal_operators():
    cfg = cfg_for(q=0.5, modes=2, cutoff=3)
    occ = occupation_table(cfg)
    n_2 = number_op(cfg, 2).diagonal().real
    np.testing.assert_allclose(n_2, occ[:, 1])
    q_1 = scale_op(cfg, 1).diagonal().real
    np.testing.assert_allclose(q_1, 0.25 ** occ[:, 0])


def test_build_state_reproduces_basis_vectors():
    cfg = cfg_for(q=0.5, modes=2, cutoff=4)
    for occupation in ((0, 0), (2, 1), (3, 3), (0, 2)):
        vector = build_state(cfg, occupation)
        expected = np.zeros(cfg.dimension)
        expected[encode_occupation(cfg, occupation)] = 1.0
        np.testing.assert_allclose(vector, expected, atol=1e-12)


# ---------------------------------------------------------------------------
# relation certification


def test_interior_indices_margin():
    cfg = cfg_for(modes=2, cutoff=4)
    interior = interior_indices(cfg, margin=2)
    occ = occupation_table(cfg)
    assert len(interior) == 9  # occupations 0..2 in each of two modes
    assert (occ[interior] <= 2).all()


@pytest.mark.parametrize("modes", [1, 2, 3])
@pytest.mark.parametrize("q", [0.3, 0.9])
def test_verify_algebra_passes_on_honest_operators(modes, q):
    cfg = FockSpaceConfig(modes, 4, DeformationParams(q))
    report = verify_algebra(cfg, tol=1e-12)
    assert report.passed
    assert report.failing() == []
    assert set(report.deviations) == set(RELATION_FAMILIES)
    assert report.interior_size == 3**modes
    assert max(report.deviations.values()) < 1e-13


def test_verify_algebra_needs_margin():
    with pytest.raises(ValueError):
        verify_algebra(cfg_for(cutoff=2))


def test_verify_algebra_rejects_wrong_override_count():
    cfg = cfg_for(modes=2)
    with pytest.raises(ValueError):
        verify_algebra(cfg, annihilators=[annihilator(cfg, 1)])


def test_corruption_is_detected_by_exactly_the_amplitude_sensitive_families():
    cfg = cfg_for(q=0.5, modes=2, cutoff=5)
    lowers = [corrupted_annihilator(cfg, 1), annihilator(cfg, 2)]
    report = verify_algebra(cfg, tol=1e-12, annihilators=lowers)
    assert not report.passed
    assert report.failing() == [
        "annihilator_annihilator_swap",
        "annihilator_creator_swap",
        "ladder_commutator_scale_product",
        "mode_contraction",
        "normal_product_diagonal",
    ]
    # the structural families never feel a magnitude-only corruption
    for name in (
        "creator_creator_swap",
        "last_mode_contraction",
        "number_ladder_commutator",
    ):
        assert report.deviations[name] < 1e-13


def test_corrupted_annihilator_differs_in_one_entry():
    cfg = cfg_for(modes=2, cutoff=5)
    delta = (corrupted_annihilator(cfg, 1) - annihilator(cfg, 1)).tocsr()
    delta.eliminate_zeros()
    assert delta.nnz == 1


def test_corruption_needs_interior_support():
    cfg = cfg_for(modes=1, cutoff=2)
    with pytest.raises(ValueError):
        corrupted_annihilator(cfg, 1)


# ---------------------------------------------------------------------------
# text export


def test_coordinate_text_matrix_form():
    cfg = cfg_for(modes=1, cutoff=3)
    text = coordinate_text(annihilator(cfg, 1))
    lines = text.strip().split("\n")
    assert lines[0].split() == ["0", "1", "1", "0"]
    rows_cols = [tuple(map(int, line.split()[:2])) for line in lines]
    assert rows_cols == sorted(rows_cols)


def test_coordinate_text_vector_form():
    vector = np.array([0.0, 0.5, 0.0])
    text = coordinate_text(vector)
    assert text == "1 0 0.5 0\n"
    with pytest.raises(ValueError):
        coordinate_text(np.zeros((2, 2)))


def test_coordinate_text_round_trips_doubles():
    cfg = cfg_for(q=0.9, modes=2, cutoff=3)
    matrix = annihilator(cfg, 1).tocoo()
    text = coordinate_text(matrix)
    parsed = {}
    for line in text.strip().split("\n"):
        r, c, re_part, im_part = line.split()
        parsed[(int(r), int(c))] = complex(float(re_part), float(im_part))
    for r, c, v in zip(matrix.row, matrix.col, matrix.data):
        assert parsed[(int(r), int(c))] == v
