"""The coupling function against the matrix oracles."""

from fractions import Fraction
from itertools import combinations

import pytest

from aztecdimers import coupling as coupling_mod
from aztecdimers.combinatorics import first_column_hole_count
from aztecdimers.coupling import (
    CALIBRATED_ORIENTATION,
    ORIENTATIONS,
    CalibrationError,
    DyadicRational,
    calibrate_orientation,
    coupling,
    coupling_signed,
    pattern_probability,
)
from aztecdimers.enumerate import enumerate_matchings
from aztecdimers.kasteleyn import (
    inverse_coupling_matrix,
    pattern_probability_oracle,
)
from aztecdimers.lattice import BoardError, Pattern, black, build_diamond, white


# ---------------------------------------------------------------------------
# DyadicRational
# ---------------------------------------------------------------------------


def test_dyadic_normalization():
    assert DyadicRational(2, 2) == DyadicRational(1, 1)
    assert DyadicRational(0, 7) == DyadicRational(0, 0)
    assert DyadicRational(-4, 3) == DyadicRational(-1, 1)
    assert DyadicRational(3, 0).to_fraction() == 3


def test_dyadic_rejects_negative_scale():
    with pytest.raises(ValueError):
        DyadicRational(1, -1)


def test_dyadic_arithmetic():
    a = DyadicRational(3, 2)  # 3/4
    b = DyadicRational(1, 1)  # 1/2
    assert (a + b).to_fraction() == Fraction(5, 4)
    assert (a - b).to_fraction() == Fraction(1, 4)
    assert (a * b).to_fraction() == Fraction(3, 8)
    assert (-a).numerator == -3
    assert abs(DyadicRational(-1, 3)) == DyadicRational(1, 3)
    assert float(b) == 0.5
    assert str(a) == "3 / 2^2"


# ---------------------------------------------------------------------------
# Oracle equivalence
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_master_equivalence(n):
    for (v, w), entry in inverse_coupling_matrix(n).items():
        assert abs(coupling(n, v, w).to_fraction()) == abs(entry)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_signed_equivalence_all_offsets(n):
    for (v, w), entry in inverse_coupling_matrix(n).items():
        value = coupling_signed(n, v.x, w.x - v.x, w.y, v.y - w.y)
        assert value.to_fraction() == entry


def test_corner_domino_probability_matches_brute_force():
    board = build_diamond(2)
    v = white(1, 1)
    w = board.neighbors(v)[0]
    containing = 0

    def visit(m):
        nonlocal containing
        containing += (v, w) in m

    total = enumerate_matchings(board, visit)
    assert abs(coupling(2, v, w).to_fraction()) == Fraction(containing, total)


def test_coupling_scale_never_exceeds_order():
    for n in (2, 3):
        board = build_diamond(n)
        for v in board.white_vertices:
            for w in board.black_vertices:
                assert coupling(n, v, w).scale <= n


def test_coupling_range_errors():
    with pytest.raises(BoardError):
        coupling(2, white(3, 1), black(1, 1))
    with pytest.raises(BoardError):
        coupling(2, white(1, 1), black(1, 3))
    with pytest.raises(BoardError):
        coupling_signed(2, 1, 3, 1, 1)


# ---------------------------------------------------------------------------
# The signed entry's structure
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_half_turn_identity(n):
    # Rotating the board half a turn sends (w0,d0,w1,d1) to
    # (n+1-w0, 1-d0, n+1-w1, 1-d1) and scales the entry by (-1)^{d0+d1+1}.
    for (v, w), _ in inverse_coupling_matrix(n).items():
        w0, d0, w1, d1 = v.x, w.x - v.x, w.y, v.y - w.y
        lhs = coupling_signed(n, w0, d0, w1, d1)
        rhs = coupling_signed(n, n + 1 - w0, 1 - d0, n + 1 - w1, 1 - d1)
        if (d0 + d1) % 2 == 0:
            rhs = -rhs
        assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3, 4])
def test_first_column_reduction(n):
    # At w0 = 1 the signed entry is the first-column closed form over the
    # full tiling count, up to the sign-relation factor.
    denom = 2 ** (n * (n + 1) // 2)
    for d0 in range(1, n + 1):
        for w1 in range(1, n + 1):
            for d1 in range(1, n + 2 - w1):
                value = coupling_signed(n, 1, d0, w1, d1).to_fraction()
                want = Fraction(
                    (-1) ** ((d0 + d1 + 1) % 2) * first_column_hole_count(n, d0, w1), denom
                )
                assert value == want


# ---------------------------------------------------------------------------
# Pattern probabilities
# ---------------------------------------------------------------------------


def test_empty_pattern_probability():
    assert pattern_probability(3, Pattern.of()) == 1


def test_complete_matchings_of_order_two():
    matchings = []
    enumerate_matchings(build_diamond(2), matchings.append)
    assert len(matchings) == 8
    for m in matchings:
        assert pattern_probability(2, Pattern(m)) == Fraction(1, 8)


@pytest.mark.parametrize("n", [2, 3])
def test_pattern_probabilities_match_oracle(n):
    board = build_diamond(n)
    dominoes = [(v, w) for v in board.white_vertices for w in board.neighbors(v)]
    for d in dominoes:
        assert pattern_probability(n, Pattern.of(d)) == pattern_probability_oracle(
            n, Pattern.of(d)
        )
    # A sample of two-domino patterns; the exhaustive sweep lives in the
    # acceptance suite.
    checked = 0
    for d1, d2 in combinations(dominoes, 2):
        if len({d1[0], d2[0]}) + len({d1[1], d2[1]}) < 4:
            continue
        p = Pattern.of(d1, d2)
        assert pattern_probability(n, p) == pattern_probability_oracle(n, p)
        checked += 1
        if checked >= 40:
            break


def test_probabilities_bounded_with_dyadic_denominator():
    n = 3
    board = build_diamond(n)
    dominoes = [(v, w) for v in board.white_vertices for w in board.neighbors(v)]
    disjoint = [
        (d1, d2)
        for d1, d2 in combinations(dominoes, 2)
        if d1[0] != d2[0] and d1[1] != d2[1]
    ]
    for d1, d2 in disjoint[:60]:
        p = pattern_probability(n, Pattern.of(d1, d2))
        assert 0 <= p <= 1
        assert 2 ** (n * (n + 1) // 2) % p.denominator == 0


def test_disjoint_blocks_factorize():
    # Dominoes with vanishing cross-couplings make the probability
    # determinant block-diagonal, so probabilities multiply.
    n = 3
    board = build_diamond(n)
    dominoes = [(v, w) for v in board.white_vertices for w in board.neighbors(v)]
    found = 0
    for (v1, w1), (v2, w2) in combinations(dominoes, 2):
        if len({v1, v2}) < 2 or len({w1, w2}) < 2:
            continue
        if coupling(n, v1, w2).numerator or coupling(n, v2, w1).numerator:
            continue
        joint = pattern_probability(n, Pattern.of((v1, w1), (v2, w2)))
        split = pattern_probability(n, Pattern.of((v1, w1))) * pattern_probability(
            n, Pattern.of((v2, w2))
        )
        assert joint == split
        found += 1
    assert found > 0


# ---------------------------------------------------------------------------
# Orientation calibration
# ---------------------------------------------------------------------------


def test_calibration_returns_frozen_orientation():
    assert calibrate_orientation(3) is CALIBRATED_ORIENTATION
    assert CALIBRATED_ORIENTATION.name == "identity"


def test_calibration_stable_at_order_four():
    assert calibrate_orientation(4) is CALIBRATED_ORIENTATION


def test_transpose_orientation_defines_the_same_values():
    # The board's transpose symmetry survives calibration too: it yields
    # the same signed entries everywhere (and so the same probabilities).
    transpose = ORIENTATIONS[4]
    n = 3
    board = build_diamond(n)
    for v in board.white_vertices:
        for w in board.black_vertices:
            assert coupling_mod._signed_value_oriented(
                n, transpose, v, w
            ) == coupling_mod._signed_value_oriented(n, CALIBRATED_ORIENTATION, v, w)
            assert abs(coupling(n, v, w, transpose).to_fraction()) == abs(
                coupling(n, v, w).to_fraction()
            )


def test_mistranscribed_formula_fails_calibration(monkeypatch):
    real = coupling_mod.krawtchouk
    monkeypatch.setattr(
        coupling_mod, "krawtchouk", lambda a, b, c: real(a, b, b - c if 0 <= c <= b else c)
    )
    with pytest.raises(CalibrationError):
        calibrate_orientation(3)


def test_calibration_refuses_large_orders():
    with pytest.raises(ValueError):
        calibrate_orientation(6)
