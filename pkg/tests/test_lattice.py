"""Board construction, coordinates, and pattern validation."""

import pytest
from hypothesis import given, strategies as st

from aztecdimers.lattice import (
    BlackRect,
    Board,
    BoardError,
    Color,
    Pattern,
    PatternError,
    Vertex,
    WhiteRect,
    black,
    build_diamond,
    build_rectangle,
    remove_vertices,
    validate_pattern,
    white,
)


def test_diamond_order_one():
    board = build_diamond(1)
    assert len(board.whites) + len(board.blacks) == 4
    assert sum(1 for _ in board.edges()) == 4


@pytest.mark.parametrize("n,vertices,edges", [(2, 12, 16), (3, 24, 36)])
def test_diamond_small_counts(n, vertices, edges):
    board = build_diamond(n)
    assert len(board.whites) + len(board.blacks) == vertices
    assert sum(1 for _ in board.edges()) == edges


@pytest.mark.parametrize("n", range(1, 9))
def test_diamond_counts_general(n):
    board = build_diamond(n)
    assert len(board.whites) == len(board.blacks) == n * (n + 1)
    assert sum(1 for _ in board.edges()) == 4 * n * n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diamond_edges_are_the_quadrilateral_families(n):
    # The quadrilateral around each (2r+1, 2s+1) contributes four edges.
    quads = set()
    for r in range(n):
        for s in range(n):
            corners = [(2 * r, 2 * s + 1), (2 * r + 1, 2 * s + 2),
                       (2 * r + 2, 2 * s + 1), (2 * r + 1, 2 * s)]
            for a, b in zip(corners, corners[1:] + corners[:1]):
                quads.add(frozenset((a, b)))
    board = build_diamond(n)
    built = {frozenset((w.cart, b.cart)) for w, b in board.edges()}
    assert built == quads


def test_diamond_diagonal_ranges():
    board = build_diamond(3)
    assert {(v.x, v.y) for v in board.whites} == {
        (x, y) for x in range(1, 4) for y in range(1, 5)
    }
    assert {(v.x, v.y) for v in board.blacks} == {
        (x, y) for x in range(1, 5) for y in range(1, 4)
    }


def test_invalid_order_rejected():
    with pytest.raises(BoardError):
        build_diamond(0)
    with pytest.raises(BoardError):
        build_diamond(-2)


@given(
    color=st.sampled_from([Color.WHITE, Color.BLACK]),
    x=st.integers(-30, 30),
    y=st.integers(-30, 30),
)
def test_cart_roundtrip_is_identity(color, x, y):
    v = Vertex(color, x, y)
    assert Vertex.from_cart(*v.cart) == v


def test_from_cart_rejects_off_lattice():
    with pytest.raises(BoardError):
        Vertex.from_cart(0, 0)
    with pytest.raises(BoardError):
        Vertex.from_cart(1, 1)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_adjacency_symmetric_and_bipartite(n):
    board = build_diamond(n)
    for v in board.white_vertices + board.black_vertices:
        for u in board.neighbors(v):
            assert u.color is v.color.opposite
            assert v in board.neighbors(u)


def test_white_rectangle_example():
    board = build_rectangle(WhiteRect, 2, 1, [1])
    assert len(board.whites) == 3  # 2 grid whites + 1 tooth
    assert len(board.blacks) == 3
    assert white(1, 2) in board


def test_black_rectangle_too_many_dents():
    with pytest.raises(BoardError):
        build_rectangle(BlackRect, 2, 1, [1, 2])


def test_black_rectangle_single_edge():
    board = build_rectangle(BlackRect, 1, 1, [1])
    assert len(board.whites) == 1 and len(board.blacks) == 1
    assert list(board.edges()) == [(white(1, 1), black(2, 1))]


def test_rectangle_notch_validation():
    with pytest.raises(BoardError):
        build_rectangle(BlackRect, 2, 2, [2, 1])  # not increasing
    with pytest.raises(BoardError):
        build_rectangle(BlackRect, 2, 2, [1, 4])  # out of range
    with pytest.raises(BoardError):
        build_rectangle(WhiteRect, 2, 2, [1, 3])  # teeth capped at n
    with pytest.raises(BoardError):
        build_rectangle(object, 2, 2, [1])


def test_remove_no_vertices_is_identity():
    board = build_diamond(2)
    assert remove_vertices(board, []) == board


def test_remove_vertices_counts_and_queries():
    board = build_diamond(2)
    holed = remove_vertices(board, [white(1, 1), black(1, 1)])
    assert holed.vertex_count() == 10
    assert white(1, 1) not in holed
    assert all(white(1, 1) not in holed.neighbors(b) for b in holed.black_vertices)


def test_remove_two_whites_is_legal():
    board = build_diamond(2)
    holed = remove_vertices(board, [white(1, 1), white(2, 1)])
    assert len(holed.white_vertices) == len(holed.black_vertices) - 2


def test_remove_vertex_errors():
    board = build_diamond(2)
    with pytest.raises(BoardError):
        remove_vertices(board, [white(9, 9)])
    with pytest.raises(BoardError):
        remove_vertices(board, [white(1, 1), white(1, 1)])
    holed = remove_vertices(board, [white(1, 1)])
    with pytest.raises(BoardError):
        remove_vertices(holed, [white(1, 1)])


def test_validate_empty_pattern():
    assert validate_pattern(build_diamond(2), Pattern.of()) == ([], [])


def test_validate_single_domino():
    board = build_diamond(2)
    w, b = next(iter(board.edges()))
    assert validate_pattern(board, Pattern.of((w, b))) == ([w], [b])


def test_validate_rejects_overlap():
    board = build_diamond(2)
    w = white(1, 1)
    b1, b2 = board.neighbors(w)
    with pytest.raises(PatternError):
        validate_pattern(board, Pattern.of((w, b1), (w, b2)))


def test_validate_rejects_non_edge():
    board = build_diamond(2)
    with pytest.raises(PatternError):
        validate_pattern(board, Pattern.of((white(1, 1), black(3, 2))))
    # color roles must be (white, black)
    with pytest.raises(PatternError):
        validate_pattern(board, Pattern.of((black(1, 1), white(1, 1))))


def test_validate_skips_holed_edges():
    board = remove_vertices(build_diamond(2), [black(1, 1)])
    with pytest.raises(PatternError):
        validate_pattern(board, Pattern.of((white(1, 1), black(1, 1))))
