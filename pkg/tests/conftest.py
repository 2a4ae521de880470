"""Worked-example matrices and graphs, transcribed by hand."""

import math

import numpy as np
import pytest

s = math.sqrt

# Clique-plus-independent-cluster example, n=9, k=6, r=2.
EX1_SPECTRUM = [7, 7, 1, 1, -3, -3, -3, -5, -5]
EX1_MUS = (6, 0, -4)
EX1_LAMBDA1 = (7, 1, -3, -5)
EX1_SIGNS = (-1, 1, -1)
_q = s(66) / 4
_w = s(35) / 4
_e = s(11) / 4
EX1_C = np.array(
    [
        [6, 0, 0, -_q, _q, 0, 0, 0, 0],
        [0, 0, 0, _w, -_w, 0, 0, 0, 0],
        [0, 0, -4, -_e, _e, 0, 0, 0, 0],
        [-_q, _w, -_e, -31 / 30, 29 / 30, 37 / 15, 9 / 5, 9 / 5, 1],
        [_q, -_w, _e, 29 / 30, -31 / 30, 37 / 15, 9 / 5, 9 / 5, 1],
        [0, 0, 0, 37 / 15, 37 / 15, -38 / 15, 9 / 5, 9 / 5, 1],
        [0, 0, 0, 9 / 5, 9 / 5, 9 / 5, -6 / 5, 9 / 5, 1],
        [0, 0, 0, 9 / 5, 9 / 5, 9 / 5, 9 / 5, -6 / 5, 1],
        [0, 0, 0, 1, 1, 1, 1, 1, 2],
    ]
)
EX1_BORDER = (-s(33) / 2, s(70) / 4, -s(22) / 4)

# Clique-plus-clique-cluster example, n=9, k=6, r=2.
EX2_SPECTRUM = [7, -3, -3, -3, -3, -5, -5, -5, -5]
EX2_LAMBDA1 = (7, -3, -3, -3)
_t = 5 * s(2) / 4
EX2_A = np.array([[-1, 5, 5, 5], [5, -1, 5, 5], [5, 5, -1, 5], [5, 5, 5, -1]]) / 2
EX2_B = (
    np.array(
        [
            [-29, -23, 4, 4, 4, 4],
            [-23, -29, 4, 4, 4, 4],
            [4, 4, -56, 4, 4, 4],
            [4, 4, 4, -56, 4, 4],
            [4, 4, 4, 4, -56, 4],
            [4, 4, 4, 4, 4, -56],
        ]
    )
    / 12
)
_third = 1 / 3
EX2_C = np.array(
    [
        [-1 / 2, 5 / 2, 5 / 2, _t, -_t, 0, 0, 0, 0],
        [5 / 2, -1 / 2, 5 / 2, _t, -_t, 0, 0, 0, 0],
        [5 / 2, 5 / 2, -1 / 2, _t, -_t, 0, 0, 0, 0],
        [_t, _t, _t, -29 / 12, -23 / 12, _third, _third, _third, _third],
        [-_t, -_t, -_t, -23 / 12, -29 / 12, _third, _third, _third, _third],
        [0, 0, 0, _third, _third, -14 / 3, _third, _third, _third],
        [0, 0, 0, _third, _third, _third, -14 / 3, _third, _third],
        [0, 0, 0, _third, _third, _third, _third, -14 / 3, _third],
        [0, 0, 0, _third, _third, _third, _third, _third, -14 / 3],
    ]
)

# Join-family example K_4 v (K_2 u K_3), n=9, i=4, j=2.
EX3_SPECTRUM = [8, -1, -1, -1, -2, -2, -2, -2, -2]
EX3_A = np.array([[2, 3, 3], [3, 2, 3], [3, 3, 2]], dtype=float)
_a, _b, _c, _d = -32 / 21, 10 / 21, -6 / 7, 1 / 7
EX3_B = np.array(
    [
        [_a, _b, _b, _c, _d, _d, _d],
        [_b, _a, _b, _c, _d, _d, _d],
        [_b, _b, _a, _c, _d, _d, _d],
        [_c, _c, _c, 8 / 7, _d, _d, _d],
        [_d, _d, _d, _d, -13 / 7, _d, _d],
        [_d, _d, _d, _d, _d, -13 / 7, _d],
        [_d, _d, _d, _d, _d, _d, -13 / 7],
    ]
)
EX3_U = np.array([-1, -1, -1, 3, 0, 0, 0]) / (2 * s(3))
_h = s(3) / 2
EX3_M = np.zeros((9, 9))
EX3_M[:2, :2] = [[2, 3], [3, 2]]
EX3_M[2:, 2:] = EX3_B
EX3_M[:2, 2:6] = [[-_h, -_h, -_h, 3 * _h]] * 2
EX3_M[2:6, :2] = EX3_M[:2, 2:6].T

# Edge lists read off the figures (1-based labels as drawn).
FIG1_EDGES = [
    (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7), (4, 8), (4, 9),
    (5, 6), (5, 7), (5, 8), (5, 9), (6, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9),
]
FIG2_EDGES = FIG1_EDGES + [(1, 2), (1, 3), (2, 3)]
JOIN_FIG_EDGES = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5),
    (3, 6), (3, 7), (3, 8), (3, 9), (4, 5), (4, 6), (4, 7), (4, 8), (4, 9), (5, 6), (5, 7),
    (5, 8), (5, 9), (6, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9),
]

# Five-vertex introductory matrix and its graph.
INTRO_A = np.array(
    [
        [-1, 0.5, 0, 0, 0],
        [0.5, 0, -2, 1, 0],
        [0, -2, 1, -1, 0],
        [0, 1, -1, 1, -1.5],
        [0, 0, 0, -1.5, 2],
    ]
)
INTRO_EDGES = [(1, 2), (2, 3), (2, 4), (3, 4), (4, 5)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_feasible_spectrum(rng, n, n_distinct, integer=False):
    """``n`` values with ``n_distinct`` distinct ones, at least two repeated."""
    while True:
        if integer:
            vals = rng.integers(-10, 11, n_distinct).astype(float)
        else:
            vals = rng.uniform(-10, 10, n_distinct)
        if len(set(vals.tolist())) == n_distinct:
            break
    counts = [1] * n_distinct
    counts[0] += 1
    counts[1] += 1
    for _ in range(n - n_distinct - 2):
        counts[int(rng.integers(n_distinct))] += 1
    return [float(v) for v, c in zip(vals, counts) for _ in range(c)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
