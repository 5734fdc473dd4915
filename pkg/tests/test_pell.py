import pytest

from sqtri.errors import DomainError, IntegrityError
from sqtri.pell import (
    Convergent,
    PellSolution,
    fundamental_solution,
    next_solution,
    solution,
    solutions,
    sqrt2_convergents,
)

from oracles import pell_by_search

# the two tables of solutions, i = 1..10
TABLE = [
    (3, 2), (17, 12), (99, 70), (577, 408), (3363, 2378), (19601, 13860),
    (114243, 80782), (665857, 470832), (3880899, 2744210), (22619537, 15994428),
]


def test_convergents():
    cs = sqrt2_convergents(3)
    assert [(c.numerator, c.denominator, c.depth) for c in cs] == [
        (1, 1, 0), (3, 2, 1), (7, 5, 2), (17, 12, 3),
    ]
    assert sqrt2_convergents(0) == [Convergent(1, 1, 0)]
    assert 17**2 - 2 * 12**2 == 1
    with pytest.raises(DomainError):
        sqrt2_convergents(-1)


def test_convergent_lowest_terms():
    with pytest.raises(IntegrityError):
        Convergent(6, 4, 1)


def test_odd_convergents_reproduce_solutions():
    cs = sqrt2_convergents(15)
    odd = [(c.numerator, c.denominator) for c in cs if c.depth % 2 == 1]
    assert odd == [(s.t, s.s) for s in solutions(8)]


def test_fundamental():
    f = fundamental_solution()
    assert (f.index, f.t, f.s) == (1, 3, 2)
    assert f.t % 2 == 1 and f.s % 2 == 0
    assert 3**2 - 2 * 2**2 == 1


@pytest.mark.parametrize(
    "prev, nxt",
    [
        ((3, 2), (17, 12)),
        ((19601, 13860), (114243, 80782)),
        ((22619537, 15994428), (131836323, 93222358)),
    ],
)
def test_next_solution(prev, nxt):
    p = PellSolution(5, *prev)
    n = next_solution(p)
    assert (n.t, n.s) == nxt
    assert n.index == 6
    assert n.t**2 - 2 * n.s**2 == 1


def test_next_solution_rejects_corrupt_input():
    p = PellSolution(1, 3, 2)
    object.__setattr__(p, "t", 4)
    with pytest.raises(IntegrityError):
        next_solution(p)


def test_invalid_solutions_rejected():
    with pytest.raises(IntegrityError):
        PellSolution(1, 5, 3)
    with pytest.raises(IntegrityError):
        PellSolution(0, 1, 0)
    with pytest.raises(IntegrityError):
        PellSolution(1, 3, 3)


@pytest.mark.parametrize("i, ts", [(5, (3363, 2378)), (1, (3, 2)), (10, (22619537, 15994428))])
def test_solution_examples(i, ts):
    s = solution(i)
    assert (s.t, s.s) == ts and s.index == i


def test_solution_table():
    assert [(s.t, s.s) for s in solutions(10)] == TABLE


def test_solution_matches_brute_force_search():
    assert [(s.t, s.s) for s in solutions(6)] == pell_by_search(6)


def test_powering_equals_recurrence_and_invariants():
    rec = solutions(30)
    for i, r in enumerate(rec, start=1):
        p = solution(i)
        assert p == r
        assert p.t**2 - 2 * p.s**2 == 1
        assert p.t % 2 == 1 and p.s % 2 == 0
    assert all(b.t > a.t and b.s > a.s for a, b in zip(rec, rec[1:]))


def test_solution_index_domain():
    with pytest.raises(DomainError):
        solution(0)


def test_large_index_is_exact():
    s = solution(500)
    assert s.t**2 - 2 * s.s**2 == 1
