import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqtri.errors import DomainError, IntegrityError, PrecisionError
from sqtri.figurate import (
    PENTAGONAL,
    SQUARE,
    TRIANGULAR,
    PolygonalSpec,
    Source,
    SquareTriangular,
    closed_form_digits,
    decimal_part_table,
    intersect_polygonal,
    polygonal,
    polygonal_index,
    scan_square_triangulars,
    square_triangular,
    square_triangular_closed,
    square_triangulars,
    write_bfile,
)
from sqtri.numeric import PrecisionConfig, display, triangular

from oracles import (
    pentagonal_by_recurrence,
    polygonal_set,
    square_triangulars_by_squares,
)

SQTRI = [
    1, 36, 1225, 41616, 1413721, 48024900, 1631432881, 55420693056,
    1882672131025, 63955431761796,
]


@pytest.mark.parametrize(
    "j, a, m, n",
    [
        (3, 1225, 49, 35),
        (8, 55420693056, 332928, 235416),
        (11, 46611179**2, 65918161, 46611179),
    ],
)
def test_square_triangular_examples(j, a, m, n):
    r = square_triangular(j)
    assert (r.a, r.m, r.n) == (a, m, n)
    assert r.a == r.n**2 and 2 * r.a == r.m * (r.m + 1)


def test_j11_from_pell_continuation():
    r = square_triangular(11)
    assert (r.pell.t, r.pell.s) == (131836323, 93222358)


def test_record_invariants_enforced():
    with pytest.raises(IntegrityError):
        SquareTriangular(1, 2, 1, 1)
    with pytest.raises(IntegrityError):
        SquareTriangular(2, 36, 7, 6)


def test_recurrence_matches_squares_oracle():
    assert [r.a for r in square_triangulars(10)] == SQTRI
    assert square_triangulars_by_squares(10**11) == SQTRI[:8]


@pytest.mark.parametrize(
    "j, digits, a", [(2, 30, 36), (1, 30, 1), (10, 40, 63955431761796)]
)
def test_closed_form_examples(j, digits, a):
    assert square_triangular_closed(j, PrecisionConfig(digits=digits)) == a


def test_closed_form_budget():
    assert closed_form_digits(10) == 26
    with pytest.raises(PrecisionError):
        square_triangular_closed(30, PrecisionConfig(digits=40))
    # binary64 carries 15 digits: fine for j <= 3, refused beyond
    assert square_triangular_closed(3, PrecisionConfig.binary64()) == 1225
    with pytest.raises(PrecisionError):
        square_triangular_closed(4, PrecisionConfig.binary64())


def test_closed_form_agrees_far_out():
    for j in (25, 60, 120):
        cfg = PrecisionConfig(digits=closed_form_digits(j))
        assert square_triangular_closed(j, cfg) == square_triangular(j).a


def test_three_generators_agree():
    scan = scan_square_triangulars(square_triangular(8).m)
    for j in range(1, 13):
        rec = square_triangular(j).a
        closed = square_triangular_closed(j, PrecisionConfig(digits=closed_form_digits(j)))
        assert rec == closed
        if j <= len(scan):
            assert scan[j - 1].a == rec
            assert scan[j - 1].source is Source.SCAN
    assert len(scan) == 8


def test_scan_examples():
    assert [r.a for r in scan_square_triangulars(65534)] == SQTRI[:7]
    assert [r.a for r in scan_square_triangulars(7)] == [1]
    assert [r.a for r in scan_square_triangulars(8)] == [1, 36]
    assert [r.a for r in scan_square_triangulars(1)] == [1]
    with pytest.raises(DomainError):
        scan_square_triangulars(0)


def test_scan_records_match_pell_mapping():
    for r in scan_square_triangulars(65534):
        p = square_triangular(r.j).pell
        assert (2 * r.m + 1, 2 * r.n) == (p.t, p.s)


def test_scan_parallel_is_order_deterministic():
    serial = scan_square_triangulars(400000)
    assert scan_square_triangulars(400000, workers=3) == serial


@pytest.mark.parametrize("m, n, v", [(3, 8, 36), (4, 5, 25), (5, 4, 22), (6, 0, 0)])
def test_polygonal_examples(m, n, v):
    assert polygonal(PolygonalSpec(m), n) == v


def test_pentagonal_matches_recurrence():
    assert [polygonal(PENTAGONAL, n) for n in range(1, 200)] == pentagonal_by_recurrence(199)


@given(st.integers(min_value=0, max_value=10**30))
def test_polygonal_specializations(n):
    assert polygonal(TRIANGULAR, n) == triangular(n)
    assert polygonal(SQUARE, n) == n * n


@given(st.integers(min_value=3, max_value=40), st.integers(min_value=1, max_value=10**12))
def test_polygonal_index_inverts(m, n):
    assert polygonal_index(m, polygonal(m, n)) == n


def test_polygon_sides_validated():
    with pytest.raises(DomainError):
        PolygonalSpec(2)
    with pytest.raises(DomainError):
        polygonal(3, -1)


def test_decimal_part_table_rows():
    rows = decimal_part_table(1, 10, PrecisionConfig(digits=20))
    r2 = rows[1]
    assert (r2.k, r2.triangular, display(r2.root, 4), r2.integer_part) == (2, 3, "1.7321", 1)
    assert display(r2.decimal_part, 4) == "0.7321"
    assert rows[7].triangular == 36 and display(rows[7].decimal_part, 4) == "0.0000"
    assert rows[0].triangular == 1 and rows[0].decimal_part == 0
    expected_dec = ["0.0000", "0.7321", "0.4495", "0.1623", "0.8730",
                    "0.5826", "0.2915", "0.0000", "0.7082", "0.4162"]
    assert [display(r.decimal_part, 4) for r in rows] == expected_dec
    for r in rows:
        assert 0 <= r.decimal_part < 1


def test_decimal_part_table_precision_guard():
    # sqrt(T_k) for k = 10**12 needs ~12 integer digits plus fraction
    k = 10**12
    with pytest.raises(PrecisionError):
        decimal_part_table(k, k, PrecisionConfig(digits=10))


def test_intersections():
    assert intersect_polygonal(TRIANGULAR, SQUARE, 10**14) == SQTRI
    assert intersect_polygonal(SQUARE, SQUARE, 100) == [n * n for n in range(1, 11)]


def test_triangular_pentagonal_against_set_oracle():
    expected = sorted(polygonal_set(3, 10**7) & polygonal_set(5, 10**7))
    assert expected == [1, 210, 40755, 7906276]
    got = intersect_polygonal(3, 5, 10**7)
    assert got == expected
    for v in got:
        assert polygonal(3, polygonal_index(3, v)) == v
        assert polygonal(5, polygonal_index(5, v)) == v


@pytest.mark.parametrize("m1, m2", [(3, 4), (3, 6), (4, 5), (5, 7), (3, 3)])
def test_intersect_matches_sets(m1, m2):
    limit = 10**6
    assert intersect_polygonal(m1, m2, limit) == sorted(
        polygonal_set(m1, limit) & polygonal_set(m2, limit)
    )


def test_intersect_equals_scan_up_to_1e9():
    limit = 10**9
    scanned = [r.a for r in scan_square_triangulars(50000) if r.a <= limit]
    assert intersect_polygonal(3, 4, limit) == scanned


def test_bfile_format():
    buf = io.StringIO()
    write_bfile([1, 36, 1225], buf)
    assert buf.getvalue() == "1 1\n2 36\n3 1225\n"
