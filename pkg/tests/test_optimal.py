"""Closed-form errors, variant counting and enumeration, codebook geometry."""

import json
from fractions import Fraction

import pytest

from cantorquant.measure import Point
from cantorquant.optimal import (
    Codebook,
    Regime,
    codebook_for,
    count_variants,
    enumerate_variants,
    grid_cells,
    level,
    optimal_codebook,
    quantization_error,
    spread_indices,
    variant_by_index,
    variant_index,
)


def balanced_split_error(n, cache={1: Fraction(1, 4), 2: Fraction(5, 36),
                                   3: Fraction(1, 12)}):
    """Independent oracle: split n as evenly as possible over the four
    child cells and recurse, each child contributing at 1/36 scale."""
    if n not in cache:
        q, r = divmod(n, 4)
        parts = [q + 1] * r + [q] * (4 - r)
        cache[n] = sum(balanced_split_error(m) for m in parts) * Fraction(1, 36)
    return cache[n]


class TestLevel:
    @pytest.mark.parametrize(
        "n,ell,regime",
        [(2, 0, Regime.LOW), (3, 0, Regime.HIGH), (4, 1, Regime.POWER),
         (5, 1, Regime.LOW), (8, 1, Regime.LOW), (9, 1, Regime.HIGH),
         (13, 1, Regime.HIGH), (15, 1, Regime.HIGH), (16, 2, Regime.POWER),
         (17, 2, Regime.LOW), (63, 2, Regime.HIGH), (64, 3, Regime.POWER)],
    )
    def test_examples(self, n, ell, regime):
        assert level(n) == (ell, regime)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            level(1)


class TestClosedForm:
    @pytest.mark.parametrize(
        "n,value",
        [(1, Fraction(1, 4)), (2, Fraction(5, 36)), (3, Fraction(1, 12)),
         (4, Fraction(1, 36)), (5, Fraction(2, 81)), (6, Fraction(7, 324)),
         (9, Fraction(1, 72)), (10, Fraction(1, 81)), (13, Fraction(5, 648)),
         (15, Fraction(1, 216)), (16, Fraction(1, 324))],
    )
    def test_values(self, n, value):
        assert quantization_error(n) == value

    def test_matches_balanced_split_recursion(self):
        for n in range(1, 1025):
            assert quantization_error(n) == balanced_split_error(n), n

    def test_scaling(self):
        for n in range(1, 65):
            assert quantization_error(4 * n) == quantization_error(n) / 9

    def test_strictly_decreasing(self):
        values = [quantization_error(n) for n in range(1, 257)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            quantization_error(0)


class TestCounting:
    @pytest.mark.parametrize(
        "n,count",
        [(2, 2), (3, 4), (4, 1), (5, 8), (6, 24), (7, 32), (8, 16),
         (9, 128), (10, 384), (11, 512), (12, 256), (13, 256), (14, 96),
         (15, 16), (16, 1), (24, 3294720), (64, 1), (256, 1)],
    )
    def test_examples(self, n, count):
        assert count_variants(n) == count

    def test_collapses_to_one_at_powers(self):
        # The upper band narrows to the full-grid construction.
        assert count_variants(15) == 16
        assert count_variants(16) == 1
        assert count_variants(63) > 1
        assert count_variants(64) == 1


class TestVariantEnumeration:
    @pytest.mark.parametrize("n", [2, 3, 5, 6, 9, 13, 14, 15])
    def test_index_roundtrip_and_distinctness(self, n):
        total = count_variants(n)
        seen = set()
        for i in range(total):
            spec = variant_by_index(n, i)
            assert variant_index(spec) == i
            book = codebook_for(spec)
            assert len(book) == n
            seen.add(tuple((p.x, p.y) for p in book))
        assert len(seen) == total

    def test_enumerate_matches_unranking(self):
        for n in (5, 9, 13):
            listed = list(enumerate_variants(n))
            assert listed == [variant_by_index(n, i) for i in range(len(listed))]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            variant_by_index(5, 8)
        with pytest.raises(ValueError):
            variant_by_index(5, -1)

    def test_points_inside_unit_square(self):
        for n in (2, 3, 4, 5, 9, 13, 16):
            for i in range(count_variants(n)):
                for p in optimal_codebook(n, i):
                    assert 0 <= p.x <= 1 and 0 <= p.y <= 1


class TestSpreadIndices:
    def test_small_total_keeps_everything(self):
        assert spread_indices(5, 100) == (0, 1, 2, 3, 4)

    def test_endpoints_and_monotone(self):
        picked = spread_indices(10**6, 100)
        assert picked[0] == 0 and picked[-1] == 10**6 - 1
        assert len(picked) == 100
        assert all(a < b for a, b in zip(picked, picked[1:]))

    def test_exact_integer_spacing(self):
        assert spread_indices(7, 3) == (0, 3, 6)


class TestKnownCodebooks:
    def test_smallest_pairs(self):
        books = {
            tuple((p.x, p.y) for p in optimal_codebook(2, i)) for i in range(2)
        }
        h = ((Fraction(1, 6), Fraction(1, 2)), (Fraction(5, 6), Fraction(1, 2)))
        v = ((Fraction(1, 2), Fraction(1, 6)), (Fraction(1, 2), Fraction(5, 6)))
        assert books == {h, v}

    def test_single_point(self):
        book = optimal_codebook(1)
        assert list(book) == [Point(Fraction(1, 2), Fraction(1, 2))]
        with pytest.raises(ValueError):
            optimal_codebook(1, 1)

    def test_quadruple_grid(self):
        book = optimal_codebook(4)
        sixth = Fraction(1, 6)
        five = Fraction(5, 6)
        assert set((p.x, p.y) for p in book) == {
            (sixth, sixth), (sixth, five), (five, sixth), (five, five)
        }

    def test_distinguished_nine_point_set(self):
        book = optimal_codebook(9, 0)
        expected = {
            (Fraction(1, 18), Fraction(1, 6)), (Fraction(1, 18), Fraction(5, 6)),
            (Fraction(5, 18), Fraction(1, 18)), (Fraction(5, 18), Fraction(5, 18)),
            (Fraction(5, 18), Fraction(5, 6)), (Fraction(13, 18), Fraction(1, 6)),
            (Fraction(13, 18), Fraction(5, 6)), (Fraction(17, 18), Fraction(1, 6)),
            (Fraction(17, 18), Fraction(5, 6)),
        }
        assert set((p.x, p.y) for p in book) == expected

    def test_grid_cells_level_one(self):
        cells = grid_cells(1)
        assert len(cells) == 4
        assert [str(s) + str(t) for s, t in cells] == ["11", "12", "21", "22"]


class TestCodebookContainer:
    def test_sorted_and_sized(self):
        book = Codebook.of([Point.of(1, 0), Point.of(0, 1)])
        assert book.n == 2
        assert list(book)[0] == Point.of(0, 1)

    def test_rejects_empty_and_duplicates(self):
        with pytest.raises(ValueError):
            Codebook.of([])
        with pytest.raises(ValueError):
            Codebook.of([Point.of(0, 0), Point.of(0, 0)])

    def test_json_roundtrip(self):
        book = optimal_codebook(5, 3)
        again = Codebook.from_json(book.to_json())
        assert again == book
        obj = json.loads(book.to_json())
        assert obj["n"] == 5
        assert len(obj["points"]) == 5

    def test_json_n_mismatch(self):
        obj = {"n": 3, "points": [{"x": "0", "y": "0"}]}
        with pytest.raises(ValueError):
            Codebook.from_json_obj(obj)
