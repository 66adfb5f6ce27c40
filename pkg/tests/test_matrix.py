import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import families
from test_family import every_family
from ucsets import (
    BitMatrix,
    SetFamily,
    characteristic_matrix,
    column_sums,
    complement,
    complement_family,
    element_stats,
    is_intersection_closed,
    is_intersection_closed_matrix,
    is_reduced,
    is_reduced_matrix,
    is_union_closed,
    is_union_closed_matrix,
    product_matrix,
    product_sum,
)
from ucsets.matrix import MatrixError, format_bm, gram_sum, parse_bm, to_family


def test_characteristic_matrix_small():
    assert characteristic_matrix(SetFamily(1, (0, 1))).tolist() == [[0], [1]]


def test_characteristic_matrix_counterexample(counterexample):
    assert characteristic_matrix(counterexample).tolist() == [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [1, 1, 1],
    ]


def test_round_trip(counterexample):
    F = characteristic_matrix(counterexample)
    assert characteristic_matrix(to_family(F)) == F
    assert BitMatrix.from_lists(F.tolist()) == F


def test_complement():
    F = BitMatrix.from_lists([[0, 1]])
    assert complement(F).tolist() == [[1, 0]]
    assert complement(complement(F)) == F


@given(families(max_n=10))
def test_complement_matches_family(f):
    assert complement(characteristic_matrix(f)) == characteristic_matrix(complement_family(f))


def test_invalid_cells():
    with pytest.raises(MatrixError):
        BitMatrix.from_lists([[0, 2]])
    with pytest.raises(MatrixError):
        BitMatrix(0, 1, ())


class TestProducts:
    def test_counterexample_sums(self, counterexample):
        F = characteristic_matrix(counterexample)
        Fc = complement(F)
        assert product_sum(F, F) == 19
        assert product_sum(F, Fc) == 16
        sets = oracles.members(counterexample)
        assert oracles.pair_total(sets, lambda a, b: a & b) == 19
        assert oracles.pair_total(sets, lambda a, b: a - b) == 16

    def test_zero_matrix(self):
        Z = BitMatrix(3, 2, (0, 0, 0))
        assert product_sum(Z, Z) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(MatrixError):
            product_sum(BitMatrix(1, 2, (0,)), BitMatrix(1, 3, (0,)))
        with pytest.raises(MatrixError):
            product_sum(BitMatrix(1, 2, (0,)), BitMatrix(3, 1, (0, 0, 0)), transpose_b=False)

    def test_untransposed_matches_numpy(self):
        A = BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])
        B = BitMatrix.from_lists([[1, 1], [0, 1], [1, 0]])
        assert product_sum(A, B, transpose_b=False) == int((A.to_array() @ B.to_array()).sum())

    @settings(max_examples=1000)
    @given(families(max_n=8, max_m=12))
    def test_entry_identities(self, f):
        F = characteristic_matrix(f)
        Fc = complement(F)
        sets = oracles.members(f)
        S = oracles.ground(f)
        ff, ffc, fcf, fcfc = (
            product_matrix(F, F),
            product_matrix(F, Fc),
            product_matrix(Fc, F),
            product_matrix(Fc, Fc),
        )
        for h, a in enumerate(sets):
            for k, b in enumerate(sets):
                assert ff[h, k] == len(a & b)
                assert ffc[h, k] == len(a - b)
                assert fcf[h, k] == len(b - a)
                assert fcfc[h, k] == len((S - a) & (S - b))
        # sum-only functional agrees with the materialized products
        assert product_sum(F, F) == int(ff.sum())
        assert product_sum(F, Fc) == int(ffc.sum())
        assert product_sum(Fc, F) == int(fcf.sum())
        assert product_sum(Fc, Fc) == int(fcfc.sum())

    @given(families(max_n=10))
    def test_gram_sum_identity(self, f):
        F = characteristic_matrix(f)
        C = F.to_array() - complement(F).to_array()
        assert set(np.unique(C)) <= {-1, 1}
        full = C @ C.T
        assert int(full.sum()) == gram_sum(C)
        assert gram_sum(C) == sum(d * d for d in element_stats(f).delta)

    @given(families(max_n=10))
    def test_pair_total_split(self, f):
        F = characteristic_matrix(f)
        lhs = product_sum(F, complement(F)) + product_sum(F, F)
        assert lhs == f.m * sum(column_sums(F))

    def test_big_integers(self):
        cols = np.array([[2**40, 3]], dtype=object)
        assert gram_sum(cols) == 2**80 + 9


def test_column_sums(counterexample):
    assert column_sums(characteristic_matrix(counterexample)) == (3, 3, 1)
    assert column_sums(BitMatrix.from_lists([[1, 1], [1, 1]])) == (2, 2)


class TestReducedMatrix:
    def test_counterexample(self, counterexample):
        ok, msg = is_reduced_matrix(characteristic_matrix(counterexample))
        assert ok and msg == "reduced"

    def test_missing_all_one_row(self):
        ok, msg = is_reduced_matrix(BitMatrix.from_lists([[0, 0], [1, 0], [0, 1]]))
        assert not ok and "all-one" in msg

    def test_one_column(self):
        assert is_reduced_matrix(BitMatrix.from_lists([[0], [1]]))[0]

    def test_repeated_rows(self):
        ok, msg = is_reduced_matrix(BitMatrix(3, 1, (0, 1, 1)))
        assert not ok and "equal" in msg

    def test_column_not_isolated(self):
        ok, msg = is_reduced_matrix(BitMatrix.from_lists([[0, 0], [1, 1]]))
        assert not ok and "column 0" in msg

    def test_disagrees_with_family_definition_off_closed_families(self):
        # c is separated ({a,c} minus {a,b}) but no two rows differ only at c
        f = SetFamily.from_sets([[], ["b"], ["a", "b"], ["a", "c"], ["d"], list("abcd")], "abcd")
        assert is_reduced(f)
        assert not is_union_closed(f) and not is_intersection_closed(f)
        assert is_reduced_matrix(characteristic_matrix(f)) == (False, "no two rows differ only at column 2")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bridge_coherence_exhaustive(n):
    for f in every_family(n):
        F = characteristic_matrix(f)
        uc, ic = is_union_closed(f), is_intersection_closed(f)
        assert uc == is_union_closed_matrix(F)
        assert ic == is_intersection_closed_matrix(F)
        if uc or ic:
            assert bool(is_reduced(f)) == is_reduced_matrix(F)[0]


def test_bridge_coherence_closed_n4():
    for f in every_family_n4_closed():
        assert bool(is_reduced(f)) == is_reduced_matrix(characteristic_matrix(f))[0]


def every_family_n4_closed():
    mid = list(range(1, 15))
    for mask in range(1 << 14):
        f = SetFamily(4, (0, *[mid[i] for i in range(14) if mask >> i & 1], 15))
        if is_union_closed(f) or is_intersection_closed(f):
            yield f


class TestBmFormat:
    def test_round_trip(self, counterexample):
        F = characteristic_matrix(counterexample)
        text = format_bm(F)
        assert text.startswith("# 5 3\n000\n100\n")
        assert parse_bm(text) == F

    def test_header_mismatch(self):
        with pytest.raises(MatrixError, match="header"):
            parse_bm("# 2 2\n01\n")

    def test_bad_char(self):
        with pytest.raises(MatrixError, match=":1:"):
            parse_bm("0x\n")

    @given(st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=1, max_size=6))
    def test_any_matrix_round_trips(self, cells):
        F = BitMatrix.from_lists(cells)
        assert parse_bm(format_bm(F, header=False)) == F
