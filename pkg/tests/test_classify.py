import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cayleychi import (
    ExceptionalForm,
    IntMatrix,
    MHNF,
    NotCanonicalizableError,
    PreconditionError,
    RelationMatrix,
    ShapeError,
    TriangleForm,
    UnsupportedShapeError,
    canonicalize_3x2,
    chromatic_number,
    classify_4x2,
    classify_canonical_3x2,
    classify_single_column,
    classify_triangle_form,
    collapse_rows,
    column_hnf,
    is_bipartite,
    is_mhnf_matrix,
    loop_witness,
    normalize,
    reduce_single_row,
    three_divisible_row_bound,
    triangle_certificates,
)


def rm(rows):
    return RelationMatrix.from_rows(rows)


class TestSingleColumn:
    def test_five_cycle(self):
        res = classify_single_column(rm([[5]]))
        assert res.chi == 3 and res.certificate.entry_sum == 5

    def test_even_sum(self):
        assert classify_single_column(rm([[1], [1]])).chi == 2

    def test_unit_column_loops(self):
        res = classify_single_column(rm([[0], [0], [1], [0]]))
        assert res.has_loops
        assert res.certificate.basis_index == 3

    def test_negative_unit(self):
        assert classify_single_column(rm([[-1]])).has_loops

    def test_odd_sum(self):
        assert classify_single_column(rm([[2], [3]])).chi == 3

    def test_needs_one_column(self):
        with pytest.raises(ShapeError):
            classify_single_column(rm([[1, 2]]))


class TestReduceSingleRow:
    def test_paper_chain(self):
        out, record = reduce_single_row(rm([[10, 25]]))
        assert out.matrix == IntMatrix.from_rows([[5]])
        assert (IntMatrix.from_rows([[10, 25]]) @ record.u).row(1)[0] == 5

    def test_single_entry(self):
        out, _ = reduce_single_row(rm([[7]]))
        assert out.matrix == IntMatrix.from_rows([[7]])

    def test_gcd(self):
        out, _ = reduce_single_row(rm([[4, 6]]))
        assert out.matrix == IntMatrix.from_rows([[2]])


class TestMHNFConditions:
    def test_examples(self):
        assert is_mhnf_matrix(IntMatrix.from_rows([[3, 0], [0, 1], [-2, 2]]))
        assert is_mhnf_matrix(IntMatrix.from_rows([[1, 0], [0, 1], [3, 4]]))
        # condition 2 fails
        assert not is_mhnf_matrix(IntMatrix.from_rows([[3, 1], [0, 1], [-2, 2]]))
        # condition 4 fails
        assert not is_mhnf_matrix(IntMatrix.from_rows([[3, 0], [0, 4], [-2, 2]]))
        # condition 6 fails
        assert not is_mhnf_matrix(IntMatrix.from_rows([[1, 0], [-1, 1], [-1, 1]]))

    def test_mhnf_type_validates(self):
        from cayleychi import TransformRecord

        with pytest.raises(ShapeError):
            MHNF(IntMatrix.from_rows([[3, 1], [0, 1], [-2, 2]]), TransformRecord.identity(3, 2))


def valid_3x2_inputs():
    entries = st.integers(min_value=-5, max_value=5)
    return (
        st.lists(st.lists(entries, min_size=2, max_size=2), min_size=3, max_size=3)
        .map(RelationMatrix.from_rows)
        .filter(
            lambda m: not any(m.matrix.is_zero_row(i) for i in (1, 2, 3))
            and not any(m.matrix.is_zero_col(j) for j in (1, 2))
            and column_hnf(m.matrix).rank == 2
            and loop_witness(m) is None
        )
    )


class TestCanonicalize3x2:
    def test_identity_on_canonical_input(self):
        m = rm([[3, 0], [0, 1], [-2, 2]])
        form = canonicalize_3x2(m)
        assert form.matrix == m.matrix
        assert form.transform.p == IntMatrix.identity(3)
        assert form.transform.u == IntMatrix.identity(2)

    def test_concrete_reduction(self):
        m = rm([[2, 0], [1, 1], [0, 3]])
        form = canonicalize_3x2(m)
        assert form.matrix == IntMatrix.from_rows([[3, 0], [0, 1], [-2, 2]])
        assert form.transform.verify(m.matrix, form.matrix)

    def test_rejects_zero_row(self):
        with pytest.raises(PreconditionError) as err:
            canonicalize_3x2(rm([[0, 0], [1, 1], [0, 3]]))
        assert err.value.check == "zero_row"

    def test_rejects_loops(self):
        with pytest.raises(PreconditionError) as err:
            canonicalize_3x2(rm([[1, 0], [0, 1], [0, 4]]))
        assert err.value.check == "loops"

    @settings(max_examples=150, deadline=None)
    @given(valid_3x2_inputs())
    def test_always_produces_verified_form(self, m):
        form = canonicalize_3x2(m)
        assert is_mhnf_matrix(form.matrix)
        assert form.transform.verify(m.matrix, form.matrix)


class TestClassifyCanonical3x2:
    def classify(self, rows):
        return classify_canonical_3x2(canonicalize_3x2(rm(rows)))

    def test_exceptional_case_i(self):
        res = self.classify([[1, 0], [0, 1], [3, 4]])
        assert res.chi == 4
        assert res.certificate.case_id == "i" and res.certificate.k == 1

    def test_even_sums(self):
        assert self.classify([[3, 0], [0, 2], [-1, 4]]).chi == 2

    def test_otherwise_three(self):
        assert self.classify([[3, 0], [0, 1], [-2, 2]]).chi == 3

    def test_loop_shape_direct(self):
        from cayleychi import TransformRecord

        form = MHNF(
            IntMatrix.from_rows([[1, 0], [0, 1], [0, 4]]), TransformRecord.identity(3, 2)
        )
        assert classify_canonical_3x2(form).has_loops

    @pytest.mark.parametrize(
        "rows,case",
        [
            ([[1, 0], [0, 1], [3, 4]], "i"),
            ([[1, 0], [0, -1], [-3, 2]], "ii"),
            ([[1, 0], [-1, 2], [2, 5]], "iii"),
            ([[1, 0], [-1, -2], [-4, 1]], "iv"),
            ([[1, 0], [0, -1], [6, 2]], "v"),
            ([[1, 0], [-1, 4], [-1, 7]], "vi"),
        ],
    )
    def test_exceptional_families(self, rows, case):
        res = self.classify(rows)
        assert res.chi == 4
        assert isinstance(res.certificate, ExceptionalForm)
        assert res.certificate.case_id == case
        assert res.certificate.check(rm(rows).matrix)

    def test_family_pattern_reconstruction(self):
        res = self.classify([[1, 0], [0, 1], [3, 4]])
        assert res.certificate.pattern() == IntMatrix.from_rows([[1, 0], [0, 1], [3, 4]])


class TestThreeDivisibleRow:
    def test_fires(self):
        assert three_divisible_row_bound(rm([[3, 0], [1, 1], [1, 2]])) == 3

    def test_fires_4x2(self):
        assert three_divisible_row_bound(rm([[3, 3], [1, 0], [0, 1], [1, 1]])) == 3

    def test_silent(self):
        assert three_divisible_row_bound(rm([[1, 0], [1, 1], [1, 2], [0, 1]])) is None

    def test_rejects_zero_row(self):
        with pytest.raises(PreconditionError):
            three_divisible_row_bound(rm([[0, 0], [1, 1], [1, 2]]))


class TestTriangleForm:
    def test_four(self):
        res = classify_triangle_form(rm([[1, 0], [1, 1], [1, 2], [0, 1]]))
        assert res.chi == 4
        assert isinstance(res.certificate, TriangleForm)

    def test_three_bad_sum(self):
        assert classify_triangle_form(rm([[1, 1], [1, 2], [1, 4], [0, 1]])).chi == 3

    def test_three_bad_pivot(self):
        assert classify_triangle_form(rm([[1, 0], [1, 1], [1, 2], [0, 2]])).chi == 3

    def test_negative_unit(self):
        res = classify_triangle_form(rm([[1, 0], [1, 1], [1, 2], [0, -1]]))
        assert res.chi == 4
        assert res.certificate.check(rm([[1, 0], [1, 1], [1, 2], [0, -1]]).matrix)


class TestClassify4x2:
    def test_canonical_four_with_identity_certificate(self):
        res = classify_4x2(rm([[1, 0], [1, 1], [1, 2], [0, 1]]))
        assert res.chi == 4
        cert = res.certificate
        assert cert.transform.p == IntMatrix.identity(4)
        assert cert.transform.u == IntMatrix.identity(2)
        assert (cert.a, cert.b, cert.c) == (0, 1, 2)

    def test_three(self):
        res = classify_4x2(rm([[1, 1], [1, 2], [1, 4], [0, 1]]))
        assert res.chi == 3

    def test_transformed_four_recovers_certificate(self):
        m = rm([[0, 1], [1, 2], [-1, -3], [1, 1]])
        res = classify_4x2(m)
        assert res.chi == 4
        assert res.certificate.check(m.matrix)

    def test_precondition_names(self):
        with pytest.raises(PreconditionError) as err:
            classify_4x2(rm([[0, 0], [1, 1], [1, 2], [0, 1]]))
        assert err.value.check == "zero_row"
        with pytest.raises(PreconditionError) as err:
            classify_4x2(rm([[1, 2], [1, 2], [2, 4], [3, 6]]))
        assert err.value.check == "rank"
        with pytest.raises(PreconditionError) as err:
            classify_4x2(rm([[1, 0], [0, 1], [1, 4], [2, 1]]))
        assert err.value.check == "loops"
        with pytest.raises(PreconditionError) as err:
            classify_4x2(rm([[2, 0], [0, 2], [2, 2], [0, 4]]))
        assert err.value.check == "bipartite"

    def test_full_search_agrees(self):
        rng = random.Random(5)
        checked = 0
        while checked < 120:
            m = IntMatrix(tuple(tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(4)))
            r = RelationMatrix(m)
            if any(m.is_zero_row(i) for i in (1, 2, 3, 4)):
                continue
            if column_hnf(m).rank != 2 or loop_witness(r) or is_bipartite(r):
                continue
            assert classify_4x2(r).chi == classify_4x2(r, full_search=True).chi
            checked += 1

    def test_all_decompositions_share_residue(self):
        # every accepting decomposition has a+b+c divisible by 3
        m = rm([[1, 0], [1, 1], [1, 2], [0, 1]])
        certs = list(triangle_certificates(m))
        assert certs
        for cert in certs:
            assert (cert.a + cert.b + cert.c) % 3 == 0
            assert cert.check(m.matrix)


class TestChromaticNumberDispatch:
    def test_paper_2x2(self):
        assert chromatic_number([[9, 21], [1, 4]]).chi == 3

    def test_zero_row_then_single_column(self):
        assert chromatic_number([[0], [1], [1], [1]]).chi == 3

    def test_triangle_four(self):
        assert chromatic_number([[1, 0], [1, 1], [1, 2], [0, 1]]).chi == 4

    def test_unsupported_5x2(self):
        with pytest.raises(UnsupportedShapeError):
            chromatic_number([[1, 0], [0, 1], [1, 1], [2, 1], [1, 2]])

    def test_unsupported_4x3(self):
        with pytest.raises(UnsupportedShapeError):
            chromatic_number([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])

    def test_r_zero_grid(self):
        assert chromatic_number([[0], [0]]).chi == 2

    def test_zero_column_only(self):
        assert chromatic_number([[0, 0], [0, 0]]).chi == 2

    def test_finite_k5(self):
        # Z_5 with generators 1 and 2: complete graph on 5 vertices
        res = chromatic_number([[5, -2], [0, 1]])
        assert res.chi == 5

    def test_bipartite_4x2(self):
        assert chromatic_number([[2, 0], [0, 2], [2, 2], [0, 4]]).chi == 2

    def test_normalize_idempotent(self):
        work = normalize(rm([[9, 21], [1, 4]]))
        again = normalize(work)
        assert again.matrix == work.matrix

    def test_certificates_attach_to_normalized_matrix(self):
        m = rm([[1, 0], [0, 1], [3, 4]])
        work = normalize(m)
        res = chromatic_number(m)
        assert res.certificate.check(work.matrix)

    def test_drop_zero_rows_preserves_chi(self):
        cases = [
            [[0, 0], [1, 0], [1, 1], [1, 2], [0, 1]],
            [[0], [5]],
            [[0, 0], [3, 0], [0, 1], [-2, 2]],
        ]
        for rows in cases:
            with_zero = chromatic_number(rows)
            without = chromatic_number([r for r in rows if any(r)])
            assert with_zero.chi == without.chi

    def test_collapse_gives_upper_bound(self):
        # graph homomorphism: chi(M) <= chi(collapsed)
        pairs = [
            ([[9, 21], [1, 4]], (1, 2)),
            ([[1, 0], [1, 1], [1, 2], [0, 1]], (1, 2)),
            ([[1, 0], [1, 1], [1, 2], [0, 1]], (3, 4)),
            ([[3, 0], [0, 1], [-2, 2]], (2, 3)),
        ]
        for rows, (i, j) in pairs:
            src = chromatic_number(rows)
            dst = chromatic_number(collapse_rows(rm(rows), i, j))
            if src.has_loops:
                continue
            if dst.has_loops:
                continue  # collapsing can create loops; no bound then
            assert src.chi <= dst.chi


class TestAlmostCanonicalProperty:
    def test_sweep(self):
        """Every 4-chromatic [[1,0],[t,u],[t,w]] with u=w mod 3, u!=w has
        |u| in {1,2}, |w| in {1,2}, or |t| = 1."""
        span = range(-4, 5)
        hits = 0
        for t, u, w in itertools.product(span, repeat=3):
            if u == w or (u - w) % 3 != 0:
                continue
            rows = [[1, 0], [t, u], [t, w]]
            m = rm(rows)
            if any(m.matrix.is_zero_row(i) for i in (1, 2, 3)):
                continue
            if any(m.matrix.is_zero_col(j) for j in (1, 2)):
                continue
            if column_hnf(m.matrix).rank != 2 or loop_witness(m):
                continue
            res = chromatic_number(m)
            if res.chi == 4:
                hits += 1
                assert abs(u) in (1, 2) or abs(w) in (1, 2) or abs(t) == 1, rows
        assert hits > 0


def test_dichotomy_on_random_valid_4x2():
    rng = random.Random(17)
    seen = set()
    count = 0
    while count < 300:
        m = IntMatrix(tuple(tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(4)))
        r = RelationMatrix(m)
        if any(m.is_zero_row(i) for i in (1, 2, 3, 4)):
            continue
        if column_hnf(m).rank != 2 or loop_witness(r) or is_bipartite(r):
            continue
        res = classify_4x2(r)
        assert res.chi in (3, 4)
        seen.add(res.chi)
        count += 1
    assert seen == {3, 4}
