"""Code extraction, parameters, distances, and locally minimal machinery."""

import random
from fractions import Fraction

import pytest

import qbp
from qbp import gf2
from qbp.css import (
    brute_distance,
    code_params,
    extract_code,
    greedy_flip_reduce,
    is_locally_minimal,
    locally_minimal_distance,
    minimal_coset_representative,
    normalized_weight,
    normalized_syndrome_weight,
)
from qbp.errors import OracleUnavailableError
from qbp.gf2 import F2Vector
from qbp.graphs import build_bipartite
from qbp.instances import left_right_cayley, toric_complex
from qbp.groups import cyclic_group
from qbp.product import DegreeProfile, hypergraph_product


class TestExtraction:
    def test_single_edge_square_code(self):
        cpx = hypergraph_product(build_bipartite(1, 1, [(0, 0)]),
                                 build_bipartite(1, 1, [(0, 0)]))
        code = extract_code(cpx)
        assert (code.n, code.m_x, code.m_z) == (2, 1, 1)
        assert code.hx.row_masks == (0b11,)
        assert code.hz.row_masks == (0b11,)

    def test_toric_shapes(self, toric3_code):
        assert (toric3_code.n, toric3_code.m_x, toric3_code.m_z) == (18, 9, 9)

    def test_left_right_cayley_shapes(self):
        code = extract_code(left_right_cayley(cyclic_group(5), [1], [2]))
        assert (code.n, code.m_x, code.m_z) == (10, 5, 5)

    def test_commuting_condition_everywhere(self, toric3_code, star12_code, incstar13_code):
        for code in (toric3_code, star12_code, incstar13_code):
            assert gf2.mat_mul(code.hx, code.hz.transpose()).is_zero()

    def test_weight_formula(self, star12_code, incstar13_code, toric3_code):
        for code in (star12_code, incstar13_code, toric3_code):
            d = code.degrees
            expected = max(d.down + d.right, d.up + d.left,
                           d.up + d.right, d.down + d.left)
            assert code.weight == expected


class TestParams:
    def test_single_edge_square_k0(self):
        cpx = hypergraph_product(build_bipartite(1, 1, [(0, 0)]),
                                 build_bipartite(1, 1, [(0, 0)]))
        params = code_params(extract_code(cpx))
        assert params.k == 0
        assert params.rank_hx == params.rank_hz == 1

    def test_toric_k2(self, toric3_code, toric2_code):
        assert code_params(toric3_code).k == 2
        assert code_params(toric2_code).k == 2

    def test_rate_bound_arithmetic(self):
        # Degree pattern (5,4,4,5): bound (5-4)(5-4)/(5*5 + 4*4) = 1/41.
        d = DegreeProfile(down=5, up=4, right=4, left=5)
        bound = Fraction((d.down - d.up) * (d.left - d.right),
                         d.down * d.left + d.up * d.right)
        assert bound == Fraction(1, 41)

    def test_rate_bound_holds_on_instances(self, toric3_code, star12_code, incstar13_code, match8_code):
        for code in (toric3_code, star12_code, incstar13_code, match8_code):
            params = code_params(code)
            assert Fraction(params.k, params.n) >= params.rate_bound

    def test_k_lower_bound(self, star12_code):
        params = code_params(star12_code)
        assert params.k >= params.n - params.m_x - params.m_z


class TestDistance:
    def test_toric_l3(self, toric3_code):
        assert brute_distance(toric3_code, "z").d == 3
        assert brute_distance(toric3_code, "x").d == 3

    def test_toric_l2(self, toric2_code):
        assert brute_distance(toric2_code, "z").d == 2
        assert brute_distance(toric2_code, "x").d == 2

    def test_k0_reports_no_logicals(self, match8_code):
        report = brute_distance(match8_code, "z")
        assert report.no_logicals and report.d is None

    def test_budget_refusal(self, toric3_code):
        with pytest.raises(OracleUnavailableError):
            brute_distance(toric3_code, "z", budget=512)

    def test_balanced_product_code_parameters(self):
        # Regression values from the same oracle that the toric family
        # anchors: left-right Cayley products with two generators per side.
        cases = [
            (cyclic_group(8), [1, 2], [1, 4], 16, 2, 4),
            (cyclic_group(6), [1, 2], [1, 3], 12, 2, 3),
        ]
        for group, gens_a, gens_b, n, k, d in cases:
            code = extract_code(left_right_cayley(group, gens_a, gens_b))
            params = code_params(code)
            assert (params.n, params.k) == (n, k)
            assert brute_distance(code, "z").d == d
            assert brute_distance(code, "x").d == d

    def test_nonabelian_product_code(self):
        from qbp.groups import dihedral_group
        code = extract_code(left_right_cayley(dihedral_group(4), [1, 2], [1, 2]))
        params = code_params(code)
        assert (params.n, params.k) == (16, 6)
        assert brute_distance(code, "z").d == 2

    def test_distance_vectors_are_logicals(self, toric2_code):
        # Cross-check: some weight-2 kernel vector exists outside the
        # stabilizers, and no weight-1 vector does.
        code = toric2_code
        basis = gf2.kernel_basis(code.hx)
        masks = [v.to_mask() for v in basis]
        weights = sorted(
            m.bit_count()
            for m in gf2.iter_span_masks(masks)
            if m and not code.z_stabilizers.contains_mask(m)
        )
        assert weights[0] == 2


class TestNormalizedWeight:
    def test_zero(self, star12_code):
        assert normalized_weight(star12_code, F2Vector.zero(60)) == 0

    def test_single_v10_flip(self, star12_code):
        v = F2Vector.from_support(60, [0])
        assert normalized_weight(star12_code, v) == Fraction(1, 3)

    def test_mixed_arithmetic(self):
        # (|v10|, |v01|) = (2, 3) with degrees (2, 3) gives 1 + 1 = 2.
        cpx = toric_complex(2)
        code = extract_code(cpx)
        object.__setattr__(code, "degrees", DegreeProfile(2, 2, 3, 3))
        v = F2Vector.from_support(8, [0, 1, 4, 5, 6])
        assert normalized_weight(code, v) == 2

    def test_syndrome_normalization(self, star12_code):
        c0 = F2Vector.from_support(72, [0, 1, 2])
        assert normalized_syndrome_weight(star12_code, c0) == Fraction(3, 6)


class TestGreedyFlip:
    def test_already_minimal_unchanged(self, toric3_code):
        v = F2Vector.from_support(18, [0])
        red = greedy_flip_reduce(toric3_code, v, normalized=False)
        assert red.iterations == 0
        assert red.vector == v

    def test_full_column_cancels(self, toric3_code):
        col = F2Vector.from_mask(18, toric3_code.hz.row_masks[4])
        red = greedy_flip_reduce(toric3_code, col, normalized=False)
        assert red.vector.is_zero()
        assert red.iterations == 1

    def test_output_locally_minimal_random(self, toric3_code):
        rng = random.Random(3)
        for _ in range(25):
            sup = [q for q in range(18) if rng.random() < 0.4]
            red = greedy_flip_reduce(toric3_code, F2Vector.from_support(18, sup), normalized=False)
            # Exhaustive post-check over all m_z candidate flips.
            m = red.vector.to_mask()
            for col in toric3_code.hz.row_masks:
                assert (m ^ col).bit_count() >= m.bit_count()

    def test_syndrome_invariant(self, toric3_code):
        rng = random.Random(5)
        for _ in range(10):
            v = F2Vector.from_support(18, [q for q in range(18) if rng.random() < 0.5])
            red = greedy_flip_reduce(toric3_code, v, normalized=True)
            assert gf2.mat_vec(toric3_code.hx, v) == gf2.mat_vec(toric3_code.hx, red.vector)

    def test_normalized_halting_bound(self, star12_code):
        d = star12_code.degrees
        rng = random.Random(7)
        for _ in range(20):
            v = F2Vector.from_support(60, [q for q in range(60) if rng.random() < 0.3])
            red = greedy_flip_reduce(star12_code, v, normalized=True)
            assert red.iterations <= v.weight * max(d.down, d.right) // min(d.down, d.right)

    def test_monotone_strict_decrease(self, star12_code):
        # Each applied flip lowers the normalized weight by at least
        # 1/max(down, right).
        d = star12_code.degrees
        rng = random.Random(9)
        for _ in range(10):
            v = F2Vector.from_support(60, rng.sample(range(60), 12))
            red = greedy_flip_reduce(star12_code, v, normalized=True)
            drop = normalized_weight(star12_code, v) - normalized_weight(star12_code, red.vector)
            assert drop >= Fraction(red.iterations, max(d.down, d.right))


class TestLocallyMinimalDistance:
    def test_k0_matching_has_no_locally_minimal_vectors(self, match8_code):
        # Every kernel vector is a stabilizer and greedy reduction always
        # cancels one column outright, so both quantifiers come back empty.
        report = locally_minimal_distance(match8_code, normalized=True)
        assert report.d_lm_nontrivial is None
        assert report.d_lm_all is None

    def test_stabilizers_included_by_all_quantifier(self, toric3_code):
        # The sum of a wrapped row of Z checks is a weight-6 stabilizer that
        # no single flip improves, so the all-vectors quantifier sees it.
        code = toric3_code
        row = 0
        for col in (0, 1, 2):
            row ^= code.hz.row_masks[col]
        vec = F2Vector.from_mask(18, row)
        assert code.z_stabilizers.contains(vec)
        assert gf2.mat_vec(code.hx, vec).is_zero()
        assert is_locally_minimal(code, vec, normalized=False)
        report = locally_minimal_distance(code, normalized=False)
        assert report.d_lm_all is not None and report.d_lm_all <= vec.weight

    def test_toric_l2(self, toric2_code):
        report = locally_minimal_distance(toric2_code, normalized=True)
        d = brute_distance(toric2_code, "z").d
        assert report.d_lm_nontrivial <= d == 2

    def test_toric_l3_both_senses(self, toric3_code):
        d = brute_distance(toric3_code, "z").d
        for normalized in (False, True):
            report = locally_minimal_distance(toric3_code, normalized=normalized)
            assert report.d_lm_nontrivial is not None
            assert d >= report.d_lm_nontrivial
            assert report.d_lm_all <= report.d_lm_nontrivial


class TestMinimalRepresentative:
    def test_zero_syndrome_zero_vector(self, match8_code):
        rep = minimal_coset_representative(match8_code, F2Vector.zero(8))
        assert rep.vector.is_zero()

    def test_minimal_beats_injection(self, match8_code):
        rng = random.Random(13)
        for _ in range(10):
            err = F2Vector.from_support(16, rng.sample(range(16), 3))
            syn = gf2.mat_vec(match8_code.hx, err)
            rep = minimal_coset_representative(match8_code, syn)
            assert gf2.mat_vec(match8_code.hx, rep.vector) == syn
            assert rep.normalized_weight <= normalized_weight(match8_code, err)
