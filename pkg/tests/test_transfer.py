import random

import pytest

from _oracles import monomials_upto
from epsgeom.errors import NotAComplex, NotASolution
from epsgeom.gaussian import GaussianRational
from epsgeom.groebner import Ideal, is_proper, syzygy_basis
from epsgeom.levicivita import LCNumber
from epsgeom.parser import parse_poly
from epsgeom.poly import Monomial, Poly
from epsgeom.transfer import (
    PolyMatrix,
    exactness_transfer_check,
    flatness_witness,
    kernel_extension_check,
    tensor_iso_check,
)


def std(text):
    return parse_poly(text).to_standard()


def ext(text):
    return parse_poly(text).to_extended()


def random_std_poly(rng, max_vars=3, max_degree=2, sparsity=0.5):
    monos = monomials_upto(range(1, max_vars + 1), max_degree)
    acc = Poly.zero("standard")
    for m in monos:
        if rng.random() < sparsity:
            c = rng.randint(-2, 2)
            if c:
                acc = acc + Poly("standard", {m: GaussianRational(c)})
    return acc


class TestFlatnessWitness:
    def test_eps_scaled_koszul_solution(self):
        r = flatness_witness([std("z1"), std("z2")], [ext("eps*z2"), ext("-eps*z1")])
        assert r == [ext("eps")]

    def test_standard_solution(self):
        r = flatness_witness([std("z1"), std("z2")], [ext("z2"), ext("-z1")])
        assert r == [ext("1")]

    def test_not_a_solution(self):
        with pytest.raises(NotASolution):
            flatness_witness([std("z1"), std("z2")], [ext("1"), ext("0")])

    def test_round_trips(self):
        rng = random.Random(7001)
        done = 0
        while done < 30:
            a = [random_std_poly(rng, max_vars=2) for _ in range(rng.randint(2, 3))]
            if not any(a):
                continue
            beta = syzygy_basis(a)
            if not beta.generators:
                done += 1
                continue
            # extended combination of standard solutions
            scalars = [
                Poly.constant(LCNumber.eps(rng.randint(0, 2)))
                if rng.random() < 0.7
                else ext(str(rng.randint(-2, 2)))
                for _ in beta.generators
            ]
            x = [Poly.zero("extended") for _ in a]
            for s, gen in zip(scalars, beta.generators):
                for k, g in enumerate(gen):
                    x[k] = x[k] + s * g.to_extended()
            r = flatness_witness(a, x)
            rebuilt = [Poly.zero("extended") for _ in a]
            for ri, gen in zip(r, beta.generators):
                for k, g in enumerate(gen):
                    rebuilt[k] = rebuilt[k] + ri * g.to_extended()
            assert rebuilt == x
            done += 1


class TestKernelExtension:
    def test_koszul_row(self):
        rep = kernel_extension_check(PolyMatrix.from_strings([["z1", "z2"]]))
        assert rep["standard_kernel"] == [["z2", "-z1"]]
        assert rep["extended_kernel"] == [["z2", "-z1"]]
        assert rep["pass"]

    def test_identity(self):
        rep = kernel_extension_check(PolyMatrix.from_strings([["1", "0"], ["0", "1"]]))
        assert rep["standard_kernel"] == []
        assert rep["extended_kernel"] == []
        assert rep["pass"]

    def test_zero_matrix(self):
        rep = kernel_extension_check(PolyMatrix.from_strings([["0", "0"]]))
        assert rep["standard_kernel"] == [["1", "0"], ["0", "1"]]
        assert rep["pass"]

    def test_random_matrices(self):
        rng = random.Random(7002)
        for _ in range(25):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            A = PolyMatrix(
                [[random_std_poly(rng) for _ in range(cols)] for _ in range(rows)]
            )
            assert kernel_extension_check(A)["pass"]


class TestExactnessTransfer:
    def test_koszul_exact(self):
        A = PolyMatrix.from_strings([["z2"], ["-z1"]])
        B = PolyMatrix.from_strings([["z1", "z2"]])
        rep = exactness_transfer_check(A, B)
        assert rep["complex"]
        assert rep["exact_standard"] and rep["exact_extended"]
        assert rep["verdicts_agree"] and rep["pass"]

    def test_zero_pair(self):
        A = PolyMatrix.from_strings([["0"]])
        B = PolyMatrix.from_strings([["0"]])
        rep = exactness_transfer_check(A, B)
        assert rep["verdicts_agree"] and rep["pass"]

    def test_strict_image_gap(self):
        A = PolyMatrix.from_strings([["z1^2"]])
        B = PolyMatrix.from_strings([["0"]])
        rep = exactness_transfer_check(A, B)
        assert not rep["exact_standard"] and not rep["exact_extended"]
        assert rep["verdicts_agree"] and rep["pass"]

    def test_not_a_complex(self):
        A = PolyMatrix.from_strings([["1"]])
        B = PolyMatrix.from_strings([["z1"]])
        with pytest.raises(NotAComplex):
            exactness_transfer_check(A, B)

    def test_syzygy_pairs_are_exact(self):
        rng = random.Random(7003)
        for _ in range(8):
            row = [random_std_poly(rng, max_vars=2) for _ in range(2)]
            if not any(row):
                continue
            B = PolyMatrix([row])
            beta = syzygy_basis(row)
            if not beta.generators:
                continue
            A = PolyMatrix(
                [
                    [gen[r] for gen in beta.generators]
                    for r in range(len(row))
                ]
            )
            rep = exactness_transfer_check(A, B)
            assert rep["exact_standard"] and rep["exact_extended"] and rep["pass"]


class TestTensorIso:
    def test_free_module(self):
        rep = tensor_iso_check(PolyMatrix.from_strings([["0"]]))
        assert rep["free"] and rep["pass"]

    def test_principal_quotient(self):
        rep = tensor_iso_check(PolyMatrix.from_strings([["z1"]]))
        assert rep["surjectivity"] == "structural"
        assert rep["pass"]

    def test_koszul_presentation(self):
        # row form: one relation among two generators, kernel (z2, -z1)
        rep = tensor_iso_check(PolyMatrix.from_strings([["z1", "z2"]]))
        assert rep["pass"]
        assert rep["witnesses"] == [["1"]]
        # column form: two relations on one generator, kernel is zero
        col = tensor_iso_check(PolyMatrix.from_strings([["z2"], ["-z1"]]))
        assert col["pass"]
        assert col["witnesses"] == []

    def test_random_presentations(self):
        rng = random.Random(7004)
        for _ in range(10):
            rows = rng.randint(1, 2)
            cols = rng.randint(1, 2)
            P = PolyMatrix(
                [[random_std_poly(rng, max_vars=2) for _ in range(cols)] for _ in range(rows)]
            )
            assert tensor_iso_check(P)["pass"]


class TestMaximalIdealCondition:
    def test_point_ideals_stay_proper_when_extended(self):
        rng = random.Random(7005)
        for _ in range(10):
            gens = [
                Poly.variable(v)
                - Poly.constant(GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1))).to_standard()
                for v in range(1, rng.randint(2, 4))
            ]
            assert is_proper(Ideal(gens))
            assert is_proper(Ideal([g.to_extended() for g in gens]))


class TestPolyMatrixBasics:
    def test_shape_and_entries(self):
        A = PolyMatrix.from_strings([["z1", "z2"], ["0", "1"]])
        assert A.shape == (2, 2)
        assert A.entry(0, 1) == std("z2")
        assert A.column(0) == [std("z1"), std("0")]

    def test_ragged_rejected(self):
        with pytest.raises(Exception):
            PolyMatrix([[std("z1")], [std("z1"), std("z2")]])

    def test_mixed_domain_promotes(self):
        A = PolyMatrix([[std("z1"), ext("eps*z2")]])
        assert A.entry(0, 0).domain == "extended"
        assert A.entry(0, 1).domain == "extended"

    def test_mul_shapes(self):
        A = PolyMatrix.from_strings([["z1"], ["z2"]])
        B = PolyMatrix.from_strings([["z2", "-z1"]])
        prod = B.mul(A)
        assert prod.shape == (1, 1)
        assert prod.entry(0, 0) == Poly.zero("standard")
