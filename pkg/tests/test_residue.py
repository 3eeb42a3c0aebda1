"""Residue field kappa = F_p(s): decomposition, differentials, Artin-Schreier."""

import itertools
import random

import pytest

from ramsplit import fppoly as fp
from ramsplit.errors import DomainError
from ramsplit.residue import (
    DifferentialForm,
    ResidueElement,
    artin_schreier_solvable,
    differential,
    dlog,
    factor_multiplicative,
    form_in_fbasis,
    is_pth_power,
    pth_power_decompose,
    pth_root,
    reassemble_fbasis,
)


def R(text, p):
    return ResidueElement.parse(text, p)


def all_polys(p, max_deg):
    for degree in range(-1, max_deg + 1):
        if degree == -1:
            yield fp.ZERO
            continue
        for tail in itertools.product(range(p), repeat=degree):
            for lead in range(1, p):
                yield tuple(tail) + (lead,)


def random_element(p, rng, max_deg=3, nonzero=False):
    while True:
        num = tuple(rng.randrange(p) for _ in range(rng.randint(1, max_deg + 1)))
        den = tuple(rng.randrange(p) for _ in range(rng.randint(1, max_deg + 1)))
        num, den = fp.trim(num), fp.trim(den)
        if not den:
            continue
        t = ResidueElement.make(p, num, den)
        if nonzero and t.is_zero():
            continue
        return t


class TestArithmetic:
    def test_char2_add_self_is_zero(self):
        s = R("s", 2)
        assert (s + s).is_zero()

    def test_p3_product(self):
        # oracle: expand (s+1)(s+2) in F_3[s] directly
        lhs = R("s+1", 3) * R("s+2", 3)
        expected = ResidueElement.make(3, fp.mul((1, 1), (2, 1), 3))
        assert expected == R("s^2+2", 3)
        assert lhs == expected

    def test_inv_one(self):
        one = ResidueElement.from_int(5, 1)
        assert one.inv() == one

    def test_inv_of_zero_raises(self):
        with pytest.raises(DomainError):
            ResidueElement.from_int(3, 0).inv()

    def test_canonical_form_monic_reduced(self):
        t = ResidueElement.make(3, (0, 2), (0, 0, 1))  # 2s / s^2
        assert t == R("2/s", 3)
        assert t.den[-1] == 1
        assert fp.deg(fp.gcd(t.num, t.den, 3)) == 0

    def test_parse_roundtrip(self):
        for text, p in [("(s^2+1)/(s^3+s)", 2), ("2s+1", 3), ("0", 5)]:
            t = R(text, p)
            assert ResidueElement.parse(str(t), p) == t

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_field_axioms_random(self, p):
        rng = random.Random(100 + p)
        for _ in range(50):
            a = random_element(p, rng)
            b = random_element(p, rng)
            c = random_element(p, rng)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert (a * a.inv()).is_one()


class TestPthPowerStructure:
    def test_decompose_example_p2(self):
        # t = s+1 -> c_0 = 1, c_1 = 1 since 1^2 + 1^2 s = s + 1
        cs = pth_power_decompose(R("s+1", 2))
        assert cs[0].is_one() and cs[1].is_one()

    def test_decompose_perfect_square(self):
        cs = pth_power_decompose(R("s^2", 2))
        assert cs[0] == R("s", 2)
        assert cs[1].is_zero()

    def test_decompose_identity_p3(self):
        cs = pth_power_decompose(ResidueElement.from_int(3, 1))
        assert cs[0].is_one() and cs[1].is_zero() and cs[2].is_zero()

    @pytest.mark.parametrize("p", [2, 3])
    def test_roundtrip_exhaustive_polynomials(self, p):
        s = ResidueElement.s(p)
        max_deg = 6 if p == 2 else 4
        for poly in all_polys(p, max_deg):
            t = ResidueElement.make(p, poly)
            cs = pth_power_decompose(t)
            acc = ResidueElement.from_int(p, 0)
            for i, c in enumerate(cs):
                acc = acc + c ** p * s ** i
            assert acc == t

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_roundtrip_random_rationals(self, p):
        rng = random.Random(7 * p)
        s = ResidueElement.s(p)
        for _ in range(40):
            t = random_element(p, rng, max_deg=4)
            cs = pth_power_decompose(t)
            acc = ResidueElement.from_int(p, 0)
            for i, c in enumerate(cs):
                acc = acc + c ** p * s ** i
            assert acc == t

    def test_is_pth_power_examples(self):
        assert not is_pth_power(R("s", 2))
        assert is_pth_power(R("(s^2+1)/(s^4)", 2))
        assert pth_root(R("(s^2+1)/(s^4)", 2)) == R("(s+1)/(s^2)", 2)
        assert pth_root(ResidueElement.from_int(3, 1)).is_one()

    def test_pth_root_of_non_power_raises(self):
        with pytest.raises(DomainError):
            pth_root(R("s", 3))

    @pytest.mark.parametrize("p", [2, 3])
    def test_is_pth_power_matches_bruteforce(self, p):
        # brute force: all p-th powers of polynomials of degree <= 2
        powers = {ResidueElement.make(p, poly) ** p
                  for poly in all_polys(p, 2)}
        for poly in all_polys(p, 2 * p):
            t = ResidueElement.make(p, poly)
            assert is_pth_power(t) == (t in powers)


class TestDifferentials:
    def test_ds(self):
        assert differential(R("s", 3)).coefficient.is_one()

    def test_d_of_square_is_zero_p2(self):
        assert differential(R("s^2", 2)).is_zero()

    def test_dlog_product_example(self):
        # d log(s(s+1)) = (2s+1)/(s^2+s) ds, computed mod p
        for p in (2, 3, 5):
            got = dlog(R("s", p) * R("s+1", p))
            expected = ResidueElement.make(p, (1, 2), (0, 1, 1))
            assert got.coefficient == expected

    @pytest.mark.parametrize("p", [2, 3])
    def test_leibniz_random(self, p):
        rng = random.Random(13 * p)
        for _ in range(60):
            a = random_element(p, rng)
            b = random_element(p, rng)
            lhs = differential(a * b).coefficient
            rhs = (a * differential(b).coefficient
                   + b * differential(a).coefficient)
            assert lhs == rhs

    @pytest.mark.parametrize("p", [2, 3])
    def test_d_kills_pth_powers_random(self, p):
        rng = random.Random(17 * p)
        for _ in range(40):
            a = random_element(p, rng)
            assert differential(a ** p).is_zero()

    @pytest.mark.parametrize("p", [2, 3])
    def test_dlog_additive_random(self, p):
        rng = random.Random(19 * p)
        for _ in range(40):
            a = random_element(p, rng, nonzero=True)
            b = random_element(p, rng, nonzero=True)
            assert dlog(a * b).coefficient == (dlog(a) + dlog(b)).coefficient


class TestFBasis:
    def test_ds_has_alpha1_one_p2(self):
        a0, alphas = form_in_fbasis(DifferentialForm(ResidueElement.from_int(2, 1)))
        assert a0.is_zero()
        assert alphas[0].is_one()

    def test_zero_form(self):
        a0, alphas = form_in_fbasis(DifferentialForm(ResidueElement.from_int(3, 0)))
        assert a0.is_zero() and all(a.is_zero() for a in alphas)

    def test_derived_example_p2(self):
        # omega = (s^2+1) ds; decompose s^3+s = 0^2 + (s+1)^2 s
        a0, alphas = form_in_fbasis(DifferentialForm(R("s^2+1", 2)))
        assert a0.is_zero()
        assert alphas[0] == R("s^2+1", 2)

    @pytest.mark.parametrize("p", [2, 3])
    def test_reassembly_random(self, p):
        rng = random.Random(23 * p)
        for _ in range(40):
            omega = DifferentialForm(random_element(p, rng))
            a0, alphas = form_in_fbasis(omega)
            assert reassemble_fbasis(p, a0, alphas).coefficient == omega.coefficient

    def test_dlog_s_has_nonzero_alpha0(self):
        # the flagged i = 0 slot is genuinely attained: omega = ds/s
        a0, _ = form_in_fbasis(dlog(R("s", 2)))
        assert not a0.is_zero()


def brute_force_as(x, max_deg):
    p = x.p
    for poly in all_polys(p, max_deg):
        w = ResidueElement.make(p, poly)
        if (w ** p - w - x).is_zero():
            return True
    return False


class TestArtinSchreier:
    def test_zero(self):
        ok, w = artin_schreier_solvable(ResidueElement.from_int(2, 0))
        assert ok and w.is_zero()

    def test_direct_example(self):
        ok, w = artin_schreier_solvable(R("s^2+s", 2))
        assert ok and w == R("s", 2)

    def test_unsolvable_s(self):
        ok, w = artin_schreier_solvable(R("s", 2))
        assert not ok and w is None

    @pytest.mark.parametrize("p", [2, 3])
    def test_matches_bruteforce(self, p):
        max_deg = 4 if p == 2 else 3
        for poly in all_polys(p, max_deg):
            x = ResidueElement.make(p, poly)
            got, w = artin_schreier_solvable(x)
            assert got == brute_force_as(x, max_deg)
            if got:
                assert (w ** p - w - x).is_zero()

    def test_rational_witness(self):
        # x = (w^p - w) for w = 1/s has denominator s^p
        for p in (2, 3):
            w = R("s", p).inv()
            x = w ** p - w
            ok, got = artin_schreier_solvable(x)
            assert ok
            assert (got ** p - got - x).is_zero()


class TestFactorization:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_factor_multiplicative_roundtrip(self, p):
        rng = random.Random(29 * p)
        for _ in range(30):
            t = random_element(p, rng, nonzero=True, max_deg=4)
            unit, items = factor_multiplicative(t)
            acc = ResidueElement.from_int(p, unit)
            for q, e in items:
                acc = acc * ResidueElement.make(p, q) ** e
            assert acc == t
            for q, _ in items:
                assert fp.is_irreducible(q, p)
