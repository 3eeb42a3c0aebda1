"""The residue field kappa = F_p(s) and its characteristic-p structure.

kappa has p-basis {s}: every t decomposes uniquely as sum c_i^p s^i, the
module of differentials is one-dimensional with basis ds, and degree-p
Artin-Schreier equations w^p - w = x are decided by an exact linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from . import fppoly as fp
from .errors import DomainError, ParseError


@dataclass(frozen=True)
class ResidueElement:
    """A rational function num/den over F_p, reduced, monic denominator."""

    p: int
    num: tuple[int, ...]
    den: tuple[int, ...]

    @staticmethod
    def make(p: int, num, den=fp.ONE) -> "ResidueElement":
        num = fp.normalize(num, p)
        den = fp.normalize(den, p)
        if not den:
            raise DomainError("zero denominator")
        if not num:
            return ResidueElement(p, fp.ZERO, fp.ONE)
        g = fp.gcd(num, den, p)
        if fp.deg(g) > 0:
            num = fp.divmod_(num, g, p)[0]
            den = fp.divmod_(den, g, p)[0]
        lead_inv = pow(den[-1], p - 2, p)
        num = fp.scale(num, lead_inv, p)
        den = fp.monic(den, p)
        return ResidueElement(p, num, den)

    @staticmethod
    def from_int(p: int, n: int) -> "ResidueElement":
        return ResidueElement.make(p, (n % p,))

    @staticmethod
    def s(p: int) -> "ResidueElement":
        return ResidueElement.make(p, fp.X)

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == fp.ONE and self.den == fp.ONE

    def __add__(self, other):
        self._check(other)
        num = fp.add(fp.mul(self.num, other.den, self.p),
                     fp.mul(other.num, self.den, self.p), self.p)
        return ResidueElement.make(self.p, num, fp.mul(self.den, other.den, self.p))

    def __neg__(self):
        return ResidueElement(self.p, fp.neg(self.num, self.p), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return ResidueElement.make(self.p, fp.mul(self.num, other.num, self.p),
                                   fp.mul(self.den, other.den, self.p))

    def inv(self):
        if self.is_zero():
            raise DomainError("inversion of zero in F_p(s)")
        return ResidueElement.make(self.p, self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return ResidueElement.make(self.p, fp.pow_(self.num, n, self.p),
                                   fp.pow_(self.den, n, self.p))

    def _check(self, other):
        if self.p != other.p:
            raise DomainError("mixed characteristics")

    def __str__(self):
        if self.den == fp.ONE:
            return fp.to_str(self.num)
        return f"({fp.to_str(self.num)})/({fp.to_str(self.den)})"

    @staticmethod
    def parse(text: str, p: int) -> "ResidueElement":
        text = text.strip().replace(" ", "")
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                num = fp.from_str(text[:i], p)
                den = fp.from_str(text[i + 1:], p)
                if not den:
                    raise ParseError("zero denominator")
                return ResidueElement.make(p, num, den)
        return ResidueElement.make(p, fp.from_str(text, p))


@dataclass(frozen=True)
class DifferentialForm:
    """An element of Omega^1_kappa, written coefficient * ds."""

    coefficient: ResidueElement

    @property
    def p(self):
        return self.coefficient.p

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def __add__(self, other):
        return DifferentialForm(self.coefficient + other.coefficient)

    def __neg__(self):
        return DifferentialForm(-self.coefficient)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, t: ResidueElement) -> "DifferentialForm":
        return DifferentialForm(self.coefficient * t)

    def __str__(self):
        return f"({self.coefficient})*ds"


def field_op(a: ResidueElement, b, op: str) -> ResidueElement:
    """Dispatch used by the CLI; add/mul take b, inv/neg ignore it."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise DomainError(f"unknown field op {op!r}")


def _poly_pth_decompose(f, p):
    """Split a polynomial by exponent class mod p: f = sum_i (c_i)^p s^i.

    Over F_p the Frobenius fixes coefficients, so c_i just collects every
    coefficient whose exponent is congruent to i.
    """
    out = []
    for i in range(p):
        cs = {}
        for e, c in enumerate(f):
            if e % p == i and c:
                cs[(e - i) // p] = c
        if cs:
            top = max(cs)
            out.append(tuple(cs.get(k, 0) for k in range(top + 1)))
        else:
            out.append(fp.ZERO)
    return out


def pth_power_decompose(t: ResidueElement) -> list[ResidueElement]:
    """Unique coordinates of t in the p-basis: t = sum c_i^p s^i."""
    p = t.p
    h = fp.mul(t.num, fp.pow_(t.den, p - 1, p), p)
    parts = _poly_pth_decompose(h, p)
    return [ResidueElement.make(p, parts[i], t.den) for i in range(p)]


def is_pth_power(t: ResidueElement) -> bool:
    cs = pth_power_decompose(t)
    return all(cs[i].is_zero() for i in range(1, t.p))


def pth_root(t: ResidueElement) -> ResidueElement:
    cs = pth_power_decompose(t)
    if any(not cs[i].is_zero() for i in range(1, t.p)):
        raise DomainError("not a p-th power in F_p(s)")
    return cs[0]


def differential(t: ResidueElement) -> DifferentialForm:
    """d/ds by the quotient rule; vanishes exactly on kappa^p."""
    p = t.p
    num = fp.sub(fp.mul(fp.deriv(t.num, p), t.den, p),
                 fp.mul(t.num, fp.deriv(t.den, p), p), p)
    den = fp.mul(t.den, t.den, p)
    return DifferentialForm(ResidueElement.make(p, num, den))


def dlog(t: ResidueElement) -> DifferentialForm:
    if t.is_zero():
        raise DomainError("dlog of zero")
    return DifferentialForm(differential(t).coefficient / t)


def form_in_fbasis(omega: DifferentialForm):
    """Write omega = sum_i alpha_i s^i (ds/s) with alpha_i in kappa^p.

    Returns (alpha_0, [alpha_1, ..., alpha_{p-1}]).  The i = 0 slot is not
    always zero for forms realized by symbols; callers must inspect it
    rather than assume it vanishes.
    """
    p = omega.p
    s = ResidueElement.s(p)
    cs = pth_power_decompose(omega.coefficient * s)
    alphas = [cs[i] ** p for i in range(p)]
    return alphas[0], alphas[1:]


def reassemble_fbasis(p: int, alpha0: ResidueElement,
                      alphas: list[ResidueElement]) -> DifferentialForm:
    s = ResidueElement.s(p)
    coeff = alpha0 * s.inv()
    for i, a in enumerate(alphas, start=1):
        coeff = coeff + a * s ** (i - 1)
    return DifferentialForm(coeff)


def _solve_gf_linear(rows, rhs, p):
    """Solve M x = rhs over F_p; returns one solution or None."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n_cols):
        sel = None
        for i in range(r, n_rows):
            if m[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(m[i][j] - f * m[r][j]) % p for j in range(n_cols + 1)]
        piv_cols.append(c)
        r += 1
    for i in range(r, n_rows):
        if m[i][n_cols] % p:
            return None
    x = [0] * n_cols
    for row, c in enumerate(piv_cols):
        x[c] = m[row][n_cols] % p
    return x


def artin_schreier_solvable(x: ResidueElement):
    """Decide w^p - w = x over F_p(s); returns (True, witness) or (False, None).

    For reduced x = f/g a solution w = u/v (reduced) forces g = v^p, and then
    u^p - u v^{p-1} = f is an F_p-linear condition on the coefficients of u
    with an explicit degree bound, so a Gaussian solve settles it.
    """
    p = x.p
    if x.is_zero():
        return True, ResidueElement.from_int(p, 0)
    f, g = x.num, x.den
    if not fp.is_pth_power(g, p):
        return False, None
    v = fp.pth_root(g, p)
    df, dv = fp.deg(f), fp.deg(v)
    bound = max(df // p, dv, 0)
    if df - (p - 1) * dv > 0:
        bound = max(bound, df - (p - 1) * dv)
    vq = fp.pow_(v, p - 1, p)
    n_unknowns = bound + 1
    width = max(p * bound, bound + fp.deg(vq), df) + 1
    rows = [[0] * n_unknowns for _ in range(width)]
    for j in range(n_unknowns):
        # contribution of u_j to u^p is at exponent p*j (Frobenius fixes F_p)
        rows[p * j][j] = (rows[p * j][j] + 1) % p
        for k, c in enumerate(vq):
            rows[j + k][j] = (rows[j + k][j] - c) % p
    rhs = [(f[i] if i < len(f) else 0) for i in range(width)]
    sol = _solve_gf_linear(rows, rhs, p)
    if sol is None:
        return False, None
    u = fp.trim(sol)
    w = ResidueElement.make(p, u, v)
    assert (w ** p - w - x).is_zero()
    return True, w


def artin_schreier_twisted(x: ResidueElement, twist: ResidueElement):
    """Decide w^p - w + twist * z^p = x with polynomial data.

    Used by the top-filtration-level reducer, where symbols with left datum
    in the image of w^p - w - twist*z^p are provably trivial.  Handles the
    polynomial case exactly; rational inputs fall back to the untwisted test.
    """
    p = x.p
    if x.is_zero():
        z0 = ResidueElement.from_int(p, 0)
        return True, z0, z0
    ok, w = artin_schreier_solvable(x)
    if ok:
        return True, w, ResidueElement.from_int(p, 0)
    if x.den != fp.ONE or twist.den != fp.ONE or twist.is_zero():
        return False, None, None
    f = x.num
    tw = twist.num
    slack = fp.deg(tw) + 2
    dw = max(fp.deg(f) // p, 0) + slack
    dz = max((fp.deg(f) - fp.deg(tw)) // p, 0) + slack
    nw, nz = dw + 1, dz + 1
    width = max(p * dw, p * dz + fp.deg(tw), fp.deg(f)) + 1
    rows = [[0] * (nw + nz) for _ in range(width)]
    for j in range(nw):
        rows[p * j][j] = (rows[p * j][j] + 1) % p
        rows[j][j] = (rows[j][j] - 1) % p
    for j in range(nz):
        for k, c in enumerate(tw):
            rows[p * j + k][nw + j] = (rows[p * j + k][nw + j] + c) % p
    rhs = [(f[i] if i < len(f) else 0) for i in range(width)]
    sol = _solve_gf_linear(rows, rhs, p)
    if sol is None:
        return False, None, None
    w = ResidueElement.make(p, fp.trim(sol[:nw]))
    z = ResidueElement.make(p, fp.trim(sol[nw:]))
    assert (w ** p - w + twist * z ** p - x).is_zero()
    return True, w, z


def factor_multiplicative(t: ResidueElement):
    """t = unit * prod q_i^{e_i} over monic irreducibles (e_i in Z)."""
    if t.is_zero():
        raise DomainError("cannot factor zero")
    p = t.p
    unit_n, num_f = fp.factor(t.num, p)
    unit_d, den_f = fp.factor(t.den, p)
    unit = (unit_n * pow(unit_d, p - 2, p)) % p
    expo: dict[tuple[int, ...], int] = {}
    for q, e in num_f:
        expo[q] = expo.get(q, 0) + e
    for q, e in den_f:
        expo[q] = expo.get(q, 0) - e
    items = sorted(((q, e) for q, e in expo.items() if e),
                   key=lambda kv: (fp.deg(kv[0]), kv[0]))
    return unit, items
