"""Finite-precision exact arithmetic in the local field K.

The shipped context (per prime p) is the completion at pi = zeta_p - 1 of
Z[zeta_p][s] localized at (pi): residue field F_p(s), e = nu(p) = p - 1,
N = e*p/(p-1) = p.  A synthetic context adjoins pi_new with pi_new^k =
zeta_p - 1, giving e = k(p-1) and N = kp, which is what makes the
p-divisible filtration levels of Lemma-1.7 type reachable.

Scalars live in Z[x]/(G(x), p^T) with G(x) the minimal polynomial of the
uniformizer (G = E(x^k), E Eisenstein for zeta_p - 1); every scalar has a
unique digit expansion sum d_i pi^i with d_i in {0..p-1}, which is the
canonical form behind valuations and equality.  Elements of K are
fractions pi^exp * num/den with unit num, den and a tracked relative
precision; operations that would drop precision below N + 2 fail loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import fppoly as fp
from .errors import DomainError, ParseError, PrecisionExhaustion
from .residue import ResidueElement

INF = 10 ** 9

SUPPORTED_P = (2, 3, 5)


class Scalar:
    """Element of the valuation ring modulo pi^M (stored mod p^T)."""

    __slots__ = ("ctx", "co", "_digits")

    def __init__(self, ctx, co):
        self.ctx = ctx
        self.co = tuple(c % ctx.pT for c in co)
        self._digits = None

    def digits(self):
        if self._digits is None:
            self._digits = self.ctx._scalar_digits(self.co)
        return self._digits

    def val(self) -> int:
        """pi-adic valuation, capped at M."""
        for i, d in enumerate(self.digits()):
            if d:
                return i
        return self.ctx.M

    def residue_digit(self) -> int:
        return self.co[0] % self.ctx.p

    def is_zero(self) -> bool:
        return self.val() >= self.ctx.M

    def is_unit(self) -> bool:
        return self.residue_digit() != 0

    def __add__(self, o):
        return Scalar(self.ctx, [a + b for a, b in zip(self.co, o.co)])

    def __sub__(self, o):
        return Scalar(self.ctx, [a - b for a, b in zip(self.co, o.co)])

    def __neg__(self):
        return Scalar(self.ctx, [-a for a in self.co])

    def __mul__(self, o):
        return Scalar(self.ctx, self.ctx._scalar_mul(self.co, o.co))

    def __eq__(self, o):
        return isinstance(o, Scalar) and self.digits() == o.digits()

    def __hash__(self):
        return hash(self.digits())

    def inv(self) -> "Scalar":
        return self.ctx._scalar_inv(self)

    def divide_pi(self, v: int) -> "Scalar":
        """Exact division by pi^v (requires val >= v)."""
        return Scalar(self.ctx, self.ctx._divide_pi_rep(self.co, v))

    def __repr__(self):
        return f"Scalar({self.ctx.describe()}, digits={self.digits()})"


class KatoContext:
    """Fixed ground field data: p, ramification e, N = e*p/(p-1), precision M."""

    def __init__(self, p: int, M: int, e: int | None = None):
        if p not in SUPPORTED_P:
            raise DomainError(f"unsupported prime {p}; shipped set is {SUPPORTED_P}")
        if e is None:
            e = p - 1
        if e % (p - 1) != 0 or e <= 0:
            raise DomainError("ramification index must be a positive multiple of p-1")
        self.p = p
        self.e = e
        self.k = e // (p - 1)
        self.N = self.k * p
        if M < self.N + 2:
            raise DomainError(f"precision M={M} too small; need at least N+2={self.N + 2}")
        self.M = M
        self.T = -(-M // e)  # ceil(M/e); p^T lies in (pi^M)
        self.pT = p ** self.T
        # G = minimal polynomial of pi over Z: E(x^k) with E Eisenstein at p
        g = [0] * (e + 1)
        for j in range(1, p + 1):
            g[(j - 1) * self.k] += comb(p, j)
        self.G = tuple(g)
        self.synthetic = self.k > 1
        self._pi_pows: dict[int, Scalar] = {}

    # -- scalar kernel -------------------------------------------------

    def scalar_from_int(self, n: int) -> Scalar:
        return Scalar(self, (n,) + (0,) * (self.e - 1))

    def scalar_pi(self, j: int = 1) -> Scalar:
        """The scalar pi^j."""
        if j not in self._pi_pows:
            if j < self.e:
                co = [0] * self.e
                co[j] = 1
                self._pi_pows[j] = Scalar(self, co)
            else:
                self._pi_pows[j] = self.scalar_pi(j - 1) * self.scalar_pi(1)
        return self._pi_pows[j]

    def _scalar_mul(self, a, b):
        e = self.e
        out = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        for i in range(2 * e - 2, e - 1, -1):
            c = out[i]
            if c:
                out[i] = 0
                for j in range(e):
                    out[i - e + j] -= c * self.G[j]
        return [c % self.pT for c in out[:e]]

    def _divide_pi_rep(self, co, v):
        a = list(co)
        for _ in range(v):
            if a[0] % self.p != 0:
                raise DomainError("scalar not divisible by pi")
            q = a[0] // self.p
            a = [a[i + 1] - q * self.G[i + 1] for i in range(self.e - 1)] + [-q * self.G[self.e]]
        return a

    def _scalar_digits(self, co):
        a = [c % self.pT for c in co]
        digs = []
        for _ in range(self.M):
            d = a[0] % self.p
            digs.append(d)
            a[0] -= d
            q = a[0] // self.p
            a = [a[i + 1] - q * self.G[i + 1] for i in range(self.e - 1)] + [-q * self.G[self.e]]
        return tuple(digs)

    def _scalar_inv(self, s: Scalar) -> Scalar:
        r = s.residue_digit()
        if r == 0:
            raise DomainError("inversion of a non-unit scalar")
        b = self.scalar_from_int(pow(r, self.p - 2, self.p))
        two = self.scalar_from_int(2)
        steps = 1
        target = self.T * self.e
        while (1 << steps) < target:
            steps += 1
        for _ in range(steps + 1):
            b = b * (two - s * b)
        assert (s * b - self.scalar_from_int(1)).co == tuple([0] * self.e)
        return b

    # -- polynomials in s over scalars ----------------------------------

    def poly_add(self, f, g):
        n = max(len(f), len(g))
        zero = self.scalar_from_int(0)
        out = [(f[i] if i < len(f) else zero) + (g[i] if i < len(g) else zero)
               for i in range(n)]
        return self.poly_trim(out)

    def poly_neg(self, f):
        return tuple(-c for c in f)

    def poly_mul(self, f, g):
        if not f or not g:
            return ()
        zero = self.scalar_from_int(0)
        out = [zero] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
        return self.poly_trim(out)

    def poly_scale(self, f, c: Scalar):
        return self.poly_trim([a * c for a in f])

    def poly_trim(self, f):
        fl = list(f)
        while fl and all(c == 0 for c in fl[-1].co):
            fl.pop()
        return tuple(fl)

    def poly_gauss_val(self, f) -> int:
        if not f:
            return self.M
        return min(c.val() for c in f)

    def poly_residue(self, f):
        return fp.trim(tuple(c.residue_digit() for c in f))

    def poly_divide_pi(self, f, v):
        return tuple(c.divide_pi(v) for c in f)

    def poly_from_fp(self, poly):
        return tuple(self.scalar_from_int(int(c)) for c in poly)

    # -- element constructors -------------------------------------------

    def zero(self, bound: int = INF) -> "LocalElement":
        return LocalElement(self, bound, (), (self.scalar_from_int(1),), 0)

    def from_int(self, n: int) -> "LocalElement":
        if n == 0:
            return self.zero()
        return self.make(0, (self.scalar_from_int(n),), (self.scalar_from_int(1),), self.M)

    def one(self) -> "LocalElement":
        return self.from_int(1)

    def pi(self) -> "LocalElement":
        return self.make(0, (self.scalar_pi(1),), (self.scalar_from_int(1),), self.M)

    def b(self) -> "LocalElement":
        """zeta - 1; equals pi^k, with valuation e/(p-1)."""
        return self.pi() ** self.k

    def zeta(self) -> "LocalElement":
        return self.one() + self.b()

    def f_elt(self) -> "LocalElement":
        """The fixed lift of the p-generator of kappa: the coordinate s."""
        return self.lift(ResidueElement.s(self.p))

    def s_elt(self) -> "LocalElement":
        return self.f_elt()

    def lift(self, t: ResidueElement) -> "LocalElement":
        if t.p != self.p:
            raise DomainError("residue element has wrong characteristic")
        if t.is_zero():
            return self.zero()
        return self.make(0, self.poly_from_fp(t.num), self.poly_from_fp(t.den), self.M)

    def make(self, exp, num, den, prec) -> "LocalElement":
        dv = self.poly_gauss_val(den)
        if dv != 0:
            raise DomainError("denominator must be a unit of the valuation ring")
        prec = min(prec, self.M)
        v = self.poly_gauss_val(num)
        if v >= prec:
            return self.zero(exp + prec)
        if v:
            num = self.poly_divide_pi(num, v)
            exp += v
            prec = min(prec - v, self.M - v)
        if prec < self.N + 2:
            raise PrecisionExhaustion(
                f"effective precision {prec} below floor N+2={self.N + 2}")
        return LocalElement(self, exp, num, den, prec)

    def describe(self) -> str:
        tag = f",e={self.e}" if self.synthetic else ""
        return f"K(p={self.p},M={self.M}{tag})"

    def header(self) -> dict:
        return {"p": self.p, "M": self.M, "e": self.e}

    def __repr__(self):
        return f"KatoContext({self.describe()}, N={self.N})"


@dataclass(eq=False, frozen=True)
class LocalElement:
    """pi^exp * num/den + O(pi^{exp+prec}); num, den unit polynomials in s.

    A zero num marks an element indistinguishable from zero below pi^exp.
    """

    ctx: KatoContext
    exp: int
    num: tuple
    den: tuple
    prec: int

    def is_zeroish(self) -> bool:
        return not self.num

    @property
    def zero_bound(self) -> int:
        return self.exp if self.is_zeroish() else self.exp + self.prec

    def valuation(self):
        """Exact valuation, or None when indistinguishable from zero."""
        return None if self.is_zeroish() else self.exp

    def valuation_str(self) -> str:
        v = self.valuation()
        return f">= {min(self.zero_bound, self.ctx.M)}" if v is None else str(v)

    def __add__(self, o: "LocalElement") -> "LocalElement":
        ctx = self._ctx_of(o)
        if self.is_zeroish() or o.is_zeroish():
            z, x = (self, o) if self.is_zeroish() else (o, self)
            if x.is_zeroish():
                return ctx.zero(min(self.exp, o.exp))
            bound = z.exp
            if bound <= x.exp:
                return ctx.zero(bound)
            return ctx.make(x.exp, x.num, x.den, min(x.prec, bound - x.exp))
        e = min(self.exp, o.exp)
        lhs = ctx.poly_mul(self._shift(self.exp - e), o.den)
        rhs = ctx.poly_mul(o._shift(o.exp - e), self.den)
        num = ctx.poly_add(lhs, rhs)
        den = ctx.poly_mul(self.den, o.den)
        bound = min(self.exp + self.prec, o.exp + o.prec)
        return ctx.make(e, num, den, bound - e)

    def _shift(self, j: int):
        if j == 0:
            return self.num
        return self.ctx.poly_scale(self.num, self.ctx.scalar_pi(j))

    def __neg__(self):
        if self.is_zeroish():
            return self
        return LocalElement(self.ctx, self.exp, self.ctx.poly_neg(self.num),
                            self.den, self.prec)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "LocalElement") -> "LocalElement":
        ctx = self._ctx_of(o)
        if self.is_zeroish() or o.is_zeroish():
            bounds = []
            for a, b in ((self, o), (o, self)):
                if a.is_zeroish():
                    bounds.append(a.exp + (b.exp if not b.is_zeroish() else 0))
            return ctx.zero(min(bounds))
        return ctx.make(self.exp + o.exp, ctx.poly_mul(self.num, o.num),
                        ctx.poly_mul(self.den, o.den), min(self.prec, o.prec))

    def inv(self) -> "LocalElement":
        if self.is_zeroish():
            raise DomainError("inversion of an element indistinguishable from zero")
        return LocalElement(self.ctx, -self.exp, self.den, self.num, self.prec)

    def __truediv__(self, o):
        return self * o.inv()

    def __pow__(self, n: int) -> "LocalElement":
        base = self if n >= 0 else self.inv()
        n = abs(n)
        out = self.ctx.one()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def equals(self, o: "LocalElement") -> bool:
        return (self - o).is_zeroish()

    def is_unit(self) -> bool:
        return not self.is_zeroish() and self.exp == 0

    def residue(self) -> ResidueElement:
        if self.is_zeroish() or self.exp != 0:
            raise DomainError("residue requires valuation exactly 0")
        return ResidueElement.make(self.ctx.p, self.ctx.poly_residue(self.num),
                                   self.ctx.poly_residue(self.den))

    def unit_level(self) -> int:
        """Largest i <= M with self in U_i = 1 + m^i (requires a unit)."""
        if not self.is_unit():
            raise DomainError("unit filtration level requires a unit")
        d = self - self.ctx.one()
        if d.is_zeroish():
            return min(d.zero_bound, self.ctx.M)
        return min(d.exp, self.ctx.M)

    def data_at_level(self, m: int) -> ResidueElement:
        """Residue of (self - 1)/pi^m, read off without precision loss."""
        d = self - self.ctx.one()
        if d.is_zeroish() or d.exp > m:
            return ResidueElement.from_int(self.ctx.p, 0)
        if d.exp < m:
            raise DomainError(f"element is not in U_{m}")
        num = self.ctx.poly_residue(d.num)
        den = self.ctx.poly_residue(d.den)
        return ResidueElement.make(self.ctx.p, num, den)

    def _ctx_of(self, o):
        if self.ctx is not o.ctx:
            raise DomainError("elements from different contexts")
        return self.ctx

    # -- text format -----------------------------------------------------

    def __str__(self):
        return serialize_element(self)

    def __repr__(self):
        return f"<{serialize_element(self)}>"


def local_op(a: LocalElement, b, op: str) -> LocalElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise DomainError(f"unknown local op {op!r}")


# -- serialization -----------------------------------------------------------


def _scalar_to_text(sc: Scalar) -> str:
    ctx = sc.ctx
    # write in the uniformizer: shipped contexts use z (zeta = 1 + pi),
    # synthetic ones the formal symbol t with t^k = z - 1.
    digs = sc.digits()
    if all(d == 0 for d in digs):
        return "0"
    var = "t" if ctx.synthetic else "(z-1)"
    parts = []
    for i, d in enumerate(digs):
        if not d:
            continue
        if i == 0:
            parts.append(str(d))
        elif i == 1:
            parts.append(var if d == 1 else f"{d}*{var}")
        else:
            parts.append(f"{var}^{i}" if d == 1 else f"{d}*{var}^{i}")
    return "+".join(parts)


def _poly_to_text(ctx: KatoContext, f) -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c.is_zero():
            continue
        ctext = _scalar_to_text(c)
        needs_parens = ("+" in ctext or "-" in ctext[1:]) if ctext else False
        ctext = f"({ctext})" if needs_parens else ctext
        if i == 0:
            parts.append(ctext)
        else:
            svar = "s" if i == 1 else f"s^{i}"
            parts.append(svar if ctext == "1" else f"{ctext}*{svar}")
    return "+".join(parts) if parts else "0"


def serialize_element(a: LocalElement) -> str:
    if a.is_zeroish():
        bound = a.zero_bound
        return "0" if bound >= INF else f"O(pi^{bound})"
    ctx = a.ctx
    num = _poly_to_text(ctx, a.num)
    den = _poly_to_text(ctx, a.den)
    core = f"({num})" if den == "1" else f"({num})/({den})"
    if a.exp:
        core = f"pi^{a.exp}*{core}"
    if a.prec < ctx.M:
        core += f"@{a.prec}"
    return core


class _ElementParser:
    """Expression parser evaluating straight to LocalElement."""

    def __init__(self, text: str, ctx: KatoContext):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def startswith(self, tok):
        return self.text.startswith(tok, self.pos)

    def parse(self) -> LocalElement:
        prec = None
        if "@" in self.text:
            body, ptext = self.text.rsplit("@", 1)
            self.text = body
            try:
                prec = int(ptext)
            except ValueError as exc:
                raise ParseError(f"bad precision suffix {ptext!r}") from exc
        val = self.expr()
        if self.pos != len(self.text):
            raise ParseError(f"trailing input at {self.pos} in {self.text!r}")
        if prec is not None and not val.is_zeroish():
            val = self.ctx.make(val.exp, val.num, val.den, min(val.prec, prec))
        return val

    def expr(self) -> LocalElement:
        if self.peek() == "-":
            self.pos += 1
            acc = -self.term()
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LocalElement:
        acc = self.power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                acc = acc * self.power()
            elif ch == "/":
                self.pos += 1
                acc = acc / self.power()
            elif ch == "(" or ch.isalpha():
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> LocalElement:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            return base ** (sign * self.integer())
        return base

    def atom(self) -> LocalElement:
        ctx = self.ctx
        if self.startswith("O(pi^"):
            self.pos += len("O(pi^")
            bound = self.integer()
            if self.peek() != ")":
                raise ParseError("unterminated O(pi^..) literal")
            self.pos += 1
            return ctx.zero(bound)
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                raise ParseError(f"expected ')' at {self.pos} in {self.text!r}")
            self.pos += 1
            return v
        if self.startswith("pi"):
            self.pos += 2
            return ctx.pi()
        if ch == "s":
            self.pos += 1
            return ctx.f_elt()
        if ch == "z":
            self.pos += 1
            return ctx.zeta()
        if ch == "t":
            if not ctx.synthetic:
                raise ParseError("symbol t only exists in synthetic contexts")
            self.pos += 1
            return ctx.pi()
        if ch.isdigit():
            return ctx.from_int(self.integer())
        raise ParseError(f"unexpected {ch!r} at {self.pos} in {self.text!r}")

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected integer at {self.pos} in {self.text!r}")
        return int(self.text[start:self.pos])


def parse_element(text: str, ctx: KatoContext) -> LocalElement:
    return _ElementParser(text, ctx).parse()


def make_context(p: int, M: int, e: int | None = None) -> KatoContext:
    return KatoContext(p, M, e)
