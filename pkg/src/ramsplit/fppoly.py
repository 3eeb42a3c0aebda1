"""Dense polynomial arithmetic over the prime field F_p.

Polynomials are tuples of ints in [0, p), index = degree, no trailing
zeros; the zero polynomial is the empty tuple.  Everything here is exact
and deterministic (Berlekamp factorization enumerates F_p directly).
"""

from __future__ import annotations

from .errors import DomainError, ParseError

ZERO: tuple[int, ...] = ()
ONE: tuple[int, ...] = (1,)
X: tuple[int, ...] = (0, 1)


def trim(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def normalize(coeffs, p: int) -> tuple[int, ...]:
    return trim(c % p for c in coeffs)


def deg(f) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                for i in range(n))


def neg(f, p):
    return tuple((-c) % p for c in f)


def sub(f, g, p):
    return add(f, neg(g, p), p)


def scale(f, c, p):
    c %= p
    if c == 0:
        return ZERO
    return tuple((a * c) % p for a in f)


def mul(f, g, p):
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def pow_(f, n, p):
    if n < 0:
        raise DomainError("negative polynomial power")
    r = ONE
    b = f
    while n:
        if n & 1:
            r = mul(r, b, p)
        b = mul(b, b, p)
        n >>= 1
    return r


def divmod_(f, g, p):
    if not g:
        raise DomainError("polynomial division by zero")
    inv_lead = pow(g[-1], p - 2, p)
    rem = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = (rem[i + len(g) - 1] * inv_lead) % p
        if c:
            q[i] = c
            for j, b in enumerate(g):
                rem[i + j] = (rem[i + j] - c * b) % p
    return trim(q), trim(rem)


def mod(f, g, p):
    return divmod_(f, g, p)[1]


def gcd(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def monic(f, p):
    if not f:
        return ZERO
    return scale(f, pow(f[-1], p - 2, p), p)


def deriv(f, p):
    return trim((i * f[i]) % p for i in range(1, len(f)))


def eval_(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def is_pth_power(f, p) -> bool:
    """Over F_p, f is a p-th power iff only exponents divisible by p occur."""
    return all(c == 0 for i, c in enumerate(f) if i % p != 0)


def pth_root(f, p):
    if not is_pth_power(f, p):
        raise DomainError("polynomial is not a p-th power")
    return trim(f[i] for i in range(0, len(f), p))


def _berlekamp_matrix(f, p):
    # rows of Q - I where row i is x^{p*i} mod f
    n = deg(f)
    xpow = mod(pow_(X, p, p), f, p)
    rows = []
    xp = ONE
    for i in range(n):
        row = [xp[j] if j < len(xp) else 0 for j in range(n)]
        row[i] = (row[i] - 1) % p
        rows.append(row)
        xp = mod(mul(xp, xpow, p), f, p)
    return rows


def _nullspace(rows, n, p):
    # Gaussian elimination over F_p on the transpose; returns basis vectors.
    m = [[rows[r][c] for r in range(n)] for c in range(n)]  # transpose: m[c][r]
    pivots = {}
    r = 0
    for c in range(n):
        sel = None
        for i in range(r, n):
            if m[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(m[i][j] - f * m[r][j]) % p for j in range(n)]
        pivots[c] = r
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for c, pr in pivots.items():
            v[c] = (-m[pr][fc]) % p
        basis.append(tuple(v))
    return basis


def squarefree_part_factors(f, p):
    """Squarefree decomposition helper: returns list of (g, multiplicity)."""
    out = []
    f = monic(f, p)
    mult = 1
    while deg(f) > 0:
        d = deriv(f, p)
        if not d:
            # f is a p-th power
            f = pth_root(f, p)
            mult *= p
            continue
        g = gcd(f, d, p)
        sqfree = divmod_(f, g, p)[0]
        k = 1
        while deg(sqfree) > 0:
            h = gcd(sqfree, g, p)
            part = divmod_(sqfree, h, p)[0]
            if deg(part) > 0:
                out.append((part, mult * k))
            sqfree = h
            if deg(g) > 0:
                g = divmod_(g, h, p)[0]
            k += 1
        f = g
    return out


def _berlekamp_split(f, p):
    """Split a monic squarefree f into irreducible factors (deterministic)."""
    n = deg(f)
    if n <= 1:
        return [f]
    rows = _berlekamp_matrix(f, p)
    basis = _nullspace(rows, n, p)
    if len(basis) == 1:
        return [f]
    factors = [f]
    for v in basis:
        vp = trim(v)
        if deg(vp) < 1:
            continue
        next_factors = []
        for g in factors:
            if deg(g) <= 1:
                next_factors.append(g)
                continue
            rem = g
            pieces = []
            for c in range(p):
                h = gcd(rem, sub(vp, (c,), p), p)
                if deg(h) > 0:
                    pieces.append(h)
                    rem = divmod_(rem, h, p)[0]
                if deg(rem) == 0:
                    break
            if deg(rem) > 0:
                pieces.append(rem)
            next_factors.extend(pieces if pieces else [g])
        factors = next_factors
        if len(factors) == n:
            break
    # recurse until stable
    out = []
    for g in factors:
        if deg(g) <= 1:
            out.append(monic(g, p))
        else:
            sub_rows = _berlekamp_matrix(g, p)
            if len(_nullspace(sub_rows, deg(g), p)) == 1:
                out.append(monic(g, p))
            else:
                out.extend(_berlekamp_split(g, p))
    return out


def factor(f, p):
    """Full factorization: returns (unit in F_p*, list of (monic irreducible, exp))."""
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    unit = f[-1]
    f = monic(f, p)
    found: dict[tuple[int, ...], int] = {}
    for g, mult in squarefree_part_factors(f, p):
        for q in _berlekamp_split(g, p):
            if deg(q) >= 1:
                found[q] = found.get(q, 0) + mult
    items = sorted(found.items(), key=lambda kv: (deg(kv[0]), kv[0]))
    return unit, items


def is_irreducible(f, p) -> bool:
    if deg(f) < 1:
        return False
    _, items = factor(f, p)
    return len(items) == 1 and items[0][1] == 1 and deg(items[0][0]) == deg(f)


def to_str(f, var: str = "s") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{var}" if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return "+".join(parts)


class _PolyParser:
    """Recursive-descent parser for integer/variable polynomial expressions."""

    def __init__(self, text: str, var: str, p: int):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.var = var
        self.p = p

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r} at {self.pos} in {self.text!r}")
        self.pos += 1

    def parse(self):
        f = self.expr()
        if self.pos != len(self.text):
            raise ParseError(f"trailing input at {self.pos} in {self.text!r}")
        return f

    def expr(self):
        if self.peek() == "-":
            self.pos += 1
            acc = neg(self.term(), self.p)
        else:
            acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            acc = add(acc, t, self.p) if op == "+" else sub(acc, t, self.p)
        return acc

    def term(self):
        acc = self.power()
        while self.peek() == "*" or self.peek() == self.var or self.peek() == "(":
            if self.peek() == "*":
                self.pos += 1
            acc = mul(acc, self.power(), self.p)
        return acc

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            base = pow_(base, n, self.p)
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            f = self.expr()
            self.expect(")")
            return f
        if ch == self.var:
            self.pos += 1
            return X
        if ch.isdigit():
            return normalize((self.integer(),), self.p)
        raise ParseError(f"unexpected {ch!r} at {self.pos} in {self.text!r}")

    def integer(self):
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected integer at {self.pos} in {self.text!r}")
        return int(self.text[start:self.pos])


def from_str(text: str, p: int, var: str = "s"):
    parser = _PolyParser(text, var, p)
    return parser.parse()
