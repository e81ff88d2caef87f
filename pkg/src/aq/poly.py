"""Multivariate polynomials with exact coefficients.

A PolyRing fixes the field, the variable names, and the monomial order.
Polynomials are term maps {exponent tuple: coefficient}; they are treated
as immutable after construction. Deterministic everywhere: printing and
iteration always follow the ring's monomial order.
"""

from __future__ import annotations

from .fields import Field, FieldError, QQ
from .orders import MonomialOrder, mono_deg, mono_mul


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, col {col})")
        self.message = message
        self.line = line
        self.col = col


class PolyRing:
    """Polynomial ring k[x_1, ..., x_n] with a fixed monomial order."""

    def __init__(self, field: Field, variables, order: MonomialOrder | None = None):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PolyError("duplicate variable names")
        self.order = order if order is not None else MonomialOrder()
        if self.order.priority is not None and len(self.order.priority) != len(
            self.variables
        ):
            raise PolyError("order priority does not match the variable count")
        self._var_index = {v: i for i, v in enumerate(self.variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one()})

    def const(self, c) -> "Polynomial":
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_int(self, n: int) -> "Polynomial":
        return self.const(self.field.from_int(n))

    def var(self, name: str) -> "Polynomial":
        i = self.var_index(name)
        expo = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {expo: self.field.one()})

    def monomial(self, expo: tuple[int, ...], coeff=None) -> "Polynomial":
        c = self.field.one() if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {tuple(expo): c})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {tuple(e): c for e, c in terms.items() if not self.field.is_zero(c)}
        return Polynomial(self, clean)

    def poly(self, source: str) -> "Polynomial":
        return parse_polynomial(source, self)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def extended(self, new_vars) -> "PolyRing":
        new_vars = tuple(new_vars)
        order = self.order
        if order.priority is not None:
            extra = range(self.nvars, self.nvars + len(new_vars))
            order = MonomialOrder(order.name, order.priority + tuple(extra))
        return PolyRing(self.field, self.variables + new_vars, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.variables)}, {self.order.describe()})"


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_deg(e) == 0 for e in self.terms)

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def sorted_terms(self):
        """Terms as (expo, coeff), descending in the ring order."""
        key = self.ring.order.key
        return [(e, self.terms[e]) for e in sorted(self.terms, key=key, reverse=True)]

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order.key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def support_vars(self) -> tuple[int, ...]:
        """Indices of variables that actually occur."""
        seen = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    seen.add(i)
        return tuple(sorted(seen))

    # -- arithmetic --------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise PolyError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero()), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        self._check(other)
        F = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = F.add(out.get(e, F.zero()), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other) * self
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, int):
            return self + other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other) - self
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(c, k) for e, k in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.leading_coeff()))

    def mul_monomial(self, expo: tuple[int, ...], coeff=None) -> "Polynomial":
        F = self.ring.field
        c = F.one() if coeff is None else coeff
        return Polynomial(
            self.ring, {mono_mul(e, expo): F.mul(c, k) for e, k in self.terms.items()}
        )

    # -- calculus and substitution ------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        """Formal partial derivative; exponent multiples use the field
        characteristic, so d(x^p)/dx = 0 over GF(p)."""
        i = self.ring.var_index(var)
        F = self.ring.field
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            nc = F.mul(c, F.from_int(k))
            if F.is_zero(nc):
                continue
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            prev = out.get(ne)
            s = F.add(prev, nc) if prev is not None else nc
            if F.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        return Polynomial(self.ring, out)

    def substitute(self, target: PolyRing, images: dict[str, "Polynomial"]) -> "Polynomial":
        """Ring map into `target` sending each variable to its image.

        Variables missing from `images` map to the same-named variable of
        the target (which must exist).
        """
        cache: list[Polynomial | None] = []
        for v in self.ring.variables:
            if v in images:
                img = images[v]
                if img.ring != target:
                    raise PolyError("substitution image in wrong ring")
                cache.append(img)
            else:
                cache.append(target.var(v))
        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * cache[i] ** k
            result = result + term
        return result

    def rename_into(self, target: PolyRing, renaming: dict[str, str] | None = None) -> "Polynomial":
        """Variable-by-name transport into another ring.

        The renaming need not be injective; colliding monomials are added.
        """
        renaming = renaming or {}
        F = target.field
        idx = [target.var_index(renaming.get(v, v)) for v in self.ring.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] += k
            key = tuple(ne)
            if key in out:
                s = F.add(out[key], c)
                if F.is_zero(s):
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = c
        return Polynomial(target, out)

    def evaluate(self, point: dict[str, object]):
        """Value at a point given as {var name: field element}."""
        F = self.ring.field
        coords = []
        for v in self.ring.variables:
            if v not in point:
                raise PolyError(f"point does not assign variable {v!r}")
            coords.append(point[v])
        total = F.zero()
        for e, c in self.terms.items():
            val = c
            for i, k in enumerate(e):
                for _ in range(k):
                    val = F.mul(val, coords[i])
            total = F.add(total, val)
        return total

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(self.ring.variables[i])
                elif k > 1:
                    factors.append(f"{self.ring.variables[i]}^{k}")
            cs = F.to_str(c)
            if factors:
                body = "*".join(factors)
                if cs == "1":
                    text = body
                elif cs == "-1":
                    text = f"-{body}"
                else:
                    text = f"{cs}*{body}"
            else:
                text = cs
            pieces.append(text)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out


def stable_str(p: Polynomial) -> str:
    """Render with graded reverse-lex term order, whatever the ring uses.

    Reports that must be byte-identical across ambient order choices go
    through this instead of str().
    """
    order = p.ring.order
    if order.name == "degrevlex" and order.priority is None:
        return str(p)
    clone = PolyRing(p.ring.field, p.ring.variables, MonomialOrder())
    return str(p.rename_into(clone))


# -- parsing -----------------------------------------------------------

_OPS = set("+-*^()/,=")


def tokenize(src: str, line: int = 1, col0: int = 0):
    """Tokens: INT, NAME, or single-char operators, with positions."""
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        col = col0 + i + 1
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("INT", src[i:j], line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("NAME", src[i:j], line, col))
            i = j
        elif ch in _OPS:
            tokens.append((ch, ch, line, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _PolyParser:
    """expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := ('-')* atom ('^' INT)?; atom := INT ('/' INT)? | NAME | '(' expr ')'
    """

    def __init__(self, tokens, ring: PolyRing, line: int = 1):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.line = line

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line, 0)
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
        return p

    def expr(self) -> Polynomial:
        first = self.peek()
        negate = False
        if first is not None and first[0] == "-":
            self.next()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while True:
            tok = self.peek()
            if tok is None or tok[0] not in "+-":
                return p
            self.next()
            q = self.term()
            p = p + q if tok[0] == "+" else p - q

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "*":
                return p
            self.next()
            p = p * self.factor()

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok is not None and tok[0] == "-":
            self.next()
            return -self.factor()
        p = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "^":
            self.next()
            exp = self.expect("INT")
            p = p ** int(exp[1])
        return p

    def atom(self) -> Polynomial:
        tok = self.next()
        if tok[0] == "INT":
            num = int(tok[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "/":
                self.next()
                den = self.expect("INT")
                try:
                    c = self.ring.field.fraction(num, int(den[1]))
                except FieldError as exc:
                    raise ParseError(str(exc), den[2], den[3]) from None
                return self.ring.const(c)
            return self.ring.from_int(num)
        if tok[0] == "NAME":
            if tok[1] not in self.ring._var_index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            return self.ring.var(tok[1])
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def parse_polynomial(src: str, ring: PolyRing, line: int = 1, col0: int = 0) -> Polynomial:
    tokens = tokenize(src, line, col0)
    if not tokens:
        raise ParseError("empty polynomial", line, col0 + 1)
    return _PolyParser(tokens, ring, line).parse()
