"""Multivariate polynomials over GF(p) or QQ.

Monomials are exponent tuples.  A polynomial is a dict ``{exponents: raw
coefficient}`` with no zero coefficients, wrapped in :class:`Polynomial`;
sorting the terms is left to the monomial order in use, so equality is
plain dict equality.

Monomial orders expose ``key(exps)``, a flat tuple of ints that compares
like the monomials do (larger key = larger monomial).  Negating every
entry reverses the comparison, which is what the reduction heaps use.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactfield import QQ, ContextError, Field, PrimeField, parse_field

Exps = Tuple[int, ...]


# --------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Base class; subclasses implement ``_key``."""

    name = "order"

    def __init__(self):
        pass

    def key(self, exps: Exps) -> Tuple[int, ...]:
        return self._key(exps)

    def _key(self, exps: Exps) -> Tuple[int, ...]:
        raise NotImplementedError

    def compare(self, a: Exps, b: Exps) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return ()

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    """Lexicographic order; ``perm`` lists variable indices by priority."""

    def __init__(self, perm: Optional[Sequence[int]] = None):
        super().__init__()
        self.perm = tuple(perm) if perm is not None else None
        self.name = "lex" if perm is None else f"lex{list(self.perm)}"

    def _key(self, exps):
        if self.perm is None:
            return exps
        return tuple(exps[i] for i in self.perm)

    def _ident(self):
        return self.perm


class GRevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    ``perm`` lists the variables from most to least significant; the last
    one is the variable that revlex treats as smallest (useful for the
    saturation-by-a-variable trick).
    """

    def __init__(self, perm: Optional[Sequence[int]] = None):
        super().__init__()
        self.perm = tuple(perm) if perm is not None else None
        self.name = "grevlex" if perm is None else f"grevlex{list(self.perm)}"

    def _key(self, exps):
        idx = self.perm if self.perm is not None else range(len(exps))
        return (sum(exps),) + tuple(-exps[i] for i in reversed(idx))

    def _ident(self):
        return self.perm


class RevLex(GRevLex):
    """Reverse lex without the degree; only a tie-breaker for weighted orders."""

    def __init__(self, perm=None):
        super().__init__(perm)
        self.name = "revlex" if perm is None else f"revlex{list(self.perm)}"

    def _key(self, exps):
        return super()._key(exps)[1:]


class Weighted(MonomialOrder):
    """Compare weighted degree first, then break ties with ``tie``."""

    def __init__(self, weights: Sequence[int], tie: Optional[MonomialOrder] = None):
        super().__init__()
        if any(w < 1 for w in weights):
            raise ValueError("weights must be strictly positive")
        self.weights = tuple(weights)
        self.tie = tie if tie is not None else RevLex()
        self.name = f"weighted{list(self.weights)}/{self.tie.name}"

    def _key(self, exps):
        return (sum(w * e for w, e in zip(self.weights, exps)),) + self.tie.key(exps)

    def _ident(self):
        return (self.weights, self.tie)


class Block(MonomialOrder):
    """Block (elimination) order: the first ``k`` variables dominate."""

    def __init__(self, k: int, first: MonomialOrder, second: MonomialOrder):
        super().__init__()
        self.k = k
        self.first = first
        self.second = second
        self.name = f"block({k}, {first.name}, {second.name})"

    def _key(self, exps):
        return self.first.key(exps[: self.k]) + self.second.key(exps[self.k :])

    def _ident(self):
        return (self.k, self.first, self.second)


def order_from_name(name: str) -> MonomialOrder:
    if name == "lex":
        return Lex()
    if name == "grevlex":
        return GRevLex()
    raise ValueError(f"unknown monomial order {name!r}")


# --------------------------------------------------------------------------
# rings


class Ring:
    """Polynomial ring context: variable names, coefficient field, weights.

    ``weights`` (strictly positive ints, one per variable) define the
    quasihomogeneous grading; without them the standard grading is used
    where a grading is needed.  ``order`` is the default monomial order.
    """

    def __init__(
        self,
        variables: Sequence[str],
        field: Field = QQ,
        weights: Optional[Sequence[int]] = None,
        order: Optional[MonomialOrder] = None,
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(variables):
                raise ValueError("need one weight per variable")
            if any(w < 1 for w in weights):
                raise ValueError("weights must be >= 1")
        self.variables = variables
        self.field = field
        self.weights = weights
        self.order = order if order is not None else GRevLex()
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.field == other.field
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.weights))

    def __repr__(self):
        s = f"{self.field}[{','.join(self.variables)}]"
        if self.weights is not None:
            s += f" weights {','.join(map(str, self.weights))}"
        return s

    @property
    def grading(self) -> Tuple[int, ...]:
        return self.weights if self.weights is not None else (1,) * self.nvars

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.variables, self.field, self.weights, order)

    def with_weights(self, weights) -> "Ring":
        return Ring(self.variables, self.field, weights, self.order)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(f"variable index {var} out of range")
            return var
        if isinstance(var, Polynomial):
            m = var.as_monomial()
            if m is None or sum(m) != 1:
                raise ValueError(f"{var} is not a variable")
            return m.index(1)
        try:
            return self._index[var]
        except KeyError:
            raise ValueError(f"unknown variable {var!r}") from None

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.convert(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def var(self, v) -> "Polynomial":
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise ContextError(f"polynomial from {x.ring} used in {self}")
            return x
        if isinstance(x, str):
            return parse_polynomial(x, self)
        return self.constant(x)

    def from_dict(self, terms: Dict[Exps, object]) -> "Polynomial":
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)


# --------------------------------------------------------------------------
# polynomials


def _add_into(target: dict, terms: dict, field, scale=None) -> None:
    """target += scale * terms, in place, dropping zeros."""
    if isinstance(field, PrimeField):
        p = field.p
        for e, c in terms.items():
            if scale is not None:
                c = c * scale
            v = (target.get(e, 0) + c) % p
            if v:
                target[e] = v
            else:
                target.pop(e, None)
    else:
        for e, c in terms.items():
            if scale is not None:
                c = c * scale
            v = target.get(e, 0) + c
            if v:
                target[e] = v
            else:
                target.pop(e, None)


class Polynomial:
    """Immutable polynomial in a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Dict[Exps, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self, order: Optional[MonomialOrder] = None) -> List[Tuple[Exps, object]]:
        """Terms in strictly descending order (default: the ring's order)."""
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Exps:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: Optional[MonomialOrder] = None):
        return self.terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def as_monomial(self) -> Optional[Exps]:
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if self.ring.field.is_one(c):
                return e
        return None

    def is_monomial(self) -> bool:
        """True for a single term (any nonzero coefficient)."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def support(self) -> set:
        """Indices of variables occurring in the polynomial."""
        s = set()
        for e in self.terms:
            s.update(i for i, a in enumerate(e) if a)
        return s

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        f = self.ring.field
        return self.scale(f.inv(self.leading_coefficient(order)))

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "residue"):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        _add_into(t, other.terms, self.ring.field)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        _add_into(t, other.terms, self.ring.field, scale=self.ring.field.neg(self.ring.field.one))
        return Polynomial(self.ring, t)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.convert(c)
        if not c:
            return self.ring.zero()
        mul = field.mul
        return Polynomial(self.ring, {e: mul(a, c) for e, a in self.terms.items()})

    def mul_monomial(self, exps: Exps, coeff=None) -> "Polynomial":
        field = self.ring.field
        out = {}
        for e, c in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = c if coeff is None else field.mul(c, coeff)
        return Polynomial(self.ring, out)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)) or hasattr(other, "residue"):
                return self.scale(other)
            return NotImplemented
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = self, other
        else:
            a, b = other, self
        field = self.ring.field
        out: dict = {}
        for eb, cb in b.terms.items():
            part = {tuple(x + y for x, y in zip(ea, eb)): ca for ea, ca in a.terms.items()}
            _add_into(out, part, field, scale=cb)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and gradings
    def derivative(self, var) -> "Polynomial":
        """Formal partial derivative (exponents divisible by p vanish in GF(p))."""
        i = self.ring.index(var)
        field = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = field.mul(c, field.convert(e[i]))
                if d:
                    out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = d
        return Polynomial(self.ring, out)

    def weighted_degree(self, weights: Optional[Sequence[int]] = None) -> Optional[int]:
        """Common weighted degree of all terms, or ``None`` if not quasihomogeneous.

        Uses the ring's weights unless ``weights`` is given.  The zero
        polynomial has no degree (``None``).
        """
        w = weights if weights is not None else self.ring.weights
        if w is None:
            raise ValueError("ring has no weights configured")
        degs = {sum(a * b for a, b in zip(w, e)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        w = weights if weights is not None else self.ring.grading
        return len({sum(a * b for a, b in zip(w, e)) for e in self.terms}) <= 1

    def substitute(self, images: Sequence["Polynomial"], target: Optional[Ring] = None) -> "Polynomial":
        """Ring map x_i -> images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or images[0].ring
        out = target.zero()
        cache: Dict[Tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    k = (i, a)
                    if k not in cache:
                        cache[k] = images[i] ** a
                    term = term * cache[k]
            out = out + term
        return out

    def change_ring(self, ring: Ring, positions: Optional[Sequence[int]] = None) -> "Polynomial":
        """Re-home the polynomial; ``positions[i]`` is the new index of variable i."""
        if positions is None:
            if ring.nvars != self.ring.nvars:
                raise ValueError("variable counts differ; give positions")
            if ring.field != self.ring.field:
                raise ContextError("coefficient fields differ")
            return Polynomial(ring, dict(self.terms))
        out = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    new[positions[i]] = a
            out[tuple(new)] = c
        return Polynomial(ring, out)

    # -- printing
    def to_string(self, order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            cs = field.format(mag)
            if not mono:
                body = cs
            elif field.is_one(mag):
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# --------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    """Malformed polynomial (or job) text; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int = 0, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek()[:2] == ("op", "+"):
            self.take()
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Polynomial:
        p = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op_tok = self.take()
            q = self.power()
            if op_tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.error("division only by nonzero constants", op_tok)
                c = next(iter(q.terms.values()))
                p = p.scale(self.ring.field.inv(c))
        return p

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return p
        if kind == "op" and val == "-":
            return -self.power()
        raise ParseError("expected a number, variable or '('" if kind != "end" else "unexpected end of input", pos, self.text)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    return _Parser(text, ring).parse()


def parse_ring(text: str) -> Ring:
    """Parse ``GF(2)[x1,x2]`` or ``QQ[x,y,z] weights 3,4,5``."""
    m = re.match(r"^\s*([^\[]+)\[([^\]]*)\]\s*(?:weights\s+([0-9,\s]+))?$", text)
    if m is None:
        raise ParseError(f"malformed ring declaration {text!r}", 0, text)
    try:
        field = parse_field(m.group(1))
    except ValueError as exc:
        raise ParseError(str(exc), m.start(1), text) from None
    names = [v.strip() for v in m.group(2).split(",") if v.strip()]
    bad = [v for v in names if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v)]
    if bad:
        raise ParseError(f"bad variable name {bad[0]!r}", m.start(2), text)
    weights = None
    if m.group(3):
        weights = [int(w) for w in m.group(3).split(",") if w.strip()]
    try:
        return Ring(names, field, weights=weights)
    except ValueError as exc:
        raise ParseError(str(exc), 0, text) from None


# --------------------------------------------------------------------------
# Euler relation


class NotInvertibleError(ArithmeticError):
    """The weighted degree vanishes in the coefficient field."""


def partial_derivative(f: Polynomial, i) -> Polynomial:
    return f.derivative(i)


def weighted_degree(f: Polynomial, weights=None) -> Optional[int]:
    return f.weighted_degree(weights)


def euler_combination(f: Polynomial, weights: Optional[Sequence[int]] = None) -> List[Polynomial]:
    """Coefficients c_j = (w_j / deg f) * df/dx_j with f = sum_j x_j * c_j.

    Raises NotInvertibleError if f is not quasihomogeneous or its weighted
    degree is zero in the coefficient field.
    """
    ring = f.ring
    w = weights if weights is not None else ring.grading
    deg = f.weighted_degree(w)
    if deg is None:
        raise NotInvertibleError(f"{f} is not quasihomogeneous for weights {list(w)}")
    field = ring.field
    d = field.convert(deg)
    if not d:
        raise NotInvertibleError(
            f"weighted degree {deg} of {f} is zero in {field}"
        )
    dinv = field.inv(d)
    return [f.derivative(j).scale(field.mul(field.convert(w[j]), dinv)) for j in range(ring.nvars)]


def exps_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exps_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x > y else y for x, y in zip(a, b))


def exps_gcd(a: Exps, b: Exps) -> Exps:
    return tuple(x if x < y else y for x, y in zip(a, b))
