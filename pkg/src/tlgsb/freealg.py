"""Words, the degree-lexicographic order and polynomials of the free algebra.

Coefficients are polynomials in a formal parameter ``d`` with integer
coefficients.  Division, which only completion ever needs, moves into the
fraction field; such scalars are kept as a reduced pair ``num/den`` of
integer polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Word = Tuple[int, ...]
EMPTY: Word = ()


class InvalidGeneratorError(ValueError):
    pass


class EmptyPolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Dense integer polynomials in d: tuples of coefficients, lowest degree first,
# no trailing zeros.  () is the zero polynomial.
# ---------------------------------------------------------------------------

_ZP = Tuple[int, ...]


def _trim(c: Sequence[int]) -> _ZP:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a: _ZP, b: _ZP) -> _ZP:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: _ZP) -> _ZP:
    return tuple(-x for x in a)


def _pmul(a: _ZP, b: _ZP) -> _ZP:
    if not a or not b:
        return ()
    if len(a) == 1:
        return tuple(a[0] * x for x in b)
    if len(b) == 1:
        return tuple(b[0] * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _content(a: _ZP) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def _primitive(a: _ZP) -> _ZP:
    c = _content(a)
    if c in (0, 1):
        return a
    return tuple(x // c for x in a)


def _pseudo_rem(a: _ZP, b: _ZP) -> _ZP:
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r = list(_trim(r))
    return tuple(r)


def _pgcd(a: _ZP, b: _ZP) -> _ZP:
    """gcd in Z[d], normalized to a positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        c = gcd(_content(a), _content(b))
        a, b = _primitive(a), _primitive(b)
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = _pseudo_rem(a, b)
            a, b = b, _primitive(r)
        g = tuple(c * x for x in _primitive(a))
    if g and g[-1] < 0:
        g = _pneg(g)
    return g


def _pexquo(a: _ZP, b: _ZP) -> _ZP:
    """Exact quotient a / b in Z[d]; b must divide a."""
    if len(b) == 1:
        q = []
        for x in a:
            if x % b[0]:
                raise ArithmeticError("inexact division")
            q.append(x // b[0])
        return tuple(q)
    r = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr, lb = r[-1], b[-1]
        if lr % lb:
            raise ArithmeticError("inexact division")
        t = lr // lb
        shift = len(r) - 1 - db
        q[shift] = t
        for i, y in enumerate(b):
            r[i + shift] -= t * y
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact division")
    return _trim(q)


def _pstr(a: _ZP, param: str) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        m = abs(c)
        if k == 0:
            body = str(m)
        else:
            mono = param if k == 1 else f"{param}^{k}"
            body = mono if m == 1 else f"{m}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class ParamScalar:
    """An element of Z[d], or of its fraction field once division happened.

    Stored as ``num/den`` with ``gcd(num, den) = 1`` in Z[d] and the leading
    coefficient of ``den`` positive, which makes the representation unique.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[int] = (), den: Sequence[int] = (1,)):
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (1,)
        elif den != (1,):
            g = _pgcd(num, den)
            if g != (1,):
                num, den = _pexquo(num, g), _pexquo(den, g)
            if den[-1] < 0:
                num, den = _pneg(num), _pneg(den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: _ZP, den: _ZP = (1,)) -> "ParamScalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        return s

    @classmethod
    def of(cls, value: "ScalarLike") -> "ParamScalar":
        if isinstance(value, ParamScalar):
            return value
        if isinstance(value, int):
            return cls._raw((value,) if value else ())
        raise TypeError(f"cannot convert {value!r} to ParamScalar")

    @classmethod
    def param(cls, power: int = 1, coeff: int = 1) -> "ParamScalar":
        if not coeff:
            return ZERO
        return cls._raw((0,) * power + (coeff,))

    # -- predicates ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def is_integral(self) -> bool:
        """True when the scalar lies in Z[d]."""
        return self.den == (1,)

    def monomial_shape(self) -> Tuple[int, int] | None:
        """Return (c, b) when the scalar is exactly c*d^b, else None."""
        if self.den != (1,) or not self.num:
            return None
        nz = [k for k, x in enumerate(self.num) if x]
        if len(nz) != 1:
            return None
        return self.num[nz[0]], nz[0]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "ScalarLike") -> "ParamScalar":
        other = ParamScalar.of(other)
        if self.den == (1,) and other.den == (1,):
            return ParamScalar._raw(_padd(self.num, other.num))
        return ParamScalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar._raw(_pneg(self.num), self.den)

    def __sub__(self, other: "ScalarLike") -> "ParamScalar":
        return self + (-ParamScalar.of(other))

    def __rsub__(self, other: "ScalarLike") -> "ParamScalar":
        return ParamScalar.of(other) + (-self)

    def __mul__(self, other: "ScalarLike") -> "ParamScalar":
        other = ParamScalar.of(other)
        if self.den == (1,) and other.den == (1,):
            return ParamScalar._raw(_pmul(self.num, other.num))
        return ParamScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamScalar":
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "ParamScalar":
        if not self.num:
            raise ZeroDivisionError("division by the zero scalar")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other: "ScalarLike") -> "ParamScalar":
        return exact_divide(self, ParamScalar.of(other))

    def __rtruediv__(self, other: "ScalarLike") -> "ParamScalar":
        return exact_divide(ParamScalar.of(other), self)

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ParamScalar.of(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_string(self, param: str = "d") -> str:
        if self.den == (1,):
            return _pstr(self.num, param)
        num, den = _pstr(self.num, param), _pstr(self.den, param)
        return f"({num})/({den})"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"ParamScalar({self.to_string()!r})"

    def is_compound(self) -> bool:
        """Whether printing needs parentheses when followed by a word."""
        if self.den != (1,):
            return True
        return sum(1 for x in self.num if x) > 1


ScalarLike = Union[ParamScalar, int]

ZERO = ParamScalar._raw(())
ONE = ParamScalar._raw((1,))
DELTA = ParamScalar._raw((0, 1))


def exact_divide(a: ScalarLike, b: ScalarLike) -> ParamScalar:
    a, b = ParamScalar.of(a), ParamScalar.of(b)
    if not b:
        raise ZeroDivisionError("division by the zero scalar")
    if b.den == (1,) and a.den == (1,) and len(b.num) == 1:
        c = b.num[0]
        if all(x % c == 0 for x in a.num):
            return ParamScalar._raw(tuple(x // c for x in a.num))
    return ParamScalar(_pmul(a.num, b.den), _pmul(a.den, b.num))


# ---------------------------------------------------------------------------
# Monomial order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order on words over ``range(size)``.

    ``ranking[g]`` is the rank of generator ``g``; the identity ranking makes
    generator 0 the smallest letter.
    """

    ranking: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError("ranking must be a permutation of the alphabet")
        object.__setattr__(self, "_identity", self.ranking == tuple(range(len(self.ranking))))

    @classmethod
    def deglex(cls, size: int) -> "MonomialOrder":
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.ranking)

    def check(self, word: Iterable[int]) -> None:
        n = len(self.ranking)
        for x in word:
            if not (isinstance(x, int) and 0 <= x < n):
                raise InvalidGeneratorError(f"generator {x!r} outside alphabet of size {n}")

    def key(self, word: Word):
        if self._identity:
            return (len(word), word)
        r = self.ranking
        return (len(word), tuple(r[x] for x in word))

    def letters_by_rank(self) -> Tuple[int, ...]:
        out = [0] * len(self.ranking)
        for g, r in enumerate(self.ranking):
            out[r] = g
        return tuple(out)


def compare_words(u: Word, v: Word, order: MonomialOrder) -> int:
    """-1, 0 or 1 as u is less than, equal to or greater than v."""
    order.check(u)
    order.check(v)
    ku, kv = order.key(tuple(u)), order.key(tuple(v))
    return (ku > kv) - (ku < kv)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Finite linear combination of words; treat instances as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, ScalarLike] | Iterable[Tuple[Word, ScalarLike]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Word, ParamScalar] = {}
        for w, c in items:
            w = tuple(w)
            c = ParamScalar.of(c)
            if w in acc:
                c = acc[w] + c
            if c:
                acc[w] = c
            else:
                acc.pop(w, None)
        self.terms = acc

    @classmethod
    def _from_dict(cls, terms: Dict[Word, ParamScalar]) -> "Polynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, word: Sequence[int], coeff: ScalarLike = 1) -> "Polynomial":
        return cls({tuple(word): coeff})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_dict({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Word, ParamScalar]]:
        return iter(self.terms.items())

    def words(self):
        return self.terms.keys()

    def coefficient(self, word: Sequence[int]) -> ParamScalar:
        return self.terms.get(tuple(word), ZERO)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                del out[w]
        return Polynomial._from_dict(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_dict({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "Polynomial":
        c = ParamScalar.of(c)
        if not c:
            return Polynomial.zero()
        if c.is_one():
            return self
        return Polynomial._from_dict({w: c * x for w, x in self.terms.items()})

    def mul_word(self, left: Sequence[int] = EMPTY, right: Sequence[int] = EMPTY) -> "Polynomial":
        left, right = tuple(left), tuple(right)
        return Polynomial._from_dict({left + w + right: c for w, c in self.terms.items()})

    def __mul__(self, other: "Polynomial | ScalarLike") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = Polynomial.zero()
        for w, c in other.terms.items():
            out = out + self.mul_word(EMPTY, w).scale(c)
        return out

    def __rmul__(self, other: ScalarLike) -> "Polynomial":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self, order: MonomialOrder, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=descending)

    def leading_term(self, order: MonomialOrder) -> Tuple[Word, ParamScalar]:
        return leading_term(self, order)

    def to_string(self, names: Sequence[str] | None = None, param: str = "d",
                  order: MonomialOrder | None = None, word_fmt=None) -> str:
        if not self.terms:
            return "0"
        if order is None:
            items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]), reverse=True)
        else:
            items = self.sorted_terms(order)
        out = ""
        for k, (w, c) in enumerate(items):
            neg = False
            if c.is_integral() and not c.is_compound() and c.num[-1] < 0:
                neg, c = True, -c
            wtxt = word_fmt(w) if word_fmt is not None else word_to_string(w, names)
            if c.is_one():
                body = wtxt
            else:
                ctxt = c.to_string(param)
                if c.is_compound() and c.den == (1,):
                    ctxt = f"({ctxt})"
                body = ctxt if not w else f"{ctxt} * {wtxt}"
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r})"


def word_to_string(word: Sequence[int], names: Sequence[str] | None = None) -> str:
    if not word:
        return "1"
    if names is None:
        return " ".join(f"e{x}" for x in word)
    return " ".join(names[x] for x in word)


def leading_term(p: Polynomial, order: MonomialOrder) -> Tuple[Word, ParamScalar]:
    if not p.terms:
        raise EmptyPolynomialError("the zero polynomial has no leading term")
    w = max(p.terms, key=order.key)
    return w, p.terms[w]


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def scale(c: ScalarLike, p: Polynomial) -> Polynomial:
    return p.scale(c)


def mul_word(a: Sequence[int], p: Polynomial, b: Sequence[int]) -> Polynomial:
    return p.mul_word(a, b)


def make_monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    """Divide ``p`` by its leading coefficient."""
    _, c = leading_term(p, order)
    if c.is_one():
        return p
    inv = ONE / c
    return Polynomial._from_dict({w: x * inv for w, x in p.terms.items()})
