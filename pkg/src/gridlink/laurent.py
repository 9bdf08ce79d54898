"""Exact multivariate Laurent polynomials with half-integer exponents.

Exponents are stored in *half-units*: the stored integer ``2s`` stands for
the exponent ``s``.  So ``t1^(1/2)`` is stored as ``(1,)`` and ``t1^-1`` as
``(-2,)``.  Every operation in this module works on the stored integers, so
no fractional arithmetic is ever needed.

Terms are ordered lexicographically on the exponent vector, first variable
most significant.  This order is used for display, for leading terms and for
long division.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exceptions import NotDivisible

Exponent = tuple[int, ...]


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def half_units(value) -> int:
    """Convert an exponent (int, Fraction or ``"p/q"`` string) to half-units."""
    f = Fraction(value) * 2
    if f.denominator != 1:
        raise ValueError(f"exponent {value!r} is not a half-integer")
    return int(f)


def format_half(e: int) -> str:
    """Render a stored half-unit value as an exponent in lowest terms."""
    if e % 2 == 0:
        return str(e // 2)
    return f"{e}/2"


class LaurentPoly:
    """An element of Z[t_1^(+-1/2), ..., t_mu^(+-1/2)].

    Instances are immutable.  ``terms`` maps half-unit exponent tuples to
    nonzero integer coefficients.

    >>> t = LaurentPoly.var(0, 1)
    >>> str((t + 1) * (t - 1))
    't1^2 - 1'
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, nvars: int = 1):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars:
                        raise ValueError(
                            f"exponent {e} has length {len(e)}, expected {nvars}"
                        )
                    clean[e] = clean.get(e, 0) + int(c)
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._terms = terms
        p._nvars = nvars
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: 1}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: int(c)} if c else {}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        """Monomial from a *half-unit* exponent vector."""
        e = tuple(int(x) for x in exponent)
        return cls._raw({e: int(coeff)} if coeff else {}, len(e))

    @classmethod
    def var(cls, k: int, nvars: int, power=1) -> "LaurentPoly":
        """The monomial ``t_{k+1}^power``; ``power`` may be a half-integer."""
        e = [0] * nvars
        e[k] = half_units(power)
        return cls._raw({tuple(e): 1}, nvars)

    @classmethod
    def from_exponents(cls, terms: Mapping[Sequence, int], nvars: int) -> "LaurentPoly":
        """Build from *true* exponents (ints or Fractions), not half-units."""
        return cls(
            {tuple(half_units(x) for x in e): c for e, c in terms.items()}, nvars
        )

    @classmethod
    def parse(cls, text: str, nvars: int) -> "LaurentPoly":
        """Parse the canonical text form, e.g. ``"t1^2 - 3*t1*t2^(-1/2) + 1"``."""
        return _parse(text, nvars)

    # -- accessors --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in decreasing monomial order."""
        return sorted(self._terms.items(), reverse=True)

    def leading_term(self) -> tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponents(self) -> Exponent:
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> Exponent:
        return tuple(max(col) for col in zip(*self._terms))

    # -- ring operations --------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self._nvars != other._nvars:
            raise ValueError(
                f"variable count mismatch: {self._nvars} vs {other._nvars}"
            )

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        if len(b) == 1:
            (eb, cb), = b.items()
            for ea, ca in a.items():
                out[_add(ea, eb)] = ca * cb
            return LaurentPoly._raw(out, self._nvars)
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = _add(ea, eb)
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("negative powers need a unit monomial")
            (e, c), = self._terms.items()
            return LaurentPoly._raw({tuple(x * k for x in e): c ** -k}, self._nvars)
        result = LaurentPoly.one(self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # -- substitutions ----------------------------------------------------

    def shift(self, exponent: Sequence[int]) -> "LaurentPoly":
        """Multiply by the unit monomial with the given half-unit exponent."""
        s = tuple(exponent)
        return LaurentPoly._raw(
            {_add(e, s): c for e, c in self._terms.items()}, self._nvars
        )

    def invert_vars(self) -> "LaurentPoly":
        """Substitute t_k -> t_k^-1 for every k."""
        return LaurentPoly._raw(
            {tuple(-x for x in e): c for e, c in self._terms.items()}, self._nvars
        )

    def substitute_square(self) -> "LaurentPoly":
        """Substitute t_k -> t_k^2 for every k."""
        return LaurentPoly._raw(
            {tuple(2 * x for x in e): c for e, c in self._terms.items()}, self._nvars
        )

    def substitute_sqrt(self) -> "LaurentPoly":
        """Substitute t_k -> t_k^(1/2); exponents must be integers."""
        out = {}
        for e, c in self._terms.items():
            if any(x % 2 for x in e):
                raise ValueError("t -> t^(1/2) needs integer exponents")
            out[tuple(x // 2 for x in e)] = c
        return LaurentPoly._raw(out, self._nvars)

    def permute_vars(self, perm: Sequence[int]) -> "LaurentPoly":
        """Rename variable ``k`` to variable ``perm[k]``."""
        out = {}
        for e, c in self._terms.items():
            f = [0] * self._nvars
            for k, x in enumerate(e):
                f[perm[k]] = x
            out[tuple(f)] = c
        return LaurentPoly._raw(out, self._nvars)

    def scale_exponents(self, factors: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(
            {tuple(x * f for x, f in zip(e, factors)): c for e, c in self._terms.items()},
            self._nvars,
        )

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r}, nvars={self._nvars})"


def _monomial_text(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, x in zip(names, e):
        if x == 0:
            continue
        if x == 2:
            parts.append(name)
        elif x > 0 and x % 2 == 0:
            parts.append(f"{name}^{x // 2}")
        else:
            parts.append(f"{name}^({format_half(x)})")
    return "*".join(parts)


def to_text(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"t{k + 1}" for k in range(p.nvars)]
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(e, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_FACTOR = re.compile(r"^t(\d+)(?:\^(?:\(([^)]*)\)|(\d+)))?$")


def _parse(text: str, nvars: int) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(nvars)
    # split on +/- that are not inside parentheses
    tokens, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip():
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
    tokens.append(cur)
    terms: dict[Exponent, int] = {}
    for tok in tokens:
        tok = tok.replace(" ", "")
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        coeff = 1
        e = [0] * nvars
        for factor in tok.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            k = int(m.group(1)) - 1
            if not 0 <= k < nvars:
                raise ValueError(f"variable t{k + 1} out of range")
            power = m.group(2) or m.group(3) or "1"
            e[k] += half_units(Fraction(power))
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentPoly(terms, nvars)


# -- division and determinants ----------------------------------------------


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * d == p``; raise :class:`NotDivisible` otherwise.

    Long division on leading terms.  The quotient's exponents are confined to
    the box ``[min(p) - min(d), max(p) - max(d)]`` coordinatewise, which both
    guarantees termination and detects non-divisibility early.
    """
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    nv = p.nvars
    if p.is_zero():
        return LaurentPoly.zero(nv)
    if d.is_monomial():
        (ed, cd), = d.items()
        out = {}
        for e, c in p.items():
            if c % cd:
                raise NotDivisible(f"{p} is not divisible by {d}")
            out[_sub(e, ed)] = c // cd
        return LaurentPoly._raw(out, nv)
    lo = _sub(p.min_exponents(), d.min_exponents())
    hi = _sub(p.max_exponents(), d.max_exponents())
    if any(a > b for a, b in zip(lo, hi)):
        raise NotDivisible(f"{p} is not divisible by {d}")
    lead_e, lead_c = d.leading_term()
    d_terms = list(d.items())
    rem = dict(p._terms)
    quot: dict[Exponent, int] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        if c % lead_c:
            raise NotDivisible(f"{p} is not divisible by {d}")
        qe = _sub(e, lead_e)
        if any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
            raise NotDivisible(f"{p} is not divisible by {d}")
        qc = c // lead_c
        quot[qe] = qc
        for de, dc in d_terms:
            k = _add(qe, de)
            v = rem.get(k, 0) - qc * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot, nv)


def _cofactor_det(m: list[list[LaurentPoly]], nvars: int) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.one(nvars)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = LaurentPoly.zero(nvars)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor_det(minor, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_determinant(m: Sequence[Sequence[LaurentPoly]], nvars: int | None = None) -> LaurentPoly:
    """Determinant by Laplace expansion along the first row (any size)."""
    rows = [list(r) for r in m]
    return _cofactor_det(rows, _nvars_of(rows, nvars))


def _nvars_of(rows, nvars):
    if nvars is not None:
        return nvars
    for row in rows:
        for x in row:
            return x.nvars
    raise ValueError("cannot infer variable count of an empty matrix")


def determinant(m: Sequence[Sequence[LaurentPoly]], nvars: int | None = None) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials.

    Uses fraction-free (Bareiss) elimination, where every division is exact;
    matrices smaller than 4x4 go through cofactor expansion.
    """
    a = [list(r) for r in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    nv = _nvars_of(a, nvars)
    if n < 4:
        return _cofactor_det(a, nv)
    sign = 1
    prev = LaurentPoly.one(nv)
    for k in range(n - 1):
        if a[k][k].is_zero():
            # prefer the sparsest available pivot
            candidates = [i for i in range(k + 1, n) if not a[i][k].is_zero()]
            if not candidates:
                return LaurentPoly.zero(nv)
            i = min(candidates, key=lambda r: len(a[r][k]))
            a[k], a[i] = a[i], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                if aik.is_zero():
                    num = row_i[j] * pivot
                elif row_k[j].is_zero():
                    num = row_i[j] * pivot
                else:
                    num = row_i[j] * pivot - aik * row_k[j]
                row_i[j] = divide_exact(num, prev) if not num.is_zero() else num
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


# -- rational functions -----------------------------------------------------


class RationalFn:
    """A formal quotient ``num / den`` of Laurent polynomials.

    Not reduced to lowest terms.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_int(cls, c: int, nvars: int) -> "RationalFn":
        return cls(LaurentPoly.constant(c, nvars))

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn(other)
        if isinstance(other, int):
            return RationalFn.from_int(other, self.nvars)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFn(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def invert_vars(self) -> "RationalFn":
        return RationalFn(self.num.invert_vars(), self.den.invert_vars())

    def substitute_square(self) -> "RationalFn":
        return RationalFn(self.num.substitute_square(), self.den.substitute_square())

    def substitute_sqrt(self) -> "RationalFn":
        return RationalFn(self.num.substitute_sqrt(), self.den.substitute_sqrt())

    def permute_vars(self, perm: Sequence[int]) -> "RationalFn":
        return RationalFn(self.num.permute_vars(perm), self.den.permute_vars(perm))

    def to_poly(self) -> LaurentPoly:
        """The quotient as a Laurent polynomial; raises NotDivisible."""
        return divide_exact(self.num, self.den)

    def normalized(self) -> "RationalFn":
        """An equal fraction in display form.

        Cancels the denominator when it divides the numerator (or vice versa),
        centres the denominator's exponent box on the origin and makes the
        denominator's leading coefficient positive.
        """
        num, den = self.num, self.den
        nv = self.nvars
        if num.is_zero():
            return RationalFn(num, LaurentPoly.one(nv))
        try:
            return RationalFn(divide_exact(num, den))
        except NotDivisible:
            pass
        try:
            den = divide_exact(den, num)
            num = LaurentPoly.one(nv)
        except NotDivisible:
            pass
        lo, hi = den.min_exponents(), den.max_exponents()
        integral = all(x % 2 == 0 for p in (num, den) for e, _ in p.items() for x in e)
        if integral:
            shift = tuple(-2 * ((a + b) // 4) for a, b in zip(lo, hi))
        else:
            shift = tuple(-((a + b) // 2) for a, b in zip(lo, hi))
        num, den = num.shift(shift), den.shift(shift)
        if den.leading_term()[1] < 0:
            num, den = -num, -den
        return RationalFn(num, den)

    def __str__(self) -> str:
        r = self.normalized()
        if r.den == 1:
            return str(r.num)
        num = str(r.num)
        if len(r.num) > 1:
            num = f"({num})"
        return f"{num}/({r.den})"

    def __repr__(self) -> str:
        return f"RationalFn({self.num!s} / {self.den!s})"


def product(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.one(nvars)
    for p in polys:
        out = out * p
    return out
