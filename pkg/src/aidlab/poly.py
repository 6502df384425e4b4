"""Sparse multivariate polynomials over Q in coordinates x1..xn."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .linalg import QQ


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero ``mpq``.

    Monomials compare lexicographically on the exponent tuple, so ``x1`` is
    the most significant variable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent tuple has the wrong length")
            c = QQ(c)
            if c:
                clean[tuple(e)] = c
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = QQ(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The coordinate ``x_{i+1}`` (0-based ``i``)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): QQ.one})

    @classmethod
    def linear(cls, coeffs: Sequence, nvars: int | None = None, constant=0) -> "Poly":
        n = len(coeffs) if nvars is None else nvars
        terms = {}
        for i, c in enumerate(coeffs):
            c = QQ(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        constant = QQ(constant)
        if constant:
            terms[(0,) * n] = constant
        return cls._raw(n, terms)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, QQ.zero)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def leading(self) -> tuple[tuple, mpq]:
        e = max(self.terms)
        return e, self.terms[e]

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = QQ(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "Poly") -> "Poly | None":
        """``self / other`` if ``other`` divides ``self`` exactly, else ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly.zero(self.nvars)
        de, dc = other.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if any(a < b for a, b in zip(e, de)):
                return None
            qe = tuple(a - b for a, b in zip(e, de))
            qc = c / dc
            quot[qe] = qc
            for oe, oc in other.terms.items():
                t = tuple(a + b for a, b in zip(qe, oe))
                v = rem.get(t, 0) - qc * oc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly._raw(self.nvars, quot)

    def remainder(self, divisors: Iterable["Poly"]) -> "Poly":
        """Multivariate division remainder (lex order) by ``divisors``."""
        divs = [d for d in divisors if not d.is_zero()]
        if not divs:
            return self
        leads = [d.leading() for d in divs]
        rem = dict(self.terms)
        out: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            for d, (de, dc) in zip(divs, leads):
                if all(a >= b for a, b in zip(e, de)):
                    qe = tuple(a - b for a, b in zip(e, de))
                    qc = c / dc
                    for oe, oc in d.terms.items():
                        t = tuple(a + b for a, b in zip(qe, oe))
                        v = rem.get(t, 0) - qc * oc
                        if v:
                            rem[t] = v
                        else:
                            rem.pop(t, None)
                    break
            else:
                out[e] = c
                del rem[e]
        return Poly._raw(self.nvars, out)

    def primitive(self) -> "Poly":
        """Scale so the coefficients are coprime integers with a positive leading one."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, v)
        s = mpq(den, g)
        if self.leading()[1] < 0:
            s = -s
        return self * s

    # -- substitution and evaluation --------------------------------------

    def subs(self, i: int, value: "Poly") -> "Poly":
        """Replace ``x_{i+1}`` by the polynomial ``value``."""
        if self.degree_in(i) <= 0:
            return self
        powers = {0: Poly.const(1, self.nvars)}
        out = Poly.zero(self.nvars)
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value ** k
            rest = list(e)
            rest[i] = 0
            out = out + Poly._raw(self.nvars, {tuple(rest): c}) * powers[k]
        return out

    def evaluate(self, point: Sequence):
        total = QQ.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * QQ(x) ** k
            total += t
        return total

    def linear_coefficients(self) -> tuple[list, mpq]:
        if self.degree() > 1:
            raise ValueError("polynomial is not linear")
        coeffs = [QQ.zero] * self.nvars
        for e, c in self.terms.items():
            if any(e):
                coeffs[e.index(1)] = c
        return coeffs, self.constant_value()

    # -- misc ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, mpq)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, mpq]]:
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    if p.is_zero():
        return "0"
    names = names or [f"x{i + 1}" for i in range(p.nvars)]
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse the output of :func:`format_poly` (variables ``x1..xn``)."""
    import sympy

    syms = sympy.symbols(f"x1:{nvars + 1}")
    expr = sympy.sympify(text.replace("^", "**"), locals={f"x{i + 1}": s for i, s in enumerate(syms)})
    return from_sympy(expr, nvars)


def to_sympy(p: Poly):
    import sympy

    syms = sympy.symbols(f"x1:{p.nvars + 1}")
    return sympy.Add(
        *[
            sympy.Rational(int(c.numerator), int(c.denominator))
            * sympy.Mul(*[s**k for s, k in zip(syms, e)])
            for e, c in p.terms.items()
        ]
    )


def from_sympy(expr, nvars: int) -> Poly:
    import sympy

    syms = sympy.symbols(f"x1:{nvars + 1}")
    sp = sympy.Poly(expr, *syms, domain="QQ")
    return Poly(
        nvars, {tuple(e): mpq(int(c.p), int(c.q)) for e, c in zip(sp.monoms(), sp.coeffs())}
    )


def factor(p: Poly) -> list[Poly]:
    """Distinct irreducible factors over Q (primitive, multiplicities dropped)."""
    if p.degree() <= 1:
        return [p.primitive()] if p.degree() == 1 else []
    import sympy

    _, factors = sympy.factor_list(to_sympy(p))
    out = []
    for f, _mult in factors:
        q = from_sympy(f, p.nvars).primitive()
        if q.degree() >= 1 and q not in out:
            out.append(q)
    return out
