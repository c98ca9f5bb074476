"""Exact sparse polynomial ring with commuting and anticommuting generators.

The ring has m commuting generators x1..xm and 2n anticommuting (Grassmann)
generators xg1..xg2n with xgi*xgj = -xgj*xgi (so xgj^2 = 0), while bosonic
generators commute with everything.  Coefficients are exact rationals
(`fractions.Fraction`); no floating point is used anywhere.

Monomials are kept in a canonical form: the Grassmann factors are stored as a
strictly ascending index tuple and reordering signs are absorbed into the
coefficient.  Grassmann partial derivatives are LEFT derivatives: the
generator is moved to the front of the word, picking up one sign per
anticommuting generator passed, and then removed.
"""

from __future__ import annotations

import itertools
import math
import re
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Union


class Parity(IntEnum):
    EVEN = 0
    ODD = 1


class SuperMonomial(NamedTuple):
    """Canonical monomial: sparse bosonic exponents and an ascending Grassmann mask.

    ``bosonic`` is a tuple of (index, exponent) pairs sorted by index with
    exponent >= 1; ``fermionic`` is a strictly ascending tuple of Grassmann
    generator indices (each generator appears at most once since xg^2 = 0).
    Indices are 1-based.
    """

    bosonic: tuple[tuple[int, int], ...]
    fermionic: tuple[int, ...]

    def degree(self) -> int:
        return sum(e for _, e in self.bosonic) + len(self.fermionic)

    def bosonic_degree(self) -> int:
        return sum(e for _, e in self.bosonic)

    def parity(self) -> Parity:
        return Parity(len(self.fermionic) % 2)


ONE_MONOMIAL = SuperMonomial((), ())


def _merge_fermionic(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two ascending masks; return (sign, merged) or (0, None) on a repeat.

    The sign counts the transpositions needed to sort the concatenation a+b.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    i, j = 0, 0
    la = len(a)
    sign = 1
    while i < la and j < len(b):
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            # b[j] jumps over the remaining la - i elements of a
            if (la - i) & 1:
                sign = -sign
            out.append(b[j])
            j += 1
        else:
            return 0, None
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def _mul_monomials(u: SuperMonomial, v: SuperMonomial):
    """Product of monomials: (sign, monomial) or (0, None) when it vanishes."""
    sign, ferm = _merge_fermionic(u.fermionic, v.fermionic)
    if sign == 0:
        return 0, None
    if not u.bosonic:
        bos = v.bosonic
    elif not v.bosonic:
        bos = u.bosonic
    else:
        acc = dict(u.bosonic)
        for idx, e in v.bosonic:
            acc[idx] = acc.get(idx, 0) + e
        bos = tuple(sorted(acc.items()))
    return sign, SuperMonomial(bos, ferm)


Coefficient = Union[int, Fraction]


class SuperPolynomial:
    """Sparse exact-coefficient element of the super polynomial ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[SuperMonomial, Fraction] | None = None):
        # terms must already be canonical: no zero coefficients
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "SuperPolynomial":
        return SuperPolynomial()

    @staticmethod
    def one() -> "SuperPolynomial":
        return SuperPolynomial({ONE_MONOMIAL: Fraction(1)})

    @staticmethod
    def constant(c: Coefficient) -> "SuperPolynomial":
        c = Fraction(c)
        return SuperPolynomial({ONE_MONOMIAL: c} if c else {})

    @staticmethod
    def monomial(mono: SuperMonomial, coeff: Coefficient = 1) -> "SuperPolynomial":
        c = Fraction(coeff)
        return SuperPolynomial({mono: c} if c else {})

    @staticmethod
    def x(i: int, exponent: int = 1) -> "SuperPolynomial":
        if i < 1:
            raise IndexError(f"bosonic index {i} out of range")
        if exponent == 0:
            return SuperPolynomial.one()
        return SuperPolynomial({SuperMonomial(((i, exponent),), ()): Fraction(1)})

    @staticmethod
    def xg(j: int) -> "SuperPolynomial":
        if j < 1:
            raise IndexError(f"Grassmann index {j} out of range")
        return SuperPolynomial({SuperMonomial((), (j,)): Fraction(1)})

    # -- ring structure ------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s = s + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return SuperPolynomial(out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scaled(self, c: Coefficient) -> "SuperPolynomial":
        c = Fraction(c)
        if not c:
            return SuperPolynomial()
        return SuperPolynomial({mono: c * v for mono, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        out: dict[SuperMonomial, Fraction] = {}
        for mu, cu in self.terms.items():
            for mv, cv in other.terms.items():
                sign, mono = _mul_monomials(mu, mv)
                if sign == 0:
                    continue
                c = cu * cv if sign > 0 else -(cu * cv)
                s = out.get(mono)
                if s is None:
                    out[mono] = c
                else:
                    s = s + c
                    if s:
                        out[mono] = s
                    else:
                        del out[mono]
        return SuperPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, e: int) -> "SuperPolynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = SuperPolynomial.one()
        for _ in range(e):
            out = out * self
        return out

    # -- derivations ----------------------------------------------------

    def dx(self, i: int) -> "SuperPolynomial":
        """Ordinary partial derivative with respect to the bosonic xi."""
        out: dict[SuperMonomial, Fraction] = {}
        for mono, c in self.terms.items():
            for pos, (idx, e) in enumerate(mono.bosonic):
                if idx == i:
                    if e == 1:
                        bos = mono.bosonic[:pos] + mono.bosonic[pos + 1:]
                    else:
                        bos = mono.bosonic[:pos] + ((idx, e - 1),) + mono.bosonic[pos + 1:]
                    new = SuperMonomial(bos, mono.fermionic)
                    v = out.get(new, Fraction(0)) + c * e
                    if v:
                        out[new] = v
                    elif new in out:
                        del out[new]
                    break
        return SuperPolynomial(out)

    def dxg(self, j: int) -> "SuperPolynomial":
        """Left Grassmann derivative with respect to xgj."""
        out: dict[SuperMonomial, Fraction] = {}
        for mono, c in self.terms.items():
            ferm = mono.fermionic
            try:
                pos = ferm.index(j)
            except ValueError:
                continue
            new = SuperMonomial(mono.bosonic, ferm[:pos] + ferm[pos + 1:])
            v = c if pos % 2 == 0 else -c
            s = out.get(new, Fraction(0)) + v
            if s:
                out[new] = s
            elif new in out:
                del out[new]
        return SuperPolynomial(out)

    # -- grading ----------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.degree() for m in self.terms)

    def homogeneous_component(self, k: int) -> "SuperPolynomial":
        if k < 0:
            raise ValueError("degree must be nonnegative")
        return SuperPolynomial({m: c for m, c in self.terms.items() if m.degree() == k})

    def homogeneous_components(self) -> dict[int, "SuperPolynomial"]:
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(m.degree(), {})[m] = c
        return {k: SuperPolynomial(t) for k, t in sorted(out.items())}

    def is_parity_homogeneous(self) -> bool:
        parities = {len(m.fermionic) % 2 for m in self.terms}
        return len(parities) <= 1

    def parity(self) -> Parity:
        """Parity of a parity-homogeneous polynomial (zero counts as even)."""
        parities = {len(m.fermionic) % 2 for m in self.terms}
        if len(parities) > 1:
            raise ValueError("polynomial is not parity-homogeneous")
        return Parity(parities.pop()) if parities else Parity.EVEN

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONOMIAL, Fraction(0))

    def coefficient(self, mono: SuperMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def __repr__(self) -> str:
        return f"SuperPolynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def shift_bosonic_indices(f: SuperPolynomial, offset: int) -> SuperPolynomial:
    """Rename every bosonic xi to x(i+offset); Grassmann generators unchanged."""
    if offset == 0:
        return f
    out = {}
    for mono, c in f.terms.items():
        bos = tuple((i + offset, e) for i, e in mono.bosonic)
        if any(i < 1 for i, _ in bos):
            raise IndexError("shift would produce a nonpositive variable index")
        out[SuperMonomial(bos, mono.fermionic)] = c
    return SuperPolynomial(out)


def partial(f: SuperPolynomial, index: int, m: int, n: int) -> SuperPolynomial:
    """Partial derivative in the unified variable numbering 1..m+2n.

    Index 1..m selects the bosonic derivative d/dxi, index m+1..m+2n the left
    Grassmann derivative d/dxg(index-m).
    """
    if not 1 <= index <= m + 2 * n:
        raise IndexError(f"variable index {index} out of range for ({m}|{2*n})")
    if index <= m:
        return f.dx(index)
    return f.dxg(index - m)


def multiply(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    return f * g


def homogeneous_component(f: SuperPolynomial, k: int) -> SuperPolynomial:
    return f.homogeneous_component(k)


# -- degree bases -----------------------------------------------------------


def _bosonic_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of `total` into `parts` slots, descending-lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _bosonic_compositions(total - first, parts - 1):
            yield (first,) + rest


def _dense_to_sparse(exps: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple((i + 1, e) for i, e in enumerate(exps) if e)


@lru_cache(maxsize=None)
def monomial_basis(m: int, n: int, k: int) -> tuple[SuperMonomial, ...]:
    """All degree-k monomials, ordered by Grassmann degree, then bosonic
    descending-lex, then ascending mask."""
    if m < 0 or n < 0 or k < 0:
        raise ValueError("m, n, k must be nonnegative")
    out = []
    for nf in range(0, min(k, 2 * n) + 1):
        kb = k - nf
        if m == 0 and kb > 0:
            continue
        bos_list = [_dense_to_sparse(e) for e in _bosonic_compositions(kb, m)]
        for bos in bos_list:
            for mask in itertools.combinations(range(1, 2 * n + 1), nf):
                out.append(SuperMonomial(bos, mask))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(m: int, n: int, k: int) -> dict:
    return {mono: i for i, mono in enumerate(monomial_basis(m, n, k))}


def dim_Pk(m: int, n: int, k: int) -> int:
    """Dimension of the space of degree-k polynomials on (m|2n) variables."""
    if k < 0:
        return 0
    if m == 0:
        return math.comb(2 * n, k) if k <= 2 * n else 0
    total = 0
    for i in range(0, min(k, 2 * n) + 1):
        total += math.comb(2 * n, i) * math.comb(k - i + m - 1, m - 1)
    return total


# -- text rendering and parsing ----------------------------------------------


def _term_sort_key(mono: SuperMonomial):
    dense = tuple(sorted(((-e, i) for i, e in mono.bosonic)))
    return (mono.degree(), len(mono.fermionic), dense, mono.fermionic)


def _render_mono(mono: SuperMonomial) -> str:
    parts = []
    for i, e in mono.bosonic:
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    for j in mono.fermionic:
        parts.append(f"xg{j}")
    return "*".join(parts)


def render(f: SuperPolynomial) -> str:
    """Render as e.g. '2*x1^2 - xg1*xg2 + 3/2*x2'."""
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(), key=lambda kv: _term_sort_key(kv[0]))
    pieces = []
    for mono, c in items:
        body = _render_mono(mono)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not pieces:
            pieces.append(text if c > 0 else f"-{text}")
        else:
            pieces.append(("+ " if c > 0 else "- ") + text)
    return " ".join(pieces)


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(xg\d+|x\d+|\d+/\d+|\d+|\^|\*|\+|-)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if not mo:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {text[pos:]!r}")
            break
        tokens.append(mo.group(1))
        pos = mo.end()
    return tokens


def parse(text: str) -> SuperPolynomial:
    """Parse the rendering grammar: sums of '*'-joined factors with '^' powers."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    result = SuperPolynomial.zero()
    i = 0

    def parse_factor(i):
        if i >= len(tokens):
            raise ParseError("expected a factor")
        tok = tokens[i]
        i += 1
        if tok.startswith("xg"):
            base = SuperPolynomial.xg(int(tok[2:]))
        elif tok.startswith("x"):
            base = SuperPolynomial.x(int(tok[1:]))
        elif "/" in tok:
            num, den = tok.split("/")
            return SuperPolynomial.constant(Fraction(int(num), int(den))), i
        else:
            base = SuperPolynomial.constant(int(tok))
        if i < len(tokens) and tokens[i] == "^":
            i += 1
            if i >= len(tokens) or not tokens[i].isdigit():
                raise ParseError("expected an integer exponent after '^'")
            base = base ** int(tokens[i])
            i += 1
        return base, i

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        term, i = parse_factor(i)
        while i < len(tokens) and tokens[i] == "*":
            factor, i = parse_factor(i + 1)
            term = term * factor
        result = result + term.scaled(sign)
    return result
