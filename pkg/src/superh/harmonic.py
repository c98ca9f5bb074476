"""Spherical harmonics on (m|2n) variables and their exact decompositions.

H_k is the degree-k polynomial kernel of the super Laplacian.  This module
computes exact kernel bases, the closed-form dimension count, the radial
decomposition of P_k into R^{2j} H_{k-2j} blocks, the refinement of H_k into
joint eigenspaces of the bosonic and fermionic Laplace-Beltrami operators
(the f_{l,p,q} * Hb_p * Hf_q pieces), and the projection operators selecting a
single piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .superalgebra import SuperPolynomial, monomial_basis, dim_Pk
from .linalg import (
    Subspace,
    Vec,
    certified_full_rank,
    kernel_of_equations,
    rank_modp,
    rank_of_vectors,
)
from .diffops import (
    IDENTITY,
    Add,
    Compose,
    LinearOperator,
    Scale,
    laplace_beltrami_bosonic,
    laplace_beltrami_fermionic,
    nabla2,
    osp_generator,
    poly_to_vec,
    r2,
    theta2,
    vec_to_poly,
)


def comb0(a: int, b: int) -> int:
    """Binomial coefficient with C(a,b) = 0 whenever a < b, a < 0 or b < 0."""
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def dim_Hk(m: int, n: int, k: int) -> int:
    """Closed-form dimension of H_k for m >= 1 (double binomial sum)."""
    if m < 1:
        raise ValueError("the closed form requires m >= 1; use the fermionic kernel")
    if k < 0:
        return 0
    total = 0
    for i in range(0, min(k, 2 * n) + 1):
        total += math.comb(2 * n, i) * comb0(k - i + m - 1, m - 1)
    for i in range(0, min(k - 2, 2 * n) + 1):
        total -= math.comb(2 * n, i) * comb0(k - i + m - 3, m - 1)
    return total


def dim_H_bosonic(m: int, p: int) -> int:
    return dim_Hk(m, 0, p) if m >= 1 else (1 if p == 0 else 0)


def dim_H_fermionic(n: int, q: int) -> int:
    # primitive Grassmann forms vanish above the middle degree n
    return max(0, comb0(2 * n, q) - comb0(2 * n, q - 2))


@lru_cache(maxsize=None)
def harmonic_basis(m: int, n: int, k: int) -> Subspace:
    """Canonical echelon basis of the kernel of nabla^2 on P_k."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    width = dim_Pk(m, n, k)
    if k < 2:
        # nabla^2 lowers degree by 2, so every polynomial of degree < 2 is harmonic
        return Subspace.from_vectors(
            [{i: Fraction(1)} for i in range(width)], width)
    lap = nabla2(m, n)
    target_index = {mono: t for t, mono in enumerate(monomial_basis(m, n, k - 2))}
    rows: list[Vec] = [dict() for _ in target_index]
    for c, mono in enumerate(monomial_basis(m, n, k)):
        image = lap.apply(SuperPolynomial.monomial(mono))
        for tm, coeff in image.terms.items():
            rows[target_index[tm]][c] = coeff
    return kernel_of_equations(rows, width)


def bosonic_harmonics(m: int, p: int) -> Subspace:
    """Kernel of the bosonic Laplacian on degree-p polynomials in x1..xm."""
    return harmonic_basis(m, 0, p)


def fermionic_harmonics(n: int, q: int) -> Subspace:
    """Kernel of the fermionic Laplacian on Grassmann degree q."""
    return harmonic_basis(0, n, q)


def subspace_polys(sub: Subspace, m: int, n: int, k: int) -> list[SuperPolynomial]:
    return [vec_to_poly(row, m, n, k) for row in sub.rows]


def harmonic_polys(m: int, n: int, k: int) -> list[SuperPolynomial]:
    return subspace_polys(harmonic_basis(m, n, k), m, n, k)


def is_harmonic(f: SuperPolynomial, m: int, n: int) -> bool:
    return nabla2(m, n).apply(f).is_zero()


# -- radial (Fischer-type) decomposition of P_k --------------------------------


@dataclass
class FischerPiece:
    j: int
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


@dataclass
class FischerDecomposition:
    m: int
    n: int
    k: int
    pieces: list[FischerPiece]
    direct_sum: bool
    witness: str | None = None  # rendered dependency when the sum is not direct


@lru_cache(maxsize=None)
def _r2_power(m: int, n: int, j: int) -> SuperPolynomial:
    return r2(m, n) ** j


def _fischer_dependency_witness(m: int, n: int, k: int) -> str | None:
    """An explicit vector lying in two radial blocks, certified exactly.

    When M = m-2n is even and <= 0 and some k' <= k with k' = k (mod 2) lies in
    the band 2 - M/2 <= k' <= 2 - M, the vector R^(2k'+M-2) h with h harmonic of
    degree 2-M-k' is itself harmonic, which places R^(k-k') * that vector in two
    distinct blocks at once.
    """
    M = m - 2 * n
    if m < 1 or M > 0 or M % 2 != 0:
        return None
    for kp in range(k, 1, -2):
        if not (2 - M // 2 <= kp <= 2 - M):
            continue
        t = kp + M // 2 - 1
        kpp = 2 - M - kp
        if t < 1 or kpp < 0:
            continue
        h_basis = harmonic_basis(m, n, kpp)
        if h_basis.dim == 0:
            continue
        h = vec_to_poly(h_basis.rows[0], m, n, kpp)
        u = _r2_power(m, n, t) * h
        if u.is_zero() or not is_harmonic(u, m, n):
            continue
        j0 = (k - kp) // 2
        return (f"R^{2*t} * ({h}) is harmonic of degree {kp}, so block j={j0} "
                f"meets block j={j0 + t}")
    return None


def fischer(m: int, n: int, k: int) -> FischerDecomposition:
    """Blocks R^{2j} H_{k-2j} of P_k with an exact direct-sum-and-span flag.

    For m = 0 the blocks are theta^{2j} Hf_{k-2j}; blocks that multiply to zero
    (the nilpotency truncation) are dropped.
    """
    if k < 0 or m < 0 or n < 0:
        raise ValueError("m, n, k must be nonnegative")
    width = dim_Pk(m, n, k)
    pieces: list[FischerPiece] = []
    all_vecs: list[Vec] = []
    for j in range(0, k // 2 + 1):
        deg = k - 2 * j
        if m == 0 and deg > 2 * n:
            continue
        hb = harmonic_basis(m, n, deg)
        if hb.dim == 0:
            continue
        r2j = _r2_power(m, n, j)
        vecs = []
        for row in hb.rows:
            prod = r2j * vec_to_poly(row, m, n, deg)
            if prod:
                vecs.append(poly_to_vec(prod, m, n, k))
        if not vecs:
            continue
        sub = Subspace.from_vectors(vecs, width)
        pieces.append(FischerPiece(j, sub))
        all_vecs.extend(vecs)
    total = sum(p.dim for p in pieces)
    direct = False
    witness = None
    if total == width and rank_modp(all_vecs, width) == total:
        direct = True  # full rank mod p certifies independence over Q
    else:
        witness = _fischer_dependency_witness(m, n, k)
        if witness is None:
            # no structural dependency; settle it by exact elimination
            direct = total == width and rank_of_vectors(all_vecs, width) == total
    return FischerDecomposition(m, n, k, pieces, direct, witness)


# -- joint eigenspace pieces of H_k ---------------------------------------------


def f_poly(k: int, p: int, q: int, m: int, n: int) -> SuperPolynomial:
    """The radial polynomial sum_s a_s r^(2k-2s) theta^(2s) making
    f * Hb_p * Hf_q harmonic.

    a_s = C(k,s) * [(n-q-s)! / (n-q-k)!] * [Gamma(m/2+p+k) / Gamma(m/2+p+k-s)],
    both quotients expanded as exact falling products (the Gamma quotient is a
    product of s half-integers, never a Gamma evaluation).
    """
    if m < 1:
        raise ValueError("f_poly requires m >= 1")
    if not (0 <= q <= n and 0 <= k <= n - q and p >= 0):
        raise ValueError(f"invalid f_poly parameters (k={k}, p={p}, q={q}) for ({m}|{2*n})")
    rb = r2(m, 0)
    tf = theta2(n)
    out = SuperPolynomial.zero()
    for s in range(0, k + 1):
        a = Fraction(math.comb(k, s))
        for t in range(n - q - k + 1, n - q - s + 1):  # (n-q-s)!/(n-q-k)!
            a *= t
        for u in range(1, s + 1):  # Gamma(m/2+p+k)/Gamma(m/2+p+k-s)
            a *= Fraction(m, 2) + p + k - u
        if not a:
            continue
        out = out + ((rb ** (k - s)) * (tf ** s)).scaled(a)
    return out


@dataclass
class HarmonicPiece:
    """One joint eigenspace f_{l,p,q} Hb_p Hf_q inside H_{2l+p+q}."""

    l: int
    p: int
    q: int
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim


def piece_labels(m: int, n: int, k: int) -> list[tuple[int, int, int, int]]:
    """(l, p, q, dim) labels of the nonzero pieces of H_k, no bases computed."""
    if m < 1:
        raise ValueError("piece enumeration requires m >= 1")
    out = []
    for q in range(0, min(n, k) + 1):
        for l in range(0, min(n - q, (k - q) // 2) + 1):
            p = k - 2 * l - q
            d = dim_H_bosonic(m, p) * dim_H_fermionic(n, q)
            if d:
                out.append((l, p, q, d))
    return out


@lru_cache(maxsize=None)
def decompose_Hk(m: int, n: int, k: int) -> tuple[HarmonicPiece, ...]:
    """Pieces f_{l,p,q} Hb_p Hf_q of H_k; verified independent and spanning."""
    if m < 1:
        raise ValueError("decompose_Hk requires m >= 1")
    width = dim_Pk(m, n, k)
    pieces: list[HarmonicPiece] = []
    all_vecs: list[Vec] = []
    lap = nabla2(m, n)
    for q in range(0, min(n, k) + 1):
        hf = subspace_polys(fermionic_harmonics(n, q), 0, n, q)
        if not hf:
            continue
        for l in range(0, min(n - q, (k - q) // 2) + 1):
            p = k - 2 * l - q
            hb = subspace_polys(bosonic_harmonics(m, p), m, 0, p)
            if not hb:
                continue
            f = f_poly(l, p, q, m, n)
            vecs = []
            for b in hb:
                fb = f * b
                for g in hf:
                    prod = fb * g
                    if prod.is_zero():
                        raise RuntimeError(
                            f"piece ({l},{p},{q}) of H_{k}({m}|{2*n}) produced a zero vector")
                    if not lap.apply(prod).is_zero():
                        raise RuntimeError(
                            f"piece ({l},{p},{q}) of H_{k}({m}|{2*n}) is not harmonic")
                    vecs.append(poly_to_vec(prod, m, n, k))
            sub = Subspace.from_vectors(vecs, width)
            if sub.dim != len(hb) * len(hf):
                raise RuntimeError(
                    f"piece ({l},{p},{q}) of H_{k}({m}|{2*n}) has deficient rank")
            pieces.append(HarmonicPiece(l, p, q, sub))
            all_vecs.extend(vecs)
    total = sum(piece.dim for piece in pieces)
    expected = harmonic_basis(m, n, k).dim
    if total != expected or not certified_full_rank(all_vecs, width):
        raise RuntimeError(
            f"piece decomposition of H_{k}({m}|{2*n}) does not reassemble the kernel")
    return tuple(pieces)


# -- projection operators --------------------------------------------------------


def bosonic_eigenvalue(m: int, p: int) -> int:
    """Eigenvalue of the bosonic Laplace-Beltrami operator on Hb_p factors."""
    return -p * (m - 2 + p)


def fermionic_eigenvalue(n: int, q: int) -> int:
    """Eigenvalue of the fermionic Laplace-Beltrami operator on Hf_q factors."""
    return -q * (-2 * n - 2 + q)


@dataclass
class ProjectionOperator:
    """Product of shifted Laplace-Beltrami factors selecting one piece of H_k.

    ``bosonic_factors`` and ``fermionic_factors`` hold (shift, denominator)
    pairs; the operator is the product of (Delta + shift)/denominator over both
    lists.  ``spectral_fallback`` marks that a vanishing denominator forced the
    bosonic product to be rebuilt by interpolation over the eigenvalues that
    actually occur.
    """

    r: int
    s: int
    k: int
    m: int
    n: int
    op: LinearOperator
    bosonic_factors: list[tuple[Fraction, Fraction]]
    fermionic_factors: list[tuple[Fraction, Fraction]]
    spectral_fallback: bool

    def apply(self, f: SuperPolynomial) -> SuperPolynomial:
        return self.op.apply(f)

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        return self.op.apply(f)

    def scalar_on_piece(self, p: int, q: int) -> Fraction:
        """Exact scalar by which the product acts on a (p, q) joint eigenvector."""
        lam_b = Fraction(bosonic_eigenvalue(self.m, p))
        lam_f = Fraction(fermionic_eigenvalue(self.n, q))
        out = Fraction(1)
        for shift, denom in self.bosonic_factors:
            out *= (lam_b + shift) / denom
        for shift, denom in self.fermionic_factors:
            out *= (lam_f + shift) / denom
        return out


class ZeroDenominator(ArithmeticError):
    pass


def projection_Q(r: int, s: int, k: int, m: int, n: int,
                 allow_fallback: bool = True) -> ProjectionOperator:
    """Projector onto the piece (r, k-2r-s, s) of H_k.

    The bosonic factors run over i = 0..k skipping the target degree, the
    fermionic ones over j = 0..min(n,k) skipping s.  When a bosonic denominator
    vanishes (possible for m <= 2) the bosonic product is replaced by the exact
    interpolation polynomial over the distinct eigenvalues occurring in H_k.
    """
    p = k - 2 * r - s
    valid = (0 <= s <= min(n, k) and 0 <= r <= min(n - s, (k - s) // 2)
             and dim_H_bosonic(m, p) > 0)
    if not valid:
        raise ValueError(f"piece (r={r}, s={s}) does not exist in H_{k}({m}|{2*n})")
    lb_b = laplace_beltrami_bosonic(m)
    lb_f = laplace_beltrami_fermionic(n)
    fallback = False
    bos_factors: list[tuple[Fraction, Fraction]] = []
    for i in range(0, k + 1):
        if i == p:
            continue
        denom = Fraction((i - k + 2 * r + s) * (k + i - 2 * r - s + m - 2))
        if denom == 0:
            if not allow_fallback:
                raise ZeroDenominator(
                    f"factor i={i} of Q_({r},{s})^{k} on ({m}|{2*n}) has a zero denominator")
            fallback = True
            break
        bos_factors.append((Fraction(i * (m - 2 + i)), denom))
    if fallback:
        bos_factors = []
        lam_target = Fraction(bosonic_eigenvalue(m, p))
        occurring = sorted({Fraction(bosonic_eigenvalue(m, pp))
                            for (_, pp, _, _) in piece_labels(m, n, k)})
        for lam in occurring:
            if lam == lam_target:
                continue
            bos_factors.append((-lam, lam_target - lam))
    ferm_factors: list[tuple[Fraction, Fraction]] = []
    for j in range(0, min(n, k) + 1):
        if j == s:
            continue
        denom = Fraction((j - s) * (j + s - 2 * n - 2))
        if denom == 0:
            raise ZeroDenominator("fermionic factor cannot degenerate")
        ferm_factors.append((Fraction(j * (-2 * n - 2 + j)), denom))
    factors: list[LinearOperator] = []
    for shift, denom in bos_factors:
        factors.append(Compose((Scale(1 / denom), Add((lb_b, Scale(shift))))))
    for shift, denom in ferm_factors:
        factors.append(Compose((Scale(1 / denom), Add((lb_f, Scale(shift))))))
    op = Compose(tuple(factors)) if factors else IDENTITY
    return ProjectionOperator(r, s, k, m, n, op, bos_factors, ferm_factors, fallback)


# -- the structural identity for the radial polynomials ---------------------------


def verify_lemma_Lf(k: int, p: int, q: int, m: int, n: int) -> bool:
    """Exact identity L_{1,m+1} f_{k,p,q} = 2k (M/2+p+q+k-1) f_{k-1,p+1,q+1} x1 xg1."""
    if m < 1 or n < 1:
        raise ValueError("requires at least one bosonic and one fermionic pair")
    f = f_poly(k, p, q, m, n)
    lhs = osp_generator(1, m + 1, m, n).apply(f)
    if k == 0:
        return lhs.is_zero()
    M = m - 2 * n
    scalar = 2 * k * (Fraction(M, 2) + p + q + k - 1)
    rhs = (f_poly(k - 1, p + 1, q + 1, m, n)
           * SuperPolynomial.x(1) * SuperPolynomial.xg(1)).scaled(scalar)
    return lhs == rhs
