"""Exact symplectic linear algebra on Q^{2n}.

Conventions: the symplectic basis is fixed so that the form has matrix
``J = [[0, Id_n], [-Id_n, 0]]`` and ``omega(u, v) = u^T J v``.

``sp`` is the symplectic Lie algebra (``g^T J + J g = 0``) and ``asp`` its
complement of "weks-symplectic" matrices (``g^T J - J g = 0``).  Every
matrix splits uniquely as a sum of one of each, see :func:`decompose`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from legendric.rational import (
    RationalMatrix,
    nullspace,
    rank,
    span_basis,
    to_fraction,
)

HALF = Fraction(1, 2)


class UnsupportedSpectrum(ValueError):
    """Raised when a matrix has eigenvalues outside Q."""


@dataclass(frozen=True)
class SymplecticSpace:
    """The standard symplectic space Q^{2n}."""

    n: int
    J: RationalMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"half-dimension must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "J", standard_symplectic_matrix(self.n))

    @property
    def dim(self) -> int:
        return 2 * self.n

    def check_vector(self, v: Sequence) -> None:
        if len(v) != self.dim:
            raise ValueError(f"expected a vector of length {self.dim}, got {len(v)}")

    def check_matrix(self, g: RationalMatrix) -> None:
        if g.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got {g.shape}")


def standard_symplectic_matrix(n: int) -> RationalMatrix:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    zero = RationalMatrix.zeros(n)
    one = RationalMatrix.identity(n)
    return RationalMatrix.block([[zero, one], [-one, zero]])


def space_for(g: RationalMatrix) -> SymplecticSpace:
    if not g.is_square() or g.rows % 2:
        raise ValueError(f"{g.shape} is not the shape of an endomorphism of Q^(2n)")
    return SymplecticSpace(g.rows // 2)


def omega(u: Sequence, v: Sequence, space: SymplecticSpace) -> Fraction:
    """The standard form: ``sum_i u_i v_{n+i} - u_{n+i} v_i``."""
    space.check_vector(u)
    space.check_vector(v)
    n = space.n
    u = [to_fraction(x) for x in u]
    v = [to_fraction(x) for x in v]
    return sum((u[i] * v[n + i] - u[n + i] * v[i] for i in range(n)), Fraction(0))


def _sp_residual(g: RationalMatrix, space: SymplecticSpace) -> RationalMatrix:
    return g.T @ space.J + space.J @ g


def _asp_residual(g: RationalMatrix, space: SymplecticSpace) -> RationalMatrix:
    return g.T @ space.J - space.J @ g


def in_sp(g: RationalMatrix, space: SymplecticSpace) -> bool:
    space.check_matrix(g)
    return _sp_residual(g, space).is_zero()


def in_asp(g: RationalMatrix, space: SymplecticSpace) -> bool:
    space.check_matrix(g)
    return _asp_residual(g, space).is_zero()


def decompose(g: RationalMatrix, space: SymplecticSpace) -> tuple[RationalMatrix, RationalMatrix]:
    """Split ``g`` into its sp and asp parts."""
    space.check_matrix(g)
    J = space.J
    reflected = J @ g.T @ J
    return HALF * (g + reflected), HALF * (g - reflected)


def asp_from_skew(K: RationalMatrix, space: SymplecticSpace) -> RationalMatrix:
    """The unique ``g`` with ``J g = K``; it lies in asp iff ``K`` is skew."""
    space.check_matrix(K)
    if not K.is_skew():
        raise ValueError("input matrix is not skew-symmetric")
    # J^{-1} = -J
    return -(space.J @ K)


def is_isotropic(vectors: Sequence[Sequence], space: SymplecticSpace) -> bool:
    return all(
        omega(u, v, space) == 0
        for i, u in enumerate(vectors)
        for v in vectors[i + 1 :]
    )


def is_lagrangian(vectors: Sequence[Sequence], space: SymplecticSpace) -> bool:
    """True iff the span of ``vectors`` is an n-dimensional isotropic subspace."""
    if not vectors:
        raise ValueError("empty vector list")
    for v in vectors:
        space.check_vector(v)
    basis = span_basis(vectors)
    return len(basis) == space.n and is_isotropic(basis, space)


# -- spectra ------------------------------------------------------------------


def rational_eigenvalues(g: RationalMatrix) -> dict[Fraction, int]:
    """Rational roots of the characteristic polynomial with multiplicities."""
    import sympy

    x = sympy.Symbol("x")
    M = sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in r] for r in g])
    poly = sympy.Poly(M.charpoly(x).as_expr(), x, domain=sympy.QQ)
    roots = sympy.roots(poly, filter="Q")
    return {
        Fraction(int(sympy.numer(r)), int(sympy.denom(r))): int(m)
        for r, m in sorted(roots.items(), key=lambda kv: kv[0])
    }


def _shifted(g: RationalMatrix, lam: Fraction) -> RationalMatrix:
    return g - lam * RationalMatrix.identity(g.rows)


def _matrix_power(g: RationalMatrix, k: int) -> RationalMatrix:
    out = RationalMatrix.identity(g.rows)
    for _ in range(k):
        out = out @ g
    return out


def eigenspace(g: RationalMatrix, lam: Fraction) -> list[tuple[Fraction, ...]]:
    return nullspace(_shifted(g, lam).tolist())


def generalized_eigenspace(g: RationalMatrix, lam: Fraction) -> list[tuple[Fraction, ...]]:
    return nullspace(_matrix_power(_shifted(g, lam), g.rows).tolist())


def jordan_decomposition(g: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix]:
    """Additive Jordan-Chevalley parts ``(g_s, g_n)`` for a rational spectrum.

    ``g_s`` acts as ``lambda`` on each generalized eigenspace; ``g_n = g - g_s``.
    """
    eig = rational_eigenvalues(g)
    blocks = [(lam, generalized_eigenspace(g, lam)) for lam in eig]
    if sum(len(b) for _, b in blocks) != g.rows:
        raise UnsupportedSpectrum("spectrum is not contained in Q")
    P = RationalMatrix.from_columns([v for _, b in blocks for v in b])
    D = RationalMatrix.diag([lam for lam, b in blocks for _ in b])
    gs = P @ D @ P.inverse()
    return gs, g - gs


@dataclass(frozen=True)
class EigenspaceReport:
    eigenvalues: tuple[Fraction, ...]
    dimensions: tuple[int, ...]
    orthogonal_pairs: bool
    symplectic_blocks: bool

    @property
    def ok(self) -> bool:
        return self.orthogonal_pairs and self.symplectic_blocks


def eigenspace_pairing_check(g: RationalMatrix, space: SymplecticSpace) -> EigenspaceReport:
    """Check omega-orthogonality of distinct eigenspaces and non-degeneracy
    of omega on each eigenspace, for an asp matrix with rational spectrum."""
    if not in_asp(g, space):
        raise ValueError("matrix is not in asp")
    eig = rational_eigenvalues(g)
    spaces = {lam: eigenspace(g, lam) for lam in eig}
    if sum(len(b) for b in spaces.values()) != space.dim:
        raise UnsupportedSpectrum(
            "unsupported spectrum: rational eigenspaces do not span the whole space"
        )
    lams = list(spaces)
    orthogonal = all(
        omega(u, v, space) == 0
        for i, a in enumerate(lams)
        for b in lams[i + 1 :]
        for u in spaces[a]
        for v in spaces[b]
    )
    full_rank = all(
        rank([[omega(u, v, space) for v in basis] for u in basis]) == len(basis)
        for basis in spaces.values()
    )
    return EigenspaceReport(
        eigenvalues=tuple(lams),
        dimensions=tuple(len(spaces[lam]) for lam in lams),
        orthogonal_pairs=orthogonal,
        symplectic_blocks=full_rank,
    )


# -- torus action -------------------------------------------------------------


def torus_generators(points: Sequence[Sequence[int]]) -> list[RationalMatrix]:
    """Infinitesimal generators of the torus acting with the given weights.

    ``points`` lists ``w_0 .. w_{n-1}, -w_0 .. -w_{n-1}``; the k-th generator
    is ``diag(w_0[k], .., w_{n-1}[k], -w_0[k], .., -w_{n-1}[k])``.
    """
    pts = [tuple(p) for p in points]
    if not pts or len(pts) % 2:
        raise ValueError("a weight configuration has an even, nonzero number of points")
    n = len(pts) // 2
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("weights of unequal length")
    if any(pts[n + i] != tuple(-x for x in pts[i]) for i in range(n)):
        raise ValueError("second half of the configuration must negate the first")
    return [RationalMatrix.diag([p[k] for p in pts]) for k in range(dim)]


def star_condition(points: Sequence[Sequence[int]]) -> bool:
    """Whether every torus generator lies in sp."""
    gens = torus_generators(points)
    space = SymplecticSpace(len(points) // 2)
    return all(in_sp(g, space) for g in gens)
