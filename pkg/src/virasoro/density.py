"""Density modules and the degree-d obstruction polynomial a_d.

The density module V_{lambda,mu} has basis v_n (n in Z) with the
c = 0 Virasoro action l_k v_n = -(n + lambda*k + mu) v_{n+k}.  The
normalised singular element P_d of M(1, j^2) (d = 2j+1, coefficient of
L_{-1}^d equal to 1) acts on v_0 as a_d(lambda, mu) v_{-d}; the closed
product forms of that polynomial and an independent spin-chain
determinant evaluation are implemented alongside the direct evaluation,
so each can be checked against the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import det_expansion, identity, mat_mul
from .scalars import BiPoly, as_fraction, is_zero_scalar
from .singular import SpinModule, bdiz_singular, specialize_curve_vector
from .verma import PBWVector


@dataclass(frozen=True)
class DensityVector:
    """Finite support vector in V_{lambda,mu}; terms maps n -> scalar."""

    terms: tuple  # tuple of (n, scalar) pairs, sorted by n
    lam: object
    mu: object

    @classmethod
    def basis(cls, n: int, lam, mu) -> "DensityVector":
        return cls(((n, Fraction(1)),), lam, mu)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def density_apply(k: int, w: DensityVector) -> DensityVector:
    """l_k w by linear extension of l_k v_n = -(n + lam*k + mu) v_{n+k}."""
    out = {}
    for n, coeff in w.terms:
        factor = -(w.lam * k + w.mu + n)
        val = coeff * factor
        if is_zero_scalar(val):
            continue
        key = n + k
        cur = out.get(key)
        new = val if cur is None else cur + val
        if is_zero_scalar(new):
            out.pop(key, None)
        else:
            out[key] = new
    return DensityVector(tuple(sorted(out.items())), w.lam, w.mu)


@lru_cache(maxsize=None)
def singular_element(j) -> PBWVector:
    """P_d for M(1, j^2): the curve singular element at t = 1, with
    rational coefficients and L_{-1}^d coefficient 1."""
    return specialize_curve_vector(bdiz_singular(as_fraction(j)), 1)


def evaluate_ad(p: PBWVector, lam, mu):
    """Apply the level-d element p (L_{-k} acting as l_{-k}) to v_0.

    The result must be supported on v_{-d}; its coefficient is returned.
    Intermediate supports are asserted to be singletons, which is the
    grading statement that each monomial pushes v_0 straight down.
    """
    d = p.level()
    total = None
    for part, coeff in p.terms.items():
        w = DensityVector.basis(0, lam, mu)
        for k in reversed(part):  # rightmost factor of the monomial acts first
            w = density_apply(-k, w)
            if len(w.terms) > 1:
                raise AssertionError("density action spread a monomial over several v_n")
        got = w.as_dict()
        if not got:
            continue
        (n, val), = got.items()
        if n != -d:
            raise AssertionError(f"monomial landed on v_{n}, expected v_{-d}")
        term = coeff * val
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total


def ad_direct(j, lam, mu):
    """a_d(lambda, mu) by direct density-module evaluation of P_d."""
    return evaluate_ad(singular_element(j), lam, mu)


def spin_range(j) -> list:
    """S = {-j, -j+1, ..., j} as Fractions."""
    j = as_fraction(j)
    d = int(2 * j) + 1
    return [-j + k for k in range(d)]


def ff_product(case: str, j, lam_or_p, mu):
    """Closed product forms of a_d.

    case "a": lambda = 0;  case "b": lambda = 1;  case "c": lambda = p^2
    with first argument p >= 0;  case "d": returns the square
    a_d(lambda, mu)^2 valid for every lambda.
    """
    j = as_fraction(j)
    d = int(2 * j) + 1
    sign = Fraction(-1) ** d
    ks = spin_range(j)
    if case in ("a", "b", "c"):
        if case == "a":
            p = Fraction(0)
        elif case == "b":
            p = Fraction(1)
        else:
            p = as_fraction(lam_or_p)
        total = sign
        for k in ks:
            total = total * (mu + j * j - (k + p) ** 2)
        return total
    if case == "d":
        lam = lam_or_p
        total = Fraction(1)
        for k in ks:
            factor = (lam - mu - j * j + k * k) ** 2 - 4 * (k * k) * lam
            total = total * factor
        return total
    raise ValueError(f"unknown product case {case!r}")


def appc_determinant(j, p, mu):
    """a_d(p^2, mu) as the determinant of the spin-chain transfer matrix.

    The matrix, in the basis v_{-j}, ..., v_j, is

        D = -F + sum_{m=0}^{2j} (-E)^m diag_i(i + lambda (m+1) - mu)

    with lambda = p^2, and det D = a_d(p^2, mu) exactly (the chain
    recurrence is the triangular solve of the same system).
    """
    j = as_fraction(j)
    two_j = int(2 * j)
    spin = SpinModule(two_j)
    lam = as_fraction(p) ** 2
    dim = spin.dim
    zero_entry = mu * 0
    mat = [[zero_entry for _ in range(dim)] for _ in range(dim)]
    for i in range(dim - 1):
        mat[i][i + 1] = mat[i][i + 1] - 1  # the -F superdiagonal
    e_pow = identity(dim)
    sign = 1
    for m in range(two_j + 1):
        for row in range(dim):
            for col in range(dim):
                g = e_pow[row][col]
                if g:
                    diag = col + lam * (m + 1) - mu
                    mat[row][col] = mat[row][col] + Fraction(sign) * g * diag
        e_pow = mat_mul(spin.matrix_E(), e_pow)
        sign = -sign
    return det_expansion(mat)


def primary_obstruction(j, lam, h):
    """a_d(1 - lambda, h - j^2); nonzero rules out a normalised primary
    field of that type from the (1, j^2) module to the (1, h) module."""
    j = as_fraction(j)
    return ad_direct(j, 1 - lam, h - j * j)


def ad_symbolic(j) -> BiPoly:
    """a_d as an element of Q[lambda, mu]."""
    lam, mu = BiPoly.gens(("lam", "mu"))
    return ad_direct(j, lam, mu)
