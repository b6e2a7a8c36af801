"""Heisenberg oscillator modules with their Virasoro action.

States are polynomials in x_1, x_2, ... with deg x_n = n; the mode
algebra [b_m, b_n] = kappa m delta_{m+n,0} acts by

    b_{-n} = x_n * ,   b_n = kappa n d/dx_n  (n > 0),   b_0 = mu_0,

and the quadratic Virasoro generators L_k = (1/2 kappa) sum :b_r b_s:
(r + s = k) give central charge 1 with lowest energy mu_0^2 / (2 kappa).
Two normalisations ship: kappa = 1 for a single free boson and kappa = 2
for the difference boson of a two-factor system, where the charge
operator reads mu_0 / 2 and singular vectors sit at energies (k + m)^2.

The determinantal singular vectors (Goldstone vectors) are built from
the coefficients c_n of exp(sum_{n>0} x_n z^n / n) via Jacobi-Trudi
determinants over rectangular signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .combinat import as_signature, partitions_of, transpose
from .linalg import nullspace
from .scalars import UniPoly, as_fraction, is_zero_scalar, render_scalar


@dataclass(frozen=True)
class OscParams:
    """Mode normalisation kappa and b_0 eigenvalue mu_0 on the vacuum."""

    kappa: Fraction
    mu0: object

    @classmethod
    def single(cls, mu0) -> "OscParams":
        return cls(Fraction(1), mu0)

    @classmethod
    def charge_sector(cls, charge) -> "OscParams":
        """kappa = 2 sector with H(0)-charge `charge`, i.e. mu_0 = 2*charge."""
        return cls(Fraction(2), as_fraction(charge) * 2)

    def lowest_energy(self):
        return self.mu0 * self.mu0 / (2 * self.kappa)


class PolyState:
    """Polynomial in x_1, x_2, ...; keys are trimmed exponent tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        for exps, coeff in dict(terms or {}).items():
            if is_zero_scalar(coeff):
                continue
            exps = tuple(exps)
            while exps and exps[-1] == 0:
                exps = exps[:-1]
            if exps in data:
                coeff = data[exps] + coeff
            data[exps] = coeff
        self.terms = {k: v for k, v in data.items() if not is_zero_scalar(v)}

    @classmethod
    def one(cls) -> "PolyState":
        return cls({(): Fraction(1)})

    @classmethod
    def zero(cls) -> "PolyState":
        return cls({})

    @classmethod
    def variable(cls, n: int, coeff=Fraction(1)) -> "PolyState":
        exps = [0] * n
        exps[n - 1] = 1
        return cls({tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Weighted degree (energy above the sector minimum); homogeneous only."""
        degs = {sum((i + 1) * e for i, e in enumerate(k)) for k in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous state with degrees {sorted(degs)}")
        return degs.pop()

    def coeff(self, exps):
        exps = tuple(exps)
        while exps and exps[-1] == 0:
            exps = exps[:-1]
        return self.terms.get(exps, Fraction(0))

    def add_into(self, other: "PolyState", scale=None) -> "PolyState":
        out = dict(self.terms)
        for k, v in other.terms.items():
            if scale is not None:
                v = scale * v
            cur = out.get(k)
            new = v if cur is None else cur + v
            if is_zero_scalar(new):
                out.pop(k, None)
            else:
                out[k] = new
        return PolyState(out)

    def __add__(self, other):
        return self.add_into(other)

    def __sub__(self, other):
        return self.add_into(other, scale=Fraction(-1))

    def scale(self, scalar) -> "PolyState":
        if is_zero_scalar(scalar):
            return PolyState.zero()
        return PolyState({k: scalar * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyState):
            return NotImplemented
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                n = max(len(k1), len(k2))
                k = tuple(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0)
                    for i in range(n)
                )
                val = v1 * v2
                cur = out.get(k)
                out[k] = val if cur is None else cur + val
        return PolyState(out)

    def __eq__(self, other):
        if not isinstance(other, PolyState):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "PolyState(0)"
        bits = []
        for k in sorted(self.terms):
            mono = "*".join(
                f"x{i+1}" if e == 1 else f"x{i+1}^{e}"
                for i, e in enumerate(k)
                if e
            ) or "1"
            bits.append(f"{render_scalar(self.terms[k])}*{mono}")
        return "PolyState(" + " + ".join(bits) + ")"


def osc_apply(op: str, index: int, state: PolyState, params: OscParams) -> PolyState:
    """Dispatch on the operator family: "b" for a mode, "L" for Virasoro."""
    if op == "b":
        return mode_apply(index, state, params)
    if op == "L":
        return virasoro_apply(index, state, params)
    raise ValueError(f"unknown oscillator operator {op!r}")


def mode_apply(n: int, state: PolyState, params: OscParams) -> PolyState:
    """Action of the mode b_n."""
    if n == 0:
        return state.scale(params.mu0)
    if n < 0:
        return PolyState.variable(-n) * state
    out = {}
    for exps, coeff in state.terms.items():
        if len(exps) < n or exps[n - 1] == 0:
            continue
        e = exps[n - 1]
        new = list(exps)
        new[n - 1] = e - 1
        key = tuple(new)
        while key and key[-1] == 0:
            key = key[:-1]
        val = coeff * params.kappa * n * e
        cur = out.get(key)
        out[key] = val if cur is None else cur + val
    return PolyState(out)


def virasoro_apply(k: int, state: PolyState, params: OscParams) -> PolyState:
    """Sugawara action L_k = (1/2 kappa) sum_{r+s=k} :b_r b_s:."""
    if state.is_zero():
        return state
    half_inv_kappa = Fraction(1, 2) / params.kappa
    if k == 0:
        out = state.scale(params.lowest_energy())
        for exps, coeff in state.terms.items():
            deg = sum((i + 1) * e for i, e in enumerate(exps))
            out = out.add_into(PolyState({exps: coeff * deg}))
        return out
    max_deg = max(
        (sum((i + 1) * e for i, e in enumerate(exps)) for exps in state.terms),
        default=0,
    )
    total = PolyState.zero()
    # unordered pairs {r, s}, r + s = k, r <= s; the annihilating factor
    # (the larger index) is applied first, which keeps every step finite
    for r in range(k - max_deg, k // 2 + 1):
        s = k - r
        weight = half_inv_kappa if r == s else 2 * half_inv_kappa
        applied = mode_apply(r, mode_apply(s, state, params), params)
        total = total.add_into(applied.scale(weight))
    return total


def level_basis(level: int):
    """Monomials of weighted degree `level` in bijection with partitions:
    a partition with m_i parts of size i maps to x_i^{m_i}."""
    out = []
    for part in partitions_of(level):
        if part:
            exps = [0] * part[0]
            for p in part:
                exps[p - 1] += 1
            out.append(tuple(exps))
        else:
            out.append(())
    return out


def singular_kernel_osc(params: OscParams, level: int) -> list:
    """Joint kernel of L_1 and L_2 on the weighted-degree-`level` slice.

    Raises if the kernel has dimension two or more, which would violate
    the uniqueness of oscillator singular vectors.
    """
    if level < 1:
        return []
    basis = level_basis(level)
    rows = []
    for k in (1, 2):
        target = level_basis(level - k) if level - k >= 0 else []
        images = [
            virasoro_apply(k, PolyState({b: Fraction(1)}), params) for b in basis
        ]
        for t in target:
            rows.append([img.coeff(t) for img in images])
    kernel = nullspace(rows, ncols=len(basis))
    if len(kernel) > 1:
        raise RuntimeError(
            f"oscillator singular space at level {level} has dimension {len(kernel)}"
        )
    out = []
    for vec in kernel:
        out.append(PolyState({b: c for b, c in zip(basis, vec)}))
    return out


@lru_cache(maxsize=None)
def _partition_zcoeff(part) -> Fraction:
    """1 / z_lambda with z_lambda = prod_i i^{m_i} m_i!."""
    mult = {}
    for p in part:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for i, m in mult.items():
        z *= i**m * factorial(m)
    return Fraction(1, z)


@lru_cache(maxsize=None)
def c_coefficient(n: int) -> PolyState:
    """c_n in exp(sum_{n>0} x_n z^n / n) = sum c_n z^n; c_n = 0 for n < 0."""
    if n < 0:
        return PolyState.zero()
    if n == 0:
        return PolyState.one()
    terms = {}
    for part in partitions_of(n):
        exps = [0] * part[0]
        for p in part:
            exps[p - 1] += 1
        terms[tuple(exps)] = _partition_zcoeff(part)
    return PolyState(terms)


def c_coefficients(n_max: int) -> list:
    return [c_coefficient(n) for n in range(n_max + 1)]


def jacobi_trudi(f) -> PolyState:
    """X_f = det(c_{f_i - i + j}) expanded as a polynomial state."""
    f = as_signature(f)
    n = len(f)
    if n == 0:
        return PolyState.one()
    return _jt_det([[c_coefficient(f[i] - (i + 1) + (j + 1)) for j in range(n)] for i in range(n)])


def _jt_det(matrix) -> PolyState:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = PolyState.zero()
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * _jt_det(minor)
        total = total.add_into(term, scale=Fraction(-1) if j % 2 else None)
    return total


def goldstone_signature(k, m: int, sector: str = "minus"):
    """Rectangular signature of the Goldstone vector at energy (k+m)^2.

    sector "minus": charge -k, m rows of width 2k + m applied to the
    charge -k vacuum; sector "plus": the transposed diagram on the
    charge +k vacuum.
    """
    k = as_fraction(k)
    width = 2 * k + m
    if width.denominator != 1:
        raise ValueError("2k + m must be an integer")
    f = as_signature([int(width)] * m)
    if sector == "minus":
        return f
    if sector == "plus":
        return transpose(f)
    raise ValueError(f"unknown sector {sector!r}")


def goldstone_vector(k, m: int, sector: str = "minus") -> PolyState:
    """X_f on the appropriate charge-sector vacuum (as a polynomial)."""
    return jacobi_trudi(goldstone_signature(k, m, sector))


def goldstone_params(k, sector: str = "minus") -> OscParams:
    k = as_fraction(k)
    charge = -k if sector == "minus" else k
    return OscParams.charge_sector(charge)


def binomial_poly(a: int, var: str = "mu") -> UniPoly:
    """binom(mu + a - 1, a) = mu (mu+1) ... (mu+a-1) / a! as a polynomial."""
    if a < 0:
        return UniPoly.const(0, var)
    out = UniPoly.const(Fraction(1, factorial(a)), var)
    mu = UniPoly.gen(var)
    for s in range(a):
        out = out * (mu + s)
    return out


def binom_det(f, mu):
    """det binom(mu + f_i - i + j - 1, f_i - i + j) over Q[mu].

    `mu` may be rational or the symbolic UniPoly generator.
    """
    f = as_signature(f)
    n = len(f)
    if n == 0:
        return Fraction(1) if not isinstance(mu, UniPoly) else UniPoly.const(1, mu.var)
    var = mu.var if isinstance(mu, UniPoly) else "mu"
    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            poly = binomial_poly(f[i] - (i + 1) + (j + 1), var)
            row.append(poly(mu) if not isinstance(mu, UniPoly) else poly)
        mat.append(row)
    from .linalg import det_expansion

    return det_expansion(mat)


def rect_binom_product(width: int, depth: int, lam):
    """prod_{j<=width} prod_{i<=depth} (lam - i + j) / (width + i - j),
    the closed form of binom_det on a depth x width rectangle (width >= depth)."""
    if width < depth:
        raise ValueError("the closed form needs width >= depth")
    num = Fraction(1) if not isinstance(lam, UniPoly) else UniPoly.const(1, lam.var)
    den = Fraction(1)
    for j in range(1, width + 1):
        for i in range(1, depth + 1):
            num = num * (lam - i + j)
            den = den * Fraction(width + i - j)
    return num / den


def l1_power_pairing(f, charge) -> Fraction:
    """(1/|f|!) L_1^{|f|} applied to X_f on the charge-sector vacuum.

    Returns the scalar multiple of the vacuum; equals
    binom_det(f, 2*charge).  A nonscalar remainder is a grading bug and
    raises.
    """
    f = as_signature(f)
    size = sum(f)
    params = OscParams.charge_sector(charge)
    state = jacobi_trudi(f)
    for _ in range(size):
        state = virasoro_apply(1, state, params)
    if state.is_zero():
        return Fraction(0)
    if set(state.terms) != {()}:
        raise AssertionError("L_1 powers did not reduce X_f to a scalar")
    return state.terms[()] / factorial(size)
