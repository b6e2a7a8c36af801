"""Jantzen filtrations of one-parameter Gram-matrix families.

A family A(x) = sum_i A_i x^i of symmetric matrices (the Shapovalov form
along a curve through a degenerate point) induces the filtration

    V^(m) = { v(0) : v(x) polynomial, A(x) v(x) = 0 mod x^m },

and the order of x = 0 as a root of det A(x) equals sum_{i>=1} dim V^(i).
V^(1) is the plain kernel of A_0; for deeper steps the witnessing section
may need x-corrections, so V^(m) is computed from the block-Toeplitz
system sum_{i+j=k} A_i v_j = 0 (k < m) rather than from the intersection
of the ker A_i alone.  (The plain intersection undercounts: at c = 1,
j = 1/2, level 6 it gives 5 where the determinant order is 6, because the
depth-two singular vector only annihilates A_1 after a correction.)

Two path families are supported: central-charge paths (1 + x, j^2) and
weight paths (c(m), h_{r,s}(m) + x).  For j = 0 the c-path is degenerate
at every positive level (the linear Kac factor vanishes identically along
it), so the weight path (1, x) is used instead; reports flag the switch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import QSeries, num_partitions, partitions_of
from .linalg import bareiss_det, nullspace, rref, sum_entries
from .scalars import UniPoly, as_fraction, order_at_zero
from .verma import (
    PBWVector,
    VermaParams,
    central_charge,
    gram_matrix,
    h_pq,
    pbw_left_multiply,
)


class DegenerateFamilyError(ValueError):
    """The family determinant vanishes identically; no filtration exists."""


@dataclass(frozen=True)
class MatrixFamily:
    level: int
    entries: tuple  # tuple of tuples of UniPoly in x
    provenance: str

    def rows(self):
        return [list(r) for r in self.entries]

    @property
    def dim(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Filtration:
    dims: tuple   # dim V^(0), dim V^(1), ... down to the first zero
    bases: tuple  # rational basis vectors of each V^(i), i >= 1

    def depth_sum(self) -> int:
        return sum(self.dims[1:])


@lru_cache(maxsize=None)
def _symbolic_gram_rows(level: int):
    return gram_matrix(level, VermaParams.symbolic()).entries


def _as_x_poly(value, var="x") -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.const(as_fraction(value), var)


def gram_family(path, level: int, provenance: str = "") -> MatrixFamily:
    """Substitute a polynomial path (c(x), h(x)) into the symbolic Gram form."""
    from .scalars import specialize

    c_path, h_path = (_as_x_poly(p) for p in path)
    rows = []
    for row in _symbolic_gram_rows(level):
        rows.append(tuple(_as_x_poly(specialize(entry, c_path, h_path)) for entry in row))
    label = provenance or f"c(x)={c_path.render()}, h(x)={h_path.render()}"
    return MatrixFamily(level, tuple(rows), label)


def c1_path(j):
    """The path through (1, j^2); the weight path (1, x) when j = 0."""
    j = as_fraction(j)
    x = UniPoly.gen("x")
    if j == 0:
        return (UniPoly.const(1, "x"), x), "c=1, h=x (weight path; c-path degenerate at j=0)"
    return (1 + x, UniPoly.const(j * j, "x")), f"c=1+x, h={j * j}"


def discrete_path(m: int, r: int, s: int):
    x = UniPoly.gen("x")
    h0 = h_pq(r, s, m)
    return (UniPoly.const(central_charge(m), "x"), h0 + x), (
        f"c={central_charge(m)}, h={h0}+x"
    )


def coefficient_matrices(family: MatrixFamily):
    """The rational matrices A_i of A(x) = sum A_i x^i."""
    top = max((e.degree for row in family.entries for e in row), default=0)
    mats = []
    for i in range(top + 1):
        mats.append(
            [
                [
                    e.coeffs[i] if i <= e.degree else Fraction(0)
                    for e in row
                ]
                for row in family.entries
            ]
        )
    return mats


def _toeplitz_kernel(mats, n: int, depth: int):
    """Kernel of the depth x depth lower-triangular block system
    sum_{i+j=k} A_i v_j = 0 for k < depth, unknowns v_0..v_{depth-1}."""
    zero = Fraction(0)
    rows = []
    for k in range(depth):
        for r in range(n):
            row = []
            for jblk in range(depth):
                i = k - jblk
                block = mats[i] if 0 <= i < len(mats) else None
                row.extend(block[r] if block is not None else [zero] * n)
            rows.append(row)
    return nullspace(rows, ncols=n * depth)


def _first_block_span(kernel, n: int):
    """Basis of the projection of kernel vectors onto the v_0 block."""
    projected = [vec[:n] for vec in kernel if any(x != 0 for x in vec[:n])]
    if not projected:
        return ()
    reduced, pivots = rref(projected)
    return tuple(tuple(reduced[i]) for i in range(len(pivots)))


def jantzen_filtration(family: MatrixFamily) -> Filtration:
    """Section-based filtration; terminates because det A(x) is not 0."""
    det = bareiss_det(family.rows())
    if det.is_zero():
        raise DegenerateFamilyError(
            f"det A(x) vanishes identically for {family.provenance} at level {family.level}"
        )
    mats = coefficient_matrices(family)
    n = family.dim
    dims = [n]
    bases = []
    prev_kernel_dim = 0
    depth = 1
    while True:
        kernel = _toeplitz_kernel(mats, n, depth)
        dim_vm = len(kernel) - prev_kernel_dim
        if dim_vm == 0:
            break
        dims.append(dim_vm)
        bases.append(_first_block_span(kernel, n))
        prev_kernel_dim = len(kernel)
        depth += 1
        if depth > n * (max(len(mats), 2)) + 2:
            raise DegenerateFamilyError(
                f"kernels failed to terminate for {family.provenance} at level {family.level}"
            )
    dims.append(0)
    return Filtration(tuple(dims), tuple(bases))


def det_order_identity(family: MatrixFamily):
    """(order of x=0 in det A(x), sum of filtration dims); both computed
    independently so the caller can assert their equality."""
    det = bareiss_det(family.rows())
    order = order_at_zero(det)
    if order is None:
        raise DegenerateFamilyError(
            f"det A(x) vanishes identically for {family.provenance} at level {family.level}"
        )
    filt = jantzen_filtration(family)
    return order, filt.depth_sum()


def lowering_matrix(k: int, level: int):
    """Matrix of L_{-k} from level to level + k; independent of (c, h)."""
    source = partitions_of(level)
    target = partitions_of(level + k)
    cols = [pbw_left_multiply(k, PBWVector.monomial(p)) for p in source]
    return [[col.coeff(t) for col in cols] for t in target]


def filtration_character_sum(case: str, n_max: int, *, j=None, m=None, r=None, s=None) -> QSeries:
    """sum_{i>=1} ch M^(i) assembled level by level from filtration dims.

    Returned with leading exponent equal to the lowest weight of the
    module, coefficients indexed by relative level.
    """
    if case == "c1":
        path, label = c1_path(j)
        lead = as_fraction(j) ** 2
    elif case == "discrete":
        path, label = discrete_path(m, r, s)
        lead = h_pq(r, s, m)
    else:
        raise ValueError(f"unknown character-sum case {case!r}")
    coeffs = [0]
    for level in range(1, n_max + 1):
        family = gram_family(path, level, label)
        coeffs.append(jantzen_filtration(family).depth_sum())
    return QSeries(coeffs, lead, n_max)


def c1_character_sum_closed(j, n_max: int) -> QSeries:
    """phi(q) * sum_{r>=1} q^{r(r+2j)} truncated, lead j^2."""
    j = as_fraction(j)
    coeffs = []
    for n in range(n_max + 1):
        total = 0
        rr = 1
        while True:
            lvl = rr * (rr + 2 * j)
            if lvl > n:
                break
            if lvl.denominator == 1:
                total += num_partitions(n - int(lvl))
            rr += 1
        coeffs.append(total)
    return QSeries(coeffs, j * j, n_max)


def discrete_degeneracy_levels(m: int, r: int, s: int, n_max: int):
    """Relative levels (r+am)(s+a(m+1)) for a in Z, within 1..n_max."""
    levels = []
    bound = n_max + 1
    for a in range(-bound, bound + 1):
        lvl = (r + a * m) * (s + a * (m + 1))
        if 1 <= lvl <= n_max:
            levels.append(lvl)
    return sorted(levels)


def discrete_character_sum_closed(m: int, r: int, s: int, n_max: int) -> QSeries:
    coeffs = [0] * (n_max + 1)
    for lvl in discrete_degeneracy_levels(m, r, s, n_max):
        for n in range(lvl, n_max + 1):
            coeffs[n] += num_partitions(n - lvl)
    return QSeries(coeffs, h_pq(r, s, m), n_max)


def norm_vanishing_order(vector: PBWVector, family: MatrixFamily) -> int:
    """Order of the zero of (v, v)_x along the family, for a fixed vector."""
    basis = partitions_of(family.level)
    coords = [vector.coeff(p) for p in basis]
    norm = UniPoly.const(0, "x")
    for i, row in enumerate(family.entries):
        if coords[i] == 0:
            continue
        norm = norm + coords[i] * sum_entries(row, coords)
    order = order_at_zero(norm)
    if order is None:
        raise ValueError("the norm vanishes identically along the family")
    return order


def c1_character_closed(j, n_max: int) -> QSeries:
    """(q^{j^2} - q^{(j+1)^2}) phi(q) truncated, lead j^2."""
    j = as_fraction(j)
    d = int(2 * j) + 1
    coeffs = [num_partitions(n) - num_partitions(n - d) for n in range(n_max + 1)]
    return QSeries(coeffs, j * j, n_max)


def discrete_character_closed(m: int, r: int, s: int, n_max: int) -> QSeries:
    """Alternating-sum character of the (m; r, s) discrete-series module.

    ch L = q^h phi(q) sum_{k in Z} (q^{l+(k)} - q^{l-(k)}) with

        l+(k) = k^2 m(m+1) + k (r(m+1) - s m)
        l-(k) = r s + k^2 m(m+1) + k (r(m+1) + s m),

    the relative levels of the two chains of submodule generators.
    """
    a_minus = r * (m + 1) - s * m
    a_plus = r * (m + 1) + s * m
    period = m * (m + 1)
    coeffs = [0] * (n_max + 1)
    bound = n_max + 1
    for k in range(-bound, bound + 1):
        lp = k * k * period + k * a_minus
        lm = r * s + k * k * period + k * a_plus
        for n in range(n_max + 1):
            if 0 <= n - lp:
                coeffs[n] += num_partitions(n - lp)
            if 0 <= n - lm:
                coeffs[n] -= num_partitions(n - lm)
    return QSeries(coeffs, h_pq(r, s, m), n_max)


def character_formula(case: str, n_max: int, *, j=None, m=None, r=None, s=None) -> QSeries:
    """Closed-form irreducible character, truncated at relative level n_max."""
    if case == "c1":
        return c1_character_closed(j, n_max)
    if case == "discrete":
        return discrete_character_closed(m, r, s, n_max)
    raise ValueError(f"unknown character case {case!r}")
