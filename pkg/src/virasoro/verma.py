"""Verma modules for the Virasoro algebra over an exact coefficient ring.

Conventions fixed here and used everywhere else:

* generators satisfy [L_m, L_n] = (m-n) L_{m+n} + delta_{m+n,0} (m^3-m)/12 C;
* the module M(c, h) is generated by xi with L_0 xi = h xi, L_k xi = 0
  for k > 0, C = c;
* PBW monomials are written L_{-p1} L_{-p2} ... xi with p1 >= p2 >= ...,
  indexed by the partition (p1, p2, ...);
* Gram matrices are laid out in the descending-lexicographic partition
  order of :func:`virasoro.combinat.partitions_of`.

The parameters (c, h) may be rationals, rational functions of a curve
parameter, or the symbolic coordinates of Q[c,h]; all the action and
Gram-matrix code below is generic over that choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import num_partitions, partition_key, partitions_of
from .linalg import bareiss_det, rank
from .scalars import BiPoly, RatFunc, UniPoly, as_fraction, is_zero_scalar, render_scalar


@dataclass(frozen=True)
class VermaParams:
    """Central charge and lowest weight, drawn from a common ring."""

    c: object
    h: object

    @classmethod
    def rational(cls, c, h) -> "VermaParams":
        return cls(as_fraction(c), as_fraction(h))

    @classmethod
    def symbolic(cls) -> "VermaParams":
        c, h = BiPoly.gens()
        return cls(c, h)

    def is_rational(self) -> bool:
        return isinstance(self.c, (int, Fraction)) and isinstance(self.h, (int, Fraction))


class PBWVector:
    """Finite linear combination of PBW monomials, partition -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        for part, coeff in dict(terms or {}).items():
            if not is_zero_scalar(coeff):
                data[tuple(part)] = coeff
        self.terms = data

    @classmethod
    def monomial(cls, part, coeff=Fraction(1)) -> "PBWVector":
        return cls({tuple(part): coeff})

    @classmethod
    def vacuum(cls) -> "PBWVector":
        return cls({(): Fraction(1)})

    @classmethod
    def zero(cls) -> "PBWVector":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def level(self) -> int:
        levels = {sum(p) for p in self.terms}
        if not levels:
            return 0
        if len(levels) > 1:
            raise ValueError(f"inhomogeneous vector with levels {sorted(levels)}")
        return levels.pop()

    def coeff(self, part):
        return self.terms.get(tuple(part), Fraction(0))

    def add_into(self, other: "PBWVector", scale=None) -> "PBWVector":
        out = dict(self.terms)
        for part, coeff in other.terms.items():
            if scale is not None:
                coeff = scale * coeff
            cur = out.get(part)
            new = coeff if cur is None else cur + coeff
            if is_zero_scalar(new):
                out.pop(part, None)
            else:
                out[part] = new
        return PBWVector(out)

    def __add__(self, other):
        return self.add_into(other)

    def __sub__(self, other):
        return self.add_into(other, scale=Fraction(-1))

    def scale(self, scalar) -> "PBWVector":
        if is_zero_scalar(scalar):
            return PBWVector.zero()
        return PBWVector({p: scalar * c for p, c in self.terms.items()})

    def map_coeffs(self, fn) -> "PBWVector":
        return PBWVector({p: fn(c) for p, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PBWVector):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "PBWVector(0)"
        bits = []
        for part in sorted(self.terms, reverse=True):
            bits.append(f"{partition_key(part)}: {render_scalar(self.terms[part])}")
        return "PBWVector({" + ", ".join(bits) + "})"

    def to_json(self) -> dict:
        parts = sorted(self.terms, reverse=True)
        return {
            "level": self.level(),
            "terms": {partition_key(p): render_scalar(self.terms[p]) for p in parts},
        }


def central_term(k: int):
    return Fraction(k**3 - k, 12)


def pbw_left_multiply(p: int, v: PBWVector) -> PBWVector:
    """Left-multiply by L_{-p} (p > 0) and re-sort into PBW order.

    Only commutators inside the lowering subalgebra occur, so the result
    is independent of (c, h).
    """
    if p <= 0:
        raise ValueError("pbw_left_multiply expects a positive index")
    out = PBWVector.zero()
    for part, coeff in v.terms.items():
        out = out.add_into(_left_mul_monomial(p, part).scale(coeff))
    return out


_LEFT_CACHE: dict = {}


def _left_mul_monomial(p: int, part: tuple) -> PBWVector:
    if not part or p >= part[0]:
        return PBWVector.monomial((p,) + part)
    key = (p, part)
    hit = _LEFT_CACHE.get(key)
    if hit is not None:
        return hit
    head, rest = part[0], part[1:]
    # L_{-p} L_{-head} = L_{-head} L_{-p} + (head - p) L_{-p-head}
    inner = _left_mul_monomial(p, rest)
    swapped = PBWVector.zero()
    for q, c in inner.terms.items():
        swapped = swapped.add_into(_left_mul_monomial(head, q).scale(c))
    bracket = _left_mul_monomial(p + head, rest).scale(Fraction(head - p))
    result = swapped.add_into(bracket)
    _LEFT_CACHE[key] = result
    return result


def pbw_operator_apply(op: PBWVector, v: PBWVector) -> PBWVector:
    """Apply an element of the lowering algebra, written in the PBW
    basis, to a vector: rightmost factor of each monomial acts first."""
    out = PBWVector.zero()
    for part, coeff in op.terms.items():
        w = v
        for p in reversed(part):
            w = pbw_left_multiply(p, w)
        out = out.add_into(w.scale(coeff))
    return out


_ACTION_CACHE: dict = {}


def apply_L(k: int, v: PBWVector, params: VermaParams) -> PBWVector:
    """Exact action of L_k on a PBW vector of M(c, h)."""
    out = PBWVector.zero()
    for part, coeff in v.terms.items():
        out = out.add_into(_apply_monomial(k, part, params).scale(coeff))
    return out


def _apply_monomial(k: int, part: tuple, params: VermaParams) -> PBWVector:
    if k == 0:
        return PBWVector.monomial(part, params.h + sum(part))
    if k < 0 and (not part or -k >= part[0]):
        return PBWVector.monomial((-k,) + part)
    key = (params, k, part)
    hit = _ACTION_CACHE.get(key)
    if hit is not None:
        return hit
    if not part:
        result = PBWVector.zero()  # k > 0 annihilates the lowest-weight vector
    else:
        head, rest = part[0], part[1:]
        # L_k L_{-head} = L_{-head} L_k + (k + head) L_{k-head} + delta central
        through = _apply_monomial(k, rest, params)
        swapped = PBWVector.zero()
        for q, c in through.terms.items():
            swapped = swapped.add_into(_left_mul_monomial(head, q).scale(c))
        m = k - head
        if m == 0:
            bracket = PBWVector.monomial(rest, (params.h + sum(rest)) * Fraction(2 * k))
        else:
            bracket = _apply_monomial(m, rest, params).scale(Fraction(k + head))
        if k == head:
            bracket = bracket.add_into(
                PBWVector.monomial(rest, params.c * central_term(k))
            )
        result = swapped.add_into(bracket)
    _ACTION_CACHE[key] = result
    return result


@dataclass(frozen=True)
class GramMatrix:
    level: int
    basis: tuple
    entries: tuple  # tuple of tuples, Shapovalov pairings
    params: VermaParams

    def entry(self, row_part, col_part):
        i = self.basis.index(tuple(row_part))
        j = self.basis.index(tuple(col_part))
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "basis": [partition_key(p) for p in self.basis],
            "entries": [[render_scalar(x) for x in row] for row in self.entries],
        }


def shapovalov_pair(left_part, w: PBWVector, params: VermaParams):
    """<L_{-left} xi, w> computed by pushing the adjoints through w."""
    for p in left_part:
        w = apply_L(p, w, params)
        if w.is_zero():
            break
    return w.coeff(())


def gram_matrix(level: int, params: VermaParams) -> GramMatrix:
    if level < 0:
        raise ValueError("negative level")
    basis = partitions_of(level)
    n = len(basis)
    entries = [[None] * n for _ in range(n)]
    for j, mu in enumerate(basis):
        w = PBWVector.monomial(mu)
        for i, lam in enumerate(basis):
            if i > j:
                continue
            entries[i][j] = shapovalov_pair(lam, w, params)
            entries[j][i] = entries[i][j]
    return GramMatrix(level, basis, tuple(tuple(r) for r in entries), params)


def kac_det_direct(level: int, params: VermaParams):
    """Determinant of the level Gram matrix, fraction-free."""
    g = gram_matrix(level, params)
    return bareiss_det(g.rows())


def phi_rr(r: int) -> BiPoly:
    """h + (r^2-1)(c-1)/24, the linear Kac-determinant factor."""
    c, h = BiPoly.gens()
    return h + (c - 1) * Fraction(r * r - 1, 24)


def phi_rs(r: int, s: int) -> BiPoly:
    """Quadratic Kac factor covering the root pair (h_{r,s}, h_{s,r})."""
    if r == s:
        return phi_rr(r)
    c, h = BiPoly.gens()
    cm1 = c - 1
    quarter = Fraction((r - s) ** 2, 4)
    return (
        (h - quarter) * (h - quarter)
        + h * cm1 * Fraction(r * r + s * s - 2, 24)
        + cm1 * cm1 * Fraction((r * r - 1) * (s * s - 1), 576)
        + cm1 * Fraction((r - s) ** 2 * (r * s + 1), 48)
    )


def kac_det_product_sym(level: int) -> BiPoly:
    """Product form of the level determinant, up to a constant, in Q[c,h]."""
    if level < 1:
        raise ValueError("product form defined for level >= 1")
    result = BiPoly.const(1)
    for r in range(1, level + 1):
        for s in range(1, r + 1):
            if r * s > level:
                continue
            result = result * phi_rs(r, s) ** num_partitions(level - r * s)
    return result


def kac_det_product(level: int, params: VermaParams):
    """Product form evaluated at the given parameters."""
    sym = kac_det_product_sym(level)
    return sym.specialize(params.c, params.h)


def kac_det_ratio(level: int):
    """direct / product at fully symbolic (c, h); a constant polynomial."""
    direct = kac_det_direct(level, VermaParams.symbolic())
    product = kac_det_product_sym(level)
    quotient = direct.exact_div(product)
    return quotient


def h_pq(p: int, q: int, m: int) -> Fraction:
    """Discrete-series weight ((p(m+1)-qm)^2 - 1) / (4m(m+1))."""
    if m < 2:
        raise ValueError("the weight grid needs m >= 2")
    a = p * (m + 1) - q * m
    return Fraction(a * a - 1, 4 * m * (m + 1))


def central_charge(m: int) -> Fraction:
    return Fraction(1) - Fraction(6, m * (m + 1))


def c_curve(var: str = "t") -> RatFunc:
    """c(t) = 13 - 6t - 6/t."""
    t = UniPoly.gen(var)
    return RatFunc(UniPoly([13, -6], var) * t - 6, t)


def h_pq_curve(p: int, q: int, var: str = "t") -> RatFunc:
    """The weight h(t) on c(t) = 13 - 6t - 6/t with phi_{p,q}(c(t), h(t)) = 0.

    Validated symbolically at construction.
    """
    t = UniPoly.gen(var)
    num = (
        t * t * Fraction(p * p - 1, 4)
        + t * Fraction(-(p * q - 1), 2)
        + Fraction(q * q - 1, 4)
    )
    h = RatFunc(num, t)
    residue = phi_rs(p, q).specialize(c_curve(var), h)
    if not residue.is_zero():
        raise AssertionError(f"curve weight for ({p},{q}) fails its defining equation")
    return h


def irreducible_dims(params: VermaParams, max_level: int) -> list:
    """dim L(c,h)(n) for n = 0..max_level via Gram-matrix ranks over Q."""
    if not params.is_rational():
        raise ValueError("the rank oracle needs rational (c, h)")
    dims = []
    for n in range(max_level + 1):
        g = gram_matrix(n, params)
        dims.append(rank(g.rows()))
    return dims
