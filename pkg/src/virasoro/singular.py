"""Singular vectors of Verma modules by three independent routes.

* exact joint-kernel solve of L_1, L_2 at a fixed level;
* the spin-chain recurrence of Bauer, Di Francesco, Itzykson and Zuber
  (BDIZ) for weights on the curve c(t) = 13 - 6t - 6/t, giving the
  singular vector as a polynomial in t;
* a kernel solve over the rational-function field Q(t) along the curve
  through a general (r, s) vanishing locus of the Kac determinant.

All three normalise the coefficient of L_{-1}^d to 1, which is always
possible: that coefficient is nonzero whenever a singular vector exists,
and then the vector is unique up to scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import partitions_of
from .linalg import nullspace
from .scalars import RatFunc, UniPoly, as_fraction, is_zero_scalar
from .verma import (
    PBWVector,
    VermaParams,
    apply_L,
    c_curve,
    central_charge,
    h_pq,
    h_pq_curve,
    pbw_left_multiply,
)


@dataclass(frozen=True)
class SingularVector:
    vector: PBWVector
    level: int
    params: VermaParams

    def to_json(self) -> dict:
        return self.vector.to_json()


def _linear_map_matrix(k: int, level: int, params: VermaParams):
    """Matrix of L_k from level to level-k in the partition bases."""
    source = partitions_of(level)
    if level - k < 0:
        return []
    target = partitions_of(level - k)
    rows = []
    images = [apply_L(k, PBWVector.monomial(p), params) for p in source]
    for tp in target:
        rows.append([img.coeff(tp) for img in images])
    return rows


def singular_kernel(params: VermaParams, level: int) -> list:
    """Basis of the joint kernel of L_1 and L_2 at the given level.

    Works over Q for rational parameters and over Q(t) for curve
    parameters.  Vectors are normalised so the L_{-1}^level coefficient
    is 1 whenever it is nonzero.
    """
    if level < 1:
        return []
    rows = _linear_map_matrix(1, level, params) + _linear_map_matrix(2, level, params)
    basis = partitions_of(level)
    kernel = nullspace(rows, ncols=len(basis))
    out = []
    ones_index = basis.index((1,) * level)
    for vec in kernel:
        lead = vec[ones_index]
        if not is_zero_scalar(lead):
            vec = [x / lead for x in vec]
        v = PBWVector({p: c for p, c in zip(basis, vec)})
        out.append(SingularVector(v, level, params))
    return out


def check_singular(v: PBWVector, params: VermaParams):
    """Return (is_singular, (L_1 v, L_2 v)) as an explicit certificate."""
    r1 = apply_L(1, v, params)
    r2 = apply_L(2, v, params)
    return r1.is_zero() and r2.is_zero(), (r1, r2)


class SpinModule:
    """Irreducible sl2 module of spin j on v_{-j}, ..., v_j.

    Basis index i = 0..2j corresponds to v_{-j+i}; the operators act by
    H v_k = k v_k, F v_k = v_{k-1} (with v_{-j-1} = 0) and
    E v_k = (j-k)(j+k+1) v_{k+1}, so [E, F] = 2H and E^{2j} v_{-j}
    = ((2j)!)^2 v_j.
    """

    def __init__(self, two_j: int):
        if two_j < 0:
            raise ValueError("spin must be non-negative")
        self.two_j = two_j
        self.dim = two_j + 1

    def h_eigenvalue(self, i: int) -> Fraction:
        return Fraction(-self.two_j + 2 * i, 2)

    def e_step(self, i: int) -> Fraction:
        """Factor in E v_{-j+i} = e_step(i) v_{-j+i+1}."""
        # (j - k)(j + k + 1) at k = -j + i, cleared of halves:
        return Fraction((self.two_j - i) * (i + 1))

    def e_power_factor(self, i: int, m: int) -> Fraction:
        """Factor in E^m v_{-j+i} = factor * v_{-j+i+m}."""
        out = Fraction(1)
        for s in range(m):
            out *= self.e_step(i + s)
        return out

    def matrix_E(self):
        z = Fraction(0)
        mat = [[z] * self.dim for _ in range(self.dim)]
        for i in range(self.dim - 1):
            mat[i + 1][i] = self.e_step(i)
        return mat

    def matrix_F(self):
        z = Fraction(0)
        mat = [[z] * self.dim for _ in range(self.dim)]
        for i in range(1, self.dim):
            mat[i - 1][i] = Fraction(1)
        return mat

    def matrix_H(self):
        z = Fraction(0)
        mat = [[z] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            mat[i][i] = self.h_eigenvalue(i)
        return mat


def bdiz_singular(j, var: str = "t") -> PBWVector:
    """Singular element for the curve weight h(t) = (j^2+j)t - j at spin j.

    Returns the degree-(2j+1) element of the lowering algebra with
    UniPoly(t) coefficients: constant term L_{-1}^{2j+1}, coefficient of
    L_{-1}^{2j+1} equal to 1, and top t-degree 2j.

    The construction runs the two-term recurrence of the spin-j chain
    xi_{k+1} = sum_m (-t)^m E^m-factor L_{-m-1} xi_{k-m}; the final step
    emits the singular element.
    """
    j = as_fraction(j)
    two_j = j * 2
    if two_j.denominator != 1 or two_j < 0:
        raise ValueError("j must be a non-negative half-integer")
    two_j = int(two_j)
    spin = SpinModule(two_j)
    t = UniPoly.gen(var)
    one = UniPoly.const(1, var)

    def poly_vec(v: PBWVector) -> PBWVector:
        return v.map_coeffs(lambda c: c * one if isinstance(c, Fraction) else c)

    chain = [poly_vec(PBWVector.vacuum())]  # xi at index 0 <-> v_{-j}
    for i in range(two_j + 1):
        total = PBWVector.zero()
        for m in range(i + 1):
            factor = spin.e_power_factor(i - m, m)
            if factor == 0:
                continue
            term = pbw_left_multiply(m + 1, chain[i - m]).scale(((-t) ** m) * factor)
            total = total.add_into(term)
        chain.append(total)
    return chain[two_j + 1]


def curve_singular(r: int, s: int, var: str = "t") -> PBWVector:
    """The unique singular vector of M(c(t), h_{r,s}(t)) at level r*s.

    Solved as an exact kernel computation over Q(t); the kernel must be
    one-dimensional, otherwise the uniqueness guarantee is violated and
    a RuntimeError is raised.
    """
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    params = VermaParams(c_curve(var), h_pq_curve(r, s, var))
    found = singular_kernel(params, r * s)
    if len(found) != 1:
        raise RuntimeError(
            f"kernel dimension {len(found)} at level {r * s} on the ({r},{s}) curve; expected 1"
        )
    return found[0].vector


def specialize_curve_vector(v: PBWVector, t_value) -> PBWVector:
    """Evaluate UniPoly(t) or RatFunc(t) coefficients at a rational point."""
    t_value = as_fraction(t_value)

    def ev(c):
        if isinstance(c, (UniPoly, RatFunc)):
            return c(t_value)
        return as_fraction(c)

    return v.map_coeffs(ev)


def curve_params_at(t_value, j=None, rs=None) -> VermaParams:
    """Rational (c, h) on the curve at the point t_value."""
    t_value = as_fraction(t_value)
    c = c_curve()(t_value)
    if j is not None:
        j = as_fraction(j)
        h = (j * j + j) * t_value - j
    else:
        r, s = rs
        h = h_pq_curve(r, s)(t_value)
    return VermaParams(c, h)


def c1_chain_levels(j, count: int) -> list:
    """Levels of the singular chain of M(1, j^2): k(k + 2j), k = 1..count."""
    j = as_fraction(j)
    out = []
    for k in range(1, count + 1):
        lvl = k * (k + 2 * j)
        if lvl.denominator != 1:
            raise ValueError("j must be a half-integer")
        out.append(int(lvl))
    return out


def discrete_chain_levels(m: int, r: int, s: int, max_level: int) -> list:
    """Relative levels (r+am)(s+a(m+1)), a in Z, up to max_level, sorted."""
    out = set()
    a = 0
    while True:
        vals = [(r + a * m) * (s + a * (m + 1)), (r - a * m) * (s - a * (m + 1))]
        hits = [v for v in vals if 0 < v <= max_level]
        if a > 0 and not hits and min(vals) > max_level:
            break
        out.update(hits)
        a += 1
        if a > max_level + 2:
            break
    return sorted(out)


class SpinChainOps:
    """The operator family behind the spin-chain construction, acting on
    chains (one PBW vector per spin basis slot) over a common scalar ring.

    ladder(-1) is the chain operator N = -F + sum_m (-tE)^m L_{-m-1},
    ladder(0) = L_0 - H - tC, and for k >= 1

        ladder(k) = L_k - (-E)^k t^{k-1} (t(H - (k+1)/2) + (3k+1)/4).

    Verified bracket relations (tests): [ladder(p), ladder(q)] =
    (p - q) ladder(p + q) for p, q >= 0 at any parameters, and whenever
    the central charge is c(t) = 13 - 6t - 6/t (any weight) the
    alternating ladder law

        [ladder(p), ladder(-1)]
            = sum_{q >= 0} (p + 1 + q) (-t)^q E^q ladder(p - 1 - q)

    with ladder(k) = 0 for k < -1.
    """

    def __init__(self, two_j: int, params: VermaParams, var: str = "t"):
        self.spin = SpinModule(two_j)
        self.params = params
        self.t = RatFunc.gen(var)
        self.var = var
        self.casimir = Fraction(two_j * (two_j + 2), 4)

    def zero(self):
        return [PBWVector.zero() for _ in range(self.spin.dim)]

    def add(self, a, b):
        return [x.add_into(y) for x, y in zip(a, b)]

    def scale(self, a, s):
        return [x.scale(s) for x in a]

    def lift(self, chain):
        def up(c):
            if isinstance(c, Fraction):
                return RatFunc.const(c, self.var)
            if isinstance(c, UniPoly):
                return RatFunc.from_poly(c)
            return c

        return [v.map_coeffs(up) for v in chain]

    def E(self, chain):
        out = self.zero()
        for i in range(self.spin.dim - 1):
            step = RatFunc.const(self.spin.e_step(i), self.var)
            out[i + 1] = out[i + 1].add_into(chain[i].scale(step))
        return out

    def F(self, chain):
        out = self.zero()
        for i in range(1, self.spin.dim):
            out[i - 1] = out[i - 1].add_into(chain[i])
        return out

    def H(self, chain):
        return [
            chain[i].scale(RatFunc.const(self.spin.h_eigenvalue(i), self.var))
            for i in range(self.spin.dim)
        ]

    def L(self, a, chain):
        return [apply_L(a, v, self.params) for v in chain]

    def ladder(self, k: int, chain):
        t = self.t
        one = RatFunc.const(1, self.var)
        if k < -1:
            return self.zero()
        if k == -1:
            out = self.scale(self.F(chain), -one)
            for m in range(self.spin.two_j + 1):
                term = self.L(-m - 1, chain)
                for _ in range(m):
                    term = self.E(term)
                out = self.add(out, self.scale(term, (-t) ** m))
            return out
        if k == 0:
            out = self.add(self.L(0, chain), self.scale(self.H(chain), -one))
            return self.add(out, self.scale(chain, -t * self.casimir))
        shift = -t * Fraction(k + 1, 2) + Fraction(3 * k + 1, 4)
        inner = self.add(self.scale(self.H(chain), t), self.scale(chain, shift))
        for _ in range(k):
            inner = self.E(inner)
        sign = RatFunc.const((-1) ** (k + 1), self.var) * t ** (k - 1)
        return self.add(self.L(k, chain), self.scale(inner, sign))

    def bracket(self, p: int, q: int, chain):
        left = self.ladder(p, self.ladder(q, chain))
        right = self.ladder(q, self.ladder(p, chain))
        return self.add(left, self.scale(right, RatFunc.const(-1, self.var)))


def chain_product_vector(j, depth: int) -> PBWVector:
    """The composite singular vector of M(1, j^2) at level (j+depth)^2 - j^2,
    built by applying the normalised degree-(2i+1) singular elements for
    the weights j, j+1, ..., j+depth-1 in succession.

    Equals (up to scale) the kernel-solved singular vector at that level;
    the chain tests assert this.
    """
    from .verma import pbw_operator_apply

    j = as_fraction(j)
    vec = PBWVector.vacuum()
    for i in range(depth):
        element = specialize_curve_vector(bdiz_singular(j + i), 1)
        vec = pbw_operator_apply(element, vec)
    return vec


def singular_chain(case: str, depth: int, *, j=None, m=None, r=None, s=None,
                   max_level: int | None = None) -> list:
    """Kernel-solved singular vectors at the predicted chain levels.

    case "c1": levels k(k+2j) in M(1, j^2) for k = 1..depth.
    case "discrete": the first `depth` predicted levels of
    M(c(m), h_{r,s}(m)) below max_level.  A predicted level with an
    empty kernel is a structural failure and raises.
    """
    if depth <= 0:
        return []
    if case == "c1":
        params = VermaParams.rational(1, as_fraction(j) ** 2)
        levels = c1_chain_levels(j, depth)
    elif case == "discrete":
        params = VermaParams.rational(central_charge(m), h_pq(r, s, m))
        levels = discrete_chain_levels(m, r, s, max_level or 12)[:depth]
    else:
        raise ValueError(f"unknown chain case {case!r}")
    chain = []
    for lvl in levels:
        found = singular_kernel(params, lvl)
        if len(found) != 1:
            raise RuntimeError(
                f"expected a unique singular vector at level {lvl}, found {len(found)}"
            )
        chain.append(found[0])
    return chain
