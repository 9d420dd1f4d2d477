"""Rational cohomology of a smooth complete toric variety, exactly.

H*(M; Q) = Q[x_1..x_n] / (linear relations from the rays + Stanley-Reisner
monomials of the fan).  The ring is graded by complex degree, generators sit
in degree one, and everything vanishes above the top degree dim(M), so each
graded piece can be computed once and for all by exact row reduction of the
span of relation multiples.  No Groebner machinery is needed or used.

Integration is normalized so that the class of a torus-fixed point, the
product prod_{k in sigma} x_k over any maximal cone sigma, integrates to 1;
consistency of that normalization across all maximal cones is checked.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from . import linalg
from .toric import ChargeMatrix, FanData, FanError


def mono_key(mono):
    """Graded-lex sort key: by total degree, then x_1-heavy monomials first."""
    return (sum(mono), tuple(-e for e in mono))


def monomials(n, degree):
    """All exponent tuples in n variables of the given total degree, sorted."""
    if degree == 0:
        return [(0,) * n]
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=mono_key)
    return out


def _mul_mono(a, b):
    return tuple(x + y for x, y in zip(a, b))


class CohomClass:
    """Ring element stored as exact coefficients over the monomial basis."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {m: Fraction(c) for m, c in coeffs.items() if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, CohomClass) or other.ring is not self.ring:
            return NotImplemented
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CohomClass(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CohomClass(self.ring, {m: -c for m, c in self.coeffs.items()})

    def scale(self, c):
        return CohomClass(self.ring, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, CohomClass):
            if other.ring is not self.ring:
                return NotImplemented
            return self.ring.multiply(self, other)
        return self.scale(Fraction(other))

    def __rmul__(self, other):
        return self.scale(Fraction(other))

    def __eq__(self, other):
        return (isinstance(other, CohomClass) and self.ring is other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def degree_part(self, deg):
        return CohomClass(self.ring, {m: c for m, c in self.coeffs.items()
                                      if sum(m) == deg})

    def max_degree(self):
        """Largest complex degree with a nonzero term; -1 for the zero class."""
        return max((sum(m) for m in self.coeffs), default=-1)

    def integrate(self):
        return self.ring.integrate(self)

    def __repr__(self):
        if not self.coeffs:
            return "CohomClass(0)"
        bits = []
        for m in sorted(self.coeffs, key=mono_key):
            bits.append("%s*%s" % (self.coeffs[m], m))
        return "CohomClass(%s)" % " + ".join(bits)


class CohomRing:
    """The graded quotient ring, with reduction tables per degree."""

    def __init__(self, fan: FanData, cm: ChargeMatrix):
        if cm.n != fan.n_rays:
            raise ValueError("charge matrix does not match the fan")
        self.fan = fan
        self.cm = cm
        self.n = fan.n_rays
        self.top = fan.dim
        self.l = cm.l
        self._nonfaces = self._minimal_nonfaces()
        self._table = {}
        self.basis_by_degree = {}
        ray_rows = [[ray[nu] for ray in fan.rays] for nu in range(fan.dim)]
        for deg in range(self.top + 2):
            basis = self._build_degree(deg, ray_rows)
            if deg <= self.top:
                self.basis_by_degree[deg] = basis
            elif basis:
                raise FanError("cohomology does not vanish above the top degree; "
                               "fan data is inconsistent")
        self.dims = tuple(len(self.basis_by_degree[d]) for d in range(self.top + 1))
        if self.dims[0] != 1 or self.dims[self.top] != 1:
            raise FanError("cohomology must be one dimensional in degrees 0 and %d"
                           % self.top)
        if sum(self.dims) != len(fan.max_cones):
            raise FanError("total Betti number %d does not match the %d maximal cones"
                           % (sum(self.dims), len(fan.max_cones)))
        self.basis = tuple(m for d in range(self.top + 1)
                           for m in self.basis_by_degree[d])
        self._point_mono = self.basis_by_degree[self.top][0]
        self._point_factor = self._normalize_point()
        self._omega_cache = {}
        self._dual_cache = None

    # -- construction ---------------------------------------------------

    def _minimal_nonfaces(self):
        cones = [frozenset(c) for c in self.fan.max_cones]
        nonfaces = []
        for size in range(2, self.n + 1):
            for combo in combinations(range(self.n), size):
                s = frozenset(combo)
                if any(s <= c for c in cones):
                    continue
                if any(nf < s for nf in nonfaces):
                    continue
                nonfaces.append(s)
        return nonfaces

    def _sr_divisible(self, mono):
        support = {i for i, e in enumerate(mono) if e}
        return any(nf <= support for nf in self._nonfaces)

    def _build_degree(self, deg, ray_rows):
        monos = monomials(self.n, deg)
        alive = []
        for m in monos:
            if self._sr_divisible(m):
                self._table[m] = {}
            else:
                alive.append(m)
        index = {m: i for i, m in enumerate(alive)}
        rows = []
        if deg >= 1:
            lower = [m for m in monomials(self.n, deg - 1)
                     if not self._sr_divisible(m)]
            for coeffs in ray_rows:
                for mu in lower:
                    row = [0] * len(alive)
                    for k in range(self.n):
                        if coeffs[k]:
                            j = index.get(_mul_mono(mu, tuple(1 if i == k else 0
                                                              for i in range(self.n))))
                            if j is not None:
                                row[j] += coeffs[k]
                    if any(row):
                        rows.append(row)
        red, pivots = linalg.rref(rows, len(alive))
        pivset = set(pivots)
        basis = [alive[j] for j in range(len(alive)) if j not in pivset]
        for row, c in zip(red, pivots):
            self._table[alive[c]] = {alive[j]: -row[j]
                                     for j in range(len(alive))
                                     if j not in pivset and row[j]}
        for m in basis:
            self._table[m] = {m: Fraction(1)}
        return basis

    def _normalize_point(self):
        vals = []
        for cone in self.fan.max_cones:
            e = [0] * self.n
            for k in cone:
                e[k] += 1
            red = self._table[tuple(e)]
            if set(red) - {self._point_mono}:
                raise FanError("point class of a maximal cone does not reduce to "
                               "the top basis monomial")
            vals.append(red.get(self._point_mono, Fraction(0)))
        if any(v == 0 for v in vals) or len(set(vals)) != 1:
            raise FanError("inconsistent point normalization across maximal cones")
        return vals[0]

    # -- arithmetic ------------------------------------------------------

    def zero(self) -> CohomClass:
        return CohomClass(self, {})

    def one(self) -> CohomClass:
        return CohomClass(self, {(0,) * self.n: Fraction(1)})

    def generator(self, k) -> CohomClass:
        """alpha_k, the class of the k-th ray divisor."""
        e = tuple(1 if i == k else 0 for i in range(self.n))
        return CohomClass(self, dict(self._table[e]))

    def monomial_class(self, mono) -> CohomClass:
        if sum(mono) > self.top:
            return self.zero()
        return CohomClass(self, dict(self._table[tuple(mono)]))

    def multiply(self, a: CohomClass, b: CohomClass) -> CohomClass:
        out = {}
        for m1, c1 in a.coeffs.items():
            for m2, c2 in b.coeffs.items():
                prod = _mul_mono(m1, m2)
                if sum(prod) > self.top:
                    continue
                c12 = c1 * c2
                for mb, r in self._table[prod].items():
                    out[mb] = out.get(mb, Fraction(0)) + c12 * r
        return CohomClass(self, out)

    def integrate(self, a: CohomClass) -> Fraction:
        """Integral over the fundamental class; fixed points integrate to 1."""
        return a.coeffs.get(self._point_mono, Fraction(0)) / self._point_factor

    def point_class(self) -> CohomClass:
        return CohomClass(self, {self._point_mono: self._point_factor})

    def c1_class(self) -> CohomClass:
        out = self.zero()
        for k in range(self.n):
            out = out + self.generator(k)
        return out

    def omega_class(self, j) -> CohomClass:
        """The j-th nef basis class, written in the ray divisor generators."""
        if j not in self._omega_cache:
            cols = [[self.cm.m[i][k] for i in range(self.l)] for k in range(self.n)]
            target = [Fraction(1 if i == j else 0) for i in range(self.l)]
            sol = linalg.solve_columns(cols, target)
            if sol is None:
                raise ValueError("charge matrix rows are not independent")
            out = self.zero()
            for k, c in enumerate(sol):
                if c:
                    out = out + self.generator(k).scale(c)
            self._omega_cache[j] = out
        return self._omega_cache[j]

    def coords(self, a: CohomClass):
        """Coefficient vector of a over the graded monomial basis."""
        return [a.coeffs.get(m, Fraction(0)) for m in self.basis]

    def dual_basis(self):
        """(T, T^) with T the graded monomial basis classes and
        integrate(T_i * T^j) = delta_ij."""
        if self._dual_cache is None:
            t = [self.monomial_class(m) for m in self.basis]
            size = len(t)
            pair = [[self.integrate(t[i] * t[j]) for j in range(size)]
                    for i in range(size)]
            inv = linalg.invert(pair)
            if inv is None:
                raise FanError("Poincare pairing is degenerate; fan data is invalid")
            duals = []
            for j in range(size):
                cls = self.zero()
                for k in range(size):
                    if inv[k][j]:
                        cls = cls + t[k].scale(inv[k][j])
                duals.append(cls)
            self._dual_cache = (t, duals)
        return self._dual_cache


def build_ring(fan: FanData, cm: ChargeMatrix) -> CohomRing:
    return CohomRing(fan, cm)


def multiply(ring: CohomRing, a: CohomClass, b: CohomClass) -> CohomClass:
    return ring.multiply(a, b)


def integrate(ring: CohomRing, a: CohomClass) -> Fraction:
    return ring.integrate(a)


def dual_basis(ring: CohomRing):
    return ring.dual_basis()
