"""Polynomial differential operators in theta_j = hbar q_j d/dq_j.

Operators are kept in normal order, q's to the left of theta's:
D = sum_e q^e P_e(theta, hbar).  The commutator [theta_j, q_k] =
delta_jk hbar q_k gives the composition rule P(theta) q^e =
q^e P(theta + e*hbar), which is all the noncommutativity there is.

Acting on the series F, the term q^e P_e contributes to the coefficient of
q^d the value P_e(omega + (d-e)*hbar, hbar) * R_{d-e}.  Because the series
is truncated at anticanonical degree B, the result is only trustworthy on
the window c1(d) <= B - max_e c1(e); degrees beyond it would need source
coefficients that were cut off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import linalg
from .cohomology import mono_key, monomials
from .ifunction import GiventalSeries, LaurentH, linear_factor


class EmptyWindowError(ValueError):
    """The operator's q-support exceeds the series truncation."""


# -- commutative polynomials in (theta_1..theta_l, hbar) ------------------
# represented as {(theta exponent tuple, hbar exponent): Fraction}

def _poly_add(p1, p2):
    out = dict(p1)
    for k, c in p2.items():
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if c}


def _poly_scale(p, c):
    c = Fraction(c)
    return {k: v * c for k, v in p.items() if v * c}


def _poly_mul(p1, p2):
    out = {}
    for (t1, h1), c1 in p1.items():
        for (t2, h2), c2 in p2.items():
            key = (tuple(a + b for a, b in zip(t1, t2)), h1 + h2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _poly_one(l):
    return {((0,) * l, 0): Fraction(1)}


def _shift_poly(p, e, l):
    """Substitute theta_j -> theta_j + e_j * hbar."""
    if all(x == 0 for x in e):
        return dict(p)
    out = {}
    for (t, h), c in p.items():
        term = {((0,) * l, h): c}
        for j in range(l):
            if t[j] == 0:
                continue
            if e[j] == 0:
                unit = tuple(t[j] if i == j else 0 for i in range(l))
                term = _poly_mul(term, {(unit, 0): Fraction(1)})
                continue
            factor = {}
            for i in range(t[j] + 1):
                unit = tuple(i if jj == j else 0 for jj in range(l))
                factor[(unit, t[j] - i)] = Fraction(comb(t[j], i) * e[j] ** (t[j] - i))
            term = _poly_mul(term, factor)
        out = _poly_add(out, term)
    return out


class DiffOp:
    """Normal-ordered operator sum_e q^e P_e(theta, hbar)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        clean = {}
        for e, poly in terms.items():
            poly = {k: Fraction(c) for k, c in poly.items() if c}
            if poly:
                if any(x < 0 for x in e):
                    raise ValueError("q-exponents must be componentwise nonnegative")
                clean[tuple(e)] = poly
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def identity(cls, nvars):
        return cls(nvars, {(0,) * nvars: _poly_one(nvars)})

    @classmethod
    def theta(cls, nvars, j):
        t = tuple(1 if i == j else 0 for i in range(nvars))
        return cls(nvars, {(0,) * nvars: {(t, 0): Fraction(1)}})

    @classmethod
    def q_power(cls, nvars, e):
        return cls(nvars, {tuple(e): _poly_one(nvars)})

    @classmethod
    def hbar(cls, nvars):
        return cls(nvars, {(0,) * nvars: {((0,) * nvars, 1): Fraction(1)}})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, DiffOp) or other.nvars != self.nvars:
            return NotImplemented
        out = {e: dict(p) for e, p in self.terms.items()}
        for e, p in other.terms.items():
            out[e] = _poly_add(out.get(e, {}), p)
        return DiffOp(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return DiffOp(self.nvars, {e: _poly_scale(p, c) for e, p in self.terms.items()})

    def __mul__(self, other):
        """Composition (self applied after other), or a scalar multiple."""
        if isinstance(other, DiffOp):
            if other.nvars != self.nvars:
                return NotImplemented
            out = {}
            for e1, p1 in self.terms.items():
                for e2, p2 in other.terms.items():
                    shifted = _shift_poly(p1, e2, self.nvars)
                    prod = _poly_mul(shifted, p2)
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] = _poly_add(out.get(key, {}), prod)
            return DiffOp(self.nvars, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, DiffOp) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset((e, frozenset(p.items()))
                              for e, p in self.terms.items()))

    def support_triples(self):
        """Sorted (q-exp, theta-exp, hbar-exp) triples carrying coefficients."""
        triples = []
        for e, poly in self.terms.items():
            for (t, h) in poly:
                triples.append((e, t, h))
        triples.sort(key=lambda x: _ansatz_key(*x))
        return triples

    def coefficient(self, e, t, h) -> Fraction:
        return self.terms.get(tuple(e), {}).get((tuple(t), h), Fraction(0))

    def max_c1(self, cm) -> int:
        """Largest anticanonical degree over the q-support (0 if empty)."""
        return max([cm.c1_degree(e) for e in self.terms] + [0])

    def __repr__(self):
        return "DiffOp(%d, %r)" % (self.nvars, self.terms)


def _ansatz_key(e, t, h):
    return (sum(e), e, sum(t), t, h)


@dataclass(frozen=True, eq=False)
class AppliedSeries:
    """Result of applying an operator to a truncated series.

    Only degrees in the validity window c1(d) <= bound are kept; outside it
    the truncation would silently drop contributions.  coefficients contains
    every window degree where the result could be nonzero (zero values are
    kept so the object can itself be differentiated again).
    """
    ring: object
    cm: object
    bound: int
    degrees: tuple
    coefficients: dict

    def is_zero(self) -> bool:
        return all(self.coefficients[d].is_zero() for d in self.degrees)


def _eval_poly(ring, omegas, poly, dprime):
    """P(omega + dprime*hbar, hbar) as a Laurent polynomial."""
    l = len(dprime)
    factors = [linear_factor(ring, omegas[j], dprime[j]) for j in range(l)]
    total = LaurentH.zero(ring)
    for (t, h), c in poly.items():
        val = LaurentH.unit(ring).scale(c)
        for j in range(l):
            for _ in range(t[j]):
                val = val * factors[j]
        total = total + val.shift(h)
    return total


def apply(op: DiffOp, series) -> AppliedSeries:
    """Apply a normal-ordered operator to a (possibly already applied) series."""
    ring = series.ring
    cm = series.cm
    cap = series.bound - op.max_c1(cm)
    if cap < 0:
        raise EmptyWindowError("operator q-support exceeds the series truncation "
                               "(bound %d)" % series.bound)
    omegas = [ring.omega_class(j) for j in range(cm.l)]
    out_degrees = set(series.degrees)
    for d in series.degrees:
        for e in op.terms:
            out_degrees.add(tuple(a + b for a, b in zip(d, e)))
    valid = sorted((d for d in out_degrees if cm.c1_degree(d) <= cap),
                   key=lambda d: (cm.c1_degree(d), d))
    coeffs = {}
    eval_cache = {}
    for d in valid:
        acc = LaurentH.zero(ring)
        for e, poly in op.terms.items():
            dp = tuple(a - b for a, b in zip(d, e))
            r = series.coefficients.get(dp)
            if r is None:
                continue
            key = (dp, e)
            if key not in eval_cache:
                eval_cache[key] = _eval_poly(ring, omegas, poly, dp)
            acc = acc + eval_cache[key] * r
        coeffs[d] = acc
    return AppliedSeries(ring, cm, cap, tuple(valid), coeffs)


def gkz_operator(cm, degree) -> DiffOp:
    """The box operator of a curve degree.

    With D_k = sum_j m[j][k] theta_j and a_k = <alpha_k, degree>:

        prod_{a_k>0} prod_{nu=0}^{a_k-1} (D_k - nu*hbar)
        - q^degree * prod_{a_k<0} prod_{nu=0}^{-a_k-1} (D_k - nu*hbar).
    """
    l = cm.l
    if any(x < 0 for x in degree):
        raise ValueError("degree has a negative coordinate; the operator would "
                         "not be polynomial in q")
    pos = _poly_one(l)
    neg = _poly_one(l)
    for k in range(cm.n):
        a_k = cm.pairing(degree, k)
        if a_k == 0:
            continue
        d_k = {}
        for j in range(l):
            if cm.m[j][k]:
                t = tuple(1 if i == j else 0 for i in range(l))
                d_k[(t, 0)] = Fraction(cm.m[j][k])
        for nu in range(abs(a_k)):
            factor = dict(d_k)
            if nu:
                factor[((0,) * l, 1)] = Fraction(-nu)
            if a_k > 0:
                pos = _poly_mul(pos, factor)
            else:
                neg = _poly_mul(neg, factor)
    op = DiffOp(l, {(0,) * l: pos})
    return op - DiffOp(l, {tuple(degree): neg})


def find_annihilators(series: GiventalSeries, theta_order: int, q_degree: int,
                      hbar_order: int):
    """All operators within the bounds annihilating the series on its window.

    Ansatz: coefficients over the triples (q-exp e, theta-exp t, hbar-exp h)
    with |e| <= q_degree, |t| <= theta_order, h <= hbar_order.  The exact
    rational nullspace of the evaluation map is computed and returned in
    reduced row echelon form over the ansatz coordinates (graded-lex order on
    the triples), so the output basis is canonical.
    """
    if min(theta_order, q_degree, hbar_order) < 0:
        raise ValueError("ansatz bounds must be nonnegative")
    cm = series.cm
    ring = series.ring
    l = cm.l
    q_exps = [e for tot in range(q_degree + 1) for e in monomials(l, tot)]
    q_exps.sort(key=lambda e: (sum(e), e))
    t_exps = [t for tot in range(theta_order + 1) for t in monomials(l, tot)]
    t_exps.sort(key=lambda t: (sum(t), t))
    columns = [(e, t, h) for e in q_exps for t in t_exps
               for h in range(hbar_order + 1)]
    columns.sort(key=lambda c: _ansatz_key(*c))
    cap = series.bound - max(cm.c1_degree(e) for e in q_exps)
    if cap < 0:
        raise EmptyWindowError("q_degree %d exceeds the series truncation window"
                               % q_degree)
    out_degrees = set()
    for d in series.degrees:
        for e in q_exps:
            dd = tuple(a + b for a, b in zip(d, e))
            if cm.c1_degree(dd) <= cap:
                out_degrees.add(dd)
    valid = sorted(out_degrees, key=lambda d: (cm.c1_degree(d), d))
    omegas = [ring.omega_class(j) for j in range(l)]

    base_cache = {}  # (source degree, theta exponent) -> evaluated Laurent

    def base_value(dp, t):
        key = (dp, t)
        if key not in base_cache:
            poly = {(t, 0): Fraction(1)}
            base_cache[key] = _eval_poly(ring, omegas, poly, dp) * series.coefficients[dp]
        return base_cache[key]

    col_vectors = []
    row_keys = set()
    for (e, t, h) in columns:
        vec = {}
        for d in valid:
            dp = tuple(a - b for a, b in zip(d, e))
            if dp not in series.coefficients:
                continue
            val = base_value(dp, t).shift(h)
            for hh, cls in val.terms.items():
                for mono, c in cls.coeffs.items():
                    key = (d, hh, mono)
                    vec[key] = vec.get(key, Fraction(0)) + c
        vec = {k: v for k, v in vec.items() if v}
        col_vectors.append(vec)
        row_keys.update(vec)
    rows = sorted(row_keys,
                  key=lambda k: (cm.c1_degree(k[0]), k[0], k[1], mono_key(k[2])))
    matrix = [[vec.get(rk, Fraction(0)) for vec in col_vectors] for rk in rows]
    null = linalg.nullspace(matrix, len(columns))
    if not null:
        return []
    reduced, _ = linalg.rref([list(v) for v in null], len(columns))
    ops = []
    for vec in reduced:
        terms = {}
        for (e, t, h), c in zip(columns, vec):
            if c:
                terms.setdefault(e, {})[(t, h)] = c
        ops.append(DiffOp(l, terms))
    return ops


def in_span(ops, candidate: DiffOp) -> bool:
    """Is the candidate a rational combination of the given operators?"""
    keys = set(candidate.support_triples())
    for op in ops:
        keys.update(op.support_triples())
    keys = sorted(keys, key=lambda x: _ansatz_key(*x))
    cols = [[op.coefficient(*k) for k in keys] for op in ops]
    target = [candidate.coefficient(*k) for k in keys]
    return linalg.solve_columns(cols, target) is not None


class QuantumRelation:
    """Semiclassical shadow of an operator: a polynomial in p_1..p_l and q.

    Obtained by theta_j -> p_j and hbar -> 0; stored as
    {(q-exponent, p-exponent): coefficient}.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, QuantumRelation) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def at_q_zero(self):
        """The pure p-polynomial part, as {p-exponent: coefficient}."""
        return {t: c for (e, t), c in self.terms.items() if not any(e)}

    def classical_value(self, ring):
        """Evaluate the q = 0 part with p_j -> omega_j in the classical ring."""
        out = ring.zero()
        for t, c in self.at_q_zero().items():
            cls = ring.one().scale(c)
            for j, tj in enumerate(t):
                for _ in range(tj):
                    cls = cls * ring.omega_class(j)
            out = out + cls
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0],
                                                          sum(kv[0][1]), kv[0][1]))

    def __repr__(self):
        return "QuantumRelation(%d, %r)" % (self.nvars, self.terms)


def semiclassical(op: DiffOp) -> QuantumRelation:
    """Leading symbol at hbar -> 0, theta_j -> p_j."""
    rel = {}
    for e, poly in op.terms.items():
        for (t, h), c in poly.items():
            if h == 0:
                rel[(e, t)] = rel.get((e, t), Fraction(0)) + c
    return QuantumRelation(op.nvars, rel)
