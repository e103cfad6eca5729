"""Construction of the polynomial families attached to a rational normal scroll.

A scroll profile is a tuple of block degrees (n_1, ..., n_d).  The scroll
lives in projective space of dimension N = sum(n_i) + d - 1 and is cut out by
the 2 x 2 minors of a 2 x sum(n_i) matrix whose block i has columns
(x[i][j], x[i][j+1]) for j = 0, ..., n_i - 1.

This module builds, over the integers:

* the minors themselves (generators of the scroll's prime ideal);
* the per-block curve equations that cut out each rational normal curve
  set-theoretically, n_i - 1 per block;
* the bridge polynomials coupling two blocks of degrees a and b: with
  m = lcm(a, b) = a*p = b*q, the bridge is the signed sum over alpha of
  C(m, alpha) times the alpha-th monomial of the descending degree-p list in
  the first block times the alpha-th monomial of the ascending degree-q list
  in the second block;
* the weight groups: the bridge on blocks (i, j) has weight i + j, and the
  bridges of one weight are combined into a single generator by raising each
  to the lcm-balancing power and summing;
* the assembled defining system: all curve equations followed by all weight
  generators, N - 2 polynomials in total (for d >= 2).

Everything here is a pure function of the profile, so independent generators
can be built in parallel with no shared mutable state.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .polyring import (
    NS_SCROLL,
    ZZ,
    Monomial,
    Polynomial,
    VarId,
    binomial,
    x_var,
)

# Weight-group degrees above this trigger a coefficient blow-up warning:
# raising a bridge to power c multiplies coefficient sizes like C(m, .)^c.
DEFAULT_DEGREE_WARN = 64


@dataclass(frozen=True)
class ScrollProfile:
    """Block degrees (n_1, ..., n_d) plus the derived ambient dimension."""

    n: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def N(self) -> int:
        return sum(self.n) + self.d - 1

    @property
    def num_vars(self) -> int:
        return self.N + 1

    def variables(self) -> tuple[VarId, ...]:
        """All scroll variables in canonical (block-major) order."""
        return tuple(
            x_var(i, j) for i, ni in enumerate(self.n, start=1) for j in range(ni + 1)
        )

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.n)) + ")"


def build_profile(n) -> ScrollProfile:
    """Validate block degrees and derive the ambient dimension."""
    ns = tuple(int(v) for v in n)
    if not ns:
        raise ValueError("a scroll profile needs at least one block")
    if any(v < 1 for v in ns):
        raise ValueError(f"block degrees must be positive, got {ns}")
    return ScrollProfile(ns)


# ---------------------------------------------------------------------------
# Catalecticant matrix and its minors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalecticantMatrix:
    """2 x sum(n_i) matrix of variables; row 2 is row 1 shifted by one slot."""

    profile: ScrollProfile
    rows: tuple[tuple[VarId, ...], tuple[VarId, ...]]

    @property
    def num_cols(self) -> int:
        return len(self.rows[0])


def catalecticant(profile: ScrollProfile) -> CatalecticantMatrix:
    top = []
    bottom = []
    for i, ni in enumerate(profile.n, start=1):
        for j in range(ni):
            top.append(x_var(i, j))
            bottom.append(x_var(i, j + 1))
    return CatalecticantMatrix(profile, (tuple(top), tuple(bottom)))


def minors_2x2(matrix: CatalecticantMatrix, dedup: bool = False) -> list[Polynomial]:
    """All 2 x 2 minors, columns c1 < c2, top-left*bottom-right - bottom-left*top-right.

    ``dedup`` drops syntactically repeated minors; with distinct variable
    entries per column pair the list is already duplicate-free, so the flag
    is a safety valve only.
    """
    top, bottom = matrix.rows
    out: list[Polynomial] = []
    seen = set()
    k = matrix.num_cols
    for c1 in range(k):
        for c2 in range(c1 + 1, k):
            # Adjacent columns of one block share a variable, so exponents
            # must accumulate rather than collapse as duplicate dict keys.
            minor = Polynomial(
                ZZ,
                {
                    Monomial(_accumulate([(top[c1], 1), (bottom[c2], 1)])): 1,
                    Monomial(_accumulate([(bottom[c1], 1), (top[c2], 1)])): -1,
                },
            )
            if dedup:
                key = frozenset(minor.terms.items())
                if key in seen:
                    continue
                seen.add(key)
            out.append(minor)
    return out


def minor_labels(matrix: CatalecticantMatrix) -> list[str]:
    k = matrix.num_cols
    return [f"minor[{c1}][{c2}]" for c1 in range(k) for c2 in range(c1 + 1, k)]


# ---------------------------------------------------------------------------
# Curve equations
# ---------------------------------------------------------------------------


def curve_equation(n: int, i: int, block: int = 1) -> Polynomial:
    """The i-th curve equation of a degree-n rational normal curve block.

    The polynomial is homogeneous of degree i + 1 in x[block][0..i+1]:
    the signed binomial sum over alpha of C(i, alpha) *
    x[i+1]^(i-alpha) * x[alpha] * x[i]^alpha.  Valid for 1 <= i <= n - 1.
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"curve equation index {i} out of range for block degree {n}")
    terms: dict[Monomial, int] = {}
    for alpha in range(i + 1):
        mono = Monomial(
            _accumulate(
                [
                    (x_var(block, i + 1), i - alpha),
                    (x_var(block, alpha), 1),
                    (x_var(block, i), alpha),
                ]
            )
        )
        terms[mono] = (-1) ** alpha * binomial(i, alpha)
    return Polynomial(ZZ, terms)


def _accumulate(pairs) -> dict[VarId, int]:
    acc: dict[VarId, int] = {}
    for v, e in pairs:
        if e:
            acc[v] = acc.get(v, 0) + e
    return acc


# ---------------------------------------------------------------------------
# Bridges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeMeta:
    """Arithmetic data of a bridge: m = lcm(a, b) = a*p = b*q; degree p + q."""

    a: int
    b: int
    m: int
    p: int
    q: int

    @property
    def degree(self) -> int:
        return self.p + self.q


def bridge_meta(a: int, b: int) -> BridgeMeta:
    if a < 1 or b < 1:
        raise ValueError(f"bridge block degrees must be positive, got ({a}, {b})")
    m = math.lcm(a, b)
    return BridgeMeta(a, b, m, m // a, m // b)


def bridge(
    a: int, b: int, x_block: int = 1, y_block: int = 2
) -> tuple[BridgeMeta, Polynomial]:
    """The bridge polynomial coupling a degree-a block and a degree-b block.

    Term alpha (0 <= alpha <= m) is (-1)^alpha * C(m, alpha) *
    x[a-c]^(p-r) * x[a-c-1]^r * y[e]^(q-f) * y[e+1]^f with
    (c, r) = divmod(alpha, p) and (e, f) = divmod(alpha, q); zero-exponent
    factors are skipped, which silently handles the out-of-range slots at
    alpha = m.  The result is homogeneous of degree p + q, with first-block
    degree exactly p and second-block degree exactly q in every term.
    """
    meta = bridge_meta(a, b)
    if x_block == y_block:
        raise ValueError("a bridge couples two distinct blocks")
    p, q, m = meta.p, meta.q, meta.m
    terms: dict[Monomial, int] = {}
    for alpha in range(m + 1):
        c, r = divmod(alpha, p)
        e, f = divmod(alpha, q)
        mono = Monomial(
            _accumulate(
                [
                    (x_var(x_block, a - c), p - r),
                    (x_var(x_block, a - c - 1) if r else x_var(x_block, 0), r),
                    (x_var(y_block, e), q - f),
                    (x_var(y_block, e + 1) if f else x_var(y_block, 0), f),
                ]
            )
        )
        terms[mono] = (-1) ** alpha * binomial(m, alpha)
    return meta, Polynomial(ZZ, terms)


def bridge_via_lists(a: int, b: int, x_block: int = 1, y_block: int = 2) -> Polynomial:
    """Alternative bridge construction through the two explicit monomial lists.

    The first-block list runs through all degree-p monomials in consecutive
    variable pairs in descending slot order; the second-block list runs
    through the degree-q monomials in ascending order.  Both have m + 1
    entries; entry alpha of each are multiplied and weighted by
    (-1)^alpha * C(m, alpha).  Must agree with ``bridge`` term for term.
    """
    meta = bridge_meta(a, b)
    if x_block == y_block:
        raise ValueError("a bridge couples two distinct blocks")
    p, q, m = meta.p, meta.q, meta.m

    xs: list[dict[VarId, int]] = []
    for v in range(a, 0, -1):
        for r in range(p):
            xs.append(_accumulate([(x_var(x_block, v), p - r), (x_var(x_block, v - 1), r)]))
    xs.append({x_var(x_block, 0): p})

    ys: list[dict[VarId, int]] = []
    for h in range(b):
        for f in range(q):
            ys.append(_accumulate([(x_var(y_block, h), q - f), (x_var(y_block, h + 1), f)]))
    ys.append({x_var(y_block, b): q})

    assert len(xs) == m + 1 and len(ys) == m + 1
    terms: dict[Monomial, int] = {}
    for alpha, (mx, my) in enumerate(zip(xs, ys)):
        terms[Monomial({**mx, **my})] = (-1) ** alpha * binomial(m, alpha)
    return Polynomial(ZZ, terms)


def block_degree(mono: Monomial, block: int) -> int:
    """Total exponent a monomial carries on one block's variables."""
    return sum(e for v, e in mono.exps if v.ns == NS_SCROLL and v.block == block)


# ---------------------------------------------------------------------------
# Weight groups and the assembled system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightGroup:
    """Bridges of one weight k = i + j, with the lcm-balancing powers.

    ``degree`` is the lcm of the member bridge degrees; member (i, j) is
    raised to ``powers[idx] = degree // bridge_degree`` so that all summands
    are homogeneous of the same degree.
    """

    k: int
    pairs: tuple[tuple[int, int], ...]
    metas: tuple[BridgeMeta, ...]
    degree: int
    powers: tuple[int, ...]


def weight_groups(profile: ScrollProfile) -> list[WeightGroup]:
    """Weight groups for k = 3, ..., 2d - 1; empty for a single block."""
    d = profile.d
    groups = []
    for k in range(3, 2 * d):
        pairs = []
        for i in range(max(1, k - d), (k - 1) // 2 + 1):
            j = k - i
            if i < j <= d:
                pairs.append((i, j))
        metas = tuple(bridge_meta(profile.n[i - 1], profile.n[j - 1]) for i, j in pairs)
        degree = math.lcm(*(meta.degree for meta in metas))
        powers = tuple(degree // meta.degree for meta in metas)
        groups.append(WeightGroup(k, tuple(pairs), metas, degree, powers))
    return groups


def g_polynomial(
    profile: ScrollProfile,
    group: WeightGroup,
    warn_degree: int = DEFAULT_DEGREE_WARN,
) -> Polynomial:
    """Sum of the group's bridges, each raised to its balancing power."""
    if group.degree > warn_degree:
        warnings.warn(
            f"weight-{group.k} generator has degree {group.degree}; "
            "expect large exact coefficients",
            stacklevel=2,
        )
    acc = Polynomial.zero(ZZ)
    for (i, j), power in zip(group.pairs, group.powers):
        _, br = bridge(profile.n[i - 1], profile.n[j - 1], i, j)
        acc = acc + br**power
    return acc


@dataclass(frozen=True)
class EquationSet:
    """The assembled defining system plus the minors it is measured against.

    ``curve_gens`` holds (block, index, polynomial); ``weight_gens`` holds
    (weight, polynomial).  The system is curve generators in block-then-index
    order followed by weight generators in weight order; for d >= 2 it has
    exactly N - 2 members.
    """

    profile: ScrollProfile
    curve_gens: tuple[tuple[int, int, Polynomial], ...]
    weight_gens: tuple[tuple[int, Polynomial], ...]
    minor_gens: tuple[Polynomial, ...]

    @property
    def system_size(self) -> int:
        return len(self.curve_gens) + len(self.weight_gens)

    @property
    def claimed_arithmetic_rank(self) -> int:
        """N - 2 for d >= 2; the curve case needs n - 1 equations."""
        if self.profile.d >= 2:
            return self.profile.N - 2
        return self.profile.n[0] - 1

    def system(self) -> list[tuple[str, Polynomial]]:
        """Labeled defining system, in canonical order."""
        out = [(f"curve[{i}][{j}]", p) for i, j, p in self.curve_gens]
        out.extend((f"weight[{k}]", p) for k, p in self.weight_gens)
        return out

    def system_polys(self) -> list[Polynomial]:
        return [p for _, p in self.system()]

    def labeled_minors(self) -> list[tuple[str, Polynomial]]:
        labels = minor_labels(catalecticant(self.profile))
        return list(zip(labels, self.minor_gens))


def equation_set(
    profile: ScrollProfile,
    dedup_minors: bool = False,
    warn_degree: int = DEFAULT_DEGREE_WARN,
) -> EquationSet:
    """Build the full defining system for a profile.

    For d >= 2 this emits sum(n_i) - d curve equations and 2d - 3 weight
    generators, N - 2 in total.  A single-block profile degenerates to the
    rational normal curve: only its n - 1 curve equations are emitted.
    """
    curves = []
    for i, ni in enumerate(profile.n, start=1):
        for j in range(1, ni):
            curves.append((i, j, curve_equation(ni, j, block=i)))
    weights = [
        (g.k, g_polynomial(profile, g, warn_degree=warn_degree))
        for g in weight_groups(profile)
    ]
    minors = minors_2x2(catalecticant(profile), dedup=dedup_minors)
    return EquationSet(profile, tuple(curves), tuple(weights), tuple(minors))


def generator_count(profile: ScrollProfile) -> int:
    """Size of the defining system, from the group structure alone.

    Counts curve indices and materialized weight groups without expanding
    any polynomial, so it stays cheap even when the balancing powers are
    huge.  Agrees with ``equation_set(...).system_size``.
    """
    curve_count = sum(ni - 1 for ni in profile.n)
    return curve_count + len(weight_groups(profile))
