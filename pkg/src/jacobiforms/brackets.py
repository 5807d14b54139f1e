"""Rankin-Cohen bracket families and the deformation engine.

A family pairs an admissible derivation D with a rational index weight c.
Its n-th bracket on homogeneous pieces of bidegrees (k, p) and (l, q) is

    sum_r (-1)^r binom(k+cp+n-1, n-r) binom(l+cq+n-1, r) D^r(f) D^{n-r}(g)

extended bilinearly over homogeneous components.  Binomials use the falling
factorial so rational and negative tops (c is a free parameter; A has weight
-2) need no special casing.  The same sequence is also computable in the
Connes-Moscovici Pochhammer form, kept as an independent route for
cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .elements import (
    BigradedElement,
    InternalInvariantError,
    ZERO,
    membership,
)
from .derivations import (
    Derivation,
    EulerWeighting,
    d_alpha,
    delta_beta,
    iterate,
    partial_u,
    pochhammer_apply,
    serre_ab,
)


@lru_cache(maxsize=1 << 14)
def gbinom(x, m: int) -> Fraction:
    """Generalized binomial x*(x-1)*...*(x-m+1)/m! with rational top."""
    if m < 0:
        raise ValueError("lower index must be nonnegative")
    x = Fraction(x)
    num = Fraction(1)
    for i in range(m):
        num *= x - i
    return num / factorial(m)


@dataclass(frozen=True)
class BracketFamily:
    """An admissible derivation together with the index weight c of
    kappa(k, p) = k + c*p."""

    derivation: Derivation
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if not self.derivation.is_admissible():
            raise ValueError("bracket families require an admissible derivation")

    def bracket(self, n: int, f: BigradedElement, g: BigradedElement) -> BigradedElement:
        return bracket_n(self, n, f, g)


def _bracket_homog(d: Derivation, c: Fraction, n: int, f, k, p, g, l, q) -> BigradedElement:
    top_f = k + c * p + n - 1
    top_g = l + c * q + n - 1
    total = ZERO
    for r in range(n + 1):
        coeff = gbinom(top_f, n - r) * gbinom(top_g, r)
        if r & 1:
            coeff = -coeff
        if coeff:
            total = total + coeff * (iterate(d, r, f) * iterate(d, n - r, g))
    return total


def bracket_n(family: BracketFamily, n: int, f: BigradedElement, g: BigradedElement) -> BigradedElement:
    """n-th bracket of the family, bilinear over homogeneous components."""
    if n < 0:
        raise ValueError("bracket order must be nonnegative")
    d, c = family.derivation, family.c
    total = ZERO
    for (k, p), fc in f.homogeneous_components().items():
        for (l, q), gc in g.homogeneous_components().items():
            total = total + _bracket_homog(d, c, n, fc, k, p, gc, l, q)
    return total


def cm_bracket(v: Derivation, mu, n: int, f: BigradedElement, g: BigradedElement) -> BigradedElement:
    """Pochhammer-form bracket built from v and the mu-weighting.

    Independent of bracket_n: iterated shifted weightings are applied as
    operators, so agreement of the two routes is a real consistency check.
    """
    if n < 0:
        raise ValueError("bracket order must be nonnegative")
    w = EulerWeighting(Fraction(mu))
    total = ZERO
    for _, fc in f.homogeneous_components().items():
        for _, gc in g.homogeneous_components().items():
            acc = ZERO
            for r in range(n + 1):
                left = iterate(v, r, pochhammer_apply(w, n - r, fc, shift=r))
                right = iterate(v, n - r, pochhammer_apply(w, r, gc, shift=n - r))
                coeff = Fraction((-1) ** r, factorial(r) * factorial(n - r))
                acc = acc + coeff * (left * right)
            total = total + acc
    return total


def star_truncated(family: BracketFamily, order: int, f: BigradedElement, g: BigradedElement) -> list[BigradedElement]:
    """Coefficients of hbar^0..hbar^order of the star product f * g."""
    return [bracket_n(family, j, f, g) for j in range(order + 1)]


def rc_classical(n: int, f: BigradedElement, g: BigradedElement) -> BigradedElement:
    """Classical n-th Rankin-Cohen bracket of two modular elements.

    Derivatives are taken with the q-derivative transported into the
    index-zero subalgebra; the combination is guaranteed to land back in
    C[E4, E6], and a result outside it is an implementation bug.
    """
    if not membership(f, "M") or not membership(g, "M"):
        raise ValueError("classical brackets are defined on modular elements")
    d = partial_u(0)
    total = ZERO
    for (k, _), fc in f.homogeneous_components().items():
        for (l, _), gc in g.homogeneous_components().items():
            for i in range(n + 1):
                coeff = gbinom(Fraction(k + n - 1), n - i) * gbinom(Fraction(l + n - 1), i)
                if i & 1:
                    coeff = -coeff
                if coeff:
                    total = total + coeff * (iterate(d, i, fc) * iterate(d, n - i, gc))
    if not membership(total, "M"):
        raise InternalInvariantError(
            f"classical bracket escaped the modular subalgebra: {total}"
        )
    return total


# ------------------------------------------------------------ named families


def accol(a, b, c) -> BracketFamily:
    """Family of the two-parameter Serre extension on weak Jacobi forms."""
    return BracketFamily(serre_ab(a, b), Fraction(c))


def orc(mu) -> BracketFamily:
    """Oberdieck family: the (-1/6, -1/3) Serre extension with weight mu."""
    return accol(Fraction(-1, 6), Fraction(-1, 3), mu)


def src() -> BracketFamily:
    """Serre-Rankin-Cohen brackets on modular elements.

    On index-zero inputs the bracket does not depend on (a, b, c), so the
    zero parameters are a canonical choice.
    """
    return accol(0, 0, 0)


def crochet(alpha, c) -> BracketFamily:
    """Localized family built on d_alpha = sharp + alpha*pi."""
    return BracketFamily(d_alpha(alpha), Fraction(c))


def scal(beta, c) -> BracketFamily:
    """Localized family built on delta_beta = flat + beta*pi."""
    return BracketFamily(delta_beta(beta), Fraction(c))


def rc_localized(u, v) -> BracketFamily:
    """Extension of the classical Rankin-Cohen brackets to the localized
    algebra, built on the transported q-derivative."""
    return BracketFamily(partial_u(u), Fraction(v))


def mu1(family: BracketFamily):
    """First bracket of the family as a bilinear callable."""
    return lambda f, g: bracket_n(family, 1, f, g)


def clear_caches() -> None:
    gbinom.cache_clear()
