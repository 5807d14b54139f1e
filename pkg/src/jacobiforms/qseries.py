"""Exact truncated Fourier expansions for the weak Jacobi generators.

Series live in q up to a fixed order N; each q-coefficient is a Laurent
polynomial in w, where w^2 = xi is the elliptic variable (half-integer
xi powers hide in the theta factors, so w keeps everything polynomial).

Most series are Exact: every stored coefficient is the true one and the
support is genuinely finite.  The elliptic-zeta series J1 is the one
exception: its q^0 coefficient xi/(xi-1) has an infinite geometric tail,
expanded here in the xi^{-1} direction and truncated.  Such a series
carries a window G guaranteeing that stored w^r coefficients are exact
for |r| <= G; products against finite series shrink the window by the
finite factor's width, additions keep the smaller window, and equality
or membership claims are only made inside the guaranteed window.

The index-one generators are built rather than tabulated: A as a signed
quotient of reduced theta and eta-cube series (the q^{1/8} prefactors
cancel in the square, keeping integer q powers), and B from A through the
Fourier-side derivation, with both checked against their known leading
coefficients before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .elements import (
    BigradedElement,
    InternalInvariantError,
    membership,
)


class WindowError(ValueError):
    """A product or comparison needs more guaranteed window than available."""


# ------------------------------------------------------- Laurent coefficients


class LaurentPolyW:
    """Finite Laurent polynomial in w with exact rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self._coeffs = {}
        if coeffs:
            for r, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self._coeffs[int(r)] = c

    @classmethod
    def _raw(cls, coeffs: dict) -> "LaurentPolyW":
        poly = cls.__new__(cls)
        poly._coeffs = {r: c for r, c in coeffs.items() if c}
        return poly

    def items(self):
        return self._coeffs.items()

    def coefficient(self, r: int) -> Fraction:
        return self._coeffs.get(r, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def width(self) -> int:
        """Largest |w exponent| in the support (0 for the zero polynomial)."""
        return max((abs(r) for r in self._coeffs), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPolyW({0: other})
        if not isinstance(other, LaurentPolyW):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolyW({0: other})
        out = dict(self._coeffs)
        for r, c in other._coeffs.items():
            out[r] = out.get(r, Fraction(0)) + c
        return LaurentPolyW._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolyW._raw({r: -c for r, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolyW({0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return LaurentPolyW()
            return LaurentPolyW._raw({r: v * c for r, v in self._coeffs.items()})
        out: dict = {}
        get = out.get
        for r1, c1 in self._coeffs.items():
            for r2, c2 in other._coeffs.items():
                r = r1 + r2
                out[r] = get(r, Fraction(0)) + c1 * c2
        return LaurentPolyW._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPolyW({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mirror(self) -> "LaurentPolyW":
        """Substitute w -> w^{-1}."""
        return LaurentPolyW._raw({-r: c for r, c in self._coeffs.items()})

    def truncated(self, bound: int) -> "LaurentPolyW":
        return LaurentPolyW._raw({r: c for r, c in self._coeffs.items() if abs(r) <= bound})

    def __repr__(self):
        return f"<wpoly {format_wpoly(self)}>"


W_ZERO = LaurentPolyW()
W_ONE = LaurentPolyW({0: 1})


def format_wpoly(poly: LaurentPolyW) -> str:
    if poly.is_zero:
        return "0"
    chunks = []
    for r in sorted(poly._coeffs, reverse=True):
        c = poly._coeffs[r]
        if r == 0:
            body = str(abs(c))
        else:
            body = f"w^{r}" if abs(c) == 1 else f"{abs(c)}*w^{r}"
        if not chunks:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(chunks)


# ---------------------------------------------------------------- the series


class QSeries:
    """Truncated q-series with LaurentPolyW coefficients.

    window is None for Exact series; an integer G means stored w^r
    coefficients are guaranteed exact for |r| <= G (the constructors store
    tails well past the window so that one product against a finite factor
    stays sound after the G - width shrink).
    """

    __slots__ = ("coeffs", "window")

    def __init__(self, coeffs, window: int | None = None):
        self.coeffs = tuple(c if isinstance(c, LaurentPolyW) else LaurentPolyW(c) for c in coeffs)
        self.window = window

    @property
    def q_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return self.window is None

    def coefficient(self, n: int) -> LaurentPolyW:
        return self.coeffs[n]

    def w_width(self) -> int:
        return max((c.width() for c in self.coeffs), default=0)

    def truncated_q(self, order: int) -> "QSeries":
        return QSeries(self.coeffs[: order + 1], self.window)

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.window)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant_series(other, self.q_order)
        order = min(self.q_order, other.q_order)
        window = _min_window(self.window, other.window)
        return QSeries(
            [self.coeffs[n] + other.coeffs[n] for n in range(order + 1)], window
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant_series(other, self.q_order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return QSeries([p * c for p in self.coeffs], self.window if c else None)
        if not isinstance(other, QSeries):
            return NotImplemented
        window = _product_window(self, other)
        order = min(self.q_order, other.q_order)
        out = [W_ZERO] * (order + 1)
        for n1, c1 in enumerate(self.coeffs[: order + 1]):
            if c1.is_zero:
                continue
            for n2 in range(order + 1 - n1):
                c2 = other.coeffs[n2]
                if c2.is_zero:
                    continue
                out[n1 + n2] = out[n1 + n2] + c1 * c2
        return QSeries(out, window)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative series powers are not supported")
        result = constant_series(1, self.q_order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def dtau(self) -> "QSeries":
        """q d/dq: multiply the q^n coefficient by n."""
        return QSeries([c * n for n, c in enumerate(self.coeffs)], self.window)

    def dz(self) -> "QSeries":
        """Elliptic derivative: the w^r term picks up the factor r/2."""
        out = []
        for c in self.coeffs:
            out.append(LaurentPolyW._raw({r: v * Fraction(r, 2) for r, v in c.items()}))
        return QSeries(out, self.window)

    def as_exact(self) -> "QSeries":
        """Drop everything outside the window and promote to Exact.

        Only sound when the true series is known to be supported inside
        the window; callers are expected to golden-check the result.
        """
        if self.window is None:
            return self
        bound = self.window
        return QSeries([c.truncated(bound) for c in self.coeffs], None)

    def agrees_with(self, other: "QSeries", q_through: int | None = None) -> bool:
        """Coefficientwise equality inside the common guaranteed window."""
        order = min(self.q_order, other.q_order)
        if q_through is not None:
            if q_through > order:
                raise WindowError(f"series only reach q^{order}, need q^{q_through}")
            order = q_through
        window = _min_window(self.window, other.window)
        for n in range(order + 1):
            left, right = self.coeffs[n], other.coeffs[n]
            if window is None:
                if left != right:
                    return False
            else:
                for r in range(-window, window + 1):
                    if left.coefficient(r) != right.coefficient(r):
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.window == other.window
            and self.q_order == other.q_order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.window, self.coeffs))

    def __repr__(self):
        kind = "exact" if self.is_exact else f"window={self.window}"
        return f"<qseries through q^{self.q_order}, {kind}>"


def _min_window(w1, w2):
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    return min(w1, w2)


def _product_window(left: QSeries, right: QSeries):
    if left.window is None and right.window is None:
        return None
    if left.window is not None and right.window is not None:
        raise WindowError("cannot multiply two windowed series")
    windowed, finite = (left, right) if left.window is not None else (right, left)
    if all(c.is_zero for c in finite.coeffs):
        return None  # exact zero factor
    window = windowed.window - finite.w_width()
    if window < 0:
        raise WindowError(
            f"window {windowed.window} too small for a factor of width {finite.w_width()}"
        )
    return window


def constant_series(value, q_order: int) -> QSeries:
    coeffs = [LaurentPolyW({0: value})] + [W_ZERO] * q_order
    return QSeries(coeffs)


def zero_series(q_order: int) -> QSeries:
    return QSeries([W_ZERO] * (q_order + 1))


# ----------------------------------------------------------- number helpers


@lru_cache(maxsize=512)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (B_1 = -1/2 convention)."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    values = [Fraction(1)]
    for m in range(1, k + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * values[j]
        values.append(-acc / (m + 1))
    return values[k]


def sigma(u: int, n: int) -> int:
    """Divisor power sum sigma_u(n) for positive n."""
    if n <= 0:
        raise ValueError("divisor sums need a positive argument")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d ** u
            other = n // d
            if other != d:
                total += other ** u
    return total


def eisenstein(k: int, q_order: int) -> QSeries:
    """Weight-k Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein weight must be an even integer >= 2")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = [LaurentPolyW({0: 1})]
    for n in range(1, q_order + 1):
        coeffs.append(LaurentPolyW({0: factor * sigma(k - 1, n)}))
    return QSeries(coeffs)


# ----------------------------------------------------- index-one generators


def _theta_reduced(q_order: int) -> QSeries:
    """sum_{n>=0} (-1)^n q^{n(n+1)/2} (w^{2n+1} - w^{-(2n+1)})."""
    coeffs = [dict() for _ in range(q_order + 1)]
    n = 0
    while n * (n + 1) // 2 <= q_order:
        sign = -1 if n % 2 else 1
        exp = 2 * n + 1
        coeffs[n * (n + 1) // 2][exp] = Fraction(sign)
        coeffs[n * (n + 1) // 2][-exp] = Fraction(-sign)
        n += 1
    return QSeries([LaurentPolyW(c) for c in coeffs])


def _eta_cubed_reduced(q_order: int) -> QSeries:
    """sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}, the eta-cube without q^{1/8}."""
    coeffs = [Fraction(0)] * (q_order + 1)
    n = 0
    while n * (n + 1) // 2 <= q_order:
        coeffs[n * (n + 1) // 2] += (-1) ** n * (2 * n + 1)
        n += 1
    return QSeries([LaurentPolyW({0: c}) for c in coeffs])


def _inverted_unit(series: QSeries) -> QSeries:
    """Inverse of an exact q-series whose constant term is the scalar 1 or -1."""
    lead = series.coeffs[0]
    if lead not in (W_ONE, -W_ONE):
        raise ValueError("series inversion requires a constant leading term of 1 or -1")
    sign = lead.coefficient(0)
    out = [W_ONE * sign]
    for n in range(1, series.q_order + 1):
        acc = W_ZERO
        for k in range(1, n + 1):
            if k <= series.q_order and not series.coeffs[k].is_zero:
                acc = acc + series.coeffs[k] * out[n - k]
        out.append(acc * (-sign))
    return QSeries(out)


def _wpoly_xi(*pairs) -> LaurentPolyW:
    """Laurent polynomial from (xi-exponent, coefficient) pairs."""
    return LaurentPolyW({2 * r: c for r, c in pairs})


_A_Q0 = _wpoly_xi((1, 1), (0, -2), (-1, 1))
_A_Q1 = _wpoly_xi((1, 1), (0, -2), (-1, 1)) ** 2 * Fraction(-2)
_A_Q2 = _wpoly_xi((1, 1), (0, -2), (-1, 1)) ** 2 * _wpoly_xi((1, 1), (0, -8), (-1, 1))

_B_Q0 = _wpoly_xi((1, 1), (0, 10), (-1, 1))
_B_Q1 = _wpoly_xi((1, 1), (0, -2), (-1, 1)) * _wpoly_xi((1, 5), (0, -22), (-1, 5)) * 2
_B_Q2 = _wpoly_xi((1, 1), (0, -2), (-1, 1)) * _wpoly_xi((2, 1), (1, 110), (0, -294), (-1, 110), (-2, 1))


def theta_quotient_A(q_order: int) -> QSeries:
    """The weight -2, index 1 generator as a signed theta/eta-cube quotient.

    The sign is fixed by the q^0 coefficient (w - w^{-1})^2, and the q^1,
    q^2 coefficients are asserted against their known values: a mismatch
    means the construction is wrong.
    """
    theta = _theta_reduced(q_order)
    eta_inv = _inverted_unit(_eta_cubed_reduced(q_order))
    quotient = theta * theta * eta_inv * eta_inv
    if quotient.coeffs[0] == _A_Q0:
        series = quotient
    elif quotient.coeffs[0] == -_A_Q0:
        series = -quotient
    else:
        raise InternalInvariantError("theta quotient has the wrong q^0 coefficient")
    for n, expected in ((1, _A_Q1), (2, _A_Q2)):
        if n <= q_order and series.coeffs[n] != expected:
            raise InternalInvariantError(f"theta quotient mismatch at q^{n}")
    return series


def j1_series(q_order: int, window: int) -> QSeries:
    """Windowed expansion of the odd elliptic-zeta combination.

    q^0 is -1/2 + xi/(xi-1) expanded in the xi^{-1} direction and truncated
    at xi^{-window} (twice the window in w exponents, deep enough to keep
    one finite product sound); the q^n coefficient for n >= 1 is
    -(sum_{d|n} (xi^d - xi^{-d})).
    """
    if window < 1:
        raise ValueError("window must be positive")
    head = {0: Fraction(1, 2)}
    for d in range(1, window + 1):
        head[-2 * d] = Fraction(1)
    coeffs = [LaurentPolyW(head)]
    for n in range(1, q_order + 1):
        poly: dict = {}
        for d in range(1, n + 1):
            if n % d == 0:
                poly[2 * d] = poly.get(2 * d, Fraction(0)) - 1
                poly[-2 * d] = poly.get(-2 * d, Fraction(0)) + 1
        coeffs.append(LaurentPolyW(poly))
    return QSeries(coeffs, window=window)


def j2_series(q_order: int) -> QSeries:
    """Exact expansion of the even elliptic companion: 1/6 minus
    2 sum_n sum_{d|n} (n/d)(xi^d + xi^{-d}) q^n.

    The even xi-combination is the one compatible with dz(J2) = 2 dtau(J1)
    and with the evenness of the series in z; it is cross-checked against
    the reference expansion of the weight-0 generator through b_series.
    """
    coeffs = [LaurentPolyW({0: Fraction(1, 6)})]
    for n in range(1, q_order + 1):
        poly: dict = {}
        for d in range(1, n + 1):
            if n % d == 0:
                poly[2 * d] = poly.get(2 * d, Fraction(0)) - 2 * Fraction(n, d)
                poly[-2 * d] = poly.get(-2 * d, Fraction(0)) - 2 * Fraction(n, d)
        coeffs.append(LaurentPolyW(poly))
    return QSeries(coeffs)


# -------------------------------------------------------------- the bundle


@dataclass(frozen=True)
class JacobiSeriesBundle:
    """All generator expansions at a common truncation (N, G).

    j1_direction records the side chosen for the geometric expansion of
    the q^0 tail of J1.
    """

    q_order: int
    window: int
    e2: QSeries
    e4: QSeries
    e6: QSeries
    a: QSeries
    b: QSeries
    j1: QSeries
    j2: QSeries
    j1_direction: str = "xi-inverse"

    def generator_series(self) -> dict[str, QSeries]:
        return {"E4": self.e4, "E6": self.e6, "A": self.a, "B": self.b}


def oberdieck_series(f: QSeries, k, p, bundle: JacobiSeriesBundle) -> QSeries:
    """Fourier-side weight-raising operator:
    dtau(f) - (k/12) f E2 - J1 dz(f) + p J2 f."""
    k = Fraction(k)
    p = Fraction(p)
    total = f.dtau()
    total = total - Fraction(k, 12) * (f * bundle.e2)
    dzf = f.dz()
    total = total - bundle.j1 * dzf
    if p:
        total = total + p * (bundle.j2 * f)
    return total


def b_series(q_order: int, window: int, *, _partial=None) -> QSeries:
    """The weight 0, index 1 generator, built as -6 times the Fourier-side
    operator applied to the index-one weight -2 generator.

    The only inexact ingredient is the truncated geometric tail of J1,
    confined to w-exponents below -2*window, so the combination is exact
    for w-exponents >= -2*window + width.  That must cover the support
    bound 2*sqrt(4N+1) of an index-one form; the result is checked to
    vanish on the rest of the exact region, truncated to the bound,
    promoted to Exact, and asserted against the known q^0..q^2
    coefficients.  A mismatch invalidates the evenness resolution of the
    even elliptic companion and raises instead of patching.
    """
    if _partial is None:
        a = theta_quotient_A(q_order)
        bundle = JacobiSeriesBundle(
            q_order,
            window,
            eisenstein(2, q_order),
            eisenstein(4, q_order),
            eisenstein(6, q_order),
            a,
            zero_series(q_order),
            j1_series(q_order, window),
            j2_series(q_order),
        )
    else:
        bundle = _partial
        a = bundle.a
    series = (-6) * oberdieck_series(a, -2, 1, bundle)
    sound_floor = -2 * window + a.w_width()
    bound = 2 * isqrt(4 * q_order + 1)
    if sound_floor > -bound:
        raise WindowError(
            f"window {window} cannot certify support {bound} at order {q_order}"
        )
    coeffs = []
    for poly in series.coeffs:
        for r, c in poly.items():
            if c and (r > bound or sound_floor <= r < -bound):
                raise InternalInvariantError(
                    f"derived weight-0 generator has support at w^{r}, outside "
                    f"the index-one bound {bound}"
                )
        coeffs.append(poly.truncated(bound))
    exact = QSeries(coeffs, None)
    for n, expected in ((0, _B_Q0), (1, _B_Q1), (2, _B_Q2)):
        if n <= q_order and exact.coeffs[n] != expected:
            raise InternalInvariantError(
                f"derived weight-0 generator mismatch at q^{n}: "
                f"{format_wpoly(exact.coeffs[n])}"
            )
    return exact


def make_bundle(q_order: int = 10, window: int = 24) -> JacobiSeriesBundle:
    a = theta_quotient_A(q_order)
    partial = JacobiSeriesBundle(
        q_order,
        window,
        eisenstein(2, q_order),
        eisenstein(4, q_order),
        eisenstein(6, q_order),
        a,
        zero_series(q_order),
        j1_series(q_order, window),
        j2_series(q_order),
    )
    b = b_series(q_order, window, _partial=partial)
    return JacobiSeriesBundle(
        q_order, window, partial.e2, partial.e4, partial.e6, a, b, partial.j1, partial.j2
    )


# -------------------------------------------------------------- evaluation


@lru_cache(maxsize=4096)
def _generator_power(bundle: JacobiSeriesBundle, name: str, exponent: int) -> QSeries:
    base = bundle.generator_series()[name]
    if exponent == 0:
        return constant_series(1, bundle.q_order)
    if exponent == 1:
        return base
    half = _generator_power(bundle, name, exponent // 2)
    result = half * half
    if exponent % 2:
        result = result * base
    return result


def evaluate(f: BigradedElement, bundle: JacobiSeriesBundle) -> QSeries:
    """Substitution homomorphism C[E4,E6,A,B] -> exact q-series.

    Rejects negative A exponents; for an element of K with minimal A
    exponent -m, evaluate A^m * f instead.
    """
    if not membership(f, "Jtilde"):
        raise ValueError("element has negative A exponents; clear them before evaluating")
    total = zero_series(bundle.q_order)
    for m, c in f.terms().items():
        term = constant_series(c, bundle.q_order)
        for name, e in zip(("E4", "E6", "A", "B"), m):
            if e:
                term = term * _generator_power(bundle, name, e)
        total = total + term
    return total


def evaluate_quasimodular(f: BigradedElement, bundle: JacobiSeriesBundle) -> QSeries:
    """Evaluate an index-zero element through F2 -> E2.

    Monomials must have opposite A and B exponents; B^s A^{-s} maps to
    E2^s, so the result is the expansion of the corresponding quasimodular
    form.
    """
    if not membership(f, "Q"):
        raise ValueError("element is not a polynomial in E4, E6, F2")
    total = zero_series(bundle.q_order)
    for m, c in f.terms().items():
        term = constant_series(c, bundle.q_order)
        for name, e in (("E4", m.e4), ("E6", m.e6), ("E2", m.b)):
            if e:
                base = bundle.e2 if name == "E2" else bundle.generator_series()[name]
                term = term * base ** e
        total = total + term
    return total


def delta_series(bundle: JacobiSeriesBundle) -> QSeries:
    return Fraction(1, 1728) * (bundle.e4 ** 3 - bundle.e6 ** 2)


def clear_caches() -> None:
    _generator_power.cache_clear()
