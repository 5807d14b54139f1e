"""Property verification for the bracket families.

Every identity checked here is multilinear in the inputs, so checking it
on a monomial spanning set within weight/index caps is conclusive within
those caps.  Checks report pass/fail rather than raising; a failed report
always carries a reproducible witness with the inputs and both sides.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .brackets import BracketFamily, accol, bracket_n, rc_localized
from .elements import (
    A,
    B,
    E4,
    E6,
    GENERATORS,
    GENERATOR_NAMES,
    BigradedElement,
    ZERO,
    membership,
    monomial,
)
from .qseries import JacobiSeriesBundle, evaluate, oberdieck_series
from .report import VerificationReport, failing, passing


def monomial_basis(weight_cap: int, index_cap: int, algebra: str = "Jtilde") -> list[BigradedElement]:
    """Deterministically ordered monomials of the algebra within the caps.

    Monomials are filtered by weight <= weight_cap and index <= index_cap;
    for M the index constraints are vacuous.
    """
    if algebra not in ("M", "Jtilde", "Q"):
        raise ValueError("basis enumeration needs a proper subalgebra of K")
    out = []
    a_range = {
        "M": lambda b: (0,),
        "Jtilde": lambda b: range(0, index_cap - b + 1),
        "Q": lambda b: (-b,),
    }[algebra]
    max_b = 0 if algebra == "M" else index_cap
    for b in range(max_b + 1):
        for a in a_range(b):
            budget = weight_cap + 2 * max(a, 0)
            for i in range(budget // 4 + 1):
                for j in range((budget - 4 * i) // 6 + 1):
                    weight = 4 * i + 6 * j - 2 * a
                    if weight <= weight_cap:
                        out.append((i, j, a, b))
    out.sort()
    return [monomial(*m) for m in out]


def random_homogeneous(rng: random.Random, weight_cap: int = 8, index_cap: int = 2) -> BigradedElement:
    """Random nonzero homogeneous combination of capped monomials."""
    basis = monomial_basis(weight_cap, index_cap)
    by_degree: dict = {}
    for el in basis:
        by_degree.setdefault(el.bidegree(), []).append(el)
    degree = rng.choice(sorted(by_degree))
    component = by_degree[degree]
    while True:
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in component]
        if any(coeffs):
            break
    total = ZERO
    for c, el in zip(coeffs, component):
        total = total + c * el
    return total


def _witness(identity: str, inputs: dict, lhs, rhs) -> dict:
    return {"identity": identity, "inputs": inputs, "lhs": lhs, "rhs": rhs}


def check_associativity(
    family: BracketFamily,
    n_max: int,
    basis: list[BigradedElement] | None = None,
    claim: str = "deformation.associativity",
) -> VerificationReport:
    """sum_r mu_{n-r}(mu_r(f,g),h) = sum_r mu_{n-r}(f,mu_r(g,h)) for all
    n <= n_max over ordered basis triples."""
    basis = list(GENERATORS) if basis is None else basis
    params = {"n_max": n_max, "c": family.c, "basis_size": len(basis)}
    left_cache: dict = {}

    def mu(r, f, g):
        return bracket_n(family, r, f, g)

    for i, f in enumerate(basis):
        for j, g in enumerate(basis):
            left_cache[(i, j)] = [mu(r, f, g) for r in range(n_max + 1)]
    for i, f in enumerate(basis):
        for j, g in enumerate(basis):
            fg = left_cache[(i, j)]
            for k, h in enumerate(basis):
                gh = left_cache[(j, k)]
                for n in range(1, n_max + 1):
                    lhs = ZERO
                    rhs = ZERO
                    for r in range(n + 1):
                        lhs = lhs + mu(n - r, fg[r], h)
                        rhs = rhs + mu(n - r, f, gh[r])
                    if lhs != rhs:
                        return failing(
                            claim,
                            _witness(
                                "associativity",
                                {"f": f, "g": g, "h": h, "n": n},
                                lhs,
                                rhs,
                            ),
                            params,
                        )
    return passing(claim, params)


def check_poisson(
    mu1,
    basis: list[BigradedElement] | None = None,
    claim: str = "first-bracket.poisson",
    params: dict | None = None,
) -> VerificationReport:
    """Skew-symmetry, Leibniz in each argument and the Jacobi identity for
    a bilinear first bracket, over basis tuples."""
    basis = list(GENERATORS) if basis is None else basis
    params = dict(params or {})
    params["basis_size"] = len(basis)
    for f in basis:
        for g in basis:
            lhs, rhs = mu1(f, g), -mu1(g, f)
            if lhs != rhs:
                return failing(claim, _witness("skew-symmetry", {"f": f, "g": g}, lhs, rhs), params)
    for f in basis:
        for g in basis:
            for h in basis:
                lhs = mu1(f * g, h)
                rhs = f * mu1(g, h) + mu1(f, h) * g
                if lhs != rhs:
                    return failing(claim, _witness("leibniz", {"f": f, "g": g, "h": h}, lhs, rhs), params)
                jac = mu1(f, mu1(g, h)) + mu1(g, mu1(h, f)) + mu1(h, mu1(f, g))
                if jac != ZERO:
                    return failing(claim, _witness("jacobi", {"f": f, "g": g, "h": h}, jac, ZERO), params)
    return passing(claim, params)


def check_bidegree_law(
    family: BracketFamily,
    n_max: int,
    pairs: list[tuple[BigradedElement, BigradedElement]],
    claim: str = "bracket.bidegree",
) -> VerificationReport:
    """Homogeneous (k,p) x (l,q) inputs land in (k+l+2n, p+q)."""
    params = {"n_max": n_max, "pairs": len(pairs)}
    for f, g in pairs:
        kf, pf = f.bidegree()
        kg, pg = g.bidegree()
        for n in range(n_max + 1):
            value = bracket_n(family, n, f, g)
            if value.is_zero:
                continue
            expected = (kf + kg + 2 * n, pf + pg)
            if not value.is_homogeneous or tuple(value.bidegree()) != expected:
                return failing(
                    claim,
                    _witness("bidegree", {"f": f, "g": g, "n": n, "expected": expected}, value, None),
                    params,
                )
    return passing(claim, params)


def check_stability(
    family: BracketFamily,
    algebra: str,
    n_max: int,
    basis: list[BigradedElement] | None = None,
    claim: str = "bracket.stability",
) -> VerificationReport:
    """All bracket values up to n_max stay inside the subalgebra."""
    if basis is None:
        basis = {
            "M": [E4, E6],
            "Jtilde": list(GENERATORS),
            "Q": [E4, E6, B * monomial(a=-1)],
        }[algebra]
    for f in basis:
        if not membership(f, algebra):
            raise ValueError("stability basis must lie inside the subalgebra")
    params = {"algebra": algebra, "n_max": n_max, "basis_size": len(basis)}
    for f in basis:
        for g in basis:
            for n in range(n_max + 1):
                value = bracket_n(family, n, f, g)
                if not membership(value, algebra):
                    return failing(
                        claim,
                        _witness("stability", {"f": f, "g": g, "n": n, "algebra": algebra}, value, None),
                        params,
                    )
    return passing(claim, params)


# ------------------------------------------------------------ stability line


def _vinset_closed_forms(u: Fraction, v: Fraction) -> dict[tuple[str, str], BigradedElement]:
    """Closed forms of the first localized-family bracket on the index-
    carrying generator pairs, as functions of (u, v)."""
    f2 = monomial(a=-1, b=1)
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    twelfth = Fraction(1, 12)
    return {
        ("A", "E4"): third * (-12 * u + v - 2) * E4 * B - third * (v - 2) * A * E6,
        ("A", "E6"): half * (-12 * u + v - 2) * E6 * B - half * (v - 2) * A * E4 ** 2,
        ("B", "E4"): third * (-12 * u + v - 1) * B * E4 * f2 - third * v * E6 * B + third * E4 ** 2 * A,
        ("B", "E6"): half * (-12 * u + v - 1) * B * E6 * f2 - half * v * E4 ** 2 * B + half * E4 * E6 * A,
        ("A", "B"): twelfth * (-24 * u + v - 2) * B ** 2 - twelfth * (v - 2) * E4 * A ** 2,
    }


def check_vinset(u_values, claim: str = "stability-line") -> list[VerificationReport]:
    """The stability-line facts for the localized Rankin-Cohen family.

    Three claims per the module contract: the five closed-form generator
    values of the first bracket; stability of C[E4,E6,A,B] at n=1 exactly
    when v = 12u+1; and on that line, agreement with the (1/12, -1/12)
    Serre-extension family at index weight v.
    """
    u_values = [Fraction(u) for u in u_values]
    gens = dict(zip(GENERATOR_NAMES, GENERATORS))
    reports = []

    displays_params = {"u": u_values}
    witness = None
    for u in u_values:
        v_samples = [12 * u + 1, Fraction(0), Fraction(2)]
        for v in dict.fromkeys(v_samples):
            family = rc_localized(u, v)
            for (fn, gn), expected in _vinset_closed_forms(u, v).items():
                got = bracket_n(family, 1, gens[fn], gens[gn])
                if got != expected:
                    witness = _witness("closed-form", {"f": fn, "g": gn, "u": u, "v": v}, got, expected)
                    break
            if witness:
                break
        if witness:
            break
    reports.append(
        failing(f"{claim}.displays", witness, displays_params)
        if witness
        else passing(f"{claim}.displays", displays_params)
    )

    grid_params = {"u": u_values, "v": "12u+1, 0, 1, 2"}
    witness = None
    for u in u_values:
        on_line = 12 * u + 1
        for v in [on_line, Fraction(0), Fraction(1), Fraction(2)]:
            family = rc_localized(u, v)
            stable = check_stability(family, "Jtilde", 1).passed
            if stable != (v == on_line):
                witness = _witness("iff", {"u": u, "v": v, "stable": stable}, None, None)
                break
        if witness:
            break
    reports.append(
        failing(f"{claim}.iff", witness, grid_params) if witness else passing(f"{claim}.iff", grid_params)
    )

    # On the line the bracket is the Serre-extension family at (1/12, -1/12)
    # with index weight v itself; -v/3 is the epsilon of the shape
    # factorization, not the index weight, and does not match.
    ident_params = {"u": u_values, "a": Fraction(1, 12), "b": Fraction(-1, 12), "c": "12u+1"}
    witness = None
    for u in u_values:
        v = 12 * u + 1
        local = rc_localized(u, v)
        reference = accol(Fraction(1, 12), Fraction(-1, 12), v)
        for f in GENERATORS:
            for g in GENERATORS:
                lhs = bracket_n(local, 1, f, g)
                rhs = bracket_n(reference, 1, f, g)
                if lhs != rhs:
                    witness = _witness("line-identity", {"f": f, "g": g, "u": u}, lhs, rhs)
                    break
            if witness:
                break
        if witness:
            break
    reports.append(
        failing(f"{claim}.line-identity", witness, ident_params)
        if witness
        else passing(f"{claim}.line-identity", ident_params)
    )
    return reports


def scan_conjecture(
    u_values,
    n_max: int,
    weight_cap: int,
    index_cap: int,
    claim: str = "conjecture.scan",
) -> VerificationReport:
    """Membership scan for the localized Rankin-Cohen family on the
    stability line v = 12u+1.

    For each u, every bracket of order <= n_max of two capped monomials of
    C[E4,E6,A,B] is tested for membership; for sampled v off the line, the
    known escaping first brackets are confirmed to escape.  A clean scan is
    coverage at the stated caps, not a proof.
    """
    u_values = [Fraction(u) for u in u_values]
    basis = monomial_basis(weight_cap, index_cap)
    params = {
        "u": u_values,
        "n_max": n_max,
        "weight_cap": weight_cap,
        "index_cap": index_cap,
        "pairs": len(basis) ** 2,
    }
    rows = []
    for u in u_values:
        v = 12 * u + 1
        family = rc_localized(u, v)
        for f in basis:
            for g in basis:
                for n in range(n_max + 1):
                    value = bracket_n(family, n, f, g)
                    inside = membership(value, "Jtilde")
                    rows.append((u, v, n, str(f), str(g), inside))
                    if not inside:
                        return VerificationReport(
                            claim,
                            "fail",
                            _witness("scan", {"u": u, "v": v, "f": f, "g": g, "n": n}, value, None),
                            params,
                            rows,
                        )
        # negative direction: off the line the first bracket already escapes
        for v_off in (Fraction(0), Fraction(1), Fraction(2)):
            if v_off == v:
                continue
            off = rc_localized(u, v_off)
            escaped = any(
                not membership(bracket_n(off, 1, B, g), "Jtilde") for g in (E4, E6)
            )
            if not escaped:
                return VerificationReport(
                    claim,
                    "fail",
                    _witness("negative-direction", {"u": u, "v": v_off}, None, None),
                    params,
                    rows,
                )
    return VerificationReport(claim, "pass", None, params, rows)


# --------------------------------------------------------- series consistency


def series_consistency(
    bundle: JacobiSeriesBundle,
    derivation=None,
    elements: list[BigradedElement] | None = None,
    claim: str = "derivation.series-consistency",
) -> VerificationReport:
    """The symbolic weight-raising derivation matches the Fourier-side
    operator on the test set, within the window of the truncation."""
    from .derivations import oberdieck

    derivation = oberdieck() if derivation is None else derivation
    if elements is None:
        elements = [E4, E6, A, B, E4 * A, A * B]
    params = {"q_order": bundle.q_order, "window": bundle.window, "elements": [str(f) for f in elements]}
    for f in elements:
        k, p = f.bidegree()
        symbolic = evaluate(derivation(f), bundle)
        analytic = oberdieck_series(evaluate(f, bundle), k, p, bundle)
        if not symbolic.agrees_with(analytic, q_through=bundle.q_order):
            return failing(
                claim,
                _witness("series-consistency", {"f": f, "weight": k, "index": p}, None, None),
                params,
            )
    return passing(claim, params)
