"""Numeric evaluation of the density bounds, exact where the value is rational.

The tensoring lower bound for Gamma_t-intersecting families is evaluated in
three forms of decreasing strength:

    tail(p, t, x)    = sum_{j=t+x}^{t+2x} C(t+2x, j) p^j (1-p)^(t+2x-j)
    single(p, t, x)  = C(t+2x, t+x) p^(t+x) (1-p)^x
    bracket(p, t)^t  = the entropy weakening of single, with gamma = x/(t+2x)

and bracket(p, t) -> p/(1-p) as t grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

# working precision for the bracket, in bits
BRACKET_PREC = 192


@dataclass
class BoundReport:
    name: str
    parameters: dict[str, int | Fraction] = field(default_factory=dict)
    value_exact: Fraction | None = None
    value_float: float | None = None
    direction: str = "equality"
    extra: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.direction not in ("lower", "upper", "equality"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.value_float is None and self.value_exact is not None:
            self.value_float = float(self.value_exact)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": {k: _jsonable(v) for k, v in self.parameters.items()},
            "value_exact": _jsonable(self.value_exact),
            "value_float": None if self.value_float is None else format(self.value_float, ".17g"),
            "direction": self.direction,
            **({"extra": {k: _jsonable(v) for k, v in self.extra.items()}} if self.extra else {}),
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 17)
    return v


def _as_fraction(p) -> Fraction:
    if isinstance(p, str):
        return Fraction(p.strip())
    return Fraction(p)


def trivial_bounds(edge_count: int) -> tuple[BoundReport, BoundReport]:
    """2^-|E| <= mu(contains Gamma, n) <= 1/2 for nonempty Gamma."""
    if edge_count < 1:
        raise ValueError("the pattern must have at least one edge")
    params = {"edges": edge_count}
    return (
        BoundReport("trivial_lower", params, Fraction(1, 2**edge_count), direction="lower"),
        BoundReport("trivial_upper", params, Fraction(1, 2), direction="upper"),
    )


def connected_value(n: int) -> BoundReport:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return BoundReport("connected", {"n": n}, Fraction(1, 2 ** (n - 1)))


def union_lower_binomial(p, t: int, x: int) -> BoundReport:
    """Binomial tail and its single-term weakening, both exact."""
    p = _as_fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if t < 1 or x < 0:
        raise ValueError(f"need t >= 1 and x >= 0, got t={t}, x={x}")
    m = t + 2 * x
    q = 1 - p
    tail = sum((comb(m, j) * p**j * q ** (m - j) for j in range(t + x, m + 1)), Fraction(0))
    single = comb(m, t + x) * p ** (t + x) * q**x
    return BoundReport(
        "union_binomial",
        {"p": p, "t": t, "x": x},
        tail,
        direction="lower",
        extra={"single_term": single},
    )


def _entropy(g):
    if g == 0 or g == 1:
        return mpmath.mpf(0)
    return -g * mpmath.log(g, 2) - (1 - g) * mpmath.log(1 - g, 2)


def entropy_term_check(m: int, x: int) -> BoundReport:
    """C(m, x) >= 2^(m H(x/m)) / (m + 1)."""
    if m < 1 or not 0 <= x <= m:
        raise ValueError(f"need m >= 1 and 0 <= x <= m, got m={m}, x={x}")
    with mpmath.workprec(BRACKET_PREC):
        lhs = comb(m, x)
        rhs = mpmath.power(2, m * _entropy(mpmath.mpf(x) / m)) / (m + 1)
        holds = bool(mpmath.mpf(lhs) >= rhs)
        return BoundReport(
            "entropy_check",
            {"m": m, "x": x},
            Fraction(lhs),
            direction="lower",
            extra={"entropy_side": float(rhs), "holds": holds},
        )


def choose_x(p, t: int) -> int:
    """Nonnegative x minimizing |x/(t+2x) - p|, smaller x on ties.

    x/(t+2x) only approaches 1/2, so p = 1/2 has no minimizer; there x = t^2,
    which sends gamma to 1/2 while the 1/(t+2x+1) factor still vanishes in
    the t-th root.
    """
    p = _as_fraction(p)
    if not 0 < p <= Fraction(1, 2):
        raise ValueError(f"p must lie in (0, 1/2], got {p}")
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if p == Fraction(1, 2):
        return t * t
    approx = p * t / (1 - 2 * p)
    lo = int(approx)
    candidates = [x for x in (lo - 1, lo, lo + 1, lo + 2) if x >= 0]
    return min(candidates, key=lambda x: (abs(Fraction(x, t + 2 * x) - p), x))


def _log_bracket(p: Fraction, t: int, x: int):
    pm = mpmath.mpf(p.numerator) / p.denominator
    m = t + 2 * x
    g = mpmath.mpf(x) / m
    out = -mpmath.log(m + 1) / t + mpmath.log(pm)
    out += mpmath.log((1 - pm) / (1 - g)) - mpmath.log(1 - pm)
    if x:
        # exponent gamma/(1-2 gamma) equals x/t exactly
        out += mpmath.mpf(x) / t * (mpmath.log(pm * (1 - pm)) - mpmath.log(g * (1 - g)))
    return out


def union_bracket(p, t: int) -> BoundReport:
    """The per-t bracket whose t-th power lower-bounds the union density."""
    p = _as_fraction(p)
    x = choose_x(p, t)
    with mpmath.workprec(BRACKET_PREC):
        value = mpmath.exp(_log_bracket(p, t, x))
        return BoundReport(
            "union_bracket",
            {"p": p, "t": t},
            None,
            float(value),
            direction="lower",
            extra={
                "x": x,
                "gamma": Fraction(x, t + 2 * x),
                "limit": p / (1 - p),
                "value_hp": mpmath.nstr(value, 40),
            },
        )


def bracket_power_vs_tail(p, t: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """(bracket^t, exact tail) at the chosen x, both at high precision."""
    p = _as_fraction(p)
    x = choose_x(p, t)
    tail = union_lower_binomial(p, t, x).value_exact
    with mpmath.workprec(BRACKET_PREC):
        power = mpmath.exp(t * _log_bracket(p, t, x))
        return power, mpmath.mpf(tail.numerator) / tail.denominator


def union_threshold(p, eps, ts: Sequence[int] = (10, 10**2, 10**3, 10**4, 10**5)) -> BoundReport:
    """Smallest sampled t with bracket(p, t) > (1 - eps) p/(1 - p)."""
    p = _as_fraction(p)
    eps = _as_fraction(eps)
    target = (1 - eps) * p / (1 - p)
    hit = None
    for t in sorted(ts):
        if Fraction(union_bracket(p, t).value_float) > target:
            hit = t
            break
    return BoundReport(
        "union_threshold",
        {"p": p, "eps": eps},
        None if hit is None else Fraction(hit),
        direction="upper",
        extra={"target": target, "sampled_t": list(sorted(ts)), "found": hit is not None},
    )


def known_values_table(n: int = 4, r: int = 3) -> list[BoundReport]:
    """Literature values for mu, as annotations; n and r instantiate the parametric rows.

    These are limits or general-n theorems and must not be used as oracles for
    exhaustive values at small n.
    """
    half_n = Fraction(1, 2 ** (n // 2)) if n % 2 == 0 else None
    rows = [
        BoundReport("contains_triangle", {}, Fraction(1, 8), extra={"source": "quoted known value"}),
        BoundReport("not_bipartite", {}, Fraction(1, 8), extra={"source": "quoted known value"}),
        BoundReport("contains_P3", {}, Fraction(17, 128), direction="lower", extra={"source": "quoted known value"}),
        BoundReport("contains_P3_trivial_upper", {}, Fraction(1, 2), direction="upper", extra={"source": "quoted known value"}),
        BoundReport(
            "no_isolated_vertices",
            {"n": n},
            half_n,
            float(2.0 ** (-n / 2)),
            direction="upper",
            extra={"source": "quoted known value"},
        ),
        BoundReport(
            "perfect_matching",
            {"n": n},
            half_n,
            float(2.0 ** (-n / 2)),
            direction="upper",
            extra={"source": "quoted known value"},
        ),
        BoundReport("not_r_partite", {"r": r}, Fraction(1, 2**r), direction="upper", extra={"source": "quoted known value"}),
        BoundReport("connected", {"n": n}, Fraction(1, 2 ** (n - 1)), extra={"source": "exact, coset argument"}),
        BoundReport("hamiltonian_lower", {"n": n}, Fraction(1, 2**n), direction="lower", extra={"source": "open gap"}),
        BoundReport(
            "hamiltonian_upper", {"n": n}, Fraction(1, 2 ** (n - 1)), direction="upper", extra={"source": "open gap"}
        ),
    ]
    return rows
