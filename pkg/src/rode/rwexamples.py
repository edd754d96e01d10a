"""Golden coupling blocks and closed-form solutions for the five worked
decoupling problems, entered as exact rational-function formulas.

Numbering: 1 is the (s0, s1) = (0, 1) case with Delta = f1/r^2; 2 and 3
are the unsolvable s0 = s1 = 0 variants; 4 and 5 are the spin (0, 2) and
(1, 2) sources with the auxiliary constant A_l.  Example 4's solution
contains the literal factor l(l-1) next to B_l = l(l+1); it is
transcribed as published (see the fixture notes in the README).
"""

from __future__ import annotations

from .gaussian import GaussianRational, I
from .ratfunc import RatFunc
from .reggewheeler import RWDelta, RWParams, metric_f, metric_f1

SPINS = {1: (0, 1), 2: (0, 0), 3: (0, 0), 4: (0, 2), 5: (1, 2)}


def example_spins(k: int):
    return SPINS[k]


def example_delta(k: int, params: RWParams) -> RWDelta:
    """Coupling block (Delta_0, Delta_1) of worked example k."""
    f = metric_f(params.M)
    f1 = metric_f1(params.M)
    r = RatFunc.var_func()
    b = params.b_l
    w = params.omega
    if k == 1 or k == 2:
        return RWDelta(f1, RatFunc.zero(), params.M)
    if k == 3:
        return RWDelta(-f1 * (b + f1 / 2), RatFunc.zero(), params.M)
    a = params.require_a_l()
    if k == 4:
        delta0 = (
            24 * I * f1 * r**4 * w**3
            - 2
            * I
            * w
            * r**2
            * (
                a
                + 2 * (b - 3)
                + (a - b) * (1 + 2 * b)
                + 2 * (a + 6 * b) * f
                - 9 * (a / b) * f**2
                - 12 * f**3
            )
            + (I / w) * f1 * b * (a * (b - 7 * f) + 12 * f * (1 - (2 + b) * f + f**2))
        )
        delta1 = (
            -4 * I * w * r**2 * f * (6 * f * f1 + 6 * b * f1 + a)
            - (I / w) * f1 * f * b * (-4 * f1**2 + 8 * f * f1 - 4 * b + 16 * f * b + a)
        )
        return RWDelta(delta0, delta1, params.M)
    if k == 5:
        delta0 = -4 * I * a * w * r**2 + (I / w) * f1 * b * (
            18 * f * f1 - 6 * f * b + a
        )
        delta1 = -24 * I * f1 * f * r**2 * w - 6 * (I / w) * f1 * f * (3 * f - 1) * b
        return RWDelta(delta0, delta1, params.M)
    raise ValueError(f"no example {k}")


def example_solution(k: int, params: RWParams):
    """Published closed-form (delta_0, delta_1) of example k, or None for
    the unsolvable cases."""
    f = metric_f(params.M)
    f1 = metric_f1(params.M)
    r = RatFunc.var_func()
    b = params.b_l
    w = params.omega
    if k == 1:
        return RatFunc.const(-1), RatFunc.zero()
    if k in (2, 3):
        return None
    a = params.require_a_l()
    if k == 4:
        ll1 = GaussianRational(params.l * (params.l - 1))
        delta0 = -I * w * r**2 * (6 * f * f1 + 12 * b * f1 + a) + (I / (4 * w)) * (
            a**2 + 2 * a * (9 + 5 * b) * f - 6 * b * f**2 * (-8 * f1 - 6 + 3 * b)
        )
        delta1 = -6 * I * f1 * f * r**2 * w + (I / (2 * w)) * f * b * (
            4 * a - 4 - 2 * f1 + 24 * f * f1 + 3 * b + f * ll1
        )
        return delta0, delta1
    if k == 5:
        delta0 = -12 * I * f1 * r**2 * w + (I / (3 * w)) * (
            a**2 / b + 6 * (a / b) * (b + 3) * f - 18 * (b - 4) * f**2 - 36 * f
        )
        delta1 = 2 * I * f * (b - 2 * f1) * (b - 2 * f + f1) / w
        return delta0, delta1
    raise ValueError(f"no example {k}")
