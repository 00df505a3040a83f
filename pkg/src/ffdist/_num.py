import math

#: Relative slack granted to "holds" when an exact integer meets an analytic bound.
REL_SLACK = 1e-9
#: Largest tolerated distance from an integer before rounding a spectral count.
ROUND_TOL = 1e-6


def leq(lhs, rhs) -> bool:
    """``lhs <= rhs`` up to :data:`REL_SLACK`, resolved in favor of the inequality."""
    lhs = float(lhs)
    rhs = float(rhs)
    return lhs <= rhs + REL_SLACK * abs(rhs) + 1e-12


def exact_round(x, tol=ROUND_TOL) -> int:
    r = round(float(x))
    if abs(float(x) - r) >= tol:
        raise ArithmeticError(f"{x!r} is not within {tol} of an integer")
    return int(r)


def ln2_const(k) -> float:
    """``2k / ln 2``, the constant in the chain-count estimate."""
    return 2.0 * k / math.log(2.0)
