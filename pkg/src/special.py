"""Scalar kernels shared by the physics modules.

All functions take and return Python floats and raise DomainError outside
their domain. Natural units (hbar = c = k_B = 1) are assumed throughout.
"""
import math
import logging

from src.errors import DomainError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
MINUS_INV_E = -math.exp(-1.0)

_MAX_ITER = 50
_TOL = 1e-14


def log1mexp(x: float) -> float:
    """ln(1 - e^{-x}) for x > 0, accurate on both sides of the ln 2 crossover."""
    if not x > 0:
        raise DomainError(f"log1mexp requires x > 0, got {x!r}")
    if x <= LN2:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def log_expm1(x: float) -> float:
    """ln(e^x - 1) for x > 0; finite even where e^x overflows."""
    if not x > 0:
        raise DomainError(f"log_expm1 requires x > 0, got {x!r}")
    return x + log1mexp(x)


def _branch_point_guess(x: float) -> float:
    # series in p = sqrt(2(e x + 1)) around W(-1/e) = -1
    p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3


def _winitzki_guess(x: float) -> float:
    l1 = math.log1p(x)
    return l1 * (1.0 - math.log1p(l1) / (2.0 + l1))


def _halley(x: float, w: float) -> float:
    for i in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            return w
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= _TOL * (1.0 + abs(w)):
            logger.debug("lambert_w0(%r) converged after %d Halley steps", x, i + 1)
            return w
    logger.warning("lambert_w0(%r) hit the %d-iteration cap", x, _MAX_ITER)
    return w


def wright_omega(y: float) -> float:
    """W0(e^y) without forming e^y, i.e. the root of w + ln w = y."""
    if not math.isfinite(y):
        raise DomainError(f"wright_omega requires a finite argument, got {y!r}")
    if y < 1.0:
        return lambert_w0(math.exp(y))
    ly = math.log(y)
    w = y - ly + ly / y
    for i in range(_MAX_ITER):
        g = w + math.log(w) - y
        g1 = 1.0 + 1.0 / w
        g2 = -1.0 / (w * w)
        dw = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2)
        w -= dw
        if abs(dw) <= _TOL * w:
            logger.debug("wright_omega(%r) converged after %d Halley steps", y, i + 1)
            return w
    logger.warning("wright_omega(%r) hit the %d-iteration cap", y, _MAX_ITER)
    return w


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function, w e^w = x, for x >= -1/e."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"lambert_w0 requires a finite argument, got {x!r}")
    if x < MINUS_INV_E:
        raise DomainError(f"lambert_w0 requires x >= -1/e, got {x!r}")
    if x == 0.0:
        return 0.0
    if x == MINUS_INV_E:
        return -1.0
    if x > math.e:
        return wright_omega(math.log(x))
    if x < -0.25:
        w = _branch_point_guess(x)
    else:
        w = _winitzki_guess(x)
    return max(_halley(x, w), -1.0)
