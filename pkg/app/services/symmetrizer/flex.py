"""
Quadrilateral flexing: with three sides and the closing chord fixed, the
quadrilateral has one degree of freedom, the diagonal from the first vertex to
the third. Its area is maximal exactly where the opposite-angle sums agree.
"""
from typing import Callable, Tuple

import math

from app.core.config import settings
from app.core.exceptions import InvalidDiagonalError, InvalidSidesError
from app.core.logging_config import get_logger
from app.schemas.symmetrization.symmetrization_models import FlexProblem, FlexSolution
from app.services.area.triangle_area import area_of_sides
from app.services.geometry.kernel import law_of_cosines_angle

logger = get_logger("flex")

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2
POLISH_WIDTH = 1e-5
POLISH_AREA_SLACK = 1e-14


def _check_diagonal(fp: FlexProblem, p: float) -> None:
    lo, hi = fp.interval
    if not lo < p < hi:
        raise InvalidDiagonalError(f"Diagonal {p} outside the feasible interval ({lo}, {hi})")


def flex_area(fp: FlexProblem, p: float) -> float:
    """
    Area of the convex quadrilateral with diagonal p.

    @param fp: Flex problem.
    @param p: Diagonal d(v[i-1], v[i+1]), strictly inside fp.interval.
    @return: area(s1, s2, p) + area(p, s3, k).
    @raises InvalidDiagonalError: If p is infeasible.
    """
    _check_diagonal(fp, p)
    return area_of_sides(fp.s1, fp.s2, p, fp.geometry) + area_of_sides(p, fp.s3, fp.k, fp.geometry)


def flex_gap(fp: FlexProblem, p: float) -> float:
    """
    (A + C) - (B + D) of the quadrilateral with diagonal p, from the two sub-triangles.

    A and C are split by the diagonal; B and D are the angles opposite it.
    """
    _check_diagonal(fp, p)
    g = fp.geometry
    b = law_of_cosines_angle(fp.s1, fp.s2, p, g)
    d = law_of_cosines_angle(fp.s3, fp.k, p, g)
    a = law_of_cosines_angle(fp.s1, p, fp.s2, g) + law_of_cosines_angle(p, fp.k, fp.s3, g)
    c = law_of_cosines_angle(fp.s2, p, fp.s1, g) + law_of_cosines_angle(p, fp.s3, fp.k, g)
    return (a + c) - (b + d)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float) -> Tuple[float, float]:
    """
    Golden-section search for a maximum of f on [a, b].

    Never evaluates f at the end points.

    @return: An interval (c, d) of width <= tol containing the maximizer.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b

    # Required steps to achieve tolerance
    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(steps - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc > yd:
        return a, d
    return c, b


def _polish(fp: FlexProblem, guess: float) -> float:
    """Refine guess to the sign change of the opposite-angle gap, when one is bracketed nearby."""
    lo, hi = fp.interval
    width = POLISH_WIDTH * (hi - lo)
    a, b = max(lo + width / 2, guess - width), min(hi - width / 2, guess + width)
    if not a < b:
        return guess
    try:
        ga, gb = flex_gap(fp, a), flex_gap(fp, b)
    except InvalidSidesError:
        return guess
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    if (ga > 0) == (gb > 0):
        return guess
    for _ in range(200):
        mid = (a + b) / 2
        if mid <= a or mid >= b:
            break
        gm = flex_gap(fp, mid)
        if gm == 0.0:
            return mid
        if (gm > 0) == (ga > 0):
            a, ga = mid, gm
        else:
            b = mid
    return (a + b) / 2


def solve_flex(
    fp: FlexProblem,
    scan_points: int = settings.FLEX_SCAN_POINTS,
    tol: float = settings.FLEX_TOLERANCE,
) -> FlexSolution:
    """
    Maximize flex_area over the feasible diagonal interval.

    A coarse scan picks the bracket holding the global maximum, golden-section
    search narrows it to width tol, and the result is polished onto the zero of
    the opposite-angle gap.

    @param fp: Flex problem (its interval is nonempty by construction).
    @param scan_points: Number of coarse samples.
    @param tol: Final golden-section interval width.
    @return: The FlexSolution.
    """
    lo, hi = fp.interval
    step = (hi - lo) / scan_points
    grid = [lo + (j + 0.5) * step for j in range(scan_points)]
    values = [flex_area(fp, x) for x in grid]
    best = max(range(scan_points), key=values.__getitem__)
    left = grid[best - 1] if best > 0 else lo
    right = grid[best + 1] if best < scan_points - 1 else hi

    c, d = golden_section_max(lambda x: flex_area(fp, x), left, right, tol)
    guess = (c + d) / 2
    guess_area = flex_area(fp, guess)

    polished = _polish(fp, guess)
    polished_area = flex_area(fp, polished)
    if polished_area >= guess_area - POLISH_AREA_SLACK:
        guess, guess_area = polished, polished_area

    gap = flex_gap(fp, guess)
    logger.debug(f"Flex optimum p*={guess}, area={guess_area}, gap={gap}")
    return FlexSolution(diagonal=guess, area=guess_area, gap=gap)
