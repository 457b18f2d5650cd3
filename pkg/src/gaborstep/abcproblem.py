"""The a,b,c-problem: when is ``(chi_[0,c), a, b)`` a frame?

Dilation by ``b`` maps ``(chi_[0,c), a, b)`` to ``(chi_[0,bc), ab, 1)``, so
only ``b = 1`` is classified.  The classifier is a fixed catalog of known
rules; everything outside it is ``Unknown``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .scalar import fmt_rational, parse_rational

__all__ = [
    "IrrationalTag",
    "AbcQuery",
    "AbcStatus",
    "AbcVerdict",
    "RuleConflictError",
    "RULES",
    "reduce",
    "classify",
    "resolve",
    "scan_conflicts",
    "matching_rules",
    "generic_rules",
    "chart",
    "chart_csv",
    "chart_json",
    "parse_value",
]

GUARD = 1e-9


@dataclass(frozen=True)
class IrrationalTag:
    """A value declared irrational by the caller; ``approx`` is used only for inequalities."""

    approx: float

    def __post_init__(self):
        if not math.isfinite(self.approx):
            raise ValueError("irrational tag needs a finite approximation")

    def scaled(self, r: Fraction) -> "IrrationalTag":
        return IrrationalTag(self.approx * float(r))

    def __str__(self):
        return f"irr({self.approx!r})"


def parse_value(text: str):
    """``"p/q"`` or an integer gives a rational; ``"irr:0.7071"`` gives an :class:`IrrationalTag`."""
    text = str(text).strip()
    if text.startswith("irr:"):
        return IrrationalTag(float(text[4:]))
    return parse_rational(text)


def _fmt(x) -> str:
    return fmt_rational(x) if isinstance(x, Fraction) else str(x)


def _positive(x) -> bool:
    return (x.approx if isinstance(x, IrrationalTag) else x) > 0


@dataclass(frozen=True)
class AbcQuery:
    a: object
    b: Fraction
    c: object

    def __post_init__(self):
        a = self.a if isinstance(self.a, IrrationalTag) else Fraction(self.a)
        c = self.c if isinstance(self.c, IrrationalTag) else Fraction(self.c)
        b = Fraction(self.b)
        if not (_positive(a) and b > 0 and _positive(c)):
            raise ValueError("a, b, c must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)


class AbcStatus(str, Enum):
    FRAME = "Frame"
    NOT_FRAME = "NotFrame"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class AbcVerdict:
    status: AbcStatus
    rule: str

    def __post_init__(self):
        if (self.rule == "NONE") != (self.status is AbcStatus.UNKNOWN):
            raise ValueError("rule NONE must go with status Unknown and only with it")


class RuleConflictError(RuntimeError):
    """Two catalog rules matched one point with different statuses."""


def reduce(q: AbcQuery) -> AbcQuery:
    """``(a, b, c) -> (ab, 1, bc)``; frame status is preserved."""
    def scale(x):
        return x.scaled(q.b) if isinstance(x, IrrationalTag) else x * q.b

    return AbcQuery(scale(q.a), Fraction(1), scale(q.c))


# three-valued comparisons: True, False, or None inside the guard band of a tagged value

def _lt(x, y):
    if isinstance(x, IrrationalTag) or isinstance(y, IrrationalTag):
        fx = x.approx if isinstance(x, IrrationalTag) else float(x)
        fy = y.approx if isinstance(y, IrrationalTag) else float(y)
        if abs(fx - fy) <= GUARD:
            return None
        return fx < fy
    return x < y


def _eq(x, y):
    if isinstance(x, IrrationalTag) or isinstance(y, IrrationalTag):
        if isinstance(x, IrrationalTag) != isinstance(y, IrrationalTag):
            return False  # irrational never equals rational
        return None
    return x == y


def _and(*vals):
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def _floor(x):
    if not isinstance(x, IrrationalTag):
        return math.floor(x)
    f = math.floor(x.approx)
    if x.approx - f <= GUARD or f + 1 - x.approx <= GUARD:
        return None
    return f


def _integer_ge(x, n):
    if isinstance(x, IrrationalTag):
        return False
    return x.denominator == 1 and x >= n


def _janssen_window(a, c):
    return _and(_lt(a, 1), _lt(1, c))


# each rule maps a reduced (a, c) to (status or None when not matching, match flag)

def _r_ab_gt_1(a, c):
    return _lt(1, a), AbcStatus.NOT_FRAME


def _r_onb(a, c):
    return _and(_eq(a, 1), _eq(c, 1)), AbcStatus.FRAME


def _r_c_lt_1(a, c):
    m = _lt(c, 1)
    if m is not True:
        return m, None
    le = _lt(c, a)
    if le is None:
        return None, None
    return True, AbcStatus.NOT_FRAME if le else AbcStatus.FRAME


def _r_c_eq_1_g0(a, c):
    # support of length 1 = 1/b with ab <= 1: G_0 >= 1 a.e. decides
    return _and(_eq(c, 1), _lt(a, 1)), AbcStatus.FRAME


def _r_integer_c(a, c):
    return _integer_ge(c, 2), AbcStatus.NOT_FRAME


def _r_unit_a(a, c):
    # a = b = 1, c > 1: the alternating witnesses break the Riesz property
    return _and(_eq(a, 1), _lt(1, c)), AbcStatus.NOT_FRAME


def _r_janssen_1(a, c):
    return _and(_janssen_window(a, c), isinstance(a, IrrationalTag), _lt(c, 2)), AbcStatus.FRAME


def _r_janssen_2(a, c):
    if isinstance(a, IrrationalTag):
        return False, AbcStatus.NOT_FRAME
    lo = 2 - Fraction(1, a.denominator)
    return _and(_janssen_window(a, c), _lt(lo, c), _lt(c, 2)), AbcStatus.NOT_FRAME


def _r_janssen_3(a, c):
    # c = L - 1 + L(1 - a)  <=>  L = (c + 1) / (2 - a)
    if isinstance(a, IrrationalTag) or isinstance(c, IrrationalTag):
        if isinstance(a, IrrationalTag) and isinstance(c, IrrationalTag):
            return _and(_janssen_window(a, c), _lt(Fraction(3, 4), a), None), AbcStatus.NOT_FRAME
        return False, AbcStatus.NOT_FRAME
    if not (_janssen_window(a, c) and _lt(Fraction(3, 4), a)):
        return False, AbcStatus.NOT_FRAME
    L = (c + 1) / (2 - a)
    return L.denominator == 1 and L >= 3, AbcStatus.NOT_FRAME


def _r_janssen_4(a, c):
    d = _floor(c)
    if d is None:
        return _and(_janssen_window(a, c), None), AbcStatus.FRAME
    if isinstance(c, IrrationalTag) or isinstance(a, IrrationalTag):
        cf = c.approx if isinstance(c, IrrationalTag) else float(c)
        af = a.approx if isinstance(a, IrrationalTag) else float(a)
        lhs, rhs = abs(cf - d - 0.5), 0.5 - af
        inside = None if abs(lhs - rhs) <= GUARD else lhs < rhs
    else:
        inside = abs(c - d - Fraction(1, 2)) < Fraction(1, 2) - a
    return _and(_janssen_window(a, c), inside), AbcStatus.FRAME


RULES = (
    ("AB_GT_1", _r_ab_gt_1),
    ("C_EQ_1_ONB", _r_onb),
    ("C_LT_1", _r_c_lt_1),
    ("C_EQ_1_G0", _r_c_eq_1_g0),
    ("INTEGER_C", _r_integer_c),
    ("A_EQ_1_C_GT_1", _r_unit_a),
    ("JANSSEN_1", _r_janssen_1),
    ("JANSSEN_2", _r_janssen_2),
    ("JANSSEN_3", _r_janssen_3),
    ("JANSSEN_4", _r_janssen_4),
)


_F, _N = AbcStatus.FRAME, AbcStatus.NOT_FRAME


def _rational_outcomes(ap: int, aq: int, cp: int, cq: int) -> list:
    """The catalog on ``a = ap/aq``, ``c = cp/cq`` in integer arithmetic (same results as ``RULES``)."""
    a_lt_1, c_lt_1, c_gt_1 = ap < aq, cp < cq, cp > cq
    a_eq_1, c_eq_1 = ap == aq, cp == cq
    window = a_lt_1 and c_gt_1
    c_lt_2 = cp < 2 * cq
    j3 = False
    if window and 4 * ap > 3 * aq:
        num, den = (cp + cq) * aq, cq * (2 * aq - ap)
        j3 = num % den == 0 and num >= 3 * den
    d = cp // cq
    j4 = window and abs(2 * cp - 2 * d * cq - cq) * aq < (aq - 2 * ap) * cq
    return [
        ("AB_GT_1", ap > aq, _N),
        ("C_EQ_1_ONB", a_eq_1 and c_eq_1, _F),
        ("C_LT_1", c_lt_1, (_N if cp * aq < ap * cq else _F) if c_lt_1 else None),
        ("C_EQ_1_G0", c_eq_1 and a_lt_1, _F),
        ("INTEGER_C", cq == 1 and cp >= 2, _N),
        ("A_EQ_1_C_GT_1", a_eq_1 and c_gt_1, _N),
        ("JANSSEN_1", False, _F),
        ("JANSSEN_2", window and c_lt_2 and (2 * aq - 1) * cq < cp * aq, _N),
        ("JANSSEN_3", j3, _N),
        ("JANSSEN_4", j4, _F),
    ]


def matching_rules(q: AbcQuery) -> list:
    """Every rule's outcome on the reduced query: ``(name, matched, status)``."""
    r = reduce(q)
    if isinstance(r.a, Fraction) and isinstance(r.c, Fraction):
        return _rational_outcomes(r.a.numerator, r.a.denominator, r.c.numerator, r.c.denominator)
    return generic_rules(r.a, r.c)


def generic_rules(a, c) -> list:
    """The catalog evaluated through the rule functions on a reduced ``(a, c)``."""
    return [(name, *fn(a, c)) for name, fn in RULES]


def resolve(results: list, where=None) -> AbcVerdict:
    """Pick the first match from :func:`matching_rules` output, rejecting conflicts."""
    verdict = None
    blocked = False
    for name, matched, status in results:
        if matched is None and verdict is None:
            blocked = True
        if matched is True:
            if verdict is None and not blocked:
                verdict = AbcVerdict(status, name)
            elif verdict is not None and status is not verdict.status:
                raise RuleConflictError(f"{verdict.rule} and {name} disagree at {where}")
    return verdict or AbcVerdict(AbcStatus.UNKNOWN, "NONE")


def classify(q: AbcQuery) -> AbcVerdict:
    """First matching catalog rule; ``Unknown`` when none matches or a guard band interferes.

    All rules are evaluated and a second match with a different status raises
    :class:`RuleConflictError`.
    """
    return resolve(matching_rules(q), q)


def scan_conflicts(den: int, kmax: int) -> int:
    """Classify every ``a, c`` in ``{k/den : 1 <= k < kmax}``; returns the point count.

    Raises :class:`RuleConflictError` at the first conflicting point.
    """
    n = 0
    for i in range(1, kmax):
        a = Fraction(i, den)
        for j in range(1, kmax):
            c = Fraction(j, den)
            resolve(_rational_outcomes(a.numerator, a.denominator, c.numerator, c.denominator),
                    (a, c))
            n += 1
    return n


def _classify_point(args):
    a, c = args
    return a, c, classify(AbcQuery(a, 1, c))


def chart(a_grid, c_grid, jobs: int = 1) -> list:
    """``(a, c, verdict)`` rows for every grid point with ``b = 1``, ``a`` varying slowest."""
    points = [(a, c) for a in a_grid for c in c_grid]
    if jobs <= 1 or len(points) < 2000:
        return [_classify_point(p) for p in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_classify_point, points, chunksize=512))


def chart_csv(rows) -> str:
    lines = ["a,c,status,rule"]
    lines += [f"{_fmt(a)},{_fmt(c)},{v.status.value},{v.rule}" for a, c, v in rows]
    return "\n".join(lines) + "\n"


def chart_json(rows) -> list:
    return [{"a": _fmt(a), "c": _fmt(c), "status": v.status.value, "rule": v.rule}
            for a, c, v in rows]
