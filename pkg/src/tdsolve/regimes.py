"""Parameter tuples, regime classification and the valid time domains.

A system is fixed by ``(a, b, omega, t_o)``.  Which closed-form row applies
depends on the picture:

* TO, ``a == 1``: sign of ``b + 1``.
* TO, ``a != 1``: ``b`` against ``a - 2``; on the boundary ``b == a - 2`` a
  subclass comparing ``t_o`` with ``|1 - a| / (2 omega)`` and the sign of
  ``1 - a``.
* TM and TQ share one table: ``b`` against ``a - 2`` (for ``a == 1`` this is the
  same as ``b`` against ``-1``), the boundary ``{1;-1}``, and the critical
  subclasses for ``a`` not in ``{0, 1}``.

Near-boundary comparisons use a relative tolerance ``eps`` (default 1e-12) so
that almost-critical parameters are resolved deterministically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import RegimeError

__all__ = [
    "Params",
    "Picture",
    "Case",
    "BClass",
    "Subclass",
    "Row",
    "SystemKey",
    "TimeDomain",
    "classify",
    "tprime_domain",
    "DEFAULT_EPS",
]

DEFAULT_EPS = 1e-12


class Picture(str, enum.Enum):
    TO = "TO"
    TM = "TM"
    TQ = "TQ"

    @classmethod
    def parse(cls, value: "Picture | str") -> "Picture":
        if isinstance(value, Picture):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"picture must be one of TO, TM, TQ; got {value!r}") from None


class Case(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"


class BClass(str, enum.Enum):
    B_GT = "B_GT"
    B_LT = "B_LT"
    CRITICAL = "CRITICAL"


class Subclass(str, enum.Enum):
    T_LT = "T_LT"
    T_EQ = "T_EQ"
    T_GT = "T_GT"


class Row(str, enum.Enum):
    """Closed-form family selected by a key (shared by all three pictures)."""

    CASE1_GT = "case1_gt"    # a = 1, b > -1 (TO only; TM/TQ use BESSEL_GT with order 0)
    CASE1_LT = "case1_lt"
    SHO = "sho"              # {1;-1}: constant-frequency oscillator
    BESSEL_GT = "bessel_gt"  # b > a - 2
    BESSEL_LT = "bessel_lt"  # b < a - 2
    CRIT_LT = "crit_lt"      # b = a - 2, t_o < |1-a|/(2 omega)
    CRIT_EQ = "crit_eq"
    CRIT_GT = "crit_gt"


@dataclass(frozen=True)
class Params:
    """Physical parameters ``(a, b, omega, t_o)`` of one system instance."""

    a: float
    b: float
    omega: float
    t_o: float

    def __post_init__(self):
        for name in ("a", "b", "omega", "t_o"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise RegimeError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.t_o <= 0:
            raise RegimeError(f"t0 must be positive (t_o > 0), got t_o={self.t_o!r}")
        if self.omega <= 0:
            raise RegimeError(f"omega must be positive, got omega={self.omega!r}")

    @property
    def critical_t(self) -> float:
        """The threshold ``|1 - a| / (2 omega)`` that ``t_o`` is compared with."""
        return abs(1.0 - self.a) / (2.0 * self.omega)


def _cmp(x: float, y: float, eps: float) -> int:
    """Three-way compare with relative tolerance (unit floor on the scale)."""
    if abs(x - y) <= eps * max(abs(x), abs(y), 1.0):
        return 0
    return 1 if x > y else -1


_SUB_TEXT = {Subclass.T_LT: "t_o<|1-a|/2w", Subclass.T_EQ: "t_o=|1-a|/2w", Subclass.T_GT: "t_o>|1-a|/2w"}


@dataclass(frozen=True)
class SystemKey:
    """Regime label of a system in one picture."""

    picture: Picture
    case: Case
    klass: BClass
    subclass: Subclass | None = None
    sign_tag: str | None = None  # sign of (1 - a): "+" or "-"
    special: bool = False        # b == -a: reduces to a constant-frequency oscillator in t'
    params: Params | None = field(default=None, compare=False)

    @property
    def row(self) -> Row:
        if self.klass is BClass.CRITICAL:
            if self.subclass is None:
                return Row.SHO
            return {Subclass.T_LT: Row.CRIT_LT, Subclass.T_EQ: Row.CRIT_EQ, Subclass.T_GT: Row.CRIT_GT}[
                self.subclass
            ]
        if self.picture is Picture.TO and self.case is Case.CASE1:
            return Row.CASE1_GT if self.klass is BClass.B_GT else Row.CASE1_LT
        return Row.BESSEL_GT if self.klass is BClass.B_GT else Row.BESSEL_LT

    @property
    def key(self) -> str:
        """Brace notation of the regime, e.g. ``{1;-1}`` or ``{!=1;a-2;t_o<|1-a|/2w;+}``."""
        if self.picture is Picture.TO:
            if self.case is Case.CASE1:
                return {BClass.B_GT: "{1;(-1,inf)}", BClass.B_LT: "{1;(-inf,-1)}", BClass.CRITICAL: "{1;-1}"}[
                    self.klass
                ]
            head = "!=1"
        else:
            if self.klass is BClass.CRITICAL and self.subclass is None:
                return "{1;-1}"
            head = "!=0,1" if self.klass is BClass.CRITICAL else "!=0"
        if self.klass is BClass.B_GT:
            return "{%s;(a-2,inf)}" % head
        if self.klass is BClass.B_LT:
            return "{%s;(-inf,a-2)}" % head
        return "{%s;a-2;%s;%s}" % (head, _SUB_TEXT[self.subclass], self.sign_tag)

    @property
    def label(self) -> str:
        """Self-contained label with the numeric parameters, e.g. ``TM{a=3;b=1;crit;t_o>|1-a|/2w;-}``."""
        p = self.params
        nums = f"a={p.a:g};b={p.b:g};" if p is not None else ""
        if self.klass is BClass.CRITICAL:
            if self.subclass is None:
                tail = "critical"
            else:
                tail = f"crit;{_SUB_TEXT[self.subclass]};{self.sign_tag}"
        elif self.picture is Picture.TO and self.case is Case.CASE1:
            tail = "b>-1" if self.klass is BClass.B_GT else "b<-1"
        else:
            tail = "b>a-2" if self.klass is BClass.B_GT else "b<a-2"
        return f"{self.picture.value}{{{nums}{tail}}}"

    def to_dict(self) -> dict:
        return {
            "picture": self.picture.value,
            "case": self.case.value,
            "class": self.klass.value,
            "subclass": None if self.subclass is None else self.subclass.value,
            "sign_tag": self.sign_tag,
            "special": self.special,
            "row": self.row.value,
            "key": self.key,
            "label": self.label,
        }


def classify(p: Params, picture: Picture | str = Picture.TO, eps: float = DEFAULT_EPS) -> SystemKey:
    """Assign the regime key of ``p`` in ``picture``.

    Raises
    ------
    RegimeError
        For ``a == 0`` in the TM or TQ picture (the dilation and the time map
        are then the identity, so the system is already of TO type).
    """
    picture = Picture.parse(picture)
    a, b = p.a, p.b
    if picture is not Picture.TO and _cmp(a, 0.0, eps) == 0:
        raise RegimeError(
            "a=0: transformation is the identity (nu = 0 and t' = t); "
            "use the TO picture for this system"
        )
    a_is_one = _cmp(a, 1.0, eps) == 0
    case = Case.CASE1 if a_is_one else Case.CASE2
    special = _cmp(b, -a, eps) == 0

    rel = _cmp(b, a - 2.0, eps)  # for a == 1 this is b against -1
    if rel > 0:
        return SystemKey(picture, case, BClass.B_GT, special=special, params=p)
    if rel < 0:
        return SystemKey(picture, case, BClass.B_LT, special=special, params=p)
    if a_is_one:
        return SystemKey(picture, case, BClass.CRITICAL, special=True, params=p)
    sub = {-1: Subclass.T_LT, 0: Subclass.T_EQ, 1: Subclass.T_GT}[_cmp(p.t_o, p.critical_t, eps)]
    sign = "+" if 1.0 - a > 0 else "-"
    return SystemKey(picture, case, BClass.CRITICAL, sub, sign, special=False, params=p)


@dataclass(frozen=True)
class TimeDomain:
    """Interval of admissible ``t' - t_o'`` offsets."""

    lower: float
    upper: float
    open_upper: bool

    def __contains__(self, x) -> bool:
        if x < self.lower:
            return False
        return x < self.upper if self.open_upper else x <= self.upper

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "open_upper": self.open_upper}


def tprime_domain(p: Params, eps: float = DEFAULT_EPS) -> TimeDomain:
    """Range of ``t' - t_o'`` reachable from ``t >= t_o``.

    ``[0, inf)`` unless ``a > 1``, where the map saturates and the range is
    ``[0, t_o / (a - 1))``.
    """
    if p.a > 1.0 and _cmp(p.a, 1.0, eps) != 0:
        return TimeDomain(0.0, p.t_o / (p.a - 1.0), True)
    return TimeDomain(0.0, math.inf, True)
