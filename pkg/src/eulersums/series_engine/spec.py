"""Summand atoms, series specifications and evaluation reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable

from ..errors import DomainError
from ..hp_numeric import PrecisionContext, hp_abs_log10

__all__ = ["SummandAtom", "SeriesSpec", "EvalReport", "make_report"]

_KINDS = ("H", "Hbar", "Y", "StirOverFact", "PowDenom", "RKDenom", "AltSign", "GeomFactor")
_DENOMINATORS = ("PowDenom", "RKDenom")


@dataclass(frozen=True, order=True)
class SummandAtom:
    """One multiplicative factor of a series summand.

    ``H(p)`` and ``Hbar(p)`` are the (alternating) harmonic numbers of order
    ``p``, ``Y(k)`` the Bell number ``Y_k(n)``, ``StirOverFact(k)`` is
    ``s(n, k)/n!``, ``PowDenom(q, shift)`` is ``1/(n+shift)**q``,
    ``RKDenom(r, k)`` is ``1/((n+r)(n+k))``, ``AltSign`` is ``(-1)**(n-1)``
    and ``GeomFactor(x)`` is ``x**n``.
    """

    kind: str
    args: tuple = ()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError(f"unknown atom kind {self.kind!r}")
        a = self.args
        if self.kind in ("H", "Hbar") and (len(a) != 1 or a[0] < 1):
            raise DomainError(f"{self.kind} needs an order p >= 1, got {a}")
        if self.kind in ("Y", "StirOverFact") and (len(a) != 1 or a[0] < 0):
            raise DomainError(f"{self.kind} needs k >= 0, got {a}")
        if self.kind == "PowDenom" and (len(a) != 2 or a[0] < 0 or a[1] not in (0, 1)):
            raise DomainError(f"PowDenom needs q >= 0 and shift in {{0, 1}}, got {a}")
        if self.kind == "RKDenom" and (len(a) != 2 or not 0 <= a[0] <= a[1]):
            raise DomainError(f"RKDenom needs 0 <= r <= k, got {a}")
        if self.kind == "AltSign" and a:
            raise DomainError("AltSign takes no arguments")
        if self.kind == "GeomFactor":
            if len(a) != 1:
                raise DomainError("GeomFactor needs one rational argument")
            x = Fraction(a[0])
            if abs(x) > 1:
                raise DomainError(f"GeomFactor needs |x| <= 1, got {x}")
            object.__setattr__(self, "args", (x,))

    # constructors -------------------------------------------------------
    @classmethod
    def H(cls, p: int = 1) -> SummandAtom:
        return cls("H", (p,))

    @classmethod
    def Hbar(cls, p: int = 1) -> SummandAtom:
        return cls("Hbar", (p,))

    @classmethod
    def Y(cls, k: int) -> SummandAtom:
        return cls("Y", (k,))

    @classmethod
    def StirOverFact(cls, k: int) -> SummandAtom:
        return cls("StirOverFact", (k,))

    @classmethod
    def PowDenom(cls, q: int, shift: int = 0) -> SummandAtom:
        return cls("PowDenom", (q, shift))

    @classmethod
    def RKDenom(cls, r: int, k: int) -> SummandAtom:
        return cls("RKDenom", (r, k))

    @classmethod
    def AltSign(cls) -> SummandAtom:
        return cls("AltSign")

    @classmethod
    def GeomFactor(cls, x: Fraction | int) -> SummandAtom:
        return cls("GeomFactor", (Fraction(x),))

    def __str__(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class SeriesSpec:
    """``sum_{n >= start_n}`` of the product of ``atoms``.

    Needs at least one denominator atom. A ``PowDenom`` may be combined with
    one ``RKDenom`` to express ``1/(n**q (n+r)(n+k))``.
    """

    atoms: tuple[SummandAtom, ...]

    def __post_init__(self) -> None:
        atoms = tuple(sorted(self.atoms))
        object.__setattr__(self, "atoms", atoms)
        kinds = [a.kind for a in atoms]
        if not any(k in _DENOMINATORS for k in kinds):
            raise DomainError("a series needs a PowDenom or RKDenom atom")
        for single in ("PowDenom", "RKDenom", "AltSign", "GeomFactor"):
            if kinds.count(single) > 1:
                raise DomainError(f"at most one {single} atom is allowed")

    @classmethod
    def of(cls, *atoms: SummandAtom) -> SeriesSpec:
        return cls(tuple(atoms))

    @property
    def start_n(self) -> int:
        starts = [a.args[0] for a in self.atoms if a.kind == "StirOverFact"]
        return max([1, *starts])

    def has(self, kind: str) -> bool:
        return any(a.kind == kind for a in self.atoms)

    @property
    def alternating(self) -> bool:
        return self.has("AltSign")

    @property
    def decay(self) -> int:
        """Polynomial decay degree of the summand, ignoring logarithms."""
        d = 0
        for a in self.atoms:
            if a.kind == "PowDenom":
                d += a.args[0]
            elif a.kind == "RKDenom":
                d += 2
            elif a.kind == "StirOverFact":
                d += 1
        return d

    @property
    def weight(self) -> int:
        w = 0
        for a in self.atoms:
            if a.kind in ("H", "Hbar", "Y", "PowDenom"):
                w += a.args[0]
            elif a.kind == "RKDenom":
                w += 2
            elif a.kind == "StirOverFact":
                w += a.args[0]
        return w

    def is_euler_sum(self) -> bool:
        """True for products of H/Hbar with an optional sign over ``n**q``."""
        for a in self.atoms:
            if a.kind in ("H", "Hbar", "AltSign"):
                continue
            if a.kind == "PowDenom" and a.args[1] == 0:
                continue
            return False
        return True

    def __str__(self) -> str:
        plain = all(
            a.kind in ("H", "Hbar", "AltSign") or a.kind == "PowDenom" for a in self.atoms
        )
        if plain:
            factors = ",".join(
                (f"~{a.args[0]}" if a.kind == "Hbar" else str(a.args[0]))
                for a in self.atoms
                if a.kind in ("H", "Hbar")
            )
            den = next(a for a in self.atoms if a.kind == "PowDenom")
            outer = ("~" if self.alternating else "") + str(den.args[0])
            if den.args[1]:
                outer += f"@{den.args[1]}"
            return f"S({factors};{outer})"
        return "Sum[" + "*".join(str(a) for a in self.atoms) + "]"


@dataclass(frozen=True)
class EvalReport:
    """Result of a numerical evaluation with its absolute error estimate."""

    value: Decimal
    tail_estimate: Decimal
    cutoff_N: int
    strategy: str
    digits_claimed: int
    notes: tuple[str, ...] = field(default=())


def make_report(
    value: Decimal,
    estimate: Decimal,
    cutoff: int,
    strategy: str,
    ctx: PrecisionContext,
    notes: Iterable[str] = (),
) -> EvalReport:
    """Attach ``digits_claimed = floor(-log10(estimate + 10**(-working+3)))``."""
    budget = abs(estimate) + ctx.eps(3)
    digits = math.floor(-hp_abs_log10(budget))
    return EvalReport(
        value=ctx.decimal.plus(value),
        tail_estimate=abs(estimate),
        cutoff_N=cutoff,
        strategy=strategy,
        digits_claimed=digits,
        notes=tuple(notes),
    )
