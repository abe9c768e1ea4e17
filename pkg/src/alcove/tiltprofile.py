"""Structural constraints on minimal tilting complexes and good filtration dimensions.

A :class:`ComplexProfile` records, degree by degree, what is known about the
minimal tilting complex of ``Δ(x·λ)`` or ``L(x·λ)``: which degrees vanish,
which terms are negligible, which indecomposable summands are pinned, and
which highest weights may occur at all.  Interior multiplicities are not
determined and are not modelled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .affweyl import EllContext
from .regquot import Kind, ObjLabel, is_regular_label, parse_ext_word
from .rootsys import Weight


class ProfileError(ValueError):
    pass


class ConstraintKind(enum.Enum):
    ZERO = "zero"
    NEGLIGIBLE = "negligible"
    EXACTLY_T = "exactly"
    CONTAINS_T = "contains"
    SUPPORT_BOUNDED = "support"


@dataclass(frozen=True)
class DegreeConstraint:
    kind: ConstraintKind
    weight: Optional[Weight] = None
    support: FrozenSet[Weight] = frozenset()

    @classmethod
    def zero(cls) -> "DegreeConstraint":
        return cls(ConstraintKind.ZERO)

    @classmethod
    def negligible(cls) -> "DegreeConstraint":
        return cls(ConstraintKind.NEGLIGIBLE)

    @classmethod
    def exactly(cls, nu: Weight) -> "DegreeConstraint":
        return cls(ConstraintKind.EXACTLY_T, tuple(nu))

    @classmethod
    def contains(cls, nu: Weight) -> "DegreeConstraint":
        return cls(ConstraintKind.CONTAINS_T, tuple(nu))

    @classmethod
    def bounded(cls, weights: Iterable[Weight]) -> "DegreeConstraint":
        return cls(ConstraintKind.SUPPORT_BOUNDED, support=frozenset(map(tuple, weights)))

    def describe(self) -> str:
        w = ",".join(map(str, self.weight)) if self.weight is not None else ""
        return {
            ConstraintKind.ZERO: "0",
            ConstraintKind.NEGLIGIBLE: "negligible",
            ConstraintKind.EXACTLY_T: f"= T({w})",
            ConstraintKind.CONTAINS_T: f"contains T({w}) once",
            ConstraintKind.SUPPORT_BOUNDED: f"summands among {len(self.support)} weights",
        }[self.kind]

    def violation(self, ctx: EllContext, term: Mapping[Weight, int]) -> Optional[str]:
        """Why the tilting module ``⊕ T(ν)^{m_ν}`` breaks this constraint, if it does."""
        term = {tuple(k): v for k, v in term.items() if v}
        if self.kind is ConstraintKind.ZERO:
            return f"expected 0, got {sorted(term)}" if term else None
        if self.kind is ConstraintKind.NEGLIGIBLE:
            bad = sorted(nu for nu in term if ctx.in_fundamental_alcove(nu))
            return f"non-negligible summands {bad}" if bad else None
        if self.kind is ConstraintKind.EXACTLY_T:
            return None if term == {self.weight: 1} else f"expected exactly T({self.weight}), got {term}"
        if self.kind is ConstraintKind.CONTAINS_T:
            m = term.get(self.weight, 0)
            return None if m == 1 else f"T({self.weight}) occurs {m} times, expected once"
        bad = sorted(nu for nu in term if nu not in self.support)
        return f"summands {bad} outside the admissible support" if bad else None


Constraints = Tuple[DegreeConstraint, ...]


@dataclass(frozen=True)
class ComplexProfile:
    """Constraints per degree; degrees not listed are zero."""

    degrees: Mapping[int, Constraints]
    symmetric: bool = False
    ctx: Optional[EllContext] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.symmetric:
            for i, cons in self.degrees.items():
                if self.degrees.get(-i) != cons:
                    raise ProfileError(f"profile is not symmetric at degree {i}")

    def constraint(self, i: int) -> Constraints:
        return self.degrees.get(i, (DegreeConstraint.zero(),))

    @property
    def support(self) -> List[int]:
        return sorted(self.degrees)

    def kinds(self, i: int) -> List[ConstraintKind]:
        return [c.kind for c in self.constraint(i)]

    def pinned(self, i: int) -> Optional[Weight]:
        """The weight named by an ExactlyT/ContainsT constraint in degree ``i``."""
        for c in self.constraint(i):
            if c.kind in (ConstraintKind.EXACTLY_T, ConstraintKind.CONTAINS_T):
                return c.weight
        return None


def _canonical(ctx: EllContext, x, lam) -> Tuple[int, Weight]:
    """``(ℓ(x), ω_x·λ)`` after checking that ``x·λ`` is a canonical regular datum."""
    lam = tuple(lam)
    x = parse_x(ctx, x)
    if not ctx.in_fundamental_alcove(lam):
        raise ProfileError(f"{lam} is not in the fundamental alcove at ell={ctx.ell}")
    if not ctx.alcove_is_dominant(x):
        raise ProfileError("x must lie in the dominant chamber")
    return ctx.length(x), ctx.omega_act(ctx.omega_of(x), lam)


def parse_x(ctx: EllContext, x):
    return parse_ext_word(ctx, x) if isinstance(x, str) else x


def _support_sets(ctx: EllContext, lam_end: Weight, n: int) -> Dict[int, FrozenSet[Weight]]:
    """``S_k = {y·λ' : y ∈ W_aff⁺, ℓ(y) ≤ k}`` for ``k = 0..n``."""
    by_len: Dict[int, List[Weight]] = {}
    for y in ctx.enumerate_dominant(n):
        by_len.setdefault(ctx.length(y), []).append(ctx.dot_act(y, lam_end))
    out, acc = {}, set()
    for k in range(n + 1):
        acc.update(by_len.get(k, ()))
        out[k] = frozenset(acc)
    return out


def weyl_profile(ctx: EllContext, x, lam) -> ComplexProfile:
    """Constraints on the minimal tilting complex of ``Δ(x·λ)``."""
    n, lam_end = _canonical(ctx, x, lam)
    top = ctx.dot_act(parse_x(ctx, x), tuple(lam))
    if n == 0:
        return ComplexProfile({0: (DegreeConstraint.exactly(lam_end),)}, ctx=ctx)
    sets = _support_sets(ctx, lam_end, n)
    degrees: Dict[int, Constraints] = {}
    for i in range(n + 1):
        cons = []
        if i == 0:
            cons.append(DegreeConstraint.exactly(top))
        if i == n:
            cons.append(DegreeConstraint.exactly(lam_end))
        else:
            cons.append(DegreeConstraint.negligible())
        cons.append(DegreeConstraint.bounded(sets[n - i]))
        degrees[i] = tuple(cons)
    return ComplexProfile(degrees, ctx=ctx)


def simple_profile(ctx: EllContext, x, lam) -> ComplexProfile:
    """Constraints on the (self-dual) minimal tilting complex of ``L(x·λ)``."""
    n, lam_end = _canonical(ctx, x, lam)
    top = ctx.dot_act(parse_x(ctx, x), tuple(lam))
    if n == 0:
        return ComplexProfile({0: (DegreeConstraint.exactly(lam_end),)}, symmetric=True, ctx=ctx)
    sets = _support_sets(ctx, lam_end, n)
    degrees: Dict[int, Constraints] = {}
    for i in range(-n, n + 1):
        a = abs(i)
        cons = []
        if a == n:
            cons.append(DegreeConstraint.exactly(lam_end))
        if i == 0:
            cons.append(DegreeConstraint.contains(top))
        if a == n - 1:
            cons.append(DegreeConstraint.negligible())
        cons.append(DegreeConstraint.bounded(sets[n - a]))
        degrees[i] = tuple(cons)
    return ComplexProfile(degrees, symmetric=True, ctx=ctx)


def check_profile(candidate: Mapping[int, Mapping[Weight, int]], profile: ComplexProfile,
                  ctx: Optional[EllContext] = None) -> List[str]:
    """All violations of ``profile`` by a complex given as degree → {ν: multiplicity}."""
    ctx = ctx or profile.ctx
    if ctx is None:
        raise ProfileError("a context is needed to test negligibility")
    violations = []
    for i in sorted(set(candidate) | set(profile.degrees)):
        term = candidate.get(i, {})
        for c in profile.constraint(i):
            why = c.violation(ctx, term)
            if why:
                violations.append(f"degree {i}: {why}")
    if profile.symmetric:
        for i in candidate:
            if {k: v for k, v in candidate[i].items() if v} != {
                    k: v for k, v in candidate.get(-i, {}).items() if v}:
                violations.append(f"degree {i}: not isomorphic to degree {-i}")
    return violations


# ---------------------------------------------------------------------------
# good filtration dimension


def gfd(ctx: EllContext, label: ObjLabel) -> int:
    """Good filtration dimension ``ℓ(x)`` of a regular simple or Weyl label."""
    if label.kind not in (Kind.SIMPLE, Kind.WEYL):
        raise ProfileError("good filtration dimension is only tracked for simple and Weyl labels")
    if not is_regular_label(ctx, label):
        raise ProfileError("label is not regular")
    return ctx.length(label.x)


def gfd_tensor(ctx: EllContext, labels: Sequence[ObjLabel]) -> Tuple[int, bool]:
    """``(Σ gfd, strongly regular)`` for a tensor product of simple/Weyl labels."""
    return sum(gfd(ctx, label) for label in labels), True


def strongly_regular(ctx: EllContext, label: ObjLabel) -> Optional[bool]:
    """True for regular simple/Weyl labels; ``None`` (undetermined) for anything else."""
    if label.kind in (Kind.SIMPLE, Kind.WEYL):
        return is_regular_label(ctx, label)
    return None


__all__ = [
    "ComplexProfile",
    "ConstraintKind",
    "DegreeConstraint",
    "ProfileError",
    "check_profile",
    "gfd",
    "gfd_tensor",
    "is_regular_label",
    "simple_profile",
    "strongly_regular",
    "weyl_profile",
]
