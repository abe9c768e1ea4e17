"""Regular parts of tensor products at the level of object labels.

Objects are multisets of labels ``L(x·λ)``, ``Δ(x·λ)``, ``T(λ)`` and named
custom modules such as ``M(ν)``.  The regular part of
``L(x·λ) ⊗ L(y·μ)`` is obtained from a principal-block datum for ``(x, y)``
(both in W_aff⁺, weights at 0) by translating to every ν with fusion
multiplicity ``c_{λ,μ}^ν`` and twisting by the fundamental group.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .affweyl import EllContext, ExtAffineElement, OmegaElement
from .fusion import FusionTable
from .rootsys import Weight


class RegQuotError(ValueError):
    pass


class NoBaseDatumError(RegQuotError):
    """The principal-block regular part for a base pair is not known."""


class LinkageError(RegQuotError):
    pass


class Kind(enum.Enum):
    CUSTOM = 0
    SIMPLE = 1
    WEYL = 2
    TILTING = 3

    @property
    def symbol(self) -> str:
        return {Kind.SIMPLE: "L", Kind.WEYL: "Delta", Kind.TILTING: "T", Kind.CUSTOM: "?"}[self]

    @classmethod
    def parse(cls, text: str) -> "Kind":
        try:
            return {"simple": cls.SIMPLE, "weyl": cls.WEYL, "tilting": cls.TILTING,
                    "custom": cls.CUSTOM, "l": cls.SIMPLE, "delta": cls.WEYL,
                    "t": cls.TILTING}[text.lower()]
        except KeyError:
            raise RegQuotError(f"unknown label kind {text!r}") from None


@dataclass(frozen=True)
class ObjLabel:
    """A labelled indecomposable object.

    For simple and Weyl labels the highest weight is ``x·lam`` with ``x`` in
    W_aff⁺ (any fundamental-group part is absorbed into ``lam``) and ``lam``
    in the fundamental alcove.  Tilting labels carry their full highest weight
    in ``lam`` and no ``x``.  Custom labels (``name`` set) carry only the
    weight slot ``lam`` into which they have been translated.
    """

    kind: Kind
    lam: Weight
    x: Optional[ExtAffineElement] = None
    name: Optional[str] = None

    @property
    def sort_key(self) -> tuple:
        return (self.lam, self.kind.value, self.x.key if self.x is not None else (), self.name or "")

    def with_weight(self, lam: Weight) -> "ObjLabel":
        return ObjLabel(self.kind, tuple(lam), self.x, self.name)

    def highest_weight(self, ctx: EllContext) -> Weight:
        if self.kind in (Kind.SIMPLE, Kind.WEYL):
            return ctx.dot_act(self.x, self.lam)
        return self.lam

    def render(self, ctx: EllContext) -> str:
        weight = ",".join(map(str, self.lam))
        if self.kind is Kind.CUSTOM:
            return f"{self.name}({weight})"
        if self.kind is Kind.TILTING:
            return f"T({weight})"
        word = ctx.reduced_word(self.x)
        if word == "e":
            return f"{self.kind.symbol}({weight})"
        return f"{self.kind.symbol}({word};{weight})"


def make_label(ctx: EllContext, kind: Kind, x: Union[ExtAffineElement, str, None] = None,
               lam=None, name: Optional[str] = None) -> ObjLabel:
    """Validated, canonical label; ``x`` may be an element or a word like ``"s0s2"``."""
    lam = tuple(lam) if lam is not None else (0,) * ctx.rank
    if len(lam) != ctx.rank:
        raise RegQuotError(f"weight {lam} has wrong length for {ctx.rs.name}")
    if kind is Kind.TILTING:
        if x is not None and (not isinstance(x, str) or x != "e"):
            raise RegQuotError("tilting labels take a highest weight only")
        if not ctx.rs.is_dominant(lam):
            raise RegQuotError(f"{lam} is not dominant")
        return ObjLabel(kind, lam)
    if not ctx.in_fundamental_alcove(lam):
        raise RegQuotError(f"{lam} is not in the fundamental alcove at ell={ctx.ell}")
    if kind is Kind.CUSTOM:
        if not name:
            raise RegQuotError("custom labels need a name")
        if x is not None and not (x == "e" or (isinstance(x, ExtAffineElement) and x == ctx.identity)):
            raise RegQuotError("custom labels take a weight slot only")
        return ObjLabel(kind, lam, None, name)
    if isinstance(x, str) or x is None:
        x = parse_ext_word(ctx, x or "e")
    if not ctx.alcove_is_dominant(x):
        raise RegQuotError(f"{ctx.reduced_word(x)} is not in the dominant chamber")
    omega = ctx.omega_of(x)
    y = x * omega.elem.inverse()
    return ObjLabel(kind, ctx.omega_act(omega, lam), y)


def parse_ext_word(ctx: EllContext, word: str) -> ExtAffineElement:
    """Element of W_ext for words like ``"s0s2"``, ``"e"`` or ``"s0s2w1"``."""
    word = word.strip()
    omega = None
    for om in sorted(ctx.omega_group, key=lambda o: -len(o.name)):
        if not om.is_identity and word.endswith(om.name):
            omega, word = om, word[: -len(om.name)] or "e"
            break
    x = ctx.element_from_word(word)
    return x * omega.elem if omega is not None else x


@dataclass(frozen=True)
class RegObject:
    """A finite direct sum of labelled objects; the empty sum is zero."""

    items: Tuple[Tuple[ObjLabel, int], ...] = ()

    @classmethod
    def of(cls, pairs: Union[Mapping[ObjLabel, int], Iterable[Tuple[ObjLabel, int]], Iterable[ObjLabel]]) -> "RegObject":
        counts: Counter = Counter()
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        for item in pairs:
            label, mult = item if isinstance(item, tuple) else (item, 1)
            if mult < 0:
                raise RegQuotError("multiplicities must be nonnegative")
            counts[label] += mult
        return cls(tuple(sorted(((k, v) for k, v in counts.items() if v), key=lambda kv: kv[0].sort_key)))

    def __add__(self, other: "RegObject") -> "RegObject":
        return RegObject.of(self.items + other.items)

    def scaled(self, k: int) -> "RegObject":
        return RegObject.of((label, k * m) for label, m in self.items)

    def map_labels(self, fn) -> "RegObject":
        return RegObject.of((fn(label), m) for label, m in self.items)

    @property
    def labels(self) -> List[ObjLabel]:
        return [label for label, _ in self.items]

    def __bool__(self) -> bool:
        return bool(self.items)

    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    def render(self, ctx: EllContext) -> str:
        if not self.items:
            return "0"
        parts = []
        for label, m in self.items:
            text = label.render(ctx)
            parts.append(text if m == 1 else f"{text}^{m}")
        return " + ".join(parts)


ZERO = RegObject()


# ---------------------------------------------------------------------------
# label-level functors


def translate(ctx: EllContext, obj: RegObject, nu) -> RegObject:
    """Translation out of the principal block: every weight slot 0 becomes ν."""
    return translate_between(ctx, obj, (0,) * ctx.rank, nu)


def translate_between(ctx: EllContext, obj: RegObject, delta, mu) -> RegObject:
    """Translation from the block of δ to the block of μ (both in the fundamental alcove)."""
    delta, mu = tuple(delta), tuple(mu)
    for w in (delta, mu):
        if not ctx.in_fundamental_alcove(w):
            raise RegQuotError(f"{w} is not in the fundamental alcove at ell={ctx.ell}")
    for label in obj.labels:
        if label.lam != delta:
            raise RegQuotError(f"label {label.render(ctx)} does not sit at {delta}")
    return obj.map_labels(lambda label: label.with_weight(mu))


def omega_mul(ctx: EllContext, a: OmegaElement, b: OmegaElement) -> OmegaElement:
    return ctx.omega_of(a.elem * b.elem)


def omega_inverse(ctx: EllContext, a: OmegaElement) -> OmegaElement:
    return ctx.omega_of(a.elem.inverse())


def omega_twist(ctx: EllContext, obj: RegObject, omega: OmegaElement) -> RegObject:
    """Apply ``⊕_λ T_λ^{ω·λ}``: weight slots are moved by the dot action of ω."""
    return obj.map_labels(lambda label: label.with_weight(ctx.omega_act(omega, label.lam)))


def linkage_class_of(ctx: EllContext, obj: RegObject) -> Weight:
    """The weight of the closed fundamental alcove shared by every label's linkage class."""
    if not obj:
        raise LinkageError("the zero object has no linkage class")
    classes = set()
    for label in obj.labels:
        if label.kind is Kind.CUSTOM:
            classes.add(label.lam)
        else:
            classes.add(ctx.closure_representative(label.highest_weight(ctx)))
    if len(classes) != 1:
        raise LinkageError(f"labels lie in several linkage classes: {sorted(classes)}")
    return classes.pop()


def is_regular_label(ctx: EllContext, label: ObjLabel) -> bool:
    """Simple, Weyl and custom labels are regular by construction; tilting ones iff non-negligible."""
    if label.kind is Kind.TILTING:
        return ctx.in_fundamental_alcove(label.lam)
    return ctx.is_regular(label.highest_weight(ctx))


# ---------------------------------------------------------------------------
# principal-block data


@dataclass(frozen=True)
class OutSpec:
    kind: Kind
    word: str = "e"
    name: Optional[str] = None
    mult: int = 1


@dataclass(frozen=True)
class RuleEntry:
    x: str
    y: str
    out: Tuple[OutSpec, ...]
    min_ell: int = 0


@dataclass(frozen=True)
class CustomModule:
    """Documentation for a named non-tilting summand: composition factors and radical layers."""

    name: str
    factors: Tuple[Tuple[str, int], ...] = ()
    layers: Tuple[Tuple[str, ...], ...] = ()
    relation: str = ""


@dataclass
class PrincipalFusionRule:
    """Regular parts of ``L(x·0) ⊗ L(y·0)`` for base pairs in W_aff⁺."""

    family: str
    rank: int
    entries: List[RuleEntry] = field(default_factory=list)
    custom: Dict[str, CustomModule] = field(default_factory=dict)

    def _check(self, ctx: EllContext) -> None:
        if (ctx.rs.family, ctx.rank) != (self.family, self.rank):
            raise RegQuotError(f"rules are for {self.family}{self.rank}, not {ctx.rs.name}")

    def merged(self, other: "PrincipalFusionRule") -> "PrincipalFusionRule":
        """Rules of ``other`` take precedence over ours for the same base pair."""
        if (other.family, other.rank) != (self.family, self.rank):
            raise RegQuotError("cannot merge rules for different root systems")
        return PrincipalFusionRule(self.family, self.rank, other.entries + self.entries,
                                   {**self.custom, **other.custom})

    def lookup(self, ctx: EllContext, x: ExtAffineElement, y: ExtAffineElement) -> RegObject:
        self._check(ctx)
        key = sorted((x.key, y.key))
        for entry in self.entries:
            ex, ey = ctx.element_from_word(entry.x), ctx.element_from_word(entry.y)
            if sorted((ex.key, ey.key)) == key:
                if ctx.ell < entry.min_ell:
                    raise NoBaseDatumError(
                        f"rule ({entry.x}, {entry.y}) needs ell >= {entry.min_ell}")
                return self._materialize(ctx, entry.out)
        if x == ctx.identity or y == ctx.identity:
            other = y if x == ctx.identity else x
            return RegObject.of([make_label(ctx, Kind.SIMPLE, other)])
        raise NoBaseDatumError(
            f"no base datum for ({ctx.reduced_word(x)}, {ctx.reduced_word(y)}) in {ctx.rs.name}")

    def _materialize(self, ctx: EllContext, out: Sequence[OutSpec]) -> RegObject:
        labels = []
        for spec in out:
            if spec.kind is Kind.CUSTOM:
                labels.append((make_label(ctx, Kind.CUSTOM, None, None, spec.name), spec.mult))
            else:
                labels.append((make_label(ctx, spec.kind, spec.word), spec.mult))
        obj = RegObject.of(labels)
        for label in obj.labels:
            if label.kind is not Kind.CUSTOM and ctx.omega_of(label.x).index != 0:
                raise RegQuotError("principal-block data must have trivial Ω-part")
        return obj

    # rule files -----------------------------------------------------------
    @classmethod
    def from_json(cls, text: str) -> "PrincipalFusionRule":
        try:
            data = json.loads(text)
            rules = cls(str(data["family"]).upper(), int(data["rank"]))
            for row in data.get("rules", []):
                out = tuple(
                    OutSpec(Kind.parse(o["kind"]), o.get("w", "e"), o.get("name"), int(o.get("mult", 1)))
                    for o in row["out"])
                rules.entries.append(RuleEntry(row["x"], row["y"], out, int(row.get("min_ell", 0))))
            for name, meta in data.get("custom", {}).items():
                rules.custom[name] = CustomModule(
                    name, tuple(sorted(meta.get("factors", {}).items())),
                    tuple(tuple(layer) for layer in meta.get("layers", [])), meta.get("relation", ""))
        except (ValueError, KeyError, TypeError) as exc:
            raise RegQuotError(f"malformed rule file: {exc}") from exc
        return rules

    @classmethod
    def load(cls, path) -> "PrincipalFusionRule":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


def builtin_a2_rules() -> PrincipalFusionRule:
    """The type A₂ principal-block data: generic summand M and the ℓϖ-type products."""
    simple = Kind.SIMPLE
    return PrincipalFusionRule(
        "A", 2,
        [
            RuleEntry("s0", "s0", (OutSpec(Kind.CUSTOM, name="M"), OutSpec(simple, "e")), min_ell=3),
            RuleEntry("s0s1", "s0s2", (OutSpec(simple, "s0s1s2s1"), OutSpec(simple, "e")), min_ell=5),
            RuleEntry("s0s1", "s0s1", (OutSpec(simple, "s0s1s2s0"), OutSpec(simple, "s0s2"))),
        ],
        {"M": CustomModule(
            "M",
            factors=(("e", 1), ("s0", 2), ("s0s1", 1), ("s0s2", 1)),
            layers=(("s0",), ("s0s1", "e", "s0s2"), ("s0",)),
            relation="[M(ν)] = [T(s0s1·ν)] + [T(s0s2·ν)] − 2·[T(s0·ν)] + 3·[T(ν)]",
        )},
    )


def rules_for(ctx: EllContext, extra: Optional[PrincipalFusionRule] = None) -> PrincipalFusionRule:
    """Built-in data for the root system of ``ctx`` (if any), overridden by ``extra``."""
    if (ctx.rs.family, ctx.rank) == ("A", 2):
        base = builtin_a2_rules()
    else:
        base = PrincipalFusionRule(ctx.rs.family, ctx.rank)
    return base.merged(extra) if extra is not None else base


# ---------------------------------------------------------------------------
# regular parts of tensor products

Factor = Tuple[Union[ExtAffineElement, str], Weight, Optional[OmegaElement]]


def _base(ctx: EllContext, x: Union[ExtAffineElement, str]) -> ExtAffineElement:
    if isinstance(x, str):
        x = ctx.element_from_word(x)
    if not ctx.in_affine_weyl_group(x) or not ctx.alcove_is_dominant(x):
        raise RegQuotError("base elements must lie in W_aff⁺")
    return x


def regpart_tensor(ctx: EllContext, a: Factor, b: Factor, rules: PrincipalFusionRule,
                   table: FusionTable) -> RegObject:
    """``(L(xω·λ) ⊗ L(yω′·μ))_reg`` for ``a = (x, λ, ω)``, ``b = (y, μ, ω′)``."""
    x, lam, om_a = a
    y, mu, om_b = b
    x, y = _base(ctx, x), _base(ctx, y)
    lam, mu = tuple(lam), tuple(mu)
    identity = ctx.omega_group[0]
    om = omega_mul(ctx, om_a or identity, om_b or identity)
    base = rules.lookup(ctx, x, y)
    out = ZERO
    for nu, c in table.row(lam, mu).items():
        out = out + omega_twist(ctx, translate(ctx, base, nu), om).scaled(c)
    return out


def _as_factor(ctx: EllContext, label: ObjLabel) -> Factor:
    if label.kind is Kind.SIMPLE:
        return label.x, label.lam, None
    if label.kind is Kind.TILTING or (label.kind is Kind.WEYL and label.x == ctx.identity):
        # T(ν) = Δ(ν) = L(ν) for ν in the fundamental alcove
        return ctx.identity, label.lam, None
    raise NoBaseDatumError(f"no base datum for {label.render(ctx)}")


def regpart_objects(ctx: EllContext, a: RegObject, b: RegObject, rules: PrincipalFusionRule,
                    table: FusionTable) -> RegObject:
    """Regular part of ``A ⊗ B``; negligible and singular summands are dropped first."""
    a_reg = [(label, m) for label, m in a.items if is_regular_label(ctx, label)]
    b_reg = [(label, m) for label, m in b.items if is_regular_label(ctx, label)]
    out = ZERO
    for la, ma in a_reg:
        fa = _as_factor(ctx, la)
        for lb, mb in b_reg:
            out = out + regpart_tensor(ctx, fa, _as_factor(ctx, lb), rules, table).scaled(ma * mb)
    return out


__all__ = [
    "CustomModule",
    "Kind",
    "LinkageError",
    "NoBaseDatumError",
    "ObjLabel",
    "OutSpec",
    "PrincipalFusionRule",
    "RegObject",
    "RegQuotError",
    "RuleEntry",
    "ZERO",
    "builtin_a2_rules",
    "is_regular_label",
    "linkage_class_of",
    "make_label",
    "omega_inverse",
    "omega_mul",
    "omega_twist",
    "parse_ext_word",
    "regpart_objects",
    "regpart_tensor",
    "rules_for",
    "translate",
    "translate_between",
]
