"""Extended affine Weyl group, the ℓ-dilated dot action and alcove geometry.

Elements ``t_γ w`` act on weights by ``t_γ w · λ = ℓγ + w(λ + ρ) − ρ``.
Walls are ``H_{β,m} = {x | (x + ρ, β^∨) = ℓm}`` for positive roots β.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .rootsys import FiniteWeylElement, RootSystem, Weight, add, build, scale, sub


class AlcoveError(ValueError):
    pass


@dataclass(frozen=True)
class ExtAffineElement:
    """The element ``t_γ w`` of ``W_ext = X ⋊ W_fin``."""

    gamma: Weight
    w: FiniteWeylElement

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        return ExtAffineElement(add(self.gamma, self.w(other.gamma)), self.w * other.w)

    def inverse(self) -> "ExtAffineElement":
        winv = self.w.inverse()
        return ExtAffineElement(tuple(-x for x in winv(self.gamma)), winv)

    @property
    def key(self) -> tuple:
        return (self.gamma, self.w.matrix)

    def __lt__(self, other):
        return self.key < other.key


@dataclass(frozen=True)
class Singular:
    beta: int
    m: int

    @property
    def is_regular(self) -> bool:
        return False


@dataclass(frozen=True)
class Regular:
    x: ExtAffineElement
    lam: Weight
    sign: int
    length: int

    @property
    def is_regular(self) -> bool:
        return True


ReductionResult = Union[Singular, Regular]


@dataclass(frozen=True)
class OmegaElement:
    elem: ExtAffineElement
    class_index: Tuple[int, ...]
    index: int
    zero_image: Weight

    @property
    def is_identity(self) -> bool:
        return self.index == 0

    @property
    def name(self) -> str:
        return "e" if self.index == 0 else f"w{self.index}"


_WORD_RE = re.compile(r"^(?:e|(?:s\d)+)$")


class EllContext:
    """A root system together with the dilation parameter ℓ ≥ h."""

    def __init__(self, rootsystem: Union[RootSystem, str], ell: int, rank: Optional[int] = None):
        if isinstance(rootsystem, str):
            rootsystem = build(rootsystem, rank)
        self.rs = rootsystem
        if not isinstance(ell, int) or ell < rootsystem.coxeter_number:
            raise AlcoveError(
                f"ell={ell} is below the Coxeter number h={rootsystem.coxeter_number}")
        self.ell = ell
        self.rank = rootsystem.rank
        self._h = rootsystem.coxeter_number
        self._rho_pairings = rootsystem.pairings(rootsystem.rho)
        self.identity = ExtAffineElement((0,) * self.rank, rootsystem.identity)

    def __repr__(self):
        return f"EllContext({self.rs.name}, ell={self.ell})"

    def __eq__(self, other):
        return isinstance(other, EllContext) and (self.rs.spec, self.ell) == (other.rs.spec, other.ell)

    def __hash__(self):
        return hash((self.rs.spec, self.ell))

    def __reduce__(self):
        return (EllContext, (self.rs, self.ell))

    # generators ----------------------------------------------------------
    @cached_property
    def simple_reflections(self) -> Tuple[ExtAffineElement, ...]:
        """``(s_0, s_1, ..., s_n)`` with ``s_0 = t_{α_h} s_{α_h}`` for the highest short root."""
        rs = self.rs
        zero = (0,) * self.rank
        finite = [ExtAffineElement(zero, s) for s in rs.simple_reflections]
        k = rs.highest_short_root_index
        s_ah = self.finite_reflection(k)
        s0 = ExtAffineElement(rs.highest_short_root, s_ah)
        return (s0, *finite)

    def finite_reflection(self, beta: int) -> FiniteWeylElement:
        rs = self.rs
        n = self.rank
        cols = [rs.reflect(tuple(int(i == j) for j in range(n)), beta) for i in range(n)]
        return FiniteWeylElement(tuple(tuple(cols[k][j] for k in range(n)) for j in range(n)), -1)

    def translation(self, gamma) -> ExtAffineElement:
        return ExtAffineElement(tuple(gamma), self.rs.identity)

    def element_from_word(self, word: str) -> ExtAffineElement:
        """Product of generators for words like ``"s0s2s1"`` or ``"e"``."""
        word = word.replace(" ", "")
        if not _WORD_RE.match(word):
            raise AlcoveError(f"malformed word {word!r}")
        x = self.identity
        if word == "e":
            return x
        for digit in word[1::2]:
            i = int(digit)
            if i > self.rank:
                raise AlcoveError(f"unknown generator s{i} for rank {self.rank}")
            x = x * self.simple_reflections[i]
        return x

    # dot action and alcove geometry ----------------------------------------
    def dot_act(self, x: ExtAffineElement, lam) -> Weight:
        rho = self.rs.rho
        shifted = x.w(add(lam, rho))
        return tuple(self.ell * g + s - r for g, s, r in zip(x.gamma, shifted, rho))

    def is_singular(self, lam) -> Optional[Singular]:
        """A wall ``(β, m)`` containing ``lam``, or ``None`` if ``lam`` is ℓ-regular."""
        for k, v in enumerate(self.rs.pairings(add(lam, self.rs.rho))):
            if v % self.ell == 0:
                return Singular(k, v // self.ell)
        return None

    def is_regular(self, lam) -> bool:
        return self.is_singular(lam) is None

    def in_fundamental_alcove(self, lam) -> bool:
        return all(0 < v < self.ell for v in self.rs.pairings(add(lam, self.rs.rho)))

    def in_closed_fundamental_alcove(self, lam) -> bool:
        return all(0 <= v <= self.ell for v in self.rs.pairings(add(lam, self.rs.rho)))

    @cached_property
    def fundamental_weights_in_alcove(self) -> Tuple[Weight, ...]:
        """``C_fund ∩ X`` in lexicographic order."""
        bound = self.ell - self._h  # (λ, α_h^∨) ≤ ℓ − h for λ ∈ C_fund ∩ X
        coroot = self.rs.coroots[self.rs.highest_short_root_index]
        out = []

        def rec(prefix, budget):
            i = len(prefix)
            if i == self.rank:
                out.append(tuple(prefix))
                return
            c = coroot[i]
            for v in range(budget // c + 1):
                rec(prefix + [v], budget - c * v)

        rec([], bound)
        out = [lam for lam in out if self.in_fundamental_alcove(lam)]
        return tuple(sorted(out))

    def separating_walls(self, lam) -> int:
        """Walls separating a regular weight from ``C_fund``."""
        ell = self.ell
        return sum(abs(v // ell) for v in self.rs.pairings(add(lam, self.rs.rho)))

    def _interior_pairings(self, x: ExtAffineElement) -> List[int]:
        # h·(x·p + ρ, β^∨) for the interior point p = (ℓ/h − 1)ρ of C_fund
        rs, ell, h = self.rs, self.ell, self._h
        wrho = x.w(rs.rho)
        return [ell * h * sum(c * g for c, g in zip(cr, x.gamma)) + ell * sum(c * r for c, r in zip(cr, wrho))
                for cr in rs.coroots]

    def length(self, x: ExtAffineElement) -> int:
        """Number of walls separating ``C_fund`` from ``x·C_fund``."""
        scale_ = self.ell * self._h
        return sum(abs(v // scale_) for v in self._interior_pairings(x))

    def alcove_is_dominant(self, x: ExtAffineElement) -> bool:
        vals = self._interior_pairings(x)
        return all(vals[i] > 0 for i in range(self.rank))

    def in_affine_weyl_group(self, x: ExtAffineElement) -> bool:
        return self.rs.in_root_lattice(x.gamma)

    def sign(self, x: ExtAffineElement) -> int:
        if not self.in_affine_weyl_group(x):
            raise AlcoveError("sign is only defined on W_aff")
        return x.w.det

    # reduction to the fundamental alcove --------------------------------------
    def _walk(self, tau, track: bool, closed: bool = False):
        """Reflect ``tau`` into the (closed) fundamental alcove.

        Returns the final weight, the number of reflections, and (if ``track``)
        the accumulated element ``y`` with ``y·tau`` equal to the final weight.
        """
        rs, ell = self.rs, self.ell
        rho = rs.rho
        p = list(add(tau, rho))
        coroots = rs.coroots
        roots = rs.positive_roots
        y = self.identity if track else None
        steps = 0
        while True:
            for k, cr in enumerate(coroots):
                v = sum(c * x for c, x in zip(cr, p))
                if v < 0 or v > ell or (not closed and (v == 0 or v == ell)):
                    break
            else:
                return tuple(a - r for a, r in zip(p, rho)), steps, y
            # nearest wall of this root strictly between p and C_fund
            m = (v - 1) // ell if v > ell else v // ell + 1
            d = v - ell * m
            p = [a - d * r for a, r in zip(p, roots[k])]
            steps += 1
            if track:
                y = ExtAffineElement(scale(m, roots[k]), self.finite_reflection(k)) * y

    def reduce(self, tau) -> ReductionResult:
        """Either a wall through ``tau`` or ``(x, λ, sign, length)`` with ``x·λ = tau``."""
        tau = tuple(tau)
        wall = self.is_singular(tau)
        if wall is not None:
            return wall
        lam, _, y = self._walk(tau, track=True)
        x = y.inverse()
        return Regular(x, lam, x.w.det, self.separating_walls(tau))

    def fundamental_label(self, tau) -> Optional[Tuple[Weight, int]]:
        """``(λ, sign)`` of the reduction of ``tau``, or ``None`` if singular (fast path)."""
        rs, ell = self.rs, self.ell
        p = [a + 1 for a in tau]
        coroots = rs.coroots
        roots = rs.positive_roots
        sign = 1
        while True:
            for k, cr in enumerate(coroots):
                v = 0
                for c, x in zip(cr, p):
                    v += c * x
                if v % ell == 0:
                    return None
                if v < 0 or v > ell:
                    break
            else:
                return tuple(a - 1 for a in p), sign
            d = v - ell * (v // ell)
            if v < 0:
                d = v - ell * (v // ell + 1)
            p = [a - d * r for a, r in zip(p, roots[k])]
            sign = -sign

    def closure_representative(self, tau) -> Weight:
        """The unique weight of ``C̄_fund`` in the dot-orbit of ``tau``."""
        lam, _, _ = self._walk(tuple(tau), track=False, closed=True)
        return lam

    # the fundamental group Ω ------------------------------------------------
    def class_label(self, gamma) -> Tuple[int, ...]:
        return self.rs.root_lattice_quotient.label(gamma)

    @cached_property
    def omega_group(self) -> Tuple[OmegaElement, ...]:
        rs = self.rs
        reps: Dict[Tuple[int, ...], Weight] = {self.class_label((0,) * self.rank): (0,) * self.rank}
        for fw in rs.fundamental_weights:
            reps.setdefault(self.class_label(fw), fw)
        frontier = list(reps.values())
        while len(reps) < rs.fundamental_group_order:
            frontier = [add(g, fw) for g in frontier for fw in rs.fundamental_weights]
            for g in frontier:
                reps.setdefault(self.class_label(g), g)
        out = []
        for idx, (label, gamma) in enumerate(reps.items()):
            t = self.translation(gamma)
            red = self.reduce(scale(self.ell, gamma))  # t_γ·0
            omega = red.x.inverse() * t
            if self.length(omega) != 0:
                raise AlcoveError("Ω representative has positive length")
            out.append(OmegaElement(omega, label, idx, self.dot_act(omega, (0,) * self.rank)))
        return tuple(out)

    def omega_of(self, x: ExtAffineElement) -> OmegaElement:
        label = self.class_label(x.gamma)
        for om in self.omega_group:
            if om.class_index == label:
                return om
        raise AlcoveError("no Ω element for class")  # pragma: no cover

    def omega_by_name(self, name: str) -> OmegaElement:
        for om in self.omega_group:
            if om.name == name:
                return om
        raise AlcoveError(f"unknown Ω element {name!r}")

    def omega_act(self, omega: OmegaElement, lam) -> Weight:
        return self.dot_act(omega.elem, lam)

    # W_aff⁺ ----------------------------------------------------------------------
    def enumerate_dominant(self, max_len: int, extended: bool = False) -> List[ExtAffineElement]:
        """Elements of W_aff⁺ (or W_ext⁺) of length ≤ ``max_len`` in BFS order."""
        if max_len < 0:
            raise AlcoveError("max_len must be nonnegative")
        gens = self.simple_reflections
        seen = {self.identity.key}
        out = [self.identity]
        frontier = [self.identity]
        for length in range(1, max_len + 1):
            nxt = []
            for x in frontier:
                for s in gens:
                    y = x * s
                    if y.key in seen:
                        continue
                    if self.length(y) == length and self.alcove_is_dominant(y):
                        seen.add(y.key)
                        nxt.append(y)
            out.extend(nxt)
            frontier = nxt
        if extended:
            return [x * om.elem for x in out for om in self.omega_group]
        return out

    def bfs_lengths(self, max_len: int) -> List[Tuple[ExtAffineElement, int]]:
        """All W_aff elements of word length ≤ ``max_len`` with that length (breadth-first oracle)."""
        seen = {self.identity.key}
        out = [(self.identity, 0)]
        frontier = [self.identity]
        for d in range(1, max_len + 1):
            nxt = []
            for x in frontier:
                for s in self.simple_reflections:
                    y = x * s
                    if y.key not in seen:
                        seen.add(y.key)
                        nxt.append(y)
            out.extend((y, d) for y in nxt)
            frontier = nxt
        return out

    def reduced_word(self, x: ExtAffineElement) -> str:
        """A reduced word of ``x`` (with a trailing Ω factor like ``w1`` if needed)."""
        omega = self.omega_of(x)
        y = x * omega.elem.inverse()
        letters = []
        n = self.length(y)
        while n:
            for i, s in enumerate(self.simple_reflections):
                z = y * s
                if self.length(z) < n:
                    letters.append(i)
                    y, n = z, n - 1
                    break
            else:  # pragma: no cover
                raise AlcoveError("no descent found")
        word = "".join(f"s{i}" for i in reversed(letters))
        if not omega.is_identity:
            word += omega.name
        return word or "e"

    def weight_to_xlambda(self, tau, prefer_principal: bool = False) -> Tuple[ExtAffineElement, Weight]:
        """Factor a dominant regular weight as ``x·λ`` with ``x ∈ W_ext⁺``, ``λ ∈ C_fund``.

        By default ``x`` is the W_aff⁺ element from :meth:`reduce`.  With
        ``prefer_principal`` and ``λ ∈ Ω·0``, the factorization ``(x ω, 0)`` is
        returned instead.
        """
        tau = tuple(tau)
        if not self.rs.is_dominant(tau):
            raise AlcoveError(f"{tau} is not dominant")
        red = self.reduce(tau)
        if not red.is_regular:
            raise AlcoveError(f"{tau} is ℓ-singular")
        if prefer_principal:
            for om in self.omega_group:
                if om.zero_image == red.lam:
                    return red.x * om.elem, (0,) * self.rank
        return red.x, red.lam


def context(family: str, rank: int, ell: int) -> EllContext:
    return EllContext(build(family, rank), ell)


def words(ctx: EllContext, elements: Iterable[ExtAffineElement]) -> List[str]:
    return [ctx.reduced_word(x) for x in elements]
