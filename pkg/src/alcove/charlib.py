"""Weyl module characters: Freudenthal multiplicities, Weyl dimensions, Klimyk products."""

from __future__ import annotations

import threading
from collections import defaultdict
from dataclasses import dataclass
from operator import add as add_
from typing import Dict, Iterator, List, Tuple

from .rootsys import RootSystem, Weight, sub

MAX_DIMENSION = 10**7

CharacterVector = Dict[Weight, int]


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class WeightMultiplicityTable:
    rs: RootSystem
    highest: Weight
    mults: Dict[Weight, int]

    def mult_at(self, eta) -> int:
        dom, _ = self.rs.dominant_representative(eta)
        return self.mults.get(dom, 0)

    def weights(self) -> Iterator[Tuple[Weight, int]]:
        """All weights of the module with their multiplicities."""
        for mu, m in self.mults.items():
            for eta in self.rs.orbit(mu):
                yield eta, m

    @property
    def dimension(self) -> int:
        return sum(m * len(self.rs.orbit(mu)) for mu, m in self.mults.items())


def _require_dominant(rs: RootSystem, lam) -> Weight:
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise CharacterError(f"weight {lam} has wrong length for {rs.name}")
    if not rs.is_dominant(lam):
        raise CharacterError(f"{lam} is not dominant")
    return lam


def _dominant_below(rs: RootSystem, lam: Weight) -> List[Tuple[Weight, Tuple[int, ...]]]:
    """Pairs ``(μ, root coordinates of λ − μ)`` for dominant μ ≤ λ, by increasing depth."""
    found = {lam: (0,) * rs.rank}
    order = [lam]
    steps = list(zip(rs.positive_roots, rs.positive_roots_root_coords))
    i = 0
    while i < len(order):
        mu = order[i]
        i += 1
        rc_mu = found[mu]
        for beta, beta_rc in steps:
            nu = tuple(x - y for x, y in zip(mu, beta))
            if nu not in found and min(nu) >= 0:
                found[nu] = tuple(map(add_, rc_mu, beta_rc))
                order.append(nu)
    order.sort(key=lambda mu: (sum(found[mu]), tuple(-x for x in mu)))
    return [(mu, found[mu]) for mu in order]


def dominant_below(rs: RootSystem, lam) -> List[Weight]:
    """Dominant weights μ ≤ λ, in order of increasing depth ``λ − μ``."""
    lam = _require_dominant(rs, lam)
    return [mu for mu, _ in _dominant_below(rs, lam)]


def weyl_dim(rs: RootSystem, lam) -> int:
    lam = _require_dominant(rs, lam)
    num = den = 1
    for k in range(rs.num_positive_roots):
        num *= rs.pair(lam, k) + rs.pair(rs.rho, k)
        den *= rs.pair(rs.rho, k)
    return num // den


_cache: Dict[Tuple[object, Weight], WeightMultiplicityTable] = {}
_dom_cache: Dict[object, Dict[Weight, Weight]] = defaultdict(dict)
_lock = threading.Lock()


def _dominant_weight(simple_roots, eta: Weight) -> Weight:
    """Dominant weight in the W_fin-orbit of ``eta`` (no group element tracked)."""
    lam = list(eta)
    n = len(lam)
    i = 0
    while i < n:
        x = lam[i]
        if x < 0:
            root = simple_roots[i]
            for j in range(n):
                lam[j] -= x * root[j]
            i = 0
        else:
            i += 1
    return tuple(lam)


def freudenthal(rs: RootSystem, lam) -> WeightMultiplicityTable:
    """Dominant weight multiplicities of the Weyl module of highest weight ``lam``.

    Tables are cached per ``(root system, λ)``; highest weights with
    dimension above ``MAX_DIMENSION`` are rejected.
    """
    lam = _require_dominant(rs, lam)
    key = (rs.spec, lam)
    table = _cache.get(key)
    if table is not None:
        return table
    if weyl_dim(rs, lam) > MAX_DIMENSION:
        raise CharacterError(f"dimension of {lam} exceeds {MAX_DIMENSION}")
    table = WeightMultiplicityTable(rs, lam, _freudenthal(rs, lam))
    with _lock:
        return _cache.setdefault(key, table)


def _freudenthal(rs: RootSystem, lam: Weight) -> Dict[Weight, int]:
    # (λ+ρ|λ+ρ) − (μ+ρ|μ+ρ) = (λ−μ | λ+μ+2ρ), with λ−μ in the root lattice;
    # 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) (μ+kα | α), where (μ+kα | α) = (μ|α) + k(α|α)
    half = rs._half_norms
    simple = rs.simple_roots
    roots = [
        (alpha, tuple(c * d for c, d in zip(rc, half)), rs.root_length(k))
        for k, (alpha, rc) in enumerate(zip(rs.positive_roots, rs.positive_roots_root_coords))
    ]
    memo = _dom_cache[rs.spec]
    mults: Dict[Weight, int] = {}
    for mu, diff in _dominant_below(rs, lam):
        if mu == lam:
            mults[mu] = 1
            continue
        denom = sum(c * (l + m + 2) * d for c, l, m, d in zip(diff, lam, mu, half))
        acc = 0
        for alpha, ad, norm in roots:
            inner = sum(x * y for x, y in zip(ad, mu))
            t = mu
            while True:
                t = tuple(map(add_, t, alpha))
                inner += norm
                dom = memo.get(t)
                if dom is None:
                    dom = memo[t] = _dominant_weight(simple, t)
                m = mults.get(dom)
                if not m:
                    break
                acc += m * inner
        value, rem = divmod(2 * acc, denom)
        if rem:  # pragma: no cover
            raise CharacterError(f"non-integral multiplicity at {mu}")
        if value:
            mults[mu] = value
    return mults


def clear_caches() -> None:
    """Forget all cached multiplicity tables (used to time cold runs)."""
    with _lock:
        _cache.clear()
        _dom_cache.clear()


def mult_at(table: WeightMultiplicityTable, eta) -> int:
    return table.mult_at(eta)


def klimyk_tensor(rs: RootSystem, lam, mu) -> CharacterVector:
    """Decompose ``ch Δ(λ) · ch Δ(μ)`` into Weyl characters (Brauer–Klimyk)."""
    lam = _require_dominant(rs, lam)
    mu = _require_dominant(rs, mu)
    out: Dict[Weight, int] = defaultdict(int)
    rho = rs.rho
    for eta, m in freudenthal(rs, lam).weights():
        shifted = tuple(e + u + 1 for e, u in zip(eta, mu))
        if any(v == 0 for v in rs.pairings(shifted)):
            continue
        dom, w = rs.dominant_representative(shifted)
        out[sub(dom, rho)] += m * w.det
    return {k: v for k, v in sorted(out.items()) if v}


def character_product(rs: RootSystem, a: CharacterVector, b: CharacterVector) -> CharacterVector:
    out: Dict[Weight, int] = defaultdict(int)
    for lam, x in a.items():
        for mu, y in b.items():
            for tau, n in klimyk_tensor(rs, lam, mu).items():
                out[tau] += x * y * n
    return {k: v for k, v in sorted(out.items()) if v}


def character_dimension(rs: RootSystem, chi: CharacterVector) -> int:
    return sum(n * weyl_dim(rs, tau) for tau, n in chi.items())


__all__ = [
    "CharacterError",
    "CharacterVector",
    "WeightMultiplicityTable",
    "character_dimension",
    "character_product",
    "clear_caches",
    "dominant_below",
    "freudenthal",
    "klimyk_tensor",
    "mult_at",
    "weyl_dim",
]
