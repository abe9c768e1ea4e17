"""Verlinde fusion coefficients, negligibility, and persisted fusion tables.

``c_{λ,μ}^ν = Σ_{x ∈ W_aff} (−1)^{ℓ(x)} dim Δ(λ)_{x·ν − μ}`` is evaluated by
running over the (finitely many) weights η of Δ(λ) and reducing ``η + μ`` to
the fundamental alcove.  A second, independent route decomposes the classical
tensor product with Brauer–Klimyk first and reduces each Weyl factor.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .affweyl import EllContext
from .charlib import freudenthal, klimyk_tensor
from .rootsys import Weight, add

CACHE_ENV = "ALCOVE_CACHE"

Row = Dict[Weight, int]


class FusionError(ValueError):
    pass


class CacheError(FusionError):
    pass


def lacing_number(ctx: EllContext) -> int:
    """Ratio of squared lengths of long and short roots (1 for simply-laced types)."""
    return max(ctx.rs.root_norms) // min(ctx.rs.root_norms)


def require_admissible(ctx: EllContext) -> None:
    """Fusion needs ℓ prime to the lacing number (ℓ odd for B, C, F; prime to 3 for G)."""
    d = lacing_number(ctx)
    if math.gcd(ctx.ell, d) != 1:
        raise FusionError(f"ell={ctx.ell} must be prime to the lacing number {d} of {ctx.rs.name}")


def _alcove_weight(ctx: EllContext, lam, what: str = "weight") -> Weight:
    require_admissible(ctx)
    lam = tuple(lam)
    if len(lam) != ctx.rank:
        raise FusionError(f"{what} {lam} has wrong length for {ctx.rs.name}")
    if not ctx.in_fundamental_alcove(lam) or not ctx.rs.is_dominant(lam):
        raise FusionError(f"{what} {lam} is not in the fundamental alcove at ell={ctx.ell}")
    return lam


def negligible(ctx: EllContext, nu) -> bool:
    """Whether the indecomposable tilting module T(ν) is negligible."""
    nu = tuple(nu)
    if not ctx.rs.is_dominant(nu):
        raise FusionError(f"{nu} is not dominant")
    return not ctx.in_fundamental_alcove(nu)


def _row_from_weights(ctx: EllContext, lam: Weight, mu: Weight) -> Row:
    out: Dict[Weight, int] = defaultdict(int)
    for eta, m in freudenthal(ctx.rs, lam).weights():
        label = ctx.fundamental_label(add(eta, mu))
        if label is not None:
            nu, sign = label
            out[nu] += sign * m
    return dict(out)


def _checked_row(raw: Row, lam: Weight, mu: Weight) -> Row:
    row = {}
    for nu in sorted(raw):
        c = raw[nu]
        if c < 0:
            raise FusionError(f"negative fusion coefficient {c} at {lam}⊗{mu}→{nu}")
        if c:
            row[nu] = c
    return row


def fusion_row(ctx: EllContext, lam, mu) -> Row:
    """All nonzero ``c_{λ,μ}^ν``, ordered lexicographically in ν."""
    lam = _alcove_weight(ctx, lam, "λ")
    mu = _alcove_weight(ctx, mu, "μ")
    return _checked_row(_row_from_weights(ctx, lam, mu), lam, mu)


def fusion_coeff(ctx: EllContext, lam, mu, nu) -> int:
    """``c_{λ,μ}^ν`` by the alternating sum over weights of Δ(λ)."""
    nu = _alcove_weight(ctx, nu, "ν")
    return fusion_row(ctx, lam, mu).get(nu, 0)


def fusion_row_racah(ctx: EllContext, lam, mu) -> Row:
    """Fusion row via the classical Klimyk decomposition followed by reduction."""
    lam = _alcove_weight(ctx, lam, "λ")
    mu = _alcove_weight(ctx, mu, "μ")
    out: Dict[Weight, int] = defaultdict(int)
    for tau, n in klimyk_tensor(ctx.rs, lam, mu).items():
        label = ctx.fundamental_label(tau)
        if label is not None:
            nu, sign = label
            out[nu] += sign * n
    return _checked_row(out, lam, mu)


def fusion_coeff_racah(ctx: EllContext, lam, mu, nu) -> int:
    nu = _alcove_weight(ctx, nu, "ν")
    return fusion_row_racah(ctx, lam, mu).get(nu, 0)


def verify_nonvanishing(ctx: EllContext, lam, mu) -> Tuple[Weight, int]:
    """``ν = dom(w₀λ + μ)`` lies in the fundamental alcove and ``c_{λ,μ}^ν ≥ 1``."""
    lam = _alcove_weight(ctx, lam, "λ")
    mu = _alcove_weight(ctx, mu, "μ")
    nu, _ = ctx.rs.dominant_representative(add(ctx.rs.w0_image(lam), mu))
    assert ctx.in_fundamental_alcove(nu), f"{nu} left the fundamental alcove"
    c = fusion_coeff(ctx, lam, mu, nu)
    assert c >= 1, f"c_{{{lam},{mu}}}^{nu} vanishes"
    return nu, c


# ---------------------------------------------------------------------------
# tables


@dataclass
class FusionTable:
    family: str
    rank: int
    ell: int
    entries: Dict[Tuple[Weight, Weight], Row] = field(default_factory=dict)

    @property
    def weights(self) -> List[Weight]:
        return sorted({lam for lam, _ in self.entries})

    def row(self, lam, mu) -> Row:
        try:
            return self.entries[(tuple(lam), tuple(mu))]
        except KeyError:
            raise FusionError(f"no table entry for {tuple(lam)}⊗{tuple(mu)}") from None

    def coeff(self, lam, mu, nu) -> int:
        return self.row(lam, mu).get(tuple(nu), 0)

    # serialization ------------------------------------------------------
    def _payload(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "ell": self.ell,
            "entries": [
                {"l": list(lam), "m": list(mu),
                 "out": [{"n": list(nu), "c": c} for nu, c in sorted(row.items())]}
                for (lam, mu), row in sorted(self.entries.items())
            ],
        }

    @staticmethod
    def _canonical(obj) -> str:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self._canonical(self._payload()).encode("utf-8")).hexdigest()

    def to_json(self) -> str:
        """Canonical serialization with the digest of the rest appended as the last field."""
        body = self._canonical(self._payload())
        digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
        return f'{body[:-1]},"digest":"{digest}"}}'

    @classmethod
    def from_json(cls, text: str) -> "FusionTable":
        try:
            data = json.loads(text)
            stored = data.pop("digest")
            table = cls(data["family"], data["rank"], data["ell"])
            for entry in data["entries"]:
                table.entries[(tuple(entry["l"]), tuple(entry["m"]))] = {
                    tuple(o["n"]): o["c"] for o in entry["out"]}
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheError(f"malformed fusion table: {exc}") from exc
        if table.digest != stored:
            raise CacheError("fusion table digest mismatch")
        return table


def build_table(ctx: EllContext) -> FusionTable:
    """Every row ``λ ⊗ μ`` over the fundamental alcove (symmetric pairs computed once)."""
    require_admissible(ctx)
    weights = ctx.fundamental_weights_in_alcove
    table = FusionTable(ctx.rs.family, ctx.rank, ctx.ell)
    for i, lam in enumerate(weights):
        for mu in weights[i:]:
            row = fusion_row(ctx, lam, mu)
            table.entries[(lam, mu)] = row
            table.entries[(mu, lam)] = row
    table.entries = dict(sorted(table.entries.items()))
    return table


def cache_dir(explicit: Optional[Union[str, os.PathLike]] = None) -> Optional[Path]:
    """The explicit directory, else ``$ALCOVE_CACHE``, else ``None``."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def cache_path(ctx: EllContext, directory: Union[str, os.PathLike]) -> Path:
    return Path(directory) / f"{ctx.rs.family}{ctx.rank}_ell{ctx.ell}.json"


def load_table(ctx: EllContext, directory: Union[str, os.PathLike]) -> Optional[FusionTable]:
    path = cache_path(ctx, directory)
    if not path.exists():
        return None
    table = FusionTable.from_json(path.read_text(encoding="utf-8"))
    if (table.family, table.rank, table.ell) != (ctx.rs.family, ctx.rank, ctx.ell):
        raise CacheError(f"{path} holds a table for a different root system or ell")
    return table


def store_table(table: FusionTable, ctx: EllContext, directory: Union[str, os.PathLike]) -> Path:
    """Write the table once; an existing file must carry the same digest."""
    path = cache_path(ctx, directory)
    if path.exists():
        existing = load_table(ctx, directory)
        if existing.digest != table.digest:
            raise CacheError(f"{path} exists with a different digest")
        return path
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(table.to_json())
    os.replace(tmp, path)
    return path


def get_table(ctx: EllContext, directory: Optional[Union[str, os.PathLike]] = None) -> FusionTable:
    """Load the cached table if present, otherwise build (and cache if a directory is known)."""
    directory = cache_dir(directory)
    if directory is not None:
        table = load_table(ctx, directory)
        if table is not None:
            return table
    table = build_table(ctx)
    if directory is not None:
        store_table(table, ctx, directory)
    return table


# ---------------------------------------------------------------------------
# structural checks; each returns the first counterexample or ``None``


def check_ring_axioms(table: FusionTable) -> Optional[str]:
    weights = table.weights
    zero = (0,) * table.rank
    for lam in weights:
        if table.row(zero, lam) != {lam: 1}:
            return f"unit: 0⊗{lam} gives {table.row(zero, lam)}"
        for mu in weights:
            if table.row(lam, mu) != table.row(mu, lam):
                return f"commutativity fails at {lam},{mu}"
    for lam in weights:
        for mu in weights:
            left_row = table.row(lam, mu)
            for nu in weights:
                right_row = table.row(mu, nu)
                left: Dict[Weight, int] = defaultdict(int)
                for sigma, c in left_row.items():
                    for tau, d in table.row(sigma, nu).items():
                        left[tau] += c * d
                right: Dict[Weight, int] = defaultdict(int)
                for sigma, c in right_row.items():
                    for tau, d in table.row(lam, sigma).items():
                        right[tau] += c * d
                if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                    return f"associativity fails at {lam},{mu},{nu}"
    return None


def check_omega_equivariance(ctx: EllContext, table: FusionTable) -> Optional[str]:
    weights = table.weights
    for om in ctx.omega_group:
        for lam in weights:
            if table.row(lam, om.zero_image) != {ctx.omega_act(om, lam): 1}:
                return f"{lam}⊗{om.name}·0 is not {om.name}·{lam}"
            for mu in weights:
                om_mu = ctx.omega_act(om, mu)
                for nu in weights:
                    if table.coeff(lam, om_mu, ctx.omega_act(om, nu)) != table.coeff(lam, mu, nu):
                        return f"Ω-equivariance fails at {lam},{mu},{nu} with {om.name}"
    return None


def check_nonvanishing(ctx: EllContext, table: FusionTable) -> Optional[str]:
    for lam in table.weights:
        for mu in table.weights:
            nu, _ = ctx.rs.dominant_representative(add(ctx.rs.w0_image(lam), mu))
            if not ctx.in_fundamental_alcove(nu) or table.coeff(lam, mu, nu) < 1:
                return f"nonvanishing fails at {lam},{mu} (ν={nu})"
    return None


def check_two_formulas(ctx: EllContext, weights: Optional[Iterable[Weight]] = None) -> Optional[str]:
    weights = list(weights or ctx.fundamental_weights_in_alcove)
    for lam in weights:
        for mu in weights:
            a = fusion_row(ctx, lam, mu)
            b = fusion_row_racah(ctx, lam, mu)
            if a != b:
                return f"formulas disagree at {lam}⊗{mu}: {a} vs {b}"
    return None


__all__ = [
    "CACHE_ENV",
    "CacheError",
    "FusionError",
    "FusionTable",
    "build_table",
    "cache_dir",
    "cache_path",
    "check_nonvanishing",
    "check_omega_equivariance",
    "check_ring_axioms",
    "check_two_formulas",
    "fusion_coeff",
    "fusion_coeff_racah",
    "fusion_row",
    "fusion_row_racah",
    "get_table",
    "lacing_number",
    "load_table",
    "negligible",
    "require_admissible",
    "store_table",
    "verify_nonvanishing",
]
