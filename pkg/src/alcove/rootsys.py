"""Root system data for the simple types, in fundamental-weight coordinates.

Weights are integer tuples ``(λ_1, ..., λ_n)`` with ``λ_i = (λ, α_i^∨)``.
The bilinear form is never evaluated on weights directly; all geometry goes
through coroot pairings, which are integers.  Row ``i`` of the Cartan matrix
is the simple root ``α_i`` written in these coordinates, so
``cartan[i][j] = (α_i, α_j^∨)``.  Simple roots are numbered as in Bourbaki.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Tuple

from .lattice import LatticeQuotient

Weight = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"E": 8, "F": 4, "G": 2}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam not in _MIN_RANK:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < _MIN_RANK[fam]:
            raise RootSystemError(f"rank {self.rank!r} not admissible for type {fam}")
        if fam in _MAX_RANK and self.rank > _MAX_RANK[fam]:
            raise RootSystemError(f"rank {self.rank!r} not admissible for type {fam}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_matrix(spec: RootSystemSpec) -> IntMatrix:
    n, fam = spec.rank, spec.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B":  # α_n short
            link(n - 2, n - 1, -2, -1)
        elif fam == "C":  # α_n long
            link(n - 2, n - 1, -1, -2)
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif fam == "G":  # α_1 short, α_2 long
        link(0, 1, -1, -3)
    return tuple(tuple(row) for row in a)


def _matvec(m: IntMatrix, v) -> Weight:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def _det(m: IntMatrix) -> int:
    # Bareiss fraction-free elimination
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class FiniteWeylElement:
    """An element of W_fin as an integer matrix acting on ϖ-coordinates."""

    matrix: IntMatrix
    det: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.det:
            object.__setattr__(self, "det", _det(self.matrix))

    @classmethod
    def identity(cls, n: int) -> "FiniteWeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)

    def __call__(self, weight) -> Weight:
        return _matvec(self.matrix, weight)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(_matmul(self.matrix, other.matrix), self.det * other.det)

    def inverse(self) -> "FiniteWeylElement":
        # W_fin is finite, so the inverse is a power; orders are small
        power = self
        while True:
            nxt = power * self
            if nxt.is_identity():
                return power
            power = nxt

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(len(self.matrix))
                   for j in range(len(self.matrix)))


class RootSystem:
    """Immutable root datum of one simple type.

    Build instances with :func:`build`; they are cached per type.
    """

    def __init__(self, spec: RootSystemSpec):
        self.spec = spec
        self.family = spec.family
        self.rank = n = spec.rank
        self.cartan: IntMatrix = cartan_matrix(spec)
        a = self.cartan

        # squared lengths of simple roots, short roots normalized to 2
        norms = [None] * n
        norms[0] = 1
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] and norms[j] is None:
                    # (α_i, α_j) is symmetric: a_ij |α_j|^2 = a_ji |α_i|^2
                    norms[j] = norms[i] * a[j][i] / a[i][j]
                    stack.append(j)
        short = min(norms)
        self.root_norms: Tuple[int, ...] = tuple(int(round(2 * x / short)) for x in norms)
        # (ϖ-weight ν, simple root α_j) = ν_j * d_j
        self._half_norms = tuple(x // 2 for x in self.root_norms)

        self.positive_roots_root_coords: Tuple[Weight, ...] = self._generate_positive_roots()
        self.positive_roots: Tuple[Weight, ...] = tuple(
            tuple(sum(c * a[i][j] for i, c in enumerate(beta)) for j in range(n))
            for beta in self.positive_roots_root_coords
        )
        self.coroots: Tuple[Weight, ...] = tuple(
            self._coroot_expansion(b, bw)
            for b, bw in zip(self.positive_roots_root_coords, self.positive_roots)
        )
        self._root_index: Dict[Weight, int] = {r: i for i, r in enumerate(self.positive_roots)}
        self.rho: Weight = (1,) * n
        self.fundamental_weights: Tuple[Weight, ...] = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n))
        self.simple_roots: Tuple[Weight, ...] = tuple(tuple(r) for r in a)

        heights = [sum(b) for b in self.positive_roots_root_coords]
        self.highest_root_index = max(range(len(heights)), key=lambda k: (heights[k], -k))
        self.highest_root: Weight = self.positive_roots[self.highest_root_index]
        short_len = min(self.root_length(k) for k in range(len(heights)))
        shorts = [k for k in range(len(heights)) if self.root_length(k) == short_len]
        self.highest_short_root_index = max(shorts, key=lambda k: (heights[k], -k))
        self.highest_short_root: Weight = self.positive_roots[self.highest_short_root_index]
        self.coxeter_number: int = self.pair(self.rho, self.highest_short_root_index) + 1
        self.fundamental_group_order: int = abs(_det(a))

        self.simple_reflections: Tuple[FiniteWeylElement, ...] = tuple(
            FiniteWeylElement(tuple(
                tuple(int(j == k) - (a[i][j] if k == i else 0) for k in range(n))
                for j in range(n)), -1)
            for i in range(n)
        )
        self.identity = FiniteWeylElement.identity(n)

    # construction helpers -------------------------------------------------
    def _generate_positive_roots(self) -> Tuple[Weight, ...]:
        n, a = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    pairing = sum(c * a[j][i] for j, c in enumerate(beta))
                    if pairing == 0:
                        continue
                    image = tuple(c - pairing * int(j == i) for j, c in enumerate(beta))
                    if all(c >= 0 for c in image) and image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return tuple(sorted(seen, key=lambda b: (sum(b), tuple(-c for c in b))))

    def _coroot_expansion(self, beta: Weight, beta_w: Weight) -> Weight:
        d = self._half_norms
        twice_norm = sum(c * beta_w[j] * d[j] for j, c in enumerate(beta))  # (β,β)
        d_beta = twice_norm // 2
        coeffs = []
        for j, c in enumerate(beta):
            num = c * d[j]
            if num % d_beta:
                raise RootSystemError("non-integral coroot expansion")
            coeffs.append(num // d_beta)
        return tuple(coeffs)

    # basic queries -----------------------------------------------------------
    @property
    def name(self) -> str:
        return self.spec.name

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __reduce__(self):
        return (build, (self.spec,))

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def root_length(self, index: int) -> int:
        """Squared length of the positive root with this index (short roots: 2)."""
        beta = self.positive_roots_root_coords[index]
        return sum(c * self.positive_roots[index][j] * self._half_norms[j]
                   for j, c in enumerate(beta))

    def root_index(self, root: Weight) -> int:
        return self._root_index[tuple(root)]

    def is_simply_laced(self) -> bool:
        return len(set(self.root_norms)) == 1

    def pair(self, weight, beta: int) -> int:
        """The coroot pairing ``(weight, β^∨)`` for the positive root with index ``beta``."""
        if not 0 <= beta < len(self.coroots):
            raise IndexError(f"positive root index {beta} out of range")
        return sum(c * x for c, x in zip(self.coroots[beta], weight))

    def pairings(self, weight) -> Tuple[int, ...]:
        return tuple(sum(c * x for c, x in zip(cr, weight)) for cr in self.coroots)

    def inner_with_root(self, weight, beta: int) -> int:
        """``(weight, β)`` in the normalization where short roots have squared length 2."""
        b = self.positive_roots_root_coords[beta]
        return sum(c * weight[j] * self._half_norms[j] for j, c in enumerate(b))

    def inner_with_root_lattice(self, weight, root_coords) -> int:
        """``(weight, γ)`` for ``γ = Σ c_j α_j`` given by its root coordinates."""
        return sum(c * weight[j] * self._half_norms[j] for j, c in enumerate(root_coords))

    def to_root_coords(self, weight):
        """Rational root coordinates of ``weight`` (``None`` if not in the root lattice)."""
        from fractions import Fraction

        n, a = self.rank, self.cartan
        # solve c · A = weight
        m = [[Fraction(a[i][j]) for i in range(n)] + [Fraction(weight[j])] for j in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col] / m[col][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        sol = [m[i][n] / m[i][i] for i in range(n)]
        if all(x.denominator == 1 for x in sol):
            return tuple(int(x) for x in sol)
        return None

    @cached_property
    def root_lattice_quotient(self) -> LatticeQuotient:
        return LatticeQuotient(self.cartan)

    def in_root_lattice(self, weight) -> bool:
        return self.root_lattice_quotient.contains(weight)

    def is_dominant(self, weight) -> bool:
        return all(x >= 0 for x in weight)

    def reflect(self, weight, beta: int) -> Weight:
        """The reflection ``s_β`` applied to ``weight`` (linear action)."""
        p = self.pair(weight, beta)
        return tuple(x - p * r for x, r in zip(weight, self.positive_roots[beta]))

    def is_positive_root(self, vec) -> bool:
        return tuple(vec) in self._root_index

    def is_root(self, vec) -> bool:
        vec = tuple(vec)
        return vec in self._root_index or tuple(-x for x in vec) in self._root_index

    # Weyl group --------------------------------------------------------------
    def dominant_representative(self, weight) -> Tuple[Weight, FiniteWeylElement]:
        """Dominant weight in the W_fin-orbit of ``weight`` and ``w`` with ``w(weight)`` equal to it."""
        w = self.identity
        lam = tuple(weight)
        while True:
            for i, x in enumerate(lam):
                if x < 0:
                    s = self.simple_reflections[i]
                    lam = s(lam)
                    w = s * w
                    break
            else:
                return lam, w

    def inversion_count(self, w: FiniteWeylElement) -> int:
        """Number of positive roots sent to negative roots by ``w``."""
        return sum(1 for r in self.positive_roots if not self.is_positive_root(w(r)))

    @cached_property
    def longest_element(self) -> FiniteWeylElement:
        w = self.identity
        while True:
            for i, s in enumerate(self.simple_reflections):
                if self.is_positive_root(w(self.simple_roots[i])):
                    w = w * s
                    break
            else:
                return w

    def w0_image(self, weight) -> Weight:
        return self.longest_element(weight)

    def orbit(self, weight) -> List[Weight]:
        return list(_orbit(self.spec, tuple(weight)))

    def weyl_group(self) -> List[FiniteWeylElement]:
        """All elements of W_fin (BFS over simple reflections)."""
        seen = {self.identity.matrix: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.simple_reflections:
                    v = w * s
                    if v.matrix not in seen:
                        seen[v.matrix] = v
                        nxt.append(v)
            frontier = nxt
        return list(seen.values())


@lru_cache(maxsize=None)
def build(spec_or_family, rank: int | None = None) -> RootSystem:
    """Construct (and cache) the root system of the given type.

    >>> build("A", 2).coxeter_number
    3
    """
    if isinstance(spec_or_family, RootSystemSpec):
        spec = spec_or_family
    else:
        spec = RootSystemSpec(spec_or_family, rank)
    if spec is not spec_or_family:
        return build(spec)
    return RootSystem(spec)


@lru_cache(maxsize=65536)
def _orbit(spec: RootSystemSpec, weight: Weight) -> Tuple[Weight, ...]:
    rs = build(spec)
    seen = {weight}
    frontier = [weight]
    while frontier:
        nxt = []
        for lam in frontier:
            for i, s in enumerate(rs.simple_reflections):
                if lam[i]:
                    mu = s(lam)
                    if mu not in seen:
                        seen.add(mu)
                        nxt.append(mu)
        frontier = nxt
    return tuple(sorted(seen, reverse=True))


def add(a, b) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a) -> Weight:
    return tuple(k * x for x in a)


def parse_weight(text: str, rank: int | None = None) -> Weight:
    parts = [p.strip() for p in text.split(",")]
    try:
        weight = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed weight {text!r}") from None
    if rank is not None and len(weight) != rank:
        raise ValueError(f"weight {text!r} has {len(weight)} coordinates, expected {rank}")
    return weight


def format_weight(weight) -> str:
    return ",".join(str(x) for x in weight)
