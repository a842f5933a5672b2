"""Root systems, weights and Weyl combinatorics over the integers.

Everything here is exact: weights live in fundamental (Dynkin) coordinates,
so the i-th entry of a weight is its pairing with the i-th simple coroot.
Simple-root coordinates are recovered on demand by solving against the
transposed Cartan matrix with rational arithmetic.

Conventions:
  * ``cartan[i][j]`` is the pairing of the i-th simple root with the j-th
    simple coroot, so row i of the Cartan matrix is the i-th simple root
    written in fundamental coordinates.
  * Simple-root indices are 1-based in every public signature (matching the
    usual alpha_1, ..., alpha_n labelling); words in the Weyl group are
    sequences of 1-based indices, applied right to left.
  * Both sign conventions for the roots of the unipotent radical are
    available: ``positive_roots`` lists R+ and ``negative_roots`` lists R-.
    Consumers state which side they use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InputError, ResourceLimitError

Weight = tuple[int, ...]

MAX_RANK = 8
DEFAULT_WEYL_ORDER_CAP = 1152

_VALID_TYPES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


class Root(NamedTuple):
    """A positive root in three coordinate systems.

    ``simple``: coefficients over the simple roots (all nonnegative).
    ``fund``: fundamental coordinates (pairings with simple coroots).
    ``coroot``: coefficients of the associated coroot over simple coroots,
    so that the pairing of a weight with this coroot is dot(coroot, weight).
    """

    simple: tuple[int, ...]
    fund: Weight
    coroot: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.simple)


def _cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    def chain(i: int, j: int) -> None:
        a[i][j] = -1
        a[j][i] = -1
    if type_label in ("A", "B", "C", "F", "G"):
        for i in range(n - 1):
            chain(i, i + 1)
    if type_label == "B":
        a[n - 2][n - 1] = -2          # alpha_{n-1} long, alpha_n short
    elif type_label == "C":
        a[n - 1][n - 2] = -2          # alpha_n long
    elif type_label == "D":
        for i in range(n - 2):
            chain(i, i + 1)
        chain(n - 3, n - 1)
    elif type_label == "E":
        for i in range(n - 2):
            chain(i, i + 1)
        chain(2, n - 1)
    elif type_label == "F":
        a[1][2] = -2                  # alpha_2 long, alpha_3 short
    elif type_label == "G":
        a[0][1] = -3                  # alpha_1 long, alpha_2 short
    return a


def _symmetrizers(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    # Positive integers d with a[i][j]*d[j] == a[j][i]*d[i]; the Dynkin graph
    # of a simple type is connected, so propagate from node 0 and rescale.
    n = len(cartan)
    d: list[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(cartan[j][i], cartan[i][j])
                todo.append(j)
    assert all(x is not None for x in d)
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _invert_fraction_matrix(m: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class RootSystem:
    """Immutable root datum of a simple type, built by :func:`build_root_system`."""

    def __init__(self, type_label: str, rank: int):
        if type_label not in _VALID_TYPES:
            raise InputError(f"unknown type label {type_label!r}")
        if rank > MAX_RANK:
            raise InputError(f"rank {rank} exceeds the cap {MAX_RANK}")
        if rank < 1 or not _VALID_TYPES[type_label](rank):
            raise InputError(f"{type_label}{rank} is not a valid simple type")
        self.type_label = type_label
        self.rank = rank
        self.cartan: tuple[tuple[int, ...], ...] = tuple(
            tuple(row) for row in _cartan_matrix(type_label, rank)
        )
        self.symmetrizers = _symmetrizers(self.cartan)
        # Inverse of the transposed Cartan matrix: converts fundamental
        # coordinates to simple-root coordinates.
        self._cartan_t_inv = _invert_fraction_matrix(
            [[self.cartan[j][i] for j in range(rank)] for i in range(rank)]
        )
        self.positive_roots: tuple[Root, ...] = self._close_positive_roots()
        self.num_positive_roots = len(self.positive_roots)
        self.rho: Weight = (1,) * rank
        self.highest_root = max(self.positive_roots, key=lambda r: r.height)
        self.coxeter_number = self.highest_root.height + 1
        bad = set()
        for coeff in self.highest_root.simple:
            for q in _prime_factors(coeff):
                bad.add(q)
        self.bad_primes = tuple(sorted(bad))
        self._char_cache: dict = {}   # used by charalg for memoised characters

    # -- construction ---------------------------------------------------

    def _close_positive_roots(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        found = set(simple)
        queue = list(simple)
        while queue:
            beta = queue.pop(0)
            for i in range(n):
                # length of the alpha_i-string below beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * self.cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in found:
                        found.add(t)
                        queue.append(t)
        roots = []
        # sort by height, then so that alpha_1, ..., alpha_n come in order
        for m in sorted(found, key=lambda m: (sum(m), tuple(-x for x in m))):
            fund = tuple(sum(m[j] * self.cartan[j][i] for j in range(n)) for i in range(n))
            roots.append(Root(m, fund, self._coroot_coords(m)))
        return tuple(roots)

    def _coroot_coords(self, m: tuple[int, ...]) -> tuple[int, ...]:
        # beta^vee = sum_i (d_i m_i / d_beta) alpha_i^vee with d_beta = (beta,beta)/2.
        d = self.symmetrizers
        n = self.rank
        norm = sum(m[i] * self.cartan[i][j] * d[j] * m[j] for i in range(n) for j in range(n))
        assert norm > 0 and norm % 2 == 0
        half = norm // 2
        out = []
        for i in range(n):
            num = d[i] * m[i]
            assert num % half == 0, "coroot coefficients must be integral"
            out.append(num // half)
        return tuple(out)

    # -- basic queries ---------------------------------------------------

    def _check_weight(self, lam: Sequence[int]) -> Weight:
        t = tuple(int(x) for x in lam)
        if len(t) != self.rank:
            raise InputError(f"weight {t} has length {len(t)}, expected rank {self.rank}")
        return t

    def _check_index(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise InputError(f"simple-root index {i} out of range 1..{self.rank}")
        return i - 1

    def simple_root(self, i: int) -> Root:
        return self.positive_roots[self._check_index(i)]

    @property
    def negative_roots(self) -> tuple[Weight, ...]:
        """Fundamental coordinates of R-, the roots of the unipotent radical of B."""
        return tuple(tuple(-c for c in r.fund) for r in self.positive_roots)

    def pairing(self, lam: Sequence[int], i: int) -> int:
        """Pairing of a weight with the i-th simple coroot (a coordinate read)."""
        lam = self._check_weight(lam)
        return lam[self._check_index(i)]

    def reflect(self, i: int, lam: Sequence[int]) -> Weight:
        lam = self._check_weight(lam)
        k = self._check_index(i)
        c = lam[k]
        return tuple(lam[j] - self.cartan[k][j] * c for j in range(self.rank))

    def weight_action(self, word: Sequence[int], lam: Sequence[int]) -> Weight:
        """Apply the Weyl-group element s_{w1} ... s_{wk} (rightmost letter first)."""
        out = self._check_weight(lam)
        for i in reversed(list(word)):
            out = self.reflect(i, out)
        return out

    def dot_action(self, word: Sequence[int], lam: Sequence[int]) -> Weight:
        lam = self._check_weight(lam)
        shifted = tuple(c + 1 for c in lam)
        moved = self.weight_action(word, shifted)
        return tuple(c - 1 for c in moved)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(c >= 0 for c in self._check_weight(lam))

    def in_cone_c(self, lam: Sequence[int]) -> bool:
        """Pairing >= -1 against every positive coroot, not only the simple ones."""
        lam = self._check_weight(lam)
        return all(
            sum(u * c for u, c in zip(r.coroot, lam)) >= -1 for r in self.positive_roots
        )

    def is_p_regular(self, lam: Sequence[int], subset: Iterable[int]) -> bool:
        """Zero pairings on the parabolic subset, strictly positive outside it."""
        lam = self._check_weight(lam)
        inside = {self._check_index(i) for i in subset}
        return all(
            (lam[k] == 0) if k in inside else (lam[k] > 0) for k in range(self.rank)
        )

    # -- good primes -----------------------------------------------------

    def is_good_prime(self, p: int) -> bool:
        """True when p divides no coefficient of the highest root over the simple roots."""
        return p not in self.bad_primes

    def minimal_good_prime(self) -> int:
        for p in (2, 3, 5, 7, 11, 13):
            if p not in self.bad_primes:
                return p
        raise AssertionError("unreachable: highest-root coefficients are bounded by 6")

    # -- dominance order ---------------------------------------------------

    def to_simple_coords(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        lam = self._check_weight(lam)
        return tuple(
            sum(self._cartan_t_inv[i][j] * lam[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def dominance_leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        """True when lam - mu is a nonnegative integer combination of simple roots."""
        mu = self._check_weight(mu)
        lam = self._check_weight(lam)
        diff = tuple(a - b for a, b in zip(lam, mu))
        coords = self.to_simple_coords(diff)
        return all(x.denominator == 1 and x >= 0 for x in coords)

    # -- cone reduction ----------------------------------------------------

    def cone_reduce(self, lam: Sequence[int], n: int) -> "ReductionTrace":
        lam = self._check_weight(lam)
        if n < 0:
            raise InputError("degree must be nonnegative")
        if not self.in_cone_c(lam):
            raise InputError(f"weight {lam} lies outside the cone C")
        steps: list[int] = []
        intermediates: list[Weight] = [lam]
        cur, deg = lam, n
        while True:
            if self.is_dominant(cur):
                return ReductionTrace(
                    steps=tuple(steps),
                    intermediates=tuple(intermediates),
                    outcome="dominant",
                    dominant_weight=cur,
                    remaining_degree=deg,
                )
            if deg == 0:
                return ReductionTrace(
                    steps=tuple(steps),
                    intermediates=tuple(intermediates),
                    outcome="all_cohomology_vanishes",
                    dominant_weight=None,
                    remaining_degree=None,
                )
            # inside C a non-dominant weight has some simple pairing equal to -1
            k = next((i for i in range(self.rank) if cur[i] == -1), None)
            if k is None:
                raise AssertionError(f"weight {cur} left the cone C during reduction")
            cur = self.reflect(k + 1, cur)
            deg -= 1
            steps.append(k + 1)
            intermediates.append(cur)

    # -- Weyl group --------------------------------------------------------

    def weyl_elements(self, order_cap: int = DEFAULT_WEYL_ORDER_CAP) -> list[tuple[int, ...]]:
        """Reduced words, one per group element, found by orbit search from rho.

        Raises :class:`ResourceLimitError` when the group order exceeds the cap.
        """
        seen = {self.rho: ()}
        frontier = [self.rho]
        while frontier:
            nxt = []
            for v in frontier:
                word = seen[v]
                for i in range(self.rank):
                    if v[i] > 0:
                        w = self.reflect(i + 1, v)
                        if w not in seen:
                            seen[w] = (i + 1,) + word
                            nxt.append(w)
                            if len(seen) > order_cap:
                                raise ResourceLimitError(
                                    f"Weyl group order exceeds cap {order_cap}"
                                )
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (len(w), w))

    def weyl_orbit(self, lam: Sequence[int]) -> list[Weight]:
        lam = self._check_weight(lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(1, self.rank + 1):
                    w = self.reflect(i, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)

    def word_length(self, word: Sequence[int]) -> int:
        """Coxeter length: the number of positive roots sent to negative ones."""
        neg = {tuple(-c for c in r.fund) for r in self.positive_roots}
        return sum(
            1 for r in self.positive_roots if self.weight_action(word, r.fund) in neg
        )

    def make_dominant(self, lam: Sequence[int]) -> tuple[Weight, int]:
        """Dominant Weyl-orbit representative and the number of reflections used."""
        cur = self._check_weight(lam)
        count = 0
        while True:
            k = next((i for i in range(self.rank) if cur[i] < 0), None)
            if k is None:
                return cur, count
            cur = self.reflect(k + 1, cur)
            count += 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootSystem)
            and other.type_label == self.type_label
            and other.rank == self.rank
        )

    def __hash__(self) -> int:
        return hash((self.type_label, self.rank))

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank})"


@dataclass(frozen=True)
class ReductionTrace:
    """Record of one run of the cone reduction."""

    steps: tuple[int, ...]
    intermediates: tuple[Weight, ...]
    outcome: str                       # "dominant" | "all_cohomology_vanishes"
    dominant_weight: Optional[Weight]
    remaining_degree: Optional[int]


@dataclass(frozen=True)
class ParabolicSubset:
    """A subset I of simple roots with the derived nilradical data."""

    rs: RootSystem
    subset: frozenset[int]                 # 1-based simple indices
    levi_roots: tuple[Root, ...]           # positive roots supported on I
    radical_weights: tuple[Weight, ...]    # fundamental coords of R+ \ R_I+
    delta: Weight                          # sum of the radical weights

    def __repr__(self) -> str:
        return f"ParabolicSubset({self.rs}, I={sorted(self.subset)})"


def parabolic_subset(rs: RootSystem, subset: Iterable[int] = ()) -> ParabolicSubset:
    inside = frozenset(subset)
    for i in inside:
        rs._check_index(i)
    levi = []
    radical = []
    for r in rs.positive_roots:
        support = {j + 1 for j in range(rs.rank) if r.simple[j] != 0}
        if support <= inside:
            levi.append(r)
        else:
            radical.append(r.fund)
    delta = tuple(sum(c) for c in zip(*radical)) if radical else (0,) * rs.rank
    for i in inside:
        assert delta[i - 1] == 0, "delta_P must lie in X(P)"
    return ParabolicSubset(rs, inside, tuple(levi), tuple(radical), delta)


_SYSTEM_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build (or fetch the cached) root system of the given simple type."""
    key = (str(type_label).upper(), int(rank))
    if key not in _SYSTEM_CACHE:
        _SYSTEM_CACHE[key] = RootSystem(*key)
    return _SYSTEM_CACHE[key]


def parse_system(name: str) -> RootSystem:
    """Parse a name like ``A2`` or ``G2`` into a root system."""
    name = name.strip()
    if len(name) < 2 or not name[1:].isdigit():
        raise InputError(f"cannot parse root-system name {name!r}")
    return build_root_system(name[0].upper(), int(name[1:]))


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
