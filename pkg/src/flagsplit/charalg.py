"""Formal character arithmetic for induced modules and symmetric powers.

Characters are finite signed-multiplicity maps on the weight lattice.  The
module computes irreducible (Weyl) characters by the Freudenthal recursion,
Euler characteristics of line bundles by the dot-reflection algorithm, graded
characters of symmetric and exterior powers of nilradicals, truncated
coordinate algebras of Frobenius kernels, and greedy decompositions into
nonnegative combinations of Weyl characters.

All arithmetic is exact.  Expensive operations take explicit caps
(``dim_cap`` on the Weyl dimension of any single irreducible piece,
``term_cap`` on the number of stored weights) and raise
:class:`ResourceLimitError` rather than truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import InputError, ResourceLimitError
from .fpoly import is_prime
from .rootdata import ParabolicSubset, RootSystem, Weight, parabolic_subset

DEFAULT_DIM_CAP = 10**6
DEFAULT_TERM_CAP = 10**6


class Character:
    """Finite map from weights to nonzero integer multiplicities."""

    __slots__ = ("rs", "mults")

    def __init__(self, rs: RootSystem, mults: Optional[dict[Weight, int]] = None):
        self.rs = rs
        self.mults: dict[Weight, int] = {}
        if mults:
            for w, m in mults.items():
                if m != 0:
                    self.mults[tuple(w)] = int(m)

    @classmethod
    def zero(cls, rs: RootSystem) -> "Character":
        return cls(rs)

    @classmethod
    def trivial(cls, rs: RootSystem) -> "Character":
        return cls(rs, {(0,) * rs.rank: 1})

    def multiplicity(self, w: Sequence[int]) -> int:
        return self.mults.get(tuple(w), 0)

    def items(self) -> Iterator[tuple[Weight, int]]:
        return iter(sorted(self.mults.items()))

    def dimension(self) -> int:
        return sum(self.mults.values())

    def term_count(self) -> int:
        return len(self.mults)

    def __bool__(self) -> bool:
        return bool(self.mults)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and other.rs == self.rs
            and other.mults == self.mults
        )

    def __hash__(self):
        raise TypeError("characters are mutable containers; do not hash")

    def __add__(self, other: "Character") -> "Character":
        self._check_compatible(other)
        out = dict(self.mults)
        for w, m in other.mults.items():
            out[w] = out.get(w, 0) + m
        return Character(self.rs, out)

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __neg__(self) -> "Character":
        return Character(self.rs, {w: -m for w, m in self.mults.items()})

    def __mul__(self, k: int) -> "Character":
        if not isinstance(k, int):
            return NotImplemented
        return Character(self.rs, {w: k * m for w, m in self.mults.items()})

    __rmul__ = __mul__

    def shift(self, lam: Sequence[int]) -> "Character":
        """Tensor with the one-dimensional character of weight ``lam``."""
        lam = tuple(lam)
        return Character(
            self.rs, {tuple(a + b for a, b in zip(w, lam)): m for w, m in self.mults.items()}
        )

    def tensor(self, other: "Character", term_cap: int = DEFAULT_TERM_CAP) -> "Character":
        self._check_compatible(other)
        out: dict[Weight, int] = {}
        for w1, m1 in self.mults.items():
            for w2, m2 in other.mults.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + m1 * m2
            if len(out) > term_cap:
                raise ResourceLimitError(f"character tensor exceeds term cap {term_cap}")
        return Character(self.rs, out)

    def _check_compatible(self, other: "Character") -> None:
        if other.rs != self.rs:
            raise InputError("characters live over different root systems")

    def to_json_obj(self) -> list[dict]:
        return [{"weight": list(w), "mult": m} for w, m in self.items()]

    def __repr__(self) -> str:
        parts = ", ".join(f"{w}:{m}" for w, m in list(self.items())[:6])
        more = "" if len(self.mults) <= 6 else f", ... ({len(self.mults)} weights)"
        return f"Character({parts}{more})"


@dataclass(frozen=True)
class GradedCharacter:
    """Finite map from symmetric-power degree to a character."""

    pieces: tuple[tuple[int, Character], ...]

    def piece(self, n: int) -> Character:
        for d, c in self.pieces:
            if d == n:
                return c
        raise InputError(f"no graded piece of degree {n}")

    def degrees(self) -> list[int]:
        return [d for d, _ in self.pieces]


# -- inner products ------------------------------------------------------

def _weight_root_product(rs: RootSystem, fund: Sequence[int], root_simple: Sequence[int]) -> int:
    # (lambda, beta) with lambda in fundamental coordinates and beta a root
    # in simple-root coordinates; always an integer.
    d = rs.symmetrizers
    return sum(d[j] * fund[j] * root_simple[j] for j in range(rs.rank))


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    """Dimension of the irreducible with highest weight ``lam`` (Weyl formula)."""
    lam = rs._check_weight(lam)
    if not rs.is_dominant(lam):
        raise InputError(f"weight {lam} is not dominant")
    num = Fraction(1)
    lam_rho = tuple(c + 1 for c in lam)
    for r in rs.positive_roots:
        a = sum(u * c for u, c in zip(r.coroot, lam_rho))
        b = sum(r.coroot)  # pairing of rho with the coroot
        num *= Fraction(a, b)
    assert num.denominator == 1
    return int(num)


# -- Weyl characters by Freudenthal ----------------------------------------

def _dominant_weight_system(rs: RootSystem, lam: Weight) -> list[Weight]:
    # Dominant weights mu <= lam of the irreducible module, generated by
    # subtracting single positive roots while staying dominant.
    seen = {lam}
    queue = [lam]
    while queue:
        v = queue.pop()
        for r in rs.positive_roots:
            w = tuple(a - b for a, b in zip(v, r.fund))
            if w not in seen and all(c >= 0 for c in w):
                seen.add(w)
                queue.append(w)
    def depth(mu: Weight) -> int:
        coords = rs.to_simple_coords(tuple(a - b for a, b in zip(lam, mu)))
        assert all(x.denominator == 1 for x in coords)
        return int(sum(coords))
    return sorted(seen, key=lambda mu: (depth(mu), mu))


def _freudenthal_multiplicities(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    dominants = _dominant_weight_system(rs, lam)
    mult: dict[Weight, int] = {lam: 1}

    def lookup(w: Weight) -> int:
        dom, _ = rs.make_dominant(w)
        return mult.get(dom, 0)

    lam_rho = tuple(c + 1 for c in lam)
    for mu in dominants[1:]:
        num = 0
        for r in rs.positive_roots:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(mu, r.fund))
                m = lookup(w)
                if m == 0:
                    break
                num += m * _weight_root_product(rs, w, r.simple)
                k += 1
        # denominator: (lam+rho, lam+rho) - (mu+rho, mu+rho) = (lam+mu+2rho, lam-mu)
        mu_rho = tuple(c + 1 for c in mu)
        both = tuple(a + b for a, b in zip(lam_rho, mu_rho))
        diff = rs.to_simple_coords(tuple(a - b for a, b in zip(lam, mu)))
        den_frac = sum(
            rs.symmetrizers[j] * both[j] * diff[j] for j in range(rs.rank)
        )
        assert den_frac.denominator == 1 and den_frac > 0
        den = int(den_frac)
        assert (2 * num) % den == 0
        mult[mu] = (2 * num) // den
    return mult


def weyl_character(
    rs: RootSystem, lam: Sequence[int], dim_cap: int = DEFAULT_DIM_CAP
) -> Character:
    """Character of the induced module of a dominant weight (characteristic 0),
    equal to the Euler characteristic used throughout.
    """
    lam = rs._check_weight(lam)
    dim = weyl_dimension(rs, lam)   # also validates dominance
    if dim > dim_cap:
        raise ResourceLimitError(f"Weyl dimension {dim} exceeds cap {dim_cap}")
    cached = rs._char_cache.get(("weyl", lam))
    if cached is not None:
        return Character(rs, cached)
    out: dict[Weight, int] = {}
    for mu, m in _freudenthal_multiplicities(rs, lam).items():
        for w in rs.weyl_orbit(mu):
            out[w] = m
    ch = Character(rs, out)
    assert ch.dimension() == dim, "Freudenthal output must match the Weyl dimension"
    assert ch.multiplicity(lam) == 1
    rs._char_cache[("weyl", lam)] = dict(ch.mults)
    return ch


def euler_char(
    rs: RootSystem, lam: Sequence[int], dim_cap: int = DEFAULT_DIM_CAP
) -> Character:
    """Signed Euler characteristic of the line bundle of an arbitrary weight.

    Dot-reflect ``lam`` to the dominant chamber; a singular ``lam + rho``
    yields the zero character.
    """
    lam = rs._check_weight(lam)
    mu = tuple(c + 1 for c in lam)
    sign = 1
    while True:
        k = next((i for i in range(rs.rank) if mu[i] < 0), None)
        if k is None:
            break
        mu = rs.reflect(k + 1, mu)
        sign = -sign
    if any(c == 0 for c in mu):
        return Character.zero(rs)
    return sign * weyl_character(rs, tuple(c - 1 for c in mu), dim_cap=dim_cap)


def module_euler(
    rs: RootSystem,
    module: Character,
    lam: Sequence[int],
    dim_cap: int = DEFAULT_DIM_CAP,
    term_cap: int = DEFAULT_TERM_CAP,
) -> Character:
    """Euler characteristic of (module tensor lam): additivity over weights."""
    lam = rs._check_weight(lam)
    out: dict[Weight, int] = {}
    for mu, m in module.items():
        piece = euler_char(rs, tuple(a + b for a, b in zip(lam, mu)), dim_cap=dim_cap)
        for w, c in piece.mults.items():
            v = out.get(w, 0) + m * c
            if v:
                out[w] = v
            elif w in out:
                del out[w]
        if len(out) > term_cap:
            raise ResourceLimitError(f"module Euler characteristic exceeds term cap {term_cap}")
    return Character(rs, out)


# -- symmetric / exterior / truncated algebras -----------------------------

def sym_power_graded(
    par: ParabolicSubset, n_max: int, term_cap: int = DEFAULT_TERM_CAP
) -> GradedCharacter:
    """Characters of S^0 .. S^n_max of the dual nilradical of the parabolic."""
    if n_max < 0:
        raise InputError("degree must be nonnegative")
    rs = par.rs
    zero = (0,) * rs.rank
    table: list[dict[Weight, int]] = [{zero: 1}] + [dict() for _ in range(n_max)]
    for wt in par.radical_weights:
        for d in range(n_max, 0, -1):
            # append powers of e^wt to lower-degree monomials not using wt yet
            for k in range(1, d + 1):
                for w, m in table[d - k].items():
                    shifted = tuple(a + k * b for a, b in zip(w, wt))
                    table[d][shifted] = table[d].get(shifted, 0) + m
            if len(table[d]) > term_cap:
                raise ResourceLimitError(f"symmetric power exceeds term cap {term_cap}")
    return GradedCharacter(
        tuple((d, Character(rs, t)) for d, t in enumerate(table))
    )


def sym_power_char(
    par: ParabolicSubset, n: int, term_cap: int = DEFAULT_TERM_CAP
) -> Character:
    """Character of the n-th symmetric power of the dual nilradical."""
    return sym_power_graded(par, n, term_cap=term_cap).piece(n)


def exterior_power_char(
    rs: RootSystem, j: int, term_cap: int = DEFAULT_TERM_CAP
) -> Character:
    """Character of the j-th exterior power of the cotangent fibre.

    The fibre has the negative roots as weights, so the result is the
    multiset of sums of j distinct negative roots.
    """
    n = rs.num_positive_roots
    if not 0 <= j <= n:
        raise InputError(f"exterior degree {j} out of range 0..{n}")
    zero = (0,) * rs.rank
    table: list[dict[Weight, int]] = [{zero: 1}] + [dict() for _ in range(j)]
    for wt in rs.negative_roots:
        for d in range(min(j, n), 0, -1):
            for w, m in table[d - 1].items():
                shifted = tuple(a + b for a, b in zip(w, wt))
                table[d][shifted] = table[d].get(shifted, 0) + m
            if len(table[d]) > term_cap:
                raise ResourceLimitError(f"exterior power exceeds term cap {term_cap}")
    return Character(rs, table[j])


def truncated_char(
    rs: RootSystem, p: int, term_cap: int = DEFAULT_TERM_CAP
) -> Character:
    """Character of the coordinate algebra of the first Frobenius kernel of U:
    the product over positive roots of (1 + e^alpha + ... + e^((p-1) alpha)).
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    out: dict[Weight, int] = {(0,) * rs.rank: 1}
    for r in rs.positive_roots:
        nxt: dict[Weight, int] = {}
        for w, m in out.items():
            for k in range(p):
                shifted = tuple(a + k * b for a, b in zip(w, r.fund))
                nxt[shifted] = nxt.get(shifted, 0) + m
        if len(nxt) > term_cap:
            raise ResourceLimitError(f"truncated algebra exceeds term cap {term_cap}")
        out = nxt
    return Character(rs, out)


# -- good-filtration decomposition ------------------------------------------

@dataclass(frozen=True)
class GoodFiltrationDecomposition:
    """Outcome of greedy peeling into Weyl characters.

    On success ``ok`` is true and ``entries`` lists (dominant weight,
    multiplicity) pairs in peeling order; on failure the offending weight and
    its coefficient are reported.
    """

    ok: bool
    entries: tuple[tuple[Weight, int], ...]
    failure_weight: Optional[Weight] = None
    failure_mult: Optional[int] = None

    def reconstruct(self, rs: RootSystem, dim_cap: int = DEFAULT_DIM_CAP) -> Character:
        out = Character.zero(rs)
        for lam, m in self.entries:
            out = out + m * weyl_character(rs, lam, dim_cap=dim_cap)
        return out

    def to_json_obj(self) -> dict:
        obj: dict = {
            "ok": self.ok,
            "entries": [{"lambda": list(w), "mult": m} for w, m in self.entries],
        }
        if not self.ok:
            obj["failure_weight"] = list(self.failure_weight)
            obj["failure_mult"] = self.failure_mult
        return obj


def decompose_good_filtration(
    c: Character, dim_cap: int = DEFAULT_DIM_CAP
) -> GoodFiltrationDecomposition:
    """Greedily peel Weyl characters off maximal weights.

    Selection rule: a weight maximal for the dominance order among the
    current support, ties broken by the lexicographically largest
    fundamental-coordinate vector.
    """
    rs = c.rs
    work = dict(c.mults)
    entries: list[tuple[Weight, int]] = []
    simple_coords: dict[Weight, tuple[Fraction, ...]] = {}

    def coords(w: Weight) -> tuple[Fraction, ...]:
        if w not in simple_coords:
            simple_coords[w] = rs.to_simple_coords(w)
        return simple_coords[w]

    def dominated(mu: Weight, nu: Weight) -> bool:
        # mu <= nu strictly, decided on cached simple-root coordinates
        if mu == nu:
            return False
        diff = tuple(a - b for a, b in zip(coords(nu), coords(mu)))
        return all(x.denominator == 1 and x >= 0 for x in diff)

    while work:
        support = sorted(work)
        maximal = [
            mu for mu in support if not any(dominated(mu, nu) for nu in support)
        ]
        top = max(maximal)
        m = work[top]
        if m < 0 or not rs.is_dominant(top):
            return GoodFiltrationDecomposition(
                ok=False,
                entries=tuple(entries),
                failure_weight=top,
                failure_mult=m,
            )
        entries.append((top, m))
        for w, cm in weyl_character(rs, top, dim_cap=dim_cap).mults.items():
            v = work.get(w, 0) - m * cm
            if v:
                work[w] = v
            elif w in work:
                del work[w]
    return GoodFiltrationDecomposition(ok=True, entries=tuple(entries))


# -- graded sections of the cotangent bundle ---------------------------------

@dataclass(frozen=True)
class GradedSectionChar:
    """Per-degree Euler characters of S u_P* tensor lambda with their
    good-filtration decompositions."""

    graded: GradedCharacter
    decompositions: tuple[tuple[int, GoodFiltrationDecomposition], ...]

    @property
    def all_ok(self) -> bool:
        return all(d.ok for _, d in self.decompositions)

    def counterexamples(self) -> list[int]:
        return [n for n, d in self.decompositions if not d.ok]


def graded_section_char(
    par: ParabolicSubset,
    lam: Sequence[int],
    n_max: int,
    dim_cap: int = DEFAULT_DIM_CAP,
    term_cap: int = DEFAULT_TERM_CAP,
) -> GradedSectionChar:
    """Degreewise sections of the (parabolic) cotangent bundle twisted by lam.

    Preconditions: lam in the cone C for the Borel case; a P-regular weight
    in X(P) for a proper parabolic subset.
    """
    rs = par.rs
    lam = rs._check_weight(lam)
    if not par.subset:
        if not rs.in_cone_c(lam):
            raise InputError(f"weight {lam} lies outside the cone C")
    else:
        if not rs.is_p_regular(lam, par.subset):
            raise InputError(f"weight {lam} is not P-regular for I={sorted(par.subset)}")
    graded = sym_power_graded(par, n_max, term_cap=term_cap)
    pieces = []
    decomps = []
    for n, sym in graded.pieces:
        ch = module_euler(rs, sym, lam, dim_cap=dim_cap, term_cap=term_cap)
        pieces.append((n, ch))
        decomps.append((n, decompose_good_filtration(ch, dim_cap=dim_cap)))
    return GradedSectionChar(GradedCharacter(tuple(pieces)), tuple(decomps))


# -- Frobenius-kernel cohomology of induced modules ---------------------------

def g1_cohomology_char(
    rs: RootSystem,
    word: Sequence[int],
    lam: Sequence[int],
    p: int,
    i_max: int = 6,
    dim_cap: int = DEFAULT_DIM_CAP,
    term_cap: int = DEFAULT_TERM_CAP,
) -> dict[int, Character]:
    """Predicted characters of the Frobenius-kernel cohomology of the induced
    module of w.0 + p lam, reported for 0 <= i <= i_max.

    The degree-i character is the Euler characteristic of
    S^((i - l(w))/2) u* tensor lam on the parity/support set and zero off it.
    """
    lam = rs._check_weight(lam)
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p <= rs.coxeter_number:
        raise InputError(
            f"p = {p} must exceed the Coxeter number {rs.coxeter_number}"
        )
    if not rs.is_dominant(lam):
        raise InputError(f"weight {lam} is not dominant")
    shifted = rs.dot_action(word, (0,) * rs.rank)
    target = tuple(a + p * b for a, b in zip(shifted, lam))
    if not rs.is_dominant(target):
        raise InputError(f"w.0 + p*lambda = {target} is not dominant")
    ell = rs.word_length(word)
    out: dict[int, Character] = {}
    par = parabolic_subset(rs)
    graded = sym_power_graded(par, max(0, (i_max - ell) // 2), term_cap=term_cap)
    for i in range(i_max + 1):
        if i >= ell and (i - ell) % 2 == 0:
            sym = graded.piece((i - ell) // 2)
            out[i] = module_euler(rs, sym, lam, dim_cap=dim_cap, term_cap=term_cap)
        else:
            out[i] = Character.zero(rs)
    return out


# -- Koszul / reduction identities -------------------------------------------

@dataclass(frozen=True)
class KoszulReport:
    """Euler-level check of the symmetric-power reduction along one simple root."""

    ok: bool
    identity_ok: bool
    vanishing_applicable: bool
    vanishing_ok: bool
    lhs: Character
    shifted_term: Character
    parabolic_term: Character


def koszul_check(
    rs: RootSystem,
    n: int,
    lam: Sequence[int],
    i: int,
    dim_cap: int = DEFAULT_DIM_CAP,
    term_cap: int = DEFAULT_TERM_CAP,
) -> KoszulReport:
    """Check chi(S^n u* ox lam) = chi(S^{n-1} u* ox (lam+alpha_i))
    + chi(S^n u*_{P_i} ox lam), and the vanishing of the parabolic term
    whenever the pairing of lam with alpha_i-vee is -1.
    """
    lam = rs._check_weight(lam)
    if n < 1:
        raise InputError("the reduction identity needs n >= 1")
    rs._check_index(i)
    whole = parabolic_subset(rs)
    minimal = parabolic_subset(rs, [i])
    lhs = module_euler(rs, sym_power_char(whole, n, term_cap), lam, dim_cap, term_cap)
    alpha = rs.simple_root(i).fund
    shifted = module_euler(
        rs,
        sym_power_char(whole, n - 1, term_cap),
        tuple(a + b for a, b in zip(lam, alpha)),
        dim_cap,
        term_cap,
    )
    par_term = module_euler(rs, sym_power_char(minimal, n, term_cap), lam, dim_cap, term_cap)
    identity_ok = lhs == shifted + par_term
    applicable = rs.pairing(lam, i) == -1
    vanishing_ok = (not applicable) or not par_term
    return KoszulReport(
        ok=identity_ok and vanishing_ok,
        identity_ok=identity_ok,
        vanishing_applicable=applicable,
        vanishing_ok=vanishing_ok,
        lhs=lhs,
        shifted_term=shifted,
        parabolic_term=par_term,
    )
