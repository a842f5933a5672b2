"""Explicit splitting functions for SL_{n+1} on the big chart of the
cotangent-bundle model.

The chart has coordinates y_{ij} (i > j, entries of a generic lower
unipotent g) and x_{ij} (i < j, entries of a generic strictly upper
triangular X).  The variable at matrix position (i, j) is tagged with the
weight eps_i - eps_j written in fundamental coordinates of A_n, so that the
built functions are literally weight-zero monomial by monomial.

The main function conjugates I + X by g symbolically (the inverse of a
unipotent matrix is its finite Neumann series) and multiplies the
(p-1)-st powers of the leading principal minors.  Sign conventions: with
these tags the x-variables carry positive-root weights; the one-parameter
subgroups used by the canonical-splitting condition are the lower elementary
matrices x_k(t) = I + t E_{k+1,k}, the directions fixing the highest-weight
vector of the pairing realised by the leading minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError
from .fpoly import (
    DEFAULT_ENUM_CAP,
    DEFAULT_TERM_CAP,
    CompatibilityCheck,
    SparsePolynomial,
    SplittingCheck,
    VariableIdeal,
    is_prime,
    is_splitting_function,
    splits_ideal_compatibly,
)
from .rootdata import RootSystem, Weight, build_root_system

Matrix = list[list[SparsePolynomial]]


@dataclass(frozen=True)
class ChartFunction:
    """A weight-tagged polynomial on a chart of the cotangent-bundle model."""

    poly: SparsePolynomial
    n: int
    p: int
    positions: tuple[tuple[int, int], ...]   # matrix position per variable
    x_indices: tuple[int, ...]
    y_indices: tuple[int, ...]
    subset: frozenset[int]                   # parabolic subset; empty = Borel

    @property
    def rs(self) -> RootSystem:
        return build_root_system("A", self.n)

    @property
    def num_x(self) -> int:
        return len(self.x_indices)

    def x_degree(self, exponents: Sequence[int]) -> int:
        return sum(exponents[i] for i in self.x_indices)

    def max_x_degree(self) -> int:
        return max((self.x_degree(e) for e in self.poly.terms), default=0)

    def x_degree_component(self, d: int) -> SparsePolynomial:
        out = SparsePolynomial(self.p, self.poly.variables, weights=self.poly.weights)
        out.terms = {e: c for e, c in self.poly.terms.items() if self.x_degree(e) == d}
        return out

    def is_t_invariant(self) -> bool:
        zero = (0,) * self.n
        return all(
            self.poly.monomial_weight(e) == zero for e in self.poly.terms
        )


def _eps_diff(rs: RootSystem, i: int, j: int) -> Weight:
    # eps_i - eps_j in fundamental coordinates; rows of the Cartan matrix are
    # the simple roots and eps_i - eps_{i+1} = alpha_i.
    if i == j:
        return (0,) * rs.rank
    sign = 1
    if i > j:
        i, j = j, i
        sign = -1
    out = [0] * rs.rank
    for k in range(i, j):
        for c in range(rs.rank):
            out[c] += sign * rs.cartan[k - 1][c]
    return tuple(out)


def _chart_table(n: int, subset: frozenset[int]) -> tuple[
    tuple[str, ...], tuple[Weight, ...], tuple[tuple[int, int], ...],
    tuple[int, ...], tuple[int, ...],
]:
    rs = build_root_system("A", n)
    size = n + 1
    block = _block_ids(n, subset)
    names: list[str] = []
    weights: list[Weight] = []
    positions: list[tuple[int, int]] = []
    y_idx: list[int] = []
    x_idx: list[int] = []
    for i in range(1, size + 1):
        for j in range(1, i):
            if block[i - 1] != block[j - 1]:
                y_idx.append(len(names))
                names.append(f"y{i}{j}")
                weights.append(_eps_diff(rs, i, j))
                positions.append((i, j))
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            if block[i - 1] != block[j - 1]:
                x_idx.append(len(names))
                names.append(f"x{i}{j}")
                weights.append(_eps_diff(rs, i, j))
                positions.append((i, j))
    return tuple(names), tuple(weights), tuple(positions), tuple(x_idx), tuple(y_idx)


def _block_ids(n: int, subset: frozenset[int]) -> list[int]:
    # 0-based positions a and a+1 share a Levi block iff simple root a+1 is in I
    ids = [0] * (n + 1)
    for a in range(1, n + 1):
        ids[a] = ids[a - 1] if a in subset else ids[a - 1] + 1
    return ids


def _block_reversal(n: int, subset: frozenset[int]) -> list[int]:
    # longest element of the Levi Weyl group as a 0-based permutation
    ids = _block_ids(n, subset)
    perm = list(range(n + 1))
    start = 0
    for a in range(1, n + 2):
        if a == n + 1 or ids[a] != ids[start]:
            perm[start:a] = list(reversed(perm[start:a]))
            start = a
    return perm


# -- polynomial matrices --------------------------------------------------

def _mat_mul(a: Matrix, b: Matrix, term_cap: int) -> Matrix:
    size = len(a)
    zero = a[0][0].scale(0)
    out = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if a[i][k].is_zero():
                continue
            for j in range(size):
                if b[k][j].is_zero():
                    continue
                out[i][j] = out[i][j] + a[i][k].mul(b[k][j], term_cap)
    return out


def _mat_identity(proto: SparsePolynomial, size: int) -> Matrix:
    one = SparsePolynomial.constant(proto.p, proto.variables, 1, proto.weights)
    zero = one.scale(0)
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def _unipotent_inverse(g: Matrix, term_cap: int) -> Matrix:
    # (I + L)^{-1} = sum (-L)^k, a finite sum for nilpotent L
    size = len(g)
    ident = _mat_identity(g[0][0], size)
    low = [[g[i][j] - ident[i][j] for j in range(size)] for i in range(size)]
    out = [row[:] for row in ident]
    power = [row[:] for row in ident]
    sign = 1
    for _ in range(size):
        power = _mat_mul(power, low, term_cap)
        if all(e.is_zero() for row in power for e in row):
            break
        sign = -sign
        for i in range(size):
            for j in range(size):
                out[i][j] = out[i][j] + power[i][j].scale(sign)
    return out


def _leading_minor_det(m: Matrix, s: int, term_cap: int) -> SparsePolynomial:
    sub = [[m[i][j] for j in range(s)] for i in range(s)]
    return _det(sub, term_cap)


def _det(m: Matrix, term_cap: int) -> SparsePolynomial:
    size = len(m)
    if size == 1:
        return m[0][0]
    acc = m[0][0].scale(0)
    for j in range(size):
        if m[0][j].is_zero():
            continue
        minor = [[m[r][c] for c in range(size) if c != j] for r in range(1, size)]
        term = m[0][j].mul(_det(minor, term_cap), term_cap)
        acc = acc + (term if j % 2 == 0 else term.scale(-1))
    return acc


def _build_chart(
    n: int, p: int, subset: frozenset[int], term_cap: int
) -> ChartFunction:
    if n < 1:
        raise InputError("n must be at least 1")
    if n > 8:
        raise InputError("n is capped at 8")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    names, weights, positions, x_idx, y_idx = _chart_table(n, subset)
    size = n + 1

    def var(name: str) -> SparsePolynomial:
        return SparsePolynomial.variable(p, names, name, weights)

    one = SparsePolynomial.constant(p, names, 1, weights)
    zero = one.scale(0)
    g = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for k in y_idx:
        i, j = positions[k]
        g[i - 1][j - 1] = var(names[k])
    i_plus_x = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for k in x_idx:
        i, j = positions[k]
        i_plus_x[i - 1][j - 1] = var(names[k])

    g_inv = _unipotent_inverse(g, term_cap)
    conj = _mat_mul(_mat_mul(g, i_plus_x, term_cap), g_inv, term_cap)

    perm = _block_reversal(n, subset)
    permuted = [[conj[perm[i]][perm[j]] for j in range(size)] for i in range(size)]

    f = one
    for s in range(1, n + 1):
        f = f.mul(_leading_minor_det(permuted, s, term_cap) ** (p - 1), term_cap)

    cf = ChartFunction(
        poly=f, n=n, p=p, positions=positions,
        x_indices=x_idx, y_indices=y_idx, subset=subset,
    )
    x_names = [names[k] for k in x_idx]
    at_x_zero = f.set_zero(x_names)
    assert at_x_zero.is_constant() and at_x_zero.constant_term() == 1, (
        "conjugating the identity must give the constant function 1"
    )
    return cf


def build_chart_function(n: int, p: int, term_cap: int = DEFAULT_TERM_CAP) -> ChartFunction:
    """Product of the (p-1)-st powers of the leading principal minors of
    g (I + X) g^{-1}, the chart form of the extreme-vector splitting."""
    return _build_chart(n, p, frozenset(), term_cap)


def build_parabolic_chart_function(
    n: int, p: int, subset: Sequence[int], term_cap: int = DEFAULT_TERM_CAP
) -> ChartFunction:
    """Chart splitting function for a parabolic subset of simple roots.

    Realised as the leading-minor product of w0'^{-1} A w0' where w0' is the
    block-reversal permutation of the Levi factor; this is the chart form of
    the pairing against the Levi-translated extreme weight vectors, and it
    reduces to :func:`build_chart_function` when the subset is empty.
    """
    inside = frozenset(int(i) for i in subset)
    for i in inside:
        if not 1 <= i <= n:
            raise InputError(f"simple index {i} out of range 1..{n}")
    return _build_chart(n, p, inside, term_cap)


def check_chart_splitting(n: int, p: int, term_cap: int = DEFAULT_TERM_CAP) -> SplittingCheck:
    """Splitting criterion for the main chart function, including the
    nonvanishing of the all-(p-1) coefficient."""
    cf = build_chart_function(n, p, term_cap)
    check = is_splitting_function(cf.poly)
    if check.ok:
        center = (p - 1,) * len(cf.poly.variables)
        assert cf.poly.coefficient(center) != 0
    return check


def mvk_component(cf: ChartFunction) -> SparsePolynomial:
    """Homogeneous component of fibre degree N(p-1), the distinguished
    homogeneous splitting."""
    return cf.x_degree_component(cf.num_x * (cf.p - 1))


def levi_x_ideal(cf: ChartFunction, subset: Sequence[int]) -> Optional[VariableIdeal]:
    """Chart ideal of the parabolic subbundle: the x-variables at positions
    inside the Levi blocks of the subset.  None when the subset is empty."""
    inside = frozenset(int(i) for i in subset)
    for i in inside:
        if not 1 <= i <= cf.n:
            raise InputError(f"simple index {i} out of range 1..{cf.n}")
    block = _block_ids(cf.n, inside)
    gens = [
        k for k in cf.x_indices
        if block[cf.positions[k][0] - 1] == block[cf.positions[k][1] - 1]
    ]
    if not gens:
        return None
    return VariableIdeal(tuple(gens))


def compat_check(
    n: int,
    p: int,
    subset: Sequence[int],
    term_cap: int = DEFAULT_TERM_CAP,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> CompatibilityCheck:
    """Does the homogeneous splitting preserve the chart ideal of the
    parabolic subbundle?  Vacuously true for the empty subset."""
    cf = build_chart_function(n, p, term_cap)
    component = mvk_component(cf)
    ideal = levi_x_ideal(cf, subset)
    if ideal is None:
        return CompatibilityCheck(True)
    return splits_ideal_compatibly(component, ideal, enum_cap=enum_cap)


@dataclass(frozen=True)
class DirectionReport:
    simple_index: int
    t_degree: int
    degree_ok: bool
    weights_ok: bool


@dataclass(frozen=True)
class CanonicalCheck:
    ok: bool
    t_invariant: bool
    directions: tuple[DirectionReport, ...]

    def __bool__(self) -> bool:
        return self.ok


def canonical_check(n: int, p: int, term_cap: int = DEFAULT_TERM_CAP) -> CanonicalCheck:
    """Canonical-splitting condition for the main chart function.

    (a) Every monomial has weight zero.  (b) Translating g by the lower
    elementary x_k(-t) expands in t with degree at most p-1 and the t^i
    coefficient purely of weight i * alpha_k.
    """
    cf = build_chart_function(n, p, term_cap)
    rs = cf.rs
    invariant = cf.is_t_invariant()
    names = cf.poly.variables
    ext_names = names + ("t",)
    ext_weights = cf.poly.weights + (None,)

    f_ext = SparsePolynomial(p, ext_names, weights=ext_weights)
    f_ext.terms = {e + (0,): c for e, c in cf.poly.terms.items()}
    t_var = SparsePolynomial.variable(p, ext_names, "t", ext_weights)
    one_ext = SparsePolynomial.constant(p, ext_names, 1, ext_weights)

    reports = []
    all_ok = invariant
    for k in range(1, n + 1):
        cur = f_ext
        # row operation: row k+1 of g becomes row_{k+1} - t * row_k
        for j in range(1, k + 1):
            target = f"y{k + 1}{j}"
            if target not in names:
                continue
            base = SparsePolynomial.variable(p, ext_names, target, ext_weights)
            if j == k:
                g_kj = one_ext
            else:
                g_kj = SparsePolynomial.variable(p, ext_names, f"y{k}{j}", ext_weights)
            cur = cur.substitute(target, base - t_var.mul(g_kj, term_cap), term_cap)
        slices: dict[int, dict[tuple[int, ...], int]] = {}
        t_pos = len(ext_names) - 1
        for e, c in cur.terms.items():
            slices.setdefault(e[t_pos], {})[e[:t_pos]] = c
        t_degree = max(slices) if slices else 0
        degree_ok = t_degree <= p - 1
        alpha = rs.simple_root(k).fund
        weights_ok = True
        for i, terms in slices.items():
            expected = tuple(i * a for a in alpha)
            probe = SparsePolynomial(p, names, weights=cf.poly.weights)
            probe.terms = dict(terms)
            if any(probe.monomial_weight(e) != expected for e in probe.terms):
                weights_ok = False
        reports.append(DirectionReport(k, t_degree, degree_ok, weights_ok))
        all_ok = all_ok and degree_ok and weights_ok
    return CanonicalCheck(all_ok, invariant, tuple(reports))


def springer_equivariance_ok(n: int, p: int, term_cap: int = DEFAULT_TERM_CAP) -> bool:
    """Chart-level equivariance of X -> I + X: conjugating I + X equals
    I + (conjugate of X), as an identity of polynomial matrices."""
    names, weights, positions, x_idx, y_idx = _chart_table(n, frozenset())
    size = n + 1
    one = SparsePolynomial.constant(p, names, 1, weights)
    zero = one.scale(0)

    g = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for k in y_idx:
        i, j = positions[k]
        g[i - 1][j - 1] = SparsePolynomial.variable(p, names, names[k], weights)
    x = [[zero for _ in range(size)] for _ in range(size)]
    i_plus_x = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for k in x_idx:
        i, j = positions[k]
        v = SparsePolynomial.variable(p, names, names[k], weights)
        x[i - 1][j - 1] = v
        i_plus_x[i - 1][j - 1] = v

    g_inv = _unipotent_inverse(g, term_cap)
    lhs = _mat_mul(_mat_mul(g, i_plus_x, term_cap), g_inv, term_cap)
    gxg = _mat_mul(_mat_mul(g, x, term_cap), g_inv, term_cap)
    for i in range(size):
        for j in range(size):
            expected = gxg[i][j] + (one if i == j else zero)
            if lhs[i][j] != expected:
                return False
    return True
