"""Sparse multivariate polynomials over a prime field, the Frobenius trace,
and the affine splitting criterion.

Exponent vectors are fixed-length integer tuples over a shared variable
table; coefficients are kept in [1, p-1] and zero terms are never stored.
The serialised form is the exact JSON schema
``{"p": 3, "vars": ["x", "y"], "terms": [{"e": [2, 0], "c": 1}]}`` with the
terms sorted lexicographically by exponent vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, ResourceLimitError

DEFAULT_TERM_CAP = 10**6
DEFAULT_ENUM_CAP = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field with p elements; primality is checked at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= 2**31:
            raise InputError(f"characteristic must be an integer in [2, 2^31], got {self.p}")
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    def normalize(self, x: int) -> int:
        return x % self.p

    def inverse(self, x: int) -> int:
        x = x % self.p
        if x == 0:
            raise InputError("zero is not invertible")
        return pow(x, self.p - 2, self.p)


class SparsePolynomial:
    """A finite map from exponent vectors to nonzero coefficients mod p.

    ``weights`` optionally tags each variable with an integer vector (a
    weight in fundamental coordinates); tags ride along through arithmetic
    and let callers grade monomials by total weight.
    """

    __slots__ = ("p", "variables", "weights", "terms")

    def __init__(
        self,
        p: int,
        variables: Sequence[str],
        terms: Optional[dict[tuple[int, ...], int]] = None,
        weights: Optional[Sequence[Optional[tuple[int, ...]]]] = None,
    ):
        PrimeField(p)
        self.p = p
        self.variables = tuple(variables)
        if weights is None:
            self.weights: tuple[Optional[tuple[int, ...]], ...] = (None,) * len(self.variables)
        else:
            if len(weights) != len(self.variables):
                raise InputError("one weight tag per variable expected")
            self.weights = tuple(None if w is None else tuple(w) for w in weights)
        self.terms: dict[tuple[int, ...], int] = {}
        if terms:
            nvars = len(self.variables)
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise InputError(f"exponent vector {e} has wrong length")
                if any(x < 0 for x in e):
                    raise InputError(f"negative exponent in {e}")
                c = c % p
                if c:
                    self.terms[e] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, p: int, variables: Sequence[str], value: int,
                 weights=None) -> "SparsePolynomial":
        zero = (0,) * len(variables)
        return cls(p, variables, {zero: value}, weights)

    @classmethod
    def variable(cls, p: int, variables: Sequence[str], name: str,
                 weights=None) -> "SparsePolynomial":
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        idx = tuple(variables).index(name)
        e = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(p, variables, {e: 1}, weights)

    @classmethod
    def monomial(cls, p: int, variables: Sequence[str], exponents: Sequence[int],
                 coeff: int = 1, weights=None) -> "SparsePolynomial":
        return cls(p, variables, {tuple(exponents): coeff}, weights)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(exponents), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.variables), 0)

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def term_count(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items())

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = tuple(indices)
        if not self.terms:
            return 0
        return max(sum(e[i] for i in idx) for e in self.terms)

    def monomial_weight(self, exponents: Sequence[int]) -> tuple[int, ...]:
        if any(w is None for w in self.weights):
            raise InputError("polynomial has untagged variables")
        rank = len(self.weights[0])
        out = [0] * rank
        for e, w in zip(exponents, self.weights):
            for k in range(rank):
                out[k] += e * w[k]
        return tuple(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparsePolynomial)
            and other.p == self.p
            and other.variables == self.variables
            and other.terms == self.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms()[:8]:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e) if k
            )
            bits.append(f"{c}*{mono}" if mono else str(c))
        tail = "" if len(self.terms) <= 8 else f" + ... ({len(self.terms)} terms)"
        return " + ".join(bits) + tail

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "SparsePolynomial") -> None:
        if self.p != other.p or self.variables != other.variables:
            raise InputError("polynomials live over different variable tables")

    def _merged_weights(self, other: "SparsePolynomial"):
        return self.weights if any(w is not None for w in self.weights) else other.weights

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % self.p
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        res = SparsePolynomial(self.p, self.variables, weights=self._merged_weights(other))
        res.terms = out
        return res

    def __neg__(self) -> "SparsePolynomial":
        res = SparsePolynomial(self.p, self.variables, weights=self.weights)
        res.terms = {e: self.p - c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def scale(self, k: int) -> "SparsePolynomial":
        k %= self.p
        res = SparsePolynomial(self.p, self.variables, weights=self.weights)
        if k:
            res.terms = {e: (c * k) % self.p for e, c in self.terms.items()}
            res.terms = {e: c for e, c in res.terms.items() if c}
        return res

    def mul(self, other: "SparsePolynomial", term_cap: int = DEFAULT_TERM_CAP) -> "SparsePolynomial":
        self._check_compatible(other)
        p = self.p
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
            if len(out) > term_cap:
                raise ResourceLimitError(f"product exceeds term cap {term_cap}")
        res = SparsePolynomial(p, self.variables, weights=self._merged_weights(other))
        res.terms = out
        return res

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self.mul(other)

    def __pow__(self, n: int) -> "SparsePolynomial":
        if n < 0:
            raise InputError("negative powers are not defined")
        result = SparsePolynomial.constant(self.p, self.variables, 1, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def substitute(self, name: str, replacement: "SparsePolynomial",
                   term_cap: int = DEFAULT_TERM_CAP) -> "SparsePolynomial":
        """Replace one variable by a polynomial over the same table."""
        self._check_compatible(replacement)
        if name not in self.variables:
            raise InputError(f"unknown variable {name!r}")
        idx = self.variables.index(name)
        powers: dict[int, SparsePolynomial] = {
            0: SparsePolynomial.constant(self.p, self.variables, 1, self.weights)
        }
        def power(k: int) -> SparsePolynomial:
            if k not in powers:
                powers[k] = power(k - 1).mul(replacement, term_cap)
            return powers[k]
        acc = SparsePolynomial(self.p, self.variables, weights=self.weights)
        for e, c in self.terms.items():
            stripped = tuple(0 if i == idx else x for i, x in enumerate(e))
            mono = SparsePolynomial.monomial(self.p, self.variables, stripped, c, self.weights)
            acc = acc + mono.mul(power(e[idx]), term_cap)
        return acc

    def set_zero(self, names: Iterable[str]) -> "SparsePolynomial":
        """Keep only the terms free of the given variables."""
        idx = {self.variables.index(n) for n in names}
        res = SparsePolynomial(self.p, self.variables, weights=self.weights)
        res.terms = {
            e: c for e, c in self.terms.items() if all(e[i] == 0 for i in idx)
        }
        return res


# -- the trace operator and the splitting criterion ---------------------------

def frobenius_trace(
    f: SparsePolynomial, g: SparsePolynomial, term_cap: int = DEFAULT_TERM_CAP
) -> SparsePolynomial:
    """Apply the trace of multiplication by f to g.

    Expands f*g and sends each monomial x^gamma to x^((gamma+1)/p - 1),
    interpreted as zero whenever some ((gamma_i+1)/p) is not an integer.
    The operator is additive in both arguments and semilinear:
    trace(f, h^p * g) = h * trace(f, g).
    """
    f._check_compatible(g)
    p = f.p
    prod = f.mul(g, term_cap)
    out: dict[tuple[int, ...], int] = {}
    for e, c in prod.terms.items():
        if all((x + 1) % p == 0 for x in e):
            target = tuple((x + 1) // p - 1 for x in e)
            v = (out.get(target, 0) + c) % p
            if v:
                out[target] = v
            elif target in out:
                del out[target]
    res = SparsePolynomial(p, f.variables, weights=f._merged_weights(g))
    res.terms = out
    return res


@dataclass(frozen=True)
class SplittingCheck:
    """Result of the affine splitting criterion, with a witness on failure.

    The witness is the all-(p-1) exponent vector when its coefficient
    vanishes, or an offending congruent monomial otherwise.
    """

    ok: bool
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_splitting_function(f: SparsePolynomial) -> SplittingCheck:
    """Affine criterion: the all-(p-1) coefficient is nonzero and every other
    monomial congruent to p-1 in each exponent is absent."""
    p = f.p
    center = (p - 1,) * len(f.variables)
    if f.coefficient(center) == 0:
        return SplittingCheck(False, center)
    for e in sorted(f.terms):
        if e != center and all(x % p == p - 1 for x in e):
            return SplittingCheck(False, e)
    return SplittingCheck(True)


@dataclass(frozen=True)
class VariableIdeal:
    """Monomial ideal generated by a nonempty set of variables (0-based indices)."""

    generators: tuple[int, ...]

    def __post_init__(self):
        if not self.generators:
            raise InputError("a variable ideal needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise InputError("duplicate generators")

    @classmethod
    def from_names(cls, f: SparsePolynomial, names: Iterable[str]) -> "VariableIdeal":
        idx = []
        for n in names:
            if n not in f.variables:
                raise InputError(f"unknown variable {n!r}")
            idx.append(f.variables.index(n))
        return cls(tuple(sorted(idx)))

    def contains_monomial(self, e: Sequence[int]) -> bool:
        return any(e[i] > 0 for i in self.generators)

    def contains(self, f: SparsePolynomial) -> bool:
        return all(self.contains_monomial(e) for e in f.terms)


@dataclass(frozen=True)
class CompatibilityCheck:
    ok: bool
    witness_exponent: Optional[tuple[int, ...]] = None
    witness_trace: Optional[SparsePolynomial] = None

    def __bool__(self) -> bool:
        return self.ok


def splits_ideal_compatibly(
    f: SparsePolynomial,
    ideal: VariableIdeal,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> CompatibilityCheck:
    """Decide whether the splitting defined by f preserves the variable ideal.

    By semilinearity it suffices to check trace(f, x^e) for exponent vectors
    e in [0, p-1]^nvars that touch a generator variable.
    """
    if not is_splitting_function(f):
        raise InputError("f must satisfy the splitting criterion first")
    p = f.p
    nvars = len(f.variables)
    total = p**nvars
    if total > enum_cap:
        raise ResourceLimitError(
            f"compatibility enumeration {p}^{nvars} exceeds cap {enum_cap}"
        )
    for flat in range(total):
        e = []
        r = flat
        for _ in range(nvars):
            e.append(r % p)
            r //= p
        e = tuple(e)
        if not ideal.contains_monomial(e):
            continue
        mono = SparsePolynomial.monomial(p, f.variables, e)
        tr = frobenius_trace(f, mono)
        if tr and not ideal.contains(tr):
            return CompatibilityCheck(False, e, tr)
    return CompatibilityCheck(True)


# -- serialisation -------------------------------------------------------------

def poly_to_json_obj(f: SparsePolynomial) -> dict:
    return {
        "p": f.p,
        "vars": list(f.variables),
        "terms": [{"e": list(e), "c": c} for e, c in f.sorted_terms()],
    }


def poly_from_json_obj(obj: dict) -> SparsePolynomial:
    try:
        p = int(obj["p"])
        variables = [str(v) for v in obj["vars"]]
        terms = {tuple(int(x) for x in t["e"]): int(t["c"]) for t in obj["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed polynomial object: {exc}") from exc
    for e, c in terms.items():
        if not 1 <= c <= p - 1:
            raise InputError(f"coefficient {c} outside [1, p-1]")
    return SparsePolynomial(p, variables, terms)


def save_poly(f: SparsePolynomial, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poly_to_json_obj(f), fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")


def load_poly(path: str) -> SparsePolynomial:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read polynomial file {path}: {exc}") from exc
    return poly_from_json_obj(obj)
