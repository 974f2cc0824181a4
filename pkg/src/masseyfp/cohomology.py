"""Cup products, triple Massey products and resonance in H^*(G; F_p).

Everything is relative to a presentation with commutator relators, taken to
be minimal: H^1 has the basis e_i dual to the generators and H^2 the basis
dual to the relators, in presentation order.  Degree-one classes are
F_p-vectors of length ``num_generators``; degree-two classes are vectors of
length ``num_relators``.

Pairings against relators are evaluated with
:func:`masseyfp.magnus.magnus_pairing`, the multilinear form of the
direct Magnus expansion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
import numpy as np

from . import fplinalg
from .magnus import is_prime, magnus_pairing
from .presentations import Presentation

__all__ = [
    "UndefinedProductError",
    "MasseyOutcome",
    "ResonanceComponent",
    "one_class",
    "basis_class",
    "cup",
    "cup_table",
    "massey",
    "indeterminacy",
    "massey_mod_indeterminacy",
    "cpi_component",
    "cpi_equations",
    "in_resonance",
    "theorem_fixture",
    "aab_expected",
    "aab_indeterminacy_formula",
]


class UndefinedProductError(ValueError):
    """A Massey product was requested with a nonzero defining cup product."""

    def __init__(self, which: str, relator: str, value: int):
        super().__init__(f"undefined product: cup({which}) != 0 at relator {relator} (value {value})")
        self.which = which
        self.relator = relator
        self.value = value


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"coefficients must be a prime field, got p={p}")


def one_class(pres: Presentation, coords, p: int) -> np.ndarray:
    _check_prime(p)
    v = fplinalg.as_fp(coords, p).reshape(-1)
    if v.shape[0] != pres.num_generators:
        raise ValueError(
            f"dimension mismatch: class has {v.shape[0]} coordinates, "
            f"presentation has {pres.num_generators} generators"
        )
    return v


def basis_class(pres: Presentation, i: int) -> np.ndarray:
    """The class e_i (1-based)."""
    v = np.zeros(pres.num_generators, dtype=np.int64)
    v[i - 1] = 1
    return v


def _pair(pres, classes, p):
    weights = [c.tolist() for c in classes]
    return np.array([magnus_pairing(weights, w, p) for w in pres.words], dtype=np.int64)


def cup(pres: Presentation, alpha, beta, p: int) -> np.ndarray:
    """alpha ∪ beta, as the vector sum_{i,j} alpha_i beta_j eps_{i,j}(R_l)."""
    a, b = one_class(pres, alpha, p), one_class(pres, beta, p)
    return _pair(pres, (a, b), p)


def cup_table(pres: Presentation, p: int) -> dict[tuple[int, int], np.ndarray]:
    """e_i ∪ e_j for all ordered pairs."""
    n = pres.num_generators
    return {
        (i, j): cup(pres, basis_class(pres, i), basis_class(pres, j), p)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }


def _first_nonzero(pres, v):
    nz = np.nonzero(v)[0]
    return (pres.relator_names[nz[0]], int(v[nz[0]])) if nz.size else None


def massey(pres: Presentation, alpha, beta, gamma, p: int) -> np.ndarray:
    """Representative of <alpha, beta, gamma>.

    Component l is sum_{i,j,k} alpha_i beta_j gamma_k eps_{i,j,k}(R_l).
    Raises :class:`UndefinedProductError` when alpha ∪ beta or
    beta ∪ gamma is nonzero.
    """
    a, b, c = (one_class(pres, x, p) for x in (alpha, beta, gamma))
    for which, x, y in (("α,β", a, b), ("β,γ", b, c)):
        bad = _first_nonzero(pres, _pair(pres, (x, y), p))
        if bad is not None:
            raise UndefinedProductError(which, *bad)
    return _pair(pres, (a, b, c), p)


def _indeterminacy_spanning(pres, a, c, p):
    n = pres.num_generators
    left = [_pair(pres, (a, basis_class(pres, i)), p) for i in range(1, n + 1)]
    right = [_pair(pres, (basis_class(pres, i), c), p) for i in range(1, n + 1)]
    return left + right


def indeterminacy(pres: Presentation, alpha, gamma, p: int) -> list[np.ndarray]:
    """Echelonized basis of alpha ∪ H^1 + H^1 ∪ gamma."""
    a, c = one_class(pres, alpha, p), one_class(pres, gamma, p)
    return fplinalg.row_basis(_indeterminacy_spanning(pres, a, c, p), p)


@dataclass
class MasseyOutcome:
    """A Massey product representative together with its vanishing verdict.

    ``witness`` (when the product vanishes) is the concatenation of classes
    ``a`` and ``b`` with representative = alpha ∪ a + b ∪ gamma.
    """

    p: int
    relator_names: list[str]
    representative: np.ndarray
    indeterminacy_basis: list[np.ndarray]
    vanishes: bool
    witness: np.ndarray | None

    @property
    def indeterminacy_rank(self) -> int:
        return len(self.indeterminacy_basis)

    def as_dict(self) -> dict:
        return {
            "representative": [int(x) for x in self.representative],
            "relator_names": list(self.relator_names),
            "indeterminacy_rank": self.indeterminacy_rank,
            "vanishes": bool(self.vanishes),
            "witness": None if self.witness is None else [int(x) for x in self.witness],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.as_dict(), **kwargs)


def massey_mod_indeterminacy(pres: Presentation, alpha, beta, gamma, p: int) -> MasseyOutcome:
    """Decide whether <alpha, beta, gamma> vanishes modulo its indeterminacy."""
    xi = massey(pres, alpha, beta, gamma, p)
    a, c = one_class(pres, alpha, p), one_class(pres, gamma, p)
    spanning = _indeterminacy_spanning(pres, a, c, p)
    basis = fplinalg.row_basis(spanning, p)
    ok, coeffs = fplinalg.in_span(xi, spanning, p)
    return MasseyOutcome(p, pres.relator_names, xi, basis, bool(ok), coeffs if ok else None)


# resonance


@dataclass
class ResonanceComponent:
    p: int
    r: int
    equations: np.ndarray
    basis: list[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, lam) -> bool:
        v = fplinalg.as_fp(lam, self.p).reshape(-1)
        return not ((self.equations @ v) % self.p).any()


def cpi_equations(r: int, block_sums: bool = False) -> np.ndarray:
    """Integer coefficient matrix of the linear equations cutting out C_Pi.

    Columns are lambda_1 .. lambda_{3r+3}.  The rows are

        lambda_i + lambda_{2r} + lambda_{2r+i} = 0          1 <= i <= r
        lambda_i + lambda_{2r-j} + lambda_{2r+i-j} = 0      1 <= j < i <= r
        lambda_i + lambda_{2r-j} + lambda_{3r+i-j} = 0      1 <= i <= j < r
        lambda_{3r+1} = lambda_{3r+2} = lambda_{3r+3} = 0

    With ``block_sums`` the three sums over lambda_1..lambda_r,
    lambda_{r+1}..lambda_{2r} and lambda_{2r+1}..lambda_{3r} are added.
    They follow from the rows above when p | r; over F_2 they cut the
    dimension down to 2 when r = 2 mod 4.
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    n = 3 * r + 3
    rows = []

    def row(*idx):
        v = [0] * n
        for i in idx:
            v[i - 1] += 1
        rows.append(v)

    if block_sums:
        row(*range(1, r + 1))
        row(*range(r + 1, 2 * r + 1))
        row(*range(2 * r + 1, 3 * r + 1))
    for i in range(1, r + 1):
        row(i, 2 * r, 2 * r + i)
    for i in range(1, r + 1):
        for j in range(1, i):
            row(i, 2 * r - j, 2 * r + i - j)
    for j in range(1, r):
        for i in range(1, j + 1):
            row(i, 2 * r - j, 3 * r + i - j)
    for i in (3 * r + 1, 3 * r + 2, 3 * r + 3):
        row(i)
    return np.array(rows, dtype=np.int64)


def cpi_component(r: int, p: int, block_sums: bool = False) -> ResonanceComponent:
    _check_prime(p)
    eqs = fplinalg.as_fp(cpi_equations(r, block_sums), p)
    return ResonanceComponent(p, r, eqs, fplinalg.nullspace(eqs, p))


def in_resonance(pres: Presentation, lam, p: int):
    """Is lam in the resonance variety?

    Returns ``(True, mu)`` with mu outside F_p·lam and lam ∪ mu = 0, or
    ``(False, None)``.
    """
    lv = one_class(pres, lam, p)
    if not lv.any():
        raise ValueError("lambda must be nonzero")
    cols = [_pair(pres, (lv, basis_class(pres, i)), p) for i in range(1, pres.num_generators + 1)]
    M = np.column_stack(cols) if pres.num_relators else np.zeros((0, pres.num_generators), dtype=np.int64)
    for mu in fplinalg.nullspace(M, p):
        if not fplinalg.in_span(mu, [lv], p)[0]:
            return True, mu
    return False, None


# the monomial arrangement example


def theorem_fixture(p: int):
    """The classes alpha, beta on P(p,1,3) with <alpha, alpha, beta> non-vanishing."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    r = p
    n = 3 * r + 3
    alpha = np.zeros(n, dtype=np.int64)
    beta = np.zeros(n, dtype=np.int64)
    alpha[0:r] = 1
    alpha[r : 2 * r] = p - 1
    beta[r : 2 * r] = 1
    beta[2 * r : 3 * r] = p - 1
    return alpha, beta


def aab_expected(pres: Presentation, p: int) -> np.ndarray:
    """Closed-form coordinates of <alpha, alpha, beta> on P(p,1,3):

    sum_j (j-1) C^j + (p-1) C^{p+1} - sum_s T_s^2
    + sum_{t<s} (t U_{t,s}^1 + U_{t,s}^2) + sum_{s<=t} (t V_{s,t}^1 + V_{s,t}^2).
    """
    v = np.zeros(pres.num_relators, dtype=np.int64)

    def put(name, val):
        v[pres.index_of(name)] += val

    for j in range(1, p + 1):
        put(f"C^{j}", j - 1)
    put(f"C^{p + 1}", p - 1)
    for s in range(1, p + 1):
        put(f"T_{s}^2", -1)
    for t in range(1, p + 1):
        for s in range(t + 1, p + 1):
            put(f"U_{t}_{s}^1", t)
            put(f"U_{t}_{s}^2", 1)
    for s in range(1, p):
        for t in range(s, p):
            put(f"V_{s}_{t}^1", t)
            put(f"V_{s}_{t}^2", 1)
    return v % p


def aab_indeterminacy_formula(pres: Presentation, p: int, a, b) -> np.ndarray:
    """Closed-form alpha ∪ a + b ∪ beta on P(p,1,3) for the theorem classes."""
    a = [0] + [int(x) for x in a]  # 1-based
    b = [0] + [int(x) for x in b]
    v = np.zeros(pres.num_relators, dtype=object)

    def put(name, val):
        v[pres.index_of(name)] += val

    def chain(fam, coef):
        for j in range(1, p + 1):
            put(f"{fam}^{j}", coef * (j - 1))
        put(f"{fam}^{p + 1}", coef * (p - 1))

    chain("A", sum(a[1 : p + 1]) + a[3 * p + 1] + a[3 * p + 2])
    chain("B", sum(b[2 * p + 1 : 3 * p + 1]) + b[3 * p + 1] + b[3 * p + 3])
    chain(
        "C",
        -(
            sum(a[p + s] + b[p + s] for s in range(1, p + 1))
            + a[3 * p + 2] + a[3 * p + 3] + b[3 * p + 2] + b[3 * p + 3]
        ),
    )
    for s in range(1, p + 1):
        put(f"D1_{s}^1", a[3 * p + 1] + b[3 * p + 1])
        put(f"D2_{s}^1", -a[3 * p + 3])
        put(f"D3_{s}^1", -b[3 * p + 2])
        ca = a[s] + a[2 * p + s] + a[2 * p]
        put(f"T_{s}^1", ca)
        put(f"T_{s}^2", ca + b[s] + b[2 * p + s] + b[2 * p])
    for t in range(1, p + 1):
        for s in range(t + 1, p + 1):
            put(f"U_{t}_{s}^1", a[s] + a[2 * p - t] + a[2 * p + s - t])
            put(f"U_{t}_{s}^2", -(b[s] + b[2 * p - t] + b[2 * p + s - t]))
    for s in range(1, p):
        for t in range(s, p):
            put(f"V_{s}_{t}^1", a[s] + a[2 * p - t] + a[3 * p + s - t])
            put(f"V_{s}_{t}^2", -(b[s] + b[2 * p - t] + b[3 * p + s - t]))
    return np.array(v % p, dtype=np.int64)
