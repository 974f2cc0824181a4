"""Magnus coefficients of free-group words, over Z or F_p.

The Magnus coefficient eps_I(w) of a multi-index I = (i_1, ..., i_q) is the
coefficient of t_{i_1} ... t_{i_q} in the image of w under x_i -> 1 + t_i,
equivalently the augmentation of the iterated Fox derivative.

:func:`eps` is the reference computation.  It folds over the letters of w
using the deconcatenation rule

    eps_I(u v) = sum over contiguous splits I = I1 I2 of eps_I1(u) eps_I2(v)

and every closed form in this module is checked against it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .words import Word, commutator, conjugate, multiply

__all__ = [
    "check_modulus",
    "is_prime",
    "eps",
    "magnus_pairing",
    "magnus_tensor",
    "eps2_commutator",
    "eps3_commutator",
    "ConjugatedGenerator",
    "RelatorFamily",
    "Relator",
    "relators_of_family",
    "eps1_conjugated_product",
    "eps2_conjugated_product",
    "eps2_family",
    "eps3_family",
    "eps3_family_closed_form",
    "ClosedFormMismatch",
    "ClosedFormWarning",
    "family_mismatches",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_modulus(p: int) -> int:
    """Accept 0 (integer arithmetic) or a prime."""
    p = int(p)
    if p != 0 and not is_prime(p):
        raise ValueError(f"modulus must be 0 or a prime, got {p}")
    return p


def _reduce(x, p):
    return x % p if p else x


def _block_coeff(letter: int, block: Sequence[Sequence[int]]):
    """eps of a single letter against a contiguous block of weight vectors.

    x_i maps to 1 + t_i and x_i^-1 to 1 - t_i + t_i^2 - ..., so only blocks
    where every weight is read at i contribute.
    """
    i = abs(letter) - 1
    if letter > 0:
        return block[0][i] if len(block) == 1 else 0
    c = -1 if len(block) % 2 else 1
    for wt in block:
        c *= wt[i]
        if not c:
            return 0
    return c


def magnus_pairing(weights: Sequence[Sequence[int]], w: Word, p: int = 0):
    """Multilinear extension of eps.

    For weight vectors W_1, ..., W_q (indexed by generator - 1) returns
    sum over I of W_1[i_1] ... W_q[i_q] eps_I(w), reduced mod p when p > 0.
    Cost is O(len(w) * q^2) regardless of the number of generators.
    """
    p = check_modulus(p)
    q = len(weights)
    state = [1] + [0] * q  # state[s] = pairing of the prefix with W_1..W_s
    for letter in w.letters:
        for s in range(q, 0, -1):
            acc = state[s]
            for t in range(s):
                c = _block_coeff(letter, weights[t:s])
                if c:
                    acc += state[t] * c
            state[s] = _reduce(acc, p)
    return state[q]


def eps(I: Sequence[int], w: Word, p: int = 0):
    """Magnus coefficient eps_I(w), reduced mod p when p > 0.

    >>> from masseyfp.words import parse_word
    >>> eps((1, 2), parse_word("x1 x2 x1^-1 x2^-1", 2))
    1
    """
    p = check_modulus(p)
    q = len(I)
    if q == 0:
        return _reduce(1, p)
    if min(I) < 1:
        raise ValueError(f"multi-index entries must be positive: {tuple(I)}")
    state = [1] + [0] * q
    for letter in w.letters:
        g = abs(letter)
        for s in range(q, 0, -1):
            acc = state[s]
            if letter > 0:
                if I[s - 1] == g:
                    acc += state[s - 1]
            else:
                # blocks I[t:s] consisting only of g contribute (-1)^(s-t)
                t = s - 1
                sign = -1
                while t >= 0 and I[t] == g:
                    acc += sign * state[t]
                    sign = -sign
                    t -= 1
            state[s] = _reduce(acc, p)
    return state[q]


def magnus_tensor(w: Word, num_generators: int, depth: int = 3, p: int = 0):
    """All Magnus coefficients of w up to the given order.

    Returns a list ``T`` with ``T[q][i_1 - 1, ..., i_q - 1] = eps_I(w)``;
    ``T[0]`` is the scalar 1.  Integer mode uses Python ints (object dtype).
    """
    p = check_modulus(p)
    n = num_generators
    if w.max_generator() > n:
        raise ValueError("word uses generators beyond num_generators")
    dtype = np.int64 if p else object
    T = [np.array(1, dtype=dtype)] + [
        np.zeros((n,) * q, dtype=dtype) for q in range(1, depth + 1)
    ]
    for letter in w.letters:
        i = abs(letter) - 1
        for s in range(depth, 0, -1):
            for t in range(s - 1, -1, -1):
                k = s - t
                if letter > 0:
                    if k > 1:
                        break
                    coef = 1
                else:
                    coef = -1 if k % 2 else 1
                idx = (Ellipsis,) + (i,) * k
                T[s][idx] = T[s][idx] + coef * T[t]
            if p:
                T[s] %= p
    return T


def eps2_commutator(u: Word, v: Word, k: int, l: int, p: int = 0):
    """eps_{k,l}([u, v]) from first-order coefficients of u and v."""
    e = lambda i, x: eps((i,), x)
    val = e(k, u) * e(l, v) - e(k, v) * e(l, u)
    return _reduce(val, check_modulus(p))


def eps3_commutator(u: Word, v: Word, k: int, l: int, m: int, p: int = 0):
    """eps_{k,l,m}([u, v]) from coefficients of order <= 2 of u and v."""
    e1 = lambda i, x: eps((i,), x)
    e2 = lambda i, j, x: eps((i, j), x)
    val = (
        e1(k, u) * e2(l, m, v)
        - e1(m, u) * e2(k, l, v)
        + e2(k, l, u) * e1(m, v)
        - e1(k, v) * e2(l, m, u)
        + (e1(k, v) * e1(l, u) - e1(k, u) * e1(l, v)) * (e1(m, u) + e1(m, v))
    )
    return _reduce(val, check_modulus(p))


@dataclass(frozen=True)
class ConjugatedGenerator:
    """The element conjugator * x_base * conjugator^-1."""

    base: int
    conjugator: Word = field(default_factory=Word)

    def __post_init__(self):
        if self.base < 1:
            raise ValueError(f"generator index must be positive, got {self.base}")

    @property
    def word(self) -> Word:
        return conjugate(Word.gen(self.base), self.conjugator)


@dataclass(frozen=True)
class RelatorFamily:
    """Members g_1, ..., g_n giving the relators [g_1..g_j, g_{j+1}..g_n], 1 <= j < n."""

    name: str
    members: tuple[ConjugatedGenerator, ...]

    def __post_init__(self):
        members = tuple(
            m if isinstance(m, ConjugatedGenerator) else ConjugatedGenerator(m)
            for m in self.members
        )
        object.__setattr__(self, "members", members)
        if len(members) < 2:
            raise ValueError(f"family {self.name!r} needs at least 2 members")
        bases = [m.base for m in members]
        if len(set(bases)) != len(bases):
            raise ValueError(f"family {self.name!r} has repeated base indices {bases}")

    @property
    def bases(self) -> tuple[int, ...]:
        return tuple(m.base for m in self.members)

    def __len__(self):
        return len(self.members)

    def relator_word(self, j: int) -> Word:
        n = len(self.members)
        if not 1 <= j < n:
            raise ValueError(f"relator index {j} out of range 1..{n - 1}")
        left, right = Word(), Word()
        for mem in self.members[:j]:
            left = multiply(left, mem.word)
        for mem in self.members[j:]:
            right = multiply(right, mem.word)
        return commutator(left, right)


@dataclass(frozen=True)
class Relator:
    name: str
    word: Word
    family: RelatorFamily | None = None
    index: int | None = None


def relators_of_family(f: RelatorFamily) -> list[Relator]:
    return [
        Relator(f"{f.name}^{j}", f.relator_word(j), f, j) for j in range(1, len(f))
    ]


def eps1_conjugated_product(members: Iterable[ConjugatedGenerator], k: int, p: int = 0):
    val = sum(1 for m in members if m.base == k)
    return _reduce(val, check_modulus(p))


def eps2_conjugated_product(
    members: Sequence[ConjugatedGenerator], k: int, l: int, p: int = 0
):
    members = list(members)
    val = 0
    for m in members:
        wa = m.conjugator
        val += eps((k,), wa) * (l == m.base) - eps((l,), wa) * (k == m.base)
    seen_k = 0
    for m in members:
        if m.base == l:
            val += seen_k
        if m.base == k:
            seen_k += 1
    return _reduce(val, check_modulus(p))


def _positions(f: RelatorFamily, j: int):
    pos = {b: a for a, b in enumerate(f.bases, start=1)}
    left = {b for b, a in pos.items() if a <= j}
    return pos, left


def eps2_family(f: RelatorFamily, j: int, k: int, l: int, p: int = 0):
    """Order-2 coefficient of the j-th relator of a family.

    +1 when k sits in the left block and l in the right block, -1 for the
    mirrored placement, 0 otherwise.
    """
    if not 1 <= j < len(f):
        raise ValueError(f"relator index {j} out of range 1..{len(f) - 1}")
    pos, left = _positions(f, j)
    if k in pos and l in pos:
        if k in left and l not in left:
            return _reduce(1, check_modulus(p))
        if l in left and k not in left:
            return _reduce(-1, check_modulus(p))
    return 0


def eps3_family_closed_form(f: RelatorFamily, j: int, k: int, l: int, m: int, p: int = 0):
    """Order-3 coefficient of the j-th relator, by the nine-case table.

    This is the nine-case table taken literally.  It is not trusted on its
    own: :func:`eps3_family` checks it against :func:`eps`.
    """
    if not 1 <= j < len(f):
        raise ValueError(f"relator index {j} out of range 1..{len(f) - 1}")
    pos, left = _positions(f, j)
    conj = {mem.base: mem.conjugator for mem in f.members}

    def e(i, base):
        return eps((i,), conj[base])

    def side(i):
        if i not in pos:
            return None
        return "L" if i in left else "R"

    sk, sl, sm = side(k), side(l), side(m)
    if sk == "L" and sl == "R" and sm is None:
        val = e(m, l)
    elif sk == "R" and sl == "L" and sm is None:
        val = -e(m, l)
    elif sk == "L" and sl == "L" and sm == "R":
        val = e(l, m) + e(k, l) - e(l, k) + (pos[k] <= pos[l])
    elif sk == "R" and sl == "R" and sm == "L":
        val = e(l, m) + e(k, l) - e(l, k) + (pos[k] <= pos[l])
    elif sk == "L" and sl == "R" and sm == "L":
        val = e(k, l) - e(m, l) - 1
    elif sk == "L" and sl == "R" and sm == "R":
        val = e(l, m) - e(l, k) - e(m, l) + (pos[l] <= pos[m]) - 1
    elif sk == "R" and sl == "L" and sm == "R":
        val = e(k, l) - e(m, l) + 1
    elif sk == "R" and sl == "L" and sm == "L":
        val = e(l, m) - e(l, k) - e(m, l) + (pos[l] <= pos[m]) + 1
    else:
        val = 0
    return _reduce(val, check_modulus(p))


@dataclass(frozen=True)
class ClosedFormMismatch:
    relator: str
    index: tuple[int, ...]
    closed_form: int
    oracle: int

    def as_dict(self):
        return {
            "relator": self.relator,
            "index": list(self.index),
            "closed_form": self.closed_form,
            "oracle": self.oracle,
        }


class ClosedFormWarning(UserWarning):
    """Emitted when a closed form disagrees with the reference computation."""

    def __init__(self, mismatch: ClosedFormMismatch):
        super().__init__(
            f"closed form disagrees on {mismatch.relator} at {mismatch.index}: "
            f"table gives {mismatch.closed_form}, direct expansion {mismatch.oracle}"
        )
        self.mismatch = mismatch


def eps3_family(f: RelatorFamily, j: int, k: int, l: int, m: int, p: int = 0):
    """Order-3 coefficient of the j-th relator of a family.

    Evaluates the closed-form table and the direct expansion; when they
    differ a :class:`ClosedFormWarning` is issued and the direct value is
    returned.
    """
    p = check_modulus(p)
    table = eps3_family_closed_form(f, j, k, l, m, p)
    direct = eps((k, l, m), f.relator_word(j), p)
    if table != direct:
        warnings.warn(
            ClosedFormWarning(
                ClosedFormMismatch(f"{f.name}^{j}", (k, l, m), table, direct)
            ),
            stacklevel=2,
        )
    return direct


def family_mismatches(
    families: Iterable[RelatorFamily], num_generators: int, order: int = 3
) -> list[ClosedFormMismatch]:
    """Exhaustive comparison of a family closed form with the direct expansion.

    Runs over every relator of every family and every in-range index tuple
    of the given order (2 or 3), in integer arithmetic.
    """
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    n = num_generators
    closed = eps2_family if order == 2 else eps3_family_closed_form
    out = []
    for f in families:
        for j in range(1, len(f)):
            T = magnus_tensor(f.relator_word(j), n, depth=order)[order]
            for idx in np.ndindex(*T.shape):
                I = tuple(i + 1 for i in idx)
                a = closed(f, j, *I)
                b = int(T[idx])
                if a != b:
                    out.append(ClosedFormMismatch(f"{f.name}^{j}", I, a, b))
    return out
