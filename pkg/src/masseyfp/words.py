"""Freely reduced words in a free group on generators x1, ..., xn.

A letter x_i^{+1} is stored as the integer ``i`` and x_i^{-1} as ``-i``.
Generator indices are 1-based throughout.
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple

__all__ = [
    "Letter",
    "Word",
    "WordSyntaxError",
    "parse_word",
    "format_word",
    "multiply",
    "inverse",
    "conjugate",
    "commutator",
    "abelianize",
    "reduce_letters",
]


class WordSyntaxError(ValueError):
    """Raised when a word string does not match the token grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class Letter(NamedTuple):
    gen: int
    sign: int


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Free reduction of a signed-integer letter sequence (single stack pass)."""
    stack: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


class Word:
    """Immutable, freely reduced word.

    >>> Word([1, 2, -2, 1])
    Word('x1^2')
    """

    __slots__ = ("_letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        self._letters = reduce_letters(letters)
        self._hash = hash(self._letters)

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        if i < 1:
            raise ValueError(f"generator index must be positive, got {i}")
        sign = 1 if power > 0 else -1
        return cls([sign * i] * abs(power))

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def iter_letters(self):
        for a in self._letters:
            yield Letter(abs(a), 1 if a > 0 else -1)

    def max_generator(self) -> int:
        return max((abs(a) for a in self._letters), default=0)

    def __len__(self):
        return len(self._letters)

    def __iter__(self):
        return iter(self._letters)

    def __bool__(self):
        return bool(self._letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self._letters == other._letters
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def parse_word(text: str, num_generators: int) -> Word:
    """Parse whitespace-separated tokens ``x<i>`` or ``x<i>^<k>`` (k != 0).

    An empty string, or the token ``1``, is the identity.
    """
    letters: list[int] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if tok == "1":
            continue
        tm = _TOKEN.fullmatch(tok)
        if tm is None:
            raise WordSyntaxError(f"bad token {tok!r}", m.start())
        i = int(tm.group(1))
        k = int(tm.group(2)) if tm.group(2) is not None else 1
        if k == 0:
            raise WordSyntaxError(f"zero exponent in {tok!r}", m.start())
        if not 1 <= i <= num_generators:
            raise WordSyntaxError(
                f"generator x{i} out of range 1..{num_generators}", m.start()
            )
        letters.extend([i if k > 0 else -i] * abs(k))
    return Word(letters)


def format_word(w: Word) -> str:
    """Inverse of :func:`parse_word`; runs of equal letters use exponents."""
    if not w:
        return "1"
    out = []
    run_letter, run = w.letters[0], 0
    for a in w.letters + (0,):
        if a == run_letter:
            run += 1
            continue
        exp = run if run_letter > 0 else -run
        out.append(f"x{abs(run_letter)}" if exp == 1 else f"x{abs(run_letter)}^{exp}")
        run_letter, run = a, 1
    return " ".join(out)


def multiply(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def inverse(w: Word) -> Word:
    return Word(-a for a in reversed(w.letters))


def conjugate(x: Word, a: Word) -> Word:
    """Return a x a^-1."""
    return Word(a.letters + x.letters + inverse(a).letters)


def commutator(u: Word, v: Word) -> Word:
    """Return [u, v] = u v u^-1 v^-1."""
    return Word(u.letters + v.letters + inverse(u).letters + inverse(v).letters)


def abelianize(w: Word, num_generators: int) -> tuple[int, ...]:
    """Exponent sum of each generator."""
    counts = [0] * num_generators
    for a in w.letters:
        counts[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(counts)
