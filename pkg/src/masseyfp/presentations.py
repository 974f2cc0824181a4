"""Finite presentations with commutator relators.

Builders for the pure braid group P(r,1,3) of the monomial arrangement
A(r,1,3), for the curve group of a conic with three tangent lines, and a
line-oriented text format for user presentations.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .magnus import ConjugatedGenerator, Relator, RelatorFamily, relators_of_family
from .words import (
    Word,
    WordSyntaxError,
    abelianize,
    commutator,
    conjugate,
    format_word,
    parse_word,
)

__all__ = [
    "Presentation",
    "PresentationError",
    "monomial_presentation",
    "kty_presentation",
    "load_presentation",
    "save_presentation",
    "loads_presentation",
    "dumps_presentation",
    "presentation_to_json",
]


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators x1..xn and an ordered list of commutator relators.

    The relator order fixes the basis of H_2 (and the dual basis of H^2).
    Families are kept so that structured relators can be written back out.
    """

    num_generators: int
    relators: tuple[Relator, ...]
    origin: str = field(default="file", compare=False)
    families: tuple[RelatorFamily, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.num_generators < 1:
            raise PresentationError("need at least one generator")
        names = [r.name for r in self.relators]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise PresentationError(f"duplicate relator names: {sorted(dup)}")
        for rel in self.relators:
            if rel.word.max_generator() > self.num_generators:
                raise PresentationError(f"relator {rel.name} uses an out-of-range generator")
            if any(abelianize(rel.word, self.num_generators)):
                raise PresentationError(f"relator not a commutator: {rel.name}")
        for f in self.families:
            if max(f.bases) > self.num_generators:
                raise PresentationError(f"family {f.name} uses an out-of-range generator")

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    @property
    def relator_names(self) -> list[str]:
        return [r.name for r in self.relators]

    @property
    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def index_of(self, name: str) -> int:
        for i, r in enumerate(self.relators):
            if r.name == name:
                return i
        raise KeyError(name)


def _build(num_generators, items, origin):
    relators: list[Relator] = []
    families: list[RelatorFamily] = []
    for item in items:
        if isinstance(item, RelatorFamily):
            families.append(item)
            relators.extend(relators_of_family(item))
        else:
            relators.append(item)
    return Presentation(num_generators, tuple(relators), origin, tuple(families))


def _prod(indices) -> Word:
    return Word(indices)


def monomial_presentation(r: int) -> Presentation:
    """Presentation of P(r,1,3): 3r+3 generators and 2r^2+6r+3 relators.

    Families, in relator order: A, B, C, D1_s, D2_s, D3_s, T_s, U_t_s
    (t < s, lexicographic), V_s_t (s <= t < r, lexicographic).

    The C family only shows its first and last conjugators explicitly; the
    member x_{r+s} is conjugated by x_r x_{3r+1} x_1 ... x_{r-s} x_{3r+1}^-1,
    which reproduces both printed endpoints.
    """
    if r < 2:
        raise PresentationError(f"r must be at least 2, got {r}")
    n = 3 * r + 3
    a1, a2, a3 = 3 * r + 1, 3 * r + 2, 3 * r + 3
    G = ConjugatedGenerator
    items: list[RelatorFamily] = []

    items.append(RelatorFamily("A", (a1, *range(1, r), a2, r)))
    items.append(RelatorFamily("B", (a1, *range(2 * r + 1, 3 * r), a3, 3 * r)))
    c_members = [G(a2)]
    for s in range(1, r):
        conj = _prod([r, a1, *range(1, r - s + 1), -a1])
        c_members.append(G(r + s, conj))
    c_members += [G(a3), G(2 * r)]
    items.append(RelatorFamily("C", tuple(c_members)))

    for s in range(1, r + 1):
        items.append(RelatorFamily(f"D1_{s}", (a1, r + s)))
    for s in range(1, r + 1):
        items.append(RelatorFamily(f"D2_{s}", (a3, s)))
    for s in range(1, r + 1):
        items.append(
            RelatorFamily(
                f"D3_{s}",
                (G(a2, _prod(range(s, r))), G(2 * r + s, _prod([2 * r]))),
            )
        )
    for s in range(1, r + 1):
        items.append(RelatorFamily(f"T_{s}", (s, 2 * r + s, 2 * r)))
    for t in range(1, r + 1):
        for s in range(t + 1, r + 1):
            conj = _prod(range(2 * r - t + 1, 2 * r))
            items.append(
                RelatorFamily(f"U_{t}_{s}", (G(s), G(2 * r - t), G(2 * r + s - t, conj)))
            )
    for s in range(1, r):
        for t in range(s, r):
            conj = _prod(range(2 * r - t + 1, 2 * r))
            items.append(
                RelatorFamily(
                    f"V_{s}_{t}",
                    (G(s, _prod([a1])), G(2 * r - t), G(3 * r + s - t, conj)),
                )
            )
    return _build(n, items, f"monomial r={r}")


def kty_presentation() -> Presentation:
    """Curve group of a smooth conic with three tangent lines in CP^2."""
    x1, x2, x3 = (Word.gen(i) for i in (1, 2, 3))
    rels = [
        Relator("R1", commutator(x3 * x1 * x3, x1)),
        Relator("R2", commutator(x3 * x2 * x3, x2)),
        Relator("R3", commutator(conjugate(x1, x3), x2)),
    ]
    return _build(3, rels, "kty")


# text format

_HEADER = re.compile(r"generators\s+(\d+)")
_LINE = re.compile(r"(relator|family)\s+(\S+)\s*:\s*(.*)")
_CONJGEN = re.compile(r"x(\d+)(?:\s*\^\s*\((.*)\))?")


def loads_presentation(text: str) -> Presentation:
    lines = [
        (no, ln.split("#", 1)[0].strip())
        for no, ln in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines:
        raise PresentationError("empty presentation file")
    no, head = lines[0]
    m = _HEADER.fullmatch(head)
    if m is None:
        raise PresentationError(f"line {no}: expected 'generators <n>'")
    n = int(m.group(1))
    if n < 1:
        raise PresentationError(f"line {no}: need at least one generator")
    items: list = []
    for no, ln in lines[1:]:
        m = _LINE.fullmatch(ln)
        if m is None:
            raise PresentationError(f"line {no}: expected 'relator' or 'family' entry")
        kind, name, body = m.groups()
        try:
            if kind == "relator":
                w = parse_word(body, n)
                if any(abelianize(w, n)):
                    raise PresentationError(f"line {no}: relator not a commutator: {name}")
                items.append(Relator(name, w))
            else:
                members = []
                for part in body.split(";"):
                    cm = _CONJGEN.fullmatch(part.strip())
                    if cm is None:
                        raise PresentationError(f"line {no}: bad family member {part.strip()!r}")
                    base = int(cm.group(1))
                    if not 1 <= base <= n:
                        raise PresentationError(f"line {no}: generator x{base} out of range")
                    conj = parse_word(cm.group(2) or "", n)
                    members.append(ConjugatedGenerator(base, conj))
                items.append(RelatorFamily(name, tuple(members)))
        except WordSyntaxError as exc:
            raise PresentationError(f"line {no}: {exc}") from exc
        except PresentationError:
            raise
        except ValueError as exc:
            raise PresentationError(f"line {no}: {exc}") from exc
    return _build(n, items, "file")


def dumps_presentation(pres: Presentation) -> str:
    out = [f"generators {pres.num_generators}"]
    family_done = set()
    by_family = {f.name: f for f in pres.families}
    for rel in pres.relators:
        if rel.family is not None and rel.family.name in by_family:
            f = rel.family
            if f.name in family_done:
                continue
            family_done.add(f.name)
            parts = []
            for mem in f.members:
                if mem.conjugator:
                    parts.append(f"x{mem.base} ^ ( {format_word(mem.conjugator)} )")
                else:
                    parts.append(f"x{mem.base}")
            out.append(f"family {f.name} : " + " ; ".join(parts))
        else:
            out.append(f"relator {rel.name} : {format_word(rel.word)}")
    return "\n".join(out) + "\n"


def load_presentation(path) -> Presentation:
    return loads_presentation(Path(path).read_text(encoding="utf-8"))


def save_presentation(pres: Presentation, path) -> None:
    Path(path).write_text(dumps_presentation(pres), encoding="utf-8")


def presentation_to_json(pres: Presentation) -> str:
    return json.dumps(
        {
            "generators": pres.num_generators,
            "origin": pres.origin,
            "relator_names": pres.relator_names,
            "relators": [list(r.word.letters) for r in pres.relators],
        }
    )
