"""End-to-end checks shared by the CLI ``verify`` command and the test suite.

Each check returns a :class:`Report`: a list of named stages, each passing or
failing, plus a JSON-ready payload.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import fplinalg
from .cohomology import (
    UndefinedProductError,
    aab_expected,
    cpi_component,
    cup,
    cup_table,
    massey_mod_indeterminacy,
    theorem_fixture,
)
from .presentations import kty_presentation, monomial_presentation

__all__ = ["Stage", "Report", "verify_main", "verify_kty", "kty_massey_table"]


@dataclass
class Stage:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    theorem: str
    stages: list[Stage] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def stage(self, name) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def add(self, name, passed, **detail) -> bool:
        self.stages.append(Stage(name, bool(passed), detail))
        return bool(passed)

    def as_dict(self):
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "stages": [s.as_dict() for s in self.stages],
            **self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def lines(self):
        for s in self.stages:
            yield f"[{'PASS' if s.passed else 'FAIL'}] {s.name}"


def _ints(v):
    return [int(x) for x in v]


def verify_main(p: int) -> Report:
    """<alpha, alpha, beta> on P(p,1,3) is non-vanishing over F_p."""
    rep = Report("main", data={"prime": p})
    pres = monomial_presentation(p)
    n_gen, n_rel = 3 * p + 3, 2 * p * p + 6 * p + 3
    rep.add(
        "presentation counts",
        pres.num_generators == n_gen and pres.num_relators == n_rel,
        generators=pres.num_generators,
        relators=pres.num_relators,
        expected=[n_gen, n_rel],
    )
    alpha, beta = theorem_fixture(p)
    rep.data["alpha"], rep.data["beta"] = _ints(alpha), _ints(beta)

    comp = cpi_component(p, p)
    rep.add(
        "classes lie in C_Pi",
        comp.contains(alpha) and comp.contains(beta),
        dim=comp.dim,
    )
    ab, aa = cup(pres, alpha, beta, p), cup(pres, alpha, alpha, p)
    rep.add("cup products vanish", not ab.any() and not aa.any())

    try:
        out = massey_mod_indeterminacy(pres, alpha, alpha, beta, p)
    except UndefinedProductError as exc:
        rep.add("massey product defined", False, error=str(exc))
        return rep
    rep.add("massey product defined", True)

    expected = aab_expected(pres, p)
    diff = np.nonzero(out.representative != expected)[0]
    rep.add(
        "representative matches closed form exactly",
        diff.size == 0,
        differing=[
            {
                "relator": pres.relator_names[i],
                "computed": int(out.representative[i]),
                "expected": int(expected[i]),
            }
            for i in diff
        ],
    )
    delta = (out.representative - expected) % p
    rep.add(
        "representative matches closed form modulo indeterminacy",
        fplinalg.in_span(delta, out.indeterminacy_basis, p)[0],
    )
    rep.add(
        "product does not vanish modulo indeterminacy",
        not out.vanishes,
        indeterminacy_rank=out.indeterminacy_rank,
    )
    rep.data["outcome"] = out.as_dict()
    return rep


def kty_massey_table(p: int = 2):
    """<alpha, alpha, beta> for every pair of classes of the curve group over F_p."""
    pres = kty_presentation()
    table = []
    for alpha in itertools.product(range(p), repeat=3):
        for beta in itertools.product(range(p), repeat=3):
            entry = {"alpha": list(alpha), "beta": list(beta)}
            try:
                out = massey_mod_indeterminacy(pres, alpha, alpha, beta, p)
            except UndefinedProductError:
                entry.update(defined=False, vanishes=None, representative=None)
            else:
                entry.update(
                    defined=True,
                    vanishes=out.vanishes,
                    representative=_ints(out.representative),
                )
            table.append(entry)
    return table


def verify_kty() -> Report:
    """Cup products and <alpha, alpha, beta> over Z_2 for the conic-and-tangents curve."""
    rep = Report("kty", data={"prime": 2})
    pres = kty_presentation()
    cups = cup_table(pres, 2)
    nonzero = sorted({tuple(sorted(k)) for k, v in cups.items() if v.any()})
    rep.add(
        "only e1 ∪ e2 is nonzero",
        nonzero == [(1, 2)],
        nonzero_pairs=[list(k) for k in nonzero],
        e1_cup_e2=_ints(cups[1, 2]),
    )
    table = kty_massey_table(2)
    rep.data["table"] = table
    rep.data["relator_names"] = pres.relator_names

    special = {(0, 0, 0), (1, 1, 1)}
    missing = []
    for alpha in itertools.product((0, 1), repeat=3):
        if alpha in special:
            continue
        witnesses = [
            e["beta"]
            for e in table
            if tuple(e["alpha"]) == alpha and e["defined"] and not e["vanishes"]
        ]
        if not witnesses:
            missing.append(list(alpha))
    rep.add(
        "non-vanishing for every alpha outside Z_2(e1+e2+e3)",
        not missing,
        alphas_without_witness=missing,
    )
    return rep
