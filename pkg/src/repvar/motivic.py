"""Registry of E-polynomial classes of standard strata and the two rules
for combining them: disjoint union (addition over a closed/open
decomposition) and Zariski-locally-trivial fibration with trivial
monodromy (multiplication by the fiber class).

The fibration rule is only valid when the monodromy is trivial; that is a
promise the caller makes, since nothing here can check it.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator

from .poly import LaurentPoly, ONE, Q, parse_poly

__all__ = [
    "UnknownStratum",
    "StratumRegistry",
    "standard_class",
    "disjoint_union",
    "fibration",
    "DEFAULT_REGISTRY",
]


class UnknownStratum(KeyError):
    """No class registered under the requested name."""


#: Classes of the strata that recur in every computation: the point, the
#: affine line (class q), the punctured line C*, the doubly punctured
#: line, the affine group C* x C, and the translation subgroup minus the
#: identity.
_STANDARD: dict[str, LaurentPoly] = {
    "point": ONE,
    "affine_line": Q,
    "torus": Q - 1,
    "line_minus_two_points": Q - 2,
    "aff_group": Q * (Q - 1),
    "aso_star": Q - 1,
}


class StratumRegistry:
    """Name -> class table, write-once per name.

    The standard entries are installed up front; users may register
    further classes computed by hand from their own stratifications,
    either directly or from a JSON file of name -> polynomial-text pairs.
    Existing names may not be overwritten.
    """

    def __init__(self, include_standard: bool = True):
        self._classes: dict[str, LaurentPoly] = dict(_STANDARD) if include_standard else {}

    def get(self, name: str) -> LaurentPoly:
        try:
            return self._classes[name]
        except KeyError:
            raise UnknownStratum(name) from None

    def register(self, name: str, value: LaurentPoly) -> None:
        if name in self._classes:
            raise ValueError(f"stratum class {name!r} is already registered")
        if not isinstance(value, LaurentPoly):
            raise TypeError("stratum class must be a LaurentPoly")
        self._classes[name] = value

    def load_json(self, path: "str | Path") -> list[str]:
        """Register every (name, polynomial-text) pair from a JSON object.

        Returns the list of names added.
        """
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ValueError("registry file must be a JSON object of name -> polynomial text")
        added = []
        for name, text in data.items():
            self.register(str(name), parse_poly(str(text)))
            added.append(str(name))
        return added

    def names(self) -> Iterator[str]:
        return iter(sorted(self._classes))

    def __contains__(self, name: str) -> bool:
        return name in self._classes


DEFAULT_REGISTRY = StratumRegistry()


def standard_class(name: str) -> LaurentPoly:
    """Look up a class in the default registry."""
    return DEFAULT_REGISTRY.get(name)


def disjoint_union(e1: LaurentPoly, e2: LaurentPoly) -> LaurentPoly:
    """Class of a disjoint union: classes add over a closed/open split."""
    return e1 + e2


def fibration(base_e: LaurentPoly, fiber_e: LaurentPoly) -> LaurentPoly:
    """Class of the total space of a trivial-monodromy fibration.

    The caller asserts the monodromy is trivial; with nontrivial
    monodromy the product rule is simply false and this function would
    silently give a wrong answer.
    """
    return base_e * fiber_e
