"""Transfer-matrix evaluation of decorated closed surfaces.

A ``TqftDatum`` packages the finitely generated module a group's tube
operators act on: one square matrix per tube generator (the genus tube,
the optional plain cylinder, and one cylinder per puncture label), the
cap vector, the cup covector, and the group class ``e_G`` that normalizes
the final answer.  A closed surface of genus g with s ordered punctures
is the word

    cup . puncture_s . ... . puncture_1 . genus^g . cap

and its E-polynomial is the evaluated scalar divided by ``e_G`` raised to
the number of tubes in the word.  The division is exact for any datum
that comes from an actual group; a failure means the datum is
inconsistent.

Matrices follow the column convention: column j holds the image of
generator j, so words act by left multiplication on column vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .poly import LaurentPoly, ONE, PolyParseError, parse_poly

__all__ = [
    "InvalidDatum",
    "UnknownPunctureLabel",
    "TubeGenerator",
    "GENUS_TUBE",
    "IDENTITY_TUBE",
    "puncture_tube",
    "SurfaceSpec",
    "TubeWord",
    "TqftDatum",
    "assemble_word",
    "insert_identity_tubes",
    "evaluate_raw",
    "epoly_from_word",
    "epoly_rep_variety",
    "mat_mul",
    "mat_vec",
    "mat_pow",
    "mat_identity",
    "dot",
    "datum_to_json_dict",
    "datum_from_json_dict",
    "load_datum",
    "save_datum",
]


class InvalidDatum(ValueError):
    """A structural invariant of the datum fails."""


class UnknownPunctureLabel(KeyError):
    """A word references a puncture label the datum does not provide."""


Matrix = "tuple[tuple[LaurentPoly, ...], ...]"
Vector = "tuple[LaurentPoly, ...]"


# ----------------------------------------------------------------------
# Exact matrix algebra over the Laurent ring
# ----------------------------------------------------------------------


def dot(row: Sequence[LaurentPoly], col: Sequence[LaurentPoly]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for x, y in zip(row, col):
        total = total + x * y
    return total


def mat_vec(matrix: Sequence[Sequence[LaurentPoly]], vec: Sequence[LaurentPoly]) -> tuple:
    return tuple(dot(row, vec) for row in matrix)


def mat_mul(a: Sequence[Sequence[LaurentPoly]], b: Sequence[Sequence[LaurentPoly]]) -> tuple:
    size = len(b)
    cols = len(b[0])
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            acc = LaurentPoly.zero()
            for k in range(size):
                acc = acc + row[k] * b[k][j]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_identity(rank: int) -> tuple:
    one = LaurentPoly.one()
    zero = LaurentPoly.zero()
    return tuple(
        tuple(one if i == j else zero for j in range(rank)) for i in range(rank)
    )


def mat_pow(matrix: Sequence[Sequence[LaurentPoly]], k: int) -> tuple:
    """k-th power by binary exponentiation; k = 0 gives the identity."""
    if k < 0:
        raise ValueError("matrix powers must have exponent >= 0")
    result = mat_identity(len(matrix))
    base = tuple(tuple(row) for row in matrix)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


# ----------------------------------------------------------------------
# Words and surfaces
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TubeGenerator:
    """One tube in a word: the genus tube, the plain cylinder, or a
    labeled puncture cylinder."""

    kind: str
    label: str | None = None

    def __post_init__(self):
        if self.kind not in ("genus", "identity", "puncture"):
            raise ValueError(f"unknown tube kind {self.kind!r}")
        if (self.kind == "puncture") != (self.label is not None):
            raise ValueError("exactly puncture tubes carry a label")


GENUS_TUBE = TubeGenerator("genus")
IDENTITY_TUBE = TubeGenerator("identity")


def puncture_tube(label: str) -> TubeGenerator:
    return TubeGenerator("puncture", label)


@dataclass(frozen=True)
class SurfaceSpec:
    """A closed oriented surface: genus plus ordered puncture labels."""

    genus: int
    punctures: tuple[str, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        object.__setattr__(self, "punctures", tuple(self.punctures))


@dataclass(frozen=True)
class TubeWord:
    """Generator sequence between the cap and the cup; ``tube_count`` is
    its length and fixes the normalization exponent."""

    generators: tuple[TubeGenerator, ...]
    tube_count: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.tube_count != len(self.generators):
            raise ValueError("tube_count must equal the number of generators")

    @classmethod
    def of(cls, generators: Sequence[TubeGenerator]) -> "TubeWord":
        gens = tuple(generators)
        return cls(gens, len(gens))


def assemble_word(spec: SurfaceSpec) -> TubeWord:
    """Genus tubes first, then the punctures in their listed order."""
    gens = [GENUS_TUBE] * spec.genus + [puncture_tube(label) for label in spec.punctures]
    return TubeWord.of(gens)


def insert_identity_tubes(word: TubeWord, k: int) -> TubeWord:
    """Append k plain cylinders; a consistency probe, since the
    normalized evaluation must not change."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return TubeWord.of(word.generators + (IDENTITY_TUBE,) * k)


# ----------------------------------------------------------------------
# The datum
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TqftDatum:
    """Matrices and disc vectors for one coefficient module.

    Structural invariants are checked on construction; nothing verifies
    that the datum actually arises from a group, so an inconsistent
    custom datum surfaces later as a NonExactDivision.
    """

    rank: int
    e_g: LaurentPoly
    genus_tube: tuple
    puncture_tubes: Mapping[str, tuple] = field(default_factory=dict)
    identity_tube: tuple | None = None
    disc_in: tuple = ()
    disc_out: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "genus_tube", _freeze_matrix(self.genus_tube))
        object.__setattr__(
            self,
            "puncture_tubes",
            {str(k): _freeze_matrix(v) for k, v in dict(self.puncture_tubes).items()},
        )
        if self.identity_tube is not None:
            object.__setattr__(self, "identity_tube", _freeze_matrix(self.identity_tube))
        object.__setattr__(self, "disc_in", tuple(self.disc_in))
        object.__setattr__(self, "disc_out", tuple(self.disc_out))
        self._validate()

    def _validate(self) -> None:
        if self.rank < 1:
            raise InvalidDatum("rank must be a positive integer")
        _check_square(self.genus_tube, self.rank, "genus tube")
        if self.identity_tube is not None:
            _check_square(self.identity_tube, self.rank, "identity tube")
        for label, matrix in self.puncture_tubes.items():
            _check_square(matrix, self.rank, f"puncture tube {label!r}")
        if len(self.disc_in) != self.rank:
            raise InvalidDatum(f"disc_in must have length {self.rank}")
        if len(self.disc_out) != self.rank:
            raise InvalidDatum(f"disc_out must have length {self.rank}")
        if self.e_g.is_zero():
            raise InvalidDatum("e_G must be nonzero")
        if dot(self.disc_out, self.disc_in) != ONE:
            raise InvalidDatum("sphere normalization fails: disc_out . disc_in != 1")
        if self.identity_tube is not None:
            through = dot(self.disc_out, mat_vec(self.identity_tube, self.disc_in))
            if through != self.e_g:
                raise InvalidDatum(
                    "identity-tube consistency fails: disc_out . P . disc_in != e_G"
                )

    def tube_matrix(self, generator: TubeGenerator) -> tuple:
        if generator.kind == "genus":
            return self.genus_tube
        if generator.kind == "identity":
            if self.identity_tube is None:
                raise InvalidDatum("word uses the plain cylinder but the datum has no identity tube")
            return self.identity_tube
        try:
            return self.puncture_tubes[generator.label]
        except KeyError:
            raise UnknownPunctureLabel(generator.label) from None


def _freeze_matrix(matrix) -> tuple:
    return tuple(tuple(row) for row in matrix)


def _check_square(matrix: tuple, rank: int, what: str) -> None:
    if len(matrix) != rank or any(len(row) != rank for row in matrix):
        raise InvalidDatum(f"{what} must be a {rank}x{rank} matrix")


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------


def evaluate_raw(datum: TqftDatum, word: TubeWord) -> LaurentPoly:
    """Un-normalized scalar: disc_out . M_t ... M_1 . disc_in.

    Runs of equal generators (in particular the leading genus run) are
    applied through binary matrix powering.
    """
    vec = datum.disc_in
    gens = word.generators
    i = 0
    while i < len(gens):
        j = i
        while j < len(gens) and gens[j] == gens[i]:
            j += 1
        matrix = datum.tube_matrix(gens[i])
        run = j - i
        if run > 1:
            matrix = mat_pow(matrix, run)
        vec = mat_vec(matrix, vec)
        i = j
    return dot(datum.disc_out, vec)


def epoly_from_word(datum: TqftDatum, word: TubeWord) -> LaurentPoly:
    """Normalized evaluation: raw scalar divided by e_G^tube_count."""
    raw = evaluate_raw(datum, word)
    return raw.exact_div(datum.e_g ** word.tube_count)


def epoly_rep_variety(datum: TqftDatum, spec: SurfaceSpec) -> LaurentPoly:
    """E-polynomial of the representation variety of the decorated
    surface, computed over the given datum."""
    return epoly_from_word(datum, assemble_word(spec))


# ----------------------------------------------------------------------
# Datum files
# ----------------------------------------------------------------------


def _matrix_to_json(matrix: tuple) -> list[list[str]]:
    return [[entry.to_text() for entry in row] for row in matrix]


def _matrix_from_json(data, what: str) -> tuple:
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InvalidDatum(f"{what} must be a list of rows")
    try:
        return tuple(tuple(parse_poly(str(entry)) for entry in row) for row in data)
    except PolyParseError as exc:
        raise InvalidDatum(f"bad polynomial in {what}: {exc}") from exc


def datum_to_json_dict(datum: TqftDatum) -> dict:
    out: dict = {
        "rank": datum.rank,
        "e_G": datum.e_g.to_text(),
        "L": _matrix_to_json(datum.genus_tube),
        "punctures": {label: _matrix_to_json(m) for label, m in sorted(datum.puncture_tubes.items())},
        "disc_in": [entry.to_text() for entry in datum.disc_in],
        "disc_out": [entry.to_text() for entry in datum.disc_out],
    }
    if datum.identity_tube is not None:
        out["P"] = _matrix_to_json(datum.identity_tube)
    return out


def datum_from_json_dict(data: dict) -> TqftDatum:
    if not isinstance(data, dict):
        raise InvalidDatum("datum file must contain a JSON object")
    missing = {"rank", "e_G", "L", "disc_in", "disc_out"} - set(data)
    if missing:
        raise InvalidDatum(f"datum file is missing keys: {', '.join(sorted(missing))}")
    try:
        rank = int(data["rank"])
    except (TypeError, ValueError):
        raise InvalidDatum("rank must be an integer") from None
    try:
        e_g = parse_poly(str(data["e_G"]))
        disc_in = tuple(parse_poly(str(x)) for x in data["disc_in"])
        disc_out = tuple(parse_poly(str(x)) for x in data["disc_out"])
    except PolyParseError as exc:
        raise InvalidDatum(f"bad polynomial in datum file: {exc}") from exc
    punctures = data.get("punctures", {})
    if not isinstance(punctures, dict):
        raise InvalidDatum("punctures must be an object of label -> matrix")
    return TqftDatum(
        rank=rank,
        e_g=e_g,
        genus_tube=_matrix_from_json(data["L"], "L"),
        puncture_tubes={
            str(label): _matrix_from_json(m, f"punctures[{label!r}]")
            for label, m in punctures.items()
        },
        identity_tube=_matrix_from_json(data["P"], "P") if "P" in data else None,
        disc_in=disc_in,
        disc_out=disc_out,
    )


def load_datum(path: "str | Path") -> TqftDatum:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    return datum_from_json_dict(data)


def save_datum(datum: TqftDatum, path: "str | Path") -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(datum_to_json_dict(datum), handle, indent=2)
        handle.write("\n")
