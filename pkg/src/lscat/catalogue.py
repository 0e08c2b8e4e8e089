"""Built-in, citation-annotated records of standard closed manifolds.

Every numerical fact that is not recomputed here (category values in
particular) carries its literature citation as a string, so reports can
print provenance.  Parametric families (special orthogonal groups,
tori, spheres, orientable surfaces) are generated lazily and cached by
parameter; products are available on demand through names such as
``S3xS3``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .bounds import BoundLedger, MorseData, cat_bounds, cup_length, so_n_presentation
from .rings import (
    GeneratorSpec,
    MultiplicationTable,
    Ring,
    TruncatedPresentation,
    expand_to_table,
    tensor_product,
)

SO_KNOWN_CAT = {3: 3, 4: 4, 5: 8, 6: 9, 7: 11, 8: 12, 9: 20}
SO_CAT_CITATION = "Iwase-Mimura-Nishimoto: LS category of SO(n), n <= 9"
G2_CAT_CITATION = "Iwase-Mimura: LS category of exceptional Lie groups"
TORUS_CAT_CITATION = "standard: the k-torus has category k"
SPHERE_CAT_CITATION = "standard: spheres have category 1"
SURFACE_CAT_CITATION = "standard: closed orientable surfaces have category 2 for genus >= 1"

SURFACE_CRIT_STAR_NOTE = (
    "recorded discrepancy: the literature value crit*(S_g) = 2g for g >= 1 "
    "contradicts the Morse bound SB(S_g) = 2g+2 <= crit*; suspected erratum, "
    "the ledger keeps the Betti-sum bound"
)


class UnknownSpaceError(ValueError):
    """Requested catalogue name does not resolve."""


@dataclass(frozen=True)
class SpaceRecord:
    """Catalogue entry for one closed manifold.

    ``connectivity`` c means the space is c-connected (0 = merely
    connected).  ``known_cat`` is cited data, never computed; when
    present it must sit between the ring's cup-length and the
    dimension.  G2 carries no ring (flags only).
    """

    name: str
    dimension: int
    connectivity: int
    orientable: bool
    stably_parallelizable: bool
    ring: Ring | None
    morse: MorseData | None = None
    known_cat: tuple[int, str] | None = None
    genus: int | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.ring is not None and self.ring.top_degree != self.dimension:
            raise ValueError(
                f"{self.name}: ring top degree {self.ring.top_degree} "
                f"!= dimension {self.dimension}"
            )
        if self.known_cat is not None:
            value = self.known_cat[0]
            if not 0 <= value <= self.dimension:
                raise ValueError(f"{self.name}: known cat {value} outside [0, dim]")
            if self.ring is not None and cup_length(self.ring) > value:
                raise ValueError(
                    f"{self.name}: known cat {value} below the cup-length bound"
                )

    @property
    def simply_connected(self) -> bool:
        return self.connectivity >= 1

    def ledger(self) -> BoundLedger | None:
        """Bound ledger for this record; None when no ring data is stored."""
        if self.ring is None:
            return None
        value, citation = self.known_cat if self.known_cat else (None, "")
        return cat_bounds(
            self.ring,
            self.dimension,
            known_cat=value,
            known_cat_citation=citation,
            morse=self.morse,
        )


def surface_table(g: int) -> MultiplicationTable:
    """Cohomology table of the closed orientable genus-g surface.

    Basis: unit; a_1..a_g, b_1..b_g in degree 1; the top class w in
    degree 2, with a_i b_i = w and all other degree-1 products zero.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    basis = [("1", 0)]
    basis += [(f"a{i}", 1) for i in range(1, g + 1)]
    basis += [(f"b{i}", 1) for i in range(1, g + 1)]
    basis += [("w", 2)]
    products = {(f"a{i}", f"b{i}"): frozenset({"w"}) for i in range(1, g + 1)}
    return MultiplicationTable(basis, 2, products)


@lru_cache(maxsize=None)
def _point() -> SpaceRecord:
    ring = TruncatedPresentation((), (), 0)
    return SpaceRecord(
        name="point",
        dimension=0,
        connectivity=0,
        orientable=True,
        stably_parallelizable=True,
        ring=ring,
        morse=MorseData((1,), (0,), True, 0),
        known_cat=(0, "a point is contractible"),
    )


@lru_cache(maxsize=None)
def _sphere(n: int) -> SpaceRecord:
    if n < 1:
        raise UnknownSpaceError("spheres S n need n >= 1")
    ring = TruncatedPresentation((GeneratorSpec(f"x{n}", n),), (2,), n)
    ranks = tuple(1 if d in (0, n) else 0 for d in range(n + 1))
    return SpaceRecord(
        name=f"S{n}",
        dimension=n,
        connectivity=n - 1,
        orientable=True,
        stably_parallelizable=True,
        ring=ring,
        morse=MorseData(ranks, (0,) * (n + 1), n >= 2, n),
        known_cat=(1, SPHERE_CAT_CITATION),
    )


@lru_cache(maxsize=None)
def _torus(k: int) -> SpaceRecord:
    if k < 1:
        raise UnknownSpaceError("tori T k need k >= 1")
    gens = tuple(GeneratorSpec(f"t{i}", 1) for i in range(1, k + 1))
    ring = TruncatedPresentation(gens, (2,) * k, k)
    ranks = [0] * (k + 1)
    c = 1
    for d in range(k + 1):
        ranks[d] = c
        c = c * (k - d) // (d + 1)
    return SpaceRecord(
        name=f"T{k}",
        dimension=k,
        connectivity=0,
        orientable=True,
        stably_parallelizable=True,
        ring=ring,
        morse=MorseData(tuple(ranks), (0,) * (k + 1), False, k),
        known_cat=(k, TORUS_CAT_CITATION),
    )


@lru_cache(maxsize=None)
def _special_orthogonal(n: int) -> SpaceRecord:
    if n < 2:
        raise UnknownSpaceError("SO n needs n >= 2")
    known = (SO_KNOWN_CAT[n], SO_CAT_CITATION) if n in SO_KNOWN_CAT else None
    return SpaceRecord(
        name=f"SO{n}",
        dimension=n * (n - 1) // 2,
        connectivity=0,
        orientable=True,
        stably_parallelizable=True,
        ring=so_n_presentation(n),
        known_cat=known,
    )


@lru_cache(maxsize=None)
def _surface(g: int) -> SpaceRecord:
    if g < 0:
        raise UnknownSpaceError("surfaces S_g need g >= 0")
    if g == 0:
        known = (1, "standard: the 2-sphere has category 1")
    elif g == 1:
        known = (2, "category of the 2-torus is 2 (torus family)")
    else:
        known = (2, SURFACE_CAT_CITATION)
    return SpaceRecord(
        name=f"S_{g}",
        dimension=2,
        connectivity=1 if g == 0 else 0,
        orientable=True,
        stably_parallelizable=True,
        ring=surface_table(g),
        morse=MorseData((1, 2 * g, 1), (0, 0, 0), g == 0, 2),
        known_cat=known,
        genus=g,
        notes=(SURFACE_CRIT_STAR_NOTE,) if g >= 1 else (),
    )


@lru_cache(maxsize=None)
def _g2() -> SpaceRecord:
    return SpaceRecord(
        name="G2",
        dimension=14,
        connectivity=2,
        orientable=True,
        stably_parallelizable=True,
        ring=None,
        known_cat=(4, G2_CAT_CITATION),
        notes=("cohomology ring not stored; ring-based criteria are not applicable",),
    )


def _atomic(name: str) -> SpaceRecord:
    if name == "point":
        return _point()
    if name == "G2":
        return _g2()
    if name.startswith("SO") and name[2:].isdigit():
        return _special_orthogonal(int(name[2:]))
    if name.startswith("S_") and name[2:].isdigit():
        return _surface(int(name[2:]))
    if name.startswith("T") and name[1:].isdigit():
        return _torus(int(name[1:]))
    if name.startswith("S") and name[1:].isdigit():
        return _sphere(int(name[1:]))
    raise UnknownSpaceError(f"unknown space name {name!r}")


def _as_table(ring: Ring) -> MultiplicationTable:
    return ring if isinstance(ring, MultiplicationTable) else expand_to_table(ring)


def _product_record(name: str, parts: list[str]) -> SpaceRecord:
    records = [_atomic(p) for p in parts]
    for rec in records:
        if rec.ring is None:
            raise UnknownSpaceError(
                f"cannot form product {name!r}: {rec.name} has no ring data"
            )
    rings = [rec.ring for rec in records]
    with warnings.catch_warnings():
        # generator renames inside catalogue products are routine
        warnings.simplefilter("ignore")
        if all(isinstance(r, TruncatedPresentation) for r in rings):
            ring: Ring = rings[0]
            for r in rings[1:]:
                ring = tensor_product(ring, r)
        else:
            ring = _as_table(rings[0])
            for r in rings[1:]:
                ring = tensor_product(ring, _as_table(r))
    dimension = sum(rec.dimension for rec in records)
    morse = None
    if all(rec.morse is not None for rec in records) and all(
        not any(rec.morse.torsion_ranks) for rec in records
    ):
        ranks = [1]
        for rec in records:
            ranks = _convolve_ranks(ranks, list(rec.morse.ranks))
        morse = MorseData(
            tuple(ranks),
            (0,) * (dimension + 1),
            all(rec.simply_connected for rec in records),
            dimension,
        )
    return SpaceRecord(
        name=name,
        dimension=dimension,
        connectivity=min(rec.connectivity for rec in records),
        orientable=all(rec.orientable for rec in records),
        stably_parallelizable=all(rec.stably_parallelizable for rec in records),
        ring=ring,
        morse=morse,
    )


def _convolve_ranks(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def get(name: str) -> SpaceRecord:
    """Resolve a catalogue name; products via 'x', e.g. ``S3xS3``."""
    name = name.strip()
    parts = name.split("x")
    if len(parts) > 1 and all(parts):
        return _product_record(name, parts)
    return _atomic(name)


def names() -> list[str]:
    """Representative catalogue names (families accept any parameter)."""
    out = ["point", "G2"]
    out += [f"SO{n}" for n in range(3, 10)]
    out += [f"T{k}" for k in range(1, 9)]
    out += [f"S{n}" for n in range(1, 11)]
    out += [f"S_{g}" for g in range(0, 5)]
    return out
