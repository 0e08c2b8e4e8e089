"""Numerical lower bounds: cup-length, Morse counts, and the bound ledger.

The cup-length is computed two independent ways: a closed formula for
pure-truncation presentations (sum of truncation exponents minus one
each) and a definitional search on multiplication tables (largest m
with a nonzero m-th power of the positive-degree ideal).  The two are
cross-checked whenever the table stays small enough.

The ledger chains every bound the toolkit knows:

    cup_length <= e* <= cat <= dim
    cat <= ballcat <= crit - 1
    SB <= crit*

cat itself is never computed; known values enter as cited data.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .gf2 import XorBasis
from .rings import (
    GeneratorSpec,
    MultiplicationTable,
    Ring,
    TruncatedPresentation,
    expand_to_table,
)

# tables up to this many basis elements get the mandatory formula/search
# cross-check; beyond it only the formula is used for presentations
CROSS_CHECK_LIMIT = 4096


@dataclass(frozen=True)
class MorseData:
    """Homology input for Morse counting: ranks and torsion ranks per degree."""

    ranks: tuple[int, ...]
    torsion_ranks: tuple[int, ...]
    simply_connected: bool
    dimension: int

    def __post_init__(self) -> None:
        n = self.dimension
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.ranks) != n + 1 or len(self.torsion_ranks) != n + 1:
            raise ValueError(f"rank lists must have length dimension+1 = {n + 1}")
        if any(r < 0 for r in self.ranks) or any(t < 0 for t in self.torsion_ranks):
            raise ValueError("ranks must be nonnegative")


def betti_sum(ranks: Sequence[int]) -> int:
    """Sum of Betti numbers SB; a Morse-theoretic lower bound for crit*."""
    return sum(ranks)


def morse_lower_bound(d: MorseData) -> tuple[int, bool]:
    """Total of the Morse inequalities m_l >= r_l + t_l + t_(l-1).

    Returns (bound, exact).  The bound is attained by some Morse
    function exactly when the manifold is simply connected of dimension
    at least 6 (Smale), which is what the flag reports.
    """
    total = 0
    for lam in range(d.dimension + 1):
        t_prev = d.torsion_ranks[lam - 1] if lam > 0 else 0
        total += d.ranks[lam] + d.torsion_ranks[lam] + t_prev
    exact = d.simply_connected and d.dimension >= 6
    return total, exact


def cup_length_formula(p: TruncatedPresentation) -> int:
    """Cup-length of a pure-truncation presentation: sum of (p_i - 1).

    The product of all top generator powers is the longest nonzero
    product of positive classes, and any longer product overflows some
    truncation.
    """
    return sum(q - 1 for q in p.truncations)


def so_n_presentation(n: int) -> TruncatedPresentation:
    """Mod-2 cohomology of SO(n): generators b_i for odd i < n, truncated
    at the least power of 2 whose power of b_i reaches degree >= n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    gens: list[GeneratorSpec] = []
    truncs: list[int] = []
    for i in range(1, n, 2):
        p = 1
        while i * p < n:
            p *= 2
        if p > 1:
            gens.append(GeneratorSpec(f"b{i}", i))
            truncs.append(p)
    return TruncatedPresentation(tuple(gens), tuple(truncs), n * (n - 1) // 2)


def cup_length_search(t: MultiplicationTable) -> int:
    """Largest m with a nonzero m-th power of the positive-degree ideal I.

    Iterates spans degree by degree: the span of I^(m+1) is generated
    by products of a spanning set of I^m with ideal generators of I.
    By default every positive basis element is used as a generator (the
    definitional choice); tables that know a smaller generating set
    (expansions, tensor products) supply it via ``generator_hint``,
    which spans the same ideals since I^m . I = I^m . (generators).
    """
    positive = [(l, d) for l, d in t.basis if d > 0]
    if not positive:
        return 0
    top = t.top_degree
    deg_labels: dict[int, list[str]] = {}
    for l, d in t.basis:
        deg_labels.setdefault(d, []).append(l)
    local = {l: i for labels in deg_labels.values() for i, l in enumerate(labels)}
    degree = dict(t.basis)

    hint = getattr(t, "generator_hint", None)
    gens = [(g, degree[g]) for g in hint] if hint else positive

    mask_cache: dict[tuple[str, str], int] = {}

    def product_mask(label: str, g: str) -> int:
        key = (label, g)
        m = mask_cache.get(key)
        if m is None:
            m = 0
            for r in t.product(label, g):
                m |= 1 << local[r]
            mask_cache[key] = m
        return m

    spans: dict[int, XorBasis] = {}
    for l, d in positive:
        spans.setdefault(d, XorBasis()).insert(1 << local[l])

    m = 1
    while True:
        new_spans: dict[int, XorBasis] = {}
        for d, span in spans.items():
            labels = deg_labels[d]
            for v in span.vectors():
                for g, dg in gens:
                    e = d + dg
                    if e > top or e not in deg_labels:
                        continue
                    w = 0
                    bits = v
                    while bits:
                        low = bits & -bits
                        w ^= product_mask(labels[low.bit_length() - 1], g)
                        bits ^= low
                    if w:
                        new_spans.setdefault(e, XorBasis()).insert(w)
        new_spans = {d: b for d, b in new_spans.items() if len(b)}
        if not new_spans:
            return m
        spans = new_spans
        m += 1


def cup_length(ring: Ring) -> int:
    """Cup-length of a ring, cross-checking formula against search.

    Presentations use the closed formula; when the monomial basis is
    small enough the definitional ideal-power search must agree, and a
    mismatch is an internal consistency failure, not user error.
    """
    if isinstance(ring, TruncatedPresentation):
        cl = cup_length_formula(ring)
        if ring.total_dimension <= CROSS_CHECK_LIMIT:
            searched = cup_length_search(expand_to_table(ring))
            if searched != cl:
                raise RuntimeError(
                    f"cup-length cross-check failed: formula {cl}, search {searched}"
                )
        return cl
    return cup_length_search(ring)


class LedgerError(ValueError):
    """A bound ledger violates the chain of inequalities."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper] with provenance per endpoint.

    ``upper is None`` means unbounded above.
    """

    lower: int
    upper: int | None
    lower_provenance: str = ""
    upper_provenance: str = ""

    def check(self, name: str) -> None:
        if self.lower < 0:
            raise LedgerError(f"{name}: lower bound {self.lower} negative")
        if self.upper is not None and self.lower > self.upper:
            raise LedgerError(f"{name}: lower {self.lower} exceeds upper {self.upper}")

    def is_exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_provenance": self.lower_provenance,
            "upper_provenance": self.upper_provenance,
        }

    def __str__(self) -> str:
        if self.is_exact():
            return f"= {self.lower}"
        hi = "inf" if self.upper is None else str(self.upper)
        return f"in [{self.lower}, {hi}]"


@dataclass(frozen=True)
class BoundLedger:
    """Interval bounds for cat, e*, ballcat, crit and crit* of one space."""

    dimension: int
    cup_length: int
    cat: Interval
    toomer_e: Interval
    ballcat: Interval
    crit: Interval
    crit_star: Interval
    betti_total: int | None = None

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        for name in ("cat", "toomer_e", "ballcat", "crit", "crit_star"):
            getattr(self, name).check(name)
        if not (self.cat.lower >= self.toomer_e.lower >= self.cup_length):
            raise LedgerError(
                f"chain cl <= e*.lower <= cat.lower broken: "
                f"cl={self.cup_length}, e*={self.toomer_e.lower}, cat={self.cat.lower}"
            )
        if self.cat.upper is None or self.cat.upper > self.dimension:
            raise LedgerError(f"cat upper bound must be <= dimension {self.dimension}")
        if self.ballcat.lower < self.cat.lower:
            raise LedgerError("ballcat.lower must be >= cat.lower")
        if self.crit.lower < self.ballcat.lower + 1:
            raise LedgerError("crit.lower must be >= ballcat.lower + 1")
        if self.betti_total is not None and self.crit_star.lower < self.betti_total:
            raise LedgerError("crit_star.lower must cover the Betti sum")
        if self.crit_star.lower < self.crit.lower:
            raise LedgerError("crit_star.lower must be >= crit.lower")

    def tighten_cat_lower(self, value: int, provenance: str) -> "BoundLedger":
        """Raise cat's lower bound (monotone; never lowers) and re-chain."""
        if value <= self.cat.lower:
            return self
        if self.cat.upper is not None and value > self.cat.upper:
            raise LedgerError(
                f"cannot raise cat lower bound to {value}: upper bound is {self.cat.upper}"
            )
        cat = replace(self.cat, lower=value, lower_provenance=provenance)
        ballcat = self.ballcat
        if ballcat.lower < value:
            ballcat = replace(ballcat, lower=value, lower_provenance=f"{provenance} (cat <= ballcat)")
        crit = self.crit
        if crit.lower < ballcat.lower + 1:
            crit = replace(crit, lower=ballcat.lower + 1, lower_provenance="ballcat + 1")
        crit_star = self.crit_star
        if crit_star.lower < crit.lower:
            crit_star = replace(crit_star, lower=crit.lower, lower_provenance="at least crit")
        return replace(self, cat=cat, ballcat=ballcat, crit=crit, crit_star=crit_star)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "cup_length": self.cup_length,
            "betti_total": self.betti_total,
            "cat": self.cat.to_dict(),
            "toomer_e": self.toomer_e.to_dict(),
            "ballcat": self.ballcat.to_dict(),
            "crit": self.crit.to_dict(),
            "crit_star": self.crit_star.to_dict(),
        }


def cat_bounds(
    ring: Ring,
    dimension: int,
    known_cat: int | None = None,
    known_cat_citation: str = "",
    morse: MorseData | None = None,
) -> BoundLedger:
    """Assemble the bound ledger for one space.

    cat lands in [cup-length, dimension] unless a known value (cited
    data, never computed) collapses it.  e* is squeezed between the
    cup-length and cat's upper bound; it is never computed directly.
    """
    cl = cup_length(ring)
    if known_cat is not None and not cl <= known_cat <= dimension:
        raise LedgerError(
            f"known cat {known_cat} outside [cup-length, dimension] = [{cl}, {dimension}]"
        )
    if known_cat is not None:
        cite = known_cat_citation or "known value"
        cat = Interval(known_cat, known_cat, cite, cite)
    else:
        cat = Interval(cl, dimension, "cup-length bound", "dimension bound")
    toomer = Interval(
        cl,
        cat.upper,
        "cup-length bound (cl <= e*)",
        "squeezed under cat (e* <= cat)",
    )
    ballcat = Interval(cat.lower, dimension, "at least cat", "dimension bound")
    crit = Interval(ballcat.lower + 1, None, "ballcat + 1", "")
    sb = betti_sum(morse.ranks) if morse is not None else None
    if sb is not None and sb > crit.lower:
        crit_star = Interval(sb, None, "Betti sum (Morse theory)", "")
    else:
        crit_star = Interval(crit.lower, None, "at least crit", "")
    return BoundLedger(
        dimension=dimension,
        cup_length=cl,
        cat=cat,
        toomer_e=toomer,
        ballcat=ballcat,
        crit=crit,
        crit_star=crit_star,
        betti_total=sb,
    )
