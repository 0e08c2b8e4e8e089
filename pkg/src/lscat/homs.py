"""Induced homomorphisms of degree-one maps and the certification criteria.

Direction convention, fixed everywhere: a map record describes
``f: M -> N`` (M the domain manifold, N the range) and carries the
induced ring homomorphism the other way, ``f*: H*(N) -> H*(M)``.  The
degree of f is asserted metadata; the toolkit verifies only its
necessary mod-2 consequences (per-degree injectivity, top class onto
top class) and never claims a map exists.

A verdict's status is "violated" only when a necessary condition for
the existence of a degree +-1 map provably fails; "certified" on the
category-transferring criteria means cat(domain) >= cat(range) holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bounds import BoundLedger, MorseData, cup_length, morse_lower_bound
from .catalogue import SpaceRecord
from .gf2 import BitMatrix, is_injective
from .rings import Element, MultiplicationTable, Ring, TruncatedPresentation

CERTIFIED = "certified"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not_applicable"

# criteria whose "certified" status asserts cat(domain) >= cat(range);
# the others certify necessary conditions or different invariants
CAT_TRANSFER_IDS = frozenset({"low_dim", "cor_cat_transfer", "thm_main"})

OPEN_QUESTION_NOTE = (
    "ballcat/crit monotonicity under degree-one maps: open question - no criterion"
)


class HomValidationError(ValueError):
    """The given generator images do not define a graded ring homomorphism."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(problems))


class DimensionMismatch(ValueError):
    """Domain and range dimensions differ; the comparison requires equality."""


@dataclass(frozen=True)
class CriterionVerdict:
    criterion_id: str
    status: str
    reason: str
    citations: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "status": self.status,
            "reason": self.reason,
            "citations": list(self.citations),
        }


@dataclass(frozen=True)
class RingHomSpec:
    """A graded ring homomorphism given by images of source generators.

    ``source`` is H*(N) (cohomology of the map's range), ``target`` is
    H*(M).  For presentation sources the images are keyed by generator
    name; for table sources every non-unit basis label needs an image.
    """

    source: Ring
    target: Ring
    images: Mapping[str, Element]
    asserted_degree: int = 1

    def __post_init__(self) -> None:
        if self.asserted_degree not in (1, -1):
            raise ValueError("asserted degree must be +1 or -1")


@dataclass(frozen=True)
class ValidatedHom:
    """A RingHomSpec with verified well-definedness and per-degree matrices.

    ``matrices[d]`` is the induced GF(2)-linear map H^d(N) -> H^d(M) in
    the rings' deterministic bases: rows index the target basis,
    columns the source basis.
    """

    spec: RingHomSpec
    matrices: tuple[BitMatrix, ...]
    _images: Mapping[object, Element] = field(repr=False, default_factory=dict)

    def apply(self, element: Element) -> Element:
        """Image of an arbitrary source element in the target ring."""
        acc = Element.zero()
        for term in element.terms:
            img = self._images.get(term)
            if img is None:
                raise ValueError(f"no image recorded for source term {term!r}")
            acc = acc + img
        return acc


def _element_power(ring: Ring, e: Element, n: int) -> Element:
    result = ring.unit()
    base = e
    while n:
        if n & 1:
            result = ring.multiply(result, base)
        n >>= 1
        if n:
            base = ring.multiply(base, base)
    return result


def _coordinates(ring: Ring, element: Element, basis: list) -> list[int]:
    index = {t: i for i, t in enumerate(basis)}
    coords = [0] * len(basis)
    for t in element.terms:
        coords[index[t]] = 1
    return coords


def validate_hom(spec: RingHomSpec) -> ValidatedHom:
    """Check that the images define a graded ring homomorphism.

    Verifies degree preservation on generators, vanishing of all source
    relations after substitution, and unit -> unit; returns the induced
    per-degree matrices.  Raises :class:`HomValidationError` listing
    every problem found.
    """
    problems: list[str] = []
    source, target = spec.source, spec.target
    term_images: dict[object, Element] = {}

    if isinstance(source, TruncatedPresentation):
        known = {g.name for g in source.generators}
        for key in spec.images:
            if key not in known:
                problems.append(f"unknown generator {key!r}")
        gen_images: dict[str, Element] = {}
        for g, p in zip(source.generators, source.truncations):
            img = spec.images.get(g.name)
            if img is None:
                problems.append(f"no image given for generator {g.name!r}")
                img = Element.zero()
            gen_images[g.name] = img
            try:
                deg = target.element_degree(img)
            except ValueError as exc:
                problems.append(f"image of {g.name!r}: {exc}")
                gen_images[g.name] = Element.zero()
                continue
            if deg is not None and deg != g.degree:
                problems.append(
                    f"degree mismatch: {g.name!r} has degree {g.degree}, "
                    f"its image has degree {deg}"
                )
                continue
            power = _element_power(target, img, p)
            if power:
                problems.append(
                    f"relation {g.name}^{p} = 0 is not preserved: image power is nonzero"
                )
        if problems:
            raise HomValidationError(problems)

        memo: dict[tuple, Element] = {(0,) * source.ngens: target.unit()}

        def monomial_image(exps: tuple) -> Element:
            cached = memo.get(exps)
            if cached is not None:
                return cached
            i = next(j for j, e in enumerate(exps) if e > 0)
            prev = list(exps)
            prev[i] -= 1
            img = target.multiply(
                monomial_image(tuple(prev)), gen_images[source.generators[i].name]
            )
            memo[exps] = img
            return img

        for d in range(source.top_degree + 1):
            for mono in source.basis_in_degree(d):
                term_images[mono] = monomial_image(mono)

    elif isinstance(source, MultiplicationTable):
        labels = {l for l, _ in source.basis}
        for key in spec.images:
            if key not in labels:
                problems.append(f"unknown basis label {key!r}")
        for l, d in source.basis:
            if l == source.unit_label:
                img = spec.images.get(l, target.unit())
                if img != target.unit():
                    problems.append("unit must map to unit")
                term_images[l] = target.unit()
                continue
            img = spec.images.get(l)
            if img is None:
                problems.append(f"no image given for basis element {l!r}")
                img = Element.zero()
            term_images[l] = img
            try:
                deg = target.element_degree(img)
            except ValueError as exc:
                problems.append(f"image of {l!r}: {exc}")
                term_images[l] = Element.zero()
                continue
            if deg is not None and deg != d:
                problems.append(
                    f"degree mismatch: {l!r} has degree {d}, its image has degree {deg}"
                )
        if problems:
            raise HomValidationError(problems)
        for i, (la, _) in enumerate(source.basis):
            for lb, _ in source.basis[i:]:
                lhs = Element.zero()
                for t in source.product(la, lb):
                    lhs = lhs + term_images[t]
                rhs = target.multiply(term_images[la], term_images[lb])
                if lhs != rhs:
                    problems.append(
                        f"multiplicativity fails on ({la}, {lb}): "
                        f"image of product differs from product of images"
                    )
        if problems:
            raise HomValidationError(problems)
    else:
        raise TypeError(f"unsupported source ring {type(source).__name__}")

    matrices = []
    for d in range(source.top_degree + 1):
        src_basis = source.basis_in_degree(d)
        tgt_basis = target.basis_in_degree(d)
        rows = [[0] * len(src_basis) for _ in tgt_basis]
        for j, mono in enumerate(src_basis):
            img = term_images[mono]
            col = _coordinates(target, img, tgt_basis)
            for i, bit in enumerate(col):
                if bit:
                    rows[i][j] = 1
        matrices.append(BitMatrix.from_rows(rows, cols=len(src_basis)))
    return ValidatedHom(spec=spec, matrices=tuple(matrices), _images=term_images)


def compose(outer: ValidatedHom, inner: ValidatedHom) -> RingHomSpec:
    """Composite ring homomorphism outer . inner (apply inner first).

    Needs inner's target ring to be outer's source ring; the composite's
    per-degree matrices are the products of the factors' matrices.
    """
    if inner.spec.target != outer.spec.source:
        raise ValueError("composition needs inner.target == outer.source")
    src = inner.spec.source
    if isinstance(src, TruncatedPresentation):
        keys = [g.name for g in src.generators]
        images = {k: outer.apply(inner._images[_generator_term(src, k)]) for k in keys}
    else:
        keys = [l for l, _ in src.basis if l != src.unit_label]
        images = {k: outer.apply(inner._images[k]) for k in keys}
    degree = inner.spec.asserted_degree * outer.spec.asserted_degree
    return RingHomSpec(src, outer.spec.target, images, degree)


def _generator_term(p: TruncatedPresentation, name: str) -> tuple:
    i = p.generator_index[name]
    return tuple(1 if j == i else 0 for j in range(p.ngens))


def check_injectivity(vh: ValidatedHom) -> tuple[dict[int, bool], bool]:
    """Injectivity of the induced map per degree, up to dim of the range.

    For an asserted degree +-1 map, failure in any degree certifies that
    no such map with this induced homomorphism exists.
    """
    per_degree = {d: is_injective(m) for d, m in enumerate(vh.matrices)}
    return per_degree, all(per_degree.values())


def check_top_class(vh: ValidatedHom) -> bool:
    """Whether the range's top class maps to the domain's top class."""
    source, target = vh.spec.source, vh.spec.target
    if source.top_degree != target.top_degree:
        raise DimensionMismatch(
            f"top degrees differ: {source.top_degree} vs {target.top_degree}"
        )
    src_top = source.basis_in_degree(source.top_degree)
    tgt_top = target.basis_in_degree(target.top_degree)
    if len(src_top) != 1 or len(tgt_top) != 1:
        raise ValueError("both rings need a unique top class")
    return vh.apply(Element.of(src_top[0])) == Element.of(tgt_top[0])


def check_cl_monotone(m_ring: Ring, n_ring: Ring) -> CriterionVerdict:
    """Cup-length is monotone under degree +-1 maps: cl(M) >= cl(N)."""
    cl_m = cup_length(m_ring)
    cl_n = cup_length(n_ring)
    if cl_m >= cl_n:
        return CriterionVerdict(
            "prop_cl_monotone",
            CERTIFIED,
            f"cup-length of domain {cl_m} >= {cl_n} of range: necessary condition holds",
            ("cup-length is monotone under degree-one maps",),
        )
    return CriterionVerdict(
        "prop_cl_monotone",
        VIOLATED,
        f"cup-length obstruction: cl(domain) = {cl_m} < {cl_n} = cl(range); "
        "no degree +-1 map from domain to range exists",
        ("cup-length is monotone under degree-one maps",),
    )


def cor_cat_transfer(
    m_ledger: BoundLedger | None, n_ledger: BoundLedger | None
) -> tuple[CriterionVerdict, BoundLedger | None]:
    """When cl(N) = cat(N), a degree +-1 map forces cat(M) >= cat(N).

    Returns the verdict together with M's ledger, tightened when the
    criterion certifies (tightening is monotone: lower bounds only rise).
    """
    if n_ledger is None:
        return (
            CriterionVerdict(
                "cor_cat_transfer", NOT_APPLICABLE, "no ring data for the range", ()
            ),
            m_ledger,
        )
    if n_ledger.cat.is_exact() and n_ledger.cat.lower == n_ledger.cup_length:
        cat_n = n_ledger.cat.lower
        if (
            m_ledger is not None
            and m_ledger.cat.upper is not None
            and m_ledger.cat.upper < cat_n
        ):
            # the forced conclusion cat(domain) >= cat(range) contradicts the
            # domain's known upper bound: no degree +-1 map can exist
            return (
                CriterionVerdict(
                    "cor_cat_transfer",
                    VIOLATED,
                    f"category obstruction: cat(domain) <= {m_ledger.cat.upper} "
                    f"< {cat_n} = cat(range) = cl(range); a degree +-1 map "
                    f"would force cat(domain) >= {cat_n}",
                    ("category transfer when cup-length is sharp",),
                ),
                m_ledger,
            )
        new_ledger = m_ledger
        if m_ledger is not None:
            new_ledger = m_ledger.tighten_cat_lower(
                cat_n, "category transfer: range has cl = cat"
            )
        return (
            CriterionVerdict(
                "cor_cat_transfer",
                CERTIFIED,
                f"cl(range) = cat(range) = {cat_n}, so cat(domain) >= {cat_n}",
                ("category transfer when cup-length is sharp",),
            ),
            new_ledger,
        )
    if n_ledger.cat.is_exact():
        reason = (
            f"cat(range) = {n_ledger.cat.lower} exceeds its cup-length "
            f"{n_ledger.cup_length}; this transfer does not apply"
        )
    else:
        reason = "cat(range) is not pinned to its cup-length"
    return CriterionVerdict("cor_cat_transfer", INCONCLUSIVE, reason, ()), m_ledger


def thm_main_check(
    m_record: SpaceRecord,
    n_record: SpaceRecord,
    n_ledger: BoundLedger | None = None,
) -> CriterionVerdict:
    """Connectivity-versus-dimension criterion for stably parallelizable
    manifolds: with N (q-1)-connected, dim N <= 2*q*cat(N) - 4 forces
    cat(M) >= cat(N)."""
    if not m_record.stably_parallelizable:
        return CriterionVerdict(
            "thm_main", INCONCLUSIVE, "domain is not flagged stably parallelizable", ()
        )
    if not n_record.stably_parallelizable:
        return CriterionVerdict(
            "thm_main", INCONCLUSIVE, "range is not flagged stably parallelizable", ()
        )
    q = n_record.connectivity + 1
    conditional = ""
    if n_record.known_cat is not None:
        cat_n = n_record.known_cat[0]
    elif n_ledger is not None and n_ledger.cat.is_exact():
        cat_n = n_ledger.cat.lower
    elif n_ledger is not None:
        cat_n = n_ledger.cat.lower
        conditional = (
            f" (cat value {cat_n} is only a lower bound; conclusion is conditional)"
        )
    else:
        return CriterionVerdict(
            "thm_main", INCONCLUSIVE, "no category value available for the range", ()
        )
    rhs = 2 * q * cat_n - 4
    dim = n_record.dimension
    if dim <= rhs:
        return CriterionVerdict(
            "thm_main",
            CERTIFIED,
            f"{dim} = dim range <= 2*q*cat - 4 = {rhs} with q = {q}, cat = {cat_n}; "
            f"both manifolds stably parallelizable, so cat(domain) >= cat(range)"
            + conditional,
            ("comparison theorem for stably parallelizable manifolds",),
        )
    return CriterionVerdict(
        "thm_main",
        INCONCLUSIVE,
        f"dimension condition fails: dim range = {dim} > 2*q*cat - 4 = {rhs} "
        f"(q = {q}, cat = {cat_n})",
        (),
    )


@dataclass(frozen=True)
class StabilizationCheck:
    """Torus-stabilization constant with its verified inequality instance."""

    k: int
    lhs: int  # 2k - 4
    rhs: int  # k + n

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def torus_stabilization_k(n: int) -> StabilizationCheck:
    """Smallest k with 2k - 4 >= k + n, namely k = n + 4.

    Crossing with a k-torus for this k makes the dimension condition of
    the stably-parallelizable comparison theorem hold automatically.
    """
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    k = n + 4
    check = StabilizationCheck(k=k, lhs=2 * k - 4, rhs=k + n)
    assert check.holds
    return check


def thm_torus_check(m_record: SpaceRecord, n_record: SpaceRecord) -> CriterionVerdict:
    """Stabilized transfer: after crossing with a large torus the category
    comparison holds for stably parallelizable manifolds."""
    if not (m_record.stably_parallelizable and n_record.stably_parallelizable):
        missing = "domain" if not m_record.stably_parallelizable else "range"
        return CriterionVerdict(
            "thm_torus", INCONCLUSIVE, f"{missing} is not flagged stably parallelizable", ()
        )
    n = m_record.dimension
    st = torus_stabilization_k(n)
    return CriterionVerdict(
        "thm_torus",
        CERTIFIED,
        f"cat(domain x T^k) >= cat(range x T^k) for k = {st.k} "
        f"(2k - 4 = {st.lhs} >= k + n = {st.rhs}); conclusion is about the "
        f"torus-stabilized product, not cat(domain) itself",
        ("torus stabilization of the comparison theorem",),
    )


def low_dim_check(
    n: int, m_genus: int | None = None, n_genus: int | None = None
) -> CriterionVerdict:
    """Unconditional transfer in dimensions up to 4.

    In dimension 2 the genus comparison is also reported when both
    genera are known; a failing comparison is a provable obstruction.
    """
    if n > 4:
        return CriterionVerdict(
            "low_dim", NOT_APPLICABLE, f"dimension {n} exceeds 4", ()
        )
    if n == 2 and m_genus is not None and n_genus is not None:
        if m_genus < n_genus:
            return CriterionVerdict(
                "low_dim",
                VIOLATED,
                f"genus obstruction: g(domain) = {m_genus} < {n_genus} = g(range); "
                "degree-one maps cannot decrease genus",
                ("genus monotonicity under degree-one maps",),
            )
        return CriterionVerdict(
            "low_dim",
            CERTIFIED,
            f"dimension 2: category transfers; genus monotone, "
            f"g(domain) = {m_genus} >= {n_genus} = g(range)",
            ("classification of surfaces",),
        )
    citations = {
        0: ("points",),
        1: ("dimension 1: both manifolds are circles",),
        2: ("classification of surfaces",),
        3: ("known category comparison theorem for closed orientable 3-manifolds",),
        4: (
            "known 4-manifold results: category at most 2 forces a free "
            "fundamental group, which degree-one maps preserve",
        ),
    }
    return CriterionVerdict(
        "low_dim",
        CERTIFIED,
        f"dimension {n} <= 4: cat(domain) >= cat(range) holds for every "
        "degree-one map",
        citations[n],
    )


def morse_transfer_check(m_data: MorseData, n_data: MorseData) -> CriterionVerdict:
    """Termwise homology-rank necessity plus crit* transfer under Smale.

    Degree-one maps are surjective on homology, so every rank and
    torsion rank of the domain must dominate the range's; when both
    manifolds are simply connected of dimension >= 6 the Morse counts
    are exact and crit*(domain) >= crit*(range) follows.
    """
    if m_data.dimension != n_data.dimension:
        raise DimensionMismatch(
            f"Morse data dimensions differ: {m_data.dimension} vs {n_data.dimension}"
        )
    bad_ranks = [
        lam
        for lam in range(n_data.dimension + 1)
        if m_data.ranks[lam] < n_data.ranks[lam]
    ]
    bad_torsion = [
        lam
        for lam in range(n_data.dimension + 1)
        if m_data.torsion_ranks[lam] < n_data.torsion_ranks[lam]
    ]
    if bad_ranks or bad_torsion:
        bits = []
        if bad_ranks:
            bits.append(f"homology ranks at degrees {bad_ranks}")
        if bad_torsion:
            bits.append(f"torsion ranks at degrees {bad_torsion}")
        return CriterionVerdict(
            "morse_transfer",
            VIOLATED,
            "rank obstruction: domain fails to dominate range in "
            + " and ".join(bits)
            + "; degree-one maps are surjective on homology",
            ("homology surjectivity of degree-one maps",),
        )
    m_bound, m_exact = morse_lower_bound(m_data)
    n_bound, n_exact = morse_lower_bound(n_data)
    if m_exact and n_exact:
        return CriterionVerdict(
            "morse_transfer",
            CERTIFIED,
            f"crit*(domain) = {m_bound} >= {n_bound} = crit*(range); Morse "
            "counts are exact (simply connected, dimension >= 6)",
            ("Smale: Morse equalities for simply connected manifolds of dim >= 6",),
        )
    return CriterionVerdict(
        "morse_transfer",
        INCONCLUSIVE,
        f"termwise ranks compatible (Morse bounds {m_bound} >= {n_bound}), but "
        "exactness needs both manifolds simply connected of dimension >= 6",
        (),
    )


@dataclass(frozen=True)
class Report:
    """Ordered criterion verdicts for one domain/range pair."""

    domain: str
    range: str
    verdicts: tuple[CriterionVerdict, ...]
    overall: str
    notes: tuple[str, ...]
    domain_ledger: BoundLedger | None = None
    range_ledger: BoundLedger | None = None

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "range": self.range,
            "overall": self.overall,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "notes": list(self.notes),
            "domain_ledger": self.domain_ledger.to_dict() if self.domain_ledger else None,
            "range_ledger": self.range_ledger.to_dict() if self.range_ledger else None,
        }


def full_report(
    m_record: SpaceRecord,
    n_record: SpaceRecord,
    hom: RingHomSpec | None = None,
) -> Report:
    """Run every applicable criterion for maps M -> N of degree +-1.

    Overall status: "violated" when any necessary condition provably
    fails; otherwise "certified" when some criterion establishes
    cat(domain) >= cat(range); otherwise "inconclusive".  The verdict
    order is fixed and the report is deterministic.
    """
    if m_record.dimension != n_record.dimension:
        raise DimensionMismatch(
            f"dim(domain) = {m_record.dimension} != {n_record.dimension} = dim(range); "
            "the degree-one comparison requires equal dimensions"
        )
    if hom is not None and (hom.source != n_record.ring or hom.target != m_record.ring):
        raise ValueError(
            "the homomorphism's rings do not match the given records "
            "(expected source = range ring, target = domain ring)"
        )
    verdicts: list[CriterionVerdict] = []

    verdicts.append(
        low_dim_check(m_record.dimension, m_record.genus, n_record.genus)
    )

    m_ledger = m_record.ledger()
    n_ledger = n_record.ledger()

    if m_record.ring is not None and n_record.ring is not None:
        verdicts.append(check_cl_monotone(m_record.ring, n_record.ring))
    else:
        missing = m_record.name if m_record.ring is None else n_record.name
        verdicts.append(
            CriterionVerdict(
                "prop_cl_monotone",
                NOT_APPLICABLE,
                f"no ring data for {missing}",
                (),
            )
        )

    transfer_verdict, m_ledger = cor_cat_transfer(m_ledger, n_ledger)
    verdicts.append(transfer_verdict)

    verdicts.append(thm_main_check(m_record, n_record, n_ledger))

    if m_record.morse is not None and n_record.morse is not None:
        verdicts.append(morse_transfer_check(m_record.morse, n_record.morse))
    else:
        missing = m_record.name if m_record.morse is None else n_record.name
        verdicts.append(
            CriterionVerdict(
                "morse_transfer",
                NOT_APPLICABLE,
                f"no Morse data for {missing}",
                (),
            )
        )

    verdicts.append(thm_torus_check(m_record, n_record))

    if hom is not None:
        verdicts.append(_hom_verdict(hom))

    if any(v.status == VIOLATED for v in verdicts):
        overall = VIOLATED
    elif any(
        v.criterion_id in CAT_TRANSFER_IDS and v.status == CERTIFIED for v in verdicts
    ):
        overall = CERTIFIED
    else:
        overall = INCONCLUSIVE

    return Report(
        domain=m_record.name,
        range=n_record.name,
        verdicts=tuple(verdicts),
        overall=overall,
        notes=(OPEN_QUESTION_NOTE,),
        domain_ledger=m_ledger,
        range_ledger=n_ledger,
    )


def _hom_verdict(hom: RingHomSpec) -> CriterionVerdict:
    vh = validate_hom(hom)
    per_degree, overall = check_injectivity(vh)
    try:
        top_ok: bool | None = check_top_class(vh)
    except (DimensionMismatch, ValueError):
        top_ok = None
    problems = []
    if not overall:
        failing = sorted(d for d, ok in per_degree.items() if not ok)
        problems.append(
            f"induced map has a kernel in degrees {failing}; a degree +-1 map "
            "induces a monomorphism on cohomology"
        )
    if top_ok is False:
        problems.append(
            "top class of the range does not hit the top class of the domain; "
            "incompatible with degree +-1"
        )
    if problems:
        return CriterionVerdict(
            "lemma_injectivity",
            VIOLATED,
            "; ".join(problems),
            ("degree-one maps induce injective cohomology homomorphisms",),
        )
    top_note = "top class preserved" if top_ok else "top class check not applicable"
    n = len(vh.matrices) - 1
    return CriterionVerdict(
        "lemma_injectivity",
        CERTIFIED,
        f"induced homomorphism injective in every degree 0..{n}; {top_note}",
        ("degree-one maps induce injective cohomology homomorphisms",),
    )
