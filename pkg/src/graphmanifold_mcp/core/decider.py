"""
Matrix criteria for the seven properties.

    Im, HI  the diagonal of A has one weak sign and A^+ is semipositive and
            singular, or A^+ has a negative eigenvalue
    F       A is supersingular
    E       some A^eps has a supersingular principal submatrix
    VF      H is semipositive and supersingular, or H has a negative eigenvalue
    VE      some principal submatrix of H satisfies the VF condition
    NPC     H is zero, or H has a negative eigenvalue

All decisions reduce to exact inertia and exact kernels.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction

from graphmanifold_mcp.core.criteria import (
    SignAssignment,
    build_A,
    build_A_epsilon,
    build_A_plus,
    build_H,
    constant_signs,
    sign_assignments,
)
from graphmanifold_mcp.core.errors import BudgetExceededError, SearchExhaustedError
from graphmanifold_mcp.core.graph import LabeledGraph, has_charged_loop, induced_subgraph
from graphmanifold_mcp.core.linalg import (
    Inertia,
    RatMatrix,
    RatVector,
    inertia,
    nowhere_zero_kernel_vector,
    principal_submatrix,
)
from graphmanifold_mcp.core.oracle import (
    BknSolution,
    check_certificate,
    exhaustive_cases,
    fibration_certificate,
    inherit_certificate,
    search_certificate_numeric,
    supports,
)
from graphmanifold_mcp.core.properties import (
    ALL_PROPERTIES,
    WEAKER_VARIANTS,
    PropertyId,
    check_implications,
)

logger = logging.getLogger(__name__)

LOOP_CAVEAT = (
    "draft-theorem caveat: loop at a charged vertex; "
    "the H-matrix criterion is unreliable on such graphs"
)


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class Witness:
    """Spectral or combinatorial evidence behind a verdict."""

    clause: str
    inertia: Inertia | None = None
    kernel_vector: RatVector | None = None
    subset: tuple[str, ...] | None = None
    signs: SignAssignment | None = None


@dataclass(frozen=True)
class Verdict:
    property: PropertyId
    holds: bool | None
    witness: Witness | None = None
    certificate: BknSolution | None = None
    caveat: str | None = None
    undecided: str | None = None


@dataclass(frozen=True)
class SearchSettings:
    """Knobs for certificate attachment in classify_all."""

    budget: int = 2000
    denominator: int = 6


@dataclass(frozen=True)
class Classification:
    verdicts: Mapping[PropertyId, Verdict]
    violations: tuple[str, ...] = ()
    discrepancies: tuple[str, ...] = field(default_factory=tuple)

    def profile(self) -> dict[PropertyId, bool | None]:
        return {p: v.holds for p, v in self.verdicts.items()}


def _caveat(g: LabeledGraph) -> str | None:
    return LOOP_CAVEAT if has_charged_loop(g) else None


def _vf_condition(h: RatMatrix) -> Witness | None:
    """Negative eigenvalue, or semipositive and supersingular."""
    signature = inertia(h)
    if signature.has_negative:
        return Witness("negative eigenvalue", inertia=signature)
    x = nowhere_zero_kernel_vector(h)
    if x is not None:
        return Witness("semipositive and supersingular", inertia=signature, kernel_vector=x)
    return None


# =============================================================================
# Deciders
# =============================================================================


def decide_im_hi(g: LabeledGraph) -> Verdict:
    """One verdict for Im and HI (they are equivalent); tagged Im."""
    a_plus = build_A_plus(g)
    signature = inertia(a_plus)
    if signature.has_negative:
        return Verdict(PropertyId.IM, True, Witness("negative eigenvalue of A+", inertia=signature))
    diagonal = build_A(g).diagonal()
    same_sign = all(d >= 0 for d in diagonal) or all(d <= 0 for d in diagonal)
    if same_sign and signature.is_singular:
        return Verdict(
            PropertyId.IM,
            True,
            Witness("same-sign diagonal, A+ semipositive and singular", inertia=signature),
        )
    return Verdict(PropertyId.IM, False)


def decide_f(g: LabeledGraph) -> Verdict:
    x = nowhere_zero_kernel_vector(build_A(g))
    if x is None:
        return Verdict(PropertyId.F, False)
    return Verdict(
        PropertyId.F,
        True,
        Witness("A supersingular", kernel_vector=x, subset=g.vertices, signs=constant_signs(g)),
        certificate=fibration_certificate(g, x),
    )


def _embedded_certificate(
    g: LabeledGraph, subset: tuple[str, ...], eps: SignAssignment, x: RatVector
) -> BknSolution:
    inside = set(subset)
    sign = {v: 1 if x[v] > 0 else -1 for v in subset}
    a = {v: abs(x[v]) if v in inside else Fraction(0) for v in g.vertices}
    gamma = {w: Fraction(0) for w in g.dart_ids}
    for e in g.edges():
        if e.tail in inside and e.head in inside:
            value = Fraction(eps[e.id] * sign[e.tail] * sign[e.head])
            gamma[e.forward] = gamma[e.backward] = value
    return BknSolution(a, gamma, PropertyId.E)


def decide_e(g: LabeledGraph, exhaustive_limit: int) -> Verdict:
    """
    Search supports S and signs on S-internal edges for a supersingular A^eps on S.

    The whole vertex set with eps == +1 is tried first, so a fibration
    kernel vector is reused. Then supports run by size and lexicographically.

    Raises:
        BudgetExceededError: if 2^edges * 2^vertices exceeds exhaustive_limit
    """
    needed = exhaustive_cases(g)
    if needed > exhaustive_limit:
        raise BudgetExceededError(needed, exhaustive_limit)

    def attempt(subset: tuple[str, ...], sub: LabeledGraph, eps: SignAssignment) -> Verdict | None:
        x = nowhere_zero_kernel_vector(build_A_epsilon(sub, eps))
        if x is None:
            return None
        return Verdict(
            PropertyId.E,
            True,
            Witness("supersingular principal submatrix", kernel_vector=x, subset=subset, signs=eps),
            certificate=_embedded_certificate(g, subset, eps, x),
        )

    if g.charges:
        found = attempt(g.vertices, g, constant_signs(g))
        if found:
            return found
    for subset in supports(g.vertices):
        sub = induced_subgraph(g, subset)
        for eps in sign_assignments(sub):
            found = attempt(subset, sub, eps)
            if found:
                logger.debug("E holds via subset %s", subset)
                return found
    return Verdict(PropertyId.E, False)


def decide_vf(g: LabeledGraph, h: RatMatrix | None = None) -> Verdict:
    witness = _vf_condition(build_H(g) if h is None else h)
    return Verdict(PropertyId.VF, witness is not None, witness, caveat=_caveat(g))


def decide_ve(g: LabeledGraph, exhaustive_limit: int, h: RatMatrix | None = None) -> Verdict:
    """
    Raises:
        BudgetExceededError: if 2^vertices exceeds exhaustive_limit
    """
    needed = 2 ** len(g.charges)
    if needed > exhaustive_limit:
        raise BudgetExceededError(needed, exhaustive_limit)
    h = build_H(g) if h is None else h
    for subset in supports(g.vertices):
        witness = _vf_condition(principal_submatrix(h, subset))
        if witness is not None:
            return Verdict(PropertyId.VE, True, replace(witness, subset=subset), caveat=_caveat(g))
    return Verdict(PropertyId.VE, False, caveat=_caveat(g))


def decide_npc(g: LabeledGraph, h: RatMatrix | None = None) -> Verdict:
    h = build_H(g) if h is None else h
    caveat = _caveat(g)
    if g.charges and h.is_zero():
        return Verdict(PropertyId.NPC, True, Witness("H is zero", inertia=inertia(h)), caveat=caveat)
    signature = inertia(h)
    if signature.has_negative:
        return Verdict(PropertyId.NPC, True, Witness("negative eigenvalue", inertia=signature), caveat=caveat)
    return Verdict(PropertyId.NPC, False, caveat=caveat)


# =============================================================================
# Classification
# =============================================================================


def _attach_certificates(
    g: LabeledGraph,
    verdicts: dict[PropertyId, Verdict],
    search: SearchSettings,
) -> None:
    """Give holding continuous verdicts a certificate, inherited or searched for."""
    found: dict[PropertyId, BknSolution] = {
        p: v.certificate for p, v in verdicts.items() if v.certificate is not None
    }
    order = (PropertyId.NPC, PropertyId.VF, PropertyId.HI, PropertyId.VE, PropertyId.IM)
    for target in order:
        verdict = verdicts[target]
        if verdict.certificate is not None or not verdict.holds:
            continue
        certificate = None
        for source, sol in found.items():
            if target in WEAKER_VARIANTS[source]:
                certificate = inherit_certificate(g, sol, target)
                if certificate is not None:
                    break
        if certificate is None:
            try:
                certificate = search_certificate_numeric(g, target, search.budget, search.denominator)
            except SearchExhaustedError as e:
                logger.debug("%s search: %s", target, e)
        if certificate is not None:
            verdicts[target] = replace(verdict, certificate=certificate)
            found[target] = certificate


def classify_all(
    g: LabeledGraph,
    exhaustive_limit: int,
    search: SearchSettings | None = None,
) -> Classification:
    """
    Run every decider, attach certificates, and check the implication diagram.

    Budget failures become undecided verdicts. With `search` set, holding
    verdicts of the continuous variants receive certificates, inherited from
    stronger ones when possible and searched for otherwise.
    """
    verdicts: dict[PropertyId, Verdict] = {}
    im = decide_im_hi(g)
    verdicts[PropertyId.IM] = im
    verdicts[PropertyId.HI] = replace(im, property=PropertyId.HI)
    verdicts[PropertyId.F] = decide_f(g)
    try:
        verdicts[PropertyId.E] = decide_e(g, exhaustive_limit)
    except BudgetExceededError as e:
        verdicts[PropertyId.E] = Verdict(PropertyId.E, None, undecided=str(e))
    h = build_H(g)
    verdicts[PropertyId.VF] = decide_vf(g, h)
    try:
        verdicts[PropertyId.VE] = decide_ve(g, exhaustive_limit, h)
    except BudgetExceededError as e:
        verdicts[PropertyId.VE] = Verdict(PropertyId.VE, None, caveat=_caveat(g), undecided=str(e))
    verdicts[PropertyId.NPC] = decide_npc(g, h)

    if search is not None:
        _attach_certificates(g, verdicts, search)
    discrepancies: list[str] = []
    for verdict in verdicts.values():
        if verdict.certificate is not None and not check_certificate(g, verdict.certificate).valid:
            discrepancies.append(f"{verdict.property}: emitted certificate fails its check")

    ordered = {p: verdicts[p] for p in ALL_PROPERTIES}
    violations = check_implications({p: v.holds for p, v in ordered.items()})
    if violations:
        logger.warning("implication violations: %s", ", ".join(violations))
    return Classification(ordered, tuple(violations), tuple(discrepancies))
