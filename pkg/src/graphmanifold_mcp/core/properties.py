"""
The seven properties of a graph manifold and the implications between them.

    E  ==>  VE  ==>  Im
    ^       ^        ^|
    |       |        |v
    F  ==>  VF  ==>  HI
            ^
            |
           NPC
"""

from enum import Enum


class PropertyId(str, Enum):
    """Immersed / horizontal immersed / fibered / embedded / virtually fibered /
    virtually embedded / nonpositively curved."""

    IM = "Im"
    HI = "HI"
    F = "F"
    E = "E"
    VF = "VF"
    VE = "VE"
    NPC = "NPC"

    def __str__(self) -> str:
        return self.value


ALL_PROPERTIES: tuple[PropertyId, ...] = tuple(PropertyId)

CONTINUOUS_VARIANTS: tuple[PropertyId, ...] = (
    PropertyId.IM,
    PropertyId.HI,
    PropertyId.VF,
    PropertyId.VE,
    PropertyId.NPC,
)

# (premise, conclusion); Im <=> HI is checked as one rule
IMPLICATIONS: tuple[tuple[PropertyId, PropertyId], ...] = (
    (PropertyId.F, PropertyId.E),
    (PropertyId.F, PropertyId.VF),
    (PropertyId.E, PropertyId.VE),
    (PropertyId.VF, PropertyId.VE),
    (PropertyId.VF, PropertyId.HI),
    (PropertyId.VE, PropertyId.IM),
    (PropertyId.NPC, PropertyId.VF),
)

# Solution constraints nest: a certificate for the key also certifies each listed variant.
WEAKER_VARIANTS: dict[PropertyId, tuple[PropertyId, ...]] = {
    PropertyId.F: (PropertyId.E, PropertyId.VF, PropertyId.VE, PropertyId.HI, PropertyId.IM),
    PropertyId.NPC: (PropertyId.VF, PropertyId.VE, PropertyId.HI, PropertyId.IM),
    PropertyId.E: (PropertyId.VE, PropertyId.IM),
    PropertyId.VF: (PropertyId.VE, PropertyId.HI, PropertyId.IM),
    PropertyId.VE: (PropertyId.IM,),
    PropertyId.HI: (PropertyId.IM,),
    PropertyId.IM: (),
}


def implication_rules() -> list[str]:
    return [f"{a}⇒{b}" for a, b in IMPLICATIONS] + ["Im⇔HI"]


def check_implications(profile: dict[PropertyId, bool | None]) -> list[str]:
    """
    Return the violated implications of a property profile.

    Properties missing from the profile or undecided (None) are skipped.
    """
    violations = []
    for premise, conclusion in IMPLICATIONS:
        if profile.get(premise) is True and profile.get(conclusion) is False:
            violations.append(f"{premise}⇒{conclusion}")
    im, hi = profile.get(PropertyId.IM), profile.get(PropertyId.HI)
    if im is not None and hi is not None and im != hi:
        violations.append("Im⇔HI")
    return violations
