"""Symbolic Weil-group representations and classical-group flavors.

A representation is an opaque atom carrying only what the combinatorics
reads: its dimension, its torsion number (how many unramified characters
fix it), its self-duality class relative to the dual group, and an
optional link to a distinguished unramified twist ("partner").
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import BrokenPartnerLink, DuplicateId, InvalidParameter, NoPartner, UnknownRep


class SelfDualClass(Enum):
    PLUS = "plus"
    MINUS = "minus"
    ZERO = "zero"

    def flipped(self) -> "SelfDualClass":
        if self is SelfDualClass.PLUS:
            return SelfDualClass.MINUS
        if self is SelfDualClass.MINUS:
            return SelfDualClass.PLUS
        return self

    @property
    def block_parity(self) -> int | None:
        """Parity of a for which tau (x) P_a has the dual group's sign."""
        if self is SelfDualClass.PLUS:
            return 1
        if self is SelfDualClass.MINUS:
            return 0
        return None


class SignRule(Enum):
    SAME = "same"
    OPPOSITE = "opposite"


@dataclass(frozen=True)
class RepSymbol:
    id: str
    dim: int
    torsion: int = 1
    selfdual: SelfDualClass = SelfDualClass.PLUS
    partner: str | None = None
    partner_sign_rule: SignRule = SignRule.SAME

    def __post_init__(self) -> None:
        if not self.id:
            raise InvalidParameter("rep id must be nonempty")
        if self.dim < 1 or self.torsion < 1:
            raise InvalidParameter(f"{self.id}: dim and torsion must be positive")
        if self.partner == self.id:
            raise BrokenPartnerLink(f"{self.id} cannot be its own partner")
        if self.selfdual is SelfDualClass.ZERO and self.partner is not None:
            raise BrokenPartnerLink(f"{self.id}: non-self-dual symbols carry no partner")

    @property
    def is_selfdual(self) -> bool:
        return self.selfdual is not SelfDualClass.ZERO

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "dim": self.dim,
            "torsion": self.torsion,
            "selfdual": self.selfdual.value,
            "partner": self.partner,
            "partner_sign_rule": self.partner_sign_rule.value,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RepSymbol":
        return cls(
            id=str(obj["id"]),
            dim=int(obj["dim"]),
            torsion=int(obj.get("torsion", 1)),
            selfdual=SelfDualClass(obj.get("selfdual", "plus")),
            partner=obj.get("partner"),
            partner_sign_rule=SignRule(obj.get("partner_sign_rule", "same")),
        )


class Registry:
    """Id-keyed store of RepSymbols with symmetric partner links.

    Links to symbols not yet registered are allowed during the build phase;
    ``check_links`` reports any that are still dangling.
    """

    def __init__(self, reps: Iterable[RepSymbol] = ()) -> None:
        self._reps: dict[str, RepSymbol] = {}
        for rep in reps:
            self.register(rep)

    def register(self, rep: RepSymbol) -> RepSymbol:
        if rep.id in self._reps:
            raise DuplicateId(rep.id)
        if rep.partner is not None and rep.partner in self._reps:
            _check_pair(rep, self._reps[rep.partner])
        for other in self._reps.values():
            if other.partner == rep.id and rep.partner != other.id:
                raise BrokenPartnerLink(f"{other.id} names {rep.id} as partner but not conversely")
        self._reps[rep.id] = rep
        return rep

    def check_links(self) -> None:
        for rep in self._reps.values():
            if rep.partner is not None and rep.partner not in self._reps:
                raise BrokenPartnerLink(f"{rep.id}: partner {rep.partner} is not registered")

    def __getitem__(self, rep_id: str) -> RepSymbol:
        try:
            return self._reps[rep_id]
        except KeyError:
            raise UnknownRep(rep_id) from None

    def get(self, rep_id: str) -> RepSymbol | None:
        return self._reps.get(rep_id)

    def __contains__(self, rep_id: object) -> bool:
        return rep_id in self._reps

    def __iter__(self) -> Iterator[RepSymbol]:
        return iter(sorted(self._reps.values(), key=lambda r: r.id))

    def __len__(self) -> int:
        return len(self._reps)

    def partner_of(self, rep_id: str) -> RepSymbol:
        rep = self[rep_id]
        if rep.partner is None:
            raise NoPartner(rep_id)
        return self[rep.partner]

    def to_json(self) -> list[dict]:
        return [rep.to_json() for rep in self]

    @classmethod
    def from_json(cls, doc: list[dict]) -> "Registry":
        reg = cls(RepSymbol.from_json(obj) for obj in doc)
        reg.check_links()
        return reg

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _check_pair(rep: RepSymbol, other: RepSymbol) -> None:
    if other.partner != rep.id:
        raise BrokenPartnerLink(f"{rep.id} -> {other.id} link is not symmetric")
    if (rep.dim, rep.torsion) != (other.dim, other.torsion):
        raise BrokenPartnerLink(f"{rep.id} and {other.id} differ in dim or torsion")
    if rep.partner_sign_rule is not other.partner_sign_rule:
        raise BrokenPartnerLink(f"{rep.id} and {other.id} disagree on the sign rule")


class Family(Enum):
    GSPIN_ODD = "SpOdd-dualGSp"
    GSPIN_EVEN = "GSO-dual"
    GSPIN_EVEN_QS = "GO-dual"
    SP = "Sp"
    SO_ODD = "SOodd"
    SO_EVEN = "SOeven"
    SO_EVEN_QS = "SOevenQS"
    O_EVEN = "Oeven"
    U_RAMIFIED = "URamified"
    U_UNRAMIFIED = "UUnramified"


_GSPIN = {Family.GSPIN_ODD, Family.GSPIN_EVEN, Family.GSPIN_EVEN_QS}
_UNITARY = {Family.U_RAMIFIED, Family.U_UNRAMIFIED}
# dual group is even orthogonal, so parameters live in O_N and the
# component group may be cut down by the determinant condition
_EVEN_ORTHOGONAL = {Family.GSPIN_EVEN, Family.GSPIN_EVEN_QS, Family.SO_EVEN, Family.SO_EVEN_QS, Family.O_EVEN}
_DET_CONDITION = {Family.GSPIN_EVEN, Family.GSPIN_EVEN_QS, Family.SO_EVEN, Family.SO_EVEN_QS}


@dataclass(frozen=True)
class GroupFlavor:
    family: Family
    std_size: int
    prime_form: bool = False

    def __post_init__(self) -> None:
        n = self.std_size
        if n < 0:
            raise InvalidParameter("std_size must be nonnegative")
        if self.family in _EVEN_ORTHOGONAL or self.family in (Family.GSPIN_ODD, Family.SO_ODD):
            if n % 2:
                raise InvalidParameter(f"{self.family.value} needs an even std_size, got {n}")
        if self.family is Family.SP and n % 2 == 0:
            raise InvalidParameter(f"Sp has dual SO_N with N odd, got {n}")

    @property
    def dual_sign(self) -> int:
        """Sign of the standard representation of the derived dual group."""
        if self.family in _UNITARY:
            return 1 if self.std_size % 2 else -1
        if self.family in (Family.GSPIN_ODD, Family.SO_ODD):
            return -1
        return 1

    @property
    def has_similitude_center(self) -> bool:
        return self.family in _GSPIN

    @property
    def det_condition(self) -> bool:
        return self.family in _DET_CONDITION

    @property
    def s_condition(self) -> bool:
        """Whether the component group is cut down to the even-determinant part.

        This is the case when the dual group is a special orthogonal group
        (so its parameters live in O_N), including Sp whose dual is SO_{2n+1}.
        """
        return self.family in _DET_CONDITION or self.family is Family.SP

    @property
    def is_unitary(self) -> bool:
        return self.family in _UNITARY

    @property
    def name(self) -> str:
        return f"{self.family.value}{chr(39) if self.prime_form else ''}:{self.std_size}"

    def with_size(self, n: int) -> "GroupFlavor":
        return GroupFlavor(self.family, n, self.prime_form)

    def __str__(self) -> str:
        return self.name


def parse_flavor(text: str, size: int | None = None) -> GroupFlavor:
    """Parse ``"SOeven:8"`` or ``"SOeven'"`` plus an explicit size."""
    fam, _, n = text.partition(":")
    prime = fam.endswith("'")
    fam = fam.rstrip("'")
    try:
        family = Family(fam)
    except ValueError:
        raise InvalidParameter(f"unknown flavor family {fam!r}") from None
    if n:
        if size is not None and int(n) != size:
            raise InvalidParameter(f"flavor size {n} disagrees with {size}")
        size = int(n)
    if size is None:
        raise InvalidParameter(f"flavor {text!r} lacks a size")
    return GroupFlavor(family, size, prime)


def partner_sign(rep: RepSymbol, flavor: GroupFlavor) -> SelfDualClass:
    """Self-duality class of the distinguished twist of ``rep``."""
    if rep.partner is None or not rep.is_selfdual:
        raise NoPartner(rep.id)
    if flavor.family is Family.U_UNRAMIFIED or rep.partner_sign_rule is SignRule.OPPOSITE:
        return rep.selfdual.flipped()
    return rep.selfdual
