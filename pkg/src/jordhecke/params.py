"""Enhanced L-parameters as Jordan-block data.

A parameter is a multiset of blocks (tau, a, twist) standing for
tau |.|^twist (x) P_a, where P_a is the a-dimensional irreducible
representation of SL_2.  The enhancement epsilon is stored as its values on
the canonical generators z_{tau,a} of the component group, keyed by
(rep id, a).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EpsilonIncomplete, FlavorMismatch, InvalidParameter, UnknownRep
from .repdata import GroupFlavor, Registry, SelfDualClass, parse_flavor

BlockKey = tuple[str, int]


@dataclass(frozen=True, order=True)
class JordanBlock:
    rep: str
    a: int
    twist: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.a < 1:
            raise InvalidParameter(f"block size must be positive, got {self.a}")
        object.__setattr__(self, "twist", Fraction(self.twist))

    @property
    def key(self) -> BlockKey:
        return (self.rep, self.a)


@dataclass(frozen=True)
class EnhancedParam:
    flavor: GroupFlavor
    blocks: tuple[JordanBlock, ...]
    epsilon: Mapping[BlockKey, int] = field(default_factory=dict)
    registry: Registry = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))
        object.__setattr__(self, "epsilon", dict(sorted(self.epsilon.items())))
        for v in self.epsilon.values():
            if v not in (1, -1):
                raise InvalidParameter(f"epsilon values must be +1 or -1, got {v}")

    @classmethod
    def build(
        cls,
        flavor: GroupFlavor,
        registry: Registry,
        blocks: Iterable[tuple] | Iterable[JordanBlock],
        epsilon: Mapping[BlockKey, int] | None = None,
    ) -> "EnhancedParam":
        """Convenience constructor accepting ``(rep, a)`` or ``(rep, a, twist)`` tuples."""
        bs = [b if isinstance(b, JordanBlock) else JordanBlock(*b) for b in blocks]
        return cls(flavor, tuple(bs), dict(epsilon or {}), registry)

    def rep(self, rep_id: str):
        if self.registry is None:
            raise UnknownRep(f"{rep_id} (parameter carries no registry)")
        return self.registry[rep_id]

    def multiplicities(self) -> Counter:
        return Counter(b.key for b in self.blocks)

    def jord(self) -> list[BlockKey]:
        """Distinct (rep, a) pairs in canonical order."""
        return sorted(set(b.key for b in self.blocks))

    def jord_of(self, rep_id: str) -> list[int]:
        return sorted(set(b.a for b in self.blocks if b.rep == rep_id))

    def reps(self) -> list[str]:
        return sorted(set(b.rep for b in self.blocks))

    def block_size(self, b: JordanBlock) -> int:
        rep = self.rep(b.rep)
        # a non-self-dual block tau (x) P_a always comes with its dual
        return rep.dim * b.a * (2 if rep.selfdual is SelfDualClass.ZERO else 1)

    def size(self) -> int:
        return sum(self.block_size(b) for b in self.blocks)

    def has_right_sign(self, rep_id: str, a: int) -> bool:
        parity = self.rep(rep_id).selfdual.block_parity
        return parity is not None and a % 2 == parity

    def eps(self, key: BlockKey) -> int:
        try:
            return self.epsilon[key]
        except KeyError:
            raise EpsilonIncomplete(f"epsilon undefined on z_{key}") from None

    def with_epsilon(self, epsilon: Mapping[BlockKey, int]) -> "EnhancedParam":
        return EnhancedParam(self.flavor, self.blocks, dict(epsilon), self.registry)

    def twisted(self, x) -> "EnhancedParam":
        """Twist every block by the same unramified exponent."""
        x = Fraction(x)
        bs = tuple(JordanBlock(b.rep, b.a, b.twist + x) for b in self.blocks)
        return EnhancedParam(self.flavor, bs, self.epsilon, self.registry)

    def to_json(self) -> dict:
        seen: set[BlockKey] = set()
        out = []
        for b in self.blocks:
            entry: dict = {"rep": b.rep, "a": b.a, "twist": _fraction_json(b.twist)}
            if b.key in self.epsilon and b.key not in seen:
                entry["eps"] = self.epsilon[b.key]
            seen.add(b.key)
            out.append(entry)
        return {"flavor": self.flavor.name, "blocks": out}

    @classmethod
    def from_json(cls, obj: Mapping, registry: Registry) -> "EnhancedParam":
        flavor = parse_flavor(obj["flavor"])
        blocks = []
        eps: dict[BlockKey, int] = {}
        for entry in obj["blocks"]:
            b = JordanBlock(entry["rep"], int(entry["a"]), Fraction(str(entry.get("twist", 0))))
            blocks.append(b)
            if "eps" in entry:
                eps[b.key] = int(entry["eps"])
        return cls(flavor, tuple(blocks), eps, registry)

    def text(self) -> str:
        parts = []
        for b in self.blocks:
            tw = f"|{b.twist}" if b.twist else ""
            e = self.epsilon.get(b.key)
            sign = "" if e is None else ("+" if e > 0 else "-")
            parts.append(f"({b.rep},{b.a}{tw}){sign}")
        return f"{self.flavor.name} " + (" ".join(parts) if parts else "()")


def _fraction_json(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def validate(phi: EnhancedParam) -> list[str]:
    """Return a list of violations; an empty list means the parameter is well formed."""
    issues: list[str] = []
    reg = phi.registry
    if reg is None:
        return ["parameter carries no registry"]
    unknown = [b.rep for b in phi.blocks if b.rep not in reg]
    for r in sorted(set(unknown)):
        issues.append(f"unknown rep {r}")
    if unknown:
        return issues
    total = phi.size()
    if total != phi.flavor.std_size:
        issues.append(f"size mismatch: blocks sum to {total}, flavor needs {phi.flavor.std_size}")
    mult = phi.multiplicities()
    for (r, a), m in sorted(mult.items()):
        rep = reg[r]
        # a wrong-sign block can only occur paired with its own dual copy
        if rep.is_selfdual and not phi.has_right_sign(r, a) and m % 2:
            issues.append(f"parity violation: ({r},{a}) has the wrong sign and odd multiplicity {m}")
    basis = set(_basis_keys(phi))
    for key in phi.epsilon:
        if key not in basis:
            issues.append(f"epsilon given on ({key[0]},{key[1]}) which is not a component-group generator")
    return issues


def _basis_keys(phi: EnhancedParam) -> list[BlockKey]:
    return [(r, a) for r, a in phi.jord() if phi.has_right_sign(r, a)]


@dataclass(frozen=True)
class ComponentGroup:
    basis: tuple[BlockKey, ...]
    det_element: tuple[BlockKey, ...] | None
    plus_variant: bool

    @property
    def constrained(self) -> bool:
        return bool(self.det_element)

    @property
    def index(self) -> int:
        """Index in the plus variant."""
        return 2 if self.constrained else 1

    @property
    def order(self) -> int:
        return 2 ** len(self.basis) // self.index

    def contains(self, element: Iterable[BlockKey]) -> bool:
        """Membership of the product of the given generators."""
        elem = set(element)
        if not elem <= set(self.basis):
            return False
        if not self.constrained:
            return True
        return len(elem & set(self.det_element)) % 2 == 0

    def elements(self) -> list[tuple[BlockKey, ...]]:
        out = []
        n = len(self.basis)
        for mask in range(2**n):
            elem = tuple(self.basis[i] for i in range(n) if mask >> i & 1)
            if self.contains(elem):
                out.append(elem)
        return out


def component_group(phi: EnhancedParam, plus: bool = True) -> ComponentGroup:
    basis = tuple(_basis_keys(phi))
    det = None
    if not plus and phi.flavor.s_condition:
        det = tuple(k for k in basis if (k[1] * phi.rep(k[0]).dim) % 2)
    return ComponentGroup(basis, det, plus)


def is_discrete(phi: EnhancedParam) -> bool:
    for (r, a), m in phi.multiplicities().items():
        if m > 1 or not phi.has_right_sign(r, a):
            return False
    return True


def is_bounded(phi: EnhancedParam) -> bool:
    return all(b.twist == 0 for b in phi.blocks)


def character_value(phi: EnhancedParam, element: Iterable[BlockKey]) -> int:
    v = 1
    for key in element:
        v *= phi.eps(key)
    return v


def is_relevant(phi: EnhancedParam) -> bool:
    """Whether epsilon on the central element matches the inner form."""
    grp = component_group(phi, plus=False)
    det = grp.det_element
    if not det or len(det) % 2:
        # the element is trivial, or it does not lie in S_phi at all
        return True
    want = -1 if phi.flavor.prime_form else 1
    return character_value(phi, det) == want


def is_cuspidal(phi: EnhancedParam) -> bool:
    if not is_discrete(phi):
        return False
    for r in phi.reps():
        sizes = phi.jord_of(r)
        present = set(sizes)
        for a in sizes:
            if a > 2 and a - 2 not in present:
                return False
        for a in sizes:
            if a == 2 and phi.eps((r, 2)) != -1:
                return False
            if a + 2 in present and phi.eps((r, a)) * phi.eps((r, a + 2)) != -1:
                return False
    return True


def restriction_reducible(phi: EnhancedParam) -> bool:
    """Whether the packet members for G+ split on restriction to G."""
    if not phi.flavor.det_condition:
        raise FlavorMismatch(f"{phi.flavor.name} has no index-two subgroup")
    return all((b.a * phi.rep(b.rep).dim) % 2 == 0 for b in phi.blocks)


def epsilon_extensions(phi: EnhancedParam, epsilon: Mapping[BlockKey, int] | None = None) -> list[dict]:
    """Characters of the plus group restricting to the given character of S_phi."""
    eps = dict(phi.epsilon if epsilon is None else epsilon)
    grp = component_group(phi, plus=False)
    missing = [k for k in grp.basis if k not in eps]
    if missing:
        raise EpsilonIncomplete(f"epsilon undefined on {missing}")
    if grp.index == 1:
        return [eps]
    other = {k: (-v if k in grp.det_element else v) for k, v in eps.items()}
    return sorted([eps, other], key=lambda e: sorted(e.items()))
