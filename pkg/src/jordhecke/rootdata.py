"""Root data, parameter functions and Gamma-groups of Bernstein components.

A Bernstein component is described per orbit {tau, tau'} of self-dual
representations (tau' being the distinguished unramified twist of tau)
and per non-self-dual tau by the numbers

    e     how many GL-factors of the Levi carry tau
    ell   multiplicity of tau in the cuspidal classical part phi_-
    a     largest Jordan block of tau in phi_-  (-1 or 0 when absent)

and the same for tau'.  The tables below turn these into the root system,
the labels lambda and lambda* and the diagram automorphisms of the affine
Hecke algebra.  They are decision tables, not derivations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    InconsistentPartnerData,
    InvalidParameter,
    NoRoots,
    NotApplicable,
    NotCuspidalBase,
    OddHalving,
    UnknownRep,
    UnmatchedRow,
)
from .params import EnhancedParam, is_cuspidal
from .repdata import Family, GroupFlavor, Registry, SelfDualClass, SignRule, partner_sign


class PartnerClass(Enum):
    PLUS_PLUS = "PlusPlus"
    MINUS_MINUS = "MinusMinus"
    PLUS_MINUS = "PlusMinus"
    ZERO = "Zero"

    @classmethod
    def of(cls, c1: SelfDualClass, c2: SelfDualClass) -> "PartnerClass":
        if SelfDualClass.ZERO in (c1, c2):
            if c1 is not c2:
                raise InconsistentPartnerData("a self-dual and a non-self-dual symbol cannot be partners")
            return cls.ZERO
        if c1 is not c2:
            return cls.PLUS_MINUS
        return cls.PLUS_PLUS if c1 is SelfDualClass.PLUS else cls.MINUS_MINUS


def _sentinel(c: SelfDualClass) -> int:
    return -1 if c is SelfDualClass.PLUS else 0


def a_tau(jord_minus: Iterable[int], cls: SelfDualClass) -> int:
    """Largest Jordan block of tau in the cuspidal part, or the class sentinel."""
    sizes = list(jord_minus)
    if sizes:
        return max(sizes)
    if cls is SelfDualClass.ZERO:
        raise InvalidParameter("a_tau is only defined for self-dual tau")
    return _sentinel(cls)


def _class_of_a(a: int) -> SelfDualClass:
    return SelfDualClass.PLUS if a % 2 else SelfDualClass.MINUS


@dataclass(frozen=True)
class BernsteinEntry:
    tau: str
    e: int
    ell: int = 0
    ell_prime: int = 0
    a: int = -1
    a_prime: int = -1
    t: int = 1
    cls: PartnerClass = PartnerClass.PLUS_PLUS
    tau_prime: str | None = None
    dim: int = 1

    def __post_init__(self) -> None:
        if self.e < 0 or self.ell < 0 or self.ell_prime < 0 or self.t < 1 or self.dim < 1:
            raise InconsistentPartnerData(f"{self.tau}: negative multiplicity or bad torsion")
        if self.cls is PartnerClass.ZERO:
            return
        if self.a < -1 or self.a_prime < -1:
            raise InconsistentPartnerData(f"{self.tau}: a below the -1 sentinel")
        got = PartnerClass.of(_class_of_a(self.a), _class_of_a(self.a_prime))
        if got is not self.cls:
            raise InconsistentPartnerData(
                f"{self.tau}: parities of a={self.a}, a'={self.a_prime} do not fit class {self.cls.value}"
            )

    @property
    def tau_class(self) -> SelfDualClass:
        if self.cls is PartnerClass.ZERO:
            return SelfDualClass.ZERO
        return _class_of_a(self.a)

    @property
    def coherent(self) -> bool:
        """ell > 0 exactly when a genuine Jordan block is present, on both sides."""
        if self.cls is PartnerClass.ZERO:
            return self.ell == 0 and self.ell_prime == 0
        return (self.ell > 0) == (self.a >= 1) and (self.ell_prime > 0) == (self.a_prime >= 1)

    def swapped(self) -> "BernsteinEntry":
        return replace(
            self,
            tau=self.tau_prime or self.tau,
            tau_prime=self.tau if self.tau_prime else None,
            ell=self.ell_prime,
            ell_prime=self.ell,
            a=self.a_prime,
            a_prime=self.a,
        )

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "tau_prime": self.tau_prime,
            "e": self.e,
            "ell": self.ell,
            "ell_prime": self.ell_prime,
            "a": self.a,
            "a_prime": self.a_prime,
            "t": self.t,
            "cls": self.cls.value,
            "dim": self.dim,
        }


def normalize_entry(entry: BernsteinEntry) -> BernsteinEntry:
    """Exchange tau and tau' so that ell >= ell', ties broken by a >= a'."""
    if entry.cls is PartnerClass.ZERO:
        return entry
    if entry.ell < entry.ell_prime:
        return entry.swapped()
    if entry.ell == entry.ell_prime == 0 and entry.a < entry.a_prime:
        return entry.swapped()
    return entry


def is_normalized(entry: BernsteinEntry) -> bool:
    if entry.cls is PartnerClass.ZERO:
        return entry.coherent
    return (
        entry.coherent
        and entry.ell >= entry.ell_prime
        and entry.a >= entry.a_prime
        and normalize_entry(entry) == entry
    )


# --------------------------------------------------------------------------
# root systems


@dataclass(frozen=True)
class RootType:
    letter: str
    rank: int

    @property
    def is_empty(self) -> bool:
        if self.rank <= 0:
            return True
        return self.letter == "D" and self.rank == 1

    @property
    def reduced(self) -> "RootType":
        return RootType("B", self.rank) if self.letter == "BC" else self

    def __str__(self) -> str:
        return f"{self.letter}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "RootType":
        letter = text.rstrip("0123456789")
        return cls(letter, int(text[len(letter):]))


@dataclass(frozen=True)
class GradedRow:
    root_type: RootType
    c_alpha: int
    c_beta: int | None
    c_2beta: int | None = None


def graded_row(entry: BernsteinEntry) -> GradedRow:
    """Root system of tau and graded Hecke parameters before any scaling."""
    e = entry.e
    if e < 1:
        raise NoRoots(f"{entry.tau}: e = 0 gives no roots")
    cls = entry.tau_class
    if cls is SelfDualClass.ZERO:
        return GradedRow(RootType("A", e - 1), 2, None)
    if cls is SelfDualClass.PLUS:
        if entry.ell == 0:
            return GradedRow(RootType("D", e), 2, 1 + entry.a)
        return GradedRow(RootType("B", e), 2, 1 + entry.a)
    if entry.ell == 0:
        return GradedRow(RootType("C", e), 2, 1 + entry.a, 2)
    return GradedRow(RootType("BC", e), 2, 1 + entry.a)


class RootKind(Enum):
    LONG = "long"  # +-e_i +- e_j
    SHORT = "short"  # +-e_i in type B or BC
    LONG_C = "long_C"  # +-2e_i in type C


def _inertia_type(entry: BernsteinEntry, flavor: GroupFlavor) -> RootType:
    """Reduced root system of tau before scaling by m_alpha."""
    if flavor.family is Family.U_UNRAMIFIED and entry.cls is not PartnerClass.ZERO:
        letter = "C" if entry.ell + entry.ell_prime == 0 else "B"
        return RootType(letter, entry.e)
    return graded_row(entry).root_type.reduced


def m_alpha(entry: BernsteinEntry, kind: RootKind | str, flavor: GroupFlavor) -> int:
    kind = RootKind(kind)
    rtype = _inertia_type(entry, flavor)
    allowed = {"A": {RootKind.LONG}, "D": {RootKind.LONG}, "B": {RootKind.LONG, RootKind.SHORT}}
    allowed["C"] = {RootKind.LONG, RootKind.LONG_C}
    if kind not in allowed[rtype.letter]:
        raise InvalidParameter(f"no {kind.value} roots in {rtype}")
    t = entry.t
    if flavor.family is Family.U_UNRAMIFIED:
        if kind is RootKind.LONG_C:
            return t
        return 2 * t
    if entry.cls is PartnerClass.PLUS_MINUS and entry.ell == 0 and kind is RootKind.LONG_C:
        if t % 2:
            raise OddHalving(f"{entry.tau}: torsion {t} cannot be halved")
        return t // 2
    return t


# --------------------------------------------------------------------------
# affine rows


@dataclass(frozen=True)
class AffineRow:
    tau: str
    rank: int
    root_type: RootType
    lambda_alpha: Fraction
    lambda_beta: Fraction | None
    lambda_star_beta: Fraction | None
    gamma_out: bool
    row: str
    m: Mapping[str, int] = field(default_factory=dict)
    dim: int = 1
    t: int = 1

    @property
    def beta_kind(self) -> RootKind | None:
        if self.root_type.letter == "B":
            return RootKind.SHORT
        if self.root_type.letter == "C":
            return RootKind.LONG_C
        return None

    def to_json(self) -> dict:
        lam = {"alpha": _num(self.lambda_alpha)}
        lam_star = {}
        if self.lambda_beta is not None:
            lam["beta"] = _num(self.lambda_beta)
            lam_star["beta"] = _num(self.lambda_star_beta)
        return {
            "tau": self.tau,
            "rank": self.rank,
            "type": str(self.root_type),
            "lambda": lam,
            "lambda_star": lam_star,
            "m": dict(sorted(self.m.items())),
            "row": self.row,
            "gamma_out": self.gamma_out,
        }


def _num(x: Fraction | int):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _m_map(entry: BernsteinEntry, flavor: GroupFlavor) -> dict[str, int]:
    rtype = _inertia_type(entry, flavor)
    n = entry.e
    present = {RootKind.LONG: n >= 2, RootKind.SHORT: rtype.letter == "B", RootKind.LONG_C: rtype.letter == "C"}
    return {k.value: m_alpha(entry, k, flavor) for k, ok in present.items() if ok}


def affine_row(entry: BernsteinEntry, flavor: GroupFlavor) -> AffineRow:
    """Select the table row for one tau-orbit and read off lambda, lambda*."""
    e, t, a, a2 = entry.e, entry.t, entry.a, entry.a_prime
    if entry.cls is not PartnerClass.ZERO and not entry.coherent:
        raise UnmatchedRow(f"{entry.tau}: ell and a disagree on whether Jordan blocks are present")
    T = Fraction(t)
    unram = flavor.family is Family.U_UNRAMIFIED

    def row(letter, lam_a, lam_b, lam_s, name, out=False):
        return AffineRow(entry.tau, e, RootType(letter, e - 1 if letter == "A" else e),
                         Fraction(lam_a), None if lam_b is None else Fraction(lam_b),
                         None if lam_s is None else Fraction(lam_s), out, name,
                         _m_map(entry, flavor), entry.dim, t)

    if entry.cls is PartnerClass.ZERO:
        return row("A", 2 * T if unram else T, None, None, "unitary-A-free" if unram else "A-free")
    if unram:
        if (a, a2) == (0, -1):
            return row("B", 2 * T, T, T, "unitary-B-half")
        if a >= 1 and a2 >= -1:
            return row("B", 2 * T, T * (a + a2 + 2), T * (a - a2), "unitary-B")
        raise UnmatchedRow(f"{entry.tau}: (a, a') = ({a}, {a2}) has no unitary row")
    if (a, a2) == (-1, -1):
        return row("D", T, None, None, "D-empty", out=True)
    if (a, a2) == (0, -1):
        return row("B", T, T / 2, T / 2, "B-half")
    if (a, a2) == (0, 0):
        return row("C", T, T, T, "C-even")
    if a >= 1 and a2 == -1:
        return row("B", T, T * (a + 1) / 2, T * (a + 1) / 2, "B-one-sided")
    if a >= 1 and a2 >= 0:
        return row("B", T, T * (a + a2 + 2) / 2, T * (a - a2) / 2, "B-two-sided")
    raise UnmatchedRow(f"{entry.tau}: (a, a') = ({a}, {a2}) matches no row; normalize first")


def rescale_BC(row: AffineRow) -> AffineRow:
    """Trade short roots with q_beta = q*_beta for long roots of type C.

    With q = q^{(lambda+lambda*)/2} and q* = q^{(lambda-lambda*)/2} the
    condition q_beta = q*_beta means lambda*(beta) = 0.  The long root
    beta/2-coroot then carries lambda = lambda* = lambda(beta).
    """
    if row.root_type.letter != "B" or row.lambda_beta is None:
        raise NotApplicable(f"rescaling needs a type B row, got {row.root_type}")
    if row.lambda_star_beta != 0 or row.lambda_beta <= 0:
        raise NotApplicable("rescaling needs q_beta = q*_beta, i.e. lambda*(beta) = 0")
    return replace(
        row,
        root_type=RootType("C", row.rank),
        lambda_star_beta=row.lambda_beta,
        row=row.row + "/rescaled",
    )


def rep_side_row(entry: BernsteinEntry) -> AffineRow:
    """Root type and q-parameters computed from the representation side.

    This is an independent route to the classical rows: the reducibility
    case analysis decides the type, the reducibility points give q and q*,
    and the equal-parameter short roots of the Minus/Minus case are
    rescaled to long roots of type C.
    """
    e, t = entry.e, Fraction(entry.t)
    cls = entry.tau_class

    def make(letter, lam_a, lam_b=None, lam_s=None):
        return AffineRow(entry.tau, e, RootType(letter, e - 1 if letter == "A" else e), Fraction(lam_a),
                         lam_b, lam_s, letter == "D", "rep", {}, entry.dim, entry.t)

    if cls is SelfDualClass.ZERO:
        return make("A", t)
    if cls is SelfDualClass.PLUS and entry.ell == 0:
        return make("D", t)
    # short roots e_i are present: q = q^{t(a+1)/2}, q* = q^{t(a'+1)/2}
    log_q = t * (entry.a + 1) / 2
    log_q_star = t * (entry.a_prime + 1) / 2
    out = make("B", t, log_q + log_q_star, log_q - log_q_star)
    if cls is SelfDualClass.MINUS and entry.ell == 0 and log_q == log_q_star:
        out = rescale_BC(out)
    return out


def galois_side_type(entry: BernsteinEntry) -> RootType:
    """Type of the scaled root system m_alpha * R_tau from the graded data."""
    rtype = graded_row(entry).root_type.reduced
    if rtype.letter == "C" and entry.cls is PartnerClass.PLUS_MINUS and entry.ell == 0:
        # long roots 2e_i scaled by t/2 while the others keep t: short roots of B
        return RootType("B", rtype.rank)
    return rtype


# --------------------------------------------------------------------------
# Gamma groups and full presentations


@dataclass(frozen=True)
class GammaGroup:
    generators: tuple[str, ...] = ()
    odd: tuple[str, ...] = ()
    det_constrained: bool = False

    @property
    def order(self) -> int:
        n = 2 ** len(self.generators)
        if self.det_constrained and self.odd:
            n //= 2
        return n

    def elements(self) -> list[tuple[str, ...]]:
        out = []
        gens = self.generators
        for mask in range(2 ** len(gens)):
            elem = tuple(g for i, g in enumerate(gens) if mask >> i & 1)
            if self.det_constrained and sum(g in self.odd for g in elem) % 2:
                continue
            out.append(elem)
        return out

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "odd": list(self.odd), "det_constrained": self.det_constrained}


_EVEN_TYPE = {Family.GSPIN_EVEN, Family.GSPIN_EVEN_QS, Family.SO_EVEN, Family.SO_EVEN_QS}


def gamma_group(rows: Sequence[AffineRow], flavor: GroupFlavor, levi_has_gspin_core: bool) -> GammaGroup:
    if flavor.is_unitary:
        return GammaGroup()
    gens = tuple(sorted(r.tau for r in rows if r.gamma_out and r.rank > 0))
    dims = {r.tau: r.dim for r in rows}
    odd = tuple(g for g in gens if dims[g] % 2)
    constrained = flavor.family in _EVEN_TYPE and not levi_has_gspin_core
    return GammaGroup(gens, odd, constrained)


def normalize_component(
    core_jord: Mapping[str, Iterable[int]],
    gl_factors: Iterable[tuple[str, object]],
    registry: Registry,
    flavor: GroupFlavor,
) -> tuple[BernsteinEntry, ...]:
    """Group the GL-factors of a Levi into tau-orbits and attach the core data.

    ``core_jord`` maps rep ids to the Jordan blocks of the cuspidal classical
    part; ``gl_factors`` lists (rep id, twist) for the GL-factors.  Twists are
    discarded: self-dual factors are recentred at 0 and factors differing by
    an unramified twist are merged.
    """
    counts: Counter = Counter()
    for rep_id, _twist in gl_factors:
        if rep_id not in registry:
            raise UnknownRep(rep_id)
        counts[rep_id] += 1
    core = {r: sorted(set(v)) for r, v in core_jord.items() if list(v)}
    for r in core:
        rep = registry[r]
        if not rep.is_selfdual:
            raise InconsistentPartnerData(f"{r}: a non-self-dual symbol cannot occur in the cuspidal part")

    orbits: dict[str, tuple[str, str | None]] = {}
    for r in sorted(set(counts) | set(core)):
        rep = registry[r]
        if rep.partner is not None and rep.partner in registry:
            other = registry[rep.partner]
            if other.selfdual is not partner_sign(rep, flavor):
                raise InconsistentPartnerData(f"{r} and {other.id} violate the partner sign rule")
            key = min(r, other.id)
            orbits[key] = (key, max(r, other.id))
        else:
            orbits[r] = (r, None)

    entries = []
    for key, (r1, r2) in sorted(orbits.items()):
        rep = registry[r1]
        e = counts[r1] + (counts[r2] if r2 else 0)
        if e == 0:
            continue
        if not rep.is_selfdual:
            entries.append(BernsteinEntry(r1, e, t=rep.torsion, cls=PartnerClass.ZERO, a=0, a_prime=0, dim=rep.dim))
            continue
        c1 = rep.selfdual
        if r2:
            c2 = registry[r2].selfdual
        elif flavor.family is Family.U_UNRAMIFIED or rep.partner_sign_rule is SignRule.OPPOSITE:
            c2 = c1.flipped()
        else:
            c2 = c1
        j1, j2 = core.get(r1, []), core.get(r2, []) if r2 else []
        entry = BernsteinEntry(
            tau=r1,
            tau_prime=r2,
            e=e,
            ell=sum(j1),
            ell_prime=sum(j2),
            a=a_tau(j1, c1),
            a_prime=a_tau(j2, c2),
            t=rep.torsion,
            cls=PartnerClass.of(c1, c2),
            dim=rep.dim,
        )
        entries.append(normalize_entry(entry))
    return tuple(entries)


@dataclass(frozen=True)
class HeckePresentation:
    flavor: str
    center_rank: int
    center_index2: bool
    entries: tuple[BernsteinEntry, ...]
    components: tuple[AffineRow, ...]
    gamma: GammaGroup

    @property
    def rank(self) -> int:
        return sum(r.rank for r in self.components) + self.center_rank

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "center_rank": self.center_rank,
            "center_index2": self.center_index2,
            "components": [r.to_json() for r in self.components],
            "gamma": self.gamma.to_json(),
        }


def build_presentation(
    core: EnhancedParam,
    gl_factors: Iterable[tuple[str, object]],
    flavor: GroupFlavor | None = None,
) -> HeckePresentation:
    """Descriptor of the extended affine Hecke algebra of a Bernstein component."""
    if not is_cuspidal(core):
        raise NotCuspidalBase(core.text())
    gl = list(gl_factors)
    reg = core.registry
    if flavor is None:
        extra = sum(2 * reg[r].dim for r, _ in gl)
        flavor = core.flavor.with_size(core.flavor.std_size + extra)
    jord = {r: core.jord_of(r) for r in core.reps()}
    entries = normalize_component(jord, gl, reg, flavor)
    rows = tuple(affine_row(en, flavor) for en in entries)
    gamma = gamma_group(rows, flavor, levi_has_gspin_core=core.flavor.std_size > 0)
    sim = flavor.has_similitude_center
    return HeckePresentation(flavor.name, 1 if sim else 0, sim, entries, rows, gamma)


def gl_factors_from_segments(segments: Iterable) -> list[tuple[str, Fraction]]:
    """Cuspidal support of the GL segments: half_length twisted copies of tau each."""
    out = []
    for seg in segments:
        n = seg.half_length
        for k in range(n):
            out.append((seg.rep, seg.exponent + Fraction(n - 1, 2) - k))
    return out
