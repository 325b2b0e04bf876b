"""Cuspidal support of discrete enhanced parameters.

Two independent routes are provided.  The recursive one strips pairs of
adjacent Jordan blocks carrying equal signs until the signs alternate, then
shrinks what is left onto a hole-free core.  The closed one evaluates the
defect formulas for symplectic and orthogonal unipotent classes.  They must
agree; the test suite checks this exhaustively on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    EpsilonMismatch,
    NonEvenSize,
    NonOddSize,
    NotAdjacent,
    NotRelevant,
    RepeatedSize,
    EpsilonIncomplete,
    InvalidParameter,
)
from .params import EnhancedParam, JordanBlock, component_group, is_discrete, is_relevant


class Side(Enum):
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"


@dataclass(frozen=True, order=True)
class GLSegment:
    """A segment tau|.|^{exponent} (x) St_{half_length} split off into a GL factor."""

    rep: str
    half_length: int
    exponent: Fraction

    def to_json(self) -> dict:
        e = self.exponent
        return {
            "rep": self.rep,
            "half_length": self.half_length,
            "exponent": e.numerator if e.denominator == 1 else str(e),
        }


def pair_segment(rep: str, a: int, a2: int) -> GLSegment:
    """Segment removed with the pair (a, a2); a negative a2 = -b encodes shrinking a to b."""
    return GLSegment(rep, (a + a2) // 2, Fraction(a - a2, 4))


@dataclass(frozen=True)
class CuspidalTriple:
    rep: str
    defect: int
    side: Side
    sign: int | None
    gl_line: tuple[GLSegment, ...]

    def core_sizes(self) -> list[int]:
        if self.side is Side.SYMPLECTIC:
            return [2 * j for j in range(1, self.defect + 1)]
        return [2 * j - 1 for j in range(1, self.defect + 1)]

    def core_signs(self) -> list[int]:
        if self.side is Side.SYMPLECTIC:
            return [(-1) ** j for j in range(1, self.defect + 1)]
        return [self.sign * (-1) ** (j - 1) for j in range(1, self.defect + 1)]


def _check_sizes(sizes: Sequence[int], parity: int) -> list[int]:
    err = NonEvenSize if parity == 0 else NonOddSize
    for s in sizes:
        if s < 1 or s % 2 != parity:
            raise err(f"bad block size {s}")
    if len(set(sizes)) != len(sizes):
        raise RepeatedSize(f"repeated sizes in {list(sizes)}")
    return sorted(sizes)


def _signs(sizes: Sequence[int], eps) -> list[int]:
    if isinstance(eps, Mapping):
        return [eps[s] for s in sizes]
    return list(eps)


def defect_symplectic(sizes: Sequence[int], eps) -> int:
    """Defect of a symplectic class with even part sizes and signs ``eps``.

    ``eps`` is a sequence aligned with ascending ``sizes`` or a map size -> sign.
    """
    if not isinstance(eps, Mapping):
        eps = dict(zip(sizes, eps))
    sizes = _check_sizes(sizes, 0)
    signs = _signs(sizes, eps)
    if len(signs) % 2 == 0:
        signs = [1] + signs
    # alternating sum from the top, largest block counted positively
    d = sum((-1) ** k * e for k, e in enumerate(reversed(signs)))
    return d - 1 if d > 0 else -d


def defect_orthogonal(sizes: Sequence[int], eps) -> tuple[int, int | None]:
    """Defect and sign of an orthogonal class with odd part sizes."""
    if not isinstance(eps, Mapping):
        eps = dict(zip(sizes, eps))
    sizes = _check_sizes(sizes, 1)
    signs = _signs(sizes, eps)
    total = sum((-1) ** j * e for j, e in enumerate(signs, start=1))
    # the surviving minimal block always sits at an odd position, so its
    # sign is opposite to the sign of the alternating sum
    sign = None if total == 0 else (-1 if total > 0 else 1)
    return abs(total), sign


def _drop(phi: EnhancedParam, rep: str, sizes: Sequence[int]) -> EnhancedParam:
    drop = {(rep, a) for a in sizes}
    blocks = tuple(b for b in phi.blocks if b.key not in drop)
    eps = {k: v for k, v in phi.epsilon.items() if k not in drop}
    dim = phi.rep(rep).dim
    removed = sum(b.a for b in phi.blocks if b.key in drop) * dim
    return EnhancedParam(phi.flavor.with_size(phi.flavor.std_size - removed), blocks, eps, phi.registry)


def remove_adjacent_pair(phi: EnhancedParam, rep: str, a: int, a2: int) -> tuple[EnhancedParam, GLSegment]:
    """Remove (rep, a) and (rep, a2) where a2 < a are neighbours with equal sign.

    ``a2 = 0`` removes the minimal even block against the virtual block z_0
    whose sign is +1 by convention.
    """
    sizes = phi.jord_of(rep)
    if a not in sizes or (a2 != 0 and a2 not in sizes) or a2 >= a:
        raise NotAdjacent(f"({rep},{a}) and ({rep},{a2}) are not both present")
    if (a - a2) % 2:
        raise NotAdjacent(f"{a} and {a2} have different parity")
    if any(a2 < b < a for b in sizes):
        raise NotAdjacent(f"a block of {rep} lies strictly between {a2} and {a}")
    if a2 == 0 and a % 2:
        raise NotAdjacent("the virtual block z_0 only pairs with even blocks")
    e2 = 1 if a2 == 0 else phi.eps((rep, a2))
    if phi.eps((rep, a)) != e2:
        raise EpsilonMismatch(f"signs of ({rep},{a}) and ({rep},{a2}) differ")
    removed = [a] if a2 == 0 else [a, a2]
    return _drop(phi, rep, removed), pair_segment(rep, a, a2)


def removable_pairs(phi: EnhancedParam) -> list[tuple[str, int, int]]:
    """All genuine adjacent equal-sign pairs, in the deterministic removal order."""
    found = []
    for rep in phi.reps():
        sizes = phi.jord_of(rep)
        for lo, hi in zip(sizes, sizes[1:]):
            if phi.eps((rep, lo)) == phi.eps((rep, hi)):
                found.append((rep, hi, lo))
    return sorted(found, key=lambda p: (p[0], p[2]))


def reduce_to_alternated(phi: EnhancedParam) -> tuple[EnhancedParam, list[GLSegment]]:
    gl: list[GLSegment] = []
    while True:
        pairs = removable_pairs(phi)
        if not pairs:
            return phi, gl
        rep, a, a2 = pairs[0]
        phi, seg = remove_adjacent_pair(phi, rep, a, a2)
        gl.append(seg)


@dataclass(frozen=True)
class SupportResult:
    core: EnhancedParam
    gl_line: tuple[GLSegment, ...]
    triples: tuple[CuspidalTriple, ...]

    def to_json(self) -> dict:
        return {"core": self.core.to_json(), "gl_line": [s.to_json() for s in self.gl_line]}

    def gl_size(self) -> int:
        reg = self.core.registry
        return sum(2 * reg[s.rep].dim * s.half_length for s in self.gl_line)


def _core_for_rep(rep: str, sizes: list[int], signs: list[int]) -> CuspidalTriple:
    """Shrink an alternated Jordan set of one representation onto its cuspidal core."""
    segs: list[GLSegment] = []
    if not sizes:
        return CuspidalTriple(rep, 0, Side.SYMPLECTIC, None, ())
    if sizes[0] % 2 == 0:
        if signs[0] == -1:
            targets = list(sizes)
        else:
            segs.append(pair_segment(rep, sizes[0], 0))
            targets = sizes[1:]
        for k, a in enumerate(targets, start=1):
            if a > 2 * k:
                segs.append(pair_segment(rep, a, -2 * k))
        return CuspidalTriple(rep, len(targets), Side.SYMPLECTIC, None, tuple(segs))
    for k, a in enumerate(sizes, start=1):
        if a > 2 * k - 1:
            segs.append(pair_segment(rep, a, -(2 * k - 1)))
    return CuspidalTriple(rep, len(sizes), Side.ORTHOGONAL, signs[0], tuple(segs))


def cuspidal_support(phi: EnhancedParam) -> SupportResult:
    if not is_discrete(phi):
        raise InvalidParameter("cuspidal support needs a discrete parameter")
    basis = component_group(phi).basis
    missing = [k for k in basis if k not in phi.epsilon]
    if missing:
        raise EpsilonIncomplete(f"epsilon undefined on {missing}")
    if not is_relevant(phi):
        raise NotRelevant(phi.text())
    alt, gl = reduce_to_alternated(phi)
    triples = []
    blocks: list[JordanBlock] = []
    eps: dict = {}
    for rep in alt.reps():
        sizes = alt.jord_of(rep)
        signs = [alt.eps((rep, a)) for a in sizes]
        tri = _core_for_rep(rep, sizes, signs)
        gl.extend(tri.gl_line)
        # include removed pairs in the per-rep triple too
        own = tuple(s for s in gl if s.rep == rep)
        triples.append(CuspidalTriple(rep, tri.defect, tri.side, tri.sign, own))
        for a, e in zip(tri.core_sizes(), tri.core_signs()):
            blocks.append(JordanBlock(rep, a))
            eps[(rep, a)] = e
    for rep in phi.reps():
        if rep not in alt.reps():
            own = tuple(s for s in gl if s.rep == rep)
            side = Side.SYMPLECTIC if phi.jord_of(rep)[0] % 2 == 0 else Side.ORTHOGONAL
            triples.append(CuspidalTriple(rep, 0, side, None, own))
    reg = phi.registry
    core_size = sum(reg[b.rep].dim * b.a for b in blocks)
    core = EnhancedParam(phi.flavor.with_size(core_size), tuple(blocks), eps, reg)
    return SupportResult(core, tuple(sorted(gl)), tuple(sorted(triples, key=lambda t: t.rep)))


class InductionCase(Enum):
    I = "I"
    II = "II"
    III = "III"


_LABELS = {
    InductionCase.I: "always-reducible",
    InductionCase.II: "reducible",
    InductionCase.III: "irreducible-summands",
}


@dataclass(frozen=True)
class InductionResult:
    case: InductionCase
    eta_count: int

    @property
    def label(self) -> str:
        return _LABELS[self.case]


def classify_parabolic_induction(phi: EnhancedParam, rep: str, a: int) -> InductionResult:
    """Case analysis for inducing delta(rho, a) (x) pi(phi, eps)."""
    if not phi.has_right_sign(rep, a):
        return InductionResult(InductionCase.I, 1)
    if (rep, a) in phi.multiplicities():
        return InductionResult(InductionCase.II, 1)
    return InductionResult(InductionCase.III, 2)


def jordan_membership(phi: EnhancedParam, rep: str, a: int) -> bool:
    """Whether (rho, a) lies in Jord of the representation attached to phi."""
    return classify_parabolic_induction(phi, rep, a).case is InductionCase.II
