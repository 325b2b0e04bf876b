"""Sparse Laurent polynomials in z with integer coefficients.

Exponents live on the half-integer grid so that half-integral labels
(t/2 with t odd) need no special treatment; internally an exponent k/2 is
stored under the integer key k.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Raw = dict[int, int]


def raw_mul(a: Mapping[int, int], b: Mapping[int, int]) -> Raw:
    if len(a) == 1:
        ((ka, ca),) = a.items()
        return {ka + kb: ca * cb for kb, cb in b.items()}
    if len(b) == 1:
        ((kb, cb),) = b.items()
        return {ka + kb: ca * cb for ka, ca in a.items()}
    out: Raw = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def raw_add_into(target: Raw, a: Mapping[int, int], factor: int = 1) -> None:
    for k, c in a.items():
        v = target.get(k, 0) + factor * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def raw_acc(target: Raw, a: Mapping[int, int]) -> None:
    """Accumulate without removing zeros; pair with ``raw_clean``."""
    get = target.get
    for k, c in a.items():
        target[k] = get(k, 0) + c


def raw_acc_mul(target: Raw, a: Mapping[int, int], b: Mapping[int, int]) -> None:
    """target += a * b, zeros left in place."""
    get = target.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            target[k] = get(k, 0) + ca * cb


def raw_clean(a: Raw) -> Raw:
    return {k: v for k, v in a.items() if v}


def raw_monomial(exponent, coeff: int = 1) -> Raw:
    key = _key(exponent)
    return {key: coeff} if coeff else {}


def raw_c(lam: Fraction) -> Raw:
    """z^lam - z^-lam."""
    if lam == 0:
        return {}
    k = _key(lam)
    return {k: 1, -k: -1}


def _key(exponent) -> int:
    e2 = Fraction(exponent) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {exponent} is not on the half-integer grid")
    return int(e2)


def _exp_text(k: int) -> str:
    if k % 2 == 0:
        return str(k // 2)
    return f"({k}/2)"


class LaurentScalar:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping | None = None, *, _raw: Raw | None = None) -> None:
        if _raw is not None:
            self._c = {k: v for k, v in _raw.items() if v}
            return
        c: Raw = {}
        for e, v in (coeffs or {}).items():
            raw_add_into(c, {_key(e): int(v)})
        self._c = c

    @classmethod
    def from_raw(cls, raw: Mapping[int, int]) -> "LaurentScalar":
        return cls(_raw=dict(raw))

    @classmethod
    def const(cls, c: int) -> "LaurentScalar":
        return cls(_raw={0: c})

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "LaurentScalar":
        return cls(_raw=raw_monomial(exponent, coeff))

    @property
    def raw(self) -> Raw:
        return dict(self._c)

    def terms(self) -> list[tuple[Fraction, int]]:
        """(exponent, coefficient) pairs with descending exponent."""
        return [(Fraction(k, 2), self._c[k]) for k in sorted(self._c, reverse=True)]

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @staticmethod
    def _coerce(other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, int):
            return LaurentScalar.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        raw_add_into(out, other._c)
        return LaurentScalar(_raw=out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(_raw={k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentScalar(_raw=raw_mul(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = LaurentScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            c = self._c[k]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 2 else f"z^{_exp_text(k)}"
                body = mono if mag == 1 else f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentScalar({self})"

    def to_json(self) -> dict[str, int]:
        return {_json_exp(k): self._c[k] for k in sorted(self._c, reverse=True)}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentScalar":
        return cls({Fraction(e): int(c) for e, c in obj.items()})


def _json_exp(k: int) -> str:
    return str(k // 2) if k % 2 == 0 else f"{k}/2"


def laurent_sum(items: Iterable[LaurentScalar]) -> LaurentScalar:
    out: Raw = {}
    for s in items:
        raw_add_into(out, s._c)
    return LaurentScalar(_raw=out)


# --------------------------------------------------------------------------
# packed form for inner loops
#
# A Laurent polynomial sum c_k z^(k/2) with lowest key lo is packed as the
# pair (V, lo) with V = sum c_k X^(k - lo), X = 2^BITS.  Products are single
# big-integer products and sums are shifts plus additions.  The encoding is
# exact and injective as long as every coefficient is below X/2 in absolute
# value, which is far beyond anything met at the ranks handled here.

BITS = 64
_X = 1 << BITS
_HALF = _X >> 1
_MASK = _X - 1

Packed = tuple[int, int]
PZERO: Packed = (0, 0)
PONE: Packed = (1, 0)


def pack(raw: Mapping[int, int]) -> Packed:
    if not raw:
        return PZERO
    lo = min(raw)
    v = 0
    for k, c in raw.items():
        v += c << (BITS * (k - lo))
    return normalize_packed((v, lo))


def unpack(p: Packed) -> Raw:
    v, k = p
    out: Raw = {}
    while v:
        d = v & _MASK
        if d >= _HALF:
            d -= _X
        if d:
            out[k] = d
        v = (v - d) >> BITS
        k += 1
    return out


def normalize_packed(p: Packed) -> Packed:
    v, lo = p
    if not v:
        return PZERO
    while not v & _MASK:
        v >>= BITS
        lo += 1
    return (v, lo)


def pmul(a: Packed, b: Packed) -> Packed:
    return (a[0] * b[0], a[1] + b[1])


def padd(a: Packed, b: Packed) -> Packed:
    if not a[0]:
        return b
    if not b[0]:
        return a
    va, la = a
    vb, lb = b
    if la <= lb:
        return (va + (vb << (BITS * (lb - la))), la)
    return ((va << (BITS * (la - lb))) + vb, lb)


def pneg(a: Packed) -> Packed:
    return (-a[0], a[1])
