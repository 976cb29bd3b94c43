"""Exact linear algebra over GF(2) on bit-packed integers.

Vectors are immutable bit strings packed into Python ints (bit i of the
int is coordinate i), so XOR / AND / popcount run as word-parallel int
operations.  Subspaces are stored as reduced-row-echelon bases with
strictly increasing pivot columns; equality of spans is then a plain
tuple comparison, and every coset gets a unique canonical representative
(the member that is zero in all pivot columns).

All randomness flows through an explicitly passed numpy Generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "F2Vector",
    "F2Matrix",
    "Subspace",
    "Coset",
    "DimensionProfile",
    "rref",
    "canonical_rep",
    "intersect",
    "sum_spaces",
    "dual",
    "complement_in",
    "co_space",
    "sample_subspace",
    "sample_superspace",
    "gaussian_binomial",
    "solve_affine",
    "random_vector",
    "random_element",
]


def _require_same_n(a, b) -> None:
    if a.n != b.n:
        raise ValueError(f"ambient dimension mismatch: {a.n} != {b.n}")


@dataclass(frozen=True)
class F2Vector:
    """A length-n bit vector; addition is XOR, so v + v = 0."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits out of range for n={self.n}")

    @classmethod
    def zero(cls, n: int) -> "F2Vector":
        return cls(0, n)

    @classmethod
    def unit(cls, i: int, n: int) -> "F2Vector":
        return cls(1 << i, n)

    @classmethod
    def from_bits(cls, s: str) -> "F2Vector":
        """Parse "1100" with the first character as coordinate 0."""
        bits = 0
        for i, c in enumerate(s):
            if c == "1":
                bits |= 1 << i
            elif c != "0":
                raise ValueError(f"not a bit string: {s!r}")
        return cls(bits, len(s))

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        _require_same_n(self, other)
        return F2Vector(self.bits ^ other.bits, self.n)

    __add__ = __xor__

    def dot(self, other: "F2Vector") -> int:
        _require_same_n(self, other)
        return (self.bits & other.bits).bit_count() & 1

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def to_bytes(self) -> bytes:
        """Little-endian bit order within bytes, ceil(n/8) bytes."""
        return self.bits.to_bytes((self.n + 7) // 8, "little")

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "F2Vector":
        bits = int.from_bytes(data, "little")
        if bits >> n:
            raise ValueError("stray bits beyond dimension n")
        return cls(bits, n)

    def __str__(self) -> str:
        return "".join(str(self.bit(i)) for i in range(self.n))


@dataclass(frozen=True)
class F2Matrix:
    """An ordered list of row vectors sharing one ambient dimension."""

    rows: tuple[F2Vector, ...]
    n: int

    def __post_init__(self):
        for r in self.rows:
            if r.n != self.n:
                raise ValueError("row width mismatch")

    @classmethod
    def from_rows(cls, rows: Iterable[F2Vector], n: int) -> "F2Matrix":
        return cls(tuple(rows), n)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def mul_vector(self, v: F2Vector) -> F2Vector:
        """Row-wise dot products: result bit i = rows[i] . v."""
        if v.n != self.n:
            raise ValueError("vector width mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r.bits & v.bits).bit_count() & 1:
                bits |= 1 << i
        return F2Vector(bits, len(self.rows))


def _rref_ints(rows: Iterable[int], n: int) -> tuple[int, ...]:
    """Reduced row echelon form of raw bit rows; pivots strictly increase."""
    work = [r for r in rows if r]
    done: list[int] = []
    for col in range(n):
        mask = 1 << col
        piv = None
        for i, r in enumerate(work):
            if r & mask:
                piv = i
                break
        if piv is None:
            continue
        p = work.pop(piv)
        work = [r ^ p if r & mask else r for r in work]
        done = [d ^ p if d & mask else d for d in done]
        done.append(p)
        if not work:
            break
    return tuple(done)


def _pivots(rows: tuple[int, ...]) -> tuple[int, ...]:
    # In RREF each row's pivot is its lowest set bit.
    return tuple((r & -r).bit_length() - 1 for r in rows)


def _reduce(rows, bits: int) -> int:
    for r in rows:
        if bits & (r & -r):
            bits ^= r
    return bits


def _ech_insert(rows: list[int], bits: int) -> bool:
    """Reduce bits against an echelon row list (sorted by pivot) and
    insert the remainder if independent.  Returns True on insertion."""
    for r in rows:
        if bits & (r & -r):
            bits ^= r
    if bits == 0:
        return False
    piv = bits & -bits
    i = 0
    while i < len(rows) and (rows[i] & -rows[i]) < piv:
        i += 1
    rows.insert(i, bits)
    return True


@dataclass(frozen=True)
class Subspace:
    """A subspace in canonical RREF-basis form.

    Two Subspace values are equal as sets iff their stored bases are
    identical, so == and hash compare spans.
    """

    rows: tuple[int, ...]
    n: int

    def __post_init__(self):
        seen = -1
        for r in self.rows:
            if r <= 0 or r >> self.n:
                raise ValueError("basis row out of range")
            p = (r & -r).bit_length() - 1
            if p <= seen:
                raise ValueError("basis rows not in increasing pivot order")
            seen = p
        pivmask = 0
        for r, p in zip(self.rows, _pivots(self.rows)):
            pivmask |= 1 << p
        for r, p in zip(self.rows, _pivots(self.rows)):
            if (r & pivmask) != (1 << p):
                raise ValueError("basis not fully reduced")

    @classmethod
    def span(cls, vectors: Iterable[F2Vector], n: int) -> "Subspace":
        return cls(_rref_ints((v.bits for v in vectors), n), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> F2Matrix:
        return F2Matrix(tuple(F2Vector(r, self.n) for r in self.rows), self.n)

    @property
    def pivots(self) -> tuple[int, ...]:
        return _pivots(self.rows)

    def contains(self, v: F2Vector) -> bool:
        if v.n != self.n:
            raise ValueError("ambient dimension mismatch")
        return _reduce(self.rows, v.bits) == 0

    def contains_space(self, other: "Subspace") -> bool:
        _require_same_n(self, other)
        return all(_reduce(self.rows, r) == 0 for r in other.rows)

    def elements(self) -> Iterator[F2Vector]:
        """All 2^dim members; only sensible for small dim."""
        for mask in range(1 << self.dim):
            bits = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    bits ^= self.rows[i]
                m >>= 1
                i += 1
            yield F2Vector(bits, self.n)

    def to_bytes(self) -> bytes:
        """2-byte big-endian dim, then dim serialized rows."""
        nbytes = (self.n + 7) // 8
        out = [len(self.rows).to_bytes(2, "big")]
        out.extend(r.to_bytes(nbytes, "little") for r in self.rows)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "Subspace":
        dim = int.from_bytes(data[:2], "big")
        nbytes = (n + 7) // 8
        if len(data) != 2 + dim * nbytes:
            raise ValueError("truncated subspace encoding")
        rows = []
        for i in range(dim):
            chunk = data[2 + i * nbytes : 2 + (i + 1) * nbytes]
            rows.append(int.from_bytes(chunk, "little"))
        return cls(tuple(rows), n)


def rref(m: F2Matrix) -> tuple[Subspace, int]:
    """Canonicalize the row space of m; returns (subspace, rank)."""
    s = Subspace(_rref_ints((r.bits for r in m.rows), m.n), m.n)
    return s, s.dim


def canonical_rep(s: Subspace, x: F2Vector) -> F2Vector:
    """The unique member of the coset s + x that is zero in every pivot
    column of s's basis.  canonical_rep(s, a) == canonical_rep(s, b) iff
    a + b lies in s."""
    if x.n != s.n:
        raise ValueError("ambient dimension mismatch")
    return F2Vector(_reduce(s.rows, x.bits), s.n)


@dataclass(frozen=True)
class Coset:
    """An affine coset space + offset, with the offset stored canonically."""

    space: Subspace
    offset: F2Vector

    def __post_init__(self):
        object.__setattr__(self, "offset", canonical_rep(self.space, self.offset))

    @property
    def n(self) -> int:
        return self.space.n

    def contains(self, v: F2Vector) -> bool:
        return canonical_rep(self.space, v) == self.offset

    def elements(self) -> Iterator[F2Vector]:
        for s in self.space.elements():
            yield s ^ self.offset


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _require_same_n(a, b)
    return Subspace(_rref_ints(a.rows + b.rows, a.n), a.n)


def dual(a: Subspace) -> Subspace:
    """The orthogonal complement {v : v . s = 0 for all s in a}."""
    piv = set(a.pivots)
    free = [j for j in range(a.n) if j not in piv]
    rows = []
    for f in free:
        bits = 1 << f
        for r, p in zip(a.rows, a.pivots):
            if (r >> f) & 1:
                bits |= 1 << p
        rows.append(bits)
    out = Subspace(_rref_ints(rows, a.n), a.n)
    assert out.dim == a.n - a.dim
    return out


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _require_same_n(a, b)
    return dual(sum_spaces(dual(a), dual(b)))


def complement_in(sub: Subspace, sup: Subspace) -> Subspace:
    """A complement C of sub inside sup: C + sub = sup and C ∩ sub = {0}.

    Deterministic greedy completion: sup's canonical basis rows are
    adjoined in order, keeping the ones independent of the span so far.
    """
    _require_same_n(sub, sup)
    if not sup.contains_space(sub):
        raise ValueError("sub is not contained in sup")
    ech = list(sub.rows)
    picked = []
    for r in sup.rows:
        if _ech_insert(ech, r):
            picked.append(r)
    return Subspace(_rref_ints(picked, sub.n), sub.n)


def co_space(s: Subspace) -> Subspace:
    """The subspace of canonical representatives: span of the unit
    vectors at s's non-pivot columns, isomorphic to F_2^n / s."""
    piv = set(s.pivots)
    rows = tuple(1 << j for j in range(s.n) if j not in piv)
    return Subspace(rows, s.n)


def random_vector(n: int, rng: np.random.Generator) -> F2Vector:
    if n == 0:
        return F2Vector(0, 0)
    raw = int.from_bytes(rng.bytes((n + 7) // 8), "little")
    return F2Vector(raw & ((1 << n) - 1), n)


def random_element(s: Subspace, rng: np.random.Generator) -> F2Vector:
    """Uniform member of the subspace (uniform combination of basis rows)."""
    if s.dim == 0:
        return F2Vector(0, s.n)
    coeff = int.from_bytes(rng.bytes((s.dim + 7) // 8), "little")
    bits = 0
    for i in range(s.dim):
        if (coeff >> i) & 1:
            bits ^= s.rows[i]
    return F2Vector(bits, s.n)


def sample_subspace(sup: Subspace, k: int, rng: np.random.Generator) -> Subspace:
    """Uniform k-dimensional subspace of sup.

    Repeatedly adjoins uniform members of sup, rejecting linearly
    dependent draws; each accepted vector is uniform over the valid
    extensions, so the final span is uniform.
    """
    if not 0 <= k <= sup.dim:
        raise ValueError(f"cannot pick a {k}-dim subspace of a {sup.dim}-dim space")
    ech: list[int] = []
    while len(ech) < k:
        _ech_insert(ech, random_element(sup, rng).bits)
    return Subspace(_rref_ints(ech, sup.n), sup.n)


def sample_superspace(sub: Subspace, k: int, rng: np.random.Generator) -> Subspace:
    """Uniform k-dimensional superspace of sub inside F_2^n."""
    if not sub.dim <= k <= sub.n:
        raise ValueError(f"cannot extend a {sub.dim}-dim space to dimension {k}")
    ech = list(sub.rows)
    while len(ech) < k:
        _ech_insert(ech, random_vector(sub.n, rng).bits)
    return Subspace(_rref_ints(ech, sub.n), sub.n)


def gaussian_binomial(d: int, k: int) -> int:
    """The number of k-dimensional subspaces of a d-dimensional space
    over GF(2), computed exactly with arbitrary-precision integers."""
    if k < 0 or k > d:
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    num = den = 1
    for i in range(k):
        num *= (1 << (d - i)) - 1
        den *= (1 << (i + 1)) - 1
    assert num % den == 0
    return num // den


def solve_affine(m: F2Matrix, b: F2Vector) -> F2Vector | None:
    """Any v with m.mul_vector(v) == b, or None if the system is
    inconsistent.  The full solution set is then ker(m) + v."""
    if b.n != m.num_rows:
        raise ValueError("rhs length must equal the row count")
    # pivot column -> (equation mask, rhs bit), kept fully reduced
    eqs: dict[int, tuple[int, int]] = {}
    for i, row in enumerate(m.rows):
        mask, rhs = row.bits, b.bit(i)
        for p, (em, er) in eqs.items():
            if (mask >> p) & 1:
                mask ^= em
                rhs ^= er
        if mask == 0:
            if rhs:
                return None
            continue
        p = (mask & -mask).bit_length() - 1
        for q in list(eqs):
            em, er = eqs[q]
            if (em >> p) & 1:
                eqs[q] = (em ^ mask, er ^ rhs)
        eqs[p] = (mask, rhs)
    bits = 0
    for p, (_, rhs) in eqs.items():
        if rhs:
            bits |= 1 << p
    return F2Vector(bits, m.n)


@dataclass(frozen=True)
class DimensionProfile:
    """The nested-subspace dimensions one run is calibrated to.

    The default profile at security parameter n (divisible by 6) is
    anchor n/6 < secret 2n/6 < test 3n/6 < span 4n/6; degenerate
    profiles (equal dimensions) are allowed for edge-case checks.
    """

    n: int
    dim_anchor: int
    dim_secret: int
    dim_test: int
    dim_span: int

    def __post_init__(self):
        dims = (self.dim_anchor, self.dim_secret, self.dim_test, self.dim_span)
        if not all(0 <= d <= self.n for d in dims):
            raise ValueError("dimensions must lie in [0, n]")
        if not (self.dim_anchor <= self.dim_secret <= self.dim_test <= self.dim_span):
            raise ValueError("dimensions must be ordered anchor <= secret <= test <= span")

    @classmethod
    def default(cls, n: int) -> "DimensionProfile":
        if n % 6:
            raise ValueError(f"security parameter must be divisible by 6, got {n}")
        return cls(n, n // 6, 2 * n // 6, 3 * n // 6, 4 * n // 6)
