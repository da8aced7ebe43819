"""Arithmetic in G = S wr C_m and its covering subgroups.

Elements are (x_0, ..., x_{m-1}) shifted by gamma^k where gamma cycles the
m coordinates; the paper-facing 1..m subscripts map to 0..m-1 by i -> i-1,
and all mod-m subscript arithmetic goes through ``_wrap`` so there is one
place to get it right.

Multiplication convention (pinned by the normalizer-oracle test, do not
change independently):

    (x; k) * (y; j) = (z; k+j)   with   z[i] = x[i] * y[i+k]  (mod m)

Under this convention (x; k) normalizes M^{g_1} x ... x M^{g_m} exactly when
x[i-k] lies in g[i-k]^{-1} M g[i] for every i, which is what the membership
test below evaluates.  The opposite shift sign satisfies the mirrored
condition instead; the two agree at m = 2, so only the m >= 3 oracle test
distinguishes them.  Wreath elements are never expanded to permutations on
n*m points except inside the oracle and the explicit realization helpers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .formulas import alpha, prime_factors, smallest_prime_factor
from .groups import GroupTable, SubgroupHandle
from .perm import Perm


@dataclass(frozen=True)
class WreathElement:
    """An m-tuple of base-group element ids plus a coordinate shift."""

    base: tuple[int, ...]
    shift: int

    def __post_init__(self):
        m = len(self.base)
        if not 0 <= self.shift < m:
            raise ValueError(f"shift {self.shift} not reduced mod {m}")


class WreathContext:
    """S wr C_m for a fixed enumerated S and exponent m."""

    def __init__(self, S: GroupTable, m: int):
        if m < 1:
            raise ValueError("m >= 1 required")
        self.S = S
        self.m = m

    # -- element arithmetic ------------------------------------------------

    def identity(self) -> WreathElement:
        return WreathElement((0,) * self.m, 0)

    def element(self, base: Sequence[int], shift: int) -> WreathElement:
        return WreathElement(tuple(int(b) for b in base), shift % self.m)

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        m = self.m
        if len(a.base) != m or len(b.base) != m:
            raise ValueError("element does not match this wreath context")
        k = a.shift
        z = tuple(self.S.mul(a.base[i], b.base[(i + k) % m]) for i in range(m))
        return WreathElement(z, (a.shift + b.shift) % m)

    def inv(self, a: WreathElement) -> WreathElement:
        m, k = self.m, a.shift
        y = tuple(int(self.S.inv[a.base[(i - k) % m]]) for i in range(m))
        return WreathElement(y, (-k) % m)

    def order(self) -> int:
        return self.S.order**self.m * self.m

    def random_element(self, rng) -> WreathElement:
        base = tuple(int(rng.integers(0, self.S.order)) for _ in range(self.m))
        return WreathElement(base, int(rng.integers(0, self.m)))

    def strand_product(self, w: WreathElement, t: int, step: int) -> int:
        """x_t * x_{t+step} * x_{t+2.step} * ... around one step-cycle
        (t is 0-indexed); the left-to-right cumulative product."""
        m = self.m
        l = m // math.gcd(m, step) if step else 1
        acc = w.base[t % m]
        for j in range(1, l):
            acc = self.S.mul(acc, w.base[(t + j * step) % m])
        return acc

    # -- explicit permutation realization (oracle/test side only) ----------

    def to_perm(self, w: WreathElement) -> Perm:
        """The imprimitive action on m blocks of S's points: block c maps to
        block c-k, the destination block applying its base coordinate (the
        unique direction making to_perm a homomorphism for this mul)."""
        n, m, k = self.S.degree, self.m, w.shift
        images = [0] * (n * m)
        for c in range(m):
            dest = (c - k) % m
            row = self.S.images[w.base[dest]]
            for q in range(n):
                images[c * n + q] = dest * n + int(row[q])
        return Perm(images)

    def realization_generators(self) -> list[Perm]:
        """Generators of the explicit n*m-point copy: S's generators in
        block 0, plus the coordinate cycle."""
        gens = []
        for gid in self.S.generator_ids:
            base = [0] * self.m
            base[0] = gid
            gens.append(self.to_perm(WreathElement(tuple(base), 0)))
        if self.m > 1:
            gens.append(self.to_perm(WreathElement((0,) * self.m, 1)))
        return gens

    def enumerate_table(self, product_budget: int = 10**7) -> GroupTable:
        """Fully enumerate the explicit realization (desk scale only)."""
        name = f"{self.S.name or 'S'}wrC{self.m}"
        return GroupTable.from_generators(
            self.realization_generators(), name=name, product_budget=product_budget
        )

    def base_grid(self) -> np.ndarray:
        """All |S|^m base tuples as an (|S|^m, m) id matrix, row-major."""
        o = self.S.order
        grids = np.meshgrid(*([np.arange(o)] * self.m), indexing="ij")
        return np.stack(grids, axis=-1).reshape(-1, self.m)

    def iter_elements(self) -> Iterable[WreathElement]:
        for shift in range(self.m):
            for base in itertools.product(range(self.S.order), repeat=self.m):
                yield WreathElement(base, shift)


def _wrap(i: int, m: int) -> int:
    return i % m


# -- product-type subgroups ---------------------------------------------------


@dataclass(frozen=True)
class ProductTypeDescriptor:
    """The normalizer of M x M^{g_2} x ... x M^{g_m}: a maximal subgroup M of
    S in the first slot plus m-1 coset labels (g_1 = identity implicitly).

    Coset entries are canonicalized to the minimum element id of M*g_i, so
    two descriptors denote the same subgroup exactly when they compare equal.
    """

    M: SubgroupHandle
    cosets: tuple[int, ...]

    @staticmethod
    def create(M: SubgroupHandle, cosets: Sequence[int]) -> "ProductTypeDescriptor":
        g = M.parent
        canon = tuple(int(g.mul_right(M.member_ids, int(c)).min()) for c in cosets)
        return ProductTypeDescriptor(M, canon)

    @property
    def m(self) -> int:
        return len(self.cosets) + 1

    def slot_gs(self) -> list[int]:
        return [0, *self.cosets]

    def key(self) -> tuple:
        return (self.M.canonical_key, self.cosets)

    def __eq__(self, other):
        return isinstance(other, ProductTypeDescriptor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def product_type_contains(
    ctx: WreathContext, w: WreathElement, d: ProductTypeDescriptor
) -> bool:
    """Membership in N_G(M x M^{g_2} x ... x M^{g_m}): the coset condition
    x[i-k] in g[i-k]^{-1} M g[i] for every slot i."""
    S, m, k = ctx.S, ctx.m, w.shift
    if d.m != m:
        raise ValueError(f"descriptor is for m={d.m}, context m={m}")
    gs = d.slot_gs()
    ginv = [int(S.inv[g]) for g in gs]
    for i in range(m):
        a = _wrap(i - k, m)
        u = S.mul(S.mul(gs[a], w.base[a]), ginv[i])
        if not d.M.contains(u):
            return False
    return True


def product_type_mask(
    ctx: WreathContext, d: ProductTypeDescriptor, base_grid: np.ndarray, shift: int
) -> np.ndarray:
    """Vectorized membership over a base-tuple grid at a fixed shift."""
    S, m = ctx.S, ctx.m
    gs = d.slot_gs()
    mask = np.ones(base_grid.shape[0], dtype=bool)
    for i in range(m):
        a = _wrap(i - shift, m)
        # the allowed set for coordinate a: g[a]^{-1} M g[i]
        allowed = S.mul_right(S.mul_left(int(S.inv[gs[a]]), d.M.member_ids), gs[i])
        lut = np.zeros(S.order, dtype=bool)
        lut[allowed] = True
        mask &= lut[base_grid[:, a]]
    return mask


def cumulative_membership_check(
    ctx: WreathContext, w: WreathElement, d: ProductTypeDescriptor, t: int
) -> bool:
    """The derived strand condition x_t x_{k+t} ... x_{(l-1)k+t} in M^{g_t}
    with l = m/(m,k); implied by full membership, checkable on its own.
    ``t`` is the paper-facing 1-indexed slot, 1 <= t <= m."""
    S, m, k = ctx.S, ctx.m, w.shift
    if not 1 <= t <= m:
        raise ValueError(f"t={t} out of range 1..{m}")
    t0 = t - 1
    prod = ctx.strand_product(w, t0, k)
    g_t = d.slot_gs()[t0]
    u = S.mul(S.mul(g_t, prod), int(S.inv[g_t]))
    return d.M.contains(u)


# -- diagonal-type subgroups ---------------------------------------------------


class AutomorphismError(ValueError):
    """A supplied table is not an automorphism of S."""


def verify_automorphism(S: GroupTable, table: np.ndarray) -> None:
    """Check a full id->id table is a bijective homomorphism of S."""
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (S.order,):
        raise AutomorphismError(f"table length {t.shape} != group order {S.order}")
    if not np.array_equal(np.sort(t), np.arange(S.order)):
        raise AutomorphismError("table is not a bijection on element ids")
    if t[0] != 0:
        raise AutomorphismError("table does not fix the identity")
    all_ids = np.arange(S.order, dtype=np.int64)
    for gid in S.generator_ids:
        lhs = t[S.mul_left(gid, all_ids)]
        rhs = S.mul_left(int(t[gid]), t[all_ids])
        if not np.array_equal(lhs, rhs):
            raise AutomorphismError("table is not multiplicative")


def inner_automorphism(S: GroupTable, s: int) -> np.ndarray:
    """Conjugation by s as an id table."""
    return S.conj_map(s).copy()


@dataclass(frozen=True)
class DiagonalDescriptor:
    """A twisted-diagonal subgroup of the socle: t < m coordinates repeated
    m/t times through automorphism tables phi[i][j] (i in 0..t-1 indexing the
    free coordinates, j in 0..m/t-2 indexing the repeated blocks)."""

    S: GroupTable = field(repr=False)
    m: int
    t: int
    phi: tuple[tuple[np.ndarray, ...], ...] = field(repr=False)

    @staticmethod
    def create(
        S: GroupTable, m: int, t: int, phi: Sequence[Sequence[np.ndarray]]
    ) -> "DiagonalDescriptor":
        if m < 2 or t < 1 or t >= m or m % t != 0:
            raise ValueError(f"t={t} must be a proper divisor of m={m}")
        blocks = m // t
        if len(phi) != t or any(len(row) != blocks - 1 for row in phi):
            raise ValueError(f"phi must be {t} x {blocks - 1} tables")
        frozen = []
        for row in phi:
            frozen_row = []
            for tab in row:
                arr = np.asarray(tab, dtype=np.int64)
                verify_automorphism(S, arr)
                frozen_row.append(arr)
            frozen.append(tuple(frozen_row))
        return DiagonalDescriptor(S, m, t, tuple(frozen))

    def size(self) -> int:
        return self.S.order**self.t

    def size_bound(self) -> int:
        """|S|^(m/l) with l the smallest prime divisor of m; the diagonal
        size never exceeds it since t is a proper divisor of m."""
        bound = self.S.order ** (self.m // smallest_prime_factor(self.m))
        assert self.size() <= bound
        return bound


def diagonal_contains(ctx: WreathContext, w: WreathElement, d: DiagonalDescriptor) -> bool:
    """Membership of w in the diagonal subgroup itself (a subset of the
    socle, so any nonzero shift is outside)."""
    if w.shift != 0:
        return False
    t, blocks = d.t, d.m // d.t
    for i in range(t):
        y = w.base[i]
        for j in range(1, blocks):
            if w.base[j * t + i] != int(d.phi[i][j - 1][y]):
                return False
    return True


# -- socle-containing maximal subgroups ----------------------------------------


@dataclass(frozen=True)
class SocleMaximal:
    """The preimage of the index-r subgroup of C_m, r a prime divisor of m:
    contains exactly the elements whose shift is divisible by r."""

    r: int

    def contains(self, w: WreathElement) -> bool:
        return w.shift % self.r == 0


def socle_maximals(m: int) -> list[SocleMaximal]:
    """One socle-containing maximal subgroup per prime divisor of m;
    alpha(m) of them."""
    if m < 1:
        raise ValueError("m >= 1 required")
    return [SocleMaximal(r) for r in prime_factors(m)]


# -- the constructive cover ----------------------------------------------------


class CoverInputError(ValueError):
    """The supplied family does not cover the base group."""


def coset_representatives(M: SubgroupHandle) -> list[int]:
    """Deterministic right-coset representatives of M in its parent: the
    minimum element id of each coset M*g, ascending."""
    g = M.parent
    assigned = np.zeros(g.order, dtype=bool)
    reps = []
    for x in range(g.order):
        if assigned[x]:
            continue
        reps.append(x)
        assigned[g.mul_right(M.member_ids, x)] = True
    return reps


def construct_product_cover(
    S: GroupTable, cover: Sequence[SubgroupHandle], m: int
) -> tuple[list[ProductTypeDescriptor], list[SocleMaximal]]:
    """The constructive covering family for S wr C_m from a covering of S:
    every product-type subgroup over each member of the cover (all coset
    choices), plus the alpha(m) socle-containing maximals.

    Emits exactly alpha(m) + sum over M of |S:M|^(m-1) subgroups; the
    verified postcondition (at desk scale, via verify_wreath_cover) is that
    their union is all of S wr C_m."""
    union = np.zeros(S.order, dtype=bool)
    for M in cover:
        union[M.member_ids] = True
    if not union.all():
        missing = int(np.flatnonzero(~union)[0])
        raise CoverInputError(f"family does not cover S: element id {missing} missed")

    descriptors: list[ProductTypeDescriptor] = []
    for M in cover:
        reps = coset_representatives(M)
        for combo in itertools.product(reps, repeat=m - 1):
            descriptors.append(ProductTypeDescriptor.create(M, combo))
    expected = sum(M.index ** (m - 1) for M in cover)
    assert len(descriptors) == expected, (len(descriptors), expected)
    return descriptors, socle_maximals(m)


def verify_wreath_cover(
    ctx: WreathContext,
    descriptors: Sequence[ProductTypeDescriptor],
    socle: Sequence[SocleMaximal],
    element_cap: int = 10**8,
    threads: int = 1,
) -> tuple[bool, WreathElement | None]:
    """Exhaustively check that every element of S wr C_m lies in some family
    member; returns (ok, first uncovered witness).  Requires
    m * |S|^m <= element_cap."""
    total = ctx.m * ctx.S.order**ctx.m
    if total > element_cap:
        raise CoverInputError(
            f"exhaustive verification needs m*|S|^m = {total} <= {element_cap}"
        )
    grid = ctx.base_grid()
    socle_rs = [s.r for s in socle]

    def check_shift(shift: int) -> WreathElement | None:
        if any(shift % r == 0 for r in socle_rs):
            return None  # covered by a socle-containing maximal
        covered = np.zeros(grid.shape[0], dtype=bool)
        for d in descriptors:
            remaining = ~covered
            if not remaining.any():
                break
            covered[remaining] |= product_type_mask(ctx, d, grid[remaining], shift)
        if not covered.all():
            idx = int(np.flatnonzero(~covered)[0])
            return WreathElement(tuple(int(x) for x in grid[idx]), shift)
        return None

    if threads > 1 and ctx.m > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check_shift, range(ctx.m)))
    else:
        results = [check_shift(s) for s in range(ctx.m)]
    for witness in results:
        if witness is not None:
            return False, witness
    return True, None


# -- the normalizer oracle (test-side ground truth) ----------------------------


def product_subgroup_perm_keys(
    ctx: WreathContext, d: ProductTypeDescriptor
) -> np.ndarray:
    """Sorted packed keys of the explicit element set of
    M^{g_1} x ... x M^{g_m} realized on n*m points."""
    S, m = ctx.S, ctx.m
    n = S.degree
    slot_members = []
    for g in d.slot_gs():
        conj = np.sort(S.conj_map(g)[d.M.member_ids])
        slot_members.append(conj)
    rows = []
    for combo in itertools.product(*slot_members):
        row = np.empty(n * m, dtype=np.uint8)
        for c, xid in enumerate(combo):
            row[c * n : (c + 1) * n] = c * n + S.images[int(xid)]
        rows.append(row)
    mat = np.array(rows, dtype=np.uint16)
    return np.sort(_pack_rows(mat, n * m))


def _pack_rows(rows: np.ndarray, degree: int) -> np.ndarray:
    weights = np.uint64(degree) ** np.arange(degree - 1, -1, -1, dtype=np.uint64)
    return (rows.astype(np.uint64) @ weights).astype(np.uint64)


def normalizes_product_subgroup(
    ctx: WreathContext, w: WreathElement, subgroup_keys: np.ndarray
) -> bool:
    """Ground truth for product_type_contains: conjugate the explicit
    element set of the product subgroup by the explicit permutation of w and
    compare as sets."""
    S, m = ctx.S, ctx.m
    n = S.degree
    w_perm = np.array(ctx.to_perm(w).images, dtype=np.int64)
    w_inv = np.argsort(w_perm)
    rows = _unpack_keys(subgroup_keys, n * m)
    conj = w_inv[rows[:, w_perm]]  # w^-1 * p * w applied pointwise
    return np.array_equal(np.sort(_pack_rows(conj, n * m)), subgroup_keys)


def _unpack_keys(keys: np.ndarray, degree: int) -> np.ndarray:
    out = np.empty((keys.shape[0], degree), dtype=np.int64)
    rem = keys.astype(np.uint64).copy()
    for pos in range(degree - 1, -1, -1):
        out[:, pos] = (rem % np.uint64(degree)).astype(np.int64)
        rem //= np.uint64(degree)
    return out
