"""Exact arithmetic in finite split metabelian groups ``C_m ⋉ H``.

``H`` is a finite abelian p-group given by the orders of its cyclic factors,
and the top generator ``y`` acts on ``H`` by conjugation through an integer
matrix ``A`` whose column ``j`` is the exponent vector of ``y^-1 x_j y``.
Every element has the unique normal form ``y^t x_0^{v_0} ... x_{n-1}^{v_{n-1}}``
with ``0 <= t < m`` and ``0 <= v_i < orders[i]``, and the product is

    (y^t h)(y^s h') = y^{t+s} · A^s(h) · h'.

Single elements are handled with Python integers, so they are exact at any
size.  Subgroups are explicit element sets, stored as sorted arrays of integer
codes (see :mod:`capgroups._accel`), and are only available for groups whose
order is under the enumeration cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _accel

DEFAULT_CAP = 5_000_000

# Orbit length limit when searching for the order of an action matrix.
_MAX_ACTION_ORDER = 100_000


class GroupError(ValueError):
    """Base class for everything the engine refuses to do."""


class DimensionError(GroupError):
    pass


class OrdersError(GroupError):
    pass


class ActionNotWellDefinedError(GroupError):
    pass


class ActionNotInvertibleError(GroupError):
    pass


class ActionOrderError(GroupError):
    pass


class EnumerationCapError(GroupError):
    pass


class NotNilpotentError(GroupError):
    pass


class NotNormalError(GroupError):
    pass


class NotPrimePowerError(GroupError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def exact_log(n: int, p: int) -> int:
    """``k`` with ``p**k == n``; raises if ``n`` is not a power of ``p``."""
    if n < 1:
        raise NotPrimePowerError(f"{n} is not a power of {p}")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise NotPrimePowerError(f"not a power of {p}")
    return k


@dataclass(frozen=True)
class GroupElement:
    """Normal form ``y^t · x^v``."""

    t: int
    v: tuple[int, ...]

    def __str__(self):
        return f"({self.t}; {', '.join(map(str, self.v))})"


def _matmul_mod(a, b, orders):
    n = len(orders)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % orders[i] for j in range(n))
        for i in range(n)
    )


def _identity_mod(orders):
    n = len(orders)
    return tuple(tuple((1 if i == j else 0) % orders[i] for j in range(n)) for i in range(n))


def action_from_columns(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-major matrix from the images of the generators."""
    n = len(columns)
    return [[int(columns[j][i]) for j in range(n)] for i in range(n)]


@dataclass(frozen=True, eq=False)
class SplitGroup:
    """A validated ``C_m ⋉ H``.  Build with :func:`make_group`."""

    m: int
    orders: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    tag: tuple = ()
    cap: int = DEFAULT_CAP
    action_order: int = field(init=False)
    alpha_pows: tuple = field(init=False, repr=False)

    def __post_init__(self):
        m, orders, action = self.m, self.orders, self.action
        n = len(orders)
        if m < 1:
            raise GroupError(f"top order m must be positive, got {m}")
        if n == 0:
            raise OrdersError("orders must be nonempty")
        if any(o < 1 for o in orders):
            raise OrdersError(f"orders must be positive, got {list(orders)}")
        bases = [prime_power(o) for o in orders if o > 1]
        if None in bases or len({b[0] for b in bases}) > 1:
            raise OrdersError(f"orders must be powers of a single prime, got {list(orders)}")
        if len(action) != n or any(len(row) != n for row in action):
            raise DimensionError(f"action must be a {n}x{n} matrix")
        for i in range(n):
            for j in range(n):
                if (action[i][j] * orders[j]) % orders[i]:
                    raise ActionNotWellDefinedError(
                        f"image of x{j} has x{i}-exponent {action[i][j]}, which does not "
                        f"respect x{j}^{orders[j]} = e in C_{orders[i]}"
                    )
        reduced = tuple(tuple(action[i][j] % orders[i] for j in range(n)) for i in range(n))
        ident = _identity_mod(orders)
        seen = {ident: 0}
        power = ident
        for k in range(1, _MAX_ACTION_ORDER + 1):
            power = _matmul_mod(reduced, power, orders)
            if power in seen:
                if seen[power] != 0:
                    raise ActionNotInvertibleError("action matrix is not an automorphism of H")
                break
            seen[power] = k
        else:
            raise ActionOrderError(f"action order exceeds {_MAX_ACTION_ORDER}")
        if m % k:
            raise ActionOrderError(f"action has order {k}, which does not divide m={m}")
        pows = [ident]
        for _ in range(1, m):
            pows.append(_matmul_mod(reduced, pows[-1], orders))
        labels = self.labels or ("y",) + tuple(f"x{i}" for i in range(n))
        if len(labels) != n + 1:
            raise DimensionError(f"expected {n + 1} labels, got {len(labels)}")
        object.__setattr__(self, "action", reduced)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "action_order", k)
        object.__setattr__(self, "alpha_pows", tuple(pows))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def hsize(self) -> int:
        size = 1
        for o in self.orders:
            size *= o
        return size

    @property
    def order(self) -> int:
        return self.m * self.hsize

    @cached_property
    def prime(self) -> int | None:
        pp = prime_power(self.order)
        return pp[0] if pp else None

    def identity(self) -> GroupElement:
        return GroupElement(0, (0,) * self.rank)

    def top(self) -> GroupElement:
        """The top generator ``y``."""
        return GroupElement(1 % self.m, (0,) * self.rank)

    def x(self, i: int) -> GroupElement:
        v = [0] * self.rank
        v[i] = 1 % self.orders[i]
        return GroupElement(0, tuple(v))

    def element(self, t: int, v: Sequence[int]) -> GroupElement:
        if len(v) != self.rank:
            raise DimensionError(f"exponent vector of length {len(v)} in a rank-{self.rank} group")
        return GroupElement(t % self.m, tuple(int(e) % o for e, o in zip(v, self.orders)))

    @cached_property
    def generators(self) -> tuple[GroupElement, ...]:
        """``y`` and the ``x_i``, skipping the ones that are trivial."""
        gens = [self.top()] if self.m > 1 else []
        gens += [self.x(i) for i in range(self.rank) if self.orders[i] > 1]
        return tuple(gens)

    def label(self, g: GroupElement) -> str:
        """Human-readable word for ``g``."""
        parts = []
        if g.t:
            parts.append(self.labels[0] if g.t == 1 else f"{self.labels[0]}^{g.t}")
        for name, e in zip(self.labels[1:], g.v):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) or "e"

    # integer codes

    def code(self, g: GroupElement) -> int:
        _check(self, g)
        c = 0
        for e, o in zip(g.v, self.orders):
            c = c * o + e
        return g.t * self.hsize + c

    def decode(self, code: int) -> GroupElement:
        t, rest = divmod(int(code), self.hsize)
        v = []
        for o in reversed(self.orders):
            rest, e = divmod(rest, o)
            v.append(e)
        return GroupElement(t, tuple(reversed(v)))

    @cached_property
    def _kernel_args(self):
        if self.order >= 2**62:
            raise EnumerationCapError(f"group order {self.order} is too large for coded arithmetic")
        orders = np.array(self.orders, dtype=np.int64)
        alpha = np.array(self.alpha_pows, dtype=np.int64).reshape(self.m, self.rank, self.rank)
        return self.m, self.hsize, orders, alpha

    def mul_codes(self, a, b) -> np.ndarray:
        """Elementwise product of code arrays (either side may be a scalar)."""
        return _accel.mul_pairs(a, b, *self._kernel_args)

    def with_cap(self, cap: int) -> SplitGroup:
        return make_group(self.m, self.orders, self.action, labels=self.labels, tag=self.tag, cap=cap)


def make_group(m: int, orders: Sequence[int], action: Sequence[Sequence[int]], *,
               labels: Sequence[str] = (), tag: tuple = (), cap: int = DEFAULT_CAP) -> SplitGroup:
    """Validate and build ``C_m ⋉ H``.

    ``action`` is row-major: ``action[i][j]`` is the exponent of ``x_i`` in
    ``y^-1 x_j y``.  Raises :class:`ActionNotWellDefinedError`,
    :class:`ActionNotInvertibleError` or :class:`ActionOrderError` when the
    matrix does not define an automorphism of ``H`` of order dividing ``m``.
    """
    return SplitGroup(
        int(m),
        tuple(int(o) for o in orders),
        tuple(tuple(int(a) for a in row) for row in action),
        tuple(labels),
        tuple(tag),
        int(cap),
    )


def _check(G: SplitGroup, g: GroupElement):
    if len(g.v) != G.rank:
        raise DimensionError(f"element of rank {len(g.v)} used in a rank-{G.rank} group")


def act(G: SplitGroup, s: int, v: Sequence[int]) -> tuple[int, ...]:
    """``y^-s h y^s`` for ``h = x^v``."""
    A = G.alpha_pows[s % G.m]
    n = G.rank
    return tuple(sum(A[i][j] * v[j] for j in range(n)) % G.orders[i] for i in range(n))


def mul(G: SplitGroup, g1: GroupElement, g2: GroupElement) -> GroupElement:
    _check(G, g1)
    _check(G, g2)
    moved = act(G, g2.t, g1.v)
    v = tuple((a + b) % o for a, b, o in zip(moved, g2.v, G.orders))
    return GroupElement((g1.t + g2.t) % G.m, v)


def inv(G: SplitGroup, g: GroupElement) -> GroupElement:
    _check(G, g)
    s = (-g.t) % G.m
    return GroupElement(s, act(G, s, [-e for e in g.v]))


def power(G: SplitGroup, g: GroupElement, k: int) -> GroupElement:
    _check(G, g)
    if k < 0:
        g, k = inv(G, g), -k
    result = G.identity()
    while k:
        if k & 1:
            result = mul(G, result, g)
        g = mul(G, g, g)
        k >>= 1
    return result


def comm(G: SplitGroup, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """``[g1, g2] = g1^-1 g2^-1 g1 g2``."""
    return mul(G, mul(G, inv(G, g1), inv(G, g2)), mul(G, g1, g2))


def conj(G: SplitGroup, g: GroupElement, by: GroupElement) -> GroupElement:
    """``by^-1 g by``."""
    return mul(G, mul(G, inv(G, by), g), by)


def element_order(G: SplitGroup, g: GroupElement) -> int:
    e = G.identity()
    h, k = g, 1
    while h != e:
        h = mul(G, h, g)
        k += 1
    return k


def _require_cap(G: SplitGroup):
    if G.order > G.cap:
        raise EnumerationCapError(f"group order {G.order} exceeds the enumeration cap {G.cap}")


def enumerate_group(G: SplitGroup) -> list[GroupElement]:
    """Every element exactly once, in code order."""
    _require_cap(G)
    ranges = [range(G.m)] + [range(o) for o in G.orders]
    return [GroupElement(c[0], tuple(c[1:])) for c in itertools.product(*ranges)]


def all_codes(G: SplitGroup) -> np.ndarray:
    _require_cap(G)
    return np.arange(G.order, dtype=np.int64)


class Subgroup:
    """An explicit subgroup: sorted element codes plus generating witnesses."""

    def __init__(self, group: SplitGroup, codes, generators: Iterable[GroupElement]):
        self.group = group
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))
        self.generators = tuple(generators)

    def __len__(self):
        return int(self.codes.shape[0])

    @property
    def order(self) -> int:
        return len(self)

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[self.codes] = True
        return mask

    @cached_property
    def elements(self) -> frozenset[GroupElement]:
        return frozenset(self.group.decode(c) for c in self.codes)

    def __contains__(self, g: GroupElement) -> bool:
        return bool(self.mask[self.group.code(g)])

    def contains_codes(self, codes) -> np.ndarray:
        return self.mask[np.asarray(codes, dtype=np.int64)]

    def is_trivial(self) -> bool:
        return len(self) == 1

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.codes].all())

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.codes, other.codes)

    __hash__ = None

    def __repr__(self):
        gens = ", ".join(self.group.label(g) for g in self.generators)
        return f"<Subgroup of order {len(self)} generated by [{gens}]>"


def whole_group(G: SplitGroup) -> Subgroup:
    return Subgroup(G, all_codes(G), G.generators)


def _closure_mask(G: SplitGroup, gen_codes) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    while frontier.size:
        fresh = []
        for c in gen_codes:
            prod = G.mul_codes(frontier, c)
            prod = np.unique(prod[~mask[prod]])
            mask[prod] = True
            fresh.append(prod)
        frontier = np.concatenate(fresh) if fresh else frontier[:0]
    return mask


def subgroup_closure(G: SplitGroup, gens: Iterable[GroupElement]) -> Subgroup:
    """Breadth-first closure of ``gens`` under right multiplication.

    Right multiplication suffices: in a finite group every inverse is a
    positive power.
    """
    _require_cap(G)
    gens = [g for g in gens if any(g.v) or g.t]
    codes = sorted({G.code(g) for g in gens})
    mask = _closure_mask(G, codes)
    return Subgroup(G, np.flatnonzero(mask), gens)


def _conjugate_codes(G: SplitGroup, codes, by: GroupElement) -> np.ndarray:
    return G.mul_codes(G.mul_codes(G.code(inv(G, by)), codes), G.code(by))


def is_normal(G: SplitGroup, S: Subgroup) -> bool:
    return all(S.contains_codes(_conjugate_codes(G, S.codes, g)).all() for g in G.generators)


def normal_closure(G: SplitGroup, gens: Iterable[GroupElement]) -> Subgroup:
    """Smallest normal subgroup containing ``gens``.

    Alternates subgroup closure with conjugation of the current generators by
    the generators of ``G``, which is enough because those generate ``G``.
    """
    gens = list(gens)
    S = subgroup_closure(G, gens)
    while True:
        added = {}
        for s in S.generators:
            for g in G.generators:
                c = conj(G, s, g)
                if c not in S and c not in added:
                    added[c] = None
        if not added:
            return S
        S = subgroup_closure(G, list(S.generators) + list(added))


def derived_subgroup(G: SplitGroup) -> Subgroup:
    gens = G.generators
    return normal_closure(G, [comm(G, a, b) for i, a in enumerate(gens) for b in gens[i + 1:]])


def lower_central_series(G: SplitGroup) -> list[Subgroup]:
    """``[G_1, ..., G_{c+1}]`` with ``G_{c+1}`` trivial and ``G_c`` not."""
    series = [whole_group(G)]
    if series[0].is_trivial():
        return series
    while True:
        prev = series[-1]
        comms = [comm(G, s, g) for s in prev.generators for g in G.generators]
        nxt = normal_closure(G, comms)
        series.append(nxt)
        if nxt.is_trivial():
            return series
        if len(nxt) == len(prev):
            raise NotNilpotentError(
                f"lower central series stabilises at a subgroup of order {len(nxt)}"
            )


def nilpotency_class(G: SplitGroup) -> int:
    return len(lower_central_series(G)) - 1


def _generators_of(G: SplitGroup, codes: np.ndarray) -> list[GroupElement]:
    """Greedy generating set for the subgroup whose elements are ``codes``."""
    gens: list[GroupElement] = []
    gen_codes: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    while True:
        missing = np.flatnonzero(~mask[codes])
        if missing.size == 0:
            return gens
        c = int(codes[missing[0]])
        gen_codes.append(c)
        gens.append(G.decode(c))
        mask = _closure_mask(G, gen_codes)


def center(G: SplitGroup) -> Subgroup:
    """Elements commuting with every generator of ``G``."""
    codes = all_codes(G)
    keep = np.ones(codes.shape[0], dtype=bool)
    for s in G.generators:
        sc = G.code(s)
        keep &= G.mul_codes(codes, sc) == G.mul_codes(sc, codes)
    zc = codes[keep]
    return Subgroup(G, zc, _generators_of(G, zc))


def order_mod_subgroup(G: SplitGroup, g: GroupElement, S: Subgroup) -> int:
    """Order of ``gS`` in ``G/S``; ``S`` must be normal."""
    if not is_normal(G, S):
        raise NotNormalError("order modulo a subgroup needs a normal subgroup")
    h, k = g, 1
    while h not in S:
        h = mul(G, h, g)
        k += 1
    return k


def frattini_subgroup(G: SplitGroup, modulo: Subgroup | None = None) -> Subgroup:
    """Frattini subgroup of ``G`` (or the preimage of that of ``G/modulo``).

    For a p-group, ``Φ(G) = G^p [G, G]``; since ``G/[G, G]`` is abelian its
    p-th powers are generated by the p-th powers of the generators of ``G``.
    """
    pp = prime_power(G.order)
    if pp is None:
        raise NotPrimePowerError(f"group order {G.order} is not a prime power")
    p = pp[0]
    gens = list(derived_subgroup(G).generators)
    gens += [power(G, s, p) for s in G.generators]
    if modulo is not None:
        if not is_normal(G, modulo):
            raise NotNormalError("quotient by a subgroup that is not normal")
        gens += list(modulo.generators)
    return subgroup_closure(G, gens)


def frattini_rank(G: SplitGroup, modulo: Subgroup | None = None) -> int:
    """Size of every minimal generating set of ``G`` (or of ``G/modulo``)."""
    if G.order == 1:
        return 0
    phi = frattini_subgroup(G, modulo)
    return exact_log(G.order // len(phi), G.prime)
