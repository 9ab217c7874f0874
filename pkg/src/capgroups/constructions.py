"""The witness groups: Easterfield-type ``K(p, r)`` and dihedral 2-groups."""

from __future__ import annotations

from dataclasses import dataclass

from .core import DEFAULT_CAP, GroupError, SplitGroup, action_from_columns, is_prime, make_group


def binomial(n: int, k: int) -> int:
    """Exact ``n choose k`` by the multiplicative formula."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


@dataclass(frozen=True)
class EasterfieldSpec:
    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise GroupError(f"p must be prime, got {self.p}")
        if self.r < 1:
            raise GroupError(f"r must be a positive integer, got {self.r}")

    @property
    def order_exponent(self) -> int:
        return 1 + 2 * self.r + (self.r - 1) * (self.p - 2)

    @property
    def order(self) -> int:
        return self.p ** self.order_exponent

    @property
    def expected_class(self) -> int:
        return 2 + (self.r - 1) * (self.p - 1)


def easterfield_orders(p: int, r: int) -> list[int]:
    return [p**r, p**r] + [p ** (r - 1)] * (p - 2)


def easterfield_columns(p: int, r: int) -> list[list[int]]:
    """Signed exponent vectors of ``y^-1 x_i y``, before any reduction.

    ``x_i -> x_i x_{i+1}`` for ``i < p-1``, and ``x_{p-1}`` goes to
    ``x_1^{-C(p,1)} ... x_{p-2}^{-C(p,p-2)} x_{p-1}^{1-C(p,p-1)}``.
    """
    cols = []
    for i in range(p - 1):
        col = [0] * p
        col[i] = 1
        col[i + 1] = 1
        cols.append(col)
    last = [0] * p
    for k in range(1, p - 1):
        last[k] = -binomial(p, k)
    last[p - 1] = 1 - binomial(p, p - 1)
    cols.append(last)
    return cols


def easterfield(p: int, r: int, *, cap: int = DEFAULT_CAP) -> SplitGroup:
    """``K(p, r) = (C_{p^r}^2 x C_{p^{r-1}}^{p-2}) ⋊ <y>`` with ``y`` of order p.

    For ``r = 1`` the factors ``x_2, ..., x_{p-1}`` have order 1 and stay in
    the exponent vector as trivial coordinates.
    """
    EasterfieldSpec(p, r)
    return make_group(
        p,
        easterfield_orders(p, r),
        action_from_columns(easterfield_columns(p, r)),
        labels=("y",) + tuple(f"x{i}" for i in range(p)),
        tag=("easterfield", p, r),
        cap=cap,
    )


def easterfield_subgroup(p: int, r: int, *, cap: int = DEFAULT_CAP) -> SplitGroup:
    """The subgroup ``<y, x_1, ..., x_{p-1}>`` of ``K(p, r)`` as a group in its own right."""
    EasterfieldSpec(p, r)
    cols = [col[1:] for col in easterfield_columns(p, r)[1:]]
    return make_group(
        p,
        easterfield_orders(p, r)[1:],
        action_from_columns(cols),
        labels=("y",) + tuple(f"x{i}" for i in range(1, p)),
        tag=("easterfield_subgroup", p, r),
        cap=cap,
    )


def dihedral(n: int, *, cap: int = DEFAULT_CAP) -> SplitGroup:
    """Dihedral group of order ``2n``: ``<x0>`` of order n inverted by ``y``.

    ``n`` must be a power of 2; ``n = 2`` gives the Klein four-group.
    """
    if n < 2 or n & (n - 1):
        raise GroupError(f"n must be a power of 2 with n >= 2, got {n}")
    return make_group(2, [n], [[-1]], labels=("y", "x0"), tag=("dihedral", n), cap=cap)
