"""Exact arithmetic over finite abelian groups given as products of cyclic factors.

Elements are coordinate tuples reduced modulo the per-factor orders.  Every
set-valued result comes back in lexicographic order so that downstream output
is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod

Element = tuple[int, ...]

__all__ = [
    "AbelianGroup",
    "Subgroup",
    "make_group",
    "subgroup_from_generators",
    "all_subgroups",
    "subgroups_of_order",
    "enumerate_abelian_groups",
    "factorize",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product Z_{n1} x ... x Z_{nk}, each factor of order >= 2."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 2 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def identity(self) -> Element:
        return (0,) * len(self.cyclic_orders)

    def element(self, coords) -> Element:
        """Reduce a coordinate sequence into the group."""
        coords = tuple(coords)
        if len(coords) != len(self.cyclic_orders):
            raise ValueError(
                f"expected {len(self.cyclic_orders)} coordinates, got {coords!r}"
            )
        return tuple(int(c) % n for c, n in zip(coords, self.cyclic_orders))

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.cyclic_orders)
            and all(isinstance(c, int) and 0 <= c < n for c, n in zip(a, self.cyclic_orders))
        )

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def elements(self) -> tuple[Element, ...]:
        """All group elements in lexicographic order."""
        return self._elements

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.cyclic_orders))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.cyclic_orders))

    def element_order(self, a: Element) -> int:
        """Order of a, the lcm of the per-coordinate orders n_i / gcd(n_i, a_i)."""
        out = 1
        for x, n in zip(a, self.cyclic_orders):
            o = n // gcd(n, x)
            out = out * o // gcd(out, o)
        return out

    @cached_property
    def involutions(self) -> frozenset[Element]:
        """Elements of order exactly 2.  There are 2^s - 1 of them, where s
        counts the even cyclic factors."""
        per_coord = [(0,) if n % 2 else (0, n // 2) for n in self.cyclic_orders]
        all_two_torsion = itertools.product(*per_coord)
        ident = self.identity()
        return frozenset(a for a in all_two_torsion if a != ident)

    def vertex_index(self, a: Element) -> int:
        """Mixed-radix index with the first factor most significant."""
        idx = 0
        for x, n in zip(a, self.cyclic_orders):
            idx = idx * n + x
        return idx

    def vertex_at(self, idx: int) -> Element:
        coords = []
        for n in reversed(self.cyclic_orders):
            coords.append(idx % n)
            idx //= n
        if idx:
            raise ValueError("vertex index out of range")
        return tuple(reversed(coords))

    def subgroup(self, generators) -> Subgroup:
        return subgroup_from_generators(self, generators)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (), frozenset({self.identity()}))

    def full_subgroup(self) -> Subgroup:
        gens = []
        for i in range(len(self.cyclic_orders)):
            g = [0] * len(self.cyclic_orders)
            g[i] = 1
            gens.append(tuple(g))
        return Subgroup(self, tuple(gens), frozenset(self._elements))

    def cosets(self, sub: Subgroup) -> list[Element]:
        """Lexicographically least representative of each coset of sub,
        in lexicographic order."""
        seen: set[Element] = set()
        reps: list[Element] = []
        for a in self._elements:
            if a in seen:
                continue
            reps.append(a)
            for h in sub.elements:
                seen.add(self.add(a, h))
        return reps

    def isomorphism_key(self) -> tuple[tuple[int, int], ...]:
        """Multiset of prime-power invariants; equal keys mean isomorphic groups."""
        parts = []
        for n in self.cyclic_orders:
            for p, e in factorize(n):
                parts.append((p, e))
        return tuple(sorted(parts))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of an AbelianGroup, identified by its element set."""

    group: AbelianGroup
    generators: tuple[Element, ...]
    elements: frozenset[Element]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // len(self.elements)

    @cached_property
    def sorted_elements(self) -> tuple[Element, ...]:
        return tuple(sorted(self.elements))

    def contains(self, a: Element) -> bool:
        return a in self.elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (
            self.group.cyclic_orders == other.group.cyclic_orders
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.group.cyclic_orders, self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {list(self.group.cyclic_orders)})"


def make_group(cyclic_orders) -> AbelianGroup:
    """Build the direct product of cyclic groups of the given orders."""
    return AbelianGroup(tuple(int(n) for n in cyclic_orders))


def _extend_by_cyclic(group: AbelianGroup, elems: frozenset[Element], g: Element) -> frozenset[Element]:
    # elems is a subgroup; its product with <g> is again a subgroup since the
    # group is abelian.
    cyc = []
    x = group.identity()
    for _ in range(group.element_order(g)):
        cyc.append(x)
        x = group.add(x, g)
    return frozenset(group.add(a, c) for a in elems for c in cyc)


def subgroup_from_generators(group: AbelianGroup, generators) -> Subgroup:
    """Closure of the generators; the empty list gives the trivial subgroup."""
    gens = tuple(group.element(g) for g in generators)
    elems = frozenset({group.identity()})
    for g in gens:
        elems = _extend_by_cyclic(group, elems, g)
    return Subgroup(group, gens, elems)


def all_subgroups(group: AbelianGroup) -> list[Subgroup]:
    """Every subgroup, found by repeatedly adjoining single elements.

    Returned sorted by (order, sorted element list), so the listing is stable.
    """
    ident = frozenset({group.identity()})
    found: dict[frozenset[Element], tuple[Element, ...]] = {ident: ()}
    queue = deque([ident])
    while queue:
        elems = queue.popleft()
        gens = found[elems]
        for g in group.elements():
            if g in elems:
                continue
            bigger = _extend_by_cyclic(group, elems, g)
            if bigger not in found:
                found[bigger] = gens + (g,)
                queue.append(bigger)
    subs = [Subgroup(group, gens, elems) for elems, gens in found.items()]
    subs.sort(key=lambda s: (s.order, s.sorted_elements))
    return subs


def subgroups_of_order(group: AbelianGroup, n: int) -> list[Subgroup]:
    return [s for s in all_subgroups(group) if s.order == n]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _partitions_desc(n: int, largest: int | None = None):
    """Integer partitions of n in decreasing-part form, largest first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def enumerate_abelian_groups(order: int) -> list[AbelianGroup]:
    """One representative per isomorphism class of abelian groups of the
    given order, via integer partitions of each prime exponent."""
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    per_prime = []
    for p, e in factorize(order):
        per_prime.append([tuple(p**part for part in parts) for parts in _partitions_desc(e)])
    out = []
    for combo in itertools.product(*per_prime):
        orders = tuple(itertools.chain.from_iterable(combo))
        out.append(AbelianGroup(orders))
    return out
