"""Finite abelian groups as direct products of cyclic factors.

A group ``Z_{n_1} x ... x Z_{n_k}`` serves as its own character group: the
character labelled by ``y`` evaluates on ``x`` as
``exp(2*pi*i * sum_i x_i*y_i/n_i)``.  All group arithmetic is exact integer
arithmetic; the pairing is computed from an exact rational phase and rounded
to a complex double exactly once, so pairing identities hold to machine
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError

DEFAULT_ENUMERATION_BOUND = 10**6

# Dense pairing / addition tables are quadratic in the group size; they are
# only built for desk-scale groups.
TABLE_SIZE_LIMIT = 1500


@dataclass(frozen=True)
class Element:
    """A group element, stored as coordinates reduced into ``[0, n_i)``."""

    coords: tuple[int, ...]

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


class Group:
    """``Z_{n_1} x ... x Z_{n_k}`` with the self-dual character pairing.

    Instances are immutable; every operation is pure, so unrestricted
    concurrent use is safe.
    """

    def __init__(self, orders: Iterable[int], *,
                 enumeration_bound: int = DEFAULT_ENUMERATION_BOUND) -> None:
        orders = tuple(int(n) for n in orders)
        if not orders:
            raise DomainError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise DomainError(f"cyclic orders must be >= 1, got {orders}")
        size = math.prod(orders)
        if size > enumeration_bound:
            raise CapacityError(
                f"group size {size} exceeds enumeration bound {enumeration_bound}")
        self.orders = orders
        self.size = size
        self.enumeration_bound = enumeration_bound
        # Common denominator of the pairing phases.
        self.exponent = math.lcm(*orders)

    def __repr__(self) -> str:
        return "Z" + "xZ".join(str(n) for n in self.orders)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and self.orders == other.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def zero(self) -> Element:
        return Element((0,) * self.rank)

    # -- element handling ---------------------------------------------------

    def element(self, coords: Sequence[int]) -> Element:
        if len(coords) != self.rank:
            raise DomainError(
                f"expected {self.rank} coordinates, got {len(coords)}")
        return Element(tuple(int(c) % n for c, n in zip(coords, self.orders)))

    def contains(self, x: Element) -> bool:
        return (isinstance(x, Element) and len(x.coords) == self.rank
                and all(0 <= c < n for c, n in zip(x.coords, self.orders)))

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if not self.contains(x):
                raise DomainError(f"{x!r} is not an element of {self!r}")

    def add(self, x: Element, y: Element) -> Element:
        self._check(x, y)
        return Element(tuple((a + b) % n for a, b, n
                             in zip(x.coords, y.coords, self.orders)))

    def neg(self, x: Element) -> Element:
        self._check(x)
        return Element(tuple((-a) % n for a, n in zip(x.coords, self.orders)))

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def index(self, x: Element) -> int:
        """Position of ``x`` in the lexicographic enumeration."""
        self._check(x)
        idx = 0
        for c, n in zip(x.coords, self.orders):
            idx = idx * n + c
        return idx

    def element_at(self, index: int) -> Element:
        if not 0 <= index < self.size:
            raise DomainError(f"element index {index} out of range")
        coords = []
        for n in reversed(self.orders):
            coords.append(index % n)
            index //= n
        return Element(tuple(reversed(coords)))

    def elements(self) -> tuple[Element, ...]:
        """All elements in lexicographic order by coordinates."""
        return self._elements

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        return tuple(Element(tuple(c)) for c in np.ndindex(*self.orders))

    def order_two_count(self) -> int:
        """Number of nonzero elements ``x`` with ``x + x = 0``."""
        count = 1
        for n in self.orders:
            count *= 2 if n % 2 == 0 else 1
        return count - 1

    # -- the character pairing ----------------------------------------------

    def pair_phase(self, x: Element, y: Element) -> int:
        """Exact numerator of the pairing phase over denominator ``exponent``.

        ``pair(x, y) = exp(2*pi*i * pair_phase(x, y) / exponent)``.
        """
        self._check(x, y)
        L = self.exponent
        total = 0
        for a, b, n in zip(x.coords, y.coords, self.orders):
            total = (total + a * ((b * (L // n)) % L)) % L
        return total

    def pair(self, x: Element, y: Element) -> complex:
        """Value of the character ``y`` at the element ``x``; unit modulus."""
        return self._roots[self.pair_phase(x, y)]

    @cached_property
    def _roots(self) -> np.ndarray:
        L = self.exponent
        return np.exp(2j * np.pi * np.arange(L) / L)

    # -- dense helper tables (desk scale only) -------------------------------

    def _require_table_capacity(self, what: str) -> None:
        if self.size > TABLE_SIZE_LIMIT:
            raise CapacityError(
                f"{what} needs a {self.size}x{self.size} table; "
                f"limit is {TABLE_SIZE_LIMIT}x{TABLE_SIZE_LIMIT}")

    @cached_property
    def coords_array(self) -> np.ndarray:
        """``(size, rank)`` int64 array of all coordinates, lexicographic."""
        out = np.stack(np.meshgrid(*[np.arange(n) for n in self.orders],
                                   indexing="ij"), axis=-1)
        return out.reshape(self.size, self.rank).astype(np.int64)

    @cached_property
    def phase_matrix(self) -> np.ndarray:
        """``(size, size)`` exact pairing phases mod ``exponent``."""
        self._require_table_capacity("the pairing matrix")
        L = self.exponent
        C = self.coords_array
        phases = np.zeros((self.size, self.size), dtype=np.int64)
        for i, n in enumerate(self.orders):
            col = (C[:, i] * (L // n)) % L
            phases = (phases + C[:, i][:, None] * col[None, :]) % L
        return phases

    @cached_property
    def pairing_matrix(self) -> np.ndarray:
        """``P[i, j] = pair(element_at(i), element_at(j))`` as complex doubles."""
        return self._roots[self.phase_matrix]

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``element_at(i) + element_at(j)``."""
        self._require_table_capacity("the addition table")
        C = self.coords_array
        total = np.zeros((self.size, self.size), dtype=np.int64)
        for i, n in enumerate(self.orders):
            s = (C[:, i][:, None] + C[:, i][None, :]) % n
            total = total * n + s
        return total

    @cached_property
    def neg_index(self) -> np.ndarray:
        """``neg_index[i]`` is the index of ``-element_at(i)``."""
        C = self.coords_array
        total = np.zeros(self.size, dtype=np.int64)
        for i, n in enumerate(self.orders):
            total = total * n + (-C[:, i]) % n
        return total
