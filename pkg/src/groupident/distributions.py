"""Probability distributions on finite abelian groups.

Masses are stored as a float vector aligned with the lexicographic element
enumeration.  Characteristic functions are computed by direct summation
against the exact pairing (no FFT), which keeps every identity checkable at
full precision on desk-scale groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .endomorphisms import Endo
from .errors import CapacityError, DomainError, GenerationError
from .funceq import FunctionTable
from .groups import Element, Group

MASS_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    """A probability vector over ``group.elements()``."""

    group: Group
    masses: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.masses, dtype=np.float64)
        if m.shape != (self.group.size,):
            raise DomainError(
                f"need {self.group.size} masses, got shape {m.shape}")
        if np.any(m < -MASS_TOL):
            raise DomainError("negative probability mass")
        if abs(float(m.sum()) - 1.0) > 1e-9:
            raise DomainError(f"masses sum to {m.sum()}, not 1")
        m = np.clip(m, 0.0, None)
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def degenerate(cls, group: Group, x: Element) -> "Distribution":
        group._check(x)
        m = np.zeros(group.size)
        m[group.index(x)] = 1.0
        return cls(group, m)

    @classmethod
    def uniform(cls, group: Group) -> "Distribution":
        return cls(group, np.full(group.size, 1.0 / group.size))

    @classmethod
    def from_pairs(cls, group: Group, pairs: dict) -> "Distribution":
        """Build from ``{element: mass}``; unlisted elements get mass 0."""
        m = np.zeros(group.size)
        for x, p in pairs.items():
            m[group.index(x)] += float(p)
        return cls(group, m)

    @classmethod
    def poisson(cls, group: Group, lam: float, x0: Element) -> "Distribution":
        """The compound-point-mass law with char. function ``exp(lam*((x0,y)-1))``.

        Masses come from the inverse transform of the closed-form
        characteristic function, so there is no series-truncation error; tiny
        negative round-off is clamped and the vector renormalized.
        """
        if lam < 0:
            raise DomainError("poisson rate must be nonnegative")
        group._check(x0)
        hat = np.exp(lam * (group.pairing_matrix[group.index(x0)] - 1.0))
        masses = (group.pairing_matrix.conj() @ hat).real / group.size
        masses = np.clip(masses, 0.0, None)
        return cls(group, masses / masses.sum())

    @classmethod
    def random(cls, group: Group, seed, floor: float = 0.1, *,
               nonvanishing_tol: float = 0.05,
               max_tries: int = 1000) -> "Distribution":
        """Seeded random distribution guaranteed nonvanishing.

        A raw random vector is mixed with a point mass at 0 (weight
        ``floor``) and rejected until ``min |char| > nonvanishing_tol``.
        Deterministic for a fixed seed.
        """
        if not 0 < floor < 1:
            raise DomainError("floor must lie strictly between 0 and 1")
        rng = np.random.default_rng(seed)
        for _ in range(max_tries):
            raw = rng.random(group.size)
            m = (1.0 - floor) * raw / raw.sum()
            m[0] += floor
            cand = cls(group, m)
            if cand.nonvanishing(nonvanishing_tol):
                return cand
        raise GenerationError(
            f"no nonvanishing distribution within {max_tries} tries")

    # -- characteristic function ---------------------------------------------------

    @cached_property
    def char_array(self) -> np.ndarray:
        """``char_array[j] = sum_x masses[x] * pair(x, y_j)``."""
        return self.masses @ self.group.pairing_matrix

    def char_fn(self) -> FunctionTable:
        return FunctionTable(self.group, self.group.elements(), self.char_array)

    def nonvanishing(self, tol: float) -> bool:
        return bool(np.min(np.abs(self.char_array)) > tol)

    # -- semigroup operations --------------------------------------------------------

    def convolve(self, other: "Distribution") -> "Distribution":
        if self.group != other.group:
            raise DomainError("convolution needs a common group")
        g = self.group
        # (mu*nu)(z) = sum_x mu(x) nu(z - x); z - x indexed via the add table.
        sub = g.add_table[:, g.neg_index]
        masses = (self.masses[None, :] * other.masses[sub]).sum(axis=1)
        return Distribution(g, masses)

    def shift(self, x: Element) -> "Distribution":
        """Convolution with the point mass at ``x``."""
        g = self.group
        g._check(x)
        out = np.zeros(g.size)
        tgt = g.add_table[:, g.index(x)]
        out[tgt] = self.masses
        return Distribution(g, out)

    def pushforward(self, e: Endo) -> "Distribution":
        if e.group != self.group:
            raise DomainError("endomorphism acts on a different group")
        out = np.zeros(self.group.size)
        np.add.at(out, e.index_map, self.masses)
        return Distribution(self.group, out)

    def total_variation(self, other: "Distribution") -> float:
        if self.group != other.group:
            raise DomainError("total variation needs a common group")
        return 0.5 * float(np.abs(self.masses - other.masses).sum())


# -- joint characteristic functions of two linear forms ----------------------------


@dataclass(frozen=True)
class LinearFormSpec:
    """Coefficients of two linear forms ``L_1 = sum a_j xi_j``, ``L_2 = sum b_j xi_j``."""

    group: Group
    coeffs1: tuple[Endo, ...]
    coeffs2: tuple[Endo, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs1) != len(self.coeffs2):
            raise DomainError("coefficient lists must share one arity")
        if len(self.coeffs1) not in (2, 3, 4):
            raise DomainError("arity must be 2, 3 or 4")
        for e in (*self.coeffs1, *self.coeffs2):
            if e.group != self.group:
                raise DomainError("coefficients act on different groups")
        object.__setattr__(self, "coeffs1", tuple(self.coeffs1))
        object.__setattr__(self, "coeffs2", tuple(self.coeffs2))

    @property
    def arity(self) -> int:
        return len(self.coeffs1)

    @classmethod
    def form_I(cls, bs: Sequence[Endo]) -> "LinearFormSpec":
        """``L_1`` sums every variable; ``L_2`` uses the given coefficients."""
        g = bs[0].group
        return cls(g, tuple(Endo.identity(g) for _ in bs), tuple(bs))

    @classmethod
    def form_II(cls, bs: Sequence[Endo]) -> "LinearFormSpec":
        """``L_1`` omits the last variable; ``L_2`` uses the given coefficients."""
        g = bs[0].group
        ones = [Endo.identity(g) for _ in bs]
        ones[-1] = Endo.zero(g)
        return cls(g, tuple(ones), tuple(bs))


def joint_char_array(spec: LinearFormSpec,
                     dists: Sequence[Distribution]) -> np.ndarray:
    """``(u, v)`` grid of ``prod_j char_j(adj(a_j) u + adj(b_j) v)``."""
    g = spec.group
    if len(dists) != spec.arity:
        raise DomainError("distribution count must match the arity")
    for d in dists:
        if d.group != g:
            raise DomainError("distributions live on a different group")
    if g.size ** 2 > 4_000_000:
        raise CapacityError("joint table would exceed the size limit")
    add = g.add_table
    out = np.ones((g.size, g.size), dtype=np.complex128)
    for a, b, d in zip(spec.coeffs1, spec.coeffs2, dists):
        ua = a.adjoint().index_map
        vb = b.adjoint().index_map
        out *= d.char_array[add[ua[:, None], vb[None, :]]]
    return out


def joint_char(spec: LinearFormSpec,
               dists: Sequence[Distribution]) -> FunctionTable:
    """Joint characteristic function as a table on the product group.

    The product group ``X x X`` is self-dual with the componentwise pairing,
    so the returned table is indexed by concatenated ``(u, v)`` coordinates.
    """
    g = spec.group
    values = joint_char_array(spec, dists).reshape(-1)
    product = Group(g.orders + g.orders,
                    enumeration_bound=max(g.enumeration_bound, g.size ** 2))
    return FunctionTable(product, product.elements(), values)
