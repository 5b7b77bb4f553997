"""Enumeration budgets shared by the brute-force oracles.

The exhaustive searches grow like Gaussian binomials, so every oracle checks
its input against a configurable cap before enumerating and raises
:class:`BudgetError` naming the relevant CLI flag when the cap is exceeded.
Defaults keep full runs in the minutes range on a desktop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field

# Per-characteristic default caps on the ambient dimension of subspace /
# unordered-basis enumeration.  Unlisted primes fall back conservatively.
_SUBSPACE_DIM_DEFAULTS = {2: 8, 3: 6, 5: 5}
_SUBSPACE_DIM_FALLBACK = 4
_BASIS_DIM_DEFAULTS = {2: 4, 3: 3}
_BASIS_DIM_FALLBACK = 2


class BudgetError(ValueError):
    """An enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class Budgets:
    """Caps for the three enumeration families.

    ``None`` means "use the per-field default"; an explicit int overrides it
    for every field.
    """

    subset_vertices: int = 24
    subspace_dim: int | None = None
    basis_dim: int | None = None

    def subspace_cap(self, field: Field) -> int:
        if self.subspace_dim is not None:
            return self.subspace_dim
        return _SUBSPACE_DIM_DEFAULTS.get(field.characteristic, _SUBSPACE_DIM_FALLBACK)

    def basis_cap(self, field: Field) -> int:
        if self.basis_dim is not None:
            return self.basis_dim
        return _BASIS_DIM_DEFAULTS.get(field.characteristic, _BASIS_DIM_FALLBACK)


DEFAULT_BUDGETS = Budgets()
