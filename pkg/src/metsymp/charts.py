"""Coordinate charts: named coordinates on a closed box, with sampling."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GeometryError

__all__ = ["Chart", "product_with_line"]


@dataclass(frozen=True)
class Chart:
    """A coordinate box with named coordinates.

    ``domain`` holds one closed interval per coordinate.  ``sampler_seed``
    makes sample sweeps reproducible per chart; callers may override the
    seed per sweep.
    """

    coord_names: tuple[str, ...]
    domain: tuple[tuple[float, float], ...]
    sampler_seed: int = 0
    dim: int = field(default=-1)

    def __post_init__(self):
        names = tuple(self.coord_names)
        dom = tuple((float(a), float(b)) for a, b in self.domain)
        object.__setattr__(self, "coord_names", names)
        object.__setattr__(self, "domain", dom)
        if self.dim == -1:
            object.__setattr__(self, "dim", len(names))
        if self.dim <= 0:
            raise GeometryError("chart dimension must be positive")
        if self.dim != len(names) or self.dim != len(dom):
            raise GeometryError("dim, coord_names and domain lengths must agree")
        if len(set(names)) != len(names):
            raise GeometryError(f"duplicate coordinate names in {names}")
        for name, (lo, hi) in zip(names, dom):
            if not lo < hi:
                raise GeometryError(f"empty interval for coordinate {name!r}: [{lo}, {hi}]")

    def index(self, name: str) -> int:
        try:
            return self.coord_names.index(name)
        except ValueError:
            raise GeometryError(f"chart has no coordinate named {name!r}") from None

    def contains(self, point: np.ndarray) -> bool:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dim,):
            return False
        return all(lo <= x <= hi for x, (lo, hi) in zip(p, self.domain))

    def require_inside(self, point: np.ndarray) -> np.ndarray:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dim,):
            raise DomainError(f"point shape {p.shape} does not match chart dimension {self.dim}")
        if not self.contains(p):
            raise DomainError(f"point {p.tolist()} lies outside the chart domain")
        return p

    def samples(self, n: int, seed: int | None = None, margin: float = 0.05) -> np.ndarray:
        """Uniform samples over the box shrunk by ``margin`` per side.

        The shrink keeps sweeps away from the boundary where derived
        quantities such as inverse metrics can degrade.
        """
        if n <= 0:
            raise GeometryError("sample count must be positive")
        rng = np.random.default_rng(self.sampler_seed if seed is None else seed)
        lo = np.array([a for a, _ in self.domain])
        hi = np.array([b for _, b in self.domain])
        width = hi - lo
        lo_eff = lo + margin * width
        hi_eff = hi - margin * width
        return rng.uniform(lo_eff, hi_eff, size=(n, self.dim))


def product_with_line(
    base: Chart,
    coord_name: str = "t",
    interval: tuple[float, float] = (-1.0, 1.0),
    seed: int | None = None,
) -> Chart:
    """The product of ``base`` with one extra line coordinate, appended last."""
    if coord_name in base.coord_names:
        raise GeometryError(
            f"coordinate {coord_name!r} already exists on the base chart; "
            "rename the line coordinate"
        )
    return Chart(
        coord_names=base.coord_names + (coord_name,),
        domain=base.domain + ((float(interval[0]), float(interval[1])),),
        sampler_seed=base.sampler_seed if seed is None else seed,
    )
