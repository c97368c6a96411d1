"""Boxes, lattice cells, 3D knight moves and the symmetry group of a box."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, NamedTuple


class Cell(NamedTuple):
    """Integer lattice point standing for the centre of a unit cell."""

    x: int
    y: int
    z: int


class MoveOffset(NamedTuple):
    dx: int
    dy: int
    dz: int


@dataclass(frozen=True, order=True)
class Box:
    """An nx by ny by nz block of unit cells."""

    nx: int
    ny: int
    nz: int

    def __post_init__(self) -> None:
        for extent in self.dims:
            if not isinstance(extent, int) or extent < 1:
                raise ValueError(f"box extents must be positive integers, got {self.dims}")

    @classmethod
    def parse(cls, text: str) -> Box:
        """Build a box from ``"MxNxK"`` (also accepts ``*`` or ``,`` as separators)."""
        parts = text.lower().replace("*", "x").replace(",", "x").split("x")
        if len(parts) != 3:
            raise ValueError(f"expected MxNxK, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError:
            raise ValueError(f"expected MxNxK, got {text!r}") from None

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nz)

    @property
    def volume(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def shape(self) -> tuple[int, int, int]:
        """Sorted extents; two boxes with the same shape are isometric."""
        return tuple(sorted(self.dims))  # type: ignore[return-value]

    def contains(self, cell: tuple[int, int, int]) -> bool:
        x, y, z = cell
        return 0 <= x < self.nx and 0 <= y < self.ny and 0 <= z < self.nz

    def cells(self) -> Iterator[Cell]:
        """All cells in lexicographic (x, y, z) order."""
        for x, y, z in product(range(self.nx), range(self.ny), range(self.nz)):
            yield Cell(x, y, z)

    def __str__(self) -> str:
        return f"{self.nx}x{self.ny}x{self.nz}"


@dataclass(frozen=True)
class BoxTransform:
    """Axis permutation followed by per-axis reflection.

    Output axis ``i`` takes the input coordinate on axis ``perm[i]``, mirrored
    across the box when ``flips[i]`` is set.
    """

    box: Box
    perm: tuple[int, int, int]
    flips: tuple[bool, bool, bool]

    def __call__(self, cell: tuple[int, int, int]) -> Cell:
        dims = self.box.dims
        out = []
        for axis in range(3):
            v = cell[self.perm[axis]]
            out.append(dims[axis] - 1 - v if self.flips[axis] else v)
        return Cell(*out)

    def compose(self, inner: BoxTransform) -> BoxTransform:
        """Return the transform equal to applying ``inner`` first, then ``self``."""
        if inner.box != self.box:
            raise ValueError("cannot compose transforms of different boxes")
        perm = tuple(inner.perm[self.perm[i]] for i in range(3))
        flips = tuple(self.flips[i] != inner.flips[self.perm[i]] for i in range(3))
        return BoxTransform(self.box, perm, flips)  # type: ignore[arg-type]

    @property
    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2) and not any(self.flips)


@lru_cache(maxsize=None)
def _offsets() -> tuple[MoveOffset, ...]:
    steps = range(-2, 3)
    return tuple(
        MoveOffset(*d) for d in product(steps, repeat=3) if sorted(map(abs, d)) == [0, 1, 2]
    )


def knight_offsets() -> list[MoveOffset]:
    """The 24 signed axis permutations of (0, 1, 2), sorted lexicographically."""
    return list(_offsets())


def knight_moves(box: Box, cell: tuple[int, int, int]) -> list[Cell]:
    """Cells one knight jump away from ``cell`` inside ``box``, in offset order."""
    if not box.contains(cell):
        raise ValueError(f"cell {tuple(cell)} lies outside box {box}")
    x, y, z = cell
    out = []
    for dx, dy, dz in _offsets():
        target = Cell(x + dx, y + dy, z + dz)
        if box.contains(target):
            out.append(target)
    return out


def is_knight_step(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    return sorted(abs(p - q) for p, q in zip(a, b)) == [0, 1, 2]


def symmetries(box: Box) -> list[BoxTransform]:
    """Every extent-preserving axis permutation combined with all 8 reflections.

    The identity comes first; the remaining order is deterministic.
    """
    dims = box.dims
    out = []
    for perm in permutations(range(3)):
        if any(dims[perm[i]] != dims[i] for i in range(3)):
            continue
        for flips in product((False, True), repeat=3):
            out.append(BoxTransform(box, perm, flips))  # type: ignore[arg-type]
    return out


def orbit(box: Box, cell: tuple[int, int, int]) -> set[Cell]:
    return {g(cell) for g in symmetries(box)}


def canonical_cell(box: Box, cell: tuple[int, int, int]) -> Cell:
    """Lexicographically least image of ``cell`` under the box symmetries."""
    return min(orbit(box, cell))


def canonical_start_cells(box: Box) -> list[Cell]:
    """One representative (the least member) per symmetry orbit of cells."""
    transforms = symmetries(box)
    seen: set[Cell] = set()
    reps = []
    for cell in box.cells():
        if cell in seen:
            continue
        images = {g(cell) for g in transforms}
        seen |= images
        reps.append(min(images))
    return sorted(reps)
