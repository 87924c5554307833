"""
Radial Grid Schemas
Grids, f-space operators and test-function sets
"""
import enum
from typing import Callable, ClassVar, List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import sparse

from app.core.exceptions import UsageError


class Spacing(str, enum.Enum):
    """Grid spacing scheme"""
    UNIFORM = "uniform"
    LOG_UNIFORM = "log-uniform"
    EXPLICIT = "explicit"


class RadialGrid(BaseModel):
    """Strictly increasing positive radial points"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray
    spacing: Spacing = Spacing.EXPLICIT

    @field_validator("points", mode="before")
    @classmethod
    def _validate_points(cls, v) -> np.ndarray:
        arr = np.array(v, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("grid must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr)) or arr[0] <= 0:
            raise ValueError("grid points must be finite and positive")
        if arr.size > 1 and np.any(np.diff(arr) <= 0):
            raise ValueError("grid points must be strictly increasing")
        arr.setflags(write=False)
        return arr

    @classmethod
    def uniform(cls, r_min: float, r_max: float, points: int) -> "RadialGrid":
        if points == 1:
            return cls(points=np.array([float(r_min)]), spacing=Spacing.UNIFORM)
        return cls(points=np.linspace(r_min, r_max, points), spacing=Spacing.UNIFORM)

    @classmethod
    def log_uniform(cls, r_min: float, r_max: float, points: int) -> "RadialGrid":
        if points == 1:
            return cls(points=np.array([float(r_min)]), spacing=Spacing.LOG_UNIFORM)
        return cls(points=np.geomspace(r_min, r_max, points), spacing=Spacing.LOG_UNIFORM)

    @property
    def size(self) -> int:
        return int(self.points.size)

    @property
    def r(self) -> np.ndarray:
        return self.points

    def same_as(self, other: "RadialGrid") -> bool:
        return self.size == other.size and bool(np.array_equal(self.points, other.points))

    def refined(self) -> "RadialGrid":
        """Same span and scheme with the spacing halved"""
        n = 2 * self.size - 1
        if self.spacing is Spacing.UNIFORM:
            return RadialGrid.uniform(self.points[0], self.points[-1], n)
        if self.spacing is Spacing.LOG_UNIFORM:
            return RadialGrid.log_uniform(self.points[0], self.points[-1], n)
        raise UsageError("explicit grids cannot be refined")


class GridOperator(BaseModel):
    """Sparse banded operator acting on f-samples of a RadialGrid"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: sparse.csr_matrix
    grid: RadialGrid
    label: str = ""

    @field_validator("matrix", mode="before")
    @classmethod
    def _to_csr(cls, v) -> sparse.csr_matrix:
        m = sparse.csr_matrix(v)
        if m.nnz and not np.all(np.isfinite(m.data)):
            raise ValueError("operator entries must be finite")
        return m

    def model_post_init(self, __context) -> None:
        n = self.grid.size
        if self.matrix.shape != (n, n):
            raise ValueError(f"operator shape {self.matrix.shape} does not match grid size {n}")

    def _check(self, other: "GridOperator") -> None:
        if not self.grid.same_as(other.grid):
            raise UsageError(f"operators '{self.label}' and '{other.label}' live on different grids")

    def __call__(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f)
        if f.shape != (self.grid.size,):
            raise UsageError(f"sample vector of shape {f.shape} does not match grid size {self.grid.size}")
        return self.matrix @ f

    def __matmul__(self, other: "GridOperator") -> "GridOperator":
        self._check(other)
        return GridOperator(matrix=self.matrix @ other.matrix, grid=self.grid, label=f"{self.label}{other.label}")

    def __add__(self, other: "GridOperator") -> "GridOperator":
        self._check(other)
        return GridOperator(matrix=self.matrix + other.matrix, grid=self.grid, label=f"({self.label}+{other.label})")

    def __sub__(self, other: "GridOperator") -> "GridOperator":
        self._check(other)
        return GridOperator(matrix=self.matrix - other.matrix, grid=self.grid, label=f"({self.label}-{other.label})")

    def __neg__(self) -> "GridOperator":
        return GridOperator(matrix=-self.matrix, grid=self.grid, label=f"-{self.label}")

    def scaled(self, c: Union[float, complex], label: str = "") -> "GridOperator":
        return GridOperator(matrix=c * self.matrix, grid=self.grid, label=label or f"{c}*{self.label}")

    def __mul__(self, c: Union[float, complex]) -> "GridOperator":
        return self.scaled(c)

    __rmul__ = __mul__

    @classmethod
    def identity(cls, grid: RadialGrid) -> "GridOperator":
        return cls(matrix=sparse.identity(grid.size, format="csr"), grid=grid, label="I")

    @classmethod
    def zero(cls, grid: RadialGrid) -> "GridOperator":
        return cls(matrix=sparse.csr_matrix((grid.size, grid.size)), grid=grid, label="0")


class TestFunction(BaseModel):
    """Named sampled test function"""
    __test__: ClassVar[bool] = False
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    values: np.ndarray


class TestFunctionSet(BaseModel):
    """Smooth functions vanishing at both ends of a grid"""
    __test__: ClassVar[bool] = False
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    functions: List[TestFunction] = Field(default_factory=list)

    def add(self, name: str, fn: Callable[[np.ndarray], np.ndarray]) -> "TestFunctionSet":
        values = np.asarray(fn(self.grid.points), dtype=float)
        peak = np.max(np.abs(values))
        edge = max(abs(values[0]), abs(values[-1]))
        if peak == 0 or edge > 1e-12 * peak:
            raise UsageError(f"test function '{name}' does not vanish at the grid boundaries")
        return TestFunctionSet(grid=self.grid, functions=[*self.functions, TestFunction(name=name, values=values)])


class GeneratorSet(BaseModel):
    """Observables and so(2,1) generators (a = 1) on one grid"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    sigma: float = Field(..., gt=0)
    tau: float = Field(..., ge=0)
    hbar: float = Field(1.0, gt=0)
    R: GridOperator
    P: GridOperator
    T1: GridOperator
    T2: GridOperator
    T3: GridOperator
    Tplus: GridOperator
    Tminus: GridOperator
    Casimir: GridOperator
