"""
Dense 3-way tensors and their Fourier-domain counterpart.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateInput, DimMismatch


@dataclass(frozen=True, eq=False)
class Tensor3:
    """
    A real n1 x n2 x n3 tensor.

    ``array`` is a read-only float64 ndarray indexed [i, j, k]. The flat
    ``data`` view uses mode-1-fastest order, so entry (i, j, k) sits at
    i + n1 * (j + n2 * k).
    """

    array: np.ndarray

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.float64, copy=True)
        if arr.ndim != 3:
            raise DimMismatch("Tensor3 needs a 3-way array", arr.shape)
        if min(arr.shape) < 1:
            raise DimMismatch("Tensor3 dims must be positive", arr.shape)
        if not np.isfinite(arr).all():
            raise DegenerateInput("Tensor3 entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "array", arr)

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_flat(cls, dims: tuple[int, int, int], data) -> "Tensor3":
        """Build from a flat sequence in mode-1-fastest order."""
        flat = np.asarray(data, dtype=np.float64)
        n1, n2, n3 = (int(d) for d in dims)
        if flat.size != n1 * n2 * n3:
            raise DimMismatch("data length does not match dims", flat.size, (n1, n2, n3))
        return cls(flat.reshape((n1, n2, n3), order="F"))

    @classmethod
    def from_matrix(cls, mat) -> "Tensor3":
        """Wrap an n1 x n2 matrix as an n1 x n2 x 1 tensor."""
        return cls(np.asarray(mat, dtype=np.float64)[:, :, np.newaxis])

    @classmethod
    def zeros(cls, n1: int, n2: int, n3: int) -> "Tensor3":
        return cls(np.zeros((n1, n2, n3)))

    # -------------------------------------------------------------------------
    # Shape and views
    # -------------------------------------------------------------------------

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.array.shape

    @property
    def n1(self) -> int:
        return self.array.shape[0]

    @property
    def n2(self) -> int:
        return self.array.shape[1]

    @property
    def n3(self) -> int:
        return self.array.shape[2]

    @property
    def data(self) -> np.ndarray:
        return self.array.ravel(order="F")

    @property
    def T(self) -> "Tensor3":
        from .ops import t_transpose
        return t_transpose(self)

    def frob_norm(self) -> float:
        return float(np.linalg.norm(self.array.ravel()))

    def max_abs(self) -> float:
        return float(np.abs(self.array).max())

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims}, frob={self.frob_norm():.6g})"

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _check_same(self, other: "Tensor3"):
        if self.dims != other.dims:
            raise DimMismatch("elementwise op on different dims", self.dims, other.dims)

    def __add__(self, other: "Tensor3") -> "Tensor3":
        self._check_same(other)
        return Tensor3(self.array + other.array)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        self._check_same(other)
        return Tensor3(self.array - other.array)

    def __neg__(self) -> "Tensor3":
        return Tensor3(-self.array)

    def __mul__(self, scalar: float) -> "Tensor3":
        return Tensor3(self.array * float(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "Tensor3") -> "Tensor3":
        from .ops import t_product
        return t_product(self, other)


@dataclass(frozen=True, eq=False)
class SpectralTensor:
    """
    Frontal-slice stack of a tensor after an unnormalized DFT along tubes.

    ``slices`` is a complex (n1, n2, n3) array; slice k is slices[:, :, k].
    """

    slices: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.slices, dtype=np.complex128)
        if arr.ndim != 3:
            raise DimMismatch("SpectralTensor needs a 3-way array", arr.shape)
        object.__setattr__(self, "slices", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.slices.shape

    @property
    def n3(self) -> int:
        return self.slices.shape[2]

    def slice(self, k: int) -> np.ndarray:
        return self.slices[:, :, k]

    def symmetry_defect(self) -> float:
        """Relative deviation from conjugate symmetry X̂_k = conj(X̂_{n3-k})."""
        mirror = np.conj(self.slices[:, :, (-np.arange(self.n3)) % self.n3])
        scale = np.linalg.norm(self.slices.ravel())
        if scale == 0.0:
            return 0.0
        return float(np.linalg.norm((self.slices - mirror).ravel()) / scale)

    def energy(self) -> float:
        """Sum of squared magnitudes over all slices (n3 * ||X||_F^2 for real X)."""
        return float(np.sum(np.abs(self.slices) ** 2))
