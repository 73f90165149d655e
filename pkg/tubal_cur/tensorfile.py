"""
Tensor file IO.

TensorFile layout (little-endian):

    offset  size  field
    0       4     magic "TNS3"
    4       1     version (0x01)
    5       1     dtype (0x00 float64, 0x01 boolean mask byte)
    6       5     reserved, zero
    11      24    n1, n2, n3 as uint64
    35      ...   payload, entry (i, j, k) at flat index i + n1 * (j + n2 * k)

Grayscale frames are read with Pillow from binary (P5) PGM files.
"""

import struct
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .algebra import Tensor3
from .errors import DimMismatch, FormatError
from .solvers.masks import ObservationMask

MAGIC = b"TNS3"
VERSION = 1
DTYPE_F64 = 0x00
DTYPE_MASK = 0x01
HEADER = struct.Struct("<4sBB5sQQQ")
DTYPE_WIDTH = {DTYPE_F64: 8, DTYPE_MASK: 1}

PGM_SUFFIXES = {".pgm"}
# Pillow rescales P5 samples to the full range of the decoded mode
PGM_MODE_SCALE = {"L": 255.0, "I": 65535.0, "I;16": 65535.0, "I;16B": 65535.0}


# =============================================================================
# TensorFile
# =============================================================================

def _pack(dtype: int, dims: tuple[int, int, int], payload: bytes) -> bytes:
    return HEADER.pack(MAGIC, VERSION, dtype, bytes(5), *dims) + payload


def _unpack(buf: bytes, path) -> tuple[int, tuple[int, int, int], memoryview]:
    if len(buf) < HEADER.size:
        raise FormatError(f"truncated header ({len(buf)} of {HEADER.size} bytes)", len(buf), path)
    magic, version, dtype, reserved, n1, n2, n3 = HEADER.unpack_from(buf, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", 0, path)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", 4, path)
    if dtype not in DTYPE_WIDTH:
        raise FormatError(f"unknown dtype byte 0x{dtype:02x}", 5, path)
    if any(reserved):
        first = next(i for i, b in enumerate(reserved) if b)
        raise FormatError("reserved bytes must be zero", 6 + first, path)
    if min(n1, n2, n3) < 1:
        raise FormatError(f"dims must be positive, got {(n1, n2, n3)}", 11, path)
    expected = n1 * n2 * n3 * DTYPE_WIDTH[dtype]
    got = len(buf) - HEADER.size
    if got != expected:
        raise FormatError(f"payload is {got} bytes, expected {expected}", HEADER.size + min(got, expected), path)
    return dtype, (n1, n2, n3), memoryview(buf)[HEADER.size:]


def write_tensor(path: Path, x: Tensor3) -> None:
    payload = x.array.ravel(order="F").astype("<f8").tobytes()
    Path(path).write_bytes(_pack(DTYPE_F64, x.dims, payload))


def read_tensor(path: Path) -> Tensor3:
    """
    Read a float64 TensorFile.

    Raises:
        FormatError: On any malformed header or payload, with the byte offset.
        OSError: If the file cannot be read.
    """
    buf = Path(path).read_bytes()
    dtype, dims, payload = _unpack(buf, path)
    if dtype != DTYPE_F64:
        raise FormatError("expected a float64 tensor, found a mask", 5, path)
    flat = np.frombuffer(payload, dtype="<f8")
    bad = np.flatnonzero(~np.isfinite(flat))
    if bad.size:
        raise FormatError("non-finite value in payload", HEADER.size + 8 * int(bad[0]), path)
    return Tensor3(flat.astype(np.float64).reshape(dims, order="F"))


def write_mask(path: Path, mask: ObservationMask) -> None:
    payload = mask.observed.ravel(order="F").astype(np.uint8).tobytes()
    Path(path).write_bytes(_pack(DTYPE_MASK, mask.dims, payload))


def read_mask(path: Path) -> ObservationMask:
    buf = Path(path).read_bytes()
    dtype, dims, payload = _unpack(buf, path)
    if dtype != DTYPE_MASK:
        raise FormatError("expected a mask, found a float64 tensor", 5, path)
    flat = np.frombuffer(payload, dtype=np.uint8)
    bad = np.flatnonzero(flat > 1)
    if bad.size:
        raise FormatError("mask bytes must be 0 or 1", HEADER.size + int(bad[0]), path)
    return ObservationMask(flat.astype(bool).reshape(dims, order="F"))


# =============================================================================
# PGM stacks
# =============================================================================

def list_frames(directory: Path) -> list[Path]:
    """PGM files directly under ``directory`` in lexicographic name order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"not a directory: {directory}")
    return sorted(
        (p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in PGM_SUFFIXES),
        key=lambda p: p.name,
    )


def read_pgm(path: Path) -> np.ndarray:
    """One binary PGM frame as a float64 (height, width) array in [0, 1]."""
    with open(path, "rb") as f:
        magic = f.read(2)
    if magic != b"P5":
        raise FormatError(f"expected binary PGM (P5), found {magic!r}", 0, path)
    try:
        with Image.open(path) as img:
            img.load()
            mode = img.mode
            arr = np.asarray(img, dtype=np.float64)
    except (UnidentifiedImageError, SyntaxError, ValueError) as e:
        raise FormatError(f"unreadable PGM: {e}", 2, path) from e
    if mode not in PGM_MODE_SCALE:
        raise FormatError(f"unexpected PGM mode {mode}", 2, path)
    return arr / PGM_MODE_SCALE[mode]


def read_pgm_stack(directory: Path, layout: str = "frontal") -> Tensor3:
    """
    Stack PGM frames into a tensor.

    Args:
        directory: Folder of .pgm files; name order fixes the frame order.
        layout: "frontal" puts frame k at X[:, :, k] (height x width x frames);
            "lateral" puts frame j at X[:, j, :] (height x frames x width).

    Raises:
        DimMismatch: If frames differ in size.
        FormatError: On a non-P5 or unreadable frame.
    """
    if layout not in ("frontal", "lateral"):
        raise ValueError(f"layout must be 'frontal' or 'lateral', got {layout!r}")
    frames = list_frames(directory)
    if not frames:
        raise FileNotFoundError(f"no .pgm files in {directory}")
    arrays = []
    for path in frames:
        arr = read_pgm(path)
        if arrays and arr.shape != arrays[0].shape:
            raise DimMismatch(f"frame {path.name} differs in size", arrays[0].shape, arr.shape)
        arrays.append(arr)
    axis = 2 if layout == "frontal" else 1
    return Tensor3(np.stack(arrays, axis=axis))


def write_pgm(path: Path, frame: np.ndarray) -> None:
    """Write a [0, 1] frame as an 8-bit binary PGM."""
    pixels = np.clip(np.rint(np.asarray(frame) * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(pixels).save(path, format="PPM")


def write_pgm_stack(directory: Path, x: Tensor3, layout: str = "frontal", prefix: str = "frame") -> list[Path]:
    """Write each frontal (or lateral) slice of x as a numbered PGM frame."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    count = x.n3 if layout == "frontal" else x.n2
    width = max(3, len(str(count - 1)))
    paths = []
    for k in range(count):
        frame = x.array[:, :, k] if layout == "frontal" else x.array[:, k, :]
        path = directory / f"{prefix}_{k:0{width}d}.pgm"
        write_pgm(path, frame)
        paths.append(path)
    return paths
