"""Bit-packed adjacency matrices, edge-list ingestion, and synthetic generators.

Matrices are square (n x n) and stored as a row-major bit sequence packed
MSB-first into bytes: bit i*n + j is 1 iff edge (i, j) exists. Instances are
immutable after construction and safe for concurrent reads; the generators
are pure functions of their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_GEN_BLOCK_BITS = 1 << 22  # per-block bit budget for generators; multiple of 8


class ParseError(ValueError):
    """Malformed edge-list text; the message carries the line number."""


class EdgeRangeError(ValueError):
    """Edge endpoint outside [0, n)."""


@dataclass
class EdgeList:
    """Directed edges as (u, v) pairs over vertices 0..n-1.

    Duplicates and self-loops are permitted; they collapse to a single set
    bit when the list is materialized.
    """

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class ChunkMixSpec:
    """Recipe for a matrix with controlled fractions of 32-bit chunk classes.

    f_zero, f_single and f_pair select all-zero chunks, chunks with a single
    1, and chunks with the leading bit plus one more 1. Whatever remains
    becomes filler chunks with exactly three 1 bits, which no dictionary
    entry can match. n must be a positive multiple of 32 so the fractions
    apply to whole chunks.
    """

    n: int
    f_zero: float = 0.0
    f_single: float = 0.0
    f_pair: float = 0.0
    seed: int = 0


class BitMatrix:
    """Immutable n x n bit matrix; bit (i*n + j) = 1 iff edge (i, j) exists."""

    __slots__ = ("n", "data")

    def __init__(self, n: int, data: bytes | None = None):
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        nbytes = (n * n + 7) // 8
        if data is None:
            packed = bytes(nbytes)
        else:
            packed = bytes(data)
            if len(packed) != nbytes:
                raise ValueError(
                    f"expected {nbytes} packed bytes for n={n}, got {len(packed)}")
            tail = (n * n) % 8
            if tail and packed[-1] & ((1 << (8 - tail)) - 1):
                # mask stray bits past n*n so equality stays canonical
                packed = packed[:-1] + bytes([packed[-1] & (0xFF << (8 - tail)) & 0xFF])
        self.n = n
        self.data = packed

    @classmethod
    def zeros(cls, n: int) -> "BitMatrix":
        return cls(n)

    @classmethod
    def from_bit_array(cls, n: int, bits) -> "BitMatrix":
        """Build from a 0/1 array of length n*n in row-major order."""
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.size != n * n:
            raise ValueError(f"expected {n * n} bits, got {arr.size}")
        return cls(n, np.packbits(arr).tobytes())

    def bit_array(self) -> np.ndarray:
        """Row-major 0/1 uint8 array of length n*n."""
        return np.unpackbits(np.frombuffer(self.data, dtype=np.uint8))[: self.n * self.n]

    def get(self, i: int, j: int) -> int:
        """Bit at row i, column j; constant time."""
        n = self.n
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"index ({i}, {j}) out of range for n={n}")
        idx = i * n + j
        return (self.data[idx >> 3] >> (7 - (idx & 7))) & 1

    def popcount(self) -> int:
        """Number of set bits (edges)."""
        return int.from_bytes(self.data, "big").bit_count()

    def edges(self):
        """Yield set bits as (i, j) pairs in row-major order."""
        n = self.n
        for flat in np.nonzero(self.bit_array())[0].tolist():
            yield divmod(flat, n)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n == other.n and self.data == other.data

    def __hash__(self):
        return hash((self.n, self.data))

    def __repr__(self):
        return f"BitMatrix(n={self.n}, edges={self.popcount()})"


def from_edge_list(el: EdgeList) -> BitMatrix:
    """Materialize an edge list; duplicate edges collapse to one bit."""
    n = el.n
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    bits = np.zeros(n * n, dtype=np.uint8)
    if el.edges:
        pairs = np.asarray(el.edges, dtype=np.int64).reshape(-1, 2)
        bad = ((pairs < 0) | (pairs >= n)).any(axis=1)
        if bad.any():
            u, v = (int(x) for x in pairs[int(np.nonzero(bad)[0][0])])
            raise EdgeRangeError(f"edge ({u}, {v}) out of range for n={n}")
        bits[pairs[:, 0] * n + pairs[:, 1]] = 1
    return BitMatrix.from_bit_array(n, bits)


def generate_er(n: int, p: float, seed: int) -> BitMatrix:
    """Random matrix where every bit is independently 1 with probability p.

    Deterministic for a given (n, p, seed) triple.
    """
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    total = n * n
    out = bytearray((total + 7) // 8)
    pos = 0
    for start in range(0, total, _GEN_BLOCK_BITS):
        count = min(_GEN_BLOCK_BITS, total - start)
        block = np.packbits(rng.random(count) < p)
        out[pos : pos + block.size] = block.tobytes()
        pos += block.size
    return BitMatrix(n, bytes(out))


def generate_chunk_mix(spec: ChunkMixSpec) -> BitMatrix:
    """Matrix whose 32-bit chunk census follows the spec's fractions exactly.

    Class counts are round(f * total_chunks); leftover chunks get exactly
    three 1 bits at distinct positions. Chunk placement is a seeded
    permutation, so the matrix looks unstructured while the census stays
    exact.
    """
    n = spec.n
    if n < 32 or n % 32 != 0:
        raise ValueError(f"n must be a positive multiple of 32, got {n}")
    fractions = (spec.f_zero, spec.f_single, spec.f_pair)
    for name, f in zip(("f_zero", "f_single", "f_pair"), fractions):
        if not 0.0 <= f <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {f}")
    if sum(fractions) > 1.0 + 1e-9:
        raise ValueError(f"chunk fractions sum to {sum(fractions)}, must be <= 1")

    total = n * n // 32
    n_zero = round(spec.f_zero * total)
    n_single = round(spec.f_single * total)
    n_pair = round(spec.f_pair * total)
    n_filler = total - n_zero - n_single - n_pair
    if n_filler < 0:
        raise ValueError("rounded chunk counts exceed the total chunk count")

    rng = np.random.default_rng(spec.seed)
    singles = 1 << (31 - rng.integers(0, 32, size=n_single, dtype=np.int64))
    pairs = (1 << 31) | (1 << (31 - rng.integers(1, 32, size=n_pair, dtype=np.int64)))
    # three distinct positions per filler chunk: draw from shrinking ranges and
    # shift past the positions already taken
    p1 = rng.integers(0, 32, size=n_filler, dtype=np.int64)
    p2 = rng.integers(0, 31, size=n_filler, dtype=np.int64)
    p2 += p2 >= p1
    lo = np.minimum(p1, p2)
    hi = np.maximum(p1, p2)
    p3 = rng.integers(0, 30, size=n_filler, dtype=np.int64)
    p3 += p3 >= lo
    p3 += p3 >= hi
    fillers = (1 << (31 - p1)) | (1 << (31 - p2)) | (1 << (31 - p3))

    chunks = np.concatenate([np.zeros(n_zero, dtype=np.int64), singles, pairs, fillers])
    chunks = rng.permutation(chunks).astype(np.uint32)
    return BitMatrix(n, chunks.astype(">u4").tobytes())


def parse_edge_list_text(text: str | bytes) -> EdgeList:
    """Parse edge-list text: a vertex-count line, then one "u v" line per edge.

    Blank lines and lines starting with '#' are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError(f"line {lineno}: expected vertex count, got {raw!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {parts[0]!r}") from None
            if n < 1:
                raise ParseError(f"line {lineno}: vertex count must be >= 1, got {n}")
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeRangeError(f"line {lineno}: edge ({u}, {v}) out of range for n={n}")
        edges.append((u, v))
    if n is None:
        raise ParseError("missing vertex-count header line")
    return EdgeList(n, edges)


def format_edge_list_text(m: BitMatrix) -> str:
    """Edge-list text for a matrix: n header, then sorted "u v" lines."""
    lines = [str(m.n)]
    lines.extend(f"{u} {v}" for u, v in m.edges())
    return "\n".join(lines) + "\n"
