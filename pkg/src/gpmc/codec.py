"""Bitstream encoder/decoder, container format, and compressed-domain query.

Each matrix row is split into consecutive 32-bit chunks (the last chunk of a
row is zero-padded when n is not a multiple of 32; the pad is virtual and
removed on decode). Per chunk, the stream holds either flag bit 1 followed
by a big-endian indicator of indicator_bits width (chunk equals a dictionary
entry) or flag bit 0 followed by the 32 raw chunk bits. Rows are concatenated
with no alignment; bits are packed MSB-first into bytes and only the final
byte of the whole payload is padded.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .bitmatrix import BitMatrix
from .patterns import PatternSet, classify_chunks

MAGIC = b"GPMC"
VERSION = 1
CHUNK_WIDTH = 32
HEADER_LEN = 24
RAW_FIELD_BITS = 1 + CHUNK_WIDTH

_BLOCK_FIELDS = 1 << 18  # fields per vectorized block; bounds transient memory


class FormatError(ValueError):
    """Container violates the declared layout (magic, version, ids, widths)."""


class TruncationError(ValueError):
    """Stream or file ends before a declared field is complete."""


class CorruptStreamError(ValueError):
    """Structurally invalid payload (bad indicator, stray bits, dirty padding)."""


@dataclass(frozen=True)
class CompressedGraph:
    """Encoded adjacency matrix: header fields plus the packed payload."""

    n: int
    pattern_set_id: int
    chunk_width: int
    payload: bytes
    payload_bit_length: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        if self.chunk_width != CHUNK_WIDTH:
            raise ValueError(f"chunk width must be {CHUNK_WIDTH}, got {self.chunk_width}")
        if self.pattern_set_id not in (1, 2, 3):
            raise ValueError(f"pattern set id must be 1, 2 or 3, got {self.pattern_set_id}")
        if len(self.payload) != (self.payload_bit_length + 7) // 8:
            raise ValueError("payload byte length disagrees with payload_bit_length")


@dataclass(frozen=True)
class CompressionStats:
    """Chunk census and bit totals for one compression run."""

    total_chunks: int
    matched: int
    unmatched: int
    per_pattern: tuple[int, ...]
    original_bits: int
    compressed_bits: int
    ratio: float


def chunks_per_row(n: int) -> int:
    return (n + CHUNK_WIDTH - 1) // CHUNK_WIDTH


def total_chunks(n: int) -> int:
    """Number of chunks the row chunking produces for an n x n matrix."""
    return n * chunks_per_row(n)


def matrix_chunks(m: BitMatrix) -> np.ndarray:
    """All chunks of a matrix in encode order, as native uint32 values.

    The final chunk of each row is zero-padded to 32 bits when n % 32 != 0.
    """
    n = m.n
    bits = m.bit_array()
    cpr = chunks_per_row(n)
    if n % CHUNK_WIDTH:
        padded = np.zeros((n, cpr * CHUNK_WIDTH), dtype=np.uint8)
        padded[:, :n] = bits.reshape(n, n)
        bits = padded.reshape(-1)
    return np.packbits(bits).view(">u4").astype(np.uint32)


def chunks_to_matrix(chunks: np.ndarray, n: int) -> BitMatrix:
    """Inverse of matrix_chunks: drop per-row padding and repack."""
    cpr = chunks_per_row(n)
    raw = np.asarray(chunks, dtype=np.uint32).astype(">u4").tobytes()
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))
    if n % CHUNK_WIDTH:
        bits = np.ascontiguousarray(bits.reshape(n, cpr * CHUNK_WIDTH)[:, :n]).reshape(-1)
    return BitMatrix.from_bit_array(n, bits)


def _scatter_fields(out: np.ndarray, offsets: np.ndarray, values: np.ndarray,
                    width: int) -> None:
    """Write fixed-width big-endian fields into a per-bit array at bit offsets."""
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    cols = np.arange(width, dtype=np.int64)
    for s in range(0, len(offsets), _BLOCK_FIELDS):
        offs = offsets[s : s + _BLOCK_FIELDS]
        vals = values[s : s + _BLOCK_FIELDS]
        out[(offs[:, None] + cols).ravel()] = \
            ((vals[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def compress(m: BitMatrix, pset: PatternSet) -> tuple[CompressedGraph, CompressionStats]:
    """Encode a matrix against a dictionary; returns the stream and its census."""
    k = pset.indicator_bits
    chunks = matrix_chunks(m)
    idx = classify_chunks(chunks, pset)
    matched_mask = idx >= 0

    widths = np.where(matched_mask, 1 + k, RAW_FIELD_BITS).astype(np.int64)
    bit_length = int(widths.sum())
    offsets = np.cumsum(widths) - widths
    out = np.zeros(bit_length, dtype=np.uint8)
    # a matched field is flag 1 + k indicator bits, i.e. the (k+1)-bit value
    # (1 << k) | index; a raw field is the chunk itself widened to 33 bits,
    # whose top bit is the 0 flag
    _scatter_fields(out, offsets[matched_mask], (1 << k) | idx[matched_mask], 1 + k)
    _scatter_fields(out, offsets[~matched_mask],
                    chunks[~matched_mask].astype(np.int64), RAW_FIELD_BITS)

    matched = int(matched_mask.sum())
    hist = np.bincount(idx[matched_mask], minlength=len(pset.patterns))
    original = m.n * m.n
    stats = CompressionStats(
        total_chunks=int(chunks.size),
        matched=matched,
        unmatched=int(chunks.size) - matched,
        per_pattern=tuple(int(c) for c in hist),
        original_bits=original,
        compressed_bits=bit_length,
        ratio=1.0 - bit_length / original,
    )
    graph = CompressedGraph(m.n, pset.id, pset.width,
                            np.packbits(out).tobytes(), bit_length)
    return graph, stats


def _check_set(c: CompressedGraph, pset: PatternSet) -> None:
    if c.pattern_set_id != pset.id:
        raise FormatError(
            f"container names pattern set {c.pattern_set_id}, got set {pset.id}")
    if c.chunk_width != pset.width:
        raise FormatError(
            f"container chunk width {c.chunk_width} != pattern width {pset.width}")


def _payload_bit_array(c: CompressedGraph) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(c.payload, dtype=np.uint8))
    if bits.size < c.payload_bit_length:
        raise TruncationError(
            f"payload holds {bits.size} bits but declares {c.payload_bit_length}")
    return bits


def _scan_offsets(bit_bytes: bytes, bit_length: int, count: int,
                  k: int) -> tuple[np.ndarray, np.ndarray]:
    """Walk the stream reading only flag bits; bit offset and flag per field."""
    matched_width = 1 + k
    offsets = []
    flags = []
    pos = 0
    for _ in range(count):
        if pos >= bit_length:
            raise TruncationError(
                f"stream ended after {len(offsets)} of {count} chunks")
        flag = bit_bytes[pos]
        width = matched_width if flag else RAW_FIELD_BITS
        if pos + width > bit_length:
            raise TruncationError(f"chunk {len(offsets)} field truncated")
        offsets.append(pos)
        flags.append(flag)
        pos += width
    if pos != bit_length:
        raise CorruptStreamError(
            f"{bit_length - pos} unconsumed payload bits after the final chunk")
    return np.array(offsets, dtype=np.int64), np.array(flags, dtype=bool)


def _read_fields(bits: np.ndarray, offsets: np.ndarray, first: int,
                 width: int) -> np.ndarray:
    """Gather fixed-width big-endian fields starting first bits past each offset."""
    weights = np.int64(1) << np.arange(width - 1, -1, -1, dtype=np.int64)
    cols = first + np.arange(width, dtype=np.int64)
    out = np.empty(len(offsets), dtype=np.int64)
    for s in range(0, len(offsets), _BLOCK_FIELDS):
        offs = offsets[s : s + _BLOCK_FIELDS]
        out[s : s + _BLOCK_FIELDS] = \
            (bits[offs[:, None] + cols].astype(np.int64) * weights).sum(axis=1)
    return out


def _read_indicators(bits: np.ndarray, offsets: np.ndarray, pset: PatternSet) -> np.ndarray:
    indicators = _read_fields(bits, offsets, 1, pset.indicator_bits)
    if indicators.size and int(indicators.max()) >= len(pset.patterns):
        bad = int(indicators[indicators >= len(pset.patterns)][0])
        raise CorruptStreamError(
            f"indicator {bad} out of range for {len(pset.patterns)} patterns")
    return indicators


def decompress(c: CompressedGraph, pset: PatternSet) -> BitMatrix:
    """Exact inverse of compress for a well-formed stream."""
    _check_set(c, pset)
    count = total_chunks(c.n)
    bits = _payload_bit_array(c)
    offsets, flags = _scan_offsets(bits.tobytes(), c.payload_bit_length,
                                   count, pset.indicator_bits)
    values = np.zeros(count, dtype=np.int64)
    if flags.any():
        indicators = _read_indicators(bits, offsets[flags], pset)
        values[flags] = pset._values[indicators].astype(np.int64)
    if not flags.all():
        values[~flags] = _read_fields(bits, offsets[~flags], 1, CHUNK_WIDTH)
    return chunks_to_matrix(values.astype(np.uint32), c.n)


def scan_stats(c: CompressedGraph, pset: PatternSet) -> CompressionStats:
    """Recompute compression stats from the stream without rebuilding the matrix."""
    _check_set(c, pset)
    count = total_chunks(c.n)
    bits = _payload_bit_array(c)
    offsets, flags = _scan_offsets(bits.tobytes(), c.payload_bit_length,
                                   count, pset.indicator_bits)
    hist = np.zeros(len(pset.patterns), dtype=np.int64)
    if flags.any():
        indicators = _read_indicators(bits, offsets[flags], pset)
        hist = np.bincount(indicators, minlength=len(pset.patterns))
    matched = int(flags.sum())
    original = c.n * c.n
    return CompressionStats(
        total_chunks=count,
        matched=matched,
        unmatched=count - matched,
        per_pattern=tuple(int(x) for x in hist),
        original_bits=original,
        compressed_bits=c.payload_bit_length,
        ratio=1.0 - c.payload_bit_length / original,
    )


def query_edge(c: CompressedGraph, pset: PatternSet, i: int, j: int) -> int:
    """Edge bit (i, j) read by scanning the stream up to its chunk.

    No full matrix is materialized; worst-case work is linear in the payload
    length.
    """
    _check_set(c, pset)
    n = c.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"index ({i}, {j}) out of range for n={n}")
    target = i * chunks_per_row(n) + j // CHUNK_WIDTH
    offset_in_chunk = j % CHUNK_WIDTH
    bit_bytes = _payload_bit_array(c).tobytes()
    length = c.payload_bit_length
    matched_width = 1 + pset.indicator_bits

    pos = 0
    for _ in range(target):
        if pos >= length:
            raise TruncationError("stream ended before the requested chunk")
        pos += matched_width if bit_bytes[pos] else RAW_FIELD_BITS
    if pos >= length:
        raise TruncationError("stream ended before the requested chunk")
    if bit_bytes[pos]:
        if pos + matched_width > length:
            raise TruncationError("indicator field truncated")
        index = 0
        for b in range(1, matched_width):
            index = (index << 1) | bit_bytes[pos + b]
        if index >= len(pset.patterns):
            raise CorruptStreamError(
                f"indicator {index} out of range for {len(pset.patterns)} patterns")
        return (pset.patterns[index] >> (CHUNK_WIDTH - 1 - offset_in_chunk)) & 1
    if pos + RAW_FIELD_BITS > length:
        raise TruncationError("raw chunk field truncated")
    return bit_bytes[pos + 1 + offset_in_chunk]


def write_container(c: CompressedGraph) -> bytes:
    """Serialize: magic, version, set id, chunk width, reserved byte, then
    n and payload_bit_length as big-endian u64, then the packed payload."""
    header = MAGIC + bytes((VERSION, c.pattern_set_id, c.chunk_width, 0))
    header += struct.pack(">QQ", c.n, c.payload_bit_length)
    return header + c.payload


def read_container(data: bytes) -> CompressedGraph:
    """Parse and validate a container byte stream."""
    if len(data) < HEADER_LEN:
        raise TruncationError(
            f"container is {len(data)} bytes; the header alone needs {HEADER_LEN}")
    if data[:4] != MAGIC:
        raise FormatError(f"bad magic {bytes(data[:4])!r}")
    version, set_id, width, _reserved = data[4:8]
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    if set_id not in (1, 2, 3):
        raise FormatError(f"pattern set id must be 1, 2 or 3, got {set_id}")
    if width != CHUNK_WIDTH:
        raise FormatError(f"chunk width must be {CHUNK_WIDTH}, got {width}")
    n, bit_length = struct.unpack(">QQ", data[8:HEADER_LEN])
    if n < 1:
        raise FormatError(f"vertex count must be >= 1, got {n}")
    expected = HEADER_LEN + (bit_length + 7) // 8
    if len(data) != expected:
        raise TruncationError(
            f"container is {len(data)} bytes, expected {expected} "
            f"for {bit_length} payload bits")
    payload = bytes(data[HEADER_LEN:])
    pad = (-bit_length) % 8
    if pad and payload[-1] & ((1 << pad) - 1):
        raise CorruptStreamError("nonzero padding bits in final payload byte")
    return CompressedGraph(int(n), int(set_id), int(width), payload, int(bit_length))
