import numpy as np
import pytest

from gpmc import (BitMatrix, build_pattern_set_1, build_pattern_set_2,
                  build_pattern_set_3)

# Hand-written 16-vertex sample graph: 12 structured rows (dense runs,
# strides, wrapped diagonals), remaining rows empty. Mixes matched and
# unmatched chunks under every pattern set.
SAMPLE_ROWS = [
    "1111000000000000",
    "0000111100000000",
    "0000000011110000",
    "0000000000001111",
    "1000100010001000",
    "0100010001000100",
    "0010001000100010",
    "0001000100010001",
    "1000010000100001",
    "0100001000011000",
    "0010000101000010",
    "0001100010000100",
]


def build_sample_matrix() -> BitMatrix:
    n = 16
    bits = np.zeros(n * n, dtype=np.uint8)
    for i, row in enumerate(SAMPLE_ROWS):
        for j, ch in enumerate(row):
            bits[i * n + j] = ch == "1"
    return BitMatrix.from_bit_array(n, bits)


def chunk_popcounts(chunks: np.ndarray) -> np.ndarray:
    """Popcount per uint32 chunk, computed independently of the codec."""
    as_bytes = np.ascontiguousarray(chunks, dtype=np.uint32).astype(">u4")
    bits = np.unpackbits(as_bytes.view(np.uint8)).reshape(-1, 32)
    return bits.sum(axis=1)


@pytest.fixture(scope="session")
def set1():
    return build_pattern_set_1()


@pytest.fixture(scope="session")
def set2():
    return build_pattern_set_2()


@pytest.fixture(scope="session")
def set3():
    return build_pattern_set_3()


@pytest.fixture(scope="session")
def all_sets(set1, set2, set3):
    return (set1, set2, set3)


@pytest.fixture(scope="session")
def sample_matrix():
    return build_sample_matrix()
