import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpmc import (BitMatrix, ChunkMixSpec, CompressedGraph, CorruptStreamError,
                  FormatError, PatternSet, TruncationError, compress, decompress,
                  generate_chunk_mix, generate_er, pattern_set, query_edge,
                  ratio_for_match_fraction, scan_stats, total_chunks)
from gpmc.codec import chunks_per_row, matrix_chunks, chunks_to_matrix


def assert_size_formula(stats, pset):
    k = pset.indicator_bits
    assert stats.compressed_bits == stats.matched * (1 + k) + stats.unmatched * 33
    assert stats.matched + stats.unmatched == stats.total_chunks
    assert sum(stats.per_pattern) == stats.matched


class TestCompress:
    def test_all_zero_1024_set1(self, set1):
        c, stats = compress(BitMatrix.zeros(1024), set1)
        assert stats.total_chunks == 32768
        assert stats.matched == 32768
        assert stats.compressed_bits == 32768 * 6 == 196608
        assert stats.ratio == 1 - 196608 / 1048576 == 0.8125
        assert c.payload_bit_length == 196608

    def test_all_zero_1024_set2_expands(self, set2):
        _, stats = compress(BitMatrix.zeros(1024), set2)
        assert stats.matched == 0
        assert stats.compressed_bits == 32768 * 33 == 1081344
        assert stats.ratio == pytest.approx(-0.03125)

    def test_chunk_counts(self, set1):
        for n, expected in [(1024, 32768), (64, 128), (33, 66), (1, 1)]:
            _, stats = compress(BitMatrix.zeros(n), set1)
            assert stats.total_chunks == expected == total_chunks(n)

    def test_chunk_mix_ratio_matches_cost_model(self, set3):
        m = generate_chunk_mix(ChunkMixSpec(1024, 0.5, 0.3, 0.1, seed=2))
        _, stats = compress(m, set3)
        f = stats.matched / stats.total_chunks
        assert abs(f - 0.9) < 1e-4
        assert abs(stats.ratio - 0.7) < 1e-3
        assert stats.ratio == pytest.approx(ratio_for_match_fraction(f, 6), abs=1e-12)
        assert_size_formula(stats, set3)

    def test_ratio_formula_is_exact_on_aligned_sizes(self, all_sets):
        for seed, (fz, fs, fp) in enumerate([(0.25, 0.25, 0.25), (0.0, 0.8, 0.0),
                                             (0.9, 0.0, 0.05)]):
            m = generate_chunk_mix(ChunkMixSpec(256, fz, fs, fp, seed=seed))
            for pset in all_sets:
                _, stats = compress(m, pset)
                f = stats.matched / stats.total_chunks
                expected = ratio_for_match_fraction(f, pset.indicator_bits)
                assert stats.ratio == pytest.approx(expected, abs=1e-12)

    def test_per_pattern_histogram(self, set1):
        m = BitMatrix.zeros(64)
        _, stats = compress(m, set1)
        assert stats.per_pattern[0] == stats.total_chunks
        assert sum(stats.per_pattern[1:]) == 0


class TestRoundTrip:
    def test_sample_matrix(self, sample_matrix, all_sets):
        for pset in all_sets:
            c, stats = compress(sample_matrix, pset)
            assert decompress(c, pset) == sample_matrix
            assert_size_formula(stats, pset)

    @pytest.mark.parametrize("n", [1, 17, 32, 33, 63, 64, 65, 128])
    @pytest.mark.parametrize("p", [0.0, 0.03, 0.5, 1.0])
    def test_grid(self, n, p, all_sets):
        m = generate_er(n, p, seed=n * 1000 + int(p * 100))
        for pset in all_sets:
            c, stats = compress(m, pset)
            assert decompress(c, pset) == m
            assert_size_formula(stats, pset)

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 96), p=st.sampled_from([0.0, 0.02, 0.1, 0.5]),
           seed=st.integers(0, 2**32 - 1), set_id=st.sampled_from([1, 2, 3]))
    def test_random(self, n, p, seed, set_id):
        pset = pattern_set(set_id)
        m = generate_er(n, p, seed)
        c, stats = compress(m, pset)
        assert decompress(c, pset) == m
        assert_size_formula(stats, pset)

    def test_matched_counts_add_up_across_sets(self, all_sets):
        set1, set2, set3 = all_sets
        matrices = [
            generate_er(96, 0.02, seed=1),
            generate_er(128, 0.2, seed=2),
            generate_chunk_mix(ChunkMixSpec(256, 0.4, 0.3, 0.2, seed=3)),
            BitMatrix.zeros(40),
        ]
        for m in matrices:
            matched = {pset.id: compress(m, pset)[1].matched for pset in all_sets}
            assert matched[3] == matched[1] + matched[2]


class TestChunking:
    def test_row_padding_round_trips(self):
        m = generate_er(45, 0.3, seed=9)
        chunks = matrix_chunks(m)
        assert chunks.size == 45 * chunks_per_row(45) == 90
        assert chunks_to_matrix(chunks, 45) == m

    def test_pad_bits_are_zero(self):
        m = generate_er(33, 1.0, seed=0)
        chunks = matrix_chunks(m)
        # odd chunks carry only the row's final bit, padded with 31 zeros
        assert (chunks[1::2] == 1 << 31).all()


class TestDecompressStreams:
    def test_single_matched_chunk_stream(self, set1):
        # flag 1 + indicator 00000, padded: one all-zero chunk for n=1
        c = CompressedGraph(1, 1, 32, bytes([0b10000000]), 6)
        assert decompress(c, set1) == BitMatrix.zeros(1)

    def test_single_raw_chunk_stream(self, set1):
        # flag 0, then raw chunk 10000... : bit (0, 0) set for n=1
        payload = bytes([0b01000000, 0, 0, 0, 0])
        c = CompressedGraph(1, 1, 32, payload, 33)
        m = decompress(c, set1)
        assert m.get(0, 0) == 1 and m.popcount() == 1

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            CompressedGraph(0, 1, 32, b"", 0)

    def test_rejects_payload_length_mismatch(self):
        with pytest.raises(ValueError):
            CompressedGraph(1, 1, 32, bytes(2), 6)

    def test_pattern_set_mismatch(self, set1, set2):
        c, _ = compress(BitMatrix.zeros(32), set1)
        with pytest.raises(FormatError):
            decompress(c, set2)

    def test_truncated_mid_field(self, set1):
        # flag says matched but only 4 of 6 bits are present
        c = CompressedGraph(1, 1, 32, bytes([0b10000000]), 4)
        with pytest.raises(TruncationError):
            decompress(c, set1)

    def test_stream_ends_before_all_chunks(self, set1):
        # n=32 needs 32 chunks; supply only one
        c = CompressedGraph(32, 1, 32, bytes([0b10000000]), 6)
        with pytest.raises(TruncationError):
            decompress(c, set1)

    def test_trailing_bits_rejected(self, set1):
        # n=1 consumes 6 bits; 6 more are left over
        c = CompressedGraph(1, 1, 32, bytes([0b10000010, 0b00000000]), 12)
        with pytest.raises(CorruptStreamError):
            decompress(c, set1)

    def test_indicator_out_of_range(self):
        # 3-entry dictionary: 2-bit indicators, value 3 is unused
        pset = PatternSet(1, [0, 1 << 31, 1 << 30])
        assert pset.indicator_bits == 2
        c = CompressedGraph(1, 1, 32, bytes([0b11100000]), 3)
        with pytest.raises(CorruptStreamError):
            decompress(c, pset)


class TestScanStats:
    def test_matches_compress_stats(self, all_sets):
        m = generate_er(128, 0.05, seed=31)
        for pset in all_sets:
            c, stats = compress(m, pset)
            assert scan_stats(c, pset) == stats

    def test_detects_trailing_bits(self, set1):
        c = CompressedGraph(1, 1, 32, bytes([0b10000010, 0b00000000]), 12)
        with pytest.raises(CorruptStreamError):
            scan_stats(c, set1)


class TestQueryEdge:
    def test_all_zero(self, set1):
        c, _ = compress(BitMatrix.zeros(64), set1)
        assert query_edge(c, set1, 0, 0) == 0
        assert query_edge(c, set1, 63, 63) == 0

    def test_single_edge(self, set1):
        from gpmc import EdgeList, from_edge_list
        m = from_edge_list(EdgeList(64, [(0, 0)]))
        c, _ = compress(m, set1)
        assert query_edge(c, set1, 0, 0) == 1
        assert query_edge(c, set1, 0, 1) == 0

    def test_agrees_with_full_decode(self, all_sets):
        m = generate_er(40, 0.08, seed=23)
        for pset in all_sets:
            c, _ = compress(m, pset)
            full = decompress(c, pset)
            for i in range(40):
                for j in range(40):
                    assert query_edge(c, pset, i, j) == full.get(i, j)

    def test_bounds(self, set1):
        c, _ = compress(BitMatrix.zeros(8), set1)
        with pytest.raises(IndexError):
            query_edge(c, set1, 8, 0)
        with pytest.raises(IndexError):
            query_edge(c, set1, 0, -1)
