from hypothesis import given, settings, strategies as st

from affsymp.words import (
    merge_with_sign,
    sort_with_sign,
    tensor_dim,
    tensor_index,
    tensor_word_at,
    tensor_words,
    wedge_dim,
    wedge_index,
    wedge_word_at,
    wedge_words,
)


class TestWedgeRanking:
    def test_enumeration_matches_index(self):
        for dim in (3, 5, 6):
            for k in range(dim + 1):
                for i, word in enumerate(wedge_words(dim, k)):
                    assert wedge_index(word, dim) == i
                    assert wedge_word_at(i, dim, k) == word

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 12), st.data())
    def test_round_trip(self, dim, data):
        k = data.draw(st.integers(0, dim))
        index = data.draw(st.integers(0, wedge_dim(dim, k) - 1))
        word = wedge_word_at(index, dim, k)
        assert len(word) == k
        assert all(a < b for a, b in zip(word, word[1:]))
        assert wedge_index(word, dim) == index


class TestTensorRanking:
    def test_enumeration_matches_index(self):
        for dim in (2, 3):
            for k in range(4):
                for i, word in enumerate(tensor_words(dim, k)):
                    assert tensor_index(word, dim) == i
                    assert tensor_word_at(i, dim, k) == word

    def test_dim(self):
        assert tensor_dim(5, 3) == 125


class TestSigns:
    def test_sort_sign_matches_inversions(self):
        word = (2, 0, 1)
        sorted_word, sign = sort_with_sign(word)
        assert sorted_word == (0, 1, 2)
        assert sign == 1  # two inversions

    def test_sort_detects_repeats(self):
        assert sort_with_sign((1, 1)) == (None, 0)

    def test_merge_sign(self):
        merged, sign = merge_with_sign((0, 2), (1, 3))
        assert merged == (0, 1, 2, 3)
        assert sign == -1  # moving 1 past one element
        assert merge_with_sign((0, 1), (1, 2)) == (None, 0)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 9), min_size=0, max_size=6))
    def test_sort_sign_consistency(self, letters):
        word = tuple(letters)
        sorted_word, sign = sort_with_sign(word)
        if len(set(letters)) != len(letters):
            assert sorted_word is None and sign == 0
        else:
            inversions = sum(
                1
                for i in range(len(word))
                for j in range(i + 1, len(word))
                if word[i] > word[j]
            )
            assert sorted_word == tuple(sorted(word))
            assert sign == (-1) ** inversions
