"""Subset/composition dictionary and the lattice sign convention."""

import pytest

from drincoh.rootdata import (
    ParabolicType,
    cover_sign,
    i_of_I,
    standard_subset,
    subsets_of_size,
)


def all_compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in all_compositions(total - first):
            yield (first,) + rest


def test_to_composition_examples():
    assert ParabolicType.of(2, [0]).to_composition() == (2, 1)
    assert ParabolicType.empty(2).to_composition() == (1, 1, 1)
    assert ParabolicType.full(3).to_composition() == (4,)
    assert ParabolicType.of(3, [0, 2]).to_composition() == (2, 2)
    assert ParabolicType.of(3, [1, 2]).to_composition() == (1, 3)


def test_composition_round_trips():
    for n in range(1, 6):
        for mask in range(1 << n):
            I = ParabolicType(n, mask)
            assert ParabolicType.from_composition(I.to_composition()) == I
        for comp in all_compositions(n + 1):
            assert ParabolicType.from_composition(comp).to_composition() == comp


def test_i_of_I():
    assert i_of_I(ParabolicType.of(2, [0])) == 1
    assert i_of_I(ParabolicType.empty(2)) == 0
    assert i_of_I(ParabolicType.of(3, [0, 1])) == 2
    for n in range(1, 6):
        for j in range(n):
            assert i_of_I(standard_subset(n, j)) == j
    with pytest.raises(ValueError):
        i_of_I(ParabolicType.full(2))


def test_standard_subset_shape():
    assert standard_subset(3, 0) == ParabolicType.empty(3)
    assert standard_subset(3, 2).members == (0, 1)
    assert standard_subset(3, 3) == ParabolicType.full(3)
    assert standard_subset(3, 2).to_composition() == (3, 1)
    with pytest.raises(ValueError):
        standard_subset(3, 4)


def test_subsets_of_size_examples():
    assert subsets_of_size(2, 1) == [ParabolicType.of(2, [0]), ParabolicType.of(2, [1])]
    assert subsets_of_size(2, 2) == []  # the full set is excluded when proper
    assert subsets_of_size(3, 2, containing=ParabolicType.of(3, [0])) == [
        ParabolicType.of(3, [0, 1]),
        ParabolicType.of(3, [0, 2]),
    ]
    assert subsets_of_size(3, 3, proper=False) == [ParabolicType.full(3)]


def test_subsets_of_size_exhaustive_and_ordered():
    for n in range(1, 5):
        for c in range(n + 1):
            got = subsets_of_size(n, c, proper=False)
            expected = sorted(
                (
                    ParabolicType(n, mask)
                    for mask in range(1 << n)
                    if bin(mask).count("1") == c
                ),
            )
            assert got == expected
            assert got == sorted(got)


def test_covering_counts():
    # each proper I is covered by exactly #(Δ∖I) supersets inside the full lattice
    for n in range(1, 5):
        for mask in range((1 << n) - 1):
            I = ParabolicType(n, mask)
            covers = [
                J
                for c in range(n + 1)
                for J in subsets_of_size(n, c, proper=False)
                if J.contains(I) and J.size == I.size + 1
            ]
            assert len(covers) == n - I.size


def test_cover_sign_alternates_over_missing_roots():
    I = ParabolicType.empty(3)
    assert [cover_sign(I, a) for a in range(3)] == [1, -1, 1]
    J = ParabolicType.of(3, [1])
    assert [cover_sign(J, a) for a in (0, 2)] == [1, -1]
    with pytest.raises(ValueError):
        cover_sign(J, 1)


def test_cover_sign_square_identity():
    # removing two roots in either order must produce opposite signs
    for n in range(1, 6):
        for mask in range(1 << n):
            I = ParabolicType(n, mask)
            missing = [a for a in range(n) if not mask >> a & 1]
            for a in missing:
                for b in missing:
                    if a == b:
                        continue
                    first = cover_sign(I.union(b), a) * cover_sign(I, b)
                    second = cover_sign(I.union(a), b) * cover_sign(I, a)
                    assert first == -second


def test_rendering():
    I = ParabolicType.of(2, [0])
    assert I.subset_str() == "{a0}"
    assert I.composition_str() == "(2,1)"
    assert str(I) == "(2,1)"
    assert ParabolicType.empty(2).subset_str() == "{}"


def test_mask_validation():
    with pytest.raises(ValueError):
        ParabolicType(2, 1 << 2)
    with pytest.raises(ValueError):
        ParabolicType(0, 0)
