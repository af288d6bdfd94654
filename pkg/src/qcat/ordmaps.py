"""Monotone maps between finite ordinals [n] = {0 < 1 < ... < n}.

These are the arrows of the simplex category.  Every monotone map factors
uniquely as a monotone surjection followed by a monotone injection, and
each of those factors into elementary collapses and skips.  That
factorization is what lets a combinatorially presented simplicial set act
on formal (degeneracy word, cell) values with nothing but face records.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement


@dataclass(frozen=True)
class DeltaMap:
    """A monotone map [source_arity] -> [target_arity], stored by its images."""

    source_arity: int
    target_arity: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.source_arity < 0 or self.target_arity < 0:
            raise ValueError("ordinals [n] need n >= 0")
        if len(self.values) != self.source_arity + 1:
            raise ValueError("value tuple does not match source arity")
        prev = 0
        for v in self.values:
            if v < prev or v > self.target_arity:
                raise ValueError(f"not a monotone map into [{self.target_arity}]: {self.values}")
            prev = v

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "DeltaMap") -> "DeltaMap":
        """self o other, defined when other lands in self's source."""
        if other.target_arity != self.source_arity:
            raise ValueError("arity mismatch in composition")
        return DeltaMap(other.source_arity, self.target_arity,
                        tuple(self.values[v] for v in other.values))

    @staticmethod
    def identity(n: int) -> "DeltaMap":
        return DeltaMap(n, n, tuple(range(n + 1)))

    @staticmethod
    def coface(i: int, n: int) -> "DeltaMap":
        """The injection [n-1] -> [n] that skips i."""
        if not 0 <= i <= n or n < 1:
            raise ValueError(f"no coface {i} into [{n}]")
        return DeltaMap(n - 1, n, tuple(v for v in range(n + 1) if v != i))

    @staticmethod
    def codegeneracy(j: int, n: int) -> "DeltaMap":
        """The surjection [n+1] -> [n] that repeats j."""
        if not 0 <= j <= n:
            raise ValueError(f"no codegeneracy {j} onto [{n}]")
        return DeltaMap(n + 1, n, tuple(list(range(j + 1)) + list(range(j, n + 1))))

    def reversed(self) -> "DeltaMap":
        """Conjugate by the order reversal on both ends: i |-> b - f(a - i)."""
        a, b = self.source_arity, self.target_arity
        return DeltaMap(a, b, tuple(b - self.values[a - i] for i in range(a + 1)))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_arity + 1))

    def misses(self) -> tuple[int, ...]:
        hit = set(self.values)
        return tuple(v for v in range(self.target_arity + 1) if v not in hit)

    def doubles(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.source_arity) if self.values[i] == self.values[i + 1])

    def elementary_ops(self) -> tuple[tuple[str, int], ...]:
        """Contravariant action of this map as elementary face/degeneracy steps.

        A simplicial object X sends self: [a] -> [b] to X(self): X_b -> X_a.
        Returned ops are in application order: first faces d_i for every value
        missed by the image (largest first), then degeneracies s_j for every
        doubled position (smallest first).
        """
        ops = [("d", v) for v in reversed(self.misses())]
        ops += [("s", j) for j in self.doubles()]
        return tuple(ops)


def all_maps(a: int, b: int):
    """All monotone maps [a] -> [b], in lexicographic order of value tuples."""
    for values in combinations_with_replacement(range(b + 1), a + 1):
        yield DeltaMap(a, b, values)


def surjection_of_word(word: tuple[int, ...], n: int) -> DeltaMap:
    """The surjection [n] ->> [n - len(word)] named by a degeneracy word.

    `word` lists indices of s_{j} operators, leftmost applied last, so the
    map is codegeneracy(word[-1]) ; ... ; codegeneracy(word[0]) read as a
    composite in the simplex category.
    """
    m = n - len(word)
    f = DeltaMap.identity(m)
    level = m
    for j in reversed(word):
        f = f.compose(DeltaMap.codegeneracy(j, level))
        level += 1
    # the composite above has source [n]
    return DeltaMap(n, m, f.values)
