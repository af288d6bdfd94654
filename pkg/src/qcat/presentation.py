"""Finite group presentations with Tietze simplification.

Words are tuples of (generator, exponent) letters with exponent +1 or -1.
Relators are kept cyclically reduced.  Simplification repeatedly eliminates
a generator that appears exactly once in some relator; that move never
changes the group, so invariants such as the abelianization are preserved
and a presentation that shrinks to no generators certifies triviality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .snf import smith_diagonal, torsion_from_diagonal

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def free_reduce(word) -> Word:
    out: list[Letter] = []
    for gen, exp in word:
        if exp not in (1, -1):
            raise ValueError("letters carry exponent +1 or -1")
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def invert_word(word) -> Word:
    return tuple((gen, -exp) for gen, exp in reversed(word))


def cyclic_reduce(word) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def _substitute(word: Word, gen: str, replacement: Word) -> Word:
    rep_inv = invert_word(replacement)
    out: list[Letter] = []
    for g, e in word:
        if g != gen:
            out.append((g, e))
        elif e == 1:
            out.extend(replacement)
        else:
            out.extend(rep_inv)
    return free_reduce(tuple(out))


def _cyclic_key(word: Word):
    """Smallest rotation of the word or its inverse, for deduplication."""
    best = None
    for w in (word, invert_word(word)):
        for k in range(max(1, len(w))):
            rot = w[k:] + w[:k]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generators")
        known = set(self.generators)
        for rel in self.relators:
            for gen, exp in rel:
                if gen not in known:
                    raise ValueError(f"relator mentions unknown generator {gen!r}")
                if exp not in (1, -1):
                    raise ValueError("letters carry exponent +1 or -1")

    @staticmethod
    def build(generators, relators) -> "GroupPresentation":
        rels = []
        seen = set()
        for rel in relators:
            w = cyclic_reduce(tuple(rel))
            if not w:
                continue
            key = _cyclic_key(w)
            if key in seen:
                continue
            seen.add(key)
            rels.append(w)
        return GroupPresentation(tuple(generators), tuple(rels))

    def abelianization(self) -> tuple[int, list[int]]:
        """(free rank, torsion orders) of the abelianized group."""
        gens = sorted(self.generators)
        col = {g: i for i, g in enumerate(gens)}
        rows = []
        for rel in self.relators:
            r = [0] * len(gens)
            for g, e in rel:
                r[col[g]] += e
            rows.append(r)
        diag = smith_diagonal(rows, len(gens))
        rank = len(gens) - len(diag)
        return rank, torsion_from_diagonal(diag)

    def simplified(self, budget: int = 10000) -> "GroupPresentation":
        """Eliminate generators occurring exactly once in some relator.

        Deterministic: scans relators shortest-first and generators in name
        order.  `budget` caps the number of elimination passes, so the call
        terminates even on adversarial growth.
        """
        gens = sorted(self.generators)
        rels = [cyclic_reduce(r) for r in self.relators]
        steps = 0
        while steps < budget:
            rels = _tidy(rels)
            move = _find_elimination(gens, rels)
            if move is None:
                break
            gen, rel_idx = move
            rel = rels.pop(rel_idx)
            replacement = _solve_for(rel, gen)
            gens.remove(gen)
            rels = [cyclic_reduce(_substitute(r, gen, replacement)) for r in rels]
            steps += 1
        rels = _tidy(rels)
        return GroupPresentation(tuple(gens), tuple(rels))

    def is_recognizably_trivial(self, budget: int = 10000) -> bool:
        return not self.simplified(budget).generators


def _tidy(rels: list[Word]) -> list[Word]:
    out = []
    seen = set()
    for rel in rels:
        if not rel:
            continue
        key = _cyclic_key(rel)
        if key not in seen:
            seen.add(key)
            out.append(rel)
    return out


def _find_elimination(gens: list[str], rels: list[Word]):
    order = sorted(range(len(rels)), key=lambda i: (len(rels[i]), rels[i]))
    for i in order:
        counts: dict[str, int] = {}
        for g, _ in rels[i]:
            counts[g] = counts.get(g, 0) + 1
        once = sorted(g for g, c in counts.items() if c == 1)
        if once:
            return once[0], i
    return None


def _solve_for(rel: Word, gen: str) -> Word:
    """Rotate `rel` to start with gen^e, then read off gen = (rest)^(-e)."""
    pos = next(i for i, (g, _) in enumerate(rel) if g == gen)
    rot = rel[pos:] + rel[:pos]
    _, e = rot[0]
    rest = rot[1:]
    return invert_word(rest) if e == 1 else tuple(rest)
