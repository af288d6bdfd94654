"""Which ordinal words act as subdivisions?

A word built from the tokens `op` and `id` sends [n] to a join of
copies of [n] (reversed where the token says so); pulling a simplicial
set back along it resamples every simplex.  The test below restricts
each standard simplex through the word and certifies the result
contractible, which is the whole content of being a subdivision at this
scale.  Constant words fail immediately: they tear the simplex into a
discrete set.
"""

from itertools import product

from qcat.delta import (ConstWord, JoinWord, edgewise,
                        edgewise_structure_map, is_combinatorial_subdivision)
from qcat.fincat import chain_poset, nerve
from qcat.simpset import left_fibration_check


def sweep():
    print("word sweep, m <= 3, certificates through depth 3")
    for k in (1, 2, 3):
        for tokens in product(("op", "id"), repeat=k):
            verdict = is_combinatorial_subdivision(JoinWord(tokens), 3,
                                                   depth=4)
            print(f"  {','.join(tokens):10s} -> {verdict.status}")
    verdict = is_combinatorial_subdivision(ConstWord(0), 3, depth=4)
    witness = verdict.certificate(verdict.witness_m)
    print(f"  const:0    -> {verdict.status} "
          f"(m = {verdict.witness_m}, {witness.reason})")


def doubled_interval():
    # the op,id word is the edgewise subdivision; on a nerve it doubles
    # the simplices and the structure map lands in source x target pairs
    x = nerve(chain_poset(1), 7)
    sub = edgewise(x, 3)
    print("\nedgewise subdivision of the interval nerve")
    print(f"  level sizes: {[len(sub.nondeg(n)) for n in range(3)]}")
    ok, bad = left_fibration_check(edgewise_structure_map(x, 3), 3)
    print(f"  structure map lifts left horns uniquely: {ok}"
          + ("" if ok else f" ({bad})"))


if __name__ == "__main__":
    sweep()
    doubled_interval()
