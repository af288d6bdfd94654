"""Twisted arrow categories over a small corpus.

Objects are morphisms, maps are two-sided factorizations.  Two facts get
checked on every category in the corpus: the nerve of the twisted arrow
category is level-for-level the edgewise resampling of the nerve, and
projecting a twisted arrow to its endpoints lifts left horns uniquely.
"""

from qcat.fincat import (corpus, nerve_map, nerve_twisted_vs_edgewise,
                         twisted_arrow, twisted_projection)
from qcat.simpset import left_fibration_check

if __name__ == "__main__":
    for name, c in corpus().items():
        tw = twisted_arrow(c)
        ok, _ = nerve_twisted_vs_edgewise(c, 3)
        shadow = nerve_map(twisted_projection(c), 3)
        fib, _ = left_fibration_check(shadow, 3)
        print(f"{name:12s}  |C| = {len(c.objects)}/{len(c.morph)}  "
              f"|Tw C| = {len(tw.objects)}/{len(tw.morph)}  "
              f"edgewise match: {ok}  left fibration: {fib}")
