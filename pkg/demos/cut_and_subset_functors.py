"""Cuts, retractions, and the subset categories.

A cut of [n] is a monotone surjection onto [1], so there are exactly n
of them; precomposition makes the cut sets functorial in the ordinal,
with non-surjective maps collapsing to the basepoint.  Retraction sets
of edges sit inside the cut sets and pull back along that action.  The
subset categories built on a finite ground set have power-of-five
morphism counts: a map fixes or kills each point, independently.
"""

from qcat.gammastr import (L_of, L_restriction, lam, retraction_set,
                           u_functoriality_report, u_on_objects)
from qcat.ordmaps import all_maps


def cut_counts():
    print("cut counts |u([n])| = n")
    for n in range(7):
        print(f"  n = {n}: {len(u_on_objects(n))}")


def retractions():
    print("\nretraction sets for edges of [2]")
    for alpha in all_maps(1, 2):
        rho = retraction_set(2, alpha)
        print(f"  edge {alpha.values}: {len(rho)} retraction(s) {sorted(rho)}")


def functoriality():
    rep = u_functoriality_report(4)
    print(f"\ncut action functoriality through arity 4: "
          f"{rep.checked} composable pairs, {len(rep.failures)} failures")


def subset_categories():
    print("\nsubset categories on small ground sets")
    for k in range(4):
        ground = frozenset(range(k))
        cat = L_of(ground)
        print(f"  |ground| = {k}: {len(cat.objects)} objects, "
              f"{len(cat.morph)} morphisms")
    # restricting along an inclusion takes preimages of subsets
    phi = lam(frozenset({0}), frozenset({0, 1}), {0: 0})
    res = L_restriction(phi)
    moved = {s: res.on_objects[s] for s in res.source.objects}
    print(f"  preimages along {{0}} -> {{0,1}}: {moved}")


if __name__ == "__main__":
    cut_counts()
    retractions()
    functoriality()
    subset_categories()
