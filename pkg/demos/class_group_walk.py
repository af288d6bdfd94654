"""From spans to class groups, the long way around.

The span category on an instance has morphisms X <- U -> Y with an
epi onto X and a mono into Y, taken up to a unique leg-compatible
isomorphism of U.  Its nerve is a connected complex whose fundamental
group abelianizes to the class group: each object contributes a loop,
each short exact sequence a relation.  For the one-dimensional vector
space instance the count is small enough to print in full.
"""

from qcat.exact import parse_instance
from qcat.fincat import nerve
from qcat.qcons import abelian_label, k0, q_category, segal_spine_check


def span_census(desc):
    inst = parse_instance(desc)
    c = q_category(inst).category
    print(f"{desc}: span category has {len(c.objects)} objects, "
          f"{len(c.morph)} morphisms")
    for x in c.objects:
        for y in c.objects:
            n = len(c.hom(x, y))
            if n:
                print(f"  hom({inst.label(x)}, {inst.label(y)}) has {n}")
    ns = nerve(c, 3)
    line = ", ".join(f"H_{d} = {abelian_label(b, t)}"
                     for d, (b, t) in enumerate(ns.homology(1)))
    print(f"  nerve homology: {line}")


def class_groups():
    print("\nclass group labels read off the abelianized edge-path group")
    for desc in ["vect:2:1", "vect:2:2", "abp:2:4"]:
        rep = k0(parse_instance(desc), 3)
        print(f"  k0({desc}) = {rep.label}  "
              f"(raw presentation: {len(rep.raw_presentation.generators)} "
              f"generators, {len(rep.raw_presentation.relators)} relators)")


def spine_counts():
    print("\ndiagram classes against composable strings")
    for desc in ["vect:2:1", "abp:2:4"]:
        inst = parse_instance(desc)
        for n in range(3):
            rep = segal_spine_check(inst, n)
            tick = "==" if rep.passed else "!="
            print(f"  {desc} n = {n}: {rep.diagram_classes} "
                  f"{tick} {rep.composable_strings}")


if __name__ == "__main__":
    span_census("vect:2:1")
    class_groups()
    spine_counts()
