"""Finite categories presented by explicit composition tables.

Everything here is small enough to verify exhaustively: axioms, functor
laws, twisted arrow categories, comma categories, and the nerve.  The
nerve detects on its own when a category has no composable strings of
nonidentity morphisms beyond some length, in which case the simplicial
set it returns is complete; otherwise a truncation depth is required.
"""

from __future__ import annotations

from dataclasses import dataclass

from .delta import EDGEWISE
from .ordmaps import DeltaMap
from .simpset import LevelModel, SimplicialMap, SimplicialSet


class FiniteCategory:
    def __init__(self, objects, morphisms, identity, compose_table):
        """morphisms: id -> (src, dst); identity: object -> id;
        compose_table: (g, f) -> g after f, for dst(f) = src(g)."""
        self.objects = tuple(objects)
        self.morph = dict(morphisms)
        self.identity = dict(identity)
        self.compose_table = dict(compose_table)

    def morphisms(self):
        return sorted(self.morph, key=repr)

    def src(self, m):
        return self.morph[m][0]

    def dst(self, m):
        return self.morph[m][1]

    def is_identity(self, m) -> bool:
        return self.identity.get(self.src(m)) == m and self.src(m) == self.dst(m)

    def hom(self, x, y):
        return [m for m in self.morphisms() if self.morph[m] == (x, y)]

    def compose(self, g, f):
        """g after f."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise KeyError(f"no composite for {g!r} after {f!r}")

    def __repr__(self):
        return (f"<FiniteCategory {len(self.objects)} objects, "
                f"{len(self.morph)} morphisms>")


def check_axioms(c: FiniteCategory) -> list[str]:
    """Exhaustive axiom check; returns violation descriptions, [] if fine."""
    problems = []
    for x in c.objects:
        e = c.identity.get(x)
        if e is None or e not in c.morph:
            problems.append(f"object {x!r} has no identity morphism")
        elif c.morph[e] != (x, x):
            problems.append(f"identity of {x!r} is not an endomorphism of it")
    for m, (s, t) in c.morph.items():
        if s not in c.objects or t not in c.objects:
            problems.append(f"morphism {m!r} has unknown endpoints")
    for g in c.morph:
        for f in c.morph:
            composable = c.dst(f) == c.src(g)
            present = (g, f) in c.compose_table
            if composable and not present:
                problems.append(f"missing composite {g!r} after {f!r}")
            if present and not composable:
                problems.append(f"composite defined for non-composable {g!r}, {f!r}")
            if present:
                gf = c.compose_table[(g, f)]
                if gf not in c.morph:
                    problems.append(f"composite {g!r} after {f!r} is unknown")
                elif composable and c.morph[gf] != (c.src(f), c.dst(g)):
                    problems.append(f"composite {g!r} after {f!r} has wrong endpoints")
    if problems:
        return problems
    for f in c.morph:
        if c.compose((c.identity[c.dst(f)]), f) != f:
            problems.append(f"left unit law fails at {f!r}")
        if c.compose(f, c.identity[c.src(f)]) != f:
            problems.append(f"right unit law fails at {f!r}")
    for h in c.morph:
        for g in c.morph:
            if c.dst(g) != c.src(h):
                continue
            hg = c.compose(h, g)
            for f in c.morph:
                if c.dst(f) != c.src(g):
                    continue
                if c.compose(hg, f) != c.compose(h, c.compose(g, f)):
                    problems.append(f"associativity fails at ({h!r}, {g!r}, {f!r})")
    return problems


def require_category(c: FiniteCategory):
    problems = check_axioms(c)
    if problems:
        raise ValueError("; ".join(problems[:3]))


def opposite_cat(c: FiniteCategory) -> FiniteCategory:
    return FiniteCategory(
        c.objects,
        {m: (t, s) for m, (s, t) in c.morph.items()},
        c.identity,
        {(g, f): c.compose_table[(f, g)] for (f, g) in c.compose_table},
    )


def product_category(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    objects = [(x, y) for x in c.objects for y in d.objects]
    morph = {(m, n): ((c.src(m), d.src(n)), (c.dst(m), d.dst(n)))
             for m in c.morph for n in d.morph}
    identity = {(x, y): (c.identity[x], d.identity[y]) for x, y in objects}
    table = {}
    for (g1, f1), gf1 in c.compose_table.items():
        for (g2, f2), gf2 in d.compose_table.items():
            table[((g1, g2), (f1, f2))] = (gf1, gf2)
    return FiniteCategory(objects, morph, identity, table)


@dataclass
class FunctorData:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: dict
    on_morphisms: dict

    def __post_init__(self):
        problems = self.check()
        if problems:
            raise ValueError("; ".join(problems[:3]))

    def check(self) -> list[str]:
        problems = []
        for x in self.source.objects:
            if self.on_objects.get(x) not in self.target.objects:
                problems.append(f"object {x!r} has no image")
        for m in self.source.morph:
            img = self.on_morphisms.get(m)
            if img not in self.target.morph:
                problems.append(f"morphism {m!r} has no image")
                continue
            want = (self.on_objects[self.source.src(m)],
                    self.on_objects[self.source.dst(m)])
            if self.target.morph[img] != want:
                problems.append(f"image of {m!r} has wrong endpoints")
        if problems:
            return problems
        for x in self.source.objects:
            if self.on_morphisms[self.source.identity[x]] != \
                    self.target.identity[self.on_objects[x]]:
                problems.append(f"identity of {x!r} not preserved")
        for (g, f), gf in self.source.compose_table.items():
            lhs = self.on_morphisms[gf]
            rhs = self.target.compose(self.on_morphisms[g], self.on_morphisms[f])
            if lhs != rhs:
                problems.append(f"composition not preserved at ({g!r}, {f!r})")
        return problems

    @staticmethod
    def identity_functor(c: FiniteCategory) -> "FunctorData":
        return FunctorData(c, c, {x: x for x in c.objects},
                           {m: m for m in c.morph})


# -- nerve ---------------------------------------------------------------


def nerve_act(c: FiniteCategory, f: DeltaMap, token):
    """Contravariant action of a monotone map on a composable string.

    The token lives at level f.target_arity: an object when that is 0, a
    tuple of morphism ids otherwise (so tuple-valued object names stay
    unambiguous).
    """
    n = f.target_arity

    def vertex(j):
        if n == 0:
            return token
        return c.src(token[0]) if j == 0 else c.dst(token[j - 1])

    a = f.source_arity
    if a == 0:
        return vertex(f(0))
    out = []
    for k in range(1, a + 1):
        lo, hi = f(k - 1), f(k)
        if lo == hi:
            out.append(c.identity[vertex(lo)])
        else:
            seg = token[lo]
            for t in range(lo + 1, hi):
                seg = c.compose(token[t], seg)
            out.append(seg)
    return tuple(out)


def _nerve_levels(c: FiniteCategory, n: int):
    if n == 0:
        return list(c.objects)
    strings = [(m,) for m in c.morphisms()]
    for _ in range(n - 1):
        strings = [s + (m,) for s in strings for m in c.morphisms()
                   if c.dst(s[-1]) == c.src(m)]
    return strings


def _identity_free_count(c: FiniteCategory, n: int) -> int:
    nonid = [m for m in c.morphisms() if not c.is_identity(m)]
    count = {m: 1 for m in nonid}
    for _ in range(n - 1):
        nxt = {}
        for m in nonid:
            nxt[m] = sum(count[f] for f in nonid if c.dst(f) == c.src(m))
        count = nxt
    return sum(count.values()) if n >= 1 else len(c.objects)


def nerve_model(c: FiniteCategory, depth: int | None = None) -> LevelModel:
    """Level model of the nerve; detects completeness when strings of
    nonidentity morphisms die out, otherwise truncates at `depth`."""
    require_category(c)
    cap = depth if depth is not None else len(c.morph) + 1
    complete_at = None
    for n in range(1, cap + 1):
        if _identity_free_count(c, n) == 0:
            complete_at = n - 1
            break
    if complete_at is not None:
        max_dim, trunc = complete_at, None
    elif depth is not None:
        max_dim, trunc = depth, depth
    else:
        raise ValueError(
            "category has arbitrarily long composable strings; "
            "pass an explicit nerve depth")
    return LevelModel(
        levels=lambda n: _nerve_levels(c, n),
        act=lambda f, t: nerve_act(c, f, t),
        max_dim=max_dim,
        truncation=trunc,
    )


def nerve(c: FiniteCategory, depth: int | None = None) -> SimplicialSet:
    return nerve_model(c, depth).compile().space


def nerve_map(fun: FunctorData, depth: int | None = None) -> SimplicialMap:
    src_model = nerve_model(fun.source, depth)
    src = src_model.compile()
    dst_model = nerve_model(fun.target, depth)
    # the image of a long identity-free string can involve identities, so
    # the target model must be compiled at least as deep as the source
    if dst_model.max_dim < src_model.max_dim:
        dst_model = LevelModel(dst_model.levels, dst_model.act,
                               src_model.max_dim, dst_model.truncation)
    dst = dst_model.compile()

    def push(token, n):
        if n == 0:
            return fun.on_objects[token]
        return tuple(fun.on_morphisms[m] for m in token)

    assignment = {}
    for name, n in src.space.dims.items():
        assignment[name] = dst.value_of_token(n, push(src.token_of[name], n))
    return SimplicialMap(src.space, dst.space, assignment)


# -- twisted arrows -------------------------------------------------------


def twisted_arrow(c: FiniteCategory) -> FiniteCategory:
    """Objects are morphisms of c; a morphism f -> g is a factorization
    g = b f a, recorded as (a, f, b); the a-leg composes contravariantly."""
    require_category(c)
    objects = tuple(c.morphisms())
    morph = {}
    identity = {}
    for f in objects:
        for a in c.morphisms():
            if c.dst(a) != c.src(f):
                continue
            for b in c.morphisms():
                if c.src(b) != c.dst(f):
                    continue
                g = c.compose(b, c.compose(f, a))
                morph[(a, f, b)] = (f, g)
        identity[f] = (c.identity[c.src(f)], f, c.identity[c.dst(f)])
    table = {}
    for (a2, g, b2), (g_src, _) in morph.items():
        for (a1, f, b1), (_, f_dst) in morph.items():
            if f_dst == g_src:
                table[((a2, g, b2), (a1, f, b1))] = \
                    (c.compose(a1, a2), f, c.compose(b2, b1))
    return FiniteCategory(objects, morph, identity, table)


def twisted_projection(c: FiniteCategory) -> FunctorData:
    """The functor Tw(c) -> c^op x c remembering source and target."""
    tw = twisted_arrow(c)
    prod = product_category(opposite_cat(c), c)
    on_objects = {f: (c.src(f), c.dst(f)) for f in tw.objects}
    on_morphisms = {(a, f, b): (a, b) for (a, f, b) in tw.morph}
    return FunctorData(tw, prod, on_objects, on_morphisms)


def nerve_twisted_vs_edgewise(c: FiniteCategory, depth: int = 3):
    """Verify the canonical level-wise bijection between strings in the
    twisted arrow category and (2n+1)-strings in c, including its
    compatibility with every elementary face and degeneracy map.

    The n-th twisted level (t_1, ..., t_n) with t_k = (a_k, f_(k-1), b_k)
    flattens to (a_n, ..., a_1, f_0, b_1, ..., b_n).  Returns (True, None)
    or (False, witness).
    """
    require_category(c)
    tw = twisted_arrow(c)

    def flatten(token, n):
        if n == 0:
            return (token,)
        legs_a = [t[0] for t in token]
        legs_b = [t[2] for t in token]
        f0 = token[0][1]
        return tuple(reversed(legs_a)) + (f0,) + tuple(legs_b)

    for n in range(depth + 1):
        tw_tokens = _nerve_levels(tw, n)
        nc_tokens = _nerve_levels(c, 2 * n + 1)
        images = [flatten(t, n) for t in tw_tokens]
        if len(set(images)) != len(images):
            return False, f"flattening not injective at level {n}"
        if sorted(images, key=repr) != sorted(nc_tokens, key=repr):
            return False, (f"level {n}: {len(images)} twisted strings vs "
                           f"{len(nc_tokens)} long strings")
        maps = [DeltaMap.coface(i, n) for i in range(n + 1)] if n >= 1 else []
        maps += [DeltaMap.codegeneracy(j, n) for j in range(n + 1)]
        for token in tw_tokens:
            for g in maps:
                lhs = flatten(nerve_act(tw, g, token), g.source_arity)
                rhs = nerve_act(c, EDGEWISE.apply_map(g), flatten(token, n))
                if lhs != rhs:
                    return False, (f"level {n}: map {g.values} disagrees "
                                   f"at {token!r}")
    return True, None


# -- comma categories ------------------------------------------------------


def comma(fun: FunctorData, x, coslice: bool = False) -> FiniteCategory:
    """Slice form: objects (c, h: F c -> x); coslice: (c, h: x -> F c).
    Morphisms are source morphisms making the triangle commute."""
    cc, d = fun.source, fun.target
    if x not in d.objects:
        raise ValueError(f"{x!r} is not an object of the target")
    objects = []
    for c0 in cc.objects:
        fc = fun.on_objects[c0]
        arrows = d.hom(x, fc) if coslice else d.hom(fc, x)
        objects.extend((c0, h) for h in arrows)
    morph = {}
    identity = {}
    for (c0, h) in objects:
        for (c1, h1) in objects:
            for u in cc.hom(c0, c1):
                fu = fun.on_morphisms[u]
                ok = (d.compose(fu, h) == h1) if coslice else \
                     (d.compose(h1, fu) == h)
                if ok:
                    morph[(u, h, h1)] = ((c0, h), (c1, h1))
        identity[(c0, h)] = (cc.identity[c0], h, h)
    table = {}
    for m2, (s2, t2) in morph.items():
        for m1, (s1, t1) in morph.items():
            if t1 == s2:
                table[(m2, m1)] = (cc.compose(m2[0], m1[0]), m1[1], m2[2])
    return FiniteCategory(objects, morph, identity, table)


# -- fixture corpus --------------------------------------------------------


def chain_poset(n: int) -> FiniteCategory:
    objects = list(range(n + 1))
    morph = {f"{i}->{j}": (i, j) for i in objects for j in objects if i <= j}
    identity = {i: f"{i}->{i}" for i in objects}
    table = {}
    for i in objects:
        for j in objects:
            for k in objects:
                if i <= j <= k:
                    table[(f"{j}->{k}", f"{i}->{j}")] = f"{i}->{k}"
    return FiniteCategory(objects, morph, identity, table)


def cyclic_group_category(k: int) -> FiniteCategory:
    morph = {f"r{a}": ("*", "*") for a in range(k)}
    table = {(f"r{a}", f"r{b}"): f"r{(a + b) % k}"
             for a in range(k) for b in range(k)}
    return FiniteCategory(("*",), morph, {"*": "r0"}, table)


def parallel_pair() -> FiniteCategory:
    morph = {"ida": ("a", "a"), "idb": ("b", "b"),
             "f": ("a", "b"), "g": ("a", "b")}
    table = {}
    for m, (s, t) in morph.items():
        table[(m, "ida" if s == "a" else "idb")] = m
        table[("ida" if t == "a" else "idb", m)] = m
    # thanks to the identity rows above the table is already total
    return FiniteCategory(("a", "b"), morph, {"a": "ida", "b": "idb"}, table)


def discrete_category(k: int) -> FiniteCategory:
    objects = list(range(k))
    morph = {f"id{i}": (i, i) for i in objects}
    table = {(f"id{i}", f"id{i}"): f"id{i}" for i in objects}
    return FiniteCategory(objects, morph, {i: f"id{i}" for i in objects}, table)


def corpus() -> dict[str, FiniteCategory]:
    """The regression fixtures: every category with at most 12 morphisms
    that the comparison theorems are exercised on."""
    return {
        "poset_0<1": chain_poset(1),
        "poset_0<1<2": chain_poset(2),
        "bz2": cyclic_group_category(2),
        "parallel_pair": parallel_pair(),
        "discrete_3": discrete_category(3),
        "bz3": cyclic_group_category(3),
    }
