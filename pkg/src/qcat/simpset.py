"""Finite simplicial sets presented by nondegenerate simplices.

A simplicial set is stored as its nondegenerate simplices plus, for each
one, the ordered list of faces.  Every simplex, degenerate or not, is a
*value*: a pair (word, id) where `word` is a degeneracy word in normal
form (strictly decreasing indices, leftmost letter applied last) and `id`
names a nondegenerate simplex.  The simplicial identities then determine
the action of every monotone map on every value, so finite presentations
support exact computation of chains, homology and the edge-path group.

`truncation` records how much of the set the presentation knows: None
means the listed simplices are all of them; an integer T means dimensions
above T were never enumerated, so degree-sensitive reports stop below T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .ordmaps import DeltaMap
from .presentation import GroupPresentation
from .snf import smith_diagonal, torsion_from_diagonal

Word = tuple[int, ...]
Value = tuple[Word, object]


def insert_degeneracy(i: int, word: Word) -> Word:
    """Normal form of s_i applied on top of an already normal word."""
    if not word or i > word[0]:
        return (i,) + word
    # s_i s_j = s_(j+1) s_i for i <= j: bubble the new letter rightward
    return (word[0] + 1,) + insert_degeneracy(i, word[1:])


def compose_words(outer: Word, inner: Word) -> Word:
    out = inner
    for letter in reversed(outer):
        out = insert_degeneracy(letter, out)
    return out


def op_word(word: Word, n: int) -> Word:
    """Rewrite the degeneracy word of an n-dimensional value for the
    opposite simplicial set: s_j at dimension d becomes s_(d - j).

    Letter t (0-based from the left) acts at dimension n - 1 - t, so it
    reverses to n - 1 - t - word[t]; the letters are re-normalized from
    the innermost outward.
    """
    out: Word = ()
    for t in range(len(word) - 1, -1, -1):
        out = insert_degeneracy(n - 1 - t - word[t], out)
    return out


class SimplicialSet:
    def __init__(self, dims, faces, truncation=None, check: bool = True):
        self.dims = dict(dims)
        self.faces = {x: tuple(fs) for x, fs in faces.items()}
        self.truncation = truncation
        if check:
            self._validate()

    # -- presentation bookkeeping ------------------------------------

    def _validate(self):
        for x, n in self.dims.items():
            if n < 0:
                raise ValueError(f"negative dimension for {x!r}")
            if self.truncation is not None and n > self.truncation:
                raise ValueError(f"{x!r} lives above the truncation level")
            if n == 0:
                if x in self.faces and self.faces[x]:
                    raise ValueError(f"vertex {x!r} with face records")
                continue
            fs = self.faces.get(x)
            if fs is None or len(fs) != n + 1:
                raise ValueError(f"{x!r} needs {n + 1} faces")
            for v in fs:
                self._check_value(v, n - 1)
        for x in self.faces:
            if x not in self.dims:
                raise ValueError(f"face record for unknown simplex {x!r}")
        # d_i d_j = d_(j-1) d_i for i < j
        for x, n in self.dims.items():
            if n < 2:
                continue
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = self.face(self.face_of(x, j), i)
                    rhs = self.face(self.face_of(x, i), j - 1)
                    if lhs != rhs:
                        raise ValueError(f"simplicial identity fails at {x!r}: "
                                         f"d_{i} d_{j} != d_{j - 1} d_{i}")

    def _check_value(self, value, n):
        word, x = value
        if x not in self.dims:
            raise ValueError(f"value names unknown simplex {x!r}")
        if len(word) + self.dims[x] != n:
            raise ValueError(f"value {value!r} is not {n}-dimensional")
        for a, b in zip(word, word[1:]):
            if a <= b:
                raise ValueError(f"degeneracy word not in normal form: {word}")
        if word and word[0] > n - 1:
            raise ValueError(f"degeneracy word out of range: {word}")

    def __eq__(self, other):
        return (isinstance(other, SimplicialSet)
                and self.dims == other.dims
                and self.faces == other.faces
                and self.truncation == other.truncation)

    def __repr__(self):
        counts = {}
        for n in self.dims.values():
            counts[n] = counts.get(n, 0) + 1
        shape = ", ".join(f"{counts[n]}x{n}" for n in sorted(counts))
        trunc = "complete" if self.truncation is None else f"truncated at {self.truncation}"
        return f"<SimplicialSet {shape or 'empty'}; {trunc}>"

    def max_nondeg_dim(self) -> int:
        return max(self.dims.values(), default=-1)

    def nondeg(self, n: int):
        return sorted((x for x, d in self.dims.items() if d == n), key=repr)

    def vertices(self):
        return self.nondeg(0)

    # -- the value algebra -------------------------------------------

    def dim_of(self, value) -> int:
        word, x = value
        return len(word) + self.dims[x]

    def face_of(self, x, i) -> Value:
        """Face record lookup for a nondegenerate simplex id."""
        return self.faces[x][i]

    def face(self, value, i) -> Value:
        """d_i on an arbitrary value, pushing the face through the word."""
        word, x = value
        letters = []
        cur = i
        for pos, j in enumerate(word):
            if cur < j:
                letters.append(j - 1)
            elif cur in (j, j + 1):
                rest = word[pos + 1:]
                return (compose_words(tuple(letters), rest), x)
            else:
                letters.append(j)
                cur -= 1
        if self.dims[x] == 0:
            raise ValueError("no faces of a vertex")
        bw, bx = self.faces[x][cur]
        return (compose_words(tuple(letters), bw), bx)

    def degeneracy(self, value, j) -> Value:
        word, x = value
        return (insert_degeneracy(j, word), x)

    def act(self, f: DeltaMap, value) -> Value:
        """Contravariant action: f:[a]->[b] sends a b-value to an a-value."""
        if self.dim_of(value) != f.target_arity:
            raise ValueError("value dimension does not match the map")
        out = value
        for kind, idx in f.elementary_ops():
            out = self.face(out, idx) if kind == "d" else self.degeneracy(out, idx)
        return out

    def values(self, n: int):
        """Every n-simplex, degenerate ones included, in a deterministic order."""
        out = []
        for x in sorted(self.dims, key=repr):
            m = self.dims[x]
            if m > n:
                continue
            for word in combinations(range(n - 1, -1, -1), n - m):
                out.append((word, x))
        return out

    # -- constructions ------------------------------------------------

    def disjoint_union(self, other: "SimplicialSet") -> "SimplicialSet":
        def tag(side, x):
            return (side, x)

        dims = {tag(0, x): n for x, n in self.dims.items()}
        dims.update({tag(1, x): n for x, n in other.dims.items()})
        faces = {}
        for side, src in ((0, self), (1, other)):
            for x, fs in src.faces.items():
                faces[tag(side, x)] = tuple((w, tag(side, y)) for w, y in fs)
        # a complete side is known in every dimension, so only truncated
        # sides cap what the union knows
        caps = [t for t in (self.truncation, other.truncation) if t is not None]
        return SimplicialSet(dims, faces, min(caps) if caps else None, check=False)

    def opposite(self) -> "SimplicialSet":
        faces = {}
        for x, n in self.dims.items():
            if n == 0:
                continue
            faces[x] = tuple((op_word(w, n - 1), y)
                             for w, y in (self.faces[x][n - i] for i in range(n + 1)))
        return SimplicialSet(dict(self.dims), faces, self.truncation, check=False)

    # -- invariants ----------------------------------------------------

    def boundary_matrix(self, n: int):
        """Rows index nondegenerate n-simplices, columns (n-1)-simplices."""
        rows_ix = self.nondeg(n)
        cols_ix = self.nondeg(n - 1)
        col = {x: k for k, x in enumerate(cols_ix)}
        rows = []
        for x in rows_ix:
            r = [0] * len(cols_ix)
            for i, (word, y) in enumerate(self.faces[x]):
                if not word:
                    r[col[y]] += -1 if i % 2 else 1
            rows.append(r)
        return rows, rows_ix, cols_ix

    def homology_report_limit(self):
        """Largest dimension whose homology the presentation determines.

        None means unbounded: a complete presentation settles every degree
        (all simplices above the top one are degenerate).
        """
        if self.truncation is None:
            return None
        return self.truncation - 1

    def homology(self, through_dim=None):
        """[(betti_n, torsion orders)] for n = 0 .. through_dim."""
        top = self.homology_report_limit()
        if through_dim is None:
            through_dim = max(top if top is not None else self.max_nondeg_dim(), 0)
        if top is not None and through_dim > top:
            raise ValueError(f"presentation only determines homology through {top}")
        out = []
        for n in range(through_dim + 1):
            c_n = len(self.nondeg(n))
            rank_dn = 0
            if n > 0:
                rows, _, _ = self.boundary_matrix(n)
                rank_dn = len(smith_diagonal(rows, len(self.nondeg(n - 1))))
            rows_up, _, _ = self.boundary_matrix(n + 1)
            diag_up = smith_diagonal(rows_up, c_n)
            betti = (c_n - rank_dn) - len(diag_up)
            out.append((betti, torsion_from_diagonal(diag_up)))
        return out

    def euler_characteristic(self) -> int:
        if self.truncation is not None:
            raise ValueError("Euler characteristic needs a complete presentation")
        return sum((-1) ** n * len(self.nondeg(n))
                   for n in range(self.max_nondeg_dim() + 1))

    def components(self):
        """Partition of the vertices by nondegenerate-edge reachability."""
        parent = {v: v for v in self.vertices()}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self.nondeg(1):
            (w0, a) = self.face_of(e, 1)
            (w1, b) = self.face_of(e, 0)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups = {}
        for v in self.vertices():
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=lambda g: repr(g[0]))

    def edge_endpoints(self, e):
        (_, a) = self.face_of(e, 1)
        (_, b) = self.face_of(e, 0)
        return a, b

    def first_vertex(self, x):
        """Vertex 0 of a nondegenerate simplex, via repeated last faces."""
        v: Value = ((), x)
        while self.dim_of(v) > 0:
            v = self.face(v, self.dim_of(v))
        return v[1]

    def pi1_presentation(self, basepoint=None) -> GroupPresentation:
        """Edge-path presentation of pi_1 at the basepoint's component.

        Needs the 2-skeleton: a complete presentation or truncation >= 2.
        Generators are the nondegenerate edges off a breadth-first spanning
        tree; each nondegenerate triangle contributes the relator
        (02-edge)^(-1) (01-edge) (12-edge) read as an edge path.
        """
        if self.truncation is not None and self.truncation < 2:
            raise ValueError("pi_1 needs the presentation through dimension 2")
        comps = self.components()
        if not comps:
            raise ValueError("empty simplicial set has no pi_1")
        if basepoint is None:
            comp = comps[0]
        else:
            comp = next(c for c in comps if basepoint in c)
        in_comp = set(comp)

        # breadth-first spanning tree over nondegenerate edges
        adj = {}
        for e in self.nondeg(1):
            a, b = self.edge_endpoints(e)
            if a in in_comp:
                adj.setdefault(a, []).append((b, e))
                adj.setdefault(b, []).append((a, e))
        root = sorted(comp, key=repr)[0]
        tree_edges = set()
        seen = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for v in sorted(frontier, key=repr):
                for u, e in sorted(adj.get(v, []), key=lambda p: (repr(p[0]), repr(p[1]))):
                    if u not in seen:
                        seen.add(u)
                        tree_edges.add(e)
                        nxt.append(u)
            frontier = nxt

        gens = [e for e in self.nondeg(1)
                if e not in tree_edges and self.edge_endpoints(e)[0] in in_comp]
        gen_names = {e: f"g{k}" for k, e in enumerate(gens)}

        def edge_letter(value):
            word, e = value
            if word or e in tree_edges:
                return None
            return gen_names.get(e)

        relators = []
        for t in self.nondeg(2):
            if self.first_vertex(t) not in in_comp:
                continue
            word = []
            for val, sign in ((self.face_of(t, 2), 1),
                              (self.face_of(t, 0), 1),
                              (self.face_of(t, 1), -1)):
                g = edge_letter(val)
                if g is not None:
                    word.append((g, sign))
            relators.append(tuple(word))
        return GroupPresentation.build(tuple(gen_names.values()), relators)

    def fundamental_group(self, basepoint=None, budget: int = 10000) -> GroupPresentation:
        return self.pi1_presentation(basepoint).simplified(budget)


@dataclass(frozen=True)
class Contractibility:
    """Outcome of the finite contractibility test.

    status is one of "contractible_up_to" (connected, reduced homology
    zero through `depth`, and the edge-path group simplified away),
    "not_contractible" (a genuine obstruction, named in `reason`), or
    "inconclusive" (the presentation is too shallow, or pi_1 resisted
    simplification without a visible obstruction).
    """

    status: str
    depth: int | None
    reason: str

    def certified(self) -> bool:
        return self.status == "contractible_up_to"


def contractibility(space: SimplicialSet, depth: int,
                    budget: int = 10000) -> Contractibility:
    if not space.vertices():
        return Contractibility("not_contractible", None, "no vertices")
    if len(space.components()) > 1:
        return Contractibility("not_contractible", None, "disconnected")
    limit = space.homology_report_limit()
    if limit is not None and limit < depth:
        return Contractibility(
            "inconclusive", None,
            f"presentation determines homology only through {limit}, "
            f"needed {depth}")
    for n, (betti, torsion) in enumerate(space.homology(depth)):
        expected = 1 if n == 0 else 0
        if betti != expected or torsion:
            return Contractibility(
                "not_contractible", None,
                f"H_{n} has betti {betti} and torsion {torsion}")
    if depth >= 1:
        if space.truncation is not None and space.truncation < 2:
            return Contractibility("inconclusive", None,
                                   "pi_1 needs the 2-skeleton")
        pres = space.fundamental_group(budget=budget)
        if pres.generators:
            return Contractibility(
                "inconclusive", None,
                f"pi_1 presentation kept {len(pres.generators)} generators "
                "after simplification")
    return Contractibility("contractible_up_to", depth,
                           f"reduced homology trivial through {depth}")


# -- level-model compiler ----------------------------------------------


@dataclass
class LevelModel:
    """A simplicial set described one level at a time.

    `levels(n)` lists tokens for all n-simplices (degenerate included);
    `act(f, token)` applies a monotone map contravariantly to a token at
    level f.target_arity.  Compilation finds which tokens are degenerate,
    assigns ids to the rest, and rebuilds face records over values.
    """

    levels: object
    act: object
    max_dim: int
    truncation: int | None = None
    label: object = None

    def compile(self) -> "CompiledLevelModel":
        tokens = {n: list(self.levels(n)) for n in range(self.max_dim + 1)}
        for n, toks in tokens.items():
            if len(set(toks)) != len(toks):
                raise ValueError(f"duplicate tokens at level {n}")

        mark: dict[tuple[int, object], tuple[int, object]] = {}
        for n in range(1, self.max_dim + 1):
            present = set(tokens[n])
            for j in range(n):
                sj = DeltaMap.codegeneracy(j, n - 1)
                for t in tokens[n - 1]:
                    image = self.act(sj, t)
                    if image not in present:
                        raise ValueError(f"degeneracy left the level model at {t!r}")
                    key = (n, image)
                    if key not in mark:
                        mark[key] = (j, t)

        ids: dict[tuple[int, object], object] = {}
        used = set()
        for n in range(self.max_dim + 1):
            for t in tokens[n]:
                if (n, t) in mark:
                    continue
                name = self.label(n, t) if self.label else t
                if name in used:
                    raise ValueError(f"duplicate simplex id {name!r}")
                used.add(name)
                ids[(n, t)] = name

        def resolve(n, t) -> Value:
            word: Word = ()
            while (n, t) in mark:
                j, parent = mark[(n, t)]
                word = _append_inner(word, j)
                n, t = n - 1, parent
            return (_normalize(word), ids[(n, t)])

        dims = {}
        faces = {}
        token_of = {}
        for (n, t), name in ids.items():
            dims[name] = n
            token_of[name] = t
            if n > 0:
                faces[name] = tuple(
                    resolve(n - 1, self.act(DeltaMap.coface(i, n), t))
                    for i in range(n + 1))
        sset = SimplicialSet(dims, faces, self.truncation)
        return CompiledLevelModel(sset, tokens, mark, ids, token_of, self)


def _append_inner(word: Word, j: int) -> Word:
    # letters discovered outermost-first: append at the right, normalize later
    return word + (j,)


def _normalize(word: Word) -> Word:
    out: Word = ()
    for letter in reversed(word):
        out = insert_degeneracy(letter, out)
    return out


@dataclass
class CompiledLevelModel:
    space: SimplicialSet
    tokens: dict
    mark: dict
    ids: dict
    token_of: dict
    model: LevelModel

    def value_of_token(self, n, t) -> Value:
        word: Word = ()
        while (n, t) in self.mark:
            j, parent = self.mark[(n, t)]
            word = word + (j,)
            n, t = n - 1, parent
        return (_normalize(word), self.ids[(n, t)])


def truncate(x: SimplicialSet, depth: int) -> SimplicialSet:
    """Forget everything above `depth`, marking the result truncated."""
    dims = {s: n for s, n in x.dims.items() if n <= depth}
    faces = {s: x.faces[s] for s in dims if dims[s] > 0}
    return SimplicialSet(dims, faces, depth, check=False)


# -- stock spaces --------------------------------------------------------


def standard_simplex(m: int) -> SimplicialSet:
    dims = {}
    faces = {}
    for size in range(1, m + 2):
        for verts in combinations(range(m + 1), size):
            dims[verts] = size - 1
            if size > 1:
                faces[verts] = tuple(((), verts[:i] + verts[i + 1:])
                                     for i in range(size))
    return SimplicialSet(dims, faces, None)


def boundary_of_simplex(m: int) -> SimplicialSet:
    full = standard_simplex(m)
    dims = {x: n for x, n in full.dims.items() if n < m}
    faces = {x: full.faces[x] for x in dims if dims[x] > 0}
    return SimplicialSet(dims, faces, None)


def simplicial_circle() -> SimplicialSet:
    return SimplicialSet({"pt": 0, "loop": 1},
                         {"loop": (((), "pt"), ((), "pt"))}, None)


def simplicial_set_from_triangulation(triangles) -> SimplicialSet:
    """Build a 2-complex from vertex triples; edges and vertices inferred.

    Vertices may be any sortable labels; each triple must be strictly
    increasing so faces are again increasing tuples.
    """
    dims = {}
    faces = {}
    for tri in triangles:
        t = tuple(tri)
        if len(t) != 3 or not (t[0] < t[1] < t[2]):
            raise ValueError(f"triangle {tri!r} is not strictly increasing")
        dims[t] = 2
        for i in range(3):
            e = t[:i] + t[i + 1:]
            dims[e] = 1
            for v in e:
                dims[(v,)] = 0
        faces[t] = tuple(((), t[:i] + t[i + 1:]) for i in range(3))
    for x, n in dims.items():
        if n == 1:
            faces[x] = (((), (x[1],)), ((), (x[0],)))
    return SimplicialSet(dims, faces, None)


def product(x: SimplicialSet, y: SimplicialSet) -> SimplicialSet:
    """Degreewise product, compiled from the level model of value pairs.

    A pair of values is nondegenerate exactly when the two degeneracy
    words share no letter, so a complete product needs levels only up to
    the sum of the factors' top dimensions.
    """
    caps = [t for t in (x.truncation, y.truncation) if t is not None]
    if caps:
        max_dim = min(caps)
        trunc = max_dim
    else:
        max_dim = x.max_nondeg_dim() + y.max_nondeg_dim()
        trunc = None

    model = LevelModel(
        levels=lambda n: [(a, b) for a in x.values(n) for b in y.values(n)],
        act=lambda f, t: (x.act(f, t[0]), y.act(f, t[1])),
        max_dim=max(max_dim, 0),
        truncation=trunc,
    )
    return model.compile().space


# -- maps ---------------------------------------------------------------


class SimplicialMap:
    """Assignment of a target value to each nondegenerate source simplex."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 assignment: dict, check: bool = True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if check:
            self._validate()

    def _validate(self):
        for x, n in self.source.dims.items():
            if x not in self.assignment:
                raise ValueError(f"no image for {x!r}")
            img = self.assignment[x]
            if self.target.dim_of(img) != n:
                raise ValueError(f"image of {x!r} has the wrong dimension")
            for i in range(n + 1) if n else ():
                lhs = self.on_value(self.source.face_of(x, i))
                rhs = self.target.face(self.assignment[x], i)
                if lhs != rhs:
                    raise ValueError(f"not simplicial at {x!r}, face {i}")

    def on_value(self, value) -> Value:
        word, x = value
        iw, iy = self.assignment[x]
        return (compose_words(word, iw), iy)

    @staticmethod
    def identity(x: SimplicialSet) -> "SimplicialMap":
        return SimplicialMap(x, x, {s: ((), s) for s in x.dims}, check=False)


def fold_map(x: SimplicialSet) -> SimplicialMap:
    """The codiagonal X + X -> X."""
    both = x.disjoint_union(x)
    return SimplicialMap(both, x, {(side, s): ((), s) for side, s in both.dims})


# -- unique-horn-filling check -------------------------------------------


def left_fibration_check(f: SimplicialMap, maxdim: int = 3):
    """Check unique lifting against inner-and-left horns through maxdim.

    For every compatible horn family (x_i)_{i != k} in the source with
    0 <= k < n <= maxdim, and every n-value z downstairs filling the image
    family, there must be exactly one y upstairs with faces x_i and image z.
    Returns (True, None) or (False, description of the first failure).
    """
    X, Y = f.source, f.target
    for n in range(1, maxdim + 1):
        xvals = X.values(n)
        yvals = Y.values(n)
        xlow = X.values(n - 1)
        prof_up = {y: tuple(X.face(y, i) for i in range(n + 1)) for y in xvals}
        prof_down = {z: tuple(Y.face(z, i) for i in range(n + 1)) for z in yvals}
        image_low = {v: f.on_value(v) for v in xlow}
        image_up = {y: f.on_value(y) for y in xvals}
        low_faces = None
        if n >= 2:
            low_faces = {v: tuple(X.face(v, i) for i in range(n)) for v in xlow}

        for k in range(n):
            slots = [i for i in range(n + 1) if i != k]
            up_index: dict = {}
            for y, prof in prof_up.items():
                up_index.setdefault(tuple(prof[i] for i in slots), []).append(y)
            down_index: dict = {}
            for z, prof in prof_down.items():
                down_index.setdefault(tuple(prof[i] for i in slots), []).append(z)

            for family in _horn_families(xlow, low_faces, slots):
                key_up = tuple(family[i] for i in slots)
                key_down = tuple(image_low[family[i]] for i in slots)
                for z in down_index.get(key_down, ()):
                    ups = [y for y in up_index.get(key_up, ())
                           if image_up[y] == z]
                    if len(ups) != 1:
                        where = f"horn (n={n}, k={k}) at {sorted(family.items())}"
                        return False, f"{len(ups)} lifts over {z!r} for {where}"
    return True, None


def _horn_families(candidates, faces, slots):
    """Backtracking enumeration of compatible (n-1)-value families.

    Slot j and slot i with j < i must satisfy d_j(x_i) = d_(i-1)(x_j), the
    relation the faces of an actual n-simplex would obey.  `faces` maps a
    candidate to its face tuple; None means dimension 1, where the single
    slot is unconstrained.
    """
    if faces is None:
        for v in candidates:
            yield {slots[0]: v}
        return

    by_face: dict = {}
    for v in candidates:
        for p, w in enumerate(faces[v]):
            by_face.setdefault((p, w), set()).add(v)

    family: dict = {}

    def extend(idx):
        if idx == len(slots):
            yield dict(family)
            return
        i = slots[idx]
        # every already-placed slot pins one face of the newcomer, so the
        # viable candidates sit in an intersection of by_face buckets
        empty: set = set()
        needs = []
        for j, prev in family.items():
            if j < i:
                needs.append(by_face.get((j, faces[prev][i - 1]), empty))
            else:
                needs.append(by_face.get((j - 1, faces[prev][i]), empty))
        pool = candidates if not needs else [
            v for v in candidates if all(v in s for s in needs)]
        for v in pool:
            family[i] = v
            yield from extend(idx + 1)
            del family[i]

    yield from extend(0)


# -- isomorphism search ---------------------------------------------------


def find_isomorphism(x: SimplicialSet, y: SimplicialSet):
    """Dimension-by-dimension backtracking; None when not isomorphic."""
    if x.truncation != y.truncation:
        return None
    by_dim_x = {n: x.nondeg(n) for n in range(x.max_nondeg_dim() + 1)}
    by_dim_y = {n: y.nondeg(n) for n in range(y.max_nondeg_dim() + 1)}
    if sorted(by_dim_x) != sorted(by_dim_y):
        return None
    if any(len(by_dim_x[n]) != len(by_dim_y.get(n, ())) for n in by_dim_x):
        return None

    order = [s for n in sorted(by_dim_x) for s in by_dim_x[n]]
    assign: dict = {}
    used: set = set()

    def value_image(value):
        word, s = value
        return (word, assign[s])

    def ok(s, t):
        n = x.dims[s]
        if y.dims[t] != n:
            return False
        for i in range(n + 1) if n else ():
            img = value_image(x.face_of(s, i))
            if y.face_of(t, i) != img:
                return False
        return True

    def solve(idx):
        if idx == len(order):
            return True
        s = order[idx]
        for t in by_dim_y[x.dims[s]]:
            if t in used:
                continue
            if ok(s, t):
                assign[s] = t
                used.add(t)
                if solve(idx + 1):
                    return True
                del assign[s]
                used.remove(t)
        return False

    return dict(assign) if solve(0) else None
