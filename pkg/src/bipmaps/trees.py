r"""Bicolored plane trees with buds and leaves (blossom trees).

A tree is stored as an arena of vertices; every vertex carries a color
and an ordered slot list, read counterclockwise.  A slot is either a
half-edge ``('h',)`` or an edge ``('e', w, k)`` pointing at slot ``k`` of
vertex ``w`` (edges are recorded from both sides).  The root designator
is a ``(vertex, slot)`` pair naming a half-edge slot.

Half-edges hanging from white vertices are *leaves*, those hanging from
black vertices are *buds*.  The charge of a tree is the number of its
leaves minus the number of its buds, the root half-edge excluded; the
total charge includes it.  A blossom tree is a tree whose every lower
subtree (component of an edge cut not containing the root) has charge
>= 0 at a white root and <= 1 at a black root.

The contour of a tree is the counterclockwise cyclic sequence of its
half-edges starting at the root slot; matching buds against leaves in
this cyclic word, as opening and closing brackets, is what closure of a
tree onto a planar map is built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

WHITE = "W"
BLACK = "B"

HALF = ("h",)


class PlaneTree:
    __slots__ = ("colors", "slots", "root")

    def __init__(self, colors, slots, root, check=True):
        self.colors = tuple(colors)
        self.slots = tuple(tuple(s) for s in slots)
        self.root = tuple(root)
        if check:
            self._validate()

    def _validate(self):
        rv, rj = self.root
        if self.slots[rv][rj] != HALF:
            raise ValueError("root designator must point at a half-edge slot")
        n_edges = 0
        for v, vslots in enumerate(self.slots):
            if not vslots:
                raise ValueError("vertex of degree zero")
            for j, s in enumerate(vslots):
                if s == HALF:
                    continue
                _, w, k = s
                if self.slots[w][k] != ("e", v, j):
                    raise ValueError("edge slots are not mutually linked")
                if self.colors[w] == self.colors[v]:
                    raise ValueError("edge joins two vertices of the same color")
                n_edges += 1
        if n_edges != 2 * (len(self.colors) - 1):
            raise ValueError("slot structure is not a tree")
        # connectivity follows from the edge count once the contour closes up
        if len(self.contour()) != self.n_half_edges():
            raise ValueError("contour does not visit every half-edge")

    # -- basic counts -----------------------------------------------------

    def n_vertices(self) -> int:
        return len(self.colors)

    def n_edges(self) -> int:
        return len(self.colors) - 1

    def degree(self, v: int) -> int:
        return len(self.slots[v])

    def half_edges(self):
        return [
            (v, j)
            for v, vslots in enumerate(self.slots)
            for j, s in enumerate(vslots)
            if s == HALF
        ]

    def n_half_edges(self) -> int:
        return sum(1 for _ in self.half_edges())

    def kind(self, h) -> str:
        """'leaf' for a white half-edge, 'bud' for a black one."""
        return "leaf" if self.colors[h[0]] == WHITE else "bud"

    def n_leaves(self) -> int:
        return sum(1 for h in self.half_edges() if self.kind(h) == "leaf")

    def n_buds(self) -> int:
        return sum(1 for h in self.half_edges() if self.kind(h) == "bud")

    def charge(self) -> int:
        c = self.n_leaves() - self.n_buds()
        return c - (1 if self.kind(self.root) == "leaf" else -1)

    def total_charge(self) -> int:
        return self.n_leaves() - self.n_buds()

    def degree_profile(self):
        lam = sorted(
            (len(s) for v, s in enumerate(self.slots) if self.colors[v] == WHITE),
            reverse=True,
        )
        mu = sorted(
            (len(s) for v, s in enumerate(self.slots) if self.colors[v] == BLACK),
            reverse=True,
        )
        return (tuple(lam), tuple(mu))

    # -- traversal ----------------------------------------------------------

    def contour(self):
        """Half-edge slots in counterclockwise order, starting at the root."""
        out = []
        v, j = self.root
        total = sum(len(s) for s in self.slots)
        for _ in range(total):
            s = self.slots[v][j]
            if s == HALF:
                out.append((v, j))
                j = (j + 1) % len(self.slots[v])
            else:
                _, w, k = s
                v, j = w, (k + 1) % len(self.slots[w])
        if (v, j) != self.root:
            raise ValueError("contour walk failed to close up")
        return out

    def segment_after(self, v: int, j: int):
        """Contour of the subtree hanging at edge slot (v, j), read from
        just after the slot, i.e. the cyclic word of the lower component's
        half-edges starting after its root stub."""
        s = self.slots[v][j]
        if s == HALF:
            raise ValueError("segment_after expects an edge slot")
        _, w, k = s
        out = []
        cv, cj = w, (k + 1) % len(self.slots[w])
        while (cv, cj) != (w, k):
            cur = self.slots[cv][cj]
            if cur == HALF:
                out.append((cv, cj))
                cj = (cj + 1) % len(self.slots[cv])
            else:
                _, nw, nk = cur
                if (nw, nk) == (v, j):
                    # crossed back over the cut edge: we are done
                    break
                cv, cj = nw, (nk + 1) % len(self.slots[nw])
        return out

    def parent_slots(self):
        """For each non-root vertex, the slot pointing toward the root."""
        rv = self.root[0]
        parent = {rv: None}
        stack = [rv]
        while stack:
            v = stack.pop()
            for j, s in enumerate(self.slots[v]):
                if s == HALF:
                    continue
                _, w, k = s
                if w not in parent:
                    parent[w] = k
                    stack.append(w)
        return parent

    def edges(self):
        out = []
        for v, vslots in enumerate(self.slots):
            for j, s in enumerate(vslots):
                if s != HALF:
                    _, w, k = s
                    if (v, j) < (w, k):
                        out.append(((v, j), (w, k)))
        return out

    def component_vertices(self, start: int, cut_edge) -> frozenset:
        """Vertices reachable from ``start`` without crossing ``cut_edge``."""
        (a, aj), (b, bj) = cut_edge
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for j, s in enumerate(self.slots[v]):
                if s == HALF:
                    continue
                if (v, j) in ((a, aj), (b, bj)):
                    continue
                _, w, _k = s
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def side_charge(self, vertices) -> int:
        """Leaves minus buds over every half-edge at the given vertices
        (the root half-edge, if present, counts like any other)."""
        c = 0
        for v in vertices:
            nh = sum(1 for s in self.slots[v] if s == HALF)
            c += nh if self.colors[v] == WHITE else -nh
        return c

    def subtree_charges(self, edge):
        """(c_white_side, c_black_side) for the cut at ``edge``; the two
        values add up to the total charge."""
        (a, _), (b, _) = edge
        side_a = self.component_vertices(a, edge)
        ca = self.side_charge(side_a)
        cb = self.total_charge() - ca
        if self.colors[a] == WHITE:
            return ca, cb
        return cb, ca

    # -- blossom structure ------------------------------------------------------

    def lower_charge_map(self):
        """Charge of the lower subtree at every edge, keyed by the edge's
        downward slot (the slot at the vertex closer to the root)."""
        parent = self.parent_slots()
        rv = self.root[0]
        order = []
        stack = [rv]
        seen = {rv}
        while stack:
            v = stack.pop()
            order.append(v)
            for j, s in enumerate(self.slots[v]):
                if s == HALF:
                    continue
                _, w, _k = s
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        halfcount = [0] * len(self.colors)
        for v, vslots in enumerate(self.slots):
            nh = sum(1 for s in vslots if s == HALF)
            halfcount[v] = nh if self.colors[v] == WHITE else -nh
        # accumulate subtree sums bottom-up
        acc = list(halfcount)
        for v in reversed(order):
            if v == rv:
                continue
            pj = parent[v]
            _, up, _ = self.slots[v][pj]
            acc[up] += acc[v]
        out = {}
        for v in order:
            for j, s in enumerate(self.slots[v]):
                if s == HALF:
                    continue
                _, w, k = s
                if parent.get(w) == k:  # (v, j) is the downward side
                    out[(v, j)] = (acc[w], w)
        return out

    def is_blossom(self) -> bool:
        for (_v, _j), (c, w) in self.lower_charge_map().items():
            if self.colors[w] == WHITE:
                if c < 0:
                    return False
            else:
                if c > 1:
                    return False
        return True

    def reroot(self, h) -> "PlaneTree":
        v, j = h
        if self.slots[v][j] != HALF:
            raise ValueError("can only re-root at a half-edge")
        return PlaneTree(self.colors, self.slots, (v, j), check=False)

    # -- weak edges and the core ----------------------------------------------

    def weak_edges(self):
        """Edges whose black-side charge is at least 2 (root-free)."""
        out = []
        for e in self.edges():
            _, cb = self.subtree_charges(e)
            if cb >= 2:
                out.append(e)
        return out

    def core(self, rooted: bool = True) -> "CoreDecomposition":
        weak = self.weak_edges()
        cut_pairs = set()
        for (a, aj), (b, bj) in weak:
            cut_pairs.add((a, aj))
            cut_pairs.add((b, bj))

        def comp(start):
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for j, s in enumerate(self.slots[v]):
                    if s == HALF or (v, j) in cut_pairs:
                        continue
                    _, w, _k = s
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            return frozenset(seen)

        if rooted:
            core_vs = comp(self.root[0])
        else:
            if self.total_charge() != 2:
                raise ValueError("the root-free core needs total charge 2")
            for e in self.edges():
                cw, _cb = self.subtree_charges(e)
                if cw < 0:
                    raise ValueError("white charge rule violated; core undefined")
            core_vs = None
            seen_all = set()
            for v in range(self.n_vertices()):
                if v in seen_all:
                    continue
                c = comp(v)
                seen_all |= c
                if self.side_charge(c) == 2:
                    if core_vs is not None:
                        raise ValueError("core is not unique")
                    core_vs = c
            if core_vs is None:
                raise ValueError("no component of total charge 2")

        incident = {}
        for e in weak:
            (a, aj), (b, bj) = e
            black_slot = (a, aj) if self.colors[a] == BLACK else (b, bj)
            white_slot = (b, bj) if self.colors[a] == BLACK else (a, aj)
            if black_slot[0] in core_vs:
                dangle = self.component_vertices(white_slot[0], e)
                incident[e] = (dangle, white_slot, black_slot)
        return CoreDecomposition(core_vs, tuple(weak), incident, self)


@dataclass
class CoreDecomposition:
    core: frozenset
    weak: tuple
    incident: dict  # weak edge touching the core -> (dangle vertices, white stub, black stub)
    tree: PlaneTree = field(repr=False)

    def dangle_of(self, v: int):
        """The weak edge whose dangling subtree contains vertex v."""
        for e, (vs, _wstub, _bstub) in self.incident.items():
            if v in vs:
                return e
        return None


@dataclass
class Matching:
    pairs: list  # (bud slot, leaf slot)
    singles: list  # unmatched leaves, in contour order
    unmatched_buds: list  # nonempty only when the total charge is negative

    def partner(self):
        d = {}
        for b, l in self.pairs:
            d[b] = l
            d[l] = b
        return d


def match_half_edges(t: PlaneTree, contour=None) -> Matching:
    """Cyclic bracket matching of buds (openers) against leaves (closers).

    Implemented with a stack over one linear pass plus a wrap-around step,
    which reproduces the iterated matching of immediately consecutive
    (bud, leaf) pairs in the cyclic word.
    """
    seq = t.contour() if contour is None else contour
    stack = []
    pairs = []
    early_leaves = []
    for pos in seq:
        if t.kind(pos) == "bud":
            stack.append(pos)
        else:
            if stack:
                pairs.append((stack.pop(), pos))
            else:
                early_leaves.append(pos)
    wrap = min(len(stack), len(early_leaves))
    for i in range(wrap):
        pairs.append((stack[len(stack) - 1 - i], early_leaves[i]))
    singles = early_leaves[wrap:]
    buds_left = stack[: len(stack) - wrap]
    return Matching(pairs, singles, buds_left)


def is_balanced(t: PlaneTree) -> bool:
    if t.kind(t.root) != "leaf":
        raise ValueError("balance is defined for trees rooted at a leaf")
    m = match_half_edges(t)
    return t.root in m.singles


# -- nested form and serialization ------------------------------------------------
#
# Nested form: a node is (color, items); an item is 'r' (root half-edge,
# at the root vertex only), 'h' (half-edge) or a child node.  The string
# grammar writes W/B for colors, 'l' for a white half-edge, 'u' for a
# black one, e.g.  W(r,B(u),l).


def to_nested(t: PlaneTree):
    parent = t.parent_slots()

    def build(v, anchor):
        items = []
        d = len(t.slots[v])
        for off in range(d):
            j = (anchor + off) % d
            s = t.slots[v][j]
            if (v, j) == t.root:
                items.append("r")
            elif s == HALF:
                items.append("h")
            else:
                _, w, k = s
                if parent.get(w) == k:
                    items.append(build(w, k))
                else:  # the parent edge: skip, it is the anchor position
                    items.append("p")
        if v == t.root[0]:
            return (t.colors[v], tuple(items))
        # drop the leading parent marker
        assert items[0] == "p"
        return (t.colors[v], tuple(items[1:]))

    rv, rj = t.root
    return build(rv, rj)


def from_nested(node) -> PlaneTree:
    colors = []
    slots = []

    def alloc(color):
        colors.append(color)
        slots.append([])
        return len(colors) - 1

    root_slot = [None]

    def build(node, parent_ref):
        color, items = node
        v = alloc(color)
        if parent_ref is not None:
            pw, pj = parent_ref
            slots[v].append(("e", pw, pj))
            slots[pw][pj] = ("e", v, 0)
        for it in items:
            j = len(slots[v])
            if it == "r":
                slots[v].append(HALF)
                root_slot[0] = (v, j)
            elif it == "h":
                slots[v].append(HALF)
            else:
                slots[v].append(None)  # patched by the child
                build(it, (v, j))
        return v

    build(node, None)
    if root_slot[0] is None:
        raise ValueError("nested form has no root half-edge marker")
    return PlaneTree(colors, slots, root_slot[0])


def tree_to_string(t: PlaneTree) -> str:
    def render(node):
        color, items = node
        parts = []
        for it in items:
            if it == "r":
                parts.append("r")
            elif it == "h":
                parts.append("l" if color == WHITE else "u")
            else:
                parts.append(render(it))
        return f"{color}({','.join(parts)})"

    return render(to_nested(t))


def tree_from_string(text: str) -> PlaneTree:
    pos = [0]

    def expect(ch):
        if text[pos[0]] != ch:
            raise ValueError(f"bad tree string at {pos[0]}: expected {ch!r}")
        pos[0] += 1

    def parse_node():
        color = text[pos[0]]
        if color not in (WHITE, BLACK):
            raise ValueError(f"bad color {color!r} at {pos[0]}")
        pos[0] += 1
        expect("(")
        items = []
        if text[pos[0]] != ")":
            while True:
                ch = text[pos[0]]
                if ch == "r":
                    items.append("r")
                    pos[0] += 1
                elif ch in ("l", "u"):
                    if (ch == "l") != (color == WHITE):
                        raise ValueError("half-edge mark does not match vertex color")
                    items.append("h")
                    pos[0] += 1
                else:
                    items.append(parse_node())
                if text[pos[0]] == ",":
                    pos[0] += 1
                else:
                    break
        expect(")")
        return (color, tuple(items))

    node = parse_node()
    if pos[0] != len(text.strip()):
        raise ValueError("trailing characters after tree string")
    return from_nested(node)


def canonical_code(t: PlaneTree):
    """Preorder code; faithful because rooted plane trees are rigid."""
    return to_nested(t)


# -- exhaustive generation ---------------------------------------------------------


def generate_blossom_trees(
    white_degrees,
    black_degrees,
    root_kind: str,
    budget: int,
    cost: str = "vertices",
    charge=None,
    grading_weights=None,
):
    """All blossom trees with vertex degrees in the given supports.

    ``cost`` selects the budget measure:

    * ``"vertices"``       -- number of vertices,
    * ``"closure-edges"``  -- tree edges plus buds (the edge count of the
      closure once every bud is matched),
    * ``"grading"``        -- sum of ``grading_weights[(color, degree)]``
      over vertices (all weights must be >= 1).

    ``root_kind`` is ``"leaf"`` or ``"bud"``; ``charge`` optionally filters
    on the charge of the tree (the charge at the root vertex).
    Generation is by canonical construction, so the output has no
    duplicates and is exhaustive within the budget.
    """
    white_degrees = tuple(sorted(set(white_degrees)))
    black_degrees = tuple(sorted(set(black_degrees)))

    if cost == "vertices":
        vcost = lambda color, d: 1
        ecost = 0
        bcost = 0
    elif cost == "closure-edges":
        vcost = lambda color, d: 0
        ecost = 1
        bcost = 1
    elif cost == "grading":
        weights = dict(grading_weights or {})
        for (c, d), wgt in weights.items():
            if wgt < 1:
                raise ValueError("grading generation needs weights >= 1")
        vcost = lambda color, d: weights[(color, d)]
        ecost = 0
        bcost = 0
    else:
        raise ValueError(f"unknown cost measure {cost!r}")

    from functools import cache

    @cache
    def lowers(color, budget):
        """Lower subtrees of the given root color: (nested node, charge, cost)."""
        if budget < 0:
            return ()
        out = []
        degs = white_degrees if color == WHITE else black_degrees
        opp = BLACK if color == WHITE else WHITE
        hcost = 0 if color == WHITE else bcost
        hcharge = 1 if color == WHITE else -1
        for d in degs:
            base = vcost(color, d)
            if base > budget:
                continue

            def attach(k, left, items, ch):
                if k == 0:
                    out.append(((color, tuple(items)), ch, budget - left))
                    return
                if hcost <= left:
                    attach(k - 1, left - hcost, items + ["h"], ch + hcharge)
                for node, cch, ccost in lowers(opp, left - ecost):
                    attach(k - 1, left - ecost - ccost, items + [node], ch + cch)

            attach(d - 1, budget - base, [], 0)
        # charge rule for a lower subtree of this color
        if color == WHITE:
            filtered = [(n, ch, c) for (n, ch, c) in out if ch >= 0]
        else:
            filtered = [(n, ch, c) for (n, ch, c) in out if ch <= 1]
        return tuple(filtered)

    root_color = WHITE if root_kind == "leaf" else BLACK
    opp = BLACK if root_color == WHITE else WHITE
    hcharge = 1 if root_color == WHITE else -1
    hcost = 0 if root_color == WHITE else bcost
    results = []

    def assemble(d, base):
        def attach(k, left, items, ch):
            if k == 0:
                if charge is not None and ch != charge:
                    return
                node = (root_color, ("r",) + tuple(items))
                results.append(from_nested(node))
                return
            if hcost <= left:
                attach(k - 1, left - hcost, items + ["h"], ch + hcharge)
            for sub, cch, ccost in lowers(opp, left - ecost):
                if ecost + ccost <= left:
                    attach(k - 1, left - ecost - ccost, items + [sub], ch + cch)

        attach(d - 1, budget - base, [], 0)

    degs = white_degrees if root_color == WHITE else black_degrees
    for d in degs:
        base = vcost(root_color, d)
        if base <= budget:
            assemble(d, base)
    return results
