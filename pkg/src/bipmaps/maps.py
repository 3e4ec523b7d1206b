r"""Rooted planar maps as dart structures; closure and opening.

A map is a triple (nu, alpha, root) on darts 0..D-1: ``nu`` is the next
dart counterclockwise around its vertex, ``alpha`` pairs the two darts of
every edge and fixes exactly the leg darts (half-edges), and the root is
a distinguished dart.  Faces are the cycles of d -> nu[alpha[d]]; with
legs fixed by alpha this walk simply continues around the corner, so a
leg lies in the face it is drawn in.  Genus 0 is equivalent to

    #vertices + #faces = #edges + 2,

which is also the cycle-count criterion for permutation pairs.

The closure of a balanced blossom tree fuses every matched (bud, leaf)
pair into an edge; on darts this is nothing but extending alpha, which
is why the rotation system is untouched and planarity is automatic.
The opening walks around the infinite face, cutting every non-separating
edge just traversed out of its black endpoint, until the map is a tree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .trees import BLACK, HALF, WHITE, PlaneTree, is_balanced, match_half_edges


class CombMap:
    __slots__ = ("nu", "alpha", "root", "colors", "vertex_of", "vertex_cycles")

    def __init__(self, nu, alpha, root, colors=None, check=True):
        self.nu = tuple(nu)
        self.alpha = tuple(alpha)
        self.root = root
        cycles = _cycles(self.nu)
        cycles.sort(key=min)
        self.vertex_cycles = tuple(tuple(c) for c in cycles)
        vo = [0] * len(self.nu)
        for i, c in enumerate(self.vertex_cycles):
            for d in c:
                vo[d] = i
        self.vertex_of = tuple(vo)
        self.colors = tuple(colors) if colors is not None else None
        if check:
            self._validate()

    def _validate(self):
        D = len(self.nu)
        if sorted(self.nu) != list(range(D)):
            raise ValueError("nu is not a permutation of the darts")
        for d in range(D):
            if self.alpha[self.alpha[d]] != d:
                raise ValueError("alpha is not an involution")
        if not 0 <= self.root < D:
            raise ValueError("root dart out of range")
        if not self.is_connected():
            raise ValueError("dart structure is not connected")
        if self.colors is not None:
            if len(self.colors) != len(self.vertex_cycles):
                raise ValueError("one color per vertex is required")
            for d in range(D):
                e = self.alpha[d]
                if e != d and self.color_of_dart(d) == self.color_of_dart(e):
                    raise ValueError("an edge joins two vertices of the same color")

    # -- structure -------------------------------------------------------------

    def n_darts(self) -> int:
        return len(self.nu)

    def n_vertices(self) -> int:
        return len(self.vertex_cycles)

    def n_edges(self) -> int:
        return sum(1 for d in range(len(self.nu)) if self.alpha[d] > d)

    def legs(self):
        return [d for d in range(len(self.nu)) if self.alpha[d] == d]

    def color_of_dart(self, d):
        return self.colors[self.vertex_of[d]]

    def degree(self, v: int) -> int:
        return len(self.vertex_cycles[v])

    def face_next(self, d: int) -> int:
        return self.nu[self.alpha[d]]

    def faces(self):
        nxt = [self.nu[self.alpha[d]] for d in range(len(self.nu))]
        return _cycles(nxt)

    def face_of(self, d: int):
        out = [d]
        cur = self.face_next(d)
        while cur != d:
            out.append(cur)
            cur = self.face_next(cur)
        return out

    def is_connected(self) -> bool:
        D = len(self.nu)
        if D == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.nu[d], self.alpha[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == D

    def is_planar(self) -> bool:
        return self.n_vertices() + len(self.faces()) == self.n_edges() + 2

    def degree_profile(self):
        if self.colors is None:
            raise ValueError("degree profile by color needs a colored map")
        lam = sorted(
            (len(c) for i, c in enumerate(self.vertex_cycles) if self.colors[i] == WHITE),
            reverse=True,
        )
        mu = sorted(
            (len(c) for i, c in enumerate(self.vertex_cycles) if self.colors[i] == BLACK),
            reverse=True,
        )
        return (tuple(lam), tuple(mu))

    def is_k_leg_map(self) -> bool:
        legs = self.legs()
        if not legs or self.root not in legs:
            return False
        if self.colors is None:
            return False
        return all(self.color_of_dart(d) == WHITE for d in legs)

    # -- canonical form (rooted isomorphism) ---------------------------------------

    def canonical_form(self):
        """Relabel darts by first visit from the root; rooted maps are
        rigid, so this tuple is a complete isomorphism invariant."""
        D = len(self.nu)
        label = {self.root: 0}
        order = [self.root]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for e in (self.nu[d], self.alpha[d]):
                if e not in label:
                    label[e] = len(order)
                    order.append(e)
        nu = [0] * D
        alpha = [0] * D
        for d in range(D):
            nu[label[d]] = label[self.nu[d]]
            alpha[label[d]] = label[self.alpha[d]]
        colors = None
        if self.colors is not None:
            colors = [None] * self.n_vertices()
            seen = set()
            idx = 0
            for d in order:
                v = self.vertex_of[d]
                if v not in seen:
                    seen.add(v)
                    colors[idx] = self.colors[v]
                    idx += 1
            colors = tuple(colors)
        return (tuple(nu), tuple(alpha), 0, colors)

    def __eq__(self, other):
        return isinstance(other, CombMap) and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash(self.canonical_form())

    def __repr__(self):
        return f"CombMap(D={self.n_darts()}, V={self.n_vertices()}, E={self.n_edges()}, legs={len(self.legs())})"


def _cycles(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        c = [start]
        seen[start] = True
        cur = perm[start]
        while cur != start:
            c.append(cur)
            seen[cur] = True
            cur = perm[cur]
        out.append(c)
    return out


# -- serialization -----------------------------------------------------------------
#
# Text form: ``D <darts> root <r> | nu: (c1)(c2)... | alpha: a b, c d, ... | colors: WB...``
# with cycle entries and pair entries in dart ids; legs are the darts not
# listed in any alpha pair.


def map_to_string(m: CombMap) -> str:
    nu_txt = "".join("(" + " ".join(map(str, c)) + ")" for c in m.vertex_cycles)
    pairs = [f"{d} {m.alpha[d]}" for d in range(m.n_darts()) if m.alpha[d] > d]
    colors = "".join(m.colors) if m.colors is not None else "-"
    return f"D {m.n_darts()} root {m.root} | {nu_txt} | {', '.join(pairs)} | {colors}"


def map_from_string(text: str) -> CombMap:
    head, nu_txt, alpha_txt, colors_txt = [p.strip() for p in text.split("|")]
    bits = head.split()
    D = int(bits[1])
    root = int(bits[3])
    nu = [None] * D
    for cyc in nu_txt.replace("(", " ").split(")"):
        ds = [int(x) for x in cyc.split()]
        for i, d in enumerate(ds):
            nu[d] = ds[(i + 1) % len(ds)]
    alpha = list(range(D))
    if alpha_txt:
        for pair in alpha_txt.split(","):
            a, b = [int(x) for x in pair.split()]
            alpha[a], alpha[b] = b, a
    colors = None if colors_txt == "-" else list(colors_txt)
    return CombMap(nu, alpha, root, colors)


# -- closure --------------------------------------------------------------------


def tree_to_dart_map(t: PlaneTree, extra_alpha=None) -> CombMap:
    """Darts are the slots of the tree, numbered in vertex-major order."""
    ids = {}
    k = 0
    for v, vslots in enumerate(t.slots):
        for j in range(len(vslots)):
            ids[(v, j)] = k
            k += 1
    nu = [0] * k
    alpha = list(range(k))
    for v, vslots in enumerate(t.slots):
        deg = len(vslots)
        for j, s in enumerate(vslots):
            nu[ids[(v, j)]] = ids[(v, (j + 1) % deg)]
            if s != HALF:
                _, w, kk = s
                alpha[ids[(v, j)]] = ids[(w, kk)]
    if extra_alpha:
        for a, b in extra_alpha:
            alpha[ids[a]], alpha[ids[b]] = ids[b], ids[a]
    colors = [t.colors[v] for v in range(t.n_vertices())]
    return CombMap(nu, alpha, ids[t.root], colors)


def closure(t: PlaneTree) -> CombMap:
    """Fuse matched (bud, leaf) pairs of a balanced blossom tree into edges.

    The result is a k-leg map, k the total charge, rooted at the root
    leaf, with the same degree distribution as the tree.
    """
    if not t.is_blossom():
        raise ValueError("closure expects a blossom tree")
    if t.kind(t.root) != "leaf" or not is_balanced(t):
        raise ValueError("closure expects a balanced tree rooted at a leaf")
    m = match_half_edges(t)
    if m.unmatched_buds:
        raise ValueError("closure needs nonnegative total charge")
    cm = tree_to_dart_map(t, extra_alpha=m.pairs)
    if not cm.is_planar():
        raise AssertionError("closure produced a non-planar dart structure")
    return cm


# -- opening ----------------------------------------------------------------------


def _separating(m_nu, m_alpha, d: int) -> bool:
    """Is the edge carried by dart d separating?  Union-find over darts,
    joining rotation neighbours and all alpha pairs except this edge."""
    D = len(m_nu)
    parent = list(range(D))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    e = m_alpha[d]
    for a in range(D):
        union(a, m_nu[a])
        b = m_alpha[a]
        if b != a and a not in (d, e):
            union(a, b)
    return find(d) != find(e)


def opening(m: CombMap) -> PlaneTree:
    """Open a k-leg map into a balanced tree of total charge k.

    Walk the infinite face counterclockwise from the root leg; each time
    an edge has just been traversed out of its black endpoint and is
    non-separating, cut it into a bud (black side) and a leaf (white
    side), and keep walking in the merged face; stop after a full turn
    with no cut.
    """
    if m.colors is None:
        raise ValueError("opening needs a bicolored map")
    if m.alpha[m.root] != m.root:
        raise ValueError("opening expects a map rooted at a leg")
    nu = list(m.nu)
    alpha = list(m.alpha)
    colors = m.colors

    def vertex_color(d):
        return colors[m.vertex_of[d]]

    cur = m.root
    steps_since_cut = 0
    remaining = sum(1 for d in range(len(alpha)) if alpha[d] != d) // 2
    face_len = len(m.face_of(m.root))
    while remaining and steps_since_cut <= face_len:
        nxt = nu[alpha[cur]]
        d = cur
        if alpha[d] != d and vertex_color(d) == BLACK and not _separating(nu, alpha, d):
            e = alpha[d]
            alpha[d] = d
            alpha[e] = e
            remaining -= 1
            steps_since_cut = 0
            face_len = _face_len(nu, alpha, m.root)
            nxt = nu[d]  # d is now a leg: continue around the corner
        else:
            steps_since_cut += 1
        cur = nxt

    cut = CombMap(nu, alpha, m.root, colors, check=False)
    for d in range(len(alpha)):
        if alpha[d] != d and not _separating(nu, alpha, d):
            raise AssertionError("opening finished with a non-separating edge")
    return dart_map_to_tree(cut)


def _face_len(nu, alpha, d0):
    n = 1
    cur = nu[alpha[d0]]
    while cur != d0:
        n += 1
        cur = nu[alpha[cur]]
    return n


def dart_map_to_tree(m: CombMap) -> PlaneTree:
    """Convert a one-face (all edges separating) dart map to a PlaneTree."""
    slot_of = {}
    for v, cyc in enumerate(m.vertex_cycles):
        for j, d in enumerate(cyc):
            slot_of[d] = (v, j)
    slots = []
    for v, cyc in enumerate(m.vertex_cycles):
        row = []
        for d in cyc:
            if m.alpha[d] == d:
                row.append(HALF)
            else:
                w, k = slot_of[m.alpha[d]]
                row.append(("e", w, k))
        slots.append(row)
    colors = [m.colors[v] for v in range(m.n_vertices())]
    return PlaneTree(colors, slots, slot_of[m.root])


# -- permutation-pair encoding ------------------------------------------------------


@dataclass(frozen=True)
class PermPair:
    """(sigma, rho) on edge labels {0..n-1}: cycles of sigma are the
    counterclockwise edge orders around white vertices, cycles of rho the
    same around black vertices."""

    n: int
    sigma: tuple
    rho: tuple

    def is_transitive(self) -> bool:
        return perms_transitive(self.n, [self.sigma, self.rho])

    def is_planar(self) -> bool:
        srho = tuple(self.sigma[self.rho[i]] for i in range(self.n))
        return (
            count_cycles(self.sigma) + count_cycles(self.rho) + count_cycles(srho)
            == self.n + 2
        )


def count_cycles(perm) -> int:
    return len(_cycles(list(perm)))


def perms_transitive(n, perms) -> bool:
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for p in perms:
            b = p[a]
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == n


def to_perm_pair(m: CombMap) -> PermPair:
    """Encode a leg-free bipartite map; edge labels follow a canonical
    traversal from the root so the encoding is rooted-isomorphism stable."""
    if m.colors is None:
        raise ValueError("perm-pair encoding needs a bicolored map")
    if m.legs():
        raise ValueError("perm-pair encoding is for leg-free maps")
    # label edges in canonical dart order
    cf_nu, cf_alpha, _, _ = m.canonical_form()
    # rebuild the canonical map to read off vertex cycles in a stable way
    mc = CombMap(cf_nu, cf_alpha, 0, None, check=False)
    edge_id = {}
    for d in range(mc.n_darts()):
        e = min(d, cf_alpha[d])
        if e not in edge_id:
            edge_id[e] = len(edge_id)
    n = len(edge_id)

    def edge_of(d):
        return edge_id[min(d, cf_alpha[d])]

    # recover colors in canonical labels
    label_colors = _canonical_colors(m)
    sigma = [0] * n
    rho = [0] * n
    for v, cyc in enumerate(mc.vertex_cycles):
        perm = sigma if label_colors[v] == WHITE else rho
        for i, d in enumerate(cyc):
            perm[edge_of(d)] = edge_of(cyc[(i + 1) % len(cyc)])
    return PermPair(n, tuple(sigma), tuple(rho))


def _canonical_colors(m: CombMap):
    _, _, _, colors = m.canonical_form()
    return colors


def from_perm_pair(p: PermPair) -> CombMap:
    """Decode: darts 2e (white side) and 2e+1 (black side) per edge e."""
    if not p.is_transitive():
        raise ValueError("permutation pair is not transitive")
    D = 2 * p.n
    nu = [0] * D
    alpha = [0] * D
    for e in range(p.n):
        alpha[2 * e] = 2 * e + 1
        alpha[2 * e + 1] = 2 * e
        nu[2 * e] = 2 * p.sigma[e]
        nu[2 * e + 1] = 2 * p.rho[e] + 1
    colors = []
    m = CombMap(nu, alpha, 0, None, check=False)
    for cyc in m.vertex_cycles:
        colors.append(WHITE if cyc[0] % 2 == 0 else BLACK)
    return CombMap(nu, alpha, 0, colors)
