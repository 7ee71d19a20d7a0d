"""Semigroup generation, the minimal ideal, and its rectangular group structure.

The kernel of a finite transformation semigroup is its minimal two-sided
ideal: exactly the elements of minimal rank.  It decomposes into a grid of
cells indexed by (kernel partition, range); each cell is a group, and the
whole kernel is coordinatized as X x G x Y with a sandwich product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IndexOutOfRange, StructureViolation
from .transforms import (Transformation, apply_word, compose, idempotent_from,
                         kernel_partition_of, range_of, rank_of)


@dataclass(frozen=True)
class Semigroup:
    generators: tuple
    elements: tuple            # BFS order, generators first
    words: dict = field(compare=False)  # element -> shortest generator-index word

    @property
    def degree(self):
        return self.generators[0].degree

    def __len__(self):
        return len(self.elements)

    def __contains__(self, f):
        return f in self.words

    def word_for(self, f):
        return self.words[f]


def generate(generators) -> Semigroup:
    """Close the generators under right multiplication, breadth first.

    Every nonempty product is reached through its prefixes, so right
    multiplication alone suffices and BFS order gives shortest words.
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("need at least one generator")
    if len({g.degree for g in generators}) != 1:
        raise ValueError("generators must share a degree")
    words = {}
    queue = []
    for i, g in enumerate(generators):
        if g not in words:
            words[g] = (i,)
            queue.append(g)
    head = 0
    while head < len(queue):
        f = queue[head]
        head += 1
        for i, g in enumerate(generators):
            fg = compose(f, g)
            if fg not in words:
                words[fg] = words[f] + (i,)
                queue.append(fg)
    return Semigroup(generators=generators, elements=tuple(queue), words=words)


def kernel(S: Semigroup) -> tuple:
    """Minimal-rank elements, sorted; verified to be a two-sided ideal."""
    r = min(rank_of(f) for f in S.elements)
    K = sorted(f for f in S.elements if rank_of(f) == r)
    ks = set(K)
    for k in K:
        for g in S.generators:
            if compose(k, g) not in ks or compose(g, k) not in ks:
                raise StructureViolation("minimal-rank set is not an ideal")
    return tuple(K)


def minimal_rank(generators):
    """Minimal rank over all nonempty products, with a witness word.

    BFS over image subsets: im(wc) = c(im(w)), so ranks are determined by
    the image set alone and the state space has at most 2^n states.
    """
    generators = tuple(generators)
    start = {}
    for i, g in enumerate(generators):
        s = frozenset(g.image)
        if s not in start:
            start[s] = (i,)
    seen = dict(start)
    queue = list(start)
    head = 0
    while head < len(queue):
        s = queue[head]
        head += 1
        for i, g in enumerate(generators):
            t = frozenset(g.image[x - 1] for x in s)
            if t not in seen:
                seen[t] = seen[s] + (i,)
                queue.append(t)
    best = min(seen, key=len)
    return len(best), seen[best]


def kernel_from_generators(generators) -> tuple:
    """Kernel without enumerating the whole semigroup.

    The minimal ideal is the closure of any one minimal-rank element under
    left and right multiplication by generators.
    """
    generators = tuple(generators)
    _, word = minimal_rank(generators)
    k0 = apply_word(word, generators)
    seen = {k0}
    queue = [k0]
    head = 0
    while head < len(queue):
        k = queue[head]
        head += 1
        for g in generators:
            for p in (compose(k, g), compose(g, k)):
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class KernelStructure:
    """Grid coordinates for the kernel: cells[(i,j)] = partition i, range j.

    grid[i][j] is the idempotent of cell (i,j); the base cell (0,0) is the
    reference group G, X runs down column 0, Y along row 0.
    """

    elements: tuple
    rank: int
    partitions: tuple          # sorted; each a tuple of blocks sorted by minimum
    ranges: tuple              # sorted image tuples
    grid: tuple                # grid[i][j] idempotent
    cells: dict = field(compare=False)
    group_order: int = 0

    @property
    def base(self) -> Transformation:
        return self.grid[0][0]

    @property
    def X(self) -> tuple:
        return tuple(self.grid[i][0] for i in range(len(self.partitions)))

    @property
    def Y(self) -> tuple:
        return tuple(self.grid[0][j] for j in range(len(self.ranges)))

    @property
    def group_elements(self) -> tuple:
        return self.cells[(0, 0)]

    def cell_of(self, k: Transformation):
        i = self.partitions.index(kernel_partition_of(k))
        j = self.ranges.index(range_of(k))
        return i, j


def rees_structure(K) -> KernelStructure:
    """Coordinatize a kernel as a rectangular grid of groups.

    Raises StructureViolation when the input is not a completely simple
    ideal of constant rank with one idempotent per cell and even cells.
    """
    K = tuple(sorted(K))
    ranks = {rank_of(k) for k in K}
    if len(ranks) != 1:
        raise StructureViolation(f"mixed ranks {sorted(ranks)}")
    r = ranks.pop()
    partitions = tuple(sorted({kernel_partition_of(k) for k in K}))
    ranges = tuple(sorted({range_of(k) for k in K}))
    cells = {}
    for k in K:
        i = partitions.index(kernel_partition_of(k))
        j = ranges.index(range_of(k))
        cells.setdefault((i, j), []).append(k)
    sizes = {len(v) for v in cells.values()}
    if len(cells) != len(partitions) * len(ranges) or len(sizes) != 1:
        raise StructureViolation("cells do not fill an even grid")
    group_order = sizes.pop()
    kset = set(K)
    grid = []
    for P in partitions:
        row = []
        for R in ranges:
            try:
                e = idempotent_from(P, R)
            except ValueError:
                raise StructureViolation(
                    f"range {R} is not a transversal of partition {P}") from None
            if e not in kset:
                raise StructureViolation(f"cell idempotent {e} left the kernel")
            row.append(e)
        grid.append(tuple(row))
    return KernelStructure(elements=K, rank=r, partitions=partitions,
                           ranges=ranges, grid=tuple(grid),
                           cells={ij: tuple(v) for ij, v in cells.items()},
                           group_order=group_order)


def sandwich(ks: KernelStructure, j, i) -> Transformation:
    """Sandwich entry phi(y_j, x_i) = y_j x_i, an element of the base group."""
    if not 0 <= j < len(ks.ranges) or not 0 <= i < len(ks.partitions):
        raise IndexOutOfRange(f"cell ({i},{j}) outside the grid")
    return compose(ks.Y[j], ks.X[i])


def sandwich_table(ks: KernelStructure) -> tuple:
    """Full sandwich matrix, rows indexed by Y, columns by X."""
    return tuple(tuple(sandwich(ks, j, i) for i in range(len(ks.partitions)))
                 for j in range(len(ks.ranges)))


def rees_coordinates(ks: KernelStructure, k: Transformation):
    """(i, g, j) with k = x_i g y_j and g = e k e in the base group."""
    i, j = ks.cell_of(k)
    e = ks.base
    g = compose(compose(e, k), e)
    if g not in ks.cells[(0, 0)]:
        raise StructureViolation(f"e k e left the base group for {k}")
    assert compose(compose(ks.X[i], g), ks.Y[j]) == k
    return i, g, j


def rees_product(ks: KernelStructure, a, b):
    """Product in coordinates: (i1,g1,j1)(i2,g2,j2) = (i1, g1 phi(j1,i2) g2, j2)."""
    i1, g1, j1 = a
    i2, g2, j2 = b
    mid = compose(compose(g1, sandwich(ks, j1, i2)), g2)
    return i1, mid, j2


def local_group_table(ks: KernelStructure, i=0, j=0):
    """Cayley table of cell (i,j) as index pairs; verifies the group axioms."""
    cell = ks.cells[(i, j)]
    e = ks.grid[i][j]
    pos = {g: a for a, g in enumerate(cell)}
    table = []
    for a in cell:
        row = []
        for b in cell:
            ab = compose(a, b)
            if ab not in pos:
                raise StructureViolation(f"cell ({i},{j}) is not closed")
            row.append(pos[ab])
        table.append(tuple(row))
    ei = pos[e]
    for a in range(len(cell)):
        if table[ei][a] != a or table[a][ei] != a:
            raise StructureViolation(f"{e} is not an identity of cell ({i},{j})")
        if ei not in {table[a][b] for b in range(len(cell))}:
            raise StructureViolation(f"missing inverse in cell ({i},{j})")
    return tuple(table)


def element_order(g: Transformation, e: Transformation) -> int:
    """Order of g in a local group with identity e."""
    p, m = g, 1
    while p != e:
        p = compose(p, g)
        m += 1
        if m > g.degree ** g.degree:
            raise StructureViolation(f"{g} generates no power equal to {e}")
    return m


def order_profile(ks: KernelStructure, i=0, j=0) -> dict:
    """Histogram {order: count} over the cell's group elements."""
    e = ks.grid[i][j]
    prof = {}
    for g in ks.cells[(i, j)]:
        m = element_order(g, e)
        prof[m] = prof.get(m, 0) + 1
    return prof
