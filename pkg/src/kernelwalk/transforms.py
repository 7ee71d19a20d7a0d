"""Transformations of {1..n} in image notation, and their basic invariants.

A transformation f = [x1 ... xn] sends i to xi.  Composition acts to the
right: i(fg) = g(f(i)), so the matrix map f -> M(f) with M(f)[i][j] = 1 iff
f(i) = j is a homomorphism, M(fg) = M(f) M(g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ParseError
from .ratlinalg import RationalMatrix


@dataclass(frozen=True, order=True)
class Transformation:
    """Image tuple (1-based): image[i-1] is where i goes."""

    image: tuple

    def __post_init__(self):
        n = len(self.image)
        if n == 0 or any(not 1 <= x <= n for x in self.image):
            raise ValueError(f"not a self-map: {self.image}")

    @property
    def degree(self):
        return len(self.image)

    def __call__(self, i):
        return self.image[i - 1]

    def __str__(self):
        return "[" + " ".join(str(x) for x in self.image) + "]"

    @classmethod
    def parse(cls, text):
        """Accepts '[4 5 1 3 1 4]' and the compact '[451314]' (digits only)."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        parts = body.split()
        if len(parts) == 1 and len(parts[0]) > 1:
            if not parts[0].isdigit():
                raise ParseError(f"bad transformation literal: {text!r}")
            parts = list(parts[0])
        try:
            image = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(f"bad transformation literal: {text!r}") from None
        if not parts or any(not 1 <= x <= len(image) for x in image):
            raise ParseError(f"not a self-map of {{1..{len(image)}}}: {text!r}")
        return cls(image)

    def is_idempotent(self):
        return compose(self, self) == self


def identity_transformation(n):
    return Transformation(tuple(range(1, n + 1)))


def compose(f: Transformation, g: Transformation) -> Transformation:
    """fg acting to the right: i |-> g(f(i))."""
    if f.degree != g.degree:
        raise DimensionMismatch(f"degrees {f.degree} != {g.degree}")
    return Transformation(tuple(g.image[x - 1] for x in f.image))


def matrix_of(f: Transformation) -> RationalMatrix:
    n = f.degree
    return RationalMatrix([[Fraction(f.image[i] == j + 1) for j in range(n)]
                           for i in range(n)])


def range_of(f: Transformation) -> tuple:
    """Image set, sorted."""
    return tuple(sorted(set(f.image)))


def rank_of(f: Transformation) -> int:
    return len(set(f.image))


def kernel_partition_of(f: Transformation) -> tuple:
    """Partition of {1..n} by equal image, blocks sorted by their minima."""
    blocks = {}
    for i in range(1, f.degree + 1):
        blocks.setdefault(f.image[i - 1], []).append(i)
    return tuple(sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0]))


def idempotent_from(partition, range_set) -> Transformation:
    """The unique idempotent with the given kernel partition and range.

    Requires exactly one range element per block; each block maps to it.
    """
    n = sum(len(b) for b in partition)
    image = [0] * n
    targets = set(range_set)
    for block in partition:
        hit = [x for x in block if x in targets]
        if len(hit) != 1:
            raise ValueError(f"range {range_set} is not a transversal of {partition}")
        for i in block:
            image[i - 1] = hit[0]
    return Transformation(tuple(image))


def range_state_vector(f: Transformation) -> RationalMatrix:
    """Row vector indicator of the range, 1 x n."""
    r = set(f.image)
    return RationalMatrix.row_vector(
        [Fraction(j in r) for j in range(1, f.degree + 1)])


def range_diag(f: Transformation) -> RationalMatrix:
    """Diagonal matrix indicator of the range, n x n."""
    r = set(f.image)
    return RationalMatrix.diagonal(
        [Fraction(j in r) for j in range(1, f.degree + 1)])


def parse_word(text, names):
    """Word over named generators, e.g. 'RBR' or 'a b a'; returns index tuple."""
    tokens = text.split() if " " in text.strip() else list(text.strip())
    idx = []
    for t in tokens:
        if t not in names:
            raise ParseError(f"unknown generator {t!r}; have {sorted(names)}")
        idx.append(names.index(t) if isinstance(names, (list, tuple)) else names[t])
    return tuple(idx)


def apply_word(word, generators) -> Transformation:
    """Evaluate a generator-index word left to right."""
    if not word:
        return identity_transformation(generators[0].degree)
    f = generators[word[0]]
    for i in word[1:]:
        f = compose(f, generators[i])
    return f
