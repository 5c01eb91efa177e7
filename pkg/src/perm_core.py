"""
Exact permutation arithmetic on {1, ..., m}

Composition is left-to-right everywhere: (a * b)(i) = b(a(i)), so the first
factor acts first, matching braid-word concatenation.
Points are 1-based in all input and output; storage is 0-based.
"""
import math
import re
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from src.errors import DegreeMismatchError, WordSyntaxError


class Permutation:
    """Immutable element of S_m in one-line form"""

    __slots__ = ("_img", "_hash")

    def __init__(self, image: Sequence[int]):
        """
        Build a permutation from its 1-based one-line form

        Args:
            image: image[i-1] = pi(i)

        Raises:
            ValueError: if image is empty or not a bijection of {1, ..., m}
        """
        img = tuple(int(x) - 1 for x in image)
        if not img:
            raise ValueError("Permutation degree must be at least 1")
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"Not a bijection of 1..{len(img)}: {list(image)}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def from_zero_based(cls, img: Tuple[int, ...]) -> "Permutation":
        """Wrap a 0-based tuple without validation (internal fast path)"""
        obj = cls.__new__(cls)
        obj._img = img
        obj._hash = hash(img)
        return obj

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def image(self) -> Tuple[int, ...]:
        """1-based one-line form"""
        return tuple(x + 1 for x in self._img)

    @property
    def zero_based(self) -> Tuple[int, ...]:
        return self._img

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))


def identity(degree: int) -> Permutation:
    """The identity of S_degree"""
    if degree < 1:
        raise ValueError(f"Degree must be >= 1, got {degree}")
    return Permutation.from_zero_based(tuple(range(degree)))


def transposition(degree: int, i: int, j: int) -> Permutation:
    """The transposition (i j) in S_degree"""
    return from_cycles(degree, [(i, j)])


def longest(degree: int) -> Permutation:
    """The reversal i -> m + 1 - i, longest element of S_m"""
    return Permutation.from_zero_based(tuple(range(degree - 1, -1, -1)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """
    Left-to-right composition: result(i) = b(a(i))

    Raises:
        DegreeMismatchError: if the degrees differ
    """
    if a.degree != b.degree:
        raise DegreeMismatchError(f"Cannot compose degree {a.degree} with degree {b.degree}")
    bi = b._img
    return Permutation.from_zero_based(tuple(bi[x] for x in a._img))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a._img):
        inv[x] = i
    return Permutation.from_zero_based(tuple(inv))


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """
    Left-to-right product of cycles (disjointness not required)

    Args:
        degree: m
        cycles: tuples of 1-based points, e.g. [(1, 2), (3, 4)]

    Raises:
        ValueError: on an out-of-range point or a point repeated inside one cycle
    """
    result = identity(degree)
    for cycle in cycles:
        cycle = tuple(int(p) for p in cycle)
        for p in cycle:
            if not 1 <= p <= degree:
                raise ValueError(f"Point {p} out of range 1..{degree} in cycle {cycle}")
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"Repeated point in cycle {cycle}")
        if len(cycle) < 2:
            continue
        img = list(range(degree))
        for k, p in enumerate(cycle):
            img[p - 1] = cycle[(k + 1) % len(cycle)] - 1
        result = compose(result, Permutation.from_zero_based(tuple(img)))
    return result


def to_cycles(a: Permutation) -> List[Tuple[int, ...]]:
    """Disjoint cycles, each starting at its minimum, sorted by minimum, fixed points omitted"""
    seen = [False] * a.degree
    cycles = []
    for start in range(a.degree):
        if seen[start]:
            continue
        cycle = []
        pos = start
        while not seen[pos]:
            seen[pos] = True
            cycle.append(pos + 1)
            pos = a._img[pos]
        if len(cycle) > 1:
            cycles.append(tuple(cycle))
    return cycles


def inversions(a: Permutation) -> int:
    """Number of pairs i < j with a(i) > a(j)"""
    img = a._img
    n = len(img)
    return sum(1 for i in range(n) for j in range(i + 1, n) if img[i] > img[j])


def order(a: Permutation) -> int:
    """Multiplicative order (lcm of cycle lengths)"""
    return reduce(math.lcm, (len(c) for c in to_cycles(a)), 1)


def format_cycles(a: Permutation) -> str:
    """Cycle notation with explicit separators, e.g. "(1,3)(2,5)"; identity is "()" """
    cycles = to_cycles(a)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycles)


def format_one_line(a: Permutation) -> str:
    return "[" + ",".join(str(p) for p in a.image) + "]"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: Optional[int] = None) -> Permutation:
    """
    Parse one-line "[2,1,4,3]" or cycle "(1,2)(3,4)" notation

    Points inside a cycle must be separated by commas or spaces; "(12)" is
    rejected instead of being guessed as (1,2) or the point 12.

    Args:
        text: permutation text
        degree: required degree for cycle input (defaults to the largest point)

    Raises:
        WordSyntaxError: on malformed text
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise WordSyntaxError(f"Unterminated one-line permutation: {text!r}")
        try:
            points = [int(t) for t in re.split(r"[,\s]+", text[1:-1].strip()) if t]
            perm = Permutation(points)
        except ValueError as e:
            raise WordSyntaxError(f"Bad one-line permutation {text!r}: {e}")
        if degree is not None and perm.degree != degree:
            raise WordSyntaxError(f"Expected degree {degree}, got {perm.degree}")
        return perm

    if _CYCLE_RE.sub("", text).strip():
        raise WordSyntaxError(f"Unrecognised permutation syntax: {text!r}")

    cycles = []
    for body in _CYCLE_RE.findall(text):
        tokens = [t for t in re.split(r"[,\s]+", body.strip()) if t]
        if len(tokens) == 1:
            raise WordSyntaxError(
                f"Cycle ({body}) has a single entry; separate points with commas, e.g. (1,2)"
            )
        try:
            cycles.append(tuple(int(t) for t in tokens))
        except ValueError:
            raise WordSyntaxError(f"Non-integer point in cycle ({body})")

    if degree is None:
        degree = max((max(c) for c in cycles if c), default=1)
    try:
        return from_cycles(degree, cycles)
    except ValueError as e:
        raise WordSyntaxError(str(e))
