"""
Finite Coxeter systems of types A_n, B_n, D_n and I2(k)
Presentations, relation lists and concrete realizations (length, descents, w0)

Generator labelling matches the maps built in
src/reprmap.py, not Bourbaki: in B_n the 4-bond joins s1 and s2, in D_n the
branch node is s2 (joined to s1, s3, s4) and s4, s5, ... form the long arm.
"""
import logging
import math
import re
from abc import ABC, abstractmethod
from collections import deque
from typing import Hashable, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.errors import (
    ClosureCapError,
    ClosureSizeError,
    DegreeMismatchError,
    OutOfScopeError,
    RelationViolationError,
    WordSyntaxError,
)
from src.perm_core import Permutation, compose, format_one_line, identity, inverse
from src.settings import SettingKey, get_settings_manager

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_CAP = 10_000_000

_MIN_RANK = {"A": 1, "B": 2, "D": 4, "I2": 2}
_OUT_OF_SCOPE = re.compile(r"^(H[34]|F4|E[678])$")


class CoxeterType(BaseModel):
    """Finite Coxeter type: family plus rank (A/B/D) or k (I2)"""
    model_config = ConfigDict(frozen=True)

    family: Literal["A", "B", "D", "I2"] = Field(..., description="Coxeter family")
    rank_or_k: int = Field(..., description="Rank n for A/B/D, k for I2(k)")

    @model_validator(mode="after")
    def _check_bounds(self):
        low = _MIN_RANK[self.family]
        if self.rank_or_k < low:
            raise ValueError(f"{self.family} needs {'k' if self.family == 'I2' else 'rank'} >= {low}, got {self.rank_or_k}")
        return self

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        """
        Parse "A5", "B4", "D4" or "I2(7)"

        Raises:
            OutOfScopeError: for H3, H4, F4, E6, E7, E8
            WordSyntaxError: for anything else unrecognised
        """
        t = text.strip().upper().replace(" ", "")
        if _OUT_OF_SCOPE.match(t):
            raise OutOfScopeError(
                f"{t} is out of scope per Remark 4.1: the symmetric group needed for an embedding is too large"
            )
        match = re.fullmatch(r"I2\((\d+)\)", t)
        if match:
            return cls(family="I2", rank_or_k=int(match.group(1)))
        match = re.fullmatch(r"([ABD])(\d+)", t)
        if match:
            return cls(family=match.group(1), rank_or_k=int(match.group(2)))
        raise WordSyntaxError(f"Unrecognised Coxeter type {text!r} (expected e.g. A5, B4, D4, I2(7))")

    @property
    def rank(self) -> int:
        return 2 if self.family == "I2" else self.rank_or_k

    @property
    def order(self) -> int:
        """Known group order from the classification"""
        n = self.rank_or_k
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "B":
            return 2 ** n * math.factorial(n)
        if self.family == "D":
            return 2 ** (n - 1) * math.factorial(n)
        return 2 * n

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.rank_or_k})"
        return f"{self.family}{self.rank_or_k}"

    def __str__(self) -> str:
        return self.name


class CoxeterMatrix(BaseModel):
    """Symmetric Coxeter matrix, diagonal 1, off-diagonal >= 2"""
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_shape(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError("Coxeter matrix must be square")
            for j, value in enumerate(row):
                if value != self.entries[j][i]:
                    raise ValueError(f"Coxeter matrix not symmetric at ({i + 1},{j + 1})")
                if i == j and value != 1:
                    raise ValueError("Coxeter matrix diagonal must be 1")
                if i != j and value < 2:
                    raise ValueError(f"Off-diagonal entry ({i + 1},{j + 1}) must be >= 2")
        return self

    @property
    def size(self) -> int:
        return len(self.entries)

    def bond(self, i: int, j: int) -> int:
        """m(s_i, s_j) with 1-based indices"""
        return self.entries[i - 1][j - 1]


class Relation(BaseModel):
    """A defining relation lhs = rhs over 1-based generator indices"""
    model_config = ConfigDict(frozen=True)

    lhs: Tuple[int, ...]
    rhs: Tuple[int, ...]
    kind: Literal["braid", "order"]

    @model_validator(mode="after")
    def _check_braid(self):
        if self.kind == "braid":
            if len(self.lhs) != len(self.rhs) or len(self.lhs) < 2:
                raise ValueError("Braid relation sides must have equal length >= 2")
            s, t = self.lhs[0], self.lhs[1]
            if s == t:
                raise ValueError("Braid relation must alternate two distinct generators")
            for side, first, second in ((self.lhs, s, t), (self.rhs, t, s)):
                if any(g != (first if k % 2 == 0 else second) for k, g in enumerate(side)):
                    raise ValueError(f"Braid relation side {side} does not alternate")
        return self

    def label(self) -> str:
        def word(side):
            return "".join(f"s{g}" for g in side) or "1"
        return f"{word(self.lhs)} = {word(self.rhs)}"

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.lhs) | set(self.rhs)))


def coxeter_matrix(ctype: CoxeterType) -> CoxeterMatrix:
    """Coxeter matrix in the labelling used by the shipped maps"""
    n = ctype.rank
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def join(i, j, value):
        m[i - 1][j - 1] = m[j - 1][i - 1] = value

    if ctype.family == "A":
        for i in range(1, n):
            join(i, i + 1, 3)
    elif ctype.family == "B":
        join(1, 2, 4)
        for i in range(2, n):
            join(i, i + 1, 3)
    elif ctype.family == "D":
        join(1, 2, 3)
        join(2, 3, 3)
        join(2, 4, 3)
        for i in range(4, n):
            join(i, i + 1, 3)
    else:
        join(1, 2, ctype.rank_or_k)

    return CoxeterMatrix(entries=tuple(tuple(row) for row in m))


def _alternating(s: int, t: int, length: int) -> Tuple[int, ...]:
    return tuple(s if k % 2 == 0 else t for k in range(length))


def artin_relations(cm: CoxeterMatrix) -> List[Relation]:
    """One braid relation per unordered generator pair, commutations included"""
    relations = []
    for i in range(1, cm.size + 1):
        for j in range(i + 1, cm.size + 1):
            k = cm.bond(i, j)
            relations.append(Relation(lhs=_alternating(i, j, k), rhs=_alternating(j, i, k), kind="braid"))
    return relations


def coxeter_relations(cm: CoxeterMatrix) -> List[Relation]:
    """Order relations s^2 = 1 followed by the braid relations"""
    orders = [Relation(lhs=(i, i), rhs=(), kind="order") for i in range(1, cm.size + 1)]
    return orders + artin_relations(cm)


def evaluate_images(images: Sequence[Permutation], word: Iterable[int]) -> Permutation:
    """Product of generator images along a word (signs ignored, generators are involutions)"""
    result = identity(images[0].degree)
    for letter in word:
        result = compose(result, images[abs(letter) - 1])
    return result


def check_relations(ctype: CoxeterType, images: Sequence[Permutation]) -> List[Tuple[Relation, bool]]:
    """Evaluate every Coxeter relation on the given generator images"""
    cm = coxeter_matrix(ctype)
    return [
        (rel, evaluate_images(images, rel.lhs) == evaluate_images(images, rel.rhs))
        for rel in coxeter_relations(cm)
    ]


class CoxeterRealization(ABC):
    """
    A finite Coxeter group materialized concretely

    Elements are opaque hashable keys (dense ints for the Cayley backend,
    0-based one-line tuples for type A). Products are left-to-right.
    """

    ctype: CoxeterType
    degree: int
    rank: int
    identity: Hashable
    w0: Hashable

    @abstractmethod
    def generator(self, i: int) -> Hashable:
        """Key of s_i (1-based)"""

    @abstractmethod
    def multiply(self, a: Hashable, b: Hashable) -> Hashable:
        """a then b"""

    @abstractmethod
    def inverse(self, a: Hashable) -> Hashable:
        ...

    @abstractmethod
    def length(self, a: Hashable) -> int:
        ...

    @abstractmethod
    def left_descents(self, a: Hashable) -> frozenset:
        """{s : length(s*a) < length(a)}"""

    @abstractmethod
    def right_descents(self, a: Hashable) -> frozenset:
        """{s : length(a*s) < length(a)}"""

    @abstractmethod
    def permutation(self, a: Hashable) -> Permutation:
        """Image of a in S_degree"""

    @abstractmethod
    def element_of(self, perm: Permutation) -> Hashable:
        """Key of the element whose image is perm (KeyError if none)"""

    @property
    @abstractmethod
    def order(self) -> int:
        ...

    @property
    def generator_images(self) -> List[Permutation]:
        return [self.permutation(self.generator(i)) for i in range(1, self.rank + 1)]

    def lmul_gen(self, i: int, a: Hashable) -> Hashable:
        return self.multiply(self.generator(i), a)

    def rmul_gen(self, a: Hashable, i: int) -> Hashable:
        return self.multiply(a, self.generator(i))

    def evaluate(self, word: Iterable[int]) -> Hashable:
        """Element spelled by a word (signs ignored)"""
        result = self.identity
        for letter in word:
            result = self.rmul_gen(result, abs(letter))
        return result

    def reduced_word(self, a: Hashable) -> List[int]:
        """Reduced word, always stripping the smallest left descent"""
        word = []
        while a != self.identity:
            s = min(self.left_descents(a))
            word.append(s)
            a = self.lmul_gen(s, a)
        return word

    def meet_weak_left(self, a: Hashable, b: Hashable) -> Hashable:
        """
        Meet of a and b in left weak order (left gcd of simples)

        Strips a common left descent from both until none remains; every atom
        below both is below the meet, so the stripped prefix is the meet.
        """
        t = self.identity
        while True:
            common = self.left_descents(a) & self.left_descents(b)
            if not common:
                return t
            s = min(common)
            a = self.lmul_gen(s, a)
            b = self.lmul_gen(s, b)
            t = self.rmul_gen(t, s)

    def left_weight(self, a: Hashable, b: Hashable) -> Optional[Tuple[Hashable, Hashable]]:
        """
        One sweep step of the normal form: (a * t, t^-1 * b) for
        t = meet(a^-1 * w0, b), or None if the pair is already left-weighted

        The left descents of a^-1 * w0 are the generators that are not right
        descents of a, so t is trivial exactly when the pair is left-weighted.
        """
        if self.left_descents(b) <= self.right_descents(a):
            return None
        t = self.meet_weak_left(self.multiply(self.inverse(a), self.w0), b)
        return self.multiply(a, t), self.multiply(self.inverse(t), b)

    def conjugate(self, w: Hashable, by: Hashable) -> Hashable:
        """by^-1 * w * by"""
        return self.multiply(self.multiply(self.inverse(by), w), by)

    def is_central(self, w: Hashable) -> bool:
        return all(
            self.multiply(w, self.generator(i)) == self.multiply(self.generator(i), w)
            for i in range(1, self.rank + 1)
        )

    def key_label(self, a: Hashable) -> str:
        """Short text label used in normal-form output"""
        return str(a)


class CayleyRealization(CoxeterRealization):
    """
    Realization by BFS closure over right multiplication

    Element ids are BFS discovery order with identity = 0, so the table is
    deterministic given the generator order.
    """

    def __init__(self, ctype: CoxeterType, generator_images: Sequence[Permutation], cap: Optional[int] = None):
        if len(generator_images) != ctype.rank:
            raise ValueError(f"{ctype} has {ctype.rank} generators, got {len(generator_images)} images")
        degree = generator_images[0].degree
        for img in generator_images:
            if img.degree != degree:
                raise DegreeMismatchError("All generator images must have the same degree")

        violated = [rel.label() for rel, holds in check_relations(ctype, generator_images) if not holds]
        if violated:
            raise RelationViolationError(f"Images violate {ctype} relations: {', '.join(violated)}")

        if cap is None:
            cap = int(get_settings_manager().get_setting(SettingKey.CLOSURE_CAP, DEFAULT_CLOSURE_CAP))

        self.ctype = ctype
        self.degree = degree
        self.rank = ctype.rank

        gens = [img.zero_based for img in generator_images]
        elements: List[Tuple[int, ...]] = [tuple(range(degree))]
        index = {elements[0]: 0}
        lengths = [0]
        right: List[List[int]] = []
        queue = deque([0])
        while queue:
            u = queue.popleft()
            perm_u = elements[u]
            row = []
            for g in gens:
                v_perm = tuple(g[x] for x in perm_u)
                v = index.get(v_perm)
                if v is None:
                    v = len(elements)
                    if v >= cap:
                        raise ClosureCapError(f"BFS closure of {ctype} images exceeded cap of {cap} elements")
                    elements.append(v_perm)
                    index[v_perm] = v
                    lengths.append(lengths[u] + 1)
                    queue.append(v)
                row.append(v)
            right.append(row)

        if len(elements) != ctype.order:
            raise ClosureSizeError(
                f"Closure of {ctype} images has {len(elements)} elements, expected {ctype.order} (e not injective)"
            )

        self._elements = elements
        self._index = index
        # (order, rank) tables: right_table[u, g] = u * s_{g+1}, left_table[u, g] = s_{g+1} * u
        self.right_table = np.array(right, dtype=np.int64)
        self.left_table = np.array(
            [[index[tuple(perm[x] for x in g)] for g in gens] for perm in elements], dtype=np.int64
        )
        self.lengths = np.array(lengths, dtype=np.int64)
        self.left_descent_mask = self.lengths[self.left_table] < self.lengths[:, None]
        self.right_descent_mask = self.lengths[self.right_table] < self.lengths[:, None]

        self._ld = [frozenset((np.flatnonzero(row) + 1).tolist()) for row in self.left_descent_mask]
        self._rd = [frozenset((np.flatnonzero(row) + 1).tolist()) for row in self.right_descent_mask]

        top = int(self.lengths.max())
        longest = np.flatnonzero(self.lengths == top)
        if len(longest) != 1:
            raise ClosureSizeError(f"{ctype} realization has {len(longest)} elements of maximal length")
        self.identity = 0
        self.w0 = int(longest[0])

        logger.info(f"Realized {ctype} in S_{degree}: {len(elements)} elements, length(w0) = {top}")

    @property
    def order(self) -> int:
        return len(self._elements)

    def elements(self) -> range:
        return range(len(self._elements))

    def generator(self, i: int) -> int:
        return int(self.right_table[0, i - 1])

    def multiply(self, a: int, b: int) -> int:
        pa = self._elements[a]
        pb = self._elements[b]
        return self._index[tuple(pb[x] for x in pa)]

    def inverse(self, a: int) -> int:
        return self._index[inverse(Permutation.from_zero_based(self._elements[a])).zero_based]

    def length(self, a: int) -> int:
        return int(self.lengths[a])

    def left_descents(self, a: int) -> frozenset:
        return self._ld[a]

    def right_descents(self, a: int) -> frozenset:
        return self._rd[a]

    def lmul_gen(self, i: int, a: int) -> int:
        return int(self.left_table[a, i - 1])

    def rmul_gen(self, a: int, i: int) -> int:
        return int(self.right_table[a, i - 1])

    def permutation(self, a: int) -> Permutation:
        return Permutation.from_zero_based(self._elements[a])

    def element_of(self, perm: Permutation) -> int:
        return self._index[perm.zero_based]


class TypeARealization(CoxeterRealization):
    """
    S_m as the Coxeter group A_{m-1} without a Cayley table

    Elements are 0-based one-line tuples; length is the inversion count and
    w0 is the reversal. Scales to m = 12 and beyond.
    """

    def __init__(self, m: int):
        if m < 2:
            raise ValueError(f"Type A realization needs m >= 2, got {m}")
        self.ctype = CoxeterType(family="A", rank_or_k=m - 1)
        self.degree = m
        self.rank = m - 1
        self.identity = tuple(range(m))
        self.w0 = tuple(range(m - 1, -1, -1))
        self._gens = []
        for i in range(m - 1):
            g = list(range(m))
            g[i], g[i + 1] = g[i + 1], g[i]
            self._gens.append(tuple(g))

    @property
    def order(self) -> int:
        return math.factorial(self.degree)

    def generator(self, i: int) -> Tuple[int, ...]:
        return self._gens[i - 1]

    def multiply(self, a, b):
        return tuple(b[x] for x in a)

    def inverse(self, a):
        inv = [0] * len(a)
        for i, x in enumerate(a):
            inv[x] = i
        return tuple(inv)

    def length(self, a) -> int:
        n = len(a)
        return sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])

    def left_descents(self, a) -> frozenset:
        # s_i * a swaps positions i, i+1 of a
        return frozenset(i + 1 for i in range(len(a) - 1) if a[i] > a[i + 1])

    def right_descents(self, a) -> frozenset:
        # a * s_i swaps values i, i+1
        inv = self.inverse(a)
        return frozenset(i + 1 for i in range(len(a) - 1) if inv[i] > inv[i + 1])

    def lmul_gen(self, i: int, a):
        lst = list(a)
        lst[i - 1], lst[i] = lst[i], lst[i - 1]
        return tuple(lst)

    def rmul_gen(self, a, i: int):
        lo, hi = i - 1, i
        return tuple(hi if x == lo else lo if x == hi else x for x in a)

    def meet_weak_left(self, a, b):
        """
        Strip common left descents by insertion sort

        Position i holds the pair (a[i], b[i]). s_i is a common left descent
        when the pair at i beats the pair at i+1 in both coordinates, and
        stripping it swaps the two pairs. Swaps only ever order a beaten pair
        first, so inserting each pair as far left as it can travel reaches the
        same end state as any stripping order.
        """
        rest: List[Tuple[int, int]] = []
        for pair in zip(a, b):
            k = len(rest)
            while k and rest[k - 1][0] > pair[0] and rest[k - 1][1] > pair[1]:
                k -= 1
            rest.insert(k, pair)
        # a = t * rest
        return self.multiply(a, self.inverse(tuple(x for x, _ in rest)))

    def left_weight(self, a, b):
        """
        The sweep step in one pass over the tuples

        Runs the insertion-sort meet on the pairs (complement(a)[i], b[i]).
        The second coordinates of the sorted pairs spell t^-1 * b, and a * t
        is w0 times the inverse of the first coordinates. Nothing moves
        exactly when the pair is left-weighted.
        """
        m = len(a)
        ainv = [0] * m
        for i, v in enumerate(a):
            ainv[v] = i
        rest: List[Tuple[int, int]] = []
        moved = False
        for k in range(m):
            pair = (m - 1 - ainv[k], b[k])
            j = len(rest)
            while j and rest[j - 1][0] > pair[0] and rest[j - 1][1] > pair[1]:
                j -= 1
            if j < len(rest):
                moved = True
            rest.insert(j, pair)
        if not moved:
            return None
        xinv = [0] * m
        for i, (x, _) in enumerate(rest):
            xinv[x] = i
        # w0 * q reverses q
        return tuple(reversed(xinv)), tuple(y for _, y in rest)

    def permutation(self, a) -> Permutation:
        return Permutation.from_zero_based(tuple(a))

    def element_of(self, perm: Permutation):
        if perm.degree != self.degree:
            raise DegreeMismatchError(f"Expected degree {self.degree}, got {perm.degree}")
        return perm.zero_based

    def key_label(self, a) -> str:
        return format_one_line(Permutation.from_zero_based(tuple(a)))

    def evaluate(self, word: Iterable[int]):
        lst = list(range(self.degree))
        pos = list(range(self.degree))
        for letter in word:
            i = abs(letter)
            # right multiplication swaps values i-1, i
            p, q = pos[i - 1], pos[i]
            lst[p], lst[q] = i, i - 1
            pos[i - 1], pos[i] = q, p
        return tuple(lst)


def realize(ctype: CoxeterType, generator_images: Sequence[Permutation], cap: Optional[int] = None) -> CayleyRealization:
    """
    Build a Cayley-table realization from generator images (the embedding e)

    Raises:
        RelationViolationError: images break a Coxeter relation
        ClosureSizeError: closure size differs from the known order
        ClosureCapError: closure exceeded cap
    """
    return CayleyRealization(ctype, generator_images, cap=cap)


def type_a_realization(m: int) -> TypeARealization:
    return TypeARealization(m)


def left_descents(r: CoxeterRealization, w: Hashable) -> frozenset:
    return r.left_descents(w)


def right_descents(r: CoxeterRealization, w: Hashable) -> frozenset:
    return r.right_descents(w)


def meet_weak_left(r: CoxeterRealization, a: Hashable, b: Hashable) -> Hashable:
    return r.meet_weak_left(a, b)


def regular_images(r: CayleyRealization) -> List[Permutation]:
    """
    Left-regular permutation images of the generators on the element list

    Point x + 1 is element id x; s acts by x -> s * x. On the BFS order of
    I2(k), k even, this is the coset-list embedding into S_2k.
    """
    images = []
    for g in range(r.rank):
        images.append(Permutation([int(r.left_table[x, g]) + 1 for x in r.elements()]))
    return images


def dump_realization(r: CoxeterRealization) -> str:
    """Tabular text: element id, one-line permutation, length"""
    if not isinstance(r, CayleyRealization):
        raise ValueError("Only Cayley realizations can be dumped; type A realizations are not enumerated")
    lines = [f"# {r.ctype} in S_{r.degree}: {r.order} elements, w0 = {r.w0}", "id\tpermutation\tlength"]
    for u in r.elements():
        lines.append(f"{u}\t{format_one_line(r.permutation(u))}\t{r.length(u)}")
    return "\n".join(lines) + "\n"
