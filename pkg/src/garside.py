"""
Garside left-greedy normal form for the Artin group of a Coxeter realization

An element is stored as D^p * x1 * ... * xl where each xi is a simple (a
non-trivial, non-longest element of W read as its canonical positive lift)
and every adjacent pair is left-weighted. The form is unique, so braid
equality is comparison of (p, factors). Over TypeARealization this is the
permutation-braid normal form of the classical braid group on m strands.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, List, Sequence, Tuple

from src.coxeter import CayleyRealization, CoxeterRealization
from src.errors import RealizationMismatchError, WordSyntaxError
from src.perm_core import Permutation

logger = logging.getLogger(__name__)

Simple = Hashable


@dataclass(frozen=True)
class BraidWord:
    """Signed generator letters: +i is sigma_i, -i its inverse"""
    realization: CoxeterRealization = field(repr=False)
    letters: Tuple[int, ...]

    def __post_init__(self):
        rank = self.realization.rank
        for letter in self.letters:
            if letter == 0 or abs(letter) > rank:
                raise WordSyntaxError(f"Letter {letter} is not a generator index in 1..{rank}")

    def __str__(self) -> str:
        return format_word(self.letters)

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class BraidElement:
    """Normal form D^delta_power * factors[0] * ... * factors[-1]"""
    realization: CoxeterRealization = field(repr=False)
    delta_power: int
    factors: Tuple[Simple, ...]

    def __mul__(self, other: "BraidElement") -> "BraidElement":
        return multiply(self, other)

    def __invert__(self) -> "BraidElement":
        return invert(self)

    def __str__(self) -> str:
        return format_normal_form(self)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def inf(self) -> int:
        return self.delta_power

    @property
    def sup(self) -> int:
        return self.delta_power + len(self.factors)

    def key(self) -> Tuple[int, Tuple[Simple, ...]]:
        return self.delta_power, self.factors


_TOKEN_RE = re.compile(r"^(sigma|σ|s|S)?(-?\d+)(\^-1)?$")


def parse_word(text: str) -> List[int]:
    """
    Parse a braid word

    Accepts whitespace or comma separated signed integers ("2 1 -3"), or the
    aliases "s2 s1 S3" (capital S is the inverse), "sigma2", "s3^-1".

    Raises:
        WordSyntaxError: on an unrecognised token or a zero letter
    """
    letters = []
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        match = _TOKEN_RE.match(token)
        if not match:
            raise WordSyntaxError(f"Bad braid letter {token!r}")
        prefix, number, inv = match.groups()
        letter = int(number)
        if letter == 0:
            raise WordSyntaxError("Letter 0 is not a generator")
        if prefix == "S":
            letter = -letter
        if inv:
            letter = -letter
        letters.append(letter)
    return letters


def format_word(letters: Iterable[int]) -> str:
    return " ".join(str(x) for x in letters)


def make_word(r: CoxeterRealization, letters: Iterable[int]) -> BraidWord:
    return BraidWord(r, tuple(letters))


def delta(r: CoxeterRealization) -> Simple:
    """The Garside simple: lift of the longest element"""
    return r.w0


def tau(r: CoxeterRealization, s: Simple) -> Simple:
    """Delta-conjugation: w0^-1 * s * w0, so that D * tau(x) = x * D"""
    return r.conjugate(s, r.w0)


def complement(r: CoxeterRealization, a: Simple) -> Simple:
    """Right complement a^-1 * w0, so that a * complement(a) = D"""
    return r.multiply(r.inverse(a), r.w0)


def left_weighted(r: CoxeterRealization, a: Simple, b: Simple) -> bool:
    """right_descents(a) contains left_descents(b)"""
    return r.left_descents(b) <= r.right_descents(a)


def _tau_power(r: CoxeterRealization, x: Simple, k: int) -> Simple:
    # w0 is an involution in a finite Coxeter group, so tau has order <= 2
    return tau(r, x) if k % 2 else x


def _append(r: CoxeterRealization, factors: List[Simple], y: Simple) -> int:
    """
    Append a simple to a left-weighted factor list in place

    Sweeps right to left making each pair left-weighted and stops at the
    first pair that already is. Returns the number of leading D factors
    removed from the list.
    """
    identity = r.identity
    factors.append(y)
    j = len(factors) - 2
    while j >= 0:
        # (a, b) -> (a * t, t^-1 * b) with t = meet(complement(a), b)
        pair = r.left_weight(factors[j], factors[j + 1])
        if pair is None:
            break
        factors[j], factors[j + 1] = pair
        j -= 1

    while factors and factors[-1] == identity:
        factors.pop()
    k = 0
    while k < len(factors) and factors[k] == r.w0:
        k += 1
    if k:
        del factors[:k]
    return k


def _normalize(r: CoxeterRealization, tokens: Sequence[Tuple[int, Simple]]) -> BraidElement:
    """
    Normal form of a product of tokens D^q * x

    Moves all D powers left with x * D^k = D^k * tau^k(x), then appends the
    positive factors one at a time.
    """
    positive = []
    suffix = 0
    for q, x in reversed(tokens):
        if x != r.identity:
            positive.append(_tau_power(r, x, suffix))
        suffix += q
    positive.reverse()

    power = suffix
    factors: List[Simple] = []
    for y in positive:
        power += _append(r, factors, y)
    return BraidElement(r, power, tuple(factors))


def _check_same(a: BraidElement, b: BraidElement):
    if a.realization is not b.realization:
        raise RealizationMismatchError("Braid elements belong to different realizations")


def identity_element(r: CoxeterRealization) -> BraidElement:
    return BraidElement(r, 0, ())


def from_letters(r: CoxeterRealization, letters: Iterable[int]) -> BraidElement:
    return from_word(make_word(r, letters))


def from_word(w: BraidWord) -> BraidElement:
    """
    Normal form of the group element spelled by w

    Runs of positive letters are packed into one simple x while lengths
    add. A run of inverse letters spells y^-1 for a simple y, which becomes
    D^-1 times the simple w0 * y^-1. A spelled-out D^p is one token per D.
    """
    r = w.realization
    tokens = []
    run, sign = r.identity, 0

    def flush():
        if sign > 0:
            tokens.append((0, run))
        elif sign < 0:
            tokens.append((-1, r.multiply(r.w0, r.inverse(run))))

    for letter in w.letters:
        i = abs(letter)
        if letter > 0:
            if sign > 0 and i not in r.right_descents(run):
                run = r.rmul_gen(run, i)
                continue
            flush()
            run, sign = r.generator(i), 1
        else:
            # sigma_a^-1 sigma_b^-1 = (sigma_b sigma_a)^-1, so the run grows on the left
            if sign < 0 and i not in r.left_descents(run):
                run = r.lmul_gen(i, run)
                continue
            flush()
            run, sign = r.generator(i), -1
    flush()
    return _normalize(r, tokens)


def generator_element(r: CoxeterRealization, i: int) -> BraidElement:
    return from_letters(r, [i])


def multiply(a: BraidElement, b: BraidElement) -> BraidElement:
    """Normal form of a * b"""
    _check_same(a, b)
    r = a.realization
    tokens = [(a.delta_power, r.identity)]
    tokens += [(0, x) for x in a.factors]
    tokens.append((b.delta_power, r.identity))
    tokens += [(0, x) for x in b.factors]
    return _normalize(r, tokens)


def invert(a: BraidElement) -> BraidElement:
    """x^-1 = D^-1 * (w0 * x^-1) for each factor, then D^-p"""
    r = a.realization
    tokens = [(-1, r.multiply(r.w0, r.inverse(x))) for x in reversed(a.factors)]
    tokens.append((-a.delta_power, r.identity))
    return _normalize(r, tokens)


def power(a: BraidElement, n: int) -> BraidElement:
    base = a if n >= 0 else invert(a)
    result = identity_element(a.realization)
    for _ in range(abs(n)):
        result = multiply(result, base)
    return result


def equal(a: BraidElement, b: BraidElement) -> bool:
    """Braid equality, decided by comparing normal forms"""
    _check_same(a, b)
    return a.delta_power == b.delta_power and a.factors == b.factors


def simple_lift(r: CoxeterRealization, w: Simple) -> BraidElement:
    """Canonical positive lift of w (each strand pair crosses at most once in type A)"""
    return _normalize(r, [(0, w)])


def underlying_element(a: BraidElement) -> Simple:
    """Image in W: w0^p * x1 * ... * xl"""
    r = a.realization
    result = r.w0 if a.delta_power % 2 else r.identity
    for x in a.factors:
        result = r.multiply(result, x)
    return result


def underlying_permutation(a: BraidElement) -> Permutation:
    """Image of the braid in the symmetric group of the realization"""
    return a.realization.permutation(underlying_element(a))


def is_pure(a: BraidElement) -> bool:
    return underlying_element(a) == a.realization.identity


def to_word(a: BraidElement) -> BraidWord:
    """
    A word spelling a: D^p expanded through the reduced word of w0 (negated
    and reversed for p < 0), then each factor's reduced word
    """
    r = a.realization
    w0_word = r.reduced_word(r.w0)
    letters: List[int] = []
    if a.delta_power > 0:
        letters += w0_word * a.delta_power
    elif a.delta_power < 0:
        letters += [-x for x in reversed(w0_word)] * (-a.delta_power)
    for x in a.factors:
        letters += r.reduced_word(x)
    return BraidWord(r, tuple(letters))


def exponent_sum(a: BraidElement) -> int:
    """Abelianization: signed letter count of any spelling"""
    r = a.realization
    return a.delta_power * r.length(r.w0) + sum(r.length(x) for x in a.factors)


def is_normal_form(a: BraidElement) -> bool:
    """No identity factor, no D factor, adjacent factors left-weighted"""
    r = a.realization
    for x in a.factors:
        if x == r.identity or x == r.w0:
            return False
    return all(left_weighted(r, x, y) for x, y in zip(a.factors, a.factors[1:]))


def format_normal_form(a: BraidElement) -> str:
    """Text form D^p | w1 | w2 | ... with one-line permutations (type A) or element ids"""
    r = a.realization
    labels = [r.key_label(x) for x in a.factors]
    if not labels:
        return f"D^{a.delta_power} |"
    return " | ".join([f"D^{a.delta_power}"] + labels)


def enumerate_normal_forms(
    r: CayleyRealization,
    max_length: int,
    delta_powers: Sequence[int] = (-1, 0),
) -> Iterator[BraidElement]:
    """
    Every normal form with the given D powers and canonical length <= max_length

    Factor sequences are built directly as left-weighted chains, so no two
    yielded elements are equal.
    """
    simples = [x for x in r.elements() if x != r.identity and x != r.w0]
    successors = {
        x: [y for y in simples if left_weighted(r, x, y)]
        for x in simples
    }

    def chains(prefix: List[Simple]) -> Iterator[Tuple[Simple, ...]]:
        yield tuple(prefix)
        if len(prefix) == max_length:
            return
        candidates = successors[prefix[-1]] if prefix else simples
        for y in candidates:
            prefix.append(y)
            yield from chains(prefix)
            prefix.pop()

    for p in delta_powers:
        for factors in chains([]):
            yield BraidElement(r, p, factors)
