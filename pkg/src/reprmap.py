"""
Representations of Artin groups in the classical braid group

Builds the pairs (e, f) for types A_n, I2(k), B_n and the failing D_4 case,
verifies that f respects the Artin relations and that diagram D commutes,
and runs injectivity / kernel experiments.
"""
import logging
import random
from functools import lru_cache
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.coxeter import (
    CayleyRealization,
    CoxeterType,
    artin_relations,
    check_relations,
    coxeter_matrix,
    evaluate_images,
    realize,
    regular_images,
    type_a_realization,
)
from src.errors import (
    ClosureSizeError,
    NotHomomorphismError,
    OutOfScopeError,
    RelationViolationError,
    ScanCapExceededError,
)
from src.garside import (
    BraidElement,
    enumerate_normal_forms,
    format_normal_form,
    format_word,
    from_letters,
    is_pure,
    simple_lift,
    to_word,
    underlying_permutation,
)
from src.models import (
    CoxeterCheck,
    DiagramCheck,
    GeneratorEntry,
    MapIdentity,
    RelationResult,
    ScanReport,
    VerificationReport,
    Witness,
)
from src.perm_core import Permutation, format_cycles, from_cycles, parse_permutation
from src.settings import SettingKey, get_settings_manager

logger = logging.getLogger(__name__)

Provenance = Literal["paper-An", "paper-I2-even", "paper-I2-odd", "paper-Bn", "paper-D4", "regular", "custom"]


class RepMap(BaseModel):
    """A named pair (e, f): generator images in S_m and in the braid group on m strands"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source_type: CoxeterType
    target_m: int = Field(..., ge=2, description="Strands of the target braid group")
    e_images: Tuple[Permutation, ...] = Field(..., description="e(s_i) in S_m")
    f_images: Tuple[Tuple[int, ...], ...] = Field(..., description="f(s_i) as signed braid words")
    provenance: Provenance = "custom"

    @model_validator(mode="after")
    def _check_shape(self):
        rank = self.source_type.rank
        if len(self.e_images) != rank or len(self.f_images) != rank:
            raise ValueError(f"{self.source_type} needs {rank} e-images and f-images")
        for perm in self.e_images:
            if perm.degree != self.target_m:
                raise ValueError(f"e-image {format_cycles(perm)} is not in S_{self.target_m}")
        for word in self.f_images:
            for letter in word:
                if letter == 0 or abs(letter) >= self.target_m:
                    raise ValueError(f"f-word letter {letter} outside 1..{self.target_m - 1}")
        return self

    @property
    def rank(self) -> int:
        return self.source_type.rank

    def generator_entries(self) -> List[GeneratorEntry]:
        return [
            GeneratorEntry(name=f"s{i + 1}", e_cycles=format_cycles(e), f_word=format_word(f))
            for i, (e, f) in enumerate(zip(self.e_images, self.f_images))
        ]


@lru_cache(maxsize=None)
def target_realization(m: int):
    """Shared type A realization of S_m; braid elements are only comparable over one instance"""
    return type_a_realization(m)


def _lift_word(m: int, perm: Permutation) -> Tuple[int, ...]:
    r = target_realization(m)
    return to_word(simple_lift(r, r.element_of(perm))).letters


def build_i2_even(k: int) -> RepMap:
    """
    I2(k), k even, into the braid group on 2k strands

    e(s1) = (1,2)(3,4)...(2k-1,2k), e(s2) = (1,3)(2,5)(4,7)...(2k-4,2k-1)(2k-2,2k).
    f(s1) = sigma_1 sigma_3 ... sigma_{2k-1}; f(s2) is the positive lift of
    e(s2) in which every pair of strands crosses at most once.
    """
    if k < 2 or k % 2:
        raise ValueError(f"build_i2_even needs an even k >= 2, got {k}")
    m = 2 * k
    s1 = from_cycles(m, [(2 * i - 1, 2 * i) for i in range(1, k + 1)])
    s2 = from_cycles(m, [(1, 3)] + [(2 * j, 2 * j + 3) for j in range(1, k - 1)] + [(2 * k - 2, 2 * k)])
    f1 = tuple(range(1, 2 * k, 2))
    return RepMap(
        source_type=CoxeterType(family="I2", rank_or_k=k),
        target_m=m,
        e_images=(s1, s2),
        f_images=(f1, _lift_word(m, s2)),
        provenance="paper-I2-even",
    )


def build_i2_odd(k: int) -> RepMap:
    """I2(k), k odd, into the braid group on k strands"""
    if k < 3 or k % 2 == 0:
        raise ValueError(f"build_i2_odd needs an odd k >= 3, got {k}")
    half = (k - 1) // 2
    s1 = from_cycles(k, [(2 * i, 2 * i + 1) for i in range(1, half + 1)])
    s2 = from_cycles(k, [(2 * i - 1, 2 * i) for i in range(1, half + 1)])
    return RepMap(
        source_type=CoxeterType(family="I2", rank_or_k=k),
        target_m=k,
        e_images=(s1, s2),
        f_images=(tuple(range(2, k, 2)), tuple(range(1, k - 1, 2))),
        provenance="paper-I2-odd",
    )


def build_bn(n: int) -> RepMap:
    """
    B_n into the braid group on 2n strands

    s_{n-j} -> (j+1, j+2)(2n-j-1, 2n-j) with lift sigma_{j+1} sigma_{2n-j-1}
    for 0 <= j <= n-2, and s1 -> (n, n+1) with lift sigma_n.
    """
    if n < 2:
        raise ValueError(f"build_bn needs n >= 2, got {n}")
    m = 2 * n
    e: List[Optional[Permutation]] = [None] * n
    f: List[Optional[Tuple[int, ...]]] = [None] * n
    for j in range(n - 1):
        e[n - j - 1] = from_cycles(m, [(j + 1, j + 2), (2 * n - j - 1, 2 * n - j)])
        f[n - j - 1] = (j + 1, 2 * n - j - 1)
    e[0] = from_cycles(m, [(n, n + 1)])
    f[0] = (n,)
    return RepMap(
        source_type=CoxeterType(family="B", rank_or_k=n),
        target_m=m,
        e_images=tuple(e),
        f_images=tuple(f),
        provenance="paper-Bn",
    )


def build_an(n: int) -> RepMap:
    """A_n is S_{n+1} itself: e(s_i) = (i, i+1), f(s_i) = sigma_i"""
    if n < 1:
        raise ValueError(f"build_an needs n >= 1, got {n}")
    m = n + 1
    return RepMap(
        source_type=CoxeterType(family="A", rank_or_k=n),
        target_m=m,
        e_images=tuple(from_cycles(m, [(i, i + 1)]) for i in range(1, n + 1)),
        f_images=tuple((i,) for i in range(1, n + 1)),
        provenance="paper-An",
    )


def build_d4() -> RepMap:
    """D_4 into the braid group on 8 strands; the diagram commutes but f is not a homomorphism"""
    m = 8
    return RepMap(
        source_type=CoxeterType(family="D", rank_or_k=4),
        target_m=m,
        e_images=(
            from_cycles(m, [(3, 4), (5, 6)]),
            from_cycles(m, [(2, 3), (6, 7)]),
            from_cycles(m, [(3, 5), (4, 6)]),
            from_cycles(m, [(1, 2), (7, 8)]),
        ),
        f_images=((3, 5), (2, 6), (4, 3, 5, 4), (1, 7)),
        provenance="paper-D4",
    )


def build_paper_map(ctype: CoxeterType) -> RepMap:
    """
    The shipped (e, f) for a type

    Raises:
        OutOfScopeError: for D_n with n > 4 (no lift is built)
    """
    if ctype.family == "A":
        return build_an(ctype.rank_or_k)
    if ctype.family == "B":
        return build_bn(ctype.rank_or_k)
    if ctype.family == "I2":
        k = ctype.rank_or_k
        return build_i2_even(k) if k % 2 == 0 else build_i2_odd(k)
    if ctype.rank_or_k == 4:
        return build_d4()
    raise OutOfScopeError(f"No lift is built for {ctype}; only the D4 counterexample is available")


def build_custom(
    ctype: CoxeterType,
    e_images: Sequence,
    f_words: Sequence[Sequence[int]],
    target_m: Optional[int] = None,
    provenance: Provenance = "custom",
) -> RepMap:
    """
    Any (e, f) pair, e.g. a different choice of coset representatives

    Args:
        ctype: source type
        e_images: Permutation objects or permutation text ("(1,2)(3,4)", "[2,1,4,3]")
        f_words: braid words, one per generator
        target_m: strand count (defaults to the degree of the first image)
    """
    perms = []
    for img in e_images:
        if isinstance(img, Permutation):
            perms.append(img)
        else:
            perms.append(parse_permutation(str(img), target_m))
    m = target_m or perms[0].degree
    return RepMap(
        source_type=ctype,
        target_m=m,
        e_images=tuple(perms),
        f_images=tuple(tuple(w) for w in f_words),
        provenance=provenance,
    )


def simple_lift_words(rep: RepMap) -> RepMap:
    """Same e, with every f(s) replaced by the canonical positive lift of e(s)"""
    return rep.model_copy(update={
        "f_images": tuple(_lift_word(rep.target_m, e) for e in rep.e_images),
        "provenance": "custom",
    })


def source_realization(rep: RepMap) -> CayleyRealization:
    """Cayley realization of W_S generated by the e-images"""
    return realize(rep.source_type, rep.e_images)


def build_regular(ctype: CoxeterType) -> RepMap:
    """
    e from the left-regular action of W on its own elements, f = simple lifts

    For I2(k) with k even this reproduces the shipped embedding.
    """
    base = source_realization(build_paper_map(ctype))
    images = regular_images(base)
    m = base.order
    return RepMap(
        source_type=ctype,
        target_m=m,
        e_images=tuple(images),
        f_images=tuple(_lift_word(m, e) for e in images),
        provenance="regular",
    )


def realization_for(ctype: CoxeterType) -> CayleyRealization:
    """
    Cayley realization of W generated by the shipped e-images

    Raises:
        OutOfScopeError: for D_n with n > 4
    """
    return source_realization(build_paper_map(ctype))


def expected_homomorphism(ctype: CoxeterType) -> bool:
    """The documented outcome: homomorphism for A, B, I2; not for D4"""
    return ctype.family != "D"


def image_letters(rep: RepMap, word: Iterable[int]) -> List[int]:
    letters: List[int] = []
    for letter in word:
        if letter == 0 or abs(letter) > rep.rank:
            raise ValueError(f"Source letter {letter} is not a generator of {rep.source_type}")
        image = rep.f_images[abs(letter) - 1]
        if letter > 0:
            letters.extend(image)
        else:
            letters.extend(-x for x in reversed(image))
    return letters


def _image(rep: RepMap, word: Iterable[int]) -> BraidElement:
    return from_letters(target_realization(rep.target_m), image_letters(rep, word))


@lru_cache(maxsize=None)
def _respects_relations(source_type: CoxeterType, target_m: int, f_images: Tuple[Tuple[int, ...], ...]) -> bool:
    r = target_realization(target_m)

    def image(word):
        return from_letters(r, [x for g in word for x in f_images[g - 1]])

    return all(image(rel.lhs) == image(rel.rhs) for rel in artin_relations(coxeter_matrix(source_type)))


def respects_relations(rep: RepMap) -> bool:
    """Whether f respects every Artin relation (cached per map)"""
    return _respects_relations(rep.source_type, rep.target_m, rep.f_images)


def apply_map(rep: RepMap, word: Iterable[int]) -> BraidElement:
    """
    f applied to a signed source word, as a normal form on target_m strands

    For a map that is not a homomorphism the result depends on the word,
    not only on the source element, and a warning is logged.
    """
    image = _image(rep, word)
    if not respects_relations(rep):
        logger.warning(f"Applying {rep.source_type} map ({rep.provenance}) that does not respect the Artin relations")
    return image


def _source_label(word: Sequence[int]) -> str:
    return "".join(f"s{g}" for g in word) or "1"


def check_artin_relations(rep: RepMap) -> List[RelationResult]:
    """f(lhs) vs f(rhs) for every Artin relation of the source type"""
    results = []
    for rel in artin_relations(coxeter_matrix(rep.source_type)):
        lhs = _image(rep, rel.lhs)
        rhs = _image(rep, rel.rhs)
        results.append(RelationResult(
            lhs=_source_label(rel.lhs),
            rhs=_source_label(rel.rhs),
            equal=lhs == rhs,
            nf_lhs=format_normal_form(lhs),
            nf_rhs=format_normal_form(rhs),
        ))
    return results


def _random_word(rng: random.Random, rank: int, max_length: int) -> List[int]:
    length = rng.randint(0, max_length)
    return [rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(length)]


def check_diagram(rep: RepMap, samples: int = 100, max_length: int = 20, seed: Optional[int] = None) -> DiagramCheck:
    """
    pi_m(f(w)) == e(pi_S(w)) on every generator and on random source words
    """
    if seed is None:
        seed = int(get_settings_manager().get_setting(SettingKey.SEED))
    generator_failures = []
    for i, e in enumerate(rep.e_images, 1):
        if underlying_permutation(_image(rep, [i])) != e:
            generator_failures.append(f"s{i}")

    rng = random.Random(seed)
    failing = []
    for _ in range(samples):
        word = _random_word(rng, rep.rank, max_length)
        if underlying_permutation(_image(rep, word)) != evaluate_images(rep.e_images, word):
            failing.append(format_word(word) or "(empty)")

    return DiagramCheck(
        samples=samples,
        max_length=max_length,
        seed=seed,
        failures=len(failing),
        generator_failures=generator_failures,
        failing_words=failing[:5],
    )


def verify(
    rep: RepMap,
    samples: int = 100,
    max_length: int = 20,
    seed: Optional[int] = None,
    scan_bound: Optional[int] = None,
) -> VerificationReport:
    """
    Check relation preservation, the embedding and diagram D for one map

    Negative outcomes are recorded in the report, never raised. With
    scan_bound, a homomorphic map also gets its injectivity scan attached
    (see scan_map); the scan is skipped for a map that fails a relation.

    Raises:
        ScanCapExceededError: if the requested scan is too large
    """
    logger.info(f"Verifying {rep.source_type} -> A_{rep.target_m} ({rep.provenance})")

    coxeter_checks = [
        CoxeterCheck(relation=rel.label(), holds=holds)
        for rel, holds in check_relations(rep.source_type, rep.e_images)
    ]
    embedding_order = None
    embedding_ok = all(c.holds for c in coxeter_checks)
    if embedding_ok:
        try:
            embedding_order = source_realization(rep).order
        except (ClosureSizeError, RelationViolationError) as e:
            logger.warning(f"e is not an embedding: {e}")
            embedding_ok = False

    relations = check_artin_relations(rep)
    is_homomorphism = all(r.equal for r in relations)
    witnesses = [
        Witness(relation=f"{r.lhs} = {r.rhs}", nf_lhs=r.nf_lhs, nf_rhs=r.nf_rhs)
        for r in relations if not r.equal
    ]
    diagram = check_diagram(rep, samples=samples, max_length=max_length, seed=seed)

    scans = []
    if scan_bound is not None:
        if is_homomorphism and embedding_ok:
            scans.append(scan_map(rep, scan_bound))
        else:
            logger.warning(f"Skipping injectivity scan of {rep.source_type}: not a homomorphism with an embedding e")

    logger.info(f"{rep.source_type}: {len(relations)} relations, homomorphism={is_homomorphism}")
    return VerificationReport(
        map=MapIdentity(type=rep.source_type.name, m=rep.target_m, provenance=rep.provenance),
        generators=rep.generator_entries(),
        relations=relations,
        coxeter_checks=coxeter_checks,
        embedding_order=embedding_order,
        embedding_ok=embedding_ok,
        diagram=diagram,
        is_homomorphism=is_homomorphism,
        verdict="homomorphism" if is_homomorphism else "NOT a homomorphism",
        witnesses=witnesses,
        scans=scans,
    )


def _require_homomorphism(rep: RepMap):
    failed = [f"{r.lhs} = {r.rhs}" for r in check_artin_relations(rep) if not r.equal]
    if failed:
        raise NotHomomorphismError(
            f"{rep.source_type} map is not a homomorphism (fails {', '.join(failed)}); refusing to scan its kernel"
        )


def _grid_word(a: int, b: int) -> List[int]:
    return ([1] * a if a >= 0 else [-1] * -a) + ([2] * b if b >= 0 else [-2] * -b)


def injectivity_scan_i2_2(bound: int) -> ScanReport:
    """
    f(s1^a s2^b) for |a|, |b| <= bound in the I2(2) map

    A_S is free abelian on s1, s2 here, so injectivity on the grid means the
    only trivial image is at (0, 0) and all images are distinct.
    """
    if bound < 1:
        raise ValueError(f"Scan bound must be >= 1, got {bound}")
    rep = build_i2_even(2)
    seen: Dict[Tuple, Tuple[int, int]] = {}
    kernel = []
    collisions = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            image = _image(rep, _grid_word(a, b))
            key = image.key()
            if key == (0, ()) and (a, b) != (0, 0):
                kernel.append(f"s1^{a} s2^{b}")
            if key in seen:
                collisions.append(f"s1^{seen[key][0]} s2^{seen[key][1]} ~ s1^{a} s2^{b}")
            else:
                seen[key] = (a, b)

    logger.info(f"I2(2) grid scan at bound {bound}: {len(seen)} distinct images")
    return ScanReport(
        kind="grid",
        type="I2(2)",
        parameters={"bound": bound},
        elements_examined=(2 * bound + 1) ** 2,
        kernel_elements=kernel,
        all_distinct=not collisions,
        collisions=collisions[:10],
    )


def count_normal_forms(r: CayleyRealization, max_length: int, delta_powers: Sequence[int] = (-1, 0)) -> int:
    """
    Number of elements enumerate_normal_forms would yield

    Whether y may follow x depends only on right_descents(x) and
    left_descents(y), so chains are counted per right-descent bitmask of
    their last factor.
    """
    total = 1
    if max_length >= 1:
        weights = 1 << np.arange(r.rank, dtype=np.int64)
        ld = r.left_descent_mask.astype(np.int64) @ weights
        rd = r.right_descent_mask.astype(np.int64) @ weights
        proper = np.ones(r.order, dtype=bool)
        proper[[r.identity, r.w0]] = False

        size = 1 << r.rank
        # joint[L, M]: simples with left descents L and right descents M
        joint = np.zeros((size, size), dtype=np.int64)
        np.add.at(joint, (ld[proper], rd[proper]), 1)
        masks = np.arange(size, dtype=np.int64)
        # follows[L, M]: a factor with left descents L may follow one with right descents M
        follows = ((masks[:, None] & ~masks[None, :]) == 0).astype(np.int64)

        # object dtype keeps counts exact past int64
        joint = joint.astype(object)
        follows = follows.astype(object)
        chains = joint.sum(axis=0)
        total += int(chains.sum())
        for _ in range(max_length - 1):
            chains = joint.T.dot(follows.dot(chains))
            total += int(chains.sum())
    return total * len(delta_powers)


def kernel_scan(
    rep: RepMap,
    source: CayleyRealization,
    max_canonical_length: int,
    cap: Optional[int] = None,
) -> ScanReport:
    """
    Apply f to every source element with D power -1 or 0 and canonical length
    <= max_canonical_length, looking for a trivial image or a collision

    Raises:
        NotHomomorphismError: if f fails an Artin relation
        ScanCapExceededError: if the enumeration would exceed cap elements
    """
    _require_homomorphism(rep)
    if source.ctype != rep.source_type:
        raise ValueError(f"Source realization is {source.ctype}, map is from {rep.source_type}")
    if cap is None:
        cap = int(get_settings_manager().get_setting(SettingKey.SCAN_CAP))

    total = count_normal_forms(source, max_canonical_length)
    if total > cap:
        raise ScanCapExceededError(
            f"Kernel scan of {rep.source_type} at canonical length {max_canonical_length} needs {total} elements (cap {cap})"
        )

    seen: Dict[Tuple, str] = {}
    kernel = []
    collisions = []
    candidates_pure = True
    examined = 0
    for element in enumerate_normal_forms(source, max_canonical_length):
        examined += 1
        word = to_word(element).letters
        image = _image(rep, word)
        label = format_normal_form(element)
        key = image.key()
        if key == (0, ()) and element.key() != (0, ()):
            kernel.append(label)
            candidates_pure = candidates_pure and is_pure(element)
        if key in seen:
            collisions.append(f"{seen[key]} ~ {label}")
        else:
            seen[key] = label

    delta_word = to_word(BraidElement(source, 1, ())).letters
    delta_pure = is_pure(_image(rep, delta_word))

    logger.info(f"Kernel scan of {rep.source_type}: {examined} elements, {len(kernel)} kernel elements")
    return ScanReport(
        kind="kernel",
        type=rep.source_type.name,
        parameters={"max_canonical_length": max_canonical_length},
        elements_examined=examined,
        kernel_elements=kernel,
        all_distinct=not collisions,
        collisions=collisions[:10],
        kernel_candidates_pure=candidates_pure,
        delta_image_pure=delta_pure,
    )


def scan_map(rep: RepMap, bound: int) -> ScanReport:
    """
    Injectivity experiment for a map: the s1^a s2^b grid for the shipped
    I2(2) map, a kernel scan up to canonical length bound otherwise

    Raises:
        NotHomomorphismError: if f fails an Artin relation
        ScanCapExceededError: if the kernel scan would exceed the scan cap
    """
    if rep.provenance == "paper-I2-even" and rep.source_type.rank_or_k == 2:
        return injectivity_scan_i2_2(bound)
    return kernel_scan(rep, source_realization(rep), bound)


def format_report(report: VerificationReport) -> str:
    """Human-readable text with the same verdict as the JSON form"""
    lines = [
        "=" * 60,
        f"{report.map.type} -> braid group on {report.map.m} strands ({report.map.provenance})",
        "=" * 60,
    ]
    for g in report.generators:
        lines.append(f"  {g.name}: e = {g.e_cycles}   f = {g.f_word}")
    order = report.embedding_order if report.embedding_order is not None else "?"
    lines.append(f"\nEmbedding e: {'✅' if report.embedding_ok else '❌'} order {order}")
    lines.append(f"\nArtin relations ({len(report.relations)}):")
    for r in report.relations:
        mark = "✅" if r.equal else "❌"
        lines.append(f"  {mark} f({r.lhs}) = f({r.rhs})")
        if not r.equal:
            lines.append(f"       {r.nf_lhs}")
            lines.append(f"       {r.nf_rhs}")
    d = report.diagram
    lines.append(
        f"\nDiagram D: generators {'ok' if not d.generator_failures else 'FAIL ' + ','.join(d.generator_failures)}, "
        f"{d.samples - d.failures}/{d.samples} random words (seed {d.seed})"
    )
    for scan in report.scans:
        lines.append("")
        lines.append(format_scan(scan))
    lines.append(f"\nVerdict: {report.verdict}")
    for w in report.witnesses:
        lines.append(f"  witness: {w.relation}")
    return "\n".join(lines) + "\n"


def format_scan(scan: ScanReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in scan.parameters.items())
    lines = [
        f"Scan ({scan.kind}) {scan.type} [{params}]: {scan.elements_examined} elements",
        f"  kernel: {'{identity}' if scan.kernel_trivial else ', '.join(scan.kernel_elements)}",
        f"  images pairwise distinct: {scan.all_distinct}",
    ]
    for c in scan.collisions:
        lines.append(f"  collision: {c}")
    if scan.delta_image_pure is not None:
        lines.append(f"  f(Delta) pure: {scan.delta_image_pure}")
    return "\n".join(lines)
