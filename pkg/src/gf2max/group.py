"""GL_n(GF(2)): enumeration, centralizers, cosets and maximal-order conjugacy classes.

Conjugation is b = c^-1 a c throughout.  Under that convention the
conjugates of A are indexed by the right cosets H c of its centralizer H,
since (h c)^-1 A (h c) = c^-1 A c for every h in H.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .errors import CapExceededError, NotPrimitiveError
from .gf2mat import (
    Gf2Mat,
    char_poly,
    companion,
    decode,
    format_code,
    is_cyclic,
    is_invertible,
    mat_inverse,
    mat_mul,
    mat_order,
    poly_eval_at_matrix,
)
from .gf2poly import (
    FACTORING_CAP,
    Gf2Poly,
    count_primitive,
    factor_mersenne,
    format_poly,
    is_irreducible,
    primitivity_failure,
)

EXHAUSTIVE_CAP = 5
BRUTE_FORCE_CAP = 4
REJECTION_SAMPLING_MAX_N = 8


def gl_order(n: int) -> int:
    """|GL_n(GF(2))| = prod_{i=0}^{n-1} (2^n - 2^i)."""
    if n < 1:
        raise ValueError("n must be positive")
    q = 1 << n
    return math.prod(q - (1 << i) for i in range(n))


def class_size(n: int) -> int:
    """Matrices per primitive polynomial, prod_{i=1}^{n-1} (2^n - 2^i)."""
    if n < 1:
        raise ValueError("n must be positive")
    q = 1 << n
    return math.prod(q - (1 << i) for i in range(1, n))


def total_max_order_count(n: int, cap: int = FACTORING_CAP) -> int:
    """Number of n x n matrices of order 2^n - 1."""
    return class_size(n) * count_primitive(n, cap)


def _check_cap(n: int, cap: int, what: str = "exhaustive") -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"{what} cap exceeded: n={n} > {cap}")


def enumerate_gl(n: int, cap: int = EXHAUSTIVE_CAP) -> Iterator[Gf2Mat]:
    """Yield every invertible n x n matrix once, in ascending code order.

    Rows are picked from the last (most significant in the code) to the
    first, each outside the span of those already chosen.
    """
    _check_cap(n, cap)
    rows = [0] * n
    top = 1 << n

    def extend(i: int, span: frozenset[int]) -> Iterator[Gf2Mat]:
        if i < 0:
            yield Gf2Mat(n, tuple(rows))
            return
        for r in range(1, top):
            if r in span:
                continue
            rows[i] = r
            yield from extend(i - 1, span | {s ^ r for s in span})

    yield from extend(n - 1, frozenset({0}))


def conjugate(a: Gf2Mat, c: Gf2Mat) -> Gf2Mat:
    """c^-1 a c."""
    return mat_mul(mat_mul(mat_inverse(c), a), c)


@dataclass(frozen=True)
class Centralizer:
    """Centralizer of a cyclic matrix with irreducible characteristic polynomial."""

    base: Gf2Mat
    elements: frozenset[Gf2Mat]

    @property
    def codes(self) -> list[int]:
        return sorted(m.code for m in self.elements)

    def __contains__(self, m: Gf2Mat) -> bool:
        return m in self.elements

    def __len__(self):
        return len(self.elements)


def centralizer_of_cyclic(a: Gf2Mat) -> Centralizer:
    """The nonzero polynomials in A of degree < n.

    When A is cyclic every commuting matrix is a polynomial in A, and an
    irreducible characteristic polynomial makes each nonzero one invertible,
    so these 2^n - 1 matrices are the whole centralizer.
    """
    f = char_poly(a)
    if not (is_irreducible(f) and is_cyclic(a)):
        raise ValueError(
            "centralizer formula requires cyclic matrix with irreducible characteristic polynomial"
        )
    n = a.n
    elements = frozenset(poly_eval_at_matrix(Gf2Poly(g), a) for g in range(1, 1 << n))
    assert len(elements) == (1 << n) - 1
    return Centralizer(a, elements)


def commuting_invertible(a: Gf2Mat, cap: int = EXHAUSTIVE_CAP) -> set[Gf2Mat]:
    """{M in GL_n : MA = AM} by full enumeration."""
    return {m for m in enumerate_gl(a.n, cap) if mat_mul(m, a) == mat_mul(a, m)}


def verify_centralizer(a: Gf2Mat, cap: int = EXHAUSTIVE_CAP) -> bool:
    """Compare the polynomial-in-A centralizer against brute-force commutation."""
    _check_cap(a.n, cap)
    return commuting_invertible(a, cap) == set(centralizer_of_cyclic(a).elements)


@dataclass(frozen=True)
class CosetDecomposition:
    """Right cosets H r of a centralizer in GL_n."""

    subgroup: Centralizer
    representatives: tuple[Gf2Mat, ...]

    @property
    def coset_count(self) -> int:
        return len(self.representatives)

    def coset(self, r: Gf2Mat) -> frozenset[Gf2Mat]:
        return frozenset(mat_mul(h, r) for h in self.subgroup.elements)

    def same_coset(self, m1: Gf2Mat, m2: Gf2Mat) -> bool:
        return mat_mul(m1, mat_inverse(m2)) in self.subgroup


def coset_decomposition(h: Centralizer, cap: int = EXHAUSTIVE_CAP) -> CosetDecomposition:
    """Greedy sweep of GL_n in code order; a matrix not yet covered starts a new coset."""
    n = h.base.n
    _check_cap(n, cap)
    k = gl_order(n) // len(h)
    covered = bytearray(1 << (n * n))
    reps = []
    for m in enumerate_gl(n, cap):
        if covered[m.code]:
            continue
        reps.append(m)
        for x in h.elements:
            covered[mat_mul(x, m).code] = 1
        if len(reps) == k:
            break
    return CosetDecomposition(h, tuple(reps))


@dataclass
class ConjClassReport:
    """Maximal-order matrices sharing one primitive characteristic polynomial."""

    polynomial: Gf2Poly
    mode: str
    matrices: list[Gf2Mat]
    seed: int | None = None
    expected_size: int = field(init=False)

    def __post_init__(self):
        self.expected_size = class_size(self.n)

    @property
    def n(self) -> int:
        return self.polynomial.degree

    @property
    def codes(self) -> list[int]:
        return [m.code for m in self.matrices]

    @property
    def count(self) -> int:
        return len(self.matrices)

    @property
    def duplicates(self) -> int:
        return len(self.matrices) - len(set(self.matrices))

    def to_dict(self) -> dict:
        codes = self.codes if self.n <= 8 else [format_code(c, self.n) for c in self.codes]
        return {
            "n": self.n,
            "polynomial": format_poly(self.polynomial),
            "mode": self.mode,
            "seed": self.seed,
            "count": self.count,
            "codes": codes,
        }


def _require_primitive(f: Gf2Poly) -> None:
    reason = primitivity_failure(f)
    if reason is not None:
        raise NotPrimitiveError(f"polynomial must be primitive: {reason}")


def conjugacy_class(f: Gf2Poly, cap: int = EXHAUSTIVE_CAP) -> ConjClassReport:
    """All matrices with characteristic polynomial f, from the coset walk.

    A = companion(f), H = its centralizer, and each right coset
    representative r contributes r^-1 A r.  Output is sorted by code.
    """
    _require_primitive(f)
    _check_cap(f.degree, cap)
    a = companion(f)
    decomp = coset_decomposition(centralizer_of_cyclic(a), cap)
    mats = sorted((conjugate(a, r) for r in decomp.representatives), key=lambda m: m.code)
    return ConjClassReport(f, "exhaustive", mats)


def random_invertible(n: int, rng: random.Random) -> Gf2Mat:
    """Random element of GL_n.

    Uniform by rejection for n <= 8; above that, a unit lower times unit
    upper triangular times permutation product, which is not uniform.
    """
    if n <= REJECTION_SAMPLING_MAX_N:
        while True:
            m = Gf2Mat(n, tuple(rng.getrandbits(n) for _ in range(n)))
            if is_invertible(m):
                return m
    lower = Gf2Mat(n, tuple((rng.getrandbits(i) if i else 0) | 1 << i for i in range(n)))
    upper = Gf2Mat(n, tuple(((rng.getrandbits(n - i - 1) << (i + 1)) if i < n - 1 else 0) | 1 << i
                            for i in range(n)))
    perm = list(range(n))
    rng.shuffle(perm)
    p = Gf2Mat(n, tuple(1 << perm[i] for i in range(n)))
    return mat_mul(mat_mul(lower, upper), p)


def sample_conjugates(f: Gf2Poly, count: int, seed: int | None = None) -> ConjClassReport:
    """``count`` conjugates r^-1 A r of companion(f) for random invertible r.

    Deterministic for a given seed; duplicates are kept.
    """
    _require_primitive(f)
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = random.Random(seed)
    a = companion(f)
    mats = [conjugate(a, random_invertible(a.n, rng)) for _ in range(count)]
    return ConjClassReport(f, "sampled", mats, seed)


# Brute-force oracles over the full code space.

def _census_chunk(n: int, start: int, stop: int) -> dict[int, list[int]]:
    fact = factor_mersenne(n)
    target = fact.value
    out: dict[int, list[int]] = {}
    for code in range(start, stop):
        m = decode(code, n)
        if mat_order(m, fact) == target:
            out.setdefault(char_poly(m).coeffs, []).append(code)
    return out


def _scan(n: int, cap: int, workers: int | None, chunk, *args) -> list[dict[int, list[int]]]:
    _check_cap(n, cap, "brute-force")
    total = 1 << (n * n)
    parts = max(1, min(64, total // 1024))
    bounds = [(total * i // parts, total * (i + 1) // parts) for i in range(parts)]
    if workers is None or workers <= 1:
        return [chunk(n, lo, hi, *args) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(chunk, n, lo, hi, *args) for lo, hi in bounds]
        return [fut.result() for fut in futures]


def _merge(results: list[dict[int, list[int]]]) -> dict[Gf2Poly, list[int]]:
    merged: dict[int, list[int]] = {}
    for part in results:
        for key, codes in part.items():
            merged.setdefault(key, []).extend(codes)
    return {Gf2Poly(k): sorted(v) for k, v in sorted(merged.items())}


def census_matrices(n: int, cap: int = BRUTE_FORCE_CAP, workers: int | None = None) -> dict[Gf2Poly, list[int]]:
    """Codes of all matrices of order 2^n - 1, bucketed by characteristic polynomial.

    The code range is split into fixed chunks; results are merged in chunk
    order so parallel and serial runs agree.
    """
    return _merge(_scan(n, cap, workers, _census_chunk))


def brute_force_census(n: int, cap: int = BRUTE_FORCE_CAP, workers: int | None = None) -> dict[Gf2Poly, int]:
    return {f: len(codes) for f, codes in census_matrices(n, cap, workers).items()}


def _char_poly_chunk(n: int, start: int, stop: int, target: int) -> dict[int, list[int]]:
    codes = []
    for code in range(start, stop):
        m = decode(code, n)
        if char_poly(m).coeffs == target and is_invertible(m):
            codes.append(code)
    return {target: codes} if codes else {}


def class_by_scan(f: Gf2Poly, cap: int = BRUTE_FORCE_CAP, workers: int | None = None) -> list[int]:
    """Sorted codes of every invertible matrix with characteristic polynomial f."""
    n = f.degree
    if n is None or n < 1:
        raise ValueError("degree must be positive")
    return _merge(_scan(n, cap, workers, _char_poly_chunk, f.coeffs)).get(f, [])
