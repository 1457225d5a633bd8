"""Square matrices over GF(2) with bit-packed rows.

Row i of an n x n matrix is an integer whose bit j is the entry a_ij, so a
whole row fits in one machine word for n <= 64.  Products are computed row
by word: row i of A*B is the xor of the rows of B selected by the set bits
of row i of A.

Matrices map to integer codes row-major and least significant bit first,
code = sum a_ij 2^(i*n + j); the 3 x 3 identity is 273.  With this packing
the code is simply the rows concatenated, row 0 in the low bits.

States and other vectors are plain ints with bit j holding coordinate j,
and matrices act on column vectors, s -> A*s.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError, SingularMatrixError
from .gf2poly import ONE, X, Gf2Poly, MersenneFactorization, poly_lcm

DIMENSION_CAP = 64
ORDER_STEP_CAP = 1 << 20
CYCLIC_VECTOR_TRIALS = 64


@dataclass(frozen=True)
class Gf2Mat:
    """An n x n matrix over GF(2); ``rows[i]`` bit j is entry (i, j)."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= DIMENSION_CAP:
            raise CapExceededError(f"dimension must be in 1..{DIMENSION_CAP}, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError("row has bits outside the matrix width")

    @classmethod
    def identity(cls, n: int) -> Gf2Mat:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Gf2Mat:
        return cls(n, (0,) * n)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> Gf2Mat:
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(sum((v & 1) << j for j, v in enumerate(row)))
        return cls(n, tuple(rows))

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def __matmul__(self, other: Gf2Mat) -> Gf2Mat:
        return mat_mul(self, other)

    def __mul__(self, other: Gf2Mat) -> Gf2Mat:
        return mat_mul(self, other)

    def __add__(self, other: Gf2Mat) -> Gf2Mat:
        return mat_add(self, other)

    def __pow__(self, e: int) -> Gf2Mat:
        return mat_pow(self, e)

    def __invert__(self) -> Gf2Mat:
        return mat_inverse(self)

    @property
    def code(self) -> int:
        return encode(self).code

    def transpose(self) -> Gf2Mat:
        n = self.n
        return Gf2Mat(n, tuple(sum((self.rows[i] >> j & 1) << i for i in range(n)) for j in range(n)))

    def apply(self, v: int) -> int:
        """Matrix-vector product A*v with v packed as an int."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & v).bit_count() & 1) << i
        return out

    def __str__(self):
        return format_grid(self)


@dataclass(frozen=True)
class MatCode:
    """Integer code of an n x n matrix, sum a_ij 2^(i*n + j)."""

    n: int
    code: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if not 0 <= self.code < 1 << (self.n * self.n):
            raise ValueError(f"code {self.code} out of range for n={self.n}")

    def __int__(self):
        return self.code

    def __str__(self):
        return format_code(self.code, self.n)


def _check_dims(a: Gf2Mat, b: Gf2Mat) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_mul(a: Gf2Mat, b: Gf2Mat) -> Gf2Mat:
    _check_dims(a, b)
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= brows[j]
            r >>= 1
            j += 1
        out.append(acc)
    return Gf2Mat(a.n, tuple(out))


def mat_add(a: Gf2Mat, b: Gf2Mat) -> Gf2Mat:
    _check_dims(a, b)
    return Gf2Mat(a.n, tuple(x ^ y for x, y in zip(a.rows, b.rows)))


def _echelon(rows: Iterable[int]) -> list[int]:
    """Reduce rows to a basis with distinct leading bits (highest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return list(basis.values())


def vector_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of packed vectors."""
    return len(_echelon(vectors))


def mat_rank(m: Gf2Mat) -> int:
    return vector_rank(m.rows)


def is_invertible(m: Gf2Mat) -> bool:
    return mat_rank(m) == m.n


def mat_inverse(m: Gf2Mat) -> Gf2Mat:
    """Gauss-Jordan elimination on [A | I]."""
    n = m.n
    # augmented row: low n bits are A, high n bits are the identity block
    aug = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(col, n) if aug[i] & bit), None)
        if piv is None:
            raise SingularMatrixError("singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col]
        for i in range(n):
            if i != col and aug[i] & bit:
                aug[i] ^= p
    return Gf2Mat(n, tuple(r >> n for r in aug))


def mat_pow(m: Gf2Mat, e: int) -> Gf2Mat:
    if e < 0:
        return mat_pow(mat_inverse(m), -e)
    result = Gf2Mat.identity(m.n)
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def companion(f: Gf2Poly) -> Gf2Mat:
    """Companion matrix: ones on the subdiagonal, coefficients a_0..a_{n-1} in the last column."""
    n = f.degree
    if n is None or n < 1:
        raise ValueError("companion matrix needs a polynomial of positive degree")
    last = 1 << (n - 1)
    rows = []
    for i in range(n):
        r = 1 << (i - 1) if i else 0
        if f.coeffs >> i & 1:
            r |= last
        rows.append(r)
    return Gf2Mat(n, tuple(rows))


def char_poly(m: Gf2Mat) -> Gf2Poly:
    """det(xI + A), via similarity reduction to upper Hessenberg form."""
    n = m.n
    h = [list(row) for row in m.to_lists()]
    # Reduce: zero out entries below the subdiagonal column by column.
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            k = j + 1
            h[piv], h[k] = h[k], h[piv]
            for row in h:
                row[piv], row[k] = row[k], row[piv]
        for i in range(j + 2, n):
            if h[i][j]:
                # R_i += R_{j+1}, then C_{j+1} += C_i to keep the similarity
                hi, hk = h[i], h[j + 1]
                for c in range(n):
                    hi[c] ^= hk[c]
                for row in h:
                    row[j + 1] ^= row[i]
    # p_k = (x + h_kk) p_{k-1} + sum_i h_ik (prod of subdiagonal h_{m,m-1}, m=i+1..k) p_{i-1}
    p = [ONE]
    for k in range(n):
        pk = X * p[k] + (p[k] if h[k][k] else Gf2Poly(0))
        t = 1
        for i in range(k - 1, -1, -1):
            t &= h[i + 1][i]
            if not t:
                break
            if h[i][k]:
                pk = pk + p[i]
        p.append(pk)
    return p[n]


def krylov_annihilator(m: Gf2Mat, v: int) -> Gf2Poly:
    """Minimal monic g with g(A) v = 0."""
    if v == 0:
        return ONE
    # basis maps leading bit -> (vector, polynomial producing it from v)
    basis: dict[int, tuple[int, int]] = {}
    w, poly = v, 1
    while True:
        r, rp = w, poly
        while r:
            top = r.bit_length() - 1
            entry = basis.get(top)
            if entry is None:
                break
            r ^= entry[0]
            rp ^= entry[1]
        if not r:
            return Gf2Poly(rp)
        basis[r.bit_length() - 1] = (r, rp)
        w = m.apply(w)
        poly <<= 1


def min_poly(m: Gf2Mat) -> Gf2Poly:
    """LCM of the Krylov annihilators of the standard basis vectors."""
    g = ONE
    for i in range(m.n):
        g = poly_lcm(g, krylov_annihilator(m, 1 << i))
    return g


def krylov_rank(m: Gf2Mat, v: int) -> int:
    """Rank of v, Av, ..., A^{n-1} v."""
    vecs = []
    for _ in range(m.n):
        vecs.append(v)
        v = m.apply(v)
    return vector_rank(vecs)


def is_cyclic(m: Gf2Mat) -> bool:
    return char_poly(m) == min_poly(m)


def find_cyclic_vector(m: Gf2Mat, trials: int = CYCLIC_VECTOR_TRIALS, seed: int = 0) -> int | None:
    """A vector whose Krylov sequence spans the space, or None when A is not cyclic.

    Standard basis vectors are tried first, then ``trials`` random vectors.
    """
    n = m.n
    for i in range(n):
        if krylov_rank(m, 1 << i) == n:
            return 1 << i
    if not is_cyclic(m):
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        v = rng.getrandbits(n)
        if v and krylov_rank(m, v) == n:
            return v
    if n <= 16:
        for v in range(1, 1 << n):
            if krylov_rank(m, v) == n:
                return v
    return None


def poly_eval_at_matrix(g: Gf2Poly, m: Gf2Mat) -> Gf2Mat:
    """Horner evaluation of g(A)."""
    n = m.n
    ident = Gf2Mat.identity(n)
    acc = Gf2Mat.zero(n)
    if not g:
        return acc
    for i in range(g.degree, -1, -1):
        acc = mat_mul(acc, m)
        if g.coeffs >> i & 1:
            acc = mat_add(acc, ident)
    return acc


def mat_order(
    m: Gf2Mat,
    fact: MersenneFactorization | None = None,
    cap: int = ORDER_STEP_CAP,
) -> int | None:
    """Multiplicative order of A, or None if A is singular.

    With the factorization of 2^n - 1 and A^(2^n - 1) = I the exact order is
    found by stripping prime factors; otherwise A is multiplied up step by
    step until I appears or ``cap`` steps pass.
    """
    if not is_invertible(m):
        return None
    ident = Gf2Mat.identity(m.n)
    if fact is not None:
        if fact.n != m.n:
            raise ValueError(f"factorization is for n={fact.n}, matrix has n={m.n}")
        order = fact.value
        if mat_pow(m, order) == ident:
            for p, e in fact.factors:
                for _ in range(e):
                    if mat_pow(m, order // p) == ident:
                        order //= p
                    else:
                        break
            return order
    power = m
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = mat_mul(power, m)
    raise CapExceededError("order cap exceeded")


# Codec and text formats.

def encode(m: Gf2Mat) -> MatCode:
    n = m.n
    code = 0
    for i, r in enumerate(m.rows):
        code |= r << (i * n)
    return MatCode(n, code)


def decode(c: MatCode | int, n: int | None = None) -> Gf2Mat:
    if isinstance(c, MatCode):
        n, code = c.n, c.code
    else:
        if n is None:
            raise ValueError("dimension required to decode a bare integer")
        code = MatCode(n, c).code
    mask = (1 << n) - 1
    return Gf2Mat(n, tuple(code >> (i * n) & mask for i in range(n)))


def format_code(code: int, n: int) -> str:
    """Decimal for n <= 8, 0x-hex above."""
    return str(code) if n <= 8 else hex(code)


def format_grid(m: Gf2Mat, sep: str = "\n") -> str:
    return sep.join("".join(str(m.rows[i] >> j & 1) for j in range(m.n)) for i in range(m.n))


def infer_dimension(code: int) -> int:
    """Smallest n with code < 2^(n*n)."""
    n = 1
    while code >= 1 << (n * n):
        n += 1
    return n


_GRID_SPLIT = re.compile(r"[\s/;,]+")


def parse_matrix(text: str, n: int | None = None) -> Gf2Mat:
    """Parse a decimal/0x-hex code or a 0/1 grid (rows split by newlines, '/', ';' or ',').

    For a bare code without ``n`` the smallest fitting dimension is used.
    """
    s = text.strip()
    rows = [r for r in _GRID_SPLIT.split(s) if r]
    if len(rows) > 1:
        if any(set(r) - {"0", "1"} for r in rows):
            raise ValueError(f"malformed matrix grid {text!r}")
        m = Gf2Mat.from_lists([[int(ch) for ch in r] for r in rows])
        if n is not None and m.n != n:
            raise ValueError(f"grid is {m.n}x{m.n}, expected n={n}")
        return m
    try:
        code = int(s.lower(), 0)
    except ValueError:
        raise ValueError(f"malformed matrix {text!r}") from None
    if code < 0:
        raise ValueError("matrix code must be nonnegative")
    return decode(code, n if n is not None else infer_dimension(code))


def parse_vector(text: str, n: int) -> int:
    """Parse an n-character 0/1 string (index 0 leftmost) into a packed vector."""
    s = text.strip()
    if len(s) != n or set(s) - {"0", "1"}:
        raise ValueError(f"expected a {n}-character 0/1 string, got {text!r}")
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


def format_vector(v: int, n: int) -> str:
    return "".join(str(v >> j & 1) for j in range(n))
