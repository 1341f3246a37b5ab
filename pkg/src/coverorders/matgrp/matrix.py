"""Dense matrices over a ``GF`` as integer numpy arrays.

Groups act on row vectors: v -> v g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import GF


@dataclass(frozen=True, eq=False)
class MatrixElement:
    field: GF
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixElement)
            and self.field == other.field
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.field, self.entries.tobytes()))

    def __matmul__(self, other: "MatrixElement") -> "MatrixElement":
        return MatrixElement(self.field, mat_mul(self.field, self.entries, other.entries))

    def to_json(self) -> dict:
        F = self.field
        return {
            "p": F.p,
            "m": F.m,
            "modulus": list(F.modulus),
            "entries": [[[int(c) for c in F.digits[v]] for v in row] for row in self.entries],
        }


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_add(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if F.p == 2:
        return A ^ B
    if F.m == 1:
        return (A + B) % F.p
    if F.add_table is not None:
        return F.add_table[A, B]
    return np.vectorize(F.add, otypes=[np.int64])(A, B)


def mat_neg(F: GF, A: np.ndarray) -> np.ndarray:
    if F.p == 2:
        return A.copy()
    if F.m == 1:
        return (-A) % F.p
    return np.vectorize(F.neg, otypes=[np.int64])(A)


def mat_sub(F: GF, A, B):
    return mat_add(F, A, mat_neg(F, B))


def mat_scale(F: GF, c: int, A: np.ndarray) -> np.ndarray:
    if F.mul_table is not None:
        return F.mul_table[c, A]
    return np.vectorize(lambda a: F.mul(c, a), otypes=[np.int64])(A)


def mat_mul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.m == 1:
        return (A @ B) % F.p
    if F.mul_table is not None:
        prods = F.mul_table[A[:, :, None], B[None, :, :]]
        if F.p == 2:
            return np.bitwise_xor.reduce(prods, axis=1)
        acc = prods[:, 0, :]
        for k in range(1, prods.shape[1]):
            acc = F.add_table[acc, prods[:, k, :]]
        return acc
    n, k = A.shape
    k2, m = B.shape
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
            out[i, j] = acc
    return out


def mat_pow(F: GF, A: np.ndarray, e: int) -> np.ndarray:
    out = identity(A.shape[0])
    base = A
    while e:
        if e & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        e >>= 1
    return out


def mat_order(F: GF, A: np.ndarray, bound: int | None = None) -> int:
    """Multiplicative order of an invertible matrix (by iteration)."""
    ident = identity(A.shape[0])
    P = A.copy()
    k = 1
    while not np.array_equal(P, ident):
        P = mat_mul(F, P, A)
        k += 1
        if bound is not None and k > bound:
            raise ValueError("order exceeds bound")
    return k


def _row_reduce(F: GF, M: np.ndarray):
    """Reduced row echelon form; returns (R, pivot columns, det factor of the row ops)."""
    R = [list(map(int, row)) for row in M]
    rows, cols = len(R), (len(R[0]) if R else 0)
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            R[r], R[piv] = R[piv], R[r]
            det = F.neg(det)
        lead = R[r][c]
        det = F.mul(det, lead)
        inv = F.inv(lead)
        R[r] = [F.mul(inv, v) for v in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return np.array(R, dtype=np.int64).reshape(rows, cols), pivots, det


def det(F: GF, A: np.ndarray) -> int:
    n = A.shape[0]
    if n == 0:
        return 1
    _, pivots, d = _row_reduce(F, A)
    return d if len(pivots) == n else 0


def rank(F: GF, A: np.ndarray) -> int:
    return len(_row_reduce(F, A)[1])


def inverse(F: GF, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([A, identity(n)], axis=1)
    R, pivots, _ = _row_reduce(F, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def right_kernel(F: GF, A: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    rows, cols = A.shape
    R, pivots, _ = _row_reduce(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(int(R[i, f]))
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def left_kernel(F: GF, A: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : v A = 0}."""
    return right_kernel(F, A.T)


def conj(F: GF, A: np.ndarray, q: int) -> np.ndarray:
    """Entrywise x -> x^q."""
    lut = np.array([F.pow(a, q) for a in range(F.q)], dtype=np.int64)
    return lut[A]


def is_unitary(F: GF, A: np.ndarray, q: int) -> bool:
    """A conj(A)^T = I, i.e. A preserves the identity Hermitian form over F_{q^2}."""
    return np.array_equal(mat_mul(F, A, conj(F, A, q).T), identity(A.shape[0]))


def regular_rep(F: GF, a: int) -> np.ndarray:
    """m x m matrix over F_p of b -> b a in the basis x^0..x^(m-1), row convention."""
    rows = [F.digits[F.mul(x, a)] for x in F.prime_basis()]
    return np.array(rows, dtype=np.int64)


def expand(F: GF, A: np.ndarray) -> np.ndarray:
    """The F_p-matrix of A acting on F_q^n = F_p^(nm)."""
    if F.m == 1:
        return np.asarray(A, dtype=np.int64) % F.p
    m = F.m
    n1, n2 = A.shape
    reps = {}
    out = np.zeros((n1 * m, n2 * m), dtype=np.int64)
    for i in range(n1):
        for j in range(n2):
            a = int(A[i, j])
            if a not in reps:
                reps[a] = regular_rep(F, a)
            out[i * m : (i + 1) * m, j * m : (j + 1) * m] = reps[a]
    return out


def companion(F: GF, coeffs) -> np.ndarray:
    """Companion matrix (row convention) of the monic polynomial with coefficients low to high.

    Its characteristic polynomial is the given one.
    """
    n = len(coeffs) - 1
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        C[i, i + 1] = 1
    for j in range(n):
        C[n - 1, j] = F.neg(int(coeffs[j]))
    return C


def block_diag(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for b in blocks:
        s = b.shape[0]
        out[k : k + s, k : k + s] = b
        k += s
    return out


def kron(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n1, m1 = A.shape
    n2, m2 = B.shape
    out = np.zeros((n1 * n2, m1 * m2), dtype=np.int64)
    for i in range(n1):
        for j in range(m1):
            out[i * n2 : (i + 1) * n2, j * m2 : (j + 1) * m2] = mat_scale(F, int(A[i, j]), B)
    return out


def charpoly_roots_multiset(F: GF, A: np.ndarray) -> list[int]:
    """Eigenvalues of A in F with algebraic multiplicity, when A splits over F.

    Multiplicities come from ranks of powers of (A - cI): the generalized
    eigenspace dimension is the nullity of (A - cI)^n.
    """
    n = A.shape[0]
    out = []
    for c in range(1, F.q):
        M = mat_sub(F, A, mat_scale(F, c, identity(n)))
        null = n - rank(F, mat_pow(F, M, n))
        out.extend([c] * null)
    if len(out) != n:
        raise ValueError("characteristic polynomial does not split over the field")
    return out


def binom_subsets(n: int, k: int):
    import itertools

    return list(itertools.combinations(range(n), k))


def exterior_power(F: GF, A: np.ndarray, k: int) -> np.ndarray:
    """Matrix of the k-th exterior power in the lexicographic k-subset basis.

    Entry (I, J) is the minor of A on rows I and columns J.
    """
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}")
    subsets = binom_subsets(n, k)
    N = len(subsets)
    out = np.zeros((N, N), dtype=np.int64)
    for a, I in enumerate(subsets):
        rows = A[list(I), :]
        for b, J in enumerate(subsets):
            out[a, b] = det(F, rows[:, list(J)])
    return out


def frobenius_twist(F: GF, A: np.ndarray, k: int = 1) -> np.ndarray:
    """Entrywise x -> x^(p^k)."""
    return conj(F, A, F.p**k)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
