"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries lie in ``[0, p)``.
Vectors are treated as rows throughout the package, so a subspace is stored
as a matrix whose rows form a basis.

The field characteristic is a single session-wide prime.  It defaults to
32003 and can be overridden with the ``RELTILT_PRIME`` environment variable
or with :func:`set_prime`.  Algebras carry the prime they were built with,
and every helper below accepts an explicit ``p`` for that reason.
"""

from __future__ import annotations

import os
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

DEFAULT_PRIME = 32003

# Products of two residues stay below 2**31, so int64 accumulation is safe
# for any inner dimension this package will ever see.
DTYPE = np.int64


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (n is small here)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_from_env() -> int:
    raw = os.environ.get("RELTILT_PRIME")
    if raw is None:
        return DEFAULT_PRIME
    value = int(raw)
    if not is_prime(value):
        raise ValueError(f"RELTILT_PRIME={raw} is not a prime")
    return value


_SESSION_PRIME = _prime_from_env()


def get_prime() -> int:
    """Return the session prime."""
    return _SESSION_PRIME


def set_prime(p: int) -> None:
    """Change the session prime.

    Objects built earlier keep the prime they were built with.

    Args:
        p: A prime number.
    """
    global _SESSION_PRIME
    if not is_prime(int(p)):
        raise ValueError(f"{p} is not a prime")
    _SESSION_PRIME = int(p)


def _p(p: Optional[int]) -> int:
    return _SESSION_PRIME if p is None else int(p)


def as_matrix(data, p: Optional[int] = None, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Coerce nested lists or arrays to a reduced int64 matrix.

    Args:
        data: Anything ``numpy.asarray`` accepts.
        p: Field characteristic; defaults to the session prime.
        shape: Optional shape used when ``data`` is empty.
    """
    p = _p(p)
    if shape is not None and np.size(data) == 0:
        return np.zeros(shape, dtype=DTYPE)
    if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
        arr = np.mod(data.astype(DTYPE, copy=False), p)
    else:
        # object dtype keeps arbitrary Python ints exact before reduction
        arr = np.mod(np.asarray(data, dtype=object), p).astype(DTYPE)
    if shape is not None:
        arr = arr.reshape(shape)
    return arr


def as_rows(m, n: int) -> np.ndarray:
    """View ``m`` as a matrix with ``n`` columns (handles ``n == 0``)."""
    m = np.asarray(m, dtype=DTYPE)
    if n == 0:
        return zeros(m.shape[0] if m.ndim == 2 else 0, 0)
    return m.reshape(-1, n)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def inv_scalar(a: int, p: Optional[int] = None) -> int:
    """Multiplicative inverse of a nonzero residue."""
    p = _p(p)
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in F_p")
    return pow(a, -1, p)


def matmul(*mats: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Product of a chain of matrices, reduced mod p after every step."""
    p = _p(p)
    out = mats[0]
    for m in mats[1:]:
        out = (out @ m) % p
    return np.asarray(out, dtype=DTYPE) % p


class RREF(NamedTuple):
    matrix: np.ndarray
    pivots: Tuple[int, ...]
    rank: int


def rref(m: np.ndarray, p: Optional[int] = None) -> RREF:
    """Reduced row echelon form.

    Args:
        m: Matrix over F_p.
        p: Field characteristic.

    Returns:
        ``RREF(matrix, pivots, rank)``.  ``matrix`` has the same shape as
        ``m``; its first ``rank`` rows carry the pivots.
    """
    p = _p(p)
    a = np.array(m, dtype=DTYPE) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_scalar(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return RREF(a, tuple(pivots), r)


def rank(m: np.ndarray, p: Optional[int] = None) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, p).rank


def row_basis(m: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Rows of the RREF spanning the row space of ``m``."""
    m = np.asarray(m, dtype=DTYPE)
    if m.shape[0] == 0:
        return m.reshape(0, m.shape[1] if m.ndim == 2 else 0)
    res = rref(m, p)
    return res.matrix[: res.rank]


def nullspace(a: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{v : a @ v = 0}``."""
    p = _p(p)
    a = np.asarray(a, dtype=DTYPE)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols)
    red = rref(a, p)
    free = [c for c in range(cols) if c not in set(red.pivots)]
    basis = zeros(len(free), cols)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(red.pivots):
            basis[i, pc] = (-red.matrix[r, f]) % p
    return basis


def left_nullspace(a: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Basis (as rows) of ``{v : v @ a = 0}``."""
    return nullspace(np.asarray(a, dtype=DTYPE).T, p)


def solve(a: np.ndarray, b: np.ndarray, p: Optional[int] = None) -> Tuple[Optional[np.ndarray], np.ndarray]:
    """Solve ``a @ x = b`` exactly.

    Args:
        a: ``m x n`` matrix.
        b: ``m x k`` matrix (a 1-d ``b`` is treated as one column).

    Returns:
        ``(x, kernel)`` where ``x`` is one particular solution or ``None``
        when the system is inconsistent, and ``kernel`` holds a basis of the
        right kernel of ``a`` as rows.
    """
    p = _p(p)
    a = np.asarray(a, dtype=DTYPE) % p
    b = np.asarray(b, dtype=DTYPE) % p
    squeeze = b.ndim == 1
    if squeeze:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A has {a.shape[0]} rows, B has {b.shape[0]}")
    n = a.shape[1]
    kernel = nullspace(a, p)
    aug = np.hstack([a, b])
    red = rref(aug, p)
    if any(c >= n for c in red.pivots):
        return None, kernel
    x = zeros(n, b.shape[1])
    for r, pc in enumerate(red.pivots):
        x[pc] = red.matrix[r, n:]
    return (x[:, 0] if squeeze else x), kernel


def express(basis: np.ndarray, vectors: np.ndarray, p: Optional[int] = None) -> Optional[np.ndarray]:
    """Coefficients ``c`` with ``c @ basis = vectors``, or ``None``.

    Args:
        basis: ``k x n`` matrix with linearly independent rows.
        vectors: ``m x n`` matrix (or a single length-``n`` vector).
    """
    vectors = np.asarray(vectors, dtype=DTYPE)
    single = vectors.ndim == 1
    if single:
        vectors = vectors.reshape(1, -1)
    basis = as_rows(basis, vectors.shape[1])
    x, _ = solve(basis.T, vectors.T, p)
    if x is None:
        return None
    return x[:, 0] if single else x.T


def in_row_space(basis: np.ndarray, vectors: np.ndarray, p: Optional[int] = None) -> bool:
    basis = np.asarray(basis, dtype=DTYPE)
    vectors = np.atleast_2d(np.asarray(vectors, dtype=DTYPE))
    if vectors.shape[0] == 0:
        return True
    base = rank(basis, p) if basis.shape[0] else 0
    return rank(np.vstack([as_rows(basis, vectors.shape[1]), vectors]), p) == base


def subspace_sum_intersect(u: np.ndarray, v: np.ndarray, p: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Bases of ``U + V`` and ``U ∩ V`` for row-spanned subspaces.

    Args:
        u: Rows spanning U.
        v: Rows spanning V.

    Returns:
        ``(sum_basis, intersection_basis)``, both in reduced echelon form.
    """
    p = _p(p)
    u = np.asarray(u, dtype=DTYPE)
    v = np.asarray(v, dtype=DTYPE)
    if u.ndim != 2 or v.ndim != 2 or u.shape[1] != v.shape[1]:
        raise ValueError("ambient dimension mismatch")
    n = u.shape[1]
    ub = row_basis(u, p)
    vb = row_basis(v, p)
    total = row_basis(np.vstack([ub, vb]), p)
    if ub.shape[0] == 0 or vb.shape[0] == 0:
        return total, zeros(0, n)
    # (a, b) with a @ ub = b @ vb  <=>  [a, -b] in the left kernel of [ub; vb]
    rel = left_nullspace(np.vstack([ub, vb]), p)
    inter = matmul(rel[:, : ub.shape[0]], ub, p=p) if rel.shape[0] else zeros(0, n)
    return total, row_basis(inter, p)


def complement(u: np.ndarray, n: int, p: Optional[int] = None) -> np.ndarray:
    """Standard basis vectors spanning a complement of ``rowspace(u)`` in F_p^n."""
    if n == 0:
        return zeros(0, 0)
    u = as_rows(u, n)
    if u.shape[0] == 0:
        return identity(n)
    red = rref(u, p)
    free = [c for c in range(n) if c not in set(red.pivots)]
    out = zeros(len(free), n)
    for i, c in enumerate(free):
        out[i, c] = 1
    return out


def quotient_complement(ambient: np.ndarray, sub: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Rows of ``ambient``'s span completing ``sub`` to a basis of the span.

    ``sub`` must lie inside the row space of ``ambient``.  The returned rows
    map bijectively onto a basis of ``span(ambient) / span(sub)``.
    """
    p = _p(p)
    ambient = np.asarray(ambient, dtype=DTYPE)
    n = ambient.shape[1]
    sub = as_rows(sub, n)
    chosen = row_basis(sub, p)
    r = chosen.shape[0]
    picked = []
    for row in ambient:
        trial = np.vstack([chosen, row.reshape(1, -1)])
        if rank(trial, p) > r:
            chosen = trial
            r += 1
            picked.append(row)
    return as_rows(np.array(picked, dtype=DTYPE), n) if picked else zeros(0, n)


def inverse(a: np.ndarray, p: Optional[int] = None) -> np.ndarray:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    p = _p(p)
    a = np.asarray(a, dtype=DTYPE)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    if rank(a, p) < n:
        raise ValueError("matrix is singular")
    return rref(np.hstack([a, identity(n)]), p).matrix[:, n:]


def is_invertible(a: np.ndarray, p: Optional[int] = None) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: Optional[int] = None) -> np.ndarray:
    return rng.integers(0, _p(p), size=(rows, cols), dtype=DTYPE)


def random_invertible(rng: np.random.Generator, n: int, p: Optional[int] = None) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, p)
        if is_invertible(m, p):
            return m
