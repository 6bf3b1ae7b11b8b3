"""Dense matrices over cyclotomic fields.

Tensor-power index order: the leftmost factor is the most significant digit,
so the multi-index (i_1, ..., i_k) over {0..N-1} sits at position
sum_a i_a * N**(k - a).  Fourier matrices are 0-based: F_N[i][j] is
zeta_N**(i*j) / sqrt(N), so row and column 0 are constant.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .cyclo import Cyclo, ScalarSyntaxError, format_cyclo, parse_scalar, sqrt_int, zeta
from .partitions import ColoredPartition, delta_plain

DEFAULT_ENTRY_CAP = 10**7

_ZERO = Cyclo.zero()
_ONE = Cyclo.one()


class MatrixError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """An enumeration or matrix size ran past its configured cap."""


@dataclass(frozen=True, eq=False)
class CycloMatrix:
    rows: int
    cols: int
    entries: tuple[Cyclo, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise MatrixError("entries do not match the dimensions")

    @classmethod
    def from_rows(cls, rows) -> CycloMatrix:
        rows = [[x if isinstance(x, Cyclo) else Cyclo.rational(x) for x in r] for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise MatrixError("ragged or empty matrix")
        return cls(len(rows), len(rows[0]), tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> CycloMatrix:
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> CycloMatrix:
        return cls(n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Cyclo:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Cyclo, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Cyclo]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = _ZERO
                for t, a in enumerate(r):
                    if a.is_zero():
                        continue
                    b = other.entries[t * other.cols + j]
                    if not b.is_zero():
                        acc = acc + a * b
                out.append(acc)
        return CycloMatrix(self.rows, other.cols, tuple(out))

    def scale(self, c) -> CycloMatrix:
        return CycloMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise MatrixError("shape mismatch in addition")
        return CycloMatrix(self.rows, self.cols,
                           tuple(a + b for a, b in zip(self.entries, other.entries)))

    def kron(self, other: CycloMatrix) -> CycloMatrix:
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                for j in range(self.cols):
                    a = self[i, j]
                    for l in range(other.cols):
                        out.append(a * other[k, l] if not a.is_zero() else _ZERO)
        return CycloMatrix(self.rows * other.rows, self.cols * other.cols, tuple(out))

    def transpose(self) -> CycloMatrix:
        return CycloMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def conj(self) -> CycloMatrix:
        return CycloMatrix(self.rows, self.cols, tuple(x.conj() for x in self.entries))

    def adjoint(self) -> CycloMatrix:
        return self.transpose().conj()

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def nonzero(self):
        """Yield (row, col) of every nonzero entry."""
        for idx, x in enumerate(self.entries):
            if not x.is_zero():
                yield divmod(idx, self.cols)

    def format(self) -> str:
        return "; ".join(", ".join(format_cyclo(x) for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    n: int
    m: CycloMatrix
    desc: str = ""

    def __post_init__(self):
        if self.m.rows != self.n or self.m.cols != self.n:
            raise MatrixError("unitary matrix must be square of size n")
        if self.m @ self.m.adjoint() != CycloMatrix.identity(self.n):
            raise MatrixError(f"matrix {self.desc or self.m.format()!r} is not unitary")

    def __getitem__(self, ij) -> Cyclo:
        return self.m[ij]

    def __matmul__(self, other: UnitaryMatrix) -> UnitaryMatrix:
        desc = f"{self.desc}@{other.desc}" if self.desc and other.desc else ""
        return UnitaryMatrix(self.n, self.m @ other.m, desc)

    def adjoint(self) -> UnitaryMatrix:
        return UnitaryMatrix(self.n, self.m.adjoint(), f"adj({self.desc})" if self.desc else "")

    def is_symmetric(self) -> bool:
        return self.m == self.m.transpose()

    def __str__(self):
        return self.desc or self.m.format()


# builders -----------------------------------------------------------------

def fourier_matrix(N: int) -> UnitaryMatrix:
    if N < 1:
        raise MatrixError("Fourier size must be positive")
    inv = Cyclo.one() / sqrt_int(N)
    rows = [[zeta(N, i * j) * inv for j in range(N)] for i in range(N)]
    return UnitaryMatrix(N, CycloMatrix.from_rows(rows), f"fourier:{N}")


def block_diag_unitary(blocks) -> UnitaryMatrix:
    blocks = list(blocks)
    if not blocks:
        raise MatrixError("block list must be nonempty")
    n = sum(b.n for b in blocks)
    rows = [[_ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b[i, j]
        off += b.n
    descs = [b.desc for b in blocks]
    if all(d.startswith("fourier:") for d in descs):
        desc = "fourier:" + ",".join(d.split(":", 1)[1] for d in descs)
    else:
        desc = "blockdiag(" + ";".join(descs) + ")"
    return UnitaryMatrix(n, CycloMatrix.from_rows(rows), desc)


def block_fourier(sizes) -> UnitaryMatrix:
    return block_diag_unitary([fourier_matrix(s) for s in sizes])


def permutation_matrix(sigma) -> UnitaryMatrix:
    """P with P e_i = e_sigma(i); ``sigma`` lists 1-based images."""
    sigma = list(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise MatrixError(f"{sigma} is not a permutation of 1..{n}")
    rows = [[_ZERO] * n for _ in range(n)]
    for i, s in enumerate(sigma):
        rows[s - 1][i] = _ONE
    return UnitaryMatrix(n, CycloMatrix.from_rows(rows), "perm:[" + ",".join(map(str, sigma)) + "]")


def diagonal_unitary(phases, desc: str | None = None) -> UnitaryMatrix:
    phases = [p if isinstance(p, Cyclo) else Cyclo.rational(p) for p in phases]
    n = len(phases)
    rows = [[phases[i] if i == j else _ZERO for j in range(n)] for i in range(n)]
    if desc is None:
        desc = "diag:" + ",".join(format_cyclo(p) for p in phases)
    return UnitaryMatrix(n, CycloMatrix.from_rows(rows), desc)


def identity_unitary(n: int) -> UnitaryMatrix:
    return UnitaryMatrix(n, CycloMatrix.identity(n), f"id:{n}")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_matrix(text: str) -> CycloMatrix:
    """Rows separated by ``;``, entries by ``,`` in the scalar grammar."""
    rows = []
    for r in _split_top(text.strip(), ";"):
        if not r.strip():
            continue
        try:
            rows.append([parse_scalar(e) for e in _split_top(r, ",")])
        except ScalarSyntaxError as exc:
            raise MatrixError(str(exc)) from exc
    return CycloMatrix.from_rows(rows)


_PERM = re.compile(r"^perm:\[([\d,\s]+)\]$")


def _parse_builder(term: str) -> UnitaryMatrix:
    term = term.strip()
    if term.startswith("fourier:"):
        try:
            sizes = [int(s) for s in term[len("fourier:"):].split(",")]
        except ValueError as exc:
            raise MatrixError(f"bad Fourier block list in {term!r}") from exc
        return block_fourier(sizes)
    if term.startswith("id:"):
        try:
            return identity_unitary(int(term[3:]))
        except ValueError as exc:
            raise MatrixError(f"bad identity size in {term!r}") from exc
    m = _PERM.match(term)
    if m:
        return permutation_matrix(int(s) for s in m.group(1).split(","))
    if term.startswith("perm:"):
        raise MatrixError(f"bad permutation in {term!r}")
    if term.startswith("diag:"):
        try:
            phases = [parse_scalar(e) for e in _split_top(term[5:], ",")]
        except ScalarSyntaxError as exc:
            raise MatrixError(str(exc)) from exc
        return diagonal_unitary(phases, desc=term)
    mat = parse_matrix(term)
    if mat.rows != mat.cols:
        raise MatrixError("Q must be square")
    return UnitaryMatrix(mat.rows, mat, term)


def parse_unitary(text: str) -> UnitaryMatrix:
    """Parse a Q spec: builders or a literal, multiplied with ``@``."""
    terms = _split_top(text, "@")
    q = _parse_builder(terms[0])
    for t in terms[1:]:
        nxt = _parse_builder(t)
        if nxt.n != q.n:
            raise MatrixError("size mismatch in matrix product")
        q = UnitaryMatrix(q.n, q.m @ nxt.m, text.strip())
    if len(terms) > 1:
        q = UnitaryMatrix(q.n, q.m, text.strip())
    return q


# partition maps and conjugation -------------------------------------------------

def multi_indices(N: int, k: int):
    return itertools.product(range(N), repeat=k)


def t_pi_matrix(p: ColoredPartition, N: int, cap: int = DEFAULT_ENTRY_CAP) -> CycloMatrix:
    """The N^l x N^k zero/one matrix with entry (j, i) = delta_plain(p, i, j)."""
    if N < 1:
        raise MatrixError("N must be positive")
    if N ** (p.upper + p.lower) > cap:
        raise ResourceCapError(f"T_pi would have {N ** (p.upper + p.lower)} entries (cap {cap})")
    entries = []
    for j in multi_indices(N, p.lower):
        for i in multi_indices(N, p.upper):
            entries.append(_ONE if delta_plain(p, i, j) else _ZERO)
    return CycloMatrix(N ** p.lower, N ** p.upper, tuple(entries))


def _apply_mode(flat: list, shape: list[int], axis: int, mat: CycloMatrix, transposed: bool):
    """Contract tensor axis with ``mat``: new[.., b, ..] = sum_a old[.., a, ..] M[a, b]
    (or M[b, a] when transposed)."""
    n = shape[axis]
    stride = 1
    for s in shape[axis + 1:]:
        stride *= s
    block = n * stride
    out = [_ZERO] * len(flat)
    for base in range(0, len(flat), block):
        for rem in range(stride):
            col = [flat[base + a * stride + rem] for a in range(n)]
            if all(c.is_zero() for c in col):
                continue
            for b in range(n):
                acc = _ZERO
                for a, c in enumerate(col):
                    if c.is_zero():
                        continue
                    m = mat[b, a] if transposed else mat[a, b]
                    if not m.is_zero():
                        acc = acc + c * m
                out[base + b * stride + rem] = acc
    return out


def conjugate_intertwiner(T: CycloMatrix, k, l, Q: UnitaryMatrix) -> CycloMatrix:
    """T^Q = (Q*)^{(x) l} T Q^{(x) k}; for colored words a black factor uses conj(Q).

    ``k`` and ``l`` are leg counts or color strings.
    """
    kc = k if isinstance(k, str) else "w" * k
    lc = l if isinstance(l, str) else "w" * l
    N = Q.n
    if T.rows != N ** len(lc) or T.cols != N ** len(kc):
        raise MatrixError(f"T is {T.rows}x{T.cols}, expected {N ** len(lc)}x{N ** len(kc)}")
    shape = [N] * (len(lc) + len(kc))
    flat = list(T.entries)
    qm, qbar = Q.m, Q.m.conj()
    # right factors: (T Q^{(x)k})[j, i] = sum_s T[j, s] prod Q[s_a, i_a]
    for a, c in enumerate(kc):
        flat = _apply_mode(flat, shape, len(lc) + a, qm if c == "w" else qbar, transposed=False)
    # left factors: (Q*)[j, t] = conj(Q[t, j]), so new[j] = sum_t conj(Q)[t, j] old[t]
    for b, c in enumerate(lc):
        flat = _apply_mode(flat, shape, b, qbar if c == "w" else qm, transposed=False)
    return CycloMatrix(T.rows, T.cols, tuple(flat))
