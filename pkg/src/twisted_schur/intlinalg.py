"""Exact integer linear algebra: sparse matrices, Smith form, kernels, lattices.

Everything is over Z with Python big integers (or Fraction where a rational
solve is needed); no floating point anywhere.  The Smith normal form has two
paths sharing one contract: a dense textbook routine for small matrices and a
sparse dict-of-dicts routine with Markowitz-style pivoting for large ones.
Both track the unimodular transforms U, V on request so that U*M*V = S.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InputError

DENSE_LIMIT = 200  # dense SNF is used when max(rows, cols) < DENSE_LIMIT


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class SparseIntMatrix:
    """Sparse integer matrix stored as row dicts {col: value}, zero-free."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int,
                 data: Optional[Dict[int, Dict[int, int]]] = None):
        if rows < 0 or cols < 0:
            raise InputError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self.data: Dict[int, Dict[int, int]] = data if data is not None else {}

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Iterable[Tuple[int, int, int]]) -> "SparseIntMatrix":
        m = cls(rows, cols)
        for r, c, v in entries:
            m.add_at(r, c, v)
        return m

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]],
                   cols: Optional[int] = None) -> "SparseIntMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(dense):
            for c, v in enumerate(row):
                if v:
                    m.data.setdefault(r, {})[c] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    def add_at(self, r: int, c: int, v: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise InputError(f"entry ({r},{c}) out of range for {self.rows}x{self.cols}")
        if not v:
            return
        row = self.data.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
        else:
            del row[c]
            if not row:
                del self.data[r]

    def get(self, r: int, c: int) -> int:
        return self.data.get(r, {}).get(c, 0)

    def entries(self) -> Iterable[Tuple[int, int, int]]:
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def to_dense(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self.data.items():
            for c, v in row.items():
                dense[r][c] = v
        return dense

    def transpose(self) -> "SparseIntMatrix":
        t = SparseIntMatrix(self.cols, self.rows)
        for r, row in self.data.items():
            for c, v in row.items():
                t.data.setdefault(c, {})[r] = v
        return t

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise InputError("matmul shape mismatch")
        out = SparseIntMatrix(self.rows, other.cols)
        for r, row in self.data.items():
            acc: Dict[int, int] = {}
            for k, v in row.items():
                orow = other.data.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    nv = acc.get(c, 0) + v * w
                    if nv:
                        acc[c] = nv
                    else:
                        del acc[c]
            if acc:
                out.data[r] = acc
        return out

    def mul_vector(self, vec: Sequence[int]) -> List[int]:
        if len(vec) != self.cols:
            raise InputError("mul_vector length mismatch")
        out = [0] * self.rows
        for r, row in self.data.items():
            out[r] = sum(v * vec[c] for c, v in row.items())
        return out

    def column(self, c: int) -> List[int]:
        return [self.data.get(r, {}).get(c, 0) for r in range(self.rows)]

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.rows, self.cols,
                               {r: dict(row) for r, row in self.data.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseIntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


@dataclass
class SNFResult:
    """U * M * V = S with S diagonal, d_1 | d_2 | ... | d_r, d_i > 0."""

    diagonal: Tuple[int, ...]
    rank: int
    rows: int
    cols: int
    U: Optional[SparseIntMatrix]
    V: Optional[SparseIntMatrix]

    def diag_matrix(self) -> SparseIntMatrix:
        s = SparseIntMatrix(self.rows, self.cols)
        for i, d in enumerate(self.diagonal):
            s.data[i] = {i: d}
        return s


def _snf_dense(M: SparseIntMatrix, need_u: bool, need_v: bool) -> SNFResult:
    """Textbook SNF on a dense working copy; used below DENSE_LIMIT."""
    n, m = M.rows, M.cols
    a = M.to_dense()
    U = [[int(i == j) for j in range(n)] for i in range(n)] if need_u else None
    V = [[int(i == j) for j in range(m)] for i in range(m)] if need_v else None

    def row_op(i, j, q):  # row_j += q * row_i
        ai, aj = a[i], a[j]
        for c in range(m):
            aj[c] += q * ai[c]
        if U is not None:
            ui, uj = U[i], U[j]
            for c in range(n):
                uj[c] += q * ui[c]

    def row_2x2(i, j, p, q, r, s):  # (row_i, row_j) <- (p*ri + q*rj, r*ri + s*rj)
        for mat, w in ((a, m), (U, n)):
            if mat is None:
                continue
            mi, mj = mat[i], mat[j]
            for c in range(w):
                mi[c], mj[c] = p * mi[c] + q * mj[c], r * mi[c] + s * mj[c]

    def col_2x2(i, j, p, q, r, s):  # (col_i, col_j) <- (p*ci + q*cj, r*ci + s*cj)
        for mat in (a, V):
            if mat is None:
                continue
            for row in mat:
                row[i], row[j] = p * row[i] + q * row[j], r * row[i] + s * row[j]

    def col_op(i, j, q):  # col_j += q * col_i
        for mat in (a, V):
            if mat is None:
                continue
            for row in mat:
                row[j] += q * row[i]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for mat in (a, V):
            if mat is None:
                continue
            for row in mat:
                row[i], row[j] = row[j], row[i]

    rank = 0
    for k in range(min(n, m)):
        # find pivot: smallest |value|, preferring units, row-major tie-break
        pr = pc = -1
        best = None
        for i in range(k, n):
            ai = a[i]
            for j in range(k, m):
                v = ai[j]
                if v:
                    key = (abs(v) != 1, abs(v), i, j)
                    if best is None or key < best:
                        best, pr, pc = key, i, j
        if best is None:
            break
        swap_rows(k, pr)
        swap_cols(k, pc)
        while True:
            piv = a[k][k]
            for i in range(k + 1, n):
                b = a[i][k]
                if not b:
                    continue
                if b % piv == 0:
                    row_op(k, i, -(b // piv))
                else:
                    g, x, y = xgcd(piv, b)
                    row_2x2(k, i, x, y, -(b // g), piv // g)
                    piv = g
            for j in range(k + 1, m):
                b = a[k][j]
                if not b:
                    continue
                if b % piv == 0:
                    col_op(k, j, -(b // piv))
                else:
                    g, x, y = xgcd(piv, b)
                    col_2x2(k, j, x, y, -(b // g), piv // g)
                    piv = g
            if all(a[i][k] == 0 for i in range(k + 1, n)):
                break
        rank += 1

    # positivity and the divisibility chain
    for i in range(rank):
        if a[i][i] < 0:
            if U is not None:
                for c in range(n):
                    U[i][c] = -U[i][c]
            elif V is not None:
                for row in V:
                    row[i] = -row[i]
            a[i][i] = -a[i][i]
    for i in range(rank):
        for j in range(i + 1, rank):
            di, dj = a[i][i], a[j][j]
            if dj % di == 0:
                continue
            g, x, y = xgcd(di, dj)
            row_2x2(i, j, x, y, -(dj // g), di // g)
            col_2x2(i, j, 1, 1, -(y * dj // g), x * di // g)
            a[i][i], a[j][j] = g, di * dj // g
            a[i][j] = a[j][i] = 0

    diag = tuple(a[i][i] for i in range(rank))
    return SNFResult(diag, rank, n, m,
                     SparseIntMatrix.from_dense(U, n) if need_u else None,
                     SparseIntMatrix.from_dense(V, m) if need_v else None)


class _SparseSNF:
    """Sparse SNF worker: gcd elimination with Markowitz-style column pivoting."""

    def __init__(self, M: SparseIntMatrix, need_u: bool, need_v: bool):
        self.nrows, self.ncols = M.rows, M.cols
        self.row = {r: dict(row) for r, row in M.data.items()}
        self.col_rows: Dict[int, set] = {}
        for r, row in self.row.items():
            for c in row:
                self.col_rows.setdefault(c, set()).add(r)
        self.u_row = {r: {r: 1} for r in range(M.rows)} if need_u else None
        self.v_col = {c: {c: 1} for c in range(M.cols)} if need_v else None
        self.pivots: List[List[int]] = []  # [orig_row, orig_col, value]
        self.touched: set = set()          # columns whose row-sets may have changed

    # ---- row operations (mirror onto U rows) ----

    def _row_addmul(self, j: int, i: int, q: int) -> None:
        rowj = self.row.setdefault(j, {})
        touched = self.touched
        for c, v in self.row.get(i, {}).items():
            touched.add(c)
            nv = rowj.get(c, 0) + q * v
            if nv:
                if c not in rowj:
                    self.col_rows.setdefault(c, set()).add(j)
                rowj[c] = nv
            elif c in rowj:
                del rowj[c]
                self.col_rows[c].discard(j)
        if self.u_row is not None:
            urj = self.u_row[j]
            for c, v in self.u_row[i].items():
                nv = urj.get(c, 0) + q * v
                if nv:
                    urj[c] = nv
                elif c in urj:
                    del urj[c]

    def _row_2x2(self, i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (row_i, row_j) <- (p*row_i + q*row_j, r*row_i + s*row_j); ps - qr = +-1
        rowi, rowj = self.row.get(i, {}), self.row.get(j, {})
        new_i: Dict[int, int] = {}
        new_j: Dict[int, int] = {}
        for c in set(rowi) | set(rowj):
            self.touched.add(c)
            a, b = rowi.get(c, 0), rowj.get(c, 0)
            ni, nj = p * a + q * b, r * a + s * b
            crs = self.col_rows.setdefault(c, set())
            if ni:
                new_i[c] = ni
                crs.add(i)
            else:
                crs.discard(i)
            if nj:
                new_j[c] = nj
                crs.add(j)
            else:
                crs.discard(j)
        self.row[i], self.row[j] = new_i, new_j
        if self.u_row is not None:
            ui, uj = self.u_row[i], self.u_row[j]
            nui: Dict[int, int] = {}
            nuj: Dict[int, int] = {}
            for c in set(ui) | set(uj):
                a, b = ui.get(c, 0), uj.get(c, 0)
                ni, nj = p * a + q * b, r * a + s * b
                if ni:
                    nui[c] = ni
                if nj:
                    nuj[c] = nj
            self.u_row[i], self.u_row[j] = nui, nuj

    # ---- column operations (mirror onto V columns) ----

    def _col_addmul(self, d: int, c: int, q: int) -> None:
        # col_d += q * col_c
        self.touched.add(d)
        for r in list(self.col_rows.get(c, ())):
            row = self.row[r]
            nv = row.get(d, 0) + q * row[c]
            if nv:
                if d not in row:
                    self.col_rows.setdefault(d, set()).add(r)
                row[d] = nv
            elif d in row:
                del row[d]
                self.col_rows[d].discard(r)
        if self.v_col is not None:
            vd = self.v_col[d]
            for r, v in self.v_col[c].items():
                nv = vd.get(r, 0) + q * v
                if nv:
                    vd[r] = nv
                elif r in vd:
                    del vd[r]

    def _col_2x2(self, c: int, d: int, p: int, q: int, r: int, s: int) -> None:
        # (col_c, col_d) <- (p*col_c + q*col_d, r*col_c + s*col_d)
        self.touched.add(c)
        self.touched.add(d)
        crs = self.col_rows.setdefault(c, set())
        drs = self.col_rows.setdefault(d, set())
        for i in list(crs | drs):
            row = self.row[i]
            a, b = row.get(c, 0), row.get(d, 0)
            nc, nd = p * a + q * b, r * a + s * b
            if nc:
                row[c] = nc
                crs.add(i)
            else:
                row.pop(c, None)
                crs.discard(i)
            if nd:
                row[d] = nd
                drs.add(i)
            else:
                row.pop(d, None)
                drs.discard(i)
        if self.v_col is not None:
            vc, vd = self.v_col[c], self.v_col[d]
            nvc: Dict[int, int] = {}
            nvd: Dict[int, int] = {}
            for i in set(vc) | set(vd):
                a, b = vc.get(i, 0), vd.get(i, 0)
                nc, nd = p * a + q * b, r * a + s * b
                if nc:
                    nvc[i] = nc
                if nd:
                    nvd[i] = nd
            self.v_col[c], self.v_col[d] = nvc, nvd

    # ---- main elimination ----

    def _col_key(self, c: int) -> Optional[Tuple[int, int]]:
        """Pivot priority: columns holding a unit entry first (their pivots
        never trigger gcd mixing, which is what causes fill-in and entry
        growth), then by column support size."""
        rs = self.col_rows.get(c)
        if not rs:
            return None
        has_unit = any(abs(self.row[i][c]) == 1 for i in rs)
        return (0 if has_unit else 1, len(rs))

    def run(self) -> None:
        # Lazy heap: every time a column's row-set may change, the column is
        # recorded in self.touched and re-pushed with its fresh key, so a
        # popped entry is acted on only when its key is current.
        heap = [(k, c) for c in self.col_rows
                for k in (self._col_key(c),) if k is not None]
        heapq.heapify(heap)
        done = set()
        while heap:
            key, c = heapq.heappop(heap)
            if c in done:
                continue
            cur = self._col_key(c)
            if cur is None:
                continue
            if cur != key:
                heapq.heappush(heap, (cur, c))  # stale entry; retry fresh
                continue
            rs = self.col_rows[c]
            # pivot row: prefer units, then short rows, then small values
            r = min(rs, key=lambda i: (abs(self.row[i][c]) != 1,
                                       len(self.row[i]), abs(self.row[i][c]), i))
            self.touched.clear()
            self._eliminate(r, c)
            # pivot row and column are clean; retire them
            del self.col_rows[c]
            piv_row = self.row.pop(r)
            if set(piv_row) != {c}:
                raise AssertionError("pivot row not clean after elimination")
            self.pivots.append([r, c, piv_row[c]])
            done.add(c)
            for d in self.touched:
                if d not in done:
                    kd = self._col_key(d)
                    if kd is not None:
                        heapq.heappush(heap, (kd, d))
        if any(self.row.values()):
            raise AssertionError("sparse SNF left nonzero entries behind")

    def _eliminate(self, r: int, c: int) -> None:
        while True:
            piv = self.row[r][c]
            # clear the column below/above the pivot
            others = sorted(i for i in self.col_rows[c] if i != r)
            for j in others:
                b = self.row[j].get(c, 0)
                if not b:
                    continue
                if b % piv == 0:
                    self._row_addmul(j, r, -(b // piv))
                else:
                    g, x, y = xgcd(piv, b)
                    self._row_2x2(r, j, x, y, -(b // g), piv // g)
                    piv = g
            # clear the pivot row
            for d in sorted(k for k in self.row[r] if k != c):
                b = self.row[r][d]
                if b % piv == 0:
                    self._col_addmul(d, c, -(b // piv))
                else:
                    g, x, y = xgcd(piv, b)
                    self._col_2x2(c, d, x, y, -(b // g), piv // g)
                    piv = g
            if all(i == r for i in self.col_rows[c]):
                if len(self.row[r]) == 1:
                    return
            # otherwise the 2x2 column ops re-dirtied things; |piv| shrank, loop

    def finish(self, need_u: bool, need_v: bool) -> SNFResult:
        rank = len(self.pivots)
        # positivity
        for idx, (r, c, d) in enumerate(self.pivots):
            if d < 0:
                self.pivots[idx][2] = -d
                if self.u_row is not None:
                    self.u_row[r] = {k: -v for k, v in self.u_row[r].items()}
                elif self.v_col is not None:
                    self.v_col[c] = {k: -v for k, v in self.v_col[c].items()}
        # divisibility chain
        for i in range(rank):
            for j in range(i + 1, rank):
                di, dj = self.pivots[i][2], self.pivots[j][2]
                if dj % di == 0:
                    continue
                ri, ci = self.pivots[i][0], self.pivots[i][1]
                rj, cj = self.pivots[j][0], self.pivots[j][1]
                g, x, y = xgcd(di, dj)
                if self.u_row is not None:
                    ui, uj = self.u_row[ri], self.u_row[rj]
                    nui: Dict[int, int] = {}
                    nuj: Dict[int, int] = {}
                    for k in set(ui) | set(uj):
                        a, b = ui.get(k, 0), uj.get(k, 0)
                        na, nb = x * a + y * b, -(dj // g) * a + (di // g) * b
                        if na:
                            nui[k] = na
                        if nb:
                            nuj[k] = nb
                    self.u_row[ri], self.u_row[rj] = nui, nuj
                if self.v_col is not None:
                    vi, vj = self.v_col[ci], self.v_col[cj]
                    nvi: Dict[int, int] = {}
                    nvj: Dict[int, int] = {}
                    for k in set(vi) | set(vj):
                        a, b = vi.get(k, 0), vj.get(k, 0)
                        na = a + b
                        nb = -(y * dj // g) * a + (x * di // g) * b
                        if na:
                            nvi[k] = na
                        if nb:
                            nvj[k] = nb
                    self.v_col[ci], self.v_col[cj] = nvi, nvj
                self.pivots[i][2], self.pivots[j][2] = g, di * dj // g
        diag = tuple(p[2] for p in self.pivots)

        U = V = None
        if need_u:
            pivot_rows = [p[0] for p in self.pivots]
            rest = sorted(set(range(self.nrows)) - set(pivot_rows))
            U = SparseIntMatrix(self.nrows, self.nrows)
            for pos, r in enumerate(pivot_rows + rest):
                if self.u_row[r]:
                    U.data[pos] = dict(self.u_row[r])
        if need_v:
            pivot_cols = [p[1] for p in self.pivots]
            rest = sorted(set(range(self.ncols)) - set(pivot_cols))
            V = SparseIntMatrix(self.ncols, self.ncols)
            for pos, c in enumerate(pivot_cols + rest):
                for r, v in self.v_col[c].items():
                    V.data.setdefault(r, {})[pos] = v
        return SNFResult(diag, rank, self.nrows, self.ncols, U, V)


def smith_normal_form(M: SparseIntMatrix, need_u: bool = True,
                      need_v: bool = True) -> SNFResult:
    """Smith normal form U*M*V = diag(d_1..d_r) with d_1 | d_2 | ... , d_i > 0.

    U, V are unimodular; they are returned only when requested.  Deterministic:
    the same matrix always yields the same decomposition.
    """
    if max(M.rows, M.cols) < DENSE_LIMIT:
        return _snf_dense(M, need_u, need_v)
    worker = _SparseSNF(M, need_u, need_v)
    worker.run()
    return worker.finish(need_u, need_v)


def kernel_basis(M: SparseIntMatrix) -> List[Tuple[int, ...]]:
    """Basis of the integer kernel {x : M x = 0}; saturated (a Z-basis).

    The basis vectors are the non-pivot columns of V in U*M*V = S.
    """
    res = smith_normal_form(M, need_u=False, need_v=True)
    out = []
    for j in range(res.rank, M.cols):
        col = res.V.column(j)
        out.append(tuple(col))
    return out


def bareiss_determinant(dense: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant (independent verifier for unimodularity)."""
    n = len(dense)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in dense]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(A_dense: Sequence[Sequence[int]], B_dense: Sequence[Sequence[int]]
                ) -> Optional[List[List[Fraction]]]:
    """Solve A X = B over Q (A m-by-n, B m-by-t).  Returns None if inconsistent.

    If the system is underdetermined, free variables are set to 0.  When A has
    full column rank the solution is unique.
    """
    m = len(A_dense)
    n = len(A_dense[0]) if m else 0
    t = len(B_dense[0]) if B_dense and B_dense[0] is not None else 0
    if len(B_dense) != m:
        raise InputError("solve_exact: row count mismatch")
    aug = [[Fraction(A_dense[i][j]) for j in range(n)] +
           [Fraction(B_dense[i][j]) for j in range(t)] for i in range(m)]
    pivots: List[Tuple[int, int]] = []
    prow = 0
    for col in range(n):
        sel = None
        for i in range(prow, m):
            if aug[i][col]:
                sel = i
                break
        if sel is None:
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        pv = aug[prow][col]
        aug[prow] = [x / pv for x in aug[prow]]
        for i in range(m):
            if i != prow and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[prow])]
        pivots.append((prow, col))
        prow += 1
        if prow == m:
            break
    # consistency: zero rows of A-part must have zero B-part
    for i in range(prow, m):
        if any(aug[i][n + j] for j in range(t)):
            return None
    X = [[Fraction(0)] * t for _ in range(n)]
    for (i, col) in pivots:
        for j in range(t):
            X[col][j] = aug[i][n + j]
    return X


def solve_integer_columns(A_dense: Sequence[Sequence[int]],
                          B_dense: Sequence[Sequence[int]],
                          what: str = "system") -> List[List[int]]:
    """Solve A X = B demanding an integral solution; raise otherwise."""
    X = solve_exact(A_dense, B_dense)
    if X is None:
        raise InputError(f"{what}: inconsistent linear system")
    out: List[List[int]] = []
    for row in X:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise InputError(f"{what}: solution is not integral")
            irow.append(x.numerator)
        out.append(irow)
    return out


def invert_unimodular(U: SparseIntMatrix) -> SparseIntMatrix:
    """Inverse of a unimodular integer matrix (integral by unimodularity)."""
    n = U.rows
    if U.cols != n:
        raise InputError("invert_unimodular: matrix not square")
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    X = solve_integer_columns(U.to_dense(), ident, what="invert_unimodular")
    return SparseIntMatrix.from_dense(X, n)


class LatticeBuilder:
    """Row-style Hermite accumulation of an integer lattice from generators.

    Maintains an echelon basis keyed by pivot column; supports membership
    tests and emits a canonical (column-reduced, positive-pivot) basis.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: Dict[int, List[int]] = {}  # pivot col -> row vector

    def add(self, vec: Sequence[int]) -> bool:
        """Add a generator; returns True if it enlarged the lattice."""
        v = list(vec)
        if len(v) != self.dim:
            raise InputError("LatticeBuilder: vector dimension mismatch")
        changed = False
        for c in range(self.dim):
            if not v[c]:
                continue
            if c not in self.rows:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                return True
            row = self.rows[c]
            a, b = row[c], v[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, x, y = xgcd(a, b)
                new_row = [x * p + y * q for p, q in zip(row, v)]
                v = [-(b // g) * p + (a // g) * q for p, q in zip(row, v)]
                self.rows[c] = new_row
                changed = True
        return changed

    def add_all(self, vecs: Iterable[Sequence[int]]) -> None:
        for v in vecs:
            self.add(v)

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for c in range(self.dim):
            if not v[c]:
                continue
            row = self.rows.get(c)
            if row is None or v[c] % row[c] != 0:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def basis(self) -> List[List[int]]:
        """Canonical HNF basis: positive pivots, entries above pivots reduced."""
        cols = sorted(self.rows)
        rows = [list(self.rows[c]) for c in cols]
        # back-reduce: for each pivot, reduce the entries above it into [0, pivot)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            piv = rows[idx][c]
            for k in range(idx):
                q = rows[k][c] // piv
                if q:
                    rows[k] = [x - q * y for x, y in zip(rows[k], rows[idx])]
        return rows

    def rank(self) -> int:
        return len(self.rows)
