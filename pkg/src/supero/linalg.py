"""Sparse exact linear algebra over the rationals.

Vectors are dicts ``{index: nonzero rational}``; matrices store a dict
``{(row, col): nonzero rational}``.  Elimination never leaves the rationals
and pivoting is deterministic (rows are processed in order, each reduced row
pivots on its leading column), so echelon forms, ranks and kernel bases are
reproducible across runs.  The reduced row echelon form itself is unique, so
nothing downstream depends on the sweep order.
"""

from .config import DEFAULT_LIMITS
from .errors import InvalidAlgebraError, ResourceLimitError
from .rational import QQ, ZERO

# ---------------------------------------------------------------------------
# dict-vector helpers


def vec_add_into(target, source, coeff=1):
    """target += coeff * source, pruning zeros in place."""
    if not coeff:
        return target
    for k, v in source.items():
        s = target.get(k, ZERO) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)
    return target


def vec_scale(vector, coeff):
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vector.items()}


def vec_dot(u, v):
    if len(u) > len(v):
        u, v = v, u
    total = ZERO
    for k, a in u.items():
        b = v.get(k)
        if b is not None:
            total += a * b
    return total


class SparseMatrix:
    """Immutable-by-convention sparse matrix over QQ."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows, ncols, data=None):
        self.nrows = nrows
        self.ncols = ncols
        self.data = {}
        if data:
            for (i, j), v in data.items():
                q = QQ(v)
                if q:
                    if not (0 <= i < nrows and 0 <= j < ncols):
                        raise ValueError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                    self.data[(i, j)] = q

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[(i, i)] = QQ(1)
        return m

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                q = QQ(v)
                if q:
                    m.data[(i, j)] = q
        return m

    @classmethod
    def from_rows(cls, rows, ncols):
        """rows: iterable of dict-vectors."""
        rows = list(rows)
        m = cls(len(rows), ncols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                q = QQ(v)
                if q:
                    m.data[(i, j)] = q
        return m

    # -- basic accessors ---------------------------------------------------

    def rows(self):
        out = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def row(self, i):
        return {j: v for (r, j), v in self.data.items() if r == i}

    def col(self, j):
        return {i: v for (i, c), v in self.data.items() if c == j}

    def to_dense(self):
        out = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def is_zero(self):
        return not self.data

    def nnz(self):
        return len(self.data)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted(self.data.items()))))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={len(self.data)})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        out = SparseMatrix(self.nrows, self.ncols, dict(self.data))
        for k, v in other.data.items():
            s = out.data.get(k, ZERO) + v
            if s:
                out.data[k] = s
            else:
                out.data.pop(k, None)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff):
        q = QQ(coeff)
        out = SparseMatrix(self.nrows, self.ncols)
        if q:
            out.data = {k: q * v for k, v in self.data.items()}
        return out

    def _check_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError(
                f"shape mismatch {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            return self.matmul(other)
        raise TypeError("use .scale for scalars, .apply for vectors")

    def matmul(self, other):
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        other_rows = {}
        for (k, j), v in other.data.items():
            other_rows.setdefault(k, []).append((j, v))
        acc = {}
        for (i, k), a in self.data.items():
            hits = other_rows.get(k)
            if not hits:
                continue
            for j, b in hits:
                key = (i, j)
                s = acc.get(key, ZERO) + a * b
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return SparseMatrix(self.nrows, other.ncols, acc)

    __matmul__ = matmul

    def apply(self, vector):
        """Matrix-vector product; vector is a dict col->QQ, result dict row->QQ."""
        cols = {}
        for (i, j), v in self.data.items():
            cols.setdefault(j, []).append((i, v))
        out = {}
        for j, c in vector.items():
            if not c:
                continue
            for i, v in cols.get(j, ()):
                s = out.get(i, ZERO) + c * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def transpose(self):
        return SparseMatrix(
            self.ncols, self.nrows, {(j, i): v for (i, j), v in self.data.items()}
        )

    def trace(self):
        return sum((v for (i, j), v in self.data.items() if i == j), ZERO)

    def submatrix(self, row_indices, col_indices):
        rmap = {r: i for i, r in enumerate(row_indices)}
        cmap = {c: j for j, c in enumerate(col_indices)}
        out = SparseMatrix(len(row_indices), len(col_indices))
        for (i, j), v in self.data.items():
            if i in rmap and j in cmap:
                out.data[(rmap[i], cmap[j])] = v
        return out

    @classmethod
    def vstack(cls, matrices):
        ncols = matrices[0].ncols
        data = {}
        offset = 0
        for m in matrices:
            if m.ncols != ncols:
                raise ValueError("vstack column mismatch")
            for (i, j), v in m.data.items():
                data[(i + offset, j)] = v
            offset += m.nrows
        return cls(offset, ncols, data)

    @classmethod
    def hstack(cls, matrices):
        nrows = matrices[0].nrows
        data = {}
        offset = 0
        for m in matrices:
            if m.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for (i, j), v in m.data.items():
                data[(i, j + offset)] = v
            offset += m.ncols
        return cls(nrows, offset, data)

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns (rows, pivot_cols): rows are dict-vectors sorted by pivot
        column, each with leading coefficient one.
        """
        ech = Echelon()
        for row in self.rows():
            ech.add(row)
        ech.full_reduce()
        return ech.basis(), ech.pivot_cols()

    def rank(self):
        ech = Echelon()
        for row in self.rows():
            ech.add(row)
        return len(ech.pivots)

    def kernel_basis(self):
        """Basis of the right kernel, one dict-vector per free column.

        Free columns are visited in ascending order; each vector has a one in
        its free column, so the basis is canonical.
        """
        rows, piv_cols = self.rref()
        piv_set = set(piv_cols)
        by_piv = dict(zip(piv_cols, rows))
        basis = []
        for free in range(self.ncols):
            if free in piv_set:
                continue
            vec = {free: QQ(1)}
            for p in piv_cols:
                coeff = by_piv[p].get(free)
                if coeff:
                    vec[p] = -coeff
            basis.append(vec)
        return basis

    def solve(self, rhs):
        """One solution of A x = rhs (free variables zero), or None."""
        sols = self.solve_multi([rhs])
        return sols[0]

    def solve_multi(self, rhs_list):
        """Solve against several right-hand sides with one elimination."""
        n = self.ncols
        aug_cols = n + len(rhs_list)
        aug = SparseMatrix(self.nrows, aug_cols, dict(self.data))
        for k, rhs in enumerate(rhs_list):
            for i, v in rhs.items():
                q = QQ(v)
                if q:
                    aug.data[(i, n + k)] = q
        rows, piv_cols = aug.rref()
        solutions = [dict() for _ in rhs_list]
        for p, row in zip(piv_cols, rows):
            if p >= n:
                # zero on all variable columns: every rhs hit by this row is
                # inconsistent
                for j in row:
                    if j >= n:
                        solutions[j - n] = None
                continue
            for k in range(len(rhs_list)):
                v = row.get(n + k)
                if v and solutions[k] is not None:
                    solutions[k][p] = v
        return solutions


class Echelon:
    """Incremental row echelon over QQ with deterministic leading-column pivots."""

    def __init__(self):
        self.pivots = {}  # leading col -> normalized row (dict)

    def reduce(self, vector):
        """Return vector reduced against the current span (a fresh dict)."""
        vec = dict(vector)
        while vec:
            lead = min(vec)
            piv = self.pivots.get(lead)
            if piv is None:
                return vec
            vec_add_into(vec, piv, -vec[lead])
        return vec

    def add(self, vector):
        """Insert a vector; returns its pivot column, or None if dependent."""
        vec = self.reduce(vector)
        if not vec:
            return None
        lead = min(vec)
        inv = 1 / vec[lead]
        self.pivots[lead] = {k: v * inv for k, v in vec.items()}
        return lead

    def contains(self, vector):
        return not self.reduce(vector)

    def express(self, vector):
        """Coefficients {pivot_col: c} with vector = sum c * pivot_row, or None."""
        vec = dict(vector)
        coeffs = {}
        while vec:
            lead = min(vec)
            piv = self.pivots.get(lead)
            if piv is None:
                return None
            c = vec[lead]
            coeffs[lead] = c
            vec_add_into(vec, piv, -c)
        return coeffs

    def full_reduce(self):
        """Eliminate every pivot column from the other rows (RREF)."""
        for lead in sorted(self.pivots, reverse=True):
            piv = self.pivots[lead]
            for other_lead, row in self.pivots.items():
                if other_lead == lead:
                    continue
                c = row.get(lead)
                if c:
                    vec_add_into(row, piv, -c)

    def basis(self):
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]

    def pivot_cols(self):
        return sorted(self.pivots)

    def __len__(self):
        return len(self.pivots)


# ---------------------------------------------------------------------------
# associative-algebra radical


def algebra_radical(products, dim, limits=DEFAULT_LIMITS, check_associative=True):
    """Radical of a finite-dimensional associative algebra over QQ.

    products[i][j] must be the coordinate dict of basis_i * basis_j.  In
    characteristic zero the Jacobson radical is the kernel of the trace form
    (x, y) -> trace(L_{xy}), which is what gets computed; the returned value
    is a list of dict-vectors spanning the radical.
    """
    if dim > limits.max_end_dim:
        raise ResourceLimitError(
            f"algebra dimension {dim} exceeds configured bound {limits.max_end_dim}"
        )
    if len(products) != dim or any(len(r) != dim for r in products):
        raise ValueError("products table must be dim x dim")

    if check_associative:
        _associativity_check(products, dim, limits)

    # L[i] as dict (out_index, j) -> coeff ; trace(L_i L_j) via entry pairing
    left = []
    for i in range(dim):
        mat = {}
        for j in range(dim):
            for k, v in products[i][j].items():
                mat[(k, j)] = v
        left.append(mat)
    gram = SparseMatrix(dim, dim)
    for i in range(dim):
        li = left[i]
        for j in range(i, dim):
            lj = left[j]
            if len(li) > len(lj):
                a, b = lj, li
            else:
                a, b = li, lj
            t = ZERO
            for (r, c), v in a.items():
                w = b.get((c, r))
                if w is not None:
                    t += v * w
            if t:
                gram.data[(i, j)] = t
                if i != j:
                    gram.data[(j, i)] = t
    return gram.kernel_basis()


def _associativity_check(products, dim, limits):
    import random

    rng = random.Random(limits.seed)
    if dim <= 8:
        triples = [(i, j, k) for i in range(dim) for j in range(dim) for k in range(dim)]
    else:
        triples = [
            (rng.randrange(dim), rng.randrange(dim), rng.randrange(dim))
            for _ in range(max(200, 4 * dim))
        ]
    for i, j, k in triples:
        lhs = {}
        for t, c in products[i][j].items():
            vec_add_into(lhs, products[t][k], c)
        rhs = {}
        for t, c in products[j][k].items():
            vec_add_into(rhs, products[i][t], c)
        if lhs != rhs:
            raise InvalidAlgebraError(
                f"associativity fails on basis triple ({i},{j},{k})",
                witness=(i, j, k),
            )
