"""Exact integer linear algebra and finitely generated abelian groups.

Everything here runs on Python's native arbitrary-precision integers; no
floating point, no fixed-width arithmetic.  The central tool is the Smith
normal form, from which presentations, kernels and cokernels of maps
between finitely generated abelian groups are computed exactly.

All values are immutable after construction and every function is pure,
so the module is safe for unsynchronized concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
import math


class IncompatibleShapesError(ValueError):
    """Raised when matrix or homomorphism shapes do not line up."""


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape (rows may be zero)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [tuple(r) for r in rows]
        if rows:
            width = len(rows[0])
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with rows")
            cols = width
        elif cols is None:
            raise ValueError("column count required for a matrix with no rows")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, values, size: int | None = None) -> "IntMatrix":
        values = [int(v) for v in values]
        n = len(values) if size is None else size
        return cls(n, n, tuple(tuple(values[i] if i == j and i < len(values) else 0
                                     for j in range(n)) for i in range(n)))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise IncompatibleShapesError(
                f"incompatible shapes {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.cols
        out = []
        for i in range(self.rows):
            arow = self.entries[i]
            out.append(tuple(sum(arow[k] * other.entries[k][j] for k in range(self.cols))
                             for j in range(cols)))
        return IntMatrix(self.rows, cols, tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise IncompatibleShapesError("incompatible shapes for addition")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(c * x for x in r) for r in self.entries))

    def apply(self, vector) -> tuple[int, ...]:
        """Matrix times column vector."""
        v = tuple(int(x) for x in vector)
        if len(v) != self.cols:
            raise IncompatibleShapesError("incompatible vector length")
        return tuple(sum(r[k] * v[k] for k in range(self.cols)) for r in self.entries)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise IncompatibleShapesError("incompatible row counts for hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise IncompatibleShapesError("incompatible column counts for vstack")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_columns(self, indices) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(self.rows, len(idx),
                         tuple(tuple(r[j] for j in idx) for r in self.entries))

    def select_rows(self, indices) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(len(idx), self.cols, tuple(self.entries[i] for i in idx))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise IncompatibleShapesError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot is None:
                    return 0
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """U @ M @ V = S with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    The diagonal of S is nonnegative and each entry divides the next, which
    makes S unique for a given input.  Works for any rectangular shape,
    including matrices with zero rows or columns.
    """
    nrows, ncols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        adst, asrc = a[dst], a[src]
        for k in range(ncols):
            adst[k] += q * asrc[k]
        udst, usrc = u[dst], u[src]
        for k in range(nrows):
            udst[k] += q * usrc[k]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            if a[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, -q)
                    if a[i][t] != 0:  # remainder strictly smaller than pivot
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            d = a[t][t]
            offender = next(((i, j) for i in range(t + 1, nrows)
                             for j in range(t + 1, ncols) if a[i][j] % d != 0), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)
        t += 1

    return SNFResult(U=IntMatrix.from_rows(u, nrows),
                     S=IntMatrix.from_rows(a, ncols),
                     V=IntMatrix.from_rows(v, ncols))


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    snf = smith_normal_form(m)
    if snf.S != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return snf.V @ snf.U


def integer_kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the lattice {x : m @ x = 0}, as column vectors."""
    snf = smith_normal_form(m)
    r = snf.rank()
    return [snf.V.column(j) for j in range(r, m.cols)]


def solve_integer_system(m: IntMatrix, b) -> tuple[int, ...] | None:
    """One integer solution x of m @ x = b, or None when none exists."""
    b = tuple(int(x) for x in b)
    if len(b) != m.rows:
        raise IncompatibleShapesError("right-hand side length does not match")
    snf = smith_normal_form(m)
    c = snf.U.apply(b)
    y = [0] * m.cols
    diag = snf.diagonal()
    for i in range(m.rows):
        s = diag[i] if i < len(diag) else 0
        if s == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % s != 0:
                return None
            y[i] = c[i] // s
    return snf.V.apply(y)


def lattice_contains(generator_rows: IntMatrix, vector) -> bool:
    """Whether a vector lies in the lattice spanned by the given rows."""
    return solve_integer_system(generator_rows.transpose(), vector) is not None


class _Lattice:
    """Sublattice of Z^n spanned by a finite generating set of columns.

    Provides a basis and exact coordinate solving, both read off from one
    Smith normal form of the generator matrix.
    """

    def __init__(self, dimension: int, generators: list[tuple[int, ...]]):
        self.dimension = dimension
        gens = IntMatrix.from_rows([list(g) for g in zip(*generators)] if generators else [],
                                   cols=len(generators)) if generators else \
            IntMatrix.zeros(dimension, 0)
        if generators and gens.rows != dimension:
            raise IncompatibleShapesError("generator length does not match dimension")
        snf = smith_normal_form(gens)
        self._u = snf.U
        self._diag = [d for d in snf.diagonal() if d != 0]
        u_inv = unimodular_inverse(snf.U)
        self.rank = len(self._diag)
        # basis columns: U^{-1} (s_i e_i) for the nonzero diagonal entries
        self.basis = u_inv.select_columns(range(self.rank)) @ \
            IntMatrix.diagonal(self._diag)

    def coordinates(self, vector) -> tuple[int, ...] | None:
        """Coordinates of a vector in the basis, or None if outside."""
        w = self._u.apply(vector)
        coords = []
        for i in range(self.dimension):
            if i < self.rank:
                if w[i] % self._diag[i] != 0:
                    return None
                coords.append(w[i] // self._diag[i])
            elif w[i] != 0:
                return None
        return tuple(coords)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FGAbelianGroup:
    """Canonical form: free rank plus the invariant factor chain d1 | d2 | ...

    Generators are ordered torsion-first (orders d1 <= d2 <= ...) followed by
    the free generators; all maps in this module use that basis.  Because the
    form is canonical, equality of values is isomorphism of groups.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors",
                           tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        factors = self.invariant_factors
        for i, d in enumerate(factors):
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if i + 1 < len(factors) and factors[i + 1] % d != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FGAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FGAbelianGroup":
        n = abs(int(n))
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    @classmethod
    def from_orders(cls, orders) -> "FGAbelianGroup":
        """Direct sum of cyclic groups of the given orders (0 meaning Z)."""
        orders = [int(o) for o in orders]
        n = len(orders)
        rows = [[orders[i] if j == i else 0 for j in range(n)]
                for i in range(n) if orders[i] != 0]
        return group_from_presentation(n, IntMatrix.from_rows(rows, cols=n))

    @property
    def num_generators(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def torsion_count(self) -> int:
        return len(self.invariant_factors)

    def generator_orders(self) -> tuple[int, ...]:
        """Per-generator order, 0 standing for infinite."""
        return self.invariant_factors + (0,) * self.free_rank

    def relation_rows(self) -> IntMatrix:
        """Canonical relations d_i * e_i as rows."""
        n = self.num_generators
        rows = [[self.invariant_factors[i] if j == i else 0 for j in range(n)]
                for i in range(self.torsion_count)]
        return IntMatrix.from_rows(rows, cols=n)

    @property
    def is_trivial(self) -> bool:
        return self.num_generators == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def order(self) -> int | None:
        """Number of elements, or None for an infinite group."""
        if not self.is_finite:
            return None
        return math.prod(self.invariant_factors)

    def torsion_part(self) -> "FGAbelianGroup":
        return FGAbelianGroup(0, self.invariant_factors)

    def reduce(self, coords) -> tuple[int, ...]:
        """Canonical representative of an element given by coordinates."""
        coords = tuple(int(x) for x in coords)
        if len(coords) != self.num_generators:
            raise IncompatibleShapesError("coordinate length does not match generators")
        return tuple(c % d if d else c for c, d in zip(coords, self.generator_orders()))

    def elements(self):
        """Iterate all elements of a finite group as coordinate tuples."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        yield from product(*(range(d) for d in self.invariant_factors))

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def element_is_zero(group: FGAbelianGroup, coords) -> bool:
    """Whether the coordinate vector represents the zero element."""
    return all(x == 0 for x in group.reduce(coords))


def _quotient_with_maps(num_generators: int,
                        relation_rows: IntMatrix) -> tuple[FGAbelianGroup, IntMatrix, IntMatrix]:
    """Canonicalize Z^g modulo the row span of the relations.

    Returns (group, projection, lift): projection maps old coordinates to
    canonical ones, lift picks a representative for each canonical generator,
    and projection @ lift is the identity on canonical coordinates.
    """
    if relation_rows.cols != num_generators:
        raise IncompatibleShapesError("relations must have one column per generator")
    snf = smith_normal_form(relation_rows.transpose())
    diag = snf.diagonal()
    rank = sum(1 for d in diag if d != 0)
    torsion_idx = [i for i in range(rank) if diag[i] > 1]
    kept = torsion_idx + list(range(rank, num_generators))
    group = FGAbelianGroup(free_rank=num_generators - rank,
                           invariant_factors=tuple(diag[i] for i in torsion_idx))
    projection = snf.U.select_rows(kept)
    lift = unimodular_inverse(snf.U).select_columns(kept)
    return group, projection, lift


def group_from_presentation(num_generators: int, relations: IntMatrix) -> FGAbelianGroup:
    """Canonical form of Z^g modulo the row span of the relation matrix."""
    group, _, _ = _quotient_with_maps(num_generators, relations)
    return group


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between canonical groups, as a matrix on generators.

    matrix[i][j] is the coefficient of codomain generator i in the image of
    domain generator j.  Rows over torsion generators are stored reduced
    modulo the generator order, so equal maps compare equal.  Construction
    checks well-definedness: each domain relation must land in the relation
    lattice of the codomain.
    """

    domain: FGAbelianGroup
    codomain: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if (m.rows, m.cols) != (self.codomain.num_generators, self.domain.num_generators):
            raise IncompatibleShapesError(
                f"matrix shape {m.rows}x{m.cols} does not match codomain x domain "
                f"({self.codomain.num_generators}x{self.domain.num_generators})")
        cod_orders = self.codomain.generator_orders()
        reduced = tuple(tuple(x % d if d else x for x in row)
                        for row, d in zip(m.entries, cod_orders))
        object.__setattr__(self, "matrix", IntMatrix(m.rows, m.cols, reduced))
        for j, dj in enumerate(self.domain.generator_orders()):
            if dj == 0:
                continue
            for i, di in enumerate(cod_orders):
                v = dj * self.matrix[i, j]
                if (di and v % di != 0) or (di == 0 and v != 0):
                    raise ValueError(
                        f"matrix does not define a homomorphism: relation {dj}*g{j} "
                        f"is not mapped into the codomain relation lattice")

    @classmethod
    def identity(cls, group: FGAbelianGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.num_generators))

    @classmethod
    def zero(cls, domain: FGAbelianGroup, codomain: FGAbelianGroup) -> "GroupHom":
        return cls(domain, codomain,
                   IntMatrix.zeros(codomain.num_generators, domain.num_generators))

    @classmethod
    def multiplication(cls, group: FGAbelianGroup, c: int) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.num_generators).scale(c))

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def apply(self, coords) -> tuple[int, ...]:
        return self.codomain.reduce(self.matrix.apply(self.domain.reduce(coords)))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise IncompatibleShapesError("incompatible homomorphisms for composition")
        return GroupHom(other.domain, self.codomain, self.matrix @ other.matrix)

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return self.compose(other)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise IncompatibleShapesError("incompatible homomorphisms for addition")
        return GroupHom(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.domain, self.codomain, -self.matrix)

    def power(self, k: int) -> "GroupHom":
        if not self.is_endomorphism:
            raise IncompatibleShapesError("powers need an endomorphism")
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = GroupHom.identity(self.domain)
        for _ in range(k):
            result = self @ result
        return result


def compose(f: GroupHom, g: GroupHom) -> GroupHom:
    """Composite f after g."""
    return f.compose(g)


def _kernel_lattice_generators(f: GroupHom) -> list[tuple[int, ...]]:
    """Generators of {x in Z^n : f(x) = 0 in the codomain}, as vectors."""
    n = f.domain.num_generators
    combined = f.matrix.hstack(f.codomain.relation_rows().transpose())
    gens = [vec[:n] for vec in integer_kernel_basis(combined)]
    return [g for g in gens if any(g)]


def kernel(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Kernel in canonical form, with its inclusion into the domain.

    Lifts to the free cover: the kernel lattice of the combined system
    [matrix | codomain relations] is computed by SNF, then reduced modulo
    the domain relations.
    """
    return subgroup_from_lattice(f.domain, _kernel_lattice_generators(f))


def _cokernel_with_maps(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom, IntMatrix]:
    cod = f.codomain
    rows = cod.relation_rows().vstack(f.matrix.transpose())
    group, projection, lift = _quotient_with_maps(cod.num_generators, rows)
    return group, GroupHom(cod, group, projection), lift


def cokernel(f: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Cokernel in canonical form, with the quotient projection."""
    group, projection, _ = _cokernel_with_maps(f)
    return group, projection


def preimage(f: GroupHom, coords) -> tuple[int, ...] | None:
    """Some x with f(x) equal to the given codomain element, or None."""
    target = f.codomain.reduce(coords)
    combined = f.matrix.hstack(f.codomain.relation_rows().transpose())
    solution = solve_integer_system(combined, target)
    if solution is None:
        return None
    return f.domain.reduce(solution[:f.domain.num_generators])


def _direct_sum_with_maps(g: FGAbelianGroup, h: FGAbelianGroup):
    """Canonical direct sum plus the projection/lift of the juxtaposed basis."""
    n = g.num_generators + h.num_generators
    rows = [list(r) + [0] * h.num_generators for r in g.relation_rows().entries]
    rows += [[0] * g.num_generators + list(r) for r in h.relation_rows().entries]
    return _quotient_with_maps(n, IntMatrix.from_rows(rows, cols=n))


def direct_sum(g: FGAbelianGroup, h: FGAbelianGroup) -> FGAbelianGroup:
    """Canonical form of the direct sum (invariant factors recombined)."""
    group, _, _ = _direct_sum_with_maps(g, h)
    return group


def direct_sum_endo(g: FGAbelianGroup, fg: GroupHom,
                    h: FGAbelianGroup, fh: GroupHom) -> tuple[FGAbelianGroup, GroupHom]:
    """Block-diagonal endomorphism fg + fh on the canonical direct sum."""
    group, projection, lift = _direct_sum_with_maps(g, h)
    ng, nh = g.num_generators, h.num_generators
    block = [list(r) + [0] * nh for r in fg.matrix.entries]
    block += [[0] * ng + list(r) for r in fh.matrix.entries]
    block_m = IntMatrix.from_rows(block, cols=ng + nh)
    return group, GroupHom(group, group, projection @ block_m @ lift)


def is_isomorphic(g: FGAbelianGroup, h: FGAbelianGroup) -> bool:
    """Canonical forms make isomorphism a field-wise comparison."""
    return g == h


def block_diagonal(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = [list(r) + [0] * b.cols for r in a.entries]
    rows += [[0] * a.cols + list(r) for r in b.entries]
    return IntMatrix.from_rows(rows, cols=a.cols + b.cols)


def subgroup_from_lattice(ambient: FGAbelianGroup,
                          generators: list[tuple[int, ...]]) -> tuple[FGAbelianGroup, GroupHom]:
    """Subgroup of `ambient` spanned by coordinate vectors, with its inclusion.

    The generated lattice must contain the relation lattice of the ambient
    group (true for kernels and other saturated-by-construction inputs).
    """
    lattice = _Lattice(ambient.num_generators, [tuple(g) for g in generators])
    rel_rows = []
    for row in ambient.relation_rows().entries:
        coords = lattice.coordinates(row)
        if coords is None:
            raise ValueError("lattice does not contain the ambient relation lattice")
        rel_rows.append(list(coords))
    group, _, lift = _quotient_with_maps(lattice.rank,
                                         IntMatrix.from_rows(rel_rows, cols=lattice.rank))
    inclusion = GroupHom(group, ambient, lattice.basis @ lift)
    return group, inclusion
