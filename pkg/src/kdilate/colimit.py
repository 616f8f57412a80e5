"""Dilation colimits: classify colim(G, f) for an endomorphism f of a
finitely generated abelian group, and compute kernel/cokernel of (1 - fbar)
on the colimit.

The classification first quotients by the eventual kernel (the union of
ker(f^t), which stabilizes because the groups are noetherian) so the induced
endomorphism is injective, then splits into the finite, free, and mixed
cases.  Mixed groups are split equivariantly when an invariant free
complement exists; otherwise the result is reported as an unresolved
extension rather than guessed.

Kernel/cokernel of (1 - fbar) never touch the colimit directly: filtered
colimits are exact, so both are computed at level zero and the induced
system is classified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    FGAbelianGroup,
    GroupHom,
    IncompatibleShapesError,
    IntMatrix,
    _kernel_lattice_generators,
    _quotient_with_maps,
    block_diagonal,
    direct_sum_endo,
    element_is_zero,
    integer_kernel_basis,
    kernel,
    preimage,
    solve_integer_system,
)

DEFAULT_STABILIZATION_CAP = 64

TAG_FINITE = "finite_or_fg"
TAG_LOCALIZED = "localized_free"
TAG_EXTENSION = "extension"
TAG_UNRESOLVED = "unresolved"


class StabilizationCapError(RuntimeError):
    """Kernel chain failed to stabilize within the iteration cap."""


@dataclass(frozen=True)
class DilationProblem:
    """A group together with the endomorphism to dilate along."""

    base: FGAbelianGroup
    endo: GroupHom

    def __post_init__(self):
        if self.endo.domain != self.base or self.endo.codomain != self.base:
            raise IncompatibleShapesError("endomorphism must map the base group to itself")


@dataclass(frozen=True)
class ColimElement:
    """Formal element (coords, level) of the colimit tower.

    The identification is (v, t) ~ (f(v), t+1), so zero-testing asks whether
    some power of f kills the coordinates.
    """

    level: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("negative tower level")
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))


# ---------------------------------------------------------------------------
# Colimit descriptions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ColimitDescription:
    """Classification of a dilation colimit.

    tag "finite_or_fg": the colimit is the f.g. group `fg_part`, with the
    induced automorphism recorded in `action`.
    tag "localized_free": the increasing union of M^{-t} Z^r inside Q^r for
    the injective matrix M = `loc_matrix` (which is also the action).
    tag "extension": finite `sub` by free/localized `quot`; `resolved` is
    True when the extension is a known direct sum.
    tag "unresolved": shape outside the handled algebra.
    """

    tag: str
    fg_part: FGAbelianGroup | None = None
    action: GroupHom | None = None
    loc_rank: int | None = None
    loc_matrix: IntMatrix | None = None
    sub: "ColimitDescription | None" = None
    quot: "ColimitDescription | None" = None
    resolved: bool | None = None

    @classmethod
    def finite(cls, group: FGAbelianGroup, action: GroupHom | None = None) -> "ColimitDescription":
        if action is None:
            action = GroupHom.identity(group)
        if action.domain != group or action.codomain != group:
            raise IncompatibleShapesError("action must be an endomorphism of the group")
        return cls(tag=TAG_FINITE, fg_part=group, action=action)

    @classmethod
    def localized(cls, matrix: IntMatrix) -> "ColimitDescription":
        if not matrix.is_square():
            raise IncompatibleShapesError("localized tower needs a square matrix")
        if matrix.determinant() == 0:
            raise ValueError("localized tower needs an injective matrix")
        return cls(tag=TAG_LOCALIZED, loc_rank=matrix.rows, loc_matrix=matrix)

    @classmethod
    def extension(cls, sub: "ColimitDescription", quot: "ColimitDescription",
                  resolved: bool) -> "ColimitDescription":
        return cls(tag=TAG_EXTENSION, sub=sub, quot=quot, resolved=resolved)

    @classmethod
    def unresolved(cls) -> "ColimitDescription":
        return cls(tag=TAG_UNRESOLVED)

    # -- structure queries ---------------------------------------------------

    def order(self) -> int | None:
        """Number of elements when known finite, else None."""
        if self.tag == TAG_FINITE:
            return self.fg_part.order()
        if self.tag == TAG_LOCALIZED:
            return 1 if self.loc_rank == 0 else None
        if self.tag == TAG_EXTENSION:
            so, qo = self.sub.order(), self.quot.order()
            return so * qo if so is not None and qo is not None else None
        return None

    def rank(self) -> int | None:
        """Torsion-free rank when known, else None."""
        if self.tag == TAG_FINITE:
            return self.fg_part.free_rank
        if self.tag == TAG_LOCALIZED:
            return self.loc_rank
        if self.tag == TAG_EXTENSION:
            sr, qr = self.sub.rank(), self.quot.rank()
            return sr + qr if sr is not None and qr is not None else None
        return None

    @property
    def is_trivial(self) -> bool:
        return self.order() == 1

    def localized_diagonal(self) -> tuple[int, ...] | None:
        """Multipliers (m1, ..., mr) when the tower matrix is similar over Z
        to a diagonal matrix, else None."""
        if self.tag != TAG_LOCALIZED:
            return None
        return _similarity_diagonal(self.loc_matrix)

    def signature(self):
        """(torsion group, multiset of rank-one prime supports), or None when
        the isomorphism class is undetermined."""
        if self.tag == TAG_FINITE:
            return (self.fg_part.torsion_part(),
                    tuple(sorted([()] * self.fg_part.free_rank)))
        if self.tag == TAG_LOCALIZED:
            diag = self.localized_diagonal()
            if diag is None:
                return None
            supports = sorted(tuple(sorted(_prime_support(m))) for m in diag)
            return (FGAbelianGroup.trivial(), tuple(supports))
        if self.tag == TAG_EXTENSION and self.resolved:
            a, b = self.sub.signature(), self.quot.signature()
            if a is None or b is None:
                return None
            from .abelian import direct_sum
            return (direct_sum(a[0], b[0]), tuple(sorted(a[1] + b[1])))
        return None

    def isomorphic(self, other: "ColimitDescription") -> bool | None:
        """True/False when both sides are determined, None otherwise."""
        a, b = self.signature(), other.signature()
        if a is None or b is None:
            return None
        return a == b

    def isomorphic_to_group(self, group: FGAbelianGroup) -> bool | None:
        return self.isomorphic(ColimitDescription.finite(group))

    def pretty(self) -> str:
        if self.tag == TAG_FINITE:
            return str(self.fg_part)
        if self.tag == TAG_LOCALIZED:
            diag = self.localized_diagonal()
            if diag is None:
                return f"colim(Z^{self.loc_rank}, {self.loc_matrix})"
            return _format_localized_terms(diag)
        if self.tag == TAG_EXTENSION:
            if self.resolved:
                return f"{self.sub.pretty()} + {self.quot.pretty()}"
            return (f"extension 0 -> {self.sub.pretty()} -> ? -> "
                    f"{self.quot.pretty()} -> 0 (unresolved)")
        return "unresolved"

    def __str__(self):
        return self.pretty()


def _format_localized_terms(diag: tuple[int, ...]) -> str:
    if not diag:
        return "0"
    terms: list[str] = []
    for m in diag:
        terms.append("Z" if m == 1 else f"Z[1/{m}]")
    out = []
    i = 0
    while i < len(terms):
        j = i
        while j < len(terms) and terms[j] == terms[i]:
            j += 1
        out.append(terms[i] if j - i == 1 else f"{terms[i]}^{j - i}")
        i = j
    return " + ".join(out)


def _prime_support(m: int) -> set[int]:
    m = abs(m)
    support = set()
    p = 2
    while p * p <= m:
        if m % p == 0:
            support.add(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        support.add(m)
    return support


_DIAGONALIZE_DET_BOUND = 10**9  # divisor enumeration stays cheap below this


def _similarity_diagonal(m: IntMatrix) -> tuple[int, ...] | None:
    """diag(m1,...,mr) with P M P^-1 diagonal for unimodular P, or None.

    Searches integer eigenvalues among the divisors of det(M); the matrix is
    diagonalizable over Z exactly when the saturated eigenlattices sum to the
    full lattice, i.e. the assembled eigenbasis is unimodular.  Multipliers
    are returned as absolute values, sorted (the tower only depends on |m|).
    """
    n = m.rows
    if n == 0:
        return ()
    if all(m[i, j] == 0 for i in range(n) for j in range(n) if i != j):
        return tuple(sorted(abs(m[i, i]) for i in range(n)))
    det = abs(m.determinant())
    if det == 0 or det > _DIAGONALIZE_DET_BOUND:
        return None
    columns: list[tuple[int, ...]] = []
    values: list[int] = []
    for d in sorted(_divisors(det)):
        for lam in (d, -d):
            eig = integer_kernel_basis(m - IntMatrix.identity(n).scale(lam))
            for vec in eig:
                columns.append(vec)
                values.append(lam)
            if len(columns) > n:
                return None  # eigenvalue repetition drifted past full rank
        if len(columns) == n:
            break
    if len(columns) != n:
        return None
    basis = IntMatrix.from_rows([[col[i] for col in columns] for i in range(n)], cols=n)
    if abs(basis.determinant()) != 1:
        return None
    return tuple(sorted(abs(v) for v in values))


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


# ---------------------------------------------------------------------------
# Description algebra
# ---------------------------------------------------------------------------

def _split_parts(d: ColimitDescription, depth: int = 0):
    """(finite torsion description, localized matrix or None), or None."""
    if depth > 8:  # defensive; the structures built here are shallow
        return None
    if d.tag == TAG_FINITE:
        group = d.fg_part
        t, r = group.torsion_count, group.free_rank
        torsion = group.torsion_part()
        act = d.action.matrix
        torsion_desc = ColimitDescription.finite(
            torsion, GroupHom(torsion, torsion,
                              act.select_rows(range(t)).select_columns(range(t))))
        free_block = act.select_rows(range(t, t + r)).select_columns(range(t, t + r))
        return torsion_desc, (free_block if r else None)
    if d.tag == TAG_LOCALIZED:
        return ColimitDescription.finite(FGAbelianGroup.trivial()), d.loc_matrix
    if d.tag == TAG_EXTENSION and d.resolved:
        sp = _split_parts(d.sub, depth + 1)
        qp = _split_parts(d.quot, depth + 1)
        if sp is None or qp is None:
            return None
        fin = _sum_finite(sp[0], qp[0])
        loc = _sum_loc(sp[1], qp[1])
        return fin, loc
    return None


def _sum_finite(a: ColimitDescription, b: ColimitDescription) -> ColimitDescription:
    group, endo = direct_sum_endo(a.fg_part, a.action, b.fg_part, b.action)
    return ColimitDescription.finite(group, endo)


def _sum_loc(a: IntMatrix | None, b: IntMatrix | None) -> IntMatrix | None:
    if a is None:
        return b
    if b is None:
        return a
    return block_diagonal(a, b)


def direct_sum_descriptions(a: ColimitDescription, b: ColimitDescription) -> ColimitDescription:
    """Direct sum in the description algebra (used for split extensions)."""
    if a.tag == TAG_FINITE and a.fg_part.is_trivial:
        return b
    if b.tag == TAG_FINITE and b.fg_part.is_trivial:
        return a
    if a.tag == TAG_FINITE and b.tag == TAG_FINITE:
        return _sum_finite(a, b)
    if a.tag == TAG_LOCALIZED and b.tag == TAG_LOCALIZED:
        return ColimitDescription.localized(block_diagonal(a.loc_matrix, b.loc_matrix))
    pa, pb = _split_parts(a), _split_parts(b)
    if pa is None or pb is None:
        return ColimitDescription.unresolved()
    fin = _sum_finite(pa[0], pb[0])
    loc = _sum_loc(pa[1], pb[1])
    if loc is None or loc.rows == 0:
        return fin
    loc_desc = ColimitDescription.localized(loc)
    if fin.fg_part.is_trivial:
        return loc_desc
    return ColimitDescription.extension(fin, loc_desc, resolved=True)


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------

def _stable_kernel_generators(problem: DilationProblem,
                              cap: int) -> tuple[int, list[tuple[int, ...]], GroupHom]:
    """Least t with ker(f^t) = ker(f^{t+1}), generators of that kernel
    lattice, and the power f^t itself."""
    base, f = problem.base, problem.endo
    power = GroupHom.identity(base)
    for t in range(cap + 1):
        nxt = f @ power
        gens = _kernel_lattice_generators(nxt)
        if all(element_is_zero(base, power.matrix.apply(g)) for g in gens):
            return t, gens, power
        power = nxt
    raise StabilizationCapError("stabilization cap exceeded")


def eventual_kernel(problem: DilationProblem,
                    cap: int = DEFAULT_STABILIZATION_CAP) -> tuple[FGAbelianGroup, int]:
    """The union of ker(f^t) in canonical form, and the stabilization index."""
    t_star, _, power = _stable_kernel_generators(problem, cap)
    group, _ = kernel(power)
    return group, t_star


def _injective_quotient(problem: DilationProblem,
                        cap: int) -> tuple[FGAbelianGroup, GroupHom]:
    """Quotient by the eventual kernel, with the induced injective map."""
    base = problem.base
    _, gens, _ = _stable_kernel_generators(problem, cap)
    rows = base.relation_rows().vstack(
        IntMatrix.from_rows([list(g) for g in gens], cols=base.num_generators))
    quotient, projection, lift = _quotient_with_maps(base.num_generators, rows)
    induced = GroupHom(quotient, quotient, projection @ problem.endo.matrix @ lift)
    return quotient, induced


def _equivariant_complement_exists(group: FGAbelianGroup, torsion_map: IntMatrix,
                                   mixing: IntMatrix, free_map: IntMatrix) -> bool:
    """Whether the free part admits an invariant complement: solve
    A u - u D = -B over the torsion congruences, u a torsion x free matrix."""
    t, r = group.torsion_count, group.free_rank
    orders = group.invariant_factors
    n_unknowns = 2 * t * r  # u entries plus one slack per congruence
    rows = []
    rhs = []
    for i in range(t):
        for l in range(r):
            coeff = [0] * n_unknowns
            for k in range(t):
                coeff[k * r + l] += torsion_map[i, k]
            for k in range(r):
                coeff[i * r + k] -= free_map[k, l]
            coeff[t * r + i * r + l] = orders[i]
            rows.append(coeff)
            rhs.append(-mixing[i, l])
    system = IntMatrix.from_rows(rows, cols=n_unknowns)
    solution = solve_integer_system(system, rhs)
    if solution is None:
        return False
    u = IntMatrix.from_rows([[solution[i * r + l] for l in range(r)]
                             for i in range(t)], cols=r)
    residue = torsion_map @ u - u @ free_map + mixing
    for i in range(t):
        if any(x % orders[i] != 0 for x in residue.row(i)):
            raise RuntimeError("complement solver returned an invalid solution")
    return True


def _classify_injective(group: FGAbelianGroup, endo: GroupHom) -> ColimitDescription:
    t, r = group.torsion_count, group.free_rank
    if r == 0:
        return ColimitDescription.finite(group, endo)
    m = endo.matrix
    if t == 0:
        if abs(m.determinant()) == 1:
            return ColimitDescription.finite(group, endo)
        return ColimitDescription.localized(m)
    torsion_map = m.select_rows(range(t)).select_columns(range(t))
    mixing = m.select_rows(range(t)).select_columns(range(t, t + r))
    free_map = m.select_rows(range(t, t + r)).select_columns(range(t, t + r))
    torsion = group.torsion_part()
    sub = ColimitDescription.finite(torsion, GroupHom(torsion, torsion, torsion_map))
    free_group = FGAbelianGroup.free(r)
    if abs(free_map.determinant()) == 1:
        quot = ColimitDescription.finite(free_group, GroupHom(free_group, free_group, free_map))
    else:
        quot = ColimitDescription.localized(free_map)
    if _equivariant_complement_exists(group, torsion_map, mixing, free_map):
        return direct_sum_descriptions(sub, quot)
    return ColimitDescription.extension(sub, quot, resolved=False)


def classify_colimit(problem: DilationProblem,
                     cap: int = DEFAULT_STABILIZATION_CAP) -> ColimitDescription:
    """Classify colim(G, f).

    Quotienting by the eventual kernel leaves an injective system with the
    same colimit; injective endomorphisms of finite groups are automorphisms,
    injective free systems give localized towers, and mixed groups split when
    an invariant free complement exists.
    """
    quotient, induced = _injective_quotient(problem, cap)
    return _classify_injective(quotient, induced)


def _restrict_to_subgroup(f: GroupHom, subgroup: FGAbelianGroup,
                          inclusion: GroupHom) -> GroupHom:
    """The endomorphism induced by f on an f-invariant subgroup."""
    columns = []
    for j in range(subgroup.num_generators):
        image = f.codomain.reduce(f.matrix.apply(inclusion.matrix.column(j)))
        coords = preimage(inclusion, image)
        if coords is None:
            raise ValueError("subgroup is not invariant under the endomorphism")
        columns.append(coords)
    matrix = IntMatrix.from_rows(
        [[col[i] for col in columns] for i in range(subgroup.num_generators)],
        cols=len(columns))
    return GroupHom(subgroup, subgroup, matrix)


def ker_coker_one_minus(problem: DilationProblem,
                        cap: int = DEFAULT_STABILIZATION_CAP
                        ) -> tuple[ColimitDescription, ColimitDescription]:
    """Kernel and cokernel of (1 - fbar) on the colimit.

    Filtered colimits are exact, so ker(1 - fbar) = colim(ker(1 - f), f) and
    coker(1 - fbar) = colim(coker(1 - f), induced f); f maps ker(1 - f) into
    itself because it commutes with 1 - f.
    """
    from .abelian import _cokernel_with_maps

    base, f = problem.base, problem.endo
    one_minus = GroupHom.identity(base) - f
    ker_group, inclusion = kernel(one_minus)
    ker_endo = _restrict_to_subgroup(f, ker_group, inclusion)
    ker_desc = classify_colimit(DilationProblem(ker_group, ker_endo), cap)

    cok_group, projection, lift = _cokernel_with_maps(one_minus)
    cok_endo = GroupHom(cok_group, cok_group, projection.matrix @ f.matrix @ lift)
    cok_desc = classify_colimit(DilationProblem(cok_group, cok_endo), cap)
    return ker_desc, cok_desc


def colim_element_is_zero(problem: DilationProblem, element: ColimElement,
                          cap: int = DEFAULT_STABILIZATION_CAP) -> bool:
    """Whether (coords, level) is zero in the colimit, i.e. killed by some
    power of the endomorphism."""
    coords = problem.base.reduce(element.coords)
    t_star, _, _ = _stable_kernel_generators(problem, cap)
    for _ in range(t_star):
        coords = problem.endo.apply(coords)
    return element_is_zero(problem.base, coords)
