"""Independent brute-force oracles and random generators for the tests.

Nothing here goes through the package's Smith normal form: group structure
is recovered from torsion-element counts, Smith diagonals from gcds of
minors, and vertex-set families from exhaustive subset scans.  That keeps
the dual-route checks honest.
"""

from itertools import combinations, product
from math import gcd, prod

from kdilate.abelian import FGAbelianGroup, GroupHom, IntMatrix
from kdilate.graphalg import Graph


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def cofactor_det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def smith_diagonal_by_divisors(rows: list[list[int]], ncols: int) -> list[int]:
    """Smith diagonal via determinantal divisors: s_k = d_k / d_{k-1} where
    d_k is the gcd of all k x k minors."""
    nrows = len(rows)
    diag = []
    prev = 1
    for k in range(1, min(nrows, ncols) + 1):
        dk = 0
        for ri in combinations(range(nrows), k):
            for ci in combinations(range(ncols), k):
                dk = gcd(dk, cofactor_det([[rows[i][j] for j in ci] for i in ri]))
        if dk == 0:
            diag.append(0)
            prev = 0
        else:
            diag.append(dk // prev)
            prev = dk
    return diag


def _invariants_from_counts(total: int, count_p_torsion) -> tuple[int, ...]:
    """Recover invariant factors of a finite abelian group of the given order
    from n_j = count_p_torsion(p, j), the number of elements killed by p^j."""
    if total == 1:
        return ()
    per_prime: dict[int, list[int]] = {}
    for p in prime_factors(total):
        counts = [1]
        while True:
            nj = count_p_torsion(p, len(counts))
            if nj == counts[-1]:
                break
            counts.append(nj)
        cjs = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            e = 0
            while ratio % p == 0 and ratio > 1:
                ratio //= p
                e += 1
            cjs.append(e)  # number of cyclic p-parts with exponent >= j
        exponents = []
        for j, c in enumerate(cjs, start=1):
            following = cjs[j] if j < len(cjs) else 0
            exponents.extend([j] * (c - following))
        per_prime[p] = sorted(exponents, reverse=True)
    longest = max(len(v) for v in per_prime.values())
    factors = []
    for t in range(longest):
        f = 1
        for p, exps in per_prime.items():
            if t < len(exps):
                f *= p ** exps[t]
        factors.append(f)
    return tuple(sorted(factors))


def subgroup_invariant_factors(elements, ambient_orders) -> tuple[int, ...]:
    elements = list(elements)

    def count(p, j):
        pj = p ** j
        return sum(1 for x in elements
                   if all((v * pj) % d == 0 for v, d in zip(x, ambient_orders)))

    return _invariants_from_counts(len(elements), count)


def quotient_invariant_factors(ambient_orders, image) -> tuple[int, ...]:
    image = frozenset(tuple(x) for x in image)
    elements = list(product(*(range(d) for d in ambient_orders)))
    total = len(elements) // len(image)

    def count(p, j):
        pj = p ** j
        hits = sum(1 for x in elements
                   if tuple((v * pj) % d for v, d in zip(x, ambient_orders)) in image)
        return hits // len(image)

    return _invariants_from_counts(total, count)


def brute_one_minus_ker_coker(orders, action_rows) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Kernel and cokernel invariants of x -> x - f(x) on a finite group,
    by full enumeration."""
    orders = tuple(orders)
    n = len(orders)
    elements = list(product(*(range(d) for d in orders)))

    def one_minus(x):
        fx = [sum(action_rows[i][j] * x[j] for j in range(n)) for i in range(n)]
        return tuple((x[i] - fx[i]) % orders[i] for i in range(n))

    kernel_elements = [x for x in elements if all(v == 0 for v in one_minus(x))]
    image = {one_minus(x) for x in elements}
    return (subgroup_invariant_factors(kernel_elements, orders),
            quotient_invariant_factors(orders, image))


def brute_hereditary_saturated(graph: Graph) -> list[frozenset]:
    """All hereditary and saturated subsets by scanning all 2^|V| masks."""
    n = len(graph.vertices)
    outs = []
    for i in range(n):
        mask = 0
        for j in range(n):
            if graph.adjacency[i, j] > 0:
                mask |= 1 << j
        outs.append(mask)
    family = []
    for mask in range(1 << n):
        hereditary = all(not (mask >> v & 1) or outs[v] & ~mask == 0 for v in range(n))
        saturated = all((mask >> v & 1) or outs[v] & ~mask != 0 for v in range(n))
        if hereditary and saturated:
            family.append(frozenset(graph.vertices[v] for v in range(n) if mask >> v & 1))
    return family


# ---------------------------------------------------------------------------
# Random generators
# ---------------------------------------------------------------------------

def random_matrix(rng, max_dim=8, max_entry=50) -> IntMatrix:
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-max_entry, max_entry) for _ in range(c)] for _ in range(r)])


def random_finite_group(rng, max_order=10_000) -> FGAbelianGroup:
    orders, total = [], 1
    for _ in range(rng.randint(1, 4)):
        d = rng.randint(2, 30)
        if total * d > max_order:
            break
        orders.append(d)
        total *= d
    if not orders:
        orders = [rng.randint(2, 50)]
    return FGAbelianGroup.from_orders(orders)


def random_endomorphism(rng, group: FGAbelianGroup) -> GroupHom:
    """Uniformly random well-defined endomorphism of a finite group: entry
    (i, j) must be a multiple of d_i / gcd(d_i, d_j)."""
    orders = group.generator_orders()
    n = group.num_generators
    rows = [[(rng.randrange(orders[i]) * (orders[i] // gcd(orders[i], orders[j])))
             % orders[i] for j in range(n)] for i in range(n)]
    return GroupHom(group, group, IntMatrix.from_rows(rows, cols=n))


def random_graph(rng, max_vertices=8, loops_everywhere=False) -> Graph:
    n = rng.randint(1, max_vertices)
    names = [f"w{i}" for i in range(n)]
    rows = [[rng.choice((0, 0, 0, 1, 1, 2)) for _ in range(n)] for _ in range(n)]
    if loops_everywhere:
        for i in range(n):
            rows[i][i] = max(1, rows[i][i])
    for i in range(n):
        if sum(rows[i]) == 0:
            rows[i][rng.randrange(n)] = 1
    return Graph.from_adjacency(names, rows)
