"""Structured and random instance generators, plus instance transformers.

All generators are deterministic; random instances depend only on the seed.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from hypercover.errors import InfeasibleError, InputError
from hypercover.hypergraph import MultiHypergraph
from hypercover.utils import make_rng


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q**0.5) + 1))


def _merge(n_vertices: int, groups: Sequence[Sequence[int]]) -> MultiHypergraph:
    """Hypergraph whose edges are the distinct sorted groups, counted as multiplicity."""
    counts: Dict[Tuple[int, ...], int] = Counter(tuple(sorted(g)) for g in groups)
    return MultiHypergraph(n_vertices, tuple(sorted(counts.items())))


# ----------------------------------------------------------------------
# Projective spaces
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveParams:
    """Projective space of dimension t over the prime field F_q."""

    t: int
    q: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise InputError(f"projective dimension must be at least 1, got {self.t}")
        if not _is_prime(self.q):
            raise InputError(f"q={self.q} is not prime (prime powers are not supported)")

    @property
    def points(self) -> int:
        return (self.q ** (self.t + 1) - 1) // (self.q - 1)

    @property
    def r(self) -> int:
        return (self.q**self.t - 1) // (self.q - 1)

    @property
    def d(self) -> int:
        return self.r


def projective_points(t: int, q: int) -> np.ndarray:
    """Normalized representatives (first nonzero coordinate 1) in lexicographic order."""
    ProjectiveParams(t, q)
    vectors = [
        v
        for v in itertools.product(range(q), repeat=t + 1)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    return np.array(vectors, dtype=np.int64)


def gen_projective(t: int, q: int) -> MultiHypergraph:
    """Points of PG(t, q) with one edge per hyperplane {x : a.x = 0}."""
    params = ProjectiveParams(t, q)
    points = projective_points(t, q)
    incidence = (points @ points.T) % q == 0
    edges = tuple((tuple(int(v) for v in np.flatnonzero(row)), 1) for row in incidence)
    H = MultiHypergraph(len(points), edges)
    if not (H.is_uniform(params.r) and H.is_regular(params.d) and len(edges) == params.points):
        raise InputError(f"PG({t},{q}) incidence counts are inconsistent")
    return H


def gen_fano() -> MultiHypergraph:
    return gen_projective(2, 2)


@dataclass(frozen=True)
class ProjectiveBounds:
    """Counting bounds on the covering number of the PG(t, q) hypergraph.

    Attributes:
        min_cover_lower: Every cover uses at least t+1 hyperplanes
        split_upper: Integer bound floor(points / (t+1))
        loose_upper: q*d/(t+1) as an exact fraction
        witness_k: For q = 3, floor(3d/(t+1)) + 1
    """

    t: int
    q: int
    points: int
    r: int
    d: int
    edges: int
    min_cover_lower: int
    split_upper: int
    loose_upper: Fraction
    witness_k: Optional[int]


def projective_bounds(t: int, q: int) -> ProjectiveBounds:
    params = ProjectiveParams(t, q)
    return ProjectiveBounds(
        t=t,
        q=q,
        points=params.points,
        r=params.r,
        d=params.d,
        edges=params.points,
        min_cover_lower=t + 1,
        split_upper=params.points // (t + 1),
        loose_upper=Fraction(q * params.d, t + 1),
        witness_k=(3 * params.d) // (t + 1) + 1 if q == 3 else None,
    )


# ----------------------------------------------------------------------
# Cube construction
# ----------------------------------------------------------------------


def cube_labels(d: int) -> List[Tuple[int, ...]]:
    """Subsets of {1..d} with at least d/2 elements, by size then lexicographic."""
    if d < 1:
        raise InputError(f"cube dimension must be positive, got {d}")
    sizes = range((d + 1) // 2, d + 1)
    return [subset for size in sizes for subset in itertools.combinations(range(1, d + 1), size)]


def gen_cube(d: int) -> MultiHypergraph:
    """Vertices are the large subsets of [d]; edge i holds the subsets containing i."""
    labels = cube_labels(d)
    edges = [[v for v, subset in enumerate(labels) if i in subset] for i in range(1, d + 1)]
    return MultiHypergraph.from_edges(len(labels), edges)


# ----------------------------------------------------------------------
# Graph witnesses
# ----------------------------------------------------------------------


def gen_triangle_multi(k: int) -> MultiHypergraph:
    """Triangle multigraph of minimum degree floor((4k+1)/3) - 1 that has no k-split."""
    if k < 2:
        raise InputError(f"triangle witness needs k >= 2, got {k}")
    t, i = divmod(k, 3)
    multiplicities = {0: (2 * t, 2 * t, 2 * t - 1), 1: (2 * t,) * 3, 2: (2 * t + 1,) * 3}[i]
    return MultiHypergraph.from_edges(3, [(0, 1), (0, 2), (1, 2)], multiplicities)


def gen_complete(n: int) -> MultiHypergraph:
    if n < 2:
        raise InputError(f"complete graph needs at least 2 vertices, got {n}")
    return MultiHypergraph.from_edges(n, itertools.combinations(range(n), 2))


def gen_odd_near_regular(k: int) -> MultiHypergraph:
    """K_{k+2} minus the matching {i, i+(k+1)/2} on vertices 1..k+1.

    Vertex 0 keeps degree k+1 and all others have degree k; the cycle
    0-1-...-(k+1)-0 survives.
    """
    if k < 3 or k % 2 == 0:
        raise InputError(f"odd near-regular witness needs odd k >= 3, got {k}")
    half = (k + 1) // 2
    removed = {(i, i + half) for i in range(1, half + 1)}
    edges = [e for e in itertools.combinations(range(k + 2), 2) if e not in removed]
    return MultiHypergraph.from_edges(k + 2, edges)


# ----------------------------------------------------------------------
# Transformers
# ----------------------------------------------------------------------


def extend_by_vertex(H: MultiHypergraph) -> MultiHypergraph:
    """Add one new vertex to every edge."""
    apex = H.n_vertices
    edges = tuple((vertices + (apex,), m) for vertices, m in H.edges)
    return MultiHypergraph(H.n_vertices + 1, edges)


def multiply_edges(H: MultiHypergraph, s: int) -> MultiHypergraph:
    if s < 1:
        raise InputError(f"edge multiplier must be positive, got {s}")
    return MultiHypergraph(H.n_vertices, tuple((vertices, m * s) for vertices, m in H.edges))


class Expansion(NamedTuple):
    hypergraph: MultiHypergraph
    embedded: Tuple[int, ...]


def expand(H: MultiHypergraph, s: int, d: int, copies: Optional[int] = None) -> Expansion:
    """(s,d)-expansion of an r-uniform H with minimum degree at least d.

    Every edge instance is replaced by s edges, each extended by its own new
    vertex. `copies` copies of the result are taken (a multiple of r+1) and,
    inside each block of r+1 consecutive copies, s*d-1 rounds of cross-copy
    edges join new vertex (c, (j + rho*c) mod N) for the copies c of the
    block, so every new vertex ends with degree s*d. The embedded set is
    the old vertex set of copy 0.
    """
    r = H.uniformity
    if r is None:
        raise InputError("expansion needs a uniform hypergraph")
    if s < 1 or d < 1:
        raise InputError(f"expansion needs s >= 1 and d >= 1, got s={s}, d={d}")
    if H.n_vertices and H.min_degree < d:
        raise InfeasibleError(f"minimum degree {H.min_degree} is below d={d}")
    block = r + 1
    copies = block if copies is None else copies
    if copies < 1 or copies % block:
        raise InputError(f"copies must be a positive multiple of r+1={block}, got {copies}")

    n = H.n_vertices
    instances = H.instances()
    N = s * len(instances)
    width = n + N

    groups: List[List[int]] = []
    for c in range(copies):
        base = c * width
        for i, inst in enumerate(instances):
            old = [base + v for v in H.edge_of(inst)]
            for clone in range(s):
                groups.append(old + [base + n + i * s + clone])

    if N:
        for first in range(0, copies, block):
            for rho in range(1, s * d):
                for j in range(N):
                    groups.append(
                        [(first + c) * width + n + (j + rho * c) % N for c in range(block)]
                    )

    return Expansion(_merge(copies * width, groups), tuple(range(n)))


# ----------------------------------------------------------------------
# Random regular uniform hypergraphs
# ----------------------------------------------------------------------


def _defects(groups: np.ndarray, simple: bool) -> List[int]:
    """Rows repeating a vertex, plus (with `simple`) rows repeating an earlier row."""
    bad = []
    seen = set()
    for i, row in enumerate(groups):
        key = tuple(sorted(row.tolist()))
        if len(set(key)) < len(key) or (simple and key in seen):
            bad.append(i)
        seen.add(key)
    return bad


def gen_random_regular_uniform(
    n: int, r: int, d: int, seed: int, simple: bool = False, restarts: int = 20
) -> MultiHypergraph:
    """d-regular r-uniform hypergraph from a configuration-model stub pairing.

    The n*d stubs are shuffled and cut into groups of r. Defective groups
    (a repeated vertex or, with `simple`, a repeated group) are repaired by
    swapping one of their stubs with a random stub elsewhere; a swap is kept
    unless it adds defects. A pairing that cannot be repaired is reshuffled,
    up to `restarts` times. Identical groups become one edge with a
    multiplicity.
    """
    if n < 1 or r < 1 or d < 1:
        raise InputError(f"n, r and d must be positive, got n={n}, r={r}, d={d}")
    if (n * d) % r:
        raise InputError(f"n*d = {n * d} is not divisible by r={r}")
    if r > n:
        raise InputError(f"edges of size {r} need at least {r} vertices, got {n}")
    m = n * d // r
    if simple and m > math.comb(n, r):
        raise InputError(f"{m} distinct edges of size {r} do not fit on {n} vertices")

    rng = make_rng(seed, "regular-uniform", n, r, d)
    stubs = np.repeat(np.arange(n), d)
    swaps_per_attempt = 50 * n * d
    for _ in range(restarts):
        rng.shuffle(stubs)
        groups = stubs.reshape(-1, r).copy()
        bad = _defects(groups, simple)
        swaps = 0
        while bad and swaps < swaps_per_attempt:
            swaps += 1
            i = bad[int(rng.integers(len(bad)))]
            j = int(rng.integers(m))
            if j == i:
                continue
            a = int(rng.integers(r))
            b = int(rng.integers(r))
            groups[i, a], groups[j, b] = groups[j, b], groups[i, a]
            after = _defects(groups, simple)
            if len(after) > len(bad):
                groups[i, a], groups[j, b] = groups[j, b], groups[i, a]
            else:
                bad = after
        if not bad:
            return _merge(n, groups.tolist())

    kind = "simple " if simple else ""
    raise InputError(
        f"no {kind}{d}-regular {r}-uniform pairing found on {n} vertices "
        f"after {restarts} restarts (seed {seed}); try another seed"
    )


def _extra_pairs(rng: np.random.Generator, n: int, count: int) -> List[Tuple[int, int]]:
    """`count` random pairs of distinct vertices among 1..n-1."""
    if n < 3:
        return []
    pairs = []
    for _ in range(count):
        u, v = rng.choice(np.arange(1, n), size=2, replace=False)
        pairs.append((int(min(u, v)), int(max(u, v))))
    return pairs


def gen_random_multigraph(n: int, d: int, seed: int, extra_edges: int = 0) -> MultiHypergraph:
    """d-regular random multigraph plus extra edges avoiding vertex 0.

    Vertex 0 keeps degree d, so the minimum degree is exactly d.
    """
    regular = gen_random_regular_uniform(n, 2, d, seed)
    rng = make_rng(seed, "extra-multi", n, d)
    groups = [vertices for vertices, m in regular.edges for _ in range(m)]
    groups.extend(_extra_pairs(rng, n, extra_edges))
    return _merge(n, groups)


def gen_random_graph(n: int, d: int, seed: int, extra_edges: int = 0) -> MultiHypergraph:
    """Simple graph: a random d-regular graph plus extra edges avoiding vertex 0."""
    if n <= d or (n * d) % 2:
        raise InputError(f"no simple {d}-regular graph on {n} vertices")
    rng = make_rng(seed, "random-graph", n, d)
    graph = nx.random_regular_graph(d, n, seed=int(rng.integers(2**31)))
    pairs = {tuple(sorted(e)) for e in graph.edges()}
    for u, v in _extra_pairs(rng, n, extra_edges):
        pairs.add((u, v))
    return MultiHypergraph.from_edges(n, sorted(pairs))
