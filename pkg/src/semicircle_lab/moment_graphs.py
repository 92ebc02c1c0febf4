"""Closed-walk multigraph combinatorics behind Gaussian trace moments.

A closed index walk of length k is reduced to a restricted-growth string
(RGS) g with g[0] = 1 and g[i] <= max(g[:i]) + 1: the canonical labeling of
the walk's distinct indices in order of first appearance.  RGS of length k
are in bijection with set partitions of {1..k}, so there are Bell(k) of
them.  Each string induces a multigraph on t = max(g) vertices whose edges
are the consecutive pairs {g[i], g[i+1]} (cyclically), and the strings fall
into three classes:

* doubled trees -- every edge traversed exactly twice, once per direction,
  no loops, and the distinct edges form a tree (Catalan-counted; the only
  class that survives in the large-n limit),
* walks with an edge of odd multiplicity (zero expectation for symmetric
  entry laws),
* everything else (vanishing weight as n grows).

``gaussian_moment_exact`` sums the per-class contributions for a variance
profile at finite n, and ``wick_moment_oracle`` recomputes the same moment
by brute force over all n^k index walks; the two routes share no code.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .matrices import VarianceProfile

__all__ = [
    "CanonicalGraph",
    "MomentBreakdown",
    "enumerate_canonical",
    "iter_canonical",
    "classify",
    "category_counts",
    "class_size",
    "graph_contribution",
    "gaussian_moment_exact",
    "wick_moment_oracle",
]

MAX_WALK_LENGTH = 12
MAX_EXACT_WALK_LENGTH = 8
MAX_EXACT_DIMENSION = 16
WICK_COST_LIMIT = 10**7

DOUBLED_TREE = 1
ODD_EDGE = 2
OTHER = 3


@dataclass(frozen=True)
class CanonicalGraph:
    """One canonical closed walk: its RGS, derived edges and category."""

    k: int
    g: tuple
    t: int
    directed_edges: tuple  # ((a, b), count) pairs, a->b traversals
    edge_multiplicities: tuple  # ((u, v), mult) with u <= v, loops included
    category: int

    @property
    def label(self):
        """Dash-joined string form of g, e.g. '1-2-1-3'."""
        return "-".join(str(v) for v in self.g)


@dataclass
class MomentBreakdown:
    """Exact k-th trace moment split by walk class (odd-edge class is 0)."""

    k: int
    s1: float
    s3: float
    total: float
    per_graph: dict = field(default_factory=dict)  # label -> contribution


def _validate_rgs(g):
    g = tuple(int(v) for v in g)
    if not g or g[0] != 1:
        raise ValueError(f"restricted-growth string must start at 1, got {g}")
    running_max = 1
    for v in g[1:]:
        if not 1 <= v <= running_max + 1:
            raise ValueError(f"invalid restricted-growth string {g}")
        running_max = max(running_max, v)
    return g


def _walk_edges(g):
    """Directed traversal counts and unordered multiplicities of the walk."""
    k = len(g)
    directed = Counter()
    for i in range(k):
        directed[(g[i], g[(i + 1) % k])] += 1
    unordered = Counter()
    for (a, b), c in directed.items():
        unordered[(min(a, b), max(a, b))] += c
    return directed, unordered


def classify(g):
    """Assign a restricted-growth string to one of the three walk classes.

    Checked in order: doubled tree, then odd-multiplicity edge, else other.
    The classes are mutually exclusive so the order is immaterial.
    """
    g = _validate_rgs(g)
    k = len(g)
    t = max(g)
    directed, unordered = _walk_edges(g)

    if k % 2 == 0 and _is_doubled_tree(directed, unordered, t):
        return DOUBLED_TREE
    if any(m % 2 == 1 for m in unordered.values()):
        return ODD_EDGE
    return OTHER


def _is_doubled_tree(directed, unordered, t):
    # one traversal per direction, no loops
    for (u, v), m in unordered.items():
        if u == v:
            return False
        if m != 2 or directed.get((u, v), 0) != 1 or directed.get((v, u), 0) != 1:
            return False
    # tree on t vertices: t-1 distinct edges, acyclic under union-find
    if len(unordered) != t - 1:
        return False
    parent = list(range(t + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in unordered:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _build_graph(g):
    g = tuple(g)
    directed, unordered = _walk_edges(g)
    return CanonicalGraph(
        k=len(g),
        g=g,
        t=max(g),
        directed_edges=tuple(sorted(directed.items())),
        edge_multiplicities=tuple(sorted(unordered.items())),
        category=classify(g),
    )


def iter_canonical(k):
    """Yield every canonical graph of walk length k (Bell(k) of them)."""
    if not 1 <= k <= MAX_WALK_LENGTH:
        raise ValueError(f"walk length must be in 1..{MAX_WALK_LENGTH}, got {k}")

    def extend(prefix, running_max):
        if len(prefix) == k:
            yield _build_graph(prefix)
            return
        for v in range(1, running_max + 2):
            yield from extend(prefix + (v,), max(running_max, v))

    yield from extend((1,), 1)


def enumerate_canonical(k):
    """All canonical graphs of walk length k as a list."""
    return list(iter_canonical(k))


def category_counts(k):
    """Counts (doubled trees, odd-edge walks, other) over all length-k walks."""
    c = Counter(graph.category for graph in iter_canonical(k))
    return c[DOUBLED_TREE], c[ODD_EDGE], c[OTHER]


def class_size(t, n):
    """Number of walks over {1..n} reducing to a fixed t-vertex canonical
    graph: the falling factorial n(n-1)...(n-t+1), zero once t > n."""
    if t < 1:
        raise ValueError(f"vertex count must be positive, got {t}")
    if n < 0:
        raise ValueError(f"dimension must be nonnegative, got {n}")
    size = 1
    for j in range(t):
        size *= n - j
        if size == 0:
            return 0
    return size


def _double_factorial(m):
    out = 1
    for v in range(m, 1, -2):
        out *= v
    return out


@lru_cache(maxsize=None)
def _injective_labelings(n, t):
    """All injective maps {0..t-1} -> {0..n-1} as an (L, t) int array."""
    return np.array(list(permutations(range(n), t)), dtype=np.intp).reshape(-1, t)


def graph_contribution(graph, profile):
    """Exact contribution of one canonical graph to the normalized k-th
    Gaussian trace moment under a variance profile.

    Sums over injective vertex labelings the product, over distinct edges,
    of (m-1)!! * sigma^(m) with m the edge multiplicity (Gaussian even
    moments; any odd multiplicity kills the graph), scaled by
    n^-(k/2 + 1).
    """
    n = profile.n
    if any(m % 2 == 1 for _, m in graph.edge_multiplicities):
        return 0.0
    if graph.t > n:
        return 0.0

    coeff = 1.0
    for _, m in graph.edge_multiplicities:
        coeff *= _double_factorial(m - 1)

    idx = _injective_labelings(n, graph.t)
    sigma2 = profile.sigma2
    factors = np.ones(idx.shape[0])
    for (u, v), m in graph.edge_multiplicities:
        factors *= sigma2[idx[:, u - 1], idx[:, v - 1]] ** (m // 2)
    return coeff * float(factors.sum()) / float(n) ** (graph.k / 2 + 1)


def gaussian_moment_exact(profile, k):
    """Exact k-th moment of the expected spectral distribution for the
    independent-Gaussian ensemble with the given variance profile.

    Sums graph contributions bucketed by walk class.  Cost grows like
    Bell(k) * n^t, hence the small caps.
    """
    if not isinstance(profile, VarianceProfile):
        raise TypeError("profile must be a VarianceProfile")
    if not 1 <= k <= MAX_EXACT_WALK_LENGTH:
        raise ValueError(f"walk length must be in 1..{MAX_EXACT_WALK_LENGTH}, got {k}")
    if profile.n > MAX_EXACT_DIMENSION:
        raise ValueError(
            f"dimension must be <= {MAX_EXACT_DIMENSION} for exact moments, got {profile.n}"
        )

    s1 = 0.0
    s3 = 0.0
    per_graph = {}
    for graph in iter_canonical(k):
        value = graph_contribution(graph, profile)
        per_graph[graph.label] = value
        if graph.category == DOUBLED_TREE:
            s1 += value
        elif graph.category == OTHER:
            s3 += value
    return MomentBreakdown(k=k, s1=s1, s3=s3, total=s1 + s3, per_graph=per_graph)


def wick_moment_oracle(profile, k):
    """Brute-force k-th moment: iterate all n^k closed index walks and apply
    the Gaussian moment (m-1)!! sigma^m to each distinct entry's multiplicity.

    Independent of the canonical-graph route; used to cross-check it.
    """
    if not isinstance(profile, VarianceProfile):
        raise TypeError("profile must be a VarianceProfile")
    if k < 1:
        raise ValueError(f"walk length must be positive, got {k}")
    n = profile.n
    if n**k > WICK_COST_LIMIT:
        raise ValueError(f"n^k = {n**k} exceeds the brute-force limit {WICK_COST_LIMIT}")

    sigma2 = profile.sigma2
    total = 0.0
    for walk in product(range(n), repeat=k):
        entries = Counter()
        for i in range(k):
            a, b = walk[i], walk[(i + 1) % k]
            entries[(min(a, b), max(a, b))] += 1
        term = 1.0
        for (a, b), m in entries.items():
            if m % 2 == 1:
                term = 0.0
                break
            term *= _double_factorial(m - 1) * sigma2[a, b] ** (m // 2)
        total += term
    return total / float(n) ** (k / 2 + 1)
