"""Independent reference implementations used by the tests.

Nothing here imports the search, enumeration or canonical-form code from the
package; only the plain data types are shared.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping

import numpy as np


def naive_extends(adj: Mapping[int, frozenset[int]], lists, phi: Mapping[int, int]) -> bool:
    """Brute force over all list assignments of the free vertices (numpy, vectorised)."""
    verts = sorted(adj)
    for v, c in phi.items():
        if c not in lists[v]:
            return False
    for v in phi:
        for w in adj[v]:
            if w in phi and phi[w] == phi[v]:
                return False
    free = [v for v in verts if v not in phi]
    if not free:
        return True
    if any(not lists[v] for v in free):
        return False
    grids = np.meshgrid(*[np.array(sorted(lists[v])) for v in free], indexing="ij")
    table = np.stack([g.ravel() for g in grids], axis=1)  # one row per full assignment
    col = {v: i for i, v in enumerate(free)}
    ok = np.ones(len(table), dtype=bool)
    for v in free:
        for w in adj[v]:
            if w in col and col[w] > col[v]:
                ok &= table[:, col[v]] != table[:, col[w]]
            elif w in phi:
                ok &= table[:, col[v]] != phi[w]
    return bool(ok.any())


def naive_is_critical(adj, outer, lists) -> bool:
    """C-criticality straight from the definition: every proper subgraph ⊇ C."""
    k = len(outer)
    c_edges = {tuple(sorted((outer[i], outer[(i + 1) % k]))) for i in range(k)}
    edges = sorted({tuple(sorted((v, w))) for v in adj for w in adj[v]})
    extra = [e for e in edges if e not in c_edges]
    inner = [v for v in sorted(adj) if v not in set(outer)]
    if not extra and not inner:
        return False
    phis = []
    for colors in itertools.product(*[sorted(lists[v]) for v in outer]):
        if all(colors[i] != colors[(i + 1) % k] for i in range(k)):
            phis.append(dict(zip(outer, colors)))

    def build(vs, es):
        a = {v: set() for v in vs}
        for u, v in es:
            a[u].add(v)
            a[v].add(u)
        return {v: frozenset(n) for v, n in a.items()}

    full = build(adj, edges)
    stuck = [phi for phi in phis if not naive_extends(full, lists, phi)]
    for r in range(len(extra) + 1):
        for keep in itertools.combinations(extra, r):
            ends = {x for e in keep for x in e}
            for rv in range(len(inner) + 1):
                for kept_inner in itertools.combinations(inner, rv):
                    if not ends <= set(outer) | set(kept_inner):
                        continue
                    if len(keep) == len(extra) and len(kept_inner) == len(inner):
                        continue
                    sub = build(list(outer) + list(kept_inner), sorted(c_edges) + list(keep))
                    if not any(naive_extends(sub, lists, phi) for phi in stuck):
                        return False
    return True


# -- plane graphs by brute force over rotation systems -----------------------------


def _faces(rot: dict[int, tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    seen = set()
    out = []
    for v in rot:
        for w in rot[v]:
            if (v, w) in seen:
                continue
            walk = []
            d = (v, w)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                a, b = d
                r = rot[b]
                d = (b, r[(r.index(a) + 1) % len(r)])
            out.append(walk)
    return out


def _two_connected(vs, edges) -> bool:
    vs = list(vs)
    for x in [None, *vs]:
        rest = [v for v in vs if v != x]
        adj = {v: set() for v in rest}
        for a, b in edges:
            if a != x and b != x:
                adj[a].add(b)
                adj[b].add(a)
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(rest):
            return False
    return True


def _cyclic_orders(items):
    items = sorted(items)
    if len(items) <= 2:
        yield tuple(items)
        return
    for perm in itertools.permutations(items[1:]):
        yield (items[0], *perm)


def _signature(rot, outer_darts, perm, mirror):
    out = []
    for v in sorted(rot):
        nbrs = [perm[w] for w in rot[v]]
        if mirror:
            nbrs.reverse()
        i = nbrs.index(min(nbrs))
        out.append((perm[v], tuple(nbrs[i:] + nbrs[:i])))
    darts = sorted((perm[b], perm[a]) if mirror else (perm[a], perm[b]) for a, b in outer_darts)
    return (tuple(sorted(out)), tuple(darts))


def brute_plane_graphs(k: int, m: int) -> int:
    """Count 2-connected plane graphs with outer cycle 0..k-1 and exactly ``m``
    internal vertices, up to relabelling and reflection."""
    n = k + m
    cyc = {tuple(sorted((i, (i + 1) % k))) for i in range(k)}
    optional = [e for e in itertools.combinations(range(n), 2) if e not in cyc]
    classes = set()
    for r in range(len(optional) + 1):
        for extra in itertools.combinations(optional, r):
            edges = sorted(cyc | set(extra))
            nbrs = {v: [] for v in range(n)}
            for a, b in edges:
                nbrs[a].append(b)
                nbrs[b].append(a)
            if any(len(x) < 2 for x in nbrs.values()) or not _two_connected(range(n), edges):
                continue
            for orders in itertools.product(*[list(_cyclic_orders(nbrs[v])) for v in range(n)]):
                rot = dict(enumerate(orders))
                faces = _faces(rot)
                if n - len(edges) + len(faces) != 2:
                    continue
                outer = next(f for f in faces if (0, 1) in f)
                if sorted(a for a, _ in outer) != list(range(k)) or len(outer) != k:
                    continue
                key = min(
                    _signature(rot, outer, perm, mirror)
                    for perm in itertools.permutations(range(n))
                    for mirror in (False, True)
                )
                classes.add(key)
    return len(classes)
