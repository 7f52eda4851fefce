"""Automorphism groups of small groups and orbits on element tuples.

Automorphisms are stored as permutations of element *indices* (relative
to the deterministic element order), so orbit computations on tuples of
elements reuse the ordinary permutation machinery.

The search engine maps a fixed generating sequence onto candidate image
tuples, pruning by conjugacy-invariant fingerprints (element order,
class size, power profile) and cheap word-order checks, and validates
survivors against the full multiplication table.  The same engine,
pointed at two different groups, decides isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .perm_core import (
    CapExceededError,
    CayleyTable,
    GroupArgumentError,
    Permutation,
    PermutationGroup,
)
from .group_structure import min_rank, registry_for


# ---------------------------------------------------------------------------
# fingerprints and the backtracking engine


def _element_fingerprints(ct: CayleyTable) -> list:
    """Conjugacy-invariant fingerprint per element, stable under any
    isomorphism: (order, class size, sorted profile of proper powers)."""
    base = [(ct.order_of[x], ct.class_size(x)) for x in range(ct.n)]
    out = []
    for x in range(ct.n):
        powers = []
        y = ct.table[x][x]
        while y != x:
            powers.append(base[y])
            y = ct.table[y][x]
        out.append((base[x][0], base[x][1], tuple(sorted(powers))))
    return out


def _generating_sequence(G: PermutationGroup, ct: CayleyTable,
                         fps: list) -> list:
    """Small generating sequence, rarest fingerprint first."""
    cert = min_rank(G)
    idxs = [ct.index[p.images] for p in cert.witness]
    buckets = {}
    for fp in fps:
        buckets[fp] = buckets.get(fp, 0) + 1
    idxs.sort(key=lambda i: (buckets[fps[i]], i))
    return idxs


_WORDS = [
    (0, 1), (1, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0, 1, 1),
    (0, 0, 1, 0, 1), (1, 1, 0, 0, 1),
]


def _word_order(ct: CayleyTable, gens: Sequence[int], word) -> int:
    x = ct.identity
    for letter in word:
        if letter >= len(gens):
            return 0
        x = ct.table[x][gens[letter]]
    return ct.order_of[x]


def _extend_map(ct_src: CayleyTable, ct_dst: CayleyTable,
                schedule: list, src_gens: Sequence[int],
                dst_gens: Sequence[int]) -> Optional[np.ndarray]:
    """Replay the BFS word schedule to build the full candidate map."""
    sigma = np.full(ct_src.n, -1, dtype=np.int64)
    sigma[ct_src.identity] = ct_dst.identity
    for gi, hi in zip(src_gens, dst_gens):
        if sigma[gi] >= 0 and sigma[gi] != hi:
            return None
        sigma[gi] = hi
    dst_table = ct_dst.table
    for new, parent, k in schedule:
        img = dst_table[sigma[parent]][dst_gens[k]]
        if sigma[new] >= 0:
            if sigma[new] != img:
                return None
        else:
            sigma[new] = img
    return sigma


def _bfs_schedule(ct: CayleyTable, gens: Sequence[int]) -> list:
    """(new element, parent, generator position) triples covering the group."""
    seen = bytearray(ct.n)
    seen[ct.identity] = 1
    for g in gens:
        seen[g] = 1
    schedule = []
    queue = [ct.identity] + [g for g in dict.fromkeys(gens)]
    qi = 0
    table = ct.table
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        row = table[x]
        for k, g in enumerate(gens):
            y = row[g]
            if not seen[y]:
                seen[y] = 1
                schedule.append((y, x, k))
                queue.append(y)
    if qi != ct.n:
        raise GroupArgumentError("sequence does not generate the group")
    return schedule


def _is_homomorphism(ct_src, ct_dst, sigma: np.ndarray) -> bool:
    if len(np.unique(sigma)) != ct_src.n:
        return False
    src = ct_src.numpy_table()
    dst = ct_dst.numpy_table()
    # sigma(x * y) == sigma(x) * sigma(y) over the whole table at once
    return bool((sigma[src] == dst[sigma][:, sigma]).all())


def _iso_maps(ct_src: CayleyTable, ct_dst: CayleyTable,
              src_gens: Sequence[int], *, first_only: bool,
              limits: Limits) -> tuple:
    """All (or the first) bijections extending src_gens -> candidate images.

    Returns (maps, exhausted): ``exhausted`` is False when the leaf budget
    tripped, i.e. absence of maps was not proven.
    """
    fps_src = _element_fingerprints(ct_src)
    fps_dst = _element_fingerprints(ct_dst)
    buckets = {}
    for x in range(ct_dst.n):
        buckets.setdefault(fps_dst[x], []).append(x)
    candidate_sets = []
    for g in src_gens:
        cands = buckets.get(fps_src[g])
        if not cands:
            return [], True
        candidate_sets.append(cands)
    word_profile = [_word_order(ct_src, src_gens, w) for w in _WORDS]
    schedule = _bfs_schedule(ct_src, src_gens)
    maps = []
    leaves = 0
    for dst_gens in itertools.product(*candidate_sets):
        leaves += 1
        if leaves > limits.max_iso_leaves:
            return maps, False
        if any(_word_order(ct_dst, dst_gens, w) != wp
               for w, wp in zip(_WORDS, word_profile)):
            continue
        sigma = _extend_map(ct_src, ct_dst, schedule, src_gens, dst_gens)
        if sigma is None or not _is_homomorphism(ct_src, ct_dst, sigma):
            continue
        maps.append(sigma)
        if first_only:
            return maps, True
    return maps, True


# ---------------------------------------------------------------------------
# automorphism groups


@dataclass
class Automorphism:
    """Bijection on elements(L), stored as a permutation of element indices."""

    base: PermutationGroup
    index_map: Permutation

    def apply(self, p: Permutation) -> Permutation:
        ct = self.base.cayley_table()
        return ct.perm(self.index_map(ct.index[p.images]))

    def __call__(self, p: Permutation) -> Permutation:
        return self.apply(p)


@dataclass
class AutGroup:
    """Aut(L) (or a subgroup of it) acting on element indices of L."""

    base: PermutationGroup
    perm_group: PermutationGroup  # degree == |L|, acting on element indices
    inner: PermutationGroup       # the distinguished inner subgroup

    @property
    def order(self) -> int:
        return self.perm_group.order

    def automorphisms(self, limits: Limits = DEFAULT_LIMITS) -> list:
        return [Automorphism(self.base, p)
                for p in self.perm_group.elements(limits)]

    def subgroup(self, members: Iterable[Permutation]) -> "AutGroup":
        sub = PermutationGroup(self.perm_group.degree, list(members))
        return AutGroup(self.base, sub, self.inner)


def inner_automorphisms(L: PermutationGroup,
                        limits: Limits = DEFAULT_LIMITS) -> PermutationGroup:
    ct = L.cayley_table(limits)
    gens = []
    for g in ct.gen_indices:
        gens.append(Permutation([ct.conj(x, g) for x in range(ct.n)]))
    return PermutationGroup(ct.n, gens)


def aut_group_from_maps(L: PermutationGroup, gen_maps,
                        limits: Limits = DEFAULT_LIMITS) -> AutGroup:
    """AutGroup from catalog-supplied generator element-maps.

    Each map lists one image array per generator of L; the maps are
    extended over the group, validated, and joined with the inner
    automorphisms.  This bypasses the backtracking search for groups
    whose automorphisms are supplied externally.
    """
    from .perm_core import Homomorphism
    ct = L.cayley_table(limits)
    inner = inner_automorphisms(L, limits)
    gens = list(inner.generators)
    for maps in gen_maps:
        images = [Permutation(m) for m in maps]
        hom = Homomorphism(L, L, images)
        table = hom._build_table(limits)
        if len(set(table.values())) != ct.n:
            raise GroupArgumentError("supplied map is not bijective")
        gens.append(Permutation(
            [ct.index[table[ct.elements[i].images]] for i in range(ct.n)]))
    return AutGroup(L, PermutationGroup(ct.n, gens), inner)


def automorphism_group(L: PermutationGroup,
                       limits: Limits = DEFAULT_LIMITS) -> AutGroup:
    """Complete Aut(L) by backtracking over images of a generating sequence.

    Pruning is by fingerprint buckets and word orders; every surviving
    candidate is validated against the full multiplication table, so the
    result is sound regardless of pruning strength.
    """
    if L.order > limits.max_aut_order:
        raise CapExceededError(
            f"order {L.order} exceeds automorphism cap {limits.max_aut_order}")
    ct = L.cayley_table(limits)
    fps = _element_fingerprints(ct)
    src_gens = _generating_sequence(L, ct, fps)
    maps, exhausted = _iso_maps(ct, ct, src_gens, first_only=False,
                                limits=limits)
    if not exhausted:
        raise CapExceededError("automorphism search exceeded leaf budget")
    perms = sorted(Permutation(tuple(int(i) for i in sigma)) for sigma in maps)
    group = PermutationGroup(ct.n, perms, known_order=len(perms))
    if group.order != len(perms):
        raise GroupArgumentError("automorphism set failed to close")
    inner = inner_automorphisms(L, limits)
    return AutGroup(L, group, inner)


def x_subgroup(L_mono, limits: Limits = DEFAULT_LIMITS,
               aut: Optional[AutGroup] = None) -> AutGroup:
    """Automorphisms of L acting trivially on L/N (N the socle).

    The defining condition gamma(l) N = l N holds on all of L as soon as
    it holds on generators, since {l : gamma(l) N = l N} is a subgroup.
    An externally supplied Aut(L) bypasses the backtracking search.
    """
    L = L_mono.group
    N = L_mono.socle
    if aut is None:
        aut = automorphism_group(L, limits)
    ct = L.cayley_table(limits)
    n_set = ct.subset_indices(N)
    gen_idx = list(ct.gen_indices)
    members = []
    for p in aut.perm_group.elements(limits):
        ok = True
        for g in gen_idx:
            # g^-1 * gamma(g) must lie in N
            if ct.table[ct.inv[g]][p(g)] not in n_set:
                ok = False
                break
        if ok:
            members.append(p)
    from .perm_core import subgroup_from_members
    sub = subgroup_from_members(ct.n, members)
    return AutGroup(L, sub, aut.inner)


# ---------------------------------------------------------------------------
# orbits on tuples


def orbits_on_tuples(X: AutGroup, tuples: Sequence[tuple]) -> tuple:
    """Orbit labels for the diagonal action of X on element-index tuples.

    Returns (labels, orbit_count); labels are canonical: orbits are
    numbered by their lexicographically smallest member.  Raises if the
    action leaves the given tuple set (caller passed a non-closed set).
    """
    index = {t: i for i, t in enumerate(tuples)}
    parent = list(range(len(tuples)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    gens = [p.images for p in X.perm_group.generators]
    for i, t in enumerate(tuples):
        for g in gens:
            img = tuple(g[x] for x in t)
            j = index.get(img)
            if j is None:
                raise GroupArgumentError(
                    "tuple set is not closed under the X-action")
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    # canonical labels: orbits ordered by smallest tuple
    rep_best: dict[int, tuple] = {}
    for i, t in enumerate(tuples):
        r = find(i)
        if r not in rep_best or t < rep_best[r]:
            rep_best[r] = t
    ordered = sorted(rep_best, key=lambda r: rep_best[r])
    relabel = {r: k for k, r in enumerate(ordered)}
    labels = [relabel[find(i)] for i in range(len(tuples))]
    return labels, len(ordered)


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoResult:
    isomorphic: Optional[bool]  # None when the search budget tripped
    map: Optional[list] = None  # element-index map when isomorphic


def isomorphism(G: PermutationGroup, H: PermutationGroup,
                limits: Limits = DEFAULT_LIMITS) -> IsoResult:
    """Search for an isomorphism G -> H (generator-image backtracking).

    Cheap invariants (order, fingerprint multiset) run first; a tripped
    leaf budget yields ``isomorphic=None`` (absence not proven) instead
    of a wrong answer.
    """
    if G.order != H.order:
        return IsoResult(False)
    ct_g = G.cayley_table(limits)
    ct_h = H.cayley_table(limits)
    if sorted(_element_fingerprints(ct_g)) != sorted(_element_fingerprints(ct_h)):
        return IsoResult(False)
    fps = _element_fingerprints(ct_g)
    src_gens = _generating_sequence(G, ct_g, fps)
    maps, exhausted = _iso_maps(ct_g, ct_h, src_gens, first_only=True,
                                limits=limits)
    if maps:
        return IsoResult(True, [int(i) for i in maps[0]])
    return IsoResult(False if exhausted else None)
