"""Structural invariants: normal lattices, socle, Frattini subgroup,
solubility, minimal generator numbers d(G) and d_X(G), and normal-subgroup
correction lifting.

The workhorse is SubgroupRegistry, a per-group cache of interned
subgroups (by element index set) with memoized joins.  Distances in the
join graph give d_X(G) = shortest chain of single-element extensions from
<X> to G; this is shared by the rank-graph edge predicates, so one sweep
over a group reuses everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .perm_core import (
    CapExceededError,
    CayleyTable,
    GroupArgumentError,
    Permutation,
    PermutationGroup,
    PreconditionError,
    WitnessSearchFailure,
    derived_subgroup,
    is_normal,
    normal_closure,
    subgroup_from_members,
)


# ---------------------------------------------------------------------------
# subgroup registry (dense groups only)


class SubgroupRegistry:
    """Interned subgroups of one dense group, with memoized joins.

    Subgroups are identified by the frozenset of their element indices.
    ``FULL`` joins are detected early: any closure exceeding |G|/2 must be
    the whole group by Lagrange.
    """

    def __init__(self, ct: CayleyTable):
        self.ct = ct
        self._ids: dict[frozenset, int] = {}
        self.members: list[frozenset] = []
        self.gens: list[tuple] = []
        self.trivial_id = self.intern(frozenset([ct.identity]), ())
        self.full_id = self.intern(frozenset(range(ct.n)),
                                   tuple(ct.gen_indices))
        self._cyc_sub_id: Optional[list] = None
        self._join_sub_cyc: dict = {}
        self._pair_join: dict = {}
        self._dist: dict = {}
        self._coset_reps: dict = {}

    def intern(self, members: frozenset, gens: tuple) -> int:
        sid = self._ids.get(members)
        if sid is None:
            sid = len(self.members)
            self._ids[members] = sid
            self.members.append(members)
            self.gens.append(gens)
        return sid

    def order(self, sid: int) -> int:
        return len(self.members[sid])

    def close(self, gens: Sequence[int]) -> int:
        """Subgroup generated by the given element indices, interned."""
        ct = self.ct
        n = ct.n
        half = n // 2
        gens = tuple(dict.fromkeys(g for g in gens if g != ct.identity))
        if not gens:
            return self.trivial_id
        seen = bytearray(n)
        seen[ct.identity] = 1
        out = [ct.identity]
        table = ct.table
        qi = 0
        while qi < len(out):
            x = out[qi]
            qi += 1
            row = table[x]
            for g in gens:
                y = row[g]
                if not seen[y]:
                    if len(out) > half:
                        return self.full_id
                    seen[y] = 1
                    out.append(y)
        return self.intern(frozenset(out), gens)

    # -- cyclic subgroups -----------------------------------------------------

    @property
    def cyclic_sub_ids(self) -> list:
        """Map element index -> interned id of the cyclic subgroup it generates."""
        if self._cyc_sub_id is None:
            ct = self.ct
            by_cyc = {}
            out = [0] * ct.n
            for x in range(ct.n):
                cid = ct.cyclic_id[x]
                sid = by_cyc.get(cid)
                if sid is None:
                    members = ct.cyclic_subgroups[cid]
                    if len(members) == ct.n:
                        sid = self.full_id
                    else:
                        sid = self.intern(members, (x,))
                    by_cyc[cid] = sid
                out[x] = sid
            self._cyc_sub_id = out
        return self._cyc_sub_id

    # -- joins ---------------------------------------------------------------

    def join_with_element(self, sid: int, z: int) -> int:
        """<H, z> for an interned subgroup H; depends only on <z>."""
        if sid == self.full_id:
            return sid
        zs = self.cyclic_sub_ids[z]
        key = (sid, zs)
        got = self._join_sub_cyc.get(key)
        if got is None:
            if self.members[zs] <= self.members[sid]:
                got = sid
            else:
                got = self.close(self.gens[sid] + (z,))
            self._join_sub_cyc[key] = got
        return got

    def pair_join(self, x: int, y: int) -> int:
        """<x, y> memoized on the unordered pair of cyclic subgroups."""
        cyc = self.cyclic_sub_ids
        a, b = cyc[x], cyc[y]
        if a == b:
            return a
        if a > b:
            a, b = b, a
            x, y = y, x
        key = (a, b)
        got = self._pair_join.get(key)
        if got is None:
            got = self.join_with_element(a, y)
            self._pair_join[key] = got
        return got

    def subgroup_of(self, elems: Sequence[int]) -> int:
        sid = self.trivial_id
        for z in elems:
            sid = self.join_with_element(sid, z)
        return sid

    def coset_reps(self, sid: int) -> tuple:
        """Canonical (minimal) right-coset representatives of H in G."""
        got = self._coset_reps.get(sid)
        if got is None:
            ct = self.ct
            seen = bytearray(ct.n)
            reps = []
            members = self.members[sid]
            table = ct.table
            for z in range(ct.n):
                if not seen[z]:
                    reps.append(z)
                    for h in members:
                        seen[table[h][z]] = 1
            got = tuple(reps)
            self._coset_reps[sid] = got
        return got

    # -- distance to the full group --------------------------------------------

    def dist_to_full(self, sid: int) -> int:
        """Least r with <H, z_1..z_r> = G; drives d_X and rank-graph edges."""
        got = self._dist.get(sid)
        if got is not None:
            return got
        if sid == self.full_id:
            self._dist[sid] = 0
            return 0
        members = self.members[sid]
        neighbours = []
        for z in self.coset_reps(sid):
            if z in members:
                continue
            j = self.join_with_element(sid, z)
            if j == self.full_id:
                self._dist[sid] = 1
                return 1
            neighbours.append(j)
        best = min(self.dist_to_full(j) for j in set(neighbours))
        self._dist[sid] = best + 1
        return best + 1

    def climb_witness(self, sid: int) -> list:
        """Element indices z_1..z_r realizing dist_to_full(sid)."""
        out = []
        cur = sid
        while cur != self.full_id:
            d = self.dist_to_full(cur)
            members = self.members[cur]
            for z in self.coset_reps(cur):
                if z in members:
                    continue
                j = self.join_with_element(cur, z)
                if self.dist_to_full(j) == d - 1:
                    out.append(z)
                    cur = j
                    break
        return out

    # -- conjugacy classes of subgroups -----------------------------------------

    def conjugates(self, members: frozenset) -> list:
        """Orbit of a subgroup under conjugation by the group generators."""
        ct = self.ct
        orbit = {members}
        queue = [members]
        while queue:
            s = queue.pop()
            for g in ct.gen_indices:
                img = frozenset(ct.conj(x, g) for x in s)
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        return sorted(orbit, key=sorted)

    def subgroup_class_reps(self) -> list:
        """One interned id per conjugacy class of subgroups of G.

        Join-closure of cyclic subgroups, deduplicated up to conjugacy:
        every subgroup is a join of cyclic ones, and joining class
        representatives against all cyclic subgroups reaches every class.
        """
        ct = self.ct
        class_of: dict[frozenset, int] = {}
        reps: list[int] = []

        def register(sid: int) -> bool:
            members = self.members[sid]
            if members in class_of:
                return False
            rep_idx = len(reps)
            reps.append(sid)
            for conj in self.conjugates(members):
                class_of[conj] = rep_idx
            return True

        register(self.trivial_id)
        cyclic_ids = sorted(set(self.cyclic_sub_ids))
        queue = [sid for sid in cyclic_ids if register(sid)]
        while queue:
            sid = queue.pop(0)
            if sid == self.full_id:
                continue
            members = self.members[sid]
            for z in range(ct.n):
                if z in members:
                    continue
                j = self.join_with_element(sid, z)
                if self.members[j] not in class_of:
                    register(j)
                    queue.append(j)
        return reps

    def maximal_subgroups(self) -> list:
        """All maximal subgroups, as frozensets of element indices."""
        reps = self.subgroup_class_reps()
        proper = [sid for sid in reps if sid != self.full_id]
        # a class rep is maximal iff every one-element extension is everything
        maximal = []
        for sid in proper:
            members = self.members[sid]
            if all(self.join_with_element(sid, z) == self.full_id
                   for z in self.coset_reps(sid) if z not in members):
                maximal.append(sid)
        out = []
        for sid in maximal:
            out.extend(self.conjugates(self.members[sid]))
        return out


def registry_for(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> SubgroupRegistry:
    ct = G.cayley_table(limits)
    reg = getattr(ct, "_registry", None)
    if reg is None:
        reg = SubgroupRegistry(ct)
        ct._registry = reg
    return reg


# ---------------------------------------------------------------------------
# normal subgroup lattice


@dataclass
class NormalLattice:
    group: PermutationGroup
    normals: list  # all normal subgroups, ascending (order, fingerprint)
    minimal_normals: list

    def orders(self) -> list:
        return [N.order for N in self.normals]


def normal_subgroups(G: PermutationGroup,
                     limits: Limits = DEFAULT_LIMITS) -> NormalLattice:
    """Complete normal-subgroup lattice.

    Normal closures of conjugacy classes are the join-irreducible normal
    subgroups; closing them under joins yields every normal subgroup.
    """
    if G.order > limits.max_normal_lattice:
        raise CapExceededError(
            f"order {G.order} exceeds normal-lattice cap "
            f"{limits.max_normal_lattice}")
    from .perm_core import conjugacy_classes

    atoms = {}
    for cls in conjugacy_classes(G, limits):
        rep = cls[0]
        if rep.is_identity():
            continue
        N = normal_closure(G, [rep])
        key = frozenset(p.images for p in N.elements(limits))
        atoms.setdefault(key, N)

    found = dict(atoms)
    trivial_key = frozenset([G.identity.images])
    frontier = list(atoms.items())
    while frontier:
        new = []
        for key, N in frontier:
            for key2, M in list(found.items()):
                if key2 <= key:
                    continue
                J = PermutationGroup(
                    G.degree, tuple(N.generators) + tuple(M.generators),
                    known_order=G.order)
                jkey = frozenset(p.images for p in J.elements(limits))
                if jkey not in found and jkey != trivial_key:
                    found[jkey] = J
                    new.append((jkey, J))
        frontier = new

    trivial = PermutationGroup(G.degree, ())
    all_normals = {trivial_key: trivial}
    all_normals.update(found)
    full_key = frozenset(p.images for p in G.elements(limits))
    all_normals[full_key] = G

    ordered = sorted(all_normals.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    normals = [N for _, N in ordered]
    keys = [k for k, _ in ordered]
    minimal = []
    for i, (key, N) in enumerate(zip(keys, normals)):
        if len(key) == 1:
            continue
        if not any(1 < len(k2) < len(key) and k2 < key for k2 in keys):
            minimal.append(N)
    return NormalLattice(G, normals, minimal)


def minimal_normal_subgroups(G: PermutationGroup,
                             limits: Limits = DEFAULT_LIMITS) -> list:
    return normal_subgroups(G, limits).minimal_normals


def socle(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> PermutationGroup:
    """Join of all minimal normal subgroups."""
    minimals = minimal_normal_subgroups(G, limits)
    if not minimals:
        return PermutationGroup(G.degree, ())
    gens = []
    for N in minimals:
        gens.extend(N.generators)
    return PermutationGroup(G.degree, gens, known_order=G.order)


def is_simple(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> bool:
    return G.order > 1 and len(normal_subgroups(G, limits).normals) == 2


def is_soluble(G: PermutationGroup) -> bool:
    """Derived series reaches the trivial group."""
    cur = G
    while cur.order > 1:
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            return False
        cur = nxt
    return True


# ---------------------------------------------------------------------------
# Frattini subgroup


def maximal_subgroups(G: PermutationGroup,
                      limits: Limits = DEFAULT_LIMITS) -> list:
    """All maximal subgroups of G (as PermutationGroups), cap-guarded."""
    if G.order > limits.max_maximal_order:
        raise CapExceededError(
            f"order {G.order} exceeds maximal-subgroup cap "
            f"{limits.max_maximal_order}; Frattini not computed")
    if G.order == 1:
        return []
    reg = registry_for(G, limits)
    ct = reg.ct
    out = []
    for members in reg.maximal_subgroups():
        out.append(subgroup_from_members(
            G.degree, [ct.perm(i) for i in sorted(members)]))
    return out


def frattini(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> PermutationGroup:
    """Intersection of all maximal subgroups (the non-generators)."""
    if G.order == 1:
        return PermutationGroup(G.degree, ())
    if G.order > limits.max_maximal_order:
        raise CapExceededError(
            f"order {G.order} exceeds maximal-subgroup cap "
            f"{limits.max_maximal_order}; Frattini not computed")
    reg = registry_for(G, limits)
    ct = reg.ct
    maximals = reg.maximal_subgroups()
    if not maximals:
        return G  # no proper subgroup at all: G trivial handled above
    common = frozenset(range(ct.n))
    for members in maximals:
        common &= members
    return subgroup_from_members(G.degree, [ct.perm(i) for i in sorted(common)])


# ---------------------------------------------------------------------------
# minimal generation


@dataclass
class RankCertificate:
    group: PermutationGroup
    d: int
    witness: tuple  # generating sequence of length d

    def check(self) -> bool:
        from .perm_core import generates
        if self.d == 0:
            return self.group.order == 1
        return generates(self.group, list(self.witness))


def min_rank(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> RankCertificate:
    """d(G) with a witness generating sequence.

    Searches ascending d; conjugacy-class representatives seed the first
    coordinate (generation is invariant under simultaneous conjugation),
    the remaining coordinates use the full deterministic element order via
    the subgroup join engine.
    """
    if G.order == 1:
        return RankCertificate(G, 0, ())
    if G.order <= limits.max_dense_order:
        return _min_rank_dense(G, limits)
    # Large groups: a generating pair plus non-abelianness (which rules
    # out d = 1) certifies d(G) = 2 without enumeration.  The pair search
    # is a fixed-seed random probe; generating pairs are dense whenever
    # they exist at this scale.
    pruned = _prune_generators(G)
    if len(pruned) == 1:
        return RankCertificate(G, 1, tuple(pruned))
    if not G.is_abelian():
        if len(pruned) == 2:
            return RankCertificate(G, 2, tuple(pruned))
        import random
        rng = random.Random(0xC0FFEE)
        for _ in range(300):
            x, y = G.random_element(rng), G.random_element(rng)
            if PermutationGroup(G.degree, [x, y],
                                known_order=G.order).order == G.order:
                return RankCertificate(G, 2, (x, y))
    raise CapExceededError(
        f"order {G.order} exceeds dense cap and no small certificate found")


def _prune_generators(G: PermutationGroup) -> list:
    """Greedy removal of redundant generators (deterministic)."""
    gens = sorted(G.generators)
    keep = list(gens)
    for g in gens:
        candidate = [h for h in keep if h != g]
        if candidate and PermutationGroup(
                G.degree, candidate, known_order=G.order).order == G.order:
            keep = candidate
    return keep


def _min_rank_dense(G: PermutationGroup, limits: Limits) -> RankCertificate:
    reg = registry_for(G, limits)
    ct = reg.ct
    # d = 1: an element of full order
    for cls in ct.classes:
        rep = cls[0]
        if ct.order_of[rep] == ct.n:
            return RankCertificate(G, 1, (ct.perm(rep),))
    # d = 2: class representative x, arbitrary y
    class_reps = sorted((cls[0] for cls in ct.classes),
                        key=lambda r: (-ct.order_of[r], r))
    for x in class_reps:
        for y in range(ct.n):
            if reg.pair_join(x, y) == reg.full_id:
                return RankCertificate(G, 2, (ct.perm(x), ct.perm(y)))
    # d >= 3: shortest climb from a class-representative start
    best = None
    for x in class_reps:
        sid = reg.cyclic_sub_ids[x]
        d = 1 + reg.dist_to_full(sid)
        if best is None or d < best[0]:
            best = (d, x, sid)
    d, x, sid = best
    witness = (ct.perm(x),) + tuple(ct.perm(z) for z in reg.climb_witness(sid))
    return RankCertificate(G, d, witness)


def d_X(G: PermutationGroup, X: Iterable[Permutation],
        limits: Limits = DEFAULT_LIMITS) -> int:
    """Smallest r such that X together with r further elements generates G."""
    reg = registry_for(G, limits)
    ct = reg.ct
    idxs = []
    for p in X:
        i = ct.index.get(p.images)
        if i is None:
            raise GroupArgumentError("X contains an element outside G")
        idxs.append(i)
    return reg.dist_to_full(reg.subgroup_of(idxs))


def gaschutz_lift(G: PermutationGroup, M: PermutationGroup,
                  X: Sequence[Permutation], g: Sequence[Permutation],
                  limits: Limits = DEFAULT_LIMITS) -> tuple:
    """Corrections n_1..n_r in M with <g_1 n_1, ..., g_r n_r, X> = G.

    Preconditions: M normal in G, <g, X, M> = G and r >= d_X(G).  Violated
    preconditions raise PreconditionError; search exhaustion (which the
    lifting lemma rules out) raises WitnessSearchFailure instead.
    """
    if not is_normal(G, M):
        raise PreconditionError("M is not normal in G")
    reg = registry_for(G, limits)
    ct = reg.ct
    try:
        g_idx = [ct.index[p.images] for p in g]
        x_idx = [ct.index[p.images] for p in X]
        m_idx = sorted(ct.subset_indices(M))
    except (KeyError, GroupArgumentError):
        raise PreconditionError("inputs must lie inside G")
    base = reg.subgroup_of(x_idx + g_idx + [z for z in m_idx])
    if base != reg.full_id:
        raise PreconditionError("<g, X, M> is not all of G")
    r = len(g_idx)
    if r < reg.dist_to_full(reg.subgroup_of(x_idx)):
        raise PreconditionError("r < d_X(G)")
    if len(m_idx) ** r > limits.max_search_space:
        raise CapExceededError("correction search space over cap")
    x_sub = reg.subgroup_of(x_idx)
    for combo in itertools.product(m_idx, repeat=r):
        sid = x_sub
        for gi, ni in zip(g_idx, combo):
            sid = reg.join_with_element(sid, ct.table[gi][ni])
        if sid == reg.full_id:
            return tuple(ct.perm(ni) for ni in combo)
    raise WitnessSearchFailure(
        "no correction tuple found; contradicts the lifting lemma")
