"""Permutation arithmetic and permutation-group infrastructure.

Conventions, fixed once and used everywhere:

* Points are 0-based; a permutation of degree n acts on {0, ..., n-1}.
* Products compose left to right: ``(p * q)(i) == q(p(i))``, so in a word
  ``g1 * g2`` the factor ``g1`` acts first.
* Conjugation follows the same convention: ``x ** g == g.inverse() * x * g``.
* Element enumeration is deterministic: elements are ordered
  lexicographically by their image tuples (the identity always comes
  first), so vertex indices, orbit representatives and reports are
  reproducible across runs.

Groups are represented by generators plus a stabilizer-chain certificate
(deterministic Schreier-Sims with base points chosen as the smallest
non-fixed point), which provides order and membership without
enumeration.  Groups and permutations are immutable after construction
and safe to share across parallel workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits


class GroupArgumentError(ValueError):
    """Bad input: degree mismatch, non-bijection, element outside group..."""


class DegreeMismatchError(GroupArgumentError):
    pass


class NotNormalError(GroupArgumentError):
    pass


class PreconditionError(GroupArgumentError):
    """A documented operation precondition does not hold."""


class CapExceededError(RuntimeError):
    """A desk-scale resource cap was exceeded; result not computed."""


class WitnessSearchFailure(RuntimeError):
    """An exhaustive search found no witness where theory promises one.

    Distinct from PreconditionError: callers treat this as a finding
    (theorem violation) rather than a usage error.
    """


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """An immutable permutation stored as its tuple of point images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise GroupArgumentError(
                f"not a permutation of 0..{len(images) - 1}: {images!r}")
        self.images = images

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        """Wrap a trusted image tuple without re-validating."""
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """Build a permutation of the given degree from disjoint cycles."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other.images
        p = self.images
        if len(p) != len(q):
            raise DegreeMismatchError(
                f"degree mismatch: {len(p)} != {len(q)}")
        return Permutation._raw(tuple(q[i] for i in p))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, z: "Permutation") -> "Permutation":
        """self ** z == z^-1 * self * z."""
        return z.inverse() * self * z

    def commutator(self, other: "Permutation") -> "Permutation":
        """[self, other] == self^-1 * other^-1 * self * other."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = _lcm(n, len(cycle))
        return n

    def moved_points(self) -> list:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self) -> list:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(cycle)
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: compose(p, q)(i) == q(p(i))."""
    return p * q


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# stabilizer chains (deterministic Schreier-Sims)


class _Level:
    __slots__ = ("point", "gens", "transversal", "orbit", "done_pairs")

    def __init__(self, point: int, id_images: tuple):
        self.point = point
        self.gens = []  # [(images, inverse images)] added at this level
        self.transversal = {point: (id_images, id_images)}
        self.orbit = [point]  # discovery order; reps are never replaced
        self.done_pairs = set()  # processed (generator images, orbit point)


def _mult(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are always the smallest point moved by the generator that
    created the level, keeping fixtures stable across runs.  If
    ``known_order`` is supplied, construction stops as soon as the product
    of fundamental-orbit sizes reaches it; the product can only reach the
    true order when the chain is complete, so the early exit is sound and
    certifies the order.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 known_order: Optional[int] = None):
        self.degree = degree
        self._id = tuple(range(degree))
        self.levels: list[_Level] = []
        self._known_order = known_order
        for g in generators:
            self.add_generator(g)

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        o = 1
        for lv in self.levels:
            o *= len(lv.transversal)
        return o

    def base(self) -> list:
        return [lv.point for lv in self.levels]

    def strong_generators(self) -> list:
        out = []
        for lv in self.levels:
            out.extend(Permutation._raw(g) for g, _ in lv.gens)
        return out

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(
                f"degree mismatch: {p.degree} != {self.degree}")
        residue, _ = self._sift(p.images, 0)
        return residue == self._id

    def sample(self, rng) -> Permutation:
        """Uniform random element (chain transversals are uniform)."""
        img = self._id
        for lv in self.levels:
            pt = rng.choice(sorted(lv.transversal))
            img = _mult(img, lv.transversal[pt][0])
        return Permutation._raw(img)

    # -- construction ---------------------------------------------------------

    def _done(self) -> bool:
        return self._known_order is not None and self.order() == self._known_order

    def add_generator(self, g: Permutation) -> None:
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"generator degree {g.degree} != chain degree {self.degree}")
        if self._done():
            return
        self._add_images(0, g.images)

    def _sift(self, img: tuple, start: int):
        """Sift img through levels[start:]; return (residue, stuck level)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            entry = lv.transversal.get(img[lv.point])
            if entry is None:
                return img, i
            img = _mult(img, entry[1])
        return img, len(self.levels)

    def _add_images(self, start: int, img: tuple) -> None:
        residue, _ = self._sift(img, start)
        if residue == self._id:
            return
        # Walk the residue down to the first level whose base point it moves;
        # every level on the path sees a genuinely new generator below it and
        # is re-closed on the way back up.
        j = start
        while True:
            if j == len(self.levels):
                point = min(p for p in range(self.degree) if residue[p] != p)
                self.levels.append(_Level(point, self._id))
                break
            if residue[self.levels[j].point] != self.levels[j].point:
                break
            j += 1
        self.levels[j].gens.append((residue, _inv(residue)))
        for i in range(j, start - 1, -1):
            self._extend_orbit(i)
            if self._done():
                return
            self._close_level(i)
            if self._done():
                return

    def _visible_gens(self, i: int) -> list:
        out = []
        for lv in self.levels[i:]:
            out.extend(lv.gens)
        return out

    def _extend_orbit(self, i: int) -> None:
        """Grow the fundamental orbit at level i; existing reps are kept."""
        lv = self.levels[i]
        gens = self._visible_gens(i)
        queue = list(lv.orbit)
        qi = 0
        while qi < len(queue):
            p = queue[qi]
            qi += 1
            u, u_inv = lv.transversal[p]
            for g, g_inv in gens:
                q = g[p]
                if q not in lv.transversal:
                    lv.transversal[q] = (_mult(u, g), _mult(g_inv, u_inv))
                    lv.orbit.append(q)
                    queue.append(q)

    def _close_level(self, i: int) -> None:
        """Sift every unprocessed Schreier generator of level i downwards."""
        lv = self.levels[i]
        while True:
            pending = []
            for g, g_inv in self._visible_gens(i):
                for p in lv.orbit:
                    if (g, p) not in lv.done_pairs:
                        pending.append((g, p))
            if not pending:
                return
            for g, p in pending:
                if (g, p) in lv.done_pairs:
                    continue
                lv.done_pairs.add((g, p))
                u = lv.transversal[p][0]
                x = _mult(u, g)  # maps base point to g(p)
                schreier = _mult(x, lv.transversal[x[lv.point]][1])
                if schreier != self._id:
                    self._add_images(i + 1, schreier)
                    if self._done():
                        return


# ---------------------------------------------------------------------------
# permutation groups


class PermutationGroup:
    """A finite permutation group given by generators with a chain certificate."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 known_order: Optional[int] = None,
                 _chain: Optional[StabilizerChain] = None):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} != group degree {degree}")
            if g.is_identity() or g.images in seen:
                continue
            seen.add(g.images)
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._chain = _chain if _chain is not None else StabilizerChain(
            degree, gens, known_order)
        self._order = self._chain.order()
        self._elements: Optional[tuple] = None
        self._cayley = None  # lazy CayleyTable

    # -- basics ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self._order == 1

    def __contains__(self, p: Permutation) -> bool:
        return self._chain.contains(p)

    def contains(self, p: Permutation) -> bool:
        return self._chain.contains(p)

    def contains_group(self, other: "PermutationGroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_group(self, other: "PermutationGroup") -> bool:
        return (self.order == other.order and self.contains_group(other))

    def random_element(self, rng) -> Permutation:
        return self._chain.sample(rng)

    def __repr__(self) -> str:
        return (f"PermutationGroup(degree={self.degree}, order={self._order}, "
                f"ngens={len(self.generators)})")

    # -- element enumeration ----------------------------------------------------

    def elements(self, limits: Limits = DEFAULT_LIMITS) -> tuple:
        """All elements in deterministic (lexicographic) order."""
        if self._elements is None:
            if self._order > limits.max_elements:
                raise CapExceededError(
                    f"order {self._order} exceeds enumeration cap "
                    f"{limits.max_elements}")
            seen = {self.identity.images}
            frontier = [self.identity.images]
            gen_images = [g.images for g in self.generators]
            while frontier:
                new = []
                for img in frontier:
                    for g in gen_images:
                        prod = tuple(g[i] for i in img)
                        if prod not in seen:
                            seen.add(prod)
                            new.append(prod)
                frontier = new
            self._elements = tuple(
                Permutation._raw(img) for img in sorted(seen))
        return self._elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a, b in
                   itertools.combinations_with_replacement(gens, 2))

    def cayley_table(self, limits: Limits = DEFAULT_LIMITS) -> "CayleyTable":
        if self._cayley is None:
            self._cayley = CayleyTable(self, limits)
        return self._cayley


def group_from_generators(degree: int, gens: Iterable[Permutation],
                          known_order: Optional[int] = None) -> PermutationGroup:
    """Build a group with a fresh stabilizer chain; empty gens give the trivial group."""
    return PermutationGroup(degree, gens, known_order=known_order)


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup(degree, ())


def contains(G: PermutationGroup, p: Permutation) -> bool:
    """Membership via sifting through the stabilizer chain."""
    return G.contains(p)


def generates(G: PermutationGroup, elems: Iterable[Permutation]) -> bool:
    """True iff the given elements of G generate all of G."""
    elems = list(elems)
    for p in elems:
        if not G.contains(p):
            raise GroupArgumentError(
                f"element {p.cycle_string()} lies outside the group")
    chain = StabilizerChain(G.degree, elems, known_order=G.order)
    return chain.order() == G.order


def elements(G: PermutationGroup, limits: Limits = DEFAULT_LIMITS) -> tuple:
    return G.elements(limits)


def conjugacy_classes(G: PermutationGroup,
                      limits: Limits = DEFAULT_LIMITS) -> list:
    """Conjugacy classes as sorted element lists, smallest representative first.

    Classes are orbits of the generator-conjugation action; the class list
    is ordered by each class's minimal element, so output is deterministic.
    """
    elems = G.elements(limits)
    index = {p.images: i for i, p in enumerate(elems)}
    assigned = [False] * len(elems)
    classes = []
    gen_pairs = [(g.images, g.inverse().images) for g in G.generators]
    for i, p in enumerate(elems):
        if assigned[i]:
            continue
        orbit = {i}
        queue = [p.images]
        assigned[i] = True
        while queue:
            img = queue.pop()
            for g, g_inv in gen_pairs:
                conj = _mult(_mult(g_inv, img), g)
                j = index[conj]
                if not assigned[j]:
                    assigned[j] = True
                    orbit.add(j)
                    queue.append(conj)
        classes.append([elems[j] for j in sorted(orbit)])
    return classes


def centralizer(G: PermutationGroup, p: Permutation,
                limits: Limits = DEFAULT_LIMITS) -> PermutationGroup:
    """The subgroup of G commuting with p (brute scan, cap-guarded)."""
    if not G.contains(p):
        raise GroupArgumentError("element lies outside the group")
    members = [g for g in G.elements(limits) if g * p == p * g]
    return subgroup_from_members(G.degree, members)


def subgroup_from_members(degree: int, members: Sequence[Permutation]) -> PermutationGroup:
    """Group on the given member list, with a reduced generating set."""
    chain = StabilizerChain(degree)
    gens = []
    target = len(members)
    for g in members:
        if chain.order() == target:
            break
        if not chain.contains(g):
            chain.add_generator(g)
            gens.append(g)
    return PermutationGroup(degree, gens, _chain=chain)


def normal_closure(G: PermutationGroup, seeds: Iterable[Permutation]) -> PermutationGroup:
    """Smallest normal subgroup of G containing the seed elements."""
    chain = StabilizerChain(G.degree)
    gens = []
    queue = []
    for s in seeds:
        if not G.contains(s):
            raise GroupArgumentError("seed element lies outside the group")
        if not s.is_identity() and not chain.contains(s):
            chain.add_generator(s)
            gens.append(s)
            queue.append(s)
    while queue:
        s = queue.pop()
        for g in G.generators:
            c = s.conjugate(g)
            if not chain.contains(c):
                chain.add_generator(c)
                gens.append(c)
                queue.append(c)
    return PermutationGroup(G.degree, gens, _chain=chain)


def is_normal(G: PermutationGroup, H: PermutationGroup) -> bool:
    """True iff H (a subgroup of G) is normalized by G."""
    if not G.contains_group(H):
        raise GroupArgumentError("H is not contained in G")
    return all(H.contains(h.conjugate(g))
               for h in H.generators for g in G.generators)


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    """Commutator subgroup [G, G]."""
    comms = [a.commutator(b) for a in G.generators for b in G.generators]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


# ---------------------------------------------------------------------------
# homomorphisms and quotients


class Homomorphism:
    """A homomorphism between permutation groups, given on generators.

    The generic construction extends the generator images by
    multiplication closure over the source (cap-guarded) and fails loudly
    if the images are inconsistent.  Quotient projections use a direct
    coset formula instead and need no table.
    """

    def __init__(self, source: PermutationGroup, target: PermutationGroup,
                 gen_images: Sequence, _apply=None):
        self.source = source
        self.target = target
        self.gen_images = tuple(gen_images)  # aligned with source.generators
        if len(self.gen_images) != len(source.generators):
            raise GroupArgumentError(
                "need exactly one image per source generator")
        self._apply = _apply
        self._table = None

    def _build_table(self, limits: Limits = DEFAULT_LIMITS) -> dict:
        if self._table is None:
            table = {self.source.identity.images: self.target.identity.images}
            frontier = [self.source.identity.images]
            pairs = [(g.images, h.images)
                     for g, h in zip(self.source.generators, self.gen_images)]
            if self.source.order > limits.max_elements:
                raise CapExceededError("source too large for table extension")
            while frontier:
                new = []
                for img in frontier:
                    out = table[img]
                    for g, h in pairs:
                        prod = tuple(g[i] for i in img)
                        mapped = tuple(h[i] for i in out)
                        known = table.get(prod)
                        if known is None:
                            table[prod] = mapped
                            new.append(prod)
                        elif known != mapped:
                            raise GroupArgumentError(
                                "generator images do not extend to a "
                                "homomorphism")
                frontier = new
            self._table = table
        return self._table

    def apply(self, p: Permutation) -> Permutation:
        if self._apply is not None:
            return self._apply(p)
        table = self._build_table()
        img = table.get(p.images)
        if img is None:
            raise GroupArgumentError("element lies outside the source group")
        return Permutation._raw(img)

    def __call__(self, p: Permutation) -> Permutation:
        return self.apply(p)

    def image_group(self) -> PermutationGroup:
        return PermutationGroup(self.target.degree, self.gen_images)


def quotient(G: PermutationGroup, N: PermutationGroup,
             limits: Limits = DEFAULT_LIMITS):
    """Faithful permutation action of G/N on right cosets of N.

    Returns (quotient group, projection homomorphism).  For normal N the
    kernel of the coset action is exactly N, so the image order is
    |G|/|N|; this is asserted.  Coset indices follow the lexicographic
    order of canonical (minimal) coset representatives.
    """
    if not is_normal(G, N):
        raise NotNormalError("N is not a normal subgroup of G")
    n_elems = [p.images for p in N.elements(limits)]

    def canonical(img: tuple) -> tuple:
        return min(_mult(n, img) for n in n_elems)

    # discover cosets by right multiplication with generators
    start = canonical(G.identity.images)
    reps = {start}
    frontier = [start]
    gen_images = [g.images for g in G.generators]
    while frontier:
        new = []
        for rep in frontier:
            for g in gen_images:
                c = canonical(_mult(rep, g))
                if c not in reps:
                    reps.add(c)
                    new.append(c)
        frontier = new
    rep_list = sorted(reps)
    rep_index = {rep: i for i, rep in enumerate(rep_list)}
    index = len(rep_list)

    def project_images(img: tuple) -> tuple:
        return tuple(rep_index[canonical(_mult(rep, img))] for rep in rep_list)

    gen_imgs = [Permutation._raw(project_images(g)) for g in gen_images]
    Q = PermutationGroup(index, gen_imgs, known_order=G.order // N.order)
    if Q.order * N.order != G.order:
        raise GroupArgumentError(
            "coset action order mismatch; N is not normal in G")

    identity_coset = rep_index[start]

    def apply(p: Permutation) -> Permutation:
        return Permutation._raw(project_images(p.images))

    hom = Homomorphism(G, Q, gen_imgs, _apply=apply)
    hom.coset_representatives = tuple(Permutation._raw(r) for r in rep_list)
    hom.identity_coset = identity_coset
    return Q, hom


# ---------------------------------------------------------------------------
# dense element tables


class CayleyTable:
    """Index-level view of a small group: elements, products, classes.

    Everything downstream that has to touch all |G|^2 pairs (generation
    tests, conjugacy, centralizers, subgroup joins) runs on integer
    indices into the deterministic element order instead of permutation
    objects.
    """

    def __init__(self, G: PermutationGroup, limits: Limits = DEFAULT_LIMITS):
        if G.order > limits.max_dense_order:
            raise CapExceededError(
                f"order {G.order} exceeds dense-table cap "
                f"{limits.max_dense_order}")
        self.group = G
        self.elements = G.elements(limits)
        n = len(self.elements)
        self.n = n
        self.index = {p.images: i for i, p in enumerate(self.elements)}
        images = [p.images for p in self.elements]
        idx = self.index
        self.table = [
            [idx[tuple(q[i] for i in pimg)] for q in images] for pimg in images
        ]
        self.inv = [0] * n
        for i, pimg in enumerate(images):
            self.inv[idx[_inv(pimg)]] = i
        self.identity = idx[tuple(range(G.degree))]  # == 0 by lex order
        self.gen_indices = tuple(idx[g.images] for g in G.generators)

        # element orders
        self.order_of = [0] * n
        for i in range(n):
            k, x = 1, i
            while x != self.identity:
                x = self.table[x][i]
                k += 1
            self.order_of[i] = k

        self._cyclic_id = None
        self._cyclics = None
        self._class_id = None
        self._classes = None
        self._centralizer_sets = {}
        self._np_table = None

    # -- cyclic subgroups ---------------------------------------------------

    def _build_cyclics(self):
        cyc_id = [-1] * self.n
        cyclics = []
        for i in range(self.n):
            if cyc_id[i] >= 0:
                continue
            members = [self.identity]
            x = i
            while x != self.identity:
                members.append(x)
                x = self.table[x][i]
            key = frozenset(members)
            cid = len(cyclics)
            cyclics.append(key)
            for m in members:
                # only elements generating the same cyclic subgroup share the id
                if cyc_id[m] < 0 and self._generates_cyclic(m, key):
                    cyc_id[m] = cid
        self._cyclic_id = cyc_id
        self._cyclics = cyclics

    def _generates_cyclic(self, x: int, key: frozenset) -> bool:
        count = 1
        y = x
        while y != self.identity:
            count += 1
            y = self.table[y][x]
        return count == len(key)

    @property
    def cyclic_id(self) -> list:
        if self._cyclic_id is None:
            self._build_cyclics()
        return self._cyclic_id

    @property
    def cyclic_subgroups(self) -> list:
        if self._cyclics is None:
            self._build_cyclics()
        return self._cyclics

    # -- conjugacy ------------------------------------------------------------

    def _build_classes(self):
        class_id = [-1] * self.n
        classes = []
        gens = list(self.gen_indices)
        inv = self.inv
        table = self.table
        for i in range(self.n):
            if class_id[i] >= 0:
                continue
            cid = len(classes)
            members = [i]
            class_id[i] = cid
            queue = [i]
            while queue:
                x = queue.pop()
                for g in gens:
                    y = table[table[inv[g]][x]][g]
                    if class_id[y] < 0:
                        class_id[y] = cid
                        members.append(y)
                        queue.append(y)
            classes.append(tuple(sorted(members)))
        self._class_id = class_id
        self._classes = classes

    @property
    def class_id(self) -> list:
        if self._class_id is None:
            self._build_classes()
        return self._class_id

    @property
    def classes(self) -> list:
        if self._classes is None:
            self._build_classes()
        return self._classes

    def class_size(self, x: int) -> int:
        return len(self.classes[self.class_id[x]])

    # -- helpers ----------------------------------------------------------------

    def conj(self, x: int, g: int) -> int:
        """Index of g^-1 * x * g."""
        return self.table[self.table[self.inv[g]][x]][g]

    def centralizer_set(self, x: int) -> frozenset:
        got = self._centralizer_sets.get(x)
        if got is None:
            row = self.table[x]
            got = frozenset(
                y for y in range(self.n) if row[y] == self.table[y][x])
            self._centralizer_sets[x] = got
        return got

    def numpy_table(self):
        if self._np_table is None:
            import numpy as np
            self._np_table = np.array(self.table, dtype=np.int32)
        return self._np_table

    def perm(self, i: int) -> Permutation:
        return self.elements[i]

    def subset_indices(self, H: PermutationGroup) -> frozenset:
        """Indices of a subgroup's elements inside this table."""
        out = []
        for p in H.elements():
            i = self.index.get(p.images)
            if i is None:
                raise GroupArgumentError("subgroup not contained in group")
            out.append(i)
        return frozenset(out)
