"""Intersection lattices, lattice isomorphism, and combinatorial genericity."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .arrangement import Arrangement
from .linalg import rank
from .poly import LinearForm

MAX_LATTICE_SIZE = 20


@dataclass(frozen=True)
class Flat:
    """An intersection subspace, identified by the hyperplanes containing it."""

    members: frozenset[int]
    rank: int


@dataclass
class Lattice:
    A: Arrangement
    flats: list[Flat] = field(default_factory=list)

    def by_rank(self) -> dict[int, list[Flat]]:
        out: dict[int, list[Flat]] = {}
        for X in self.flats:
            out.setdefault(X.rank, []).append(X)
        return out

    @property
    def top_rank(self) -> int:
        return max(X.rank for X in self.flats)


def _rank_of(A: Arrangement, members: frozenset[int]) -> int:
    return rank([A.forms[i].coeffs for i in sorted(members)], A.ell)


def _closure(A: Arrangement, members: frozenset[int]) -> frozenset[int]:
    rows = [A.forms[i].coeffs for i in sorted(members)]
    r = rank(rows, A.ell)
    closed = set(members)
    for j in range(A.size):
        if j in closed:
            continue
        if rank(rows + [A.forms[j].coeffs], A.ell) == r:
            closed.add(j)
    return frozenset(closed)


def build_lattice(A: Arrangement) -> Lattice:
    """All intersection flats, found breadth-first by rank.

    Guarded at MAX_LATTICE_SIZE hyperplanes: flat counts grow quickly and
    everything downstream only needs desk-scale inputs.
    """
    if A.size > MAX_LATTICE_SIZE:
        raise ValueError(f"lattice construction is limited to {MAX_LATTICE_SIZE} hyperplanes")
    flats = [Flat(frozenset(), 0)]
    current: dict[frozenset[int], int] = {frozenset(): 0}
    seen = {frozenset()}
    r = 0
    while current:
        nxt: dict[frozenset[int], int] = {}
        for members in current:
            for j in range(A.size):
                if j in members:
                    continue
                cand = members | {j}
                new_rank = _rank_of(A, cand)
                if new_rank != r + 1:
                    continue
                closed = _closure(A, cand)
                if closed not in seen:
                    seen.add(closed)
                    nxt[closed] = new_rank
        for members, rk in sorted(nxt.items(), key=lambda kv: sorted(kv[0])):
            flats.append(Flat(frozenset(members), rk))
        current = nxt
        r += 1
    return Lattice(A, flats)


def lattice_summary(L: Lattice) -> dict:
    """JSON-friendly shape of the lattice: counts by rank, codim-2 multiplicities."""
    by_rank = L.by_rank()
    rank_counts = {str(r): len(flats) for r, flats in sorted(by_rank.items())}
    profile = Counter(len(X.members) for X in by_rank.get(2, []))
    return {
        "n": L.A.size,
        "ell": L.A.ell,
        "rank": L.top_rank,
        "flat_counts": rank_counts,
        "codim2_multiplicities": {str(m): c for m, c in sorted(profile.items())},
    }


def _atom_signature(L: Lattice) -> list[tuple]:
    """Per-hyperplane invariant: multiset of (rank, flat size) over incident flats."""
    sigs: list[Counter] = [Counter() for _ in range(L.A.size)]
    for X in L.flats:
        key = (X.rank, len(X.members))
        for i in X.members:
            sigs[i][key] += 1
    return [tuple(sorted(s.items())) for s in sigs]


def _flat_sets(L: Lattice) -> set[frozenset[int]]:
    return {X.members for X in L.flats}


def _induced_ok(perm: list[int], F1: set[frozenset[int]], F2: set[frozenset[int]]) -> bool:
    for X in F1:
        if frozenset(perm[i] for i in X) not in F2:
            return False
    return True


def isomorphic(A1: Arrangement, A2: Arrangement) -> tuple[bool, list[int] | None]:
    """Lattice isomorphism via a hyperplane relabeling.

    Returns (answer, witness) where witness[i] is the index in A2 matched to
    hyperplane i of A1.  The identity relabeling is tried before the search,
    since paired inputs usually arrive aligned.
    """
    if A1.size != A2.size:
        return False, None
    L1, L2 = build_lattice(A1), build_lattice(A2)
    c1 = Counter((X.rank, len(X.members)) for X in L1.flats)
    c2 = Counter((X.rank, len(X.members)) for X in L2.flats)
    if c1 != c2:
        return False, None
    F1, F2 = _flat_sets(L1), _flat_sets(L2)
    n = A1.size

    identity = list(range(n))
    if _induced_ok(identity, F1, F2):
        return True, identity

    sig1, sig2 = _atom_signature(L1), _atom_signature(L2)
    if sorted(sig1) != sorted(sig2):
        return False, None

    pair_size1: dict[frozenset[int], int] = {}
    pair_size2: dict[frozenset[int], int] = {}
    for L, table in ((L1, pair_size1), (L2, pair_size2)):
        for X in L.flats:
            if X.rank == 2:
                for i in X.members:
                    for j in X.members:
                        if i < j:
                            table[frozenset((i, j))] = len(X.members)

    order = sorted(range(n), key=lambda i: (sig1[i], i))
    perm: list[int] = [-1] * n
    used = [False] * n

    def place(k: int) -> bool:
        if k == n:
            return _induced_ok(perm, F1, F2)
        i = order[k]
        for j in range(n):
            if used[j] or sig1[i] != sig2[j]:
                continue
            ok = True
            for i2 in order[:k]:
                s1 = pair_size1.get(frozenset((i, i2)))
                s2 = pair_size2.get(frozenset((j, perm[i2])))
                if s1 != s2:
                    ok = False
                    break
            if not ok:
                continue
            perm[i] = j
            used[j] = True
            if place(k + 1):
                return True
            perm[i] = -1
            used[j] = False
        return False

    if place(0):
        return True, perm
    return False, None


def _transverse(A: Arrangement, L: Lattice, H: LinearForm) -> bool:
    Hn = H.normalized()
    for X in L.flats:
        if X.rank < 2 or X.rank == A.ell:
            continue
        rows = [A.forms[i].coeffs for i in sorted(X.members)]
        if rank(rows + [Hn.coeffs], A.ell) == X.rank:
            return False
    return True


def comb_generic(A: Arrangement, H: LinearForm) -> bool:
    """Combinatorial genericity of H relative to A.

    True when H cuts every flat properly: no intersection of two or more
    hyperplanes, other than the origin, lies inside H.  In rank 3 this says
    H misses every intersection point; in higher rank it is the general
    position the coning towers need from their shared hyperplane.
    """
    if A.index_of(H) is not None:
        return False
    return _transverse(A, build_lattice(A), H)


def generic_sample(A: Arrangement, seed: int = 0) -> LinearForm:
    """Deterministic small-integer form certified combinatorially generic."""
    rng = random.Random(seed)
    ctx = A.ctx
    L = build_lattice(A)
    for trial in range(10000):
        bound = 5 + trial // 10
        coeffs = [ctx.from_int(rng.randint(1, bound)) for _ in range(A.ell)]
        H = LinearForm(coeffs).normalized()
        if A.index_of(H) is None and _transverse(A, L, H):
            return H
    raise RuntimeError("no combinatorially generic form found")


def restrict_tower(H: LinearForm, k: int) -> LinearForm:
    """Truncate H to its first k coordinates (the section by x_j = 0 for j > k)."""
    if not 1 <= k <= len(H.coeffs):
        raise ValueError("truncation length out of range")
    head = H.coeffs[:k]
    if not any(head):
        raise ValueError("truncation of H is the zero form")
    return LinearForm(head)
