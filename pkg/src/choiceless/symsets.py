"""Finitely supported subsets of the atom line.

A subset of the atoms is stored as a finite support E plus a selection
of 1-types over E; its denotation is the union of the selected types'
realizer sets.  Over a fixed support the types are enumerated in a
frozen canonical order, so every supported subset has a canonical bit
vector, a canonical rank, and a decidable equality.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .atoms import (
    CATEGORICAL,
    DENSE_ORDER,
    PAIR_MODEL,
    PURE_SET,
    Atom,
    AtomStructure,
    CategoricalStructure,
    LevelBudgetExceeded,
    LiftedAutomorphism,
    PairStructure,
    StructureMismatch,
    atom_from_json,
    atom_to_json,
)

DEFAULT_PAIR_LEVEL_BOUND = 3


def sort_support(structure: AtomStructure, atoms: Iterable[Atom]) -> Tuple[Atom, ...]:
    atoms = list(dict.fromkeys(atoms))
    structure.check_owns(*atoms)
    if structure.kind == CATEGORICAL:
        return tuple(structure.sorted_by_order(atoms))
    return tuple(sorted(atoms, key=lambda a: a.sort_key()))


class OneType:
    """One orbit of the pointwise stabiliser of a support, as a
    descriptor.  Distinct types over the same support have disjoint
    realizer sets, and together they cover all atoms."""

    __slots__ = ("world", "support", "desc", "witness")

    def __init__(self, world, support, desc, witness: Optional[Atom] = None):
        self.world = world
        self.support = tuple(support)
        self.desc = desc
        self.witness = witness  # pair model only; not part of identity

    def __eq__(self, other):
        return (
            isinstance(other, OneType)
            and self.world == other.world
            and self.support == other.support
            and self.desc == other.desc
        )

    def __hash__(self):
        return hash((self.world, self.support, self.desc))

    def __repr__(self):
        return f"OneType({self.desc})"

    def holds(self, structure: AtomStructure, atom: Atom) -> bool:
        structure.check_owns(atom)
        E = self.support
        if self.world == PURE_SET:
            if self.desc[0] == "eq":
                return atom == E[self.desc[1]]
            return atom not in E
        if self.world == DENSE_ORDER:
            if self.desc[0] == "eq":
                return atom == E[self.desc[1]]
            if atom in E:
                return False
            below = sum(1 for e in E if e.payload < atom.payload)
            return below == self.desc[1]
        if self.world == PAIR_MODEL:
            return pair_orbit_descriptor(atom, E) == self.desc
        assert isinstance(structure, CategoricalStructure)
        if self.desc[0] == "eq":
            return atom == E[self.desc[1]]
        if atom in E:
            return False
        _, gap, rels = self.desc
        below = sum(1 for e in E if structure.lt(e, atom))
        if below != gap:
            return False
        for f in _cat_rel_formulas(len(E)):
            holds = structure.formula_holds(_instantiate(f, E), atom)
            if holds != (f in rels):
                return False
        return True


# -- categorical formula plumbing -------------------------------------------


@lru_cache(maxsize=None)
def _cat_rel_formulas(n: int) -> Tuple[tuple, ...]:
    """Local relation formulas over n parameters, in frozen order: a
    duplicate-free parameter sequence plus an insertion slot for x."""
    out = []
    for m in range(n + 1):
        for seq in itertools.permutations(range(n), m):
            for i in range(m + 1):
                out.append(("rel", m, i, seq))
    out.sort(key=lambda f: (f[1], f[3], f[2]))
    return tuple(out)


def _instantiate(local, E: Sequence[Atom]):
    _, m, i, seq = local
    return ("rel", m, i, tuple(E[j] for j in seq))


def pair_orbit_descriptor(atom: Atom, fixed: Sequence[Atom]):
    """Canonical descriptor of an atom's orbit under the automorphisms
    fixing `fixed` pointwise.  Base atoms outside the pinned closure
    become numbered slots; bits at levels not pinned by `fixed` are
    recorded relative to the first occurrence of that level."""
    pinned = PairStructure.pinned_levels(fixed)
    bases = PairStructure.fixed_bases(fixed)
    slots: Dict[Atom, int] = {}
    flips: Dict[int, int] = {}

    def go(a: Atom):
        if a.level == 0:
            if a in bases:
                return ("fix", a.payload)
            if a not in slots:
                slots[a] = len(slots)
            return ("slot", slots[a])
        lvl, (x, y), eps = a.payload
        if lvl in pinned:
            bd = ("bit", eps)
        else:
            if lvl not in flips:
                flips[lvl] = eps
            bd = ("rel", eps ^ flips[lvl])
        return ("nd", lvl, bd, go(x), go(y))

    return go(atom)


# -- type enumeration --------------------------------------------------------


# type lists for the bare set, the dense order and the homogeneous
# structure depend only on the support (fresh atoms never change the
# facts among existing ones), so they are cached per structure
_TYPES_CACHE: Dict[tuple, List["OneType"]] = {}


def types_over(
    structure: AtomStructure,
    support: Iterable[Atom],
    pair_level_bound: int = DEFAULT_PAIR_LEVEL_BOUND,
) -> List[OneType]:
    """The duplicate-free list of realized 1-types over the support, in
    canonical order.  Lengths: n+1 for the bare set, 2n+1 for the dense
    order; for the homogeneous structure the list enumerates every
    consistent combination of equality slot, order gap and relation
    facts; for the pair model it enumerates the orbits realized by the
    materialised universe up to the level bound."""
    E = sort_support(structure, support)
    if structure.kind != PAIR_MODEL:
        cache_key = (structure._uid, structure.kind, tuple(a.payload for a in E))
        hit = _TYPES_CACHE.get(cache_key)
        if hit is not None:
            return hit
        out = _compute_types(structure, E)
        _TYPES_CACHE[cache_key] = out
        return out
    return _compute_types(structure, E, pair_level_bound)


def _compute_types(
    structure: AtomStructure,
    E: Tuple[Atom, ...],
    pair_level_bound: int = DEFAULT_PAIR_LEVEL_BOUND,
) -> List[OneType]:
    n = len(E)
    kind = structure.kind
    out: List[OneType] = []
    if kind == PURE_SET:
        for j in range(n):
            out.append(OneType(kind, E, ("eq", j)))
        out.append(OneType(kind, E, ("free",)))
        return out
    if kind == DENSE_ORDER:
        # geometric left-to-right order: gap 0, e0, gap 1, e1, ..., gap n
        out.append(OneType(kind, E, ("gap", 0)))
        for j in range(n):
            out.append(OneType(kind, E, ("eq", j)))
            out.append(OneType(kind, E, ("gap", j + 1)))
        return out
    if kind == CATEGORICAL:
        for j in range(n):
            out.append(OneType(kind, E, ("eq", j), witness=E[j]))
        formulas = _cat_rel_formulas(n)
        for gap in range(n + 1):
            for mask in range(1 << len(formulas)):
                rels = frozenset(
                    f for k, f in enumerate(formulas) if mask >> k & 1
                )
                out.append(OneType(kind, E, ("typ", gap, rels)))
        return out
    assert kind == PAIR_MODEL
    seen: Dict[tuple, OneType] = {}
    for atom in structure.atoms():
        if atom.level > pair_level_bound:
            raise LevelBudgetExceeded(
                f"atom of level {atom.level} exceeds the type bound {pair_level_bound}"
            )
        desc = pair_orbit_descriptor(atom, E)
        if desc not in seen:
            seen[desc] = OneType(kind, E, desc, witness=atom)
    return [seen[d] for d in sorted(seen)]


def count_supported(structure: AtomStructure, support: Iterable[Atom]) -> int:
    """Number of subsets of the atom line admitting this support."""
    return 1 << len(types_over(structure, support))


def count_least_supported(structure: AtomStructure, support: Iterable[Atom]) -> int:
    """Number of subsets whose smallest support is exactly this set."""
    E = sort_support(structure, support)

    def rec(sub: Tuple[Atom, ...], memo) -> int:
        if sub in memo:
            return memo[sub]
        total = count_supported(structure, sub)
        for k in range(len(sub)):
            for smaller in itertools.combinations(sub, k):
                total -= rec(smaller, memo)
        memo[sub] = total
        return total

    return rec(E, {})


# -- supported subsets --------------------------------------------------------


class SupportedSubset:
    """A subset of the atoms with an explicit finite support."""

    __slots__ = ("structure", "support", "selected", "_ckey", "_least")

    def __init__(
        self,
        structure: AtomStructure,
        support: Iterable[Atom],
        selected: Iterable[OneType],
    ):
        self.structure = structure
        self.support = sort_support(structure, support)
        selected = frozenset(selected)
        legal = set(types_over(structure, self.support))
        if not selected <= legal:
            raise ValueError("selected types must be types over the support")
        self.selected = selected
        self._ckey = None
        self._least = None

    # construction helpers

    @staticmethod
    def from_bits(structure, support, bits) -> "SupportedSubset":
        ts = types_over(structure, support)
        if isinstance(bits, str):
            if len(bits) != len(ts):
                raise ValueError("bit string length must match the type count")
            chosen = [t for t, b in zip(ts, bits) if b == "1"]
        else:
            chosen = [t for k, t in enumerate(ts) if bits >> k & 1]
        return SupportedSubset(structure, support, chosen)

    @staticmethod
    def empty(structure) -> "SupportedSubset":
        return SupportedSubset(structure, (), ())

    @staticmethod
    def all_atoms(structure) -> "SupportedSubset":
        return SupportedSubset(structure, (), types_over(structure, ()))

    @staticmethod
    def of_atoms(structure, atoms: Iterable[Atom]) -> "SupportedSubset":
        atoms = list(atoms)
        E = sort_support(structure, atoms)
        chosen = [
            t for t in types_over(structure, E) if any(t.holds(structure, a) for a in atoms)
        ]
        return SupportedSubset(structure, E, chosen)

    # basic views

    def types(self) -> List[OneType]:
        return types_over(self.structure, self.support)

    def bits(self) -> str:
        return "".join("1" if t in self.selected else "0" for t in self.types())

    def bits_int(self) -> int:
        v = 0
        for k, t in enumerate(self.types()):
            if t in self.selected:
                v |= 1 << k
        return v

    def contains(self, atom: Atom) -> bool:
        return any(t.holds(self.structure, atom) for t in self.selected)

    def denote(self, pool: Optional[Iterable[Atom]] = None) -> List[Atom]:
        pool = list(pool) if pool is not None else self.structure.atoms()
        return [a for a in pool if self.contains(a)]

    def __repr__(self):
        return f"SupportedSubset({self.support}, bits={self.bits()})"

    # re-encoding and equality

    def reencode(self, support: Iterable[Atom]) -> "SupportedSubset":
        """The same subset presented over a larger support."""
        big = sort_support(self.structure, tuple(self.support) + tuple(support))
        if not set(self.support) <= set(big):
            raise ValueError("new support must contain the old one")
        chosen = []
        for t in types_over(self.structure, big):
            r = restrict_type(self.structure, t, self.support)
            if r in self.selected:
                chosen.append(t)
        return SupportedSubset(self.structure, big, chosen)

    def is_supported_by(self, candidate: Iterable[Atom]) -> bool:
        """Is the (sub)set of atoms `candidate` already a support?"""
        sub = sort_support(self.structure, candidate)
        if not set(sub) <= set(self.support):
            return self.reencode(sub).is_supported_by(sub)
        groups: Dict[OneType, bool] = {}
        for t in self.types():
            r = restrict_type(self.structure, t, sub)
            chosen = t in self.selected
            if groups.setdefault(r, chosen) != chosen:
                return False
        return True

    def canonical(self) -> "SupportedSubset":
        return _shrink(self, least_support(self))

    def canonical_key(self) -> tuple:
        if self._ckey is None:
            c = self.canonical()
            self._ckey = (
                c.structure.kind,
                tuple(a.sort_key() for a in c.support),
                c.bits(),
            )
        return self._ckey

    def __eq__(self, other):
        if not isinstance(other, SupportedSubset):
            return NotImplemented
        if self.structure is not other.structure:
            return False
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    # boolean algebra over a common support

    def complement(self) -> "SupportedSubset":
        others = [t for t in self.types() if t not in self.selected]
        return SupportedSubset(self.structure, self.support, others)

    def _aligned(self, other: "SupportedSubset"):
        E = tuple(set(self.support) | set(other.support))
        return self.reencode(E), other.reencode(E)

    def union(self, other: "SupportedSubset") -> "SupportedSubset":
        a, b = self._aligned(other)
        return SupportedSubset(a.structure, a.support, a.selected | b.selected)

    def intersection(self, other: "SupportedSubset") -> "SupportedSubset":
        a, b = self._aligned(other)
        return SupportedSubset(a.structure, a.support, a.selected & b.selected)

    # group action

    def apply(self, pi: LiftedAutomorphism) -> "SupportedSubset":
        s = self.structure
        imgs = {e: pi.apply(e) for e in self.support}
        new_support = sort_support(s, imgs.values())
        if s.kind == PAIR_MODEL:
            chosen = []
            for t in types_over(s, new_support):
                w = t.witness
                # selected iff the preimage orbit was selected; probe via witness
                pre = _preimage(pi, w)
                if pre is not None and self.contains(pre):
                    chosen.append(t)
            return SupportedSubset(s, new_support, chosen)
        # order (and id-order for the bare set) may be rearranged: track indices
        old_index = {e: k for k, e in enumerate(self.support)}
        perm = {old_index[e]: new_support.index(imgs[e]) for e in self.support}
        chosen = [
            _map_type_desc(s, t, perm, new_support) for t in self.selected
        ]
        return SupportedSubset(s, new_support, chosen)

    def to_json(self) -> dict:
        return {
            "structure": self.structure.kind,
            "support": [atom_to_json(a) for a in self.support],
            "bits": self.bits(),
        }

    @staticmethod
    def from_json(structure: AtomStructure, data: dict) -> "SupportedSubset":
        if data["structure"] != structure.kind:
            raise StructureMismatch("wrong structure kind in JSON")
        support = [atom_from_json(a) for a in data["support"]]
        return SupportedSubset.from_bits(structure, support, data["bits"])


def _representative(structure, t: OneType) -> Optional[Atom]:
    if t.witness is not None:
        return t.witness
    if t.desc[0] == "eq":
        return t.support[t.desc[1]]
    return None


def _preimage(pi: LiftedAutomorphism, atom: Atom) -> Optional[Atom]:
    for a, b in list(pi.pairs.items()):
        if b == atom:
            return a
    return None


def _map_type_desc(structure, t: OneType, perm: Dict[int, int], new_support):
    kind = structure.kind
    d = t.desc
    if d[0] == "eq":
        return OneType(kind, new_support, ("eq", perm[d[1]]))
    if kind == PURE_SET:
        return OneType(kind, new_support, ("free",))
    if kind == DENSE_ORDER:
        # order automorphisms keep the gap index
        return OneType(kind, new_support, d)
    _, gap, rels = d
    mapped = frozenset(
        ("rel", m, i, tuple(perm[j] for j in seq)) for _, m, i, seq in rels
    )
    return OneType(kind, new_support, ("typ", gap, mapped))


def restrict_type(structure, t: OneType, sub: Sequence[Atom]) -> OneType:
    """The 1-type over a sub-support induced by a type over the support."""
    kind = structure.kind
    E = t.support
    sub = sort_support(structure, sub)
    sub_index = {e: j for j, e in enumerate(sub)}
    if kind == PAIR_MODEL:
        return OneType(kind, sub, pair_orbit_descriptor(t.witness, sub), t.witness)
    if t.desc[0] == "eq":
        e = E[t.desc[1]]
        if e in sub_index:
            return OneType(kind, sub, ("eq", sub_index[e]), witness=e)
        if kind == PURE_SET:
            return OneType(kind, sub, ("free",))
        if kind == DENSE_ORDER:
            below = sum(1 for x in sub if x.payload < e.payload)
            return OneType(kind, sub, ("gap", below))
        assert isinstance(structure, CategoricalStructure)
        below = sum(1 for x in sub if structure.lt(x, e))
        rels = frozenset(
            f
            for f in _cat_rel_formulas(len(sub))
            if structure.formula_holds(_instantiate(f, sub), e)
        )
        return OneType(kind, sub, ("typ", below, rels))
    if kind == PURE_SET:
        return OneType(kind, sub, ("free",))
    if kind == DENSE_ORDER:
        gap = t.desc[1]
        below = sum(1 for x in sub if x in E[:gap])
        return OneType(kind, sub, ("gap", below))
    _, gap, rels = t.desc
    keep = set(E[:gap])
    below = sum(1 for x in sub if x in keep)
    local = []
    for _, m, i, seq in rels:
        params = [E[j] for j in seq]
        if all(p in sub_index for p in params):
            local.append(("rel", m, i, tuple(sub_index[p] for p in params)))
    return OneType(kind, sub, ("typ", below, frozenset(local)))


def least_support(S: SupportedSubset) -> Tuple[Atom, ...]:
    """Smallest support: computed by discarding removable atoms, which is
    order-independent because the intersection of two supports is a
    support."""
    if S._least is not None:
        return S._least
    current = S
    changed = True
    while changed:
        changed = False
        for e in current.support:
            rest = tuple(x for x in current.support if x != e)
            if current.is_supported_by(rest):
                current = _shrink(current, rest)
                changed = True
                break
    S._least = current.support
    return current.support


def _shrink(S: SupportedSubset, sub: Tuple[Atom, ...]) -> SupportedSubset:
    """Re-present S over a smaller support that is known to support it."""
    groups: Dict[OneType, bool] = {}
    for t in S.types():
        r = restrict_type(S.structure, t, sub)
        if t in S.selected:
            groups[r] = True
        else:
            groups.setdefault(r, False)
    chosen = [t for t in types_over(S.structure, sub) if groups.get(t, False)]
    return SupportedSubset(S.structure, sub, chosen)


class FraenkelClass:
    """Dichotomy tag for a supported subset of the bare atom set."""

    def __init__(self, kind: str, members: Tuple[Atom, ...]):
        self.kind = kind  # "finite" | "cofinite"
        self.members = members  # the set itself, or its complement

    def __repr__(self):
        return f"FraenkelClass({self.kind}, {self.members})"


def classify_fraenkel(S: SupportedSubset) -> FraenkelClass:
    """Every supported subset of the bare atom set is finite (and then a
    subset of its support) or co-finite (complement inside the support)."""
    if S.structure.kind != PURE_SET:
        raise StructureMismatch("dichotomy applies to the bare atom set only")
    eqs = [t for t in S.types() if t.desc[0] == "eq"]
    free = [t for t in S.types() if t.desc[0] == "free"][0]
    if free in S.selected:
        complement = tuple(
            t.support[t.desc[1]] for t in eqs if t not in S.selected
        )
        assert set(complement) <= set(S.support)
        return FraenkelClass("cofinite", complement)
    members = tuple(t.support[t.desc[1]] for t in eqs if t in S.selected)
    assert set(members) <= set(S.support)
    return FraenkelClass("finite", members)
