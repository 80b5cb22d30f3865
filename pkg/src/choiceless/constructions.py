"""Hereditarily finite objects over atoms, derived domains, and the
explicit injections between them.

The domain grammar covers what the derived-cardinal constructions need:
finite sets, one-to-one and arbitrary finite sequences, ordered pairs,
unordered pairs, and the power object represented by `SupportedSubset`.
Each injection is a plain function; equivariance is a contract checked
by the test-suite probes rather than by construction.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .atoms import (
    Atom,
    AtomStructure,
    CategoricalStructure,
    DenseOrderStructure,
    PairStructure,
    StructureMismatch,
    atom_from_json,
    atom_to_json,
)
from .symsets import (
    SupportedSubset,
    _instantiate,
    least_support,
    sort_support,
    types_over,
)


class NotASeq(ValueError):
    """Sequence input has a repeated entry."""


class OutOfBudget(RuntimeError):
    """Desk-scale scan bound exceeded."""


# ---------------------------------------------------------------------------
# HF objects


class HFTuple:
    __slots__ = ("items",)

    def __init__(self, items: Iterable):
        object.__setattr__(self, "items", tuple(items))

    def __setattr__(self, *_):
        raise AttributeError("HF objects are immutable")

    def __eq__(self, other):
        return isinstance(other, HFTuple) and self.items == other.items

    def __hash__(self):
        return hash(("t", self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __repr__(self):
        return "<" + ", ".join(map(repr, self.items)) + ">"


class HFSet:
    """Extensional finite set: duplicates collapse, order is canonical."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable):
        uniq = {}
        for x in items:
            uniq[hf_key(x)] = x
        object.__setattr__(
            self, "items", tuple(uniq[k] for k in sorted(uniq))
        )

    def __setattr__(self, *_):
        raise AttributeError("HF objects are immutable")

    def __eq__(self, other):
        return isinstance(other, HFSet) and self.items == other.items

    def __hash__(self):
        return hash(("s", self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, x):
        return any(hf_key(x) == hf_key(y) for y in self.items)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.items)) + "}"


def hfset(*items) -> HFSet:
    if len(items) == 1 and isinstance(items[0], (list, tuple, set, frozenset)):
        return HFSet(items[0])
    return HFSet(items)


def hftuple(*items) -> HFTuple:
    if len(items) == 1 and isinstance(items[0], (list, tuple)):
        return HFTuple(items[0])
    return HFTuple(items)


def hf_key(x):
    if isinstance(x, Atom):
        return (0, x.world, x.sort_key())
    if isinstance(x, HFTuple):
        return (1, len(x.items), tuple(hf_key(i) for i in x.items))
    if isinstance(x, HFSet):
        return (2, len(x.items), tuple(hf_key(i) for i in x.items))
    if isinstance(x, int):
        return (3, x)
    raise TypeError(f"not an HF object: {x!r}")


def atoms_of(x) -> Set[Atom]:
    if isinstance(x, Atom):
        return {x}
    if isinstance(x, (HFTuple, HFSet)):
        out: Set[Atom] = set()
        for i in x:
            out |= atoms_of(i)
        return out
    return set()


def act(pi, x):
    """Apply an automorphism to an HF object, a supported subset, or a
    kernel value (plain naturals are fixed)."""
    if isinstance(x, Atom):
        return pi.apply(x)
    if isinstance(x, HFTuple):
        return HFTuple(act(pi, i) for i in x)
    if isinstance(x, HFSet):
        return HFSet(act(pi, i) for i in x)
    if isinstance(x, SupportedSubset):
        return x.apply(pi)
    if isinstance(x, (int, frozenset, tuple)):
        return x
    raise TypeError(f"cannot act on {x!r}")


def hf_to_json(x):
    if isinstance(x, Atom):
        return {"atom": atom_to_json(x)}
    if isinstance(x, HFTuple):
        return {"tuple": [hf_to_json(i) for i in x]}
    if isinstance(x, HFSet):
        return {"set": [hf_to_json(i) for i in x]}
    if isinstance(x, int):
        return {"nat": x}
    if isinstance(x, SupportedSubset):
        return {"subset": x.to_json()}
    raise TypeError(f"not serialisable: {x!r}")


def hf_from_json(data, structure: Optional[AtomStructure] = None):
    if "atom" in data:
        return atom_from_json(data["atom"])
    if "tuple" in data:
        return HFTuple(hf_from_json(i, structure) for i in data["tuple"])
    if "set" in data:
        return HFSet(hf_from_json(i, structure) for i in data["set"])
    if "nat" in data:
        return data["nat"]
    if "subset" in data:
        if structure is None:
            raise ValueError("decoding a supported subset needs its structure")
        return SupportedSubset.from_json(structure, data["subset"])
    raise ValueError(f"bad HF JSON: {data!r}")


# ---------------------------------------------------------------------------
# domain grammar


class Domain:
    name = "?"

    def contains(self, x, structure: Optional[AtomStructure] = None) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class AtomsDom(Domain):
    name = "A"

    def contains(self, x, structure=None):
        if not isinstance(x, Atom):
            return False
        return structure is None or x.world == structure.kind


class FinDom(Domain):
    def __init__(self, inner: Domain):
        self.inner = inner
        self.name = f"Fin({inner.name})"

    def contains(self, x, structure=None):
        return isinstance(x, HFSet) and all(
            self.inner.contains(i, structure) for i in x
        )


class SeqDom(Domain):
    """Finite sequences of atoms in which every entry appears at most once."""

    name = "Seq(A)"

    def contains(self, x, structure=None):
        if not isinstance(x, HFTuple):
            return False
        if not all(AtomsDom().contains(i, structure) for i in x):
            return False
        return len({hf_key(i) for i in x}) == len(x.items)


class SeqStarDom(Domain):
    name = "seq(A)"

    def contains(self, x, structure=None):
        return isinstance(x, HFTuple) and all(
            AtomsDom().contains(i, structure) for i in x
        )


class PairDom(Domain):
    def __init__(self, left: Domain, right: Domain):
        self.left, self.right = left, right
        self.name = f"({left.name} x {right.name})"

    def contains(self, x, structure=None):
        return (
            isinstance(x, HFTuple)
            and len(x.items) == 2
            and self.left.contains(x.items[0], structure)
            and self.right.contains(x.items[1], structure)
        )


class UnordPairsDom(Domain):
    def __init__(self, inner: Domain):
        self.inner = inner
        self.name = f"[{inner.name}]^2"

    def contains(self, x, structure=None):
        return (
            isinstance(x, HFSet)
            and len(x.items) == 2
            and all(self.inner.contains(i, structure) for i in x)
        )


class PowDom(Domain):
    name = "P(A)"

    def contains(self, x, structure=None):
        if not isinstance(x, SupportedSubset):
            return False
        return structure is None or x.structure is structure


class NatDom(Domain):
    name = "N"

    def contains(self, x, structure=None):
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0


class NatSetDom(Domain):
    name = "P(N)"

    def contains(self, x, structure=None):
        return isinstance(x, frozenset) and all(
            isinstance(i, int) and i >= 0 for i in x
        )


class LabeledNatSetDom(Domain):
    """Pairs (label, finite set of naturals) with label < k."""

    def __init__(self, k: int):
        self.k = k
        self.name = f"{k} x P(N)"

    def contains(self, x, structure=None):
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and isinstance(x[0], int)
            and 0 <= x[0] < self.k
            and NatSetDom().contains(x[1])
        )


class SubsetDom(Domain):
    def __init__(self, ground: frozenset):
        self.ground = ground
        self.name = "P(ground)"

    def contains(self, x, structure=None):
        return isinstance(x, frozenset) and x <= self.ground


class PartitionDom(Domain):
    def __init__(self, ground: frozenset):
        self.ground = ground
        self.name = "Part(ground)"

    def contains(self, x, structure=None):
        if not isinstance(x, frozenset):
            return False
        blocks = list(x)
        if any(not isinstance(b, frozenset) or not b for b in blocks):
            return False
        union = set()
        for b in blocks:
            if union & b:
                return False
            union |= b
        return union == set(self.ground)


def member(domain: Domain, x, structure: Optional[AtomStructure] = None) -> bool:
    return domain.contains(x, structure)


# ---------------------------------------------------------------------------
# explicit injections


def kuratowski(x: Atom, y: Atom) -> HFSet:
    """Ordered pair as the two-set {{x},{x,y}}; collapses to {{x}} on the
    diagonal, stays injective on ordered pairs."""
    return hfset(hfset(x), hfset(x, y))


def seq_to_chain(s) -> HFSet:
    """A one-to-one sequence as its chain of initial segments."""
    entries = list(s)
    if len({hf_key(e) for e in entries}) != len(entries):
        raise NotASeq(f"repeated entry in {entries!r}")
    return HFSet(HFSet(entries[: k + 1]) for k in range(len(entries)))


def size_class_map(sizes: Iterable[int], pool: Sequence[Atom]) -> Set[HFSet]:
    """All subsets of the pool whose size lies in the given class."""
    sizes = sorted(set(sizes))
    if any(k < 0 for k in sizes):
        raise ValueError("sizes must be naturals")
    if sizes and len(pool) < max(sizes) + 1:
        raise ValueError("pool too small to witness the largest size")
    out: Set[HFSet] = set()
    for k in sizes:
        for combo in itertools.combinations(pool, k):
            out.add(HFSet(combo))
    return out


def pairmodel_pair_to_unordered(structure: PairStructure, x: Atom, y: Atom) -> HFSet:
    """The ordered pair (x, y) of pair-model atoms as the unordered pair of
    the two decorated atoms one level above both components."""
    structure.check_owns(x, y)
    lvl = x.level + y.level + 1
    return hfset(
        structure.pair_atom(lvl, x, y, 0),
        structure.pair_atom(lvl, x, y, 1),
    )


def nth_permutation(items: Sequence, k: int) -> Tuple:
    """The k-th permutation (1-based) in lexicographic order of the items
    as given, via factorial-base digits."""
    items = list(items)
    n = len(items)
    if not 1 <= k <= factorial(n):
        raise ValueError(f"permutation index {k} out of range for {n} items")
    k -= 1
    out = []
    for i in range(n, 0, -1):
        idx, k = divmod(k, factorial(i - 1))
        out.append(items.pop(idx))
    return tuple(out)


def _constant_patterns_below(groups: Sequence[int], v: int) -> int:
    """Count integers w < v, over len(groups) bit positions, whose bits are
    constant inside each group.

    Walk the bits of v from the top along the tight path, which pins the
    group of every visited position; dropping a forced 1 to 0 ends the
    comparison, so the groups living entirely below that point are free."""
    n = len(groups)
    if v >= 1 << n:
        return 1 << len(set(groups))
    top = {}
    for pos, g in enumerate(groups):
        top[g] = pos
    below = [0] * (n + 1)
    for g, m in top.items():
        below[m + 1] += 1
    for pos in range(1, n + 1):
        below[pos] += below[pos - 1]
    assigned: dict = {}
    total = 0
    for pos in range(n - 1, -1, -1):
        g = groups[pos]
        if v >> pos & 1:
            if assigned.get(g, 0) == 0:
                total += 1 << below[pos]
            if assigned.setdefault(g, 1) != 1:
                return total  # tight path broken
        else:
            if assigned.setdefault(g, 0) != 0:
                return total
    return total


def class_rank(S: SupportedSubset) -> Tuple[int, Tuple[Atom, ...]]:
    """1-based rank of S among the subsets whose least support equals
    least_support(S), in canonical bit-vector order.

    Counted exactly, without enumeration: for each sub-support, the
    vectors below S that it supports are the constant-per-merge-group bit
    patterns, and alternating over sub-supports isolates the ones whose
    least support is the whole set."""
    from .symsets import restrict_type

    S0 = S.canonical()
    E = S0.support
    v = S0.bits_int()
    ts = types_over(S.structure, E)
    rank = 1
    for keep in range(len(E) + 1):
        for sub in itertools.combinations(E, keep):
            rmap: dict = {}
            groups = [
                rmap.setdefault(restrict_type(S.structure, t, sub), len(rmap))
                for t in ts
            ]
            sign = -1 if (len(E) - keep) % 2 else 1
            rank += sign * _constant_patterns_below(groups, v)
    return rank, E


def class_rank_by_scan(S: SupportedSubset, scan_budget: int = 1 << 16) -> int:
    """Independent oracle for `class_rank`: enumerate every smaller bit
    vector and test class membership directly."""
    S0 = S.canonical()
    E = S0.support
    v = S0.bits_int()
    if v > scan_budget:
        raise OutOfBudget(f"rank scan over {v} candidates exceeds {scan_budget}")
    rank = 1
    for w in range(v):
        if least_support(SupportedSubset.from_bits(S.structure, E, w)) == E:
            rank += 1
    return rank


def default_anchors(structure: DenseOrderStructure, count: int = 20) -> List[Atom]:
    return [structure.atom(i) for i in range(count)]


def mostowski_power_to_seq(
    S: SupportedSubset,
    anchors: Optional[Sequence[Atom]] = None,
) -> HFTuple:
    """Power object into one-to-one sequences over a dense order.

    A subset with a large least support (>= 11 points) becomes the k-th
    permutation of that support, where k is the subset's canonical rank
    within its least-support class; the factorial of the support size
    dominates the class size, so the permutation exists.  A subset with a
    small least support becomes the support in increasing order followed
    by the (10!-k)-th permutation of the first ten unused anchor atoms.
    """
    structure = S.structure
    if structure.kind != "dense_order":
        raise StructureMismatch("this injection lives over the dense order")
    if anchors is None:
        anchors = default_anchors(structure)
    anchors = list(anchors)
    if len(anchors) != 20 or len(set(anchors)) != 20:
        raise ValueError("exactly 20 distinct anchor atoms are required")
    anchors.sort(key=lambda a: a.payload)
    k, E = class_rank(S)
    n = len(E)
    if n >= 11:
        return HFTuple(nth_permutation(E, k))
    unused = [c for c in anchors if c not in set(E)][:10]
    tail = nth_permutation(unused, factorial(10) - k)
    return HFTuple(tuple(E) + tail)


def categorical_seq_to_power(
    structure: CategoricalStructure, ys: Sequence[Atom]
) -> SupportedSubset:
    """A one-to-one sequence of length n becomes the set of atoms standing
    in the (n+1)-ary relation with the sequence, supported by its entries."""
    ys = tuple(ys)
    structure.check_owns(*ys)
    if len(set(ys)) != len(ys):
        raise NotASeq(f"repeated entry in {ys!r}")
    E = sort_support(structure, ys)
    index = {e: j for j, e in enumerate(E)}
    local = ("rel", len(ys), 0, tuple(index[y] for y in ys))
    chosen = []
    for t in types_over(structure, E):
        if t.desc[0] == "typ":
            if local in t.desc[2]:
                chosen.append(t)
        else:
            e = E[t.desc[1]]
            if structure.formula_holds(_instantiate(local, E), e):
                chosen.append(t)
    return SupportedSubset(structure, E, chosen)


def categorical_power_to_seq(
    S: SupportedSubset,
    a: Atom,
    b: Atom,
) -> HFTuple:
    """A supported subset becomes its least support in increasing order,
    then the marker atom a, then one copy of b per predecessor of the
    subset inside its least-support class."""
    structure = S.structure
    if not isinstance(structure, CategoricalStructure):
        raise StructureMismatch("this injection lives over the homogeneous structure")
    structure.check_owns(a, b)
    if a == b:
        raise ValueError("the two marker atoms must differ")
    k, E = class_rank(S)
    return HFTuple(tuple(E) + (a,) + (b,) * (k - 1))
