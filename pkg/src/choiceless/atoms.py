"""Atom universes and the symmetry groups acting on them.

Four universes are supported, each presented locally rather than as an
explicit group: a bare countable set acted on by all permutations, a
dense linear order acted on by its order automorphisms, a levelled
universe of pair atoms whose automorphisms are (base permutation, one
bit per level) presentations, and a lazily grown homogeneous structure
carrying a linear order plus a family of irreflexive relations.

A group element is never written out in full.  A finite injective map
(`PartialAutomorphism`) plus an extension test (`extendable`) stands in
for it, and `extend_fixing` lifts such a map to a lazily evaluated
total automorphism of the materialised universe.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

PURE_SET = "pure_set"
DENSE_ORDER = "dense_order"
PAIR_MODEL = "pair_model"
CATEGORICAL = "categorical"


class StructureMismatch(ValueError):
    """Atom used with a structure that does not own it."""


class UnsatisfiableType(ValueError):
    """Requested 1-type is inconsistent with the ambient theory."""


class LevelBudgetExceeded(RuntimeError):
    """Pair-model operation would materialise atoms above the level budget."""


class MissingImage(KeyError):
    """A finite automorphism snapshot was asked to act outside its domain."""


class Atom:
    """A single urelement.  Identity is structural: equal payloads are
    the same atom, no matter how many times they were materialised."""

    __slots__ = ("world", "payload", "_hash")

    def __init__(self, world: str, payload):
        object.__setattr__(self, "world", world)
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "_hash", hash((world, payload)))

    def __setattr__(self, *_):
        raise AttributeError("atoms are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Atom)
            and self.world == other.world
            and self.payload == other.payload
        )

    def __hash__(self):
        return self._hash

    @property
    def level(self) -> int:
        if self.world != PAIR_MODEL:
            raise StructureMismatch("level is only defined for pair-model atoms")
        return 0 if isinstance(self.payload, int) else self.payload[0]

    def sort_key(self):
        """World-local canonical key; comparable within one world only."""
        if self.world == PAIR_MODEL:
            return _pair_key(self)
        return self.payload

    def __repr__(self):
        if self.world == DENSE_ORDER:
            return f"a({self.payload})"
        if self.world == PAIR_MODEL:
            if isinstance(self.payload, int):
                return f"b{self.payload}"
            lvl, (x, y), eps = self.payload
            return f"({lvl},<{x!r},{y!r}>,{eps})"
        if self.world == CATEGORICAL:
            return f"n{self.payload}"
        return f"u{self.payload}"


def _pair_key(atom: Atom):
    if isinstance(atom.payload, int):
        return (0, atom.payload)
    lvl, (x, y), eps = atom.payload
    return (lvl, _pair_key(x), _pair_key(y), eps)


def atom_to_json(atom: Atom) -> dict:
    if atom.world == PURE_SET:
        return {"world": "pure", "id": atom.payload}
    if atom.world == DENSE_ORDER:
        q = atom.payload
        return {"world": "dense", "q": f"{q.numerator}/{q.denominator}"}
    if atom.world == CATEGORICAL:
        return {"world": "cat", "node": atom.payload}
    if isinstance(atom.payload, int):
        return {"world": "pairs", "base": atom.payload}
    lvl, (x, y), eps = atom.payload
    return {
        "world": "pairs",
        "level": lvl,
        "pair": [atom_to_json(x), atom_to_json(y)],
        "bit": eps,
    }


def atom_from_json(data: dict) -> Atom:
    w = data["world"]
    if w == "pure":
        return Atom(PURE_SET, data["id"])
    if w == "dense":
        return Atom(DENSE_ORDER, Fraction(data["q"]))
    if w == "cat":
        return Atom(CATEGORICAL, data["node"])
    if "base" in data:
        return Atom(PAIR_MODEL, data["base"])
    x, y = (atom_from_json(d) for d in data["pair"])
    return Atom(PAIR_MODEL, (data["level"], (x, y), data["bit"]))


# ---------------------------------------------------------------------------
# structures


class AtomStructure:
    """Base class: a finite materialised fragment of a countable universe."""

    kind: str = ""
    _uid_counter = itertools.count()

    def __init__(self):
        # distinguishes structures for cache keys even after id() reuse
        self._uid = next(AtomStructure._uid_counter)

    def __contains__(self, atom: Atom) -> bool:
        raise NotImplementedError

    def atoms(self) -> List[Atom]:
        """Materialised universe, canonically sorted."""
        raise NotImplementedError

    def check_owns(self, *atoms: Atom):
        for a in atoms:
            if not isinstance(a, Atom) or a.world != self.kind:
                raise StructureMismatch(f"{a!r} does not belong to a {self.kind} structure")
            if a not in self:
                raise StructureMismatch(f"{a!r} is not materialised")

    def to_json(self) -> dict:
        raise NotImplementedError


class PureSetStructure(AtomStructure):
    """Countable bare set; every permutation is an automorphism."""

    kind = PURE_SET

    def __init__(self, size: int = 0):
        super().__init__()
        self._ids = set(range(size))

    def atom(self, i: int) -> Atom:
        self._ids.add(i)
        return Atom(PURE_SET, i)

    def fresh(self, count: int = 1, avoid: Iterable[Atom] = ()) -> List[Atom]:
        used = set(self._ids) | {a.payload for a in avoid}
        out = []
        i = 0
        while len(out) < count:
            if i not in used:
                out.append(self.atom(i))
                used.add(i)
            i += 1
        return out

    def __contains__(self, atom):
        return atom.world == PURE_SET and atom.payload in self._ids

    def atoms(self):
        return [Atom(PURE_SET, i) for i in sorted(self._ids)]

    def to_json(self):
        return {"kind": "pure", "atoms": sorted(self._ids)}


class DenseOrderStructure(AtomStructure):
    """Points of a dense linear order without endpoints (exact rationals)."""

    kind = DENSE_ORDER

    def __init__(self, positions: Iterable = ()):
        super().__init__()
        self._positions = set()
        for q in positions:
            self.atom(q)

    def atom(self, q) -> Atom:
        q = Fraction(q)
        self._positions.add(q)
        return Atom(DENSE_ORDER, q)

    def fresh(self, count: int = 1, avoid: Iterable[Atom] = ()) -> List[Atom]:
        """Fresh points above everything materialised so far."""
        used = set(self._positions) | {a.payload for a in avoid}
        top = max(used, default=Fraction(0))
        return [self.atom(top + i) for i in range(1, count + 1)]

    def __contains__(self, atom):
        return atom.world == DENSE_ORDER and atom.payload in self._positions

    def atoms(self):
        return [Atom(DENSE_ORDER, q) for q in sorted(self._positions)]

    def to_json(self):
        return {
            "kind": "dense",
            "atoms": [f"{q.numerator}/{q.denominator}" for q in sorted(self._positions)],
        }


class PairStructure(AtomStructure):
    """Levelled pair atoms.

    Level 0 is a bare countable set.  An atom of level n >= 1 is a
    triple (n, <x, y>, bit) whose components live strictly below n.
    The automorphisms are exactly the maps presented by a permutation of
    the level-0 atoms together with one bit per level >= 1: the
    permutation acts inside the payload and the level's bit is XORed
    onto the atom's own bit.
    """

    kind = PAIR_MODEL

    def __init__(self, base_size: int = 0, level_budget: int = 8):
        super().__init__()
        self.level_budget = level_budget
        self._payloads = set(range(base_size))

    def base_atom(self, i: int) -> Atom:
        self._payloads.add(i)
        return Atom(PAIR_MODEL, i)

    def fresh_base(self, count: int = 1, avoid: Iterable[Atom] = ()) -> List[Atom]:
        used = {p for p in self._payloads if isinstance(p, int)}
        used |= {a.payload for a in avoid if isinstance(a.payload, int)}
        out = []
        i = 0
        while len(out) < count:
            if i not in used:
                out.append(self.base_atom(i))
                used.add(i)
            i += 1
        return out

    def pair_atom(self, level: int, x: Atom, y: Atom, bit: int) -> Atom:
        self.check_owns(x, y)
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        if level <= max(x.level, y.level):
            raise ValueError("components of a level-n atom must live below level n")
        if level > self.level_budget:
            raise LevelBudgetExceeded(
                f"level {level} exceeds the configured budget {self.level_budget}"
            )
        atom = Atom(PAIR_MODEL, (level, (x, y), bit))
        self._payloads.add(atom.payload)
        return atom

    def materialise(self, atom: Atom) -> Atom:
        """Re-register an atom built structurally (components included)."""
        if isinstance(atom.payload, int):
            return self.base_atom(atom.payload)
        lvl, (x, y), eps = atom.payload
        return self.pair_atom(lvl, self.materialise(x), self.materialise(y), eps)

    def __contains__(self, atom):
        return atom.world == PAIR_MODEL and atom.payload in self._payloads

    def atoms(self):
        out = [Atom(PAIR_MODEL, p) for p in self._payloads]
        out.sort(key=_pair_key)
        return out

    @staticmethod
    def hereditary_atoms(atom: Atom) -> List[Atom]:
        """The atom together with every component below it."""
        out = [atom]
        if not isinstance(atom.payload, int):
            _, (x, y), _ = atom.payload
            out.extend(PairStructure.hereditary_atoms(x))
            out.extend(PairStructure.hereditary_atoms(y))
        return out

    @staticmethod
    def pinned_levels(fixed: Iterable[Atom]) -> set:
        """Levels whose bit any automorphism fixing `fixed` must leave at 0."""
        levels = set()
        for a in fixed:
            for h in PairStructure.hereditary_atoms(a):
                if not isinstance(h.payload, int):
                    levels.add(h.payload[0])
        return levels

    @staticmethod
    def fixed_bases(fixed: Iterable[Atom]) -> set:
        """Level-0 atoms pinned pointwise by fixing `fixed`."""
        bases = set()
        for a in fixed:
            for h in PairStructure.hereditary_atoms(a):
                if isinstance(h.payload, int):
                    bases.add(h)
        return bases

    def to_json(self):
        return {"kind": "pairs", "atoms": [atom_to_json(a) for a in self.atoms()]}


# categorical 1-type formulas: ("eq", e), ("lt", e), ("rel", n, i, (e0..en-1))
# where the relation formula asserts the n+1-ary fact with x inserted at
# slot i among the parameters.


def f_eq(e: Atom):
    return ("eq", e)


def f_lt(e: Atom):
    return ("lt", e)


def f_rel(insert_at: int, params: Sequence[Atom]):
    params = tuple(params)
    if not 0 <= insert_at <= len(params):
        raise ValueError("insertion slot out of range")
    return ("rel", len(params), insert_at, params)


class CategoricalStructure(AtomStructure):
    """Lazily grown homogeneous structure: a dense linear order plus, for
    each n, an (n+1)-ary relation constrained only to have pairwise
    distinct entries.  Growth is minimal: a fresh node receives exactly
    the relation facts that were requested for it."""

    kind = CATEGORICAL

    def __init__(self):
        super().__init__()
        self._pos: Dict[int, Fraction] = {}
        self._rfacts: set = set()  # (n, (node ids...)) with len(ids) == n + 1
        self._next = 0

    # -- materialisation ----------------------------------------------------

    def _new_node(self, position: Fraction) -> Atom:
        if position in self._pos.values():
            raise ValueError("positions must be pairwise distinct")
        nid = self._next
        self._next += 1
        self._pos[nid] = position
        return Atom(CATEGORICAL, nid)

    def fresh(self, count: int = 1) -> List[Atom]:
        return [fresh_realizer(self, []) for _ in range(count)]

    def __contains__(self, atom):
        return atom.world == CATEGORICAL and atom.payload in self._pos

    def atoms(self):
        return [Atom(CATEGORICAL, i) for i in sorted(self._pos)]

    # -- structure queries --------------------------------------------------

    def position(self, atom: Atom) -> Fraction:
        self.check_owns(atom)
        return self._pos[atom.payload]

    def lt(self, a: Atom, b: Atom) -> bool:
        return self.position(a) < self.position(b)

    def sorted_by_order(self, atoms: Iterable[Atom]) -> List[Atom]:
        return sorted(atoms, key=self.position)

    def declare_rel(self, args: Sequence[Atom]):
        """Record the (len-1)-indexed relation fact on `args`."""
        args = tuple(args)
        self.check_owns(*args)
        if len(set(args)) != len(args):
            raise UnsatisfiableType("relation entries must be pairwise distinct")
        self._rfacts.add((len(args) - 1, tuple(a.payload for a in args)))

    def rel_holds(self, args: Sequence[Atom]) -> bool:
        args = tuple(args)
        return (len(args) - 1, tuple(a.payload for a in args)) in self._rfacts

    def rfacts_touching(self, atom: Atom) -> List[Tuple[int, Tuple[int, ...]]]:
        nid = atom.payload
        return sorted(f for f in self._rfacts if nid in f[1])

    def formula_holds(self, formula, atom: Atom) -> bool:
        tag = formula[0]
        if tag == "eq":
            return atom == formula[1]
        if tag == "lt":
            return self.lt(atom, formula[1])
        _, n, i, params = formula
        args = params[:i] + (atom,) + params[i:]
        return self.rel_holds(args)

    def _gap_position(self, uppers: Sequence[Atom]) -> Fraction:
        hi = min((self.position(u) for u in uppers), default=None)
        return self._free_position(None, hi)

    def _free_position(self, lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
        """An unoccupied position strictly between the bounds."""
        taken = sorted(self._pos.values())
        if hi is None:
            candidates = [lo] if lo is not None else []
            candidates += taken
            return (max(candidates) + 1) if candidates else Fraction(0)
        below = [q for q in taken if q < hi and (lo is None or q >= lo)]
        if lo is not None:
            below.append(lo)
        return (max(below) + hi) / 2 if below else hi - 1

    def to_json(self):
        return {
            "kind": "categorical",
            "nodes": [
                {"node": i, "pos": f"{q.numerator}/{q.denominator}"}
                for i, q in sorted(self._pos.items())
            ],
            "rfacts": sorted([n, list(ids)] for n, ids in self._rfacts),
        }


def fresh_realizer(structure: CategoricalStructure, formulas) -> Atom:
    """Materialise an atom realising at least the given positive formulas.

    The new atom receives no relation fact that was not requested, so the
    universe keeps its minimal positive diagram.  An equality formula
    short-circuits to the named parameter, provided the rest of the type
    already holds of it.
    """
    if not isinstance(structure, CategoricalStructure):
        raise StructureMismatch("fresh_realizer needs a categorical structure")
    formulas = list(formulas)
    eqs = [f for f in formulas if f[0] == "eq"]
    uppers = [f[1] for f in formulas if f[0] == "lt"]
    rels = [f for f in formulas if f[0] == "rel"]
    for f in formulas:
        for p in _formula_params(f):
            structure.check_owns(p)
    if eqs:
        target = eqs[0][1]
        for f in formulas:
            if not structure.formula_holds(f, target):
                raise UnsatisfiableType(f"{f} fails for {target!r}")
        return target
    for _, n, i, params in rels:
        if len(set(params)) != len(params):
            raise UnsatisfiableType("relation parameters must be pairwise distinct")
    atom = structure._new_node(structure._gap_position(uppers))
    for _, n, i, params in rels:
        structure.declare_rel(params[:i] + (atom,) + params[i:])
    return atom


def _formula_params(formula) -> Tuple[Atom, ...]:
    if formula[0] in ("eq", "lt"):
        return (formula[1],)
    return formula[3]


def structure_from_json(data: dict) -> AtomStructure:
    kind = data["kind"]
    if kind == "pure":
        s = PureSetStructure()
        for i in data["atoms"]:
            s.atom(i)
        return s
    if kind == "dense":
        return DenseOrderStructure(Fraction(q) for q in data["atoms"])
    if kind == "pairs":
        s = PairStructure()
        for a in data["atoms"]:
            s.materialise(atom_from_json(a))
        return s
    if kind == "categorical":
        s = CategoricalStructure()
        for node in data["nodes"]:
            s._pos[node["node"]] = Fraction(node["pos"])
        s._next = max(s._pos, default=-1) + 1
        for n, ids in data["rfacts"]:
            s._rfacts.add((n, tuple(ids)))
        return s
    raise ValueError(f"unknown structure kind {kind!r}")


# ---------------------------------------------------------------------------
# partial automorphisms


class PartialAutomorphism:
    """A finite injective atom map, candidate fragment of a group element."""

    def __init__(self, mapping: Dict[Atom, Atom]):
        self.pairs: Dict[Atom, Atom] = dict(mapping)
        worlds = {a.world for a in self.pairs} | {b.world for b in self.pairs.values()}
        if len(worlds) > 1:
            raise StructureMismatch(f"mixed atom worlds {sorted(worlds)}")
        self.world = worlds.pop() if worlds else None

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, atom):
        return atom in self.pairs

    def items(self):
        return sorted(self.pairs.items(), key=lambda kv: kv[0].sort_key())

    def apply(self, atom: Atom) -> Atom:
        try:
            return self.pairs[atom]
        except KeyError:
            raise MissingImage(f"no image recorded for {atom!r}")

    def fixes_pointwise(self, atoms: Iterable[Atom]) -> bool:
        return all(self.pairs.get(a) == a for a in atoms)

    def snapshot(self) -> "PartialAutomorphism":
        return PartialAutomorphism(self.pairs)

    def to_json(self) -> list:
        return [[atom_to_json(a), atom_to_json(b)] for a, b in self.items()]

    @staticmethod
    def from_json(data) -> "PartialAutomorphism":
        return PartialAutomorphism(
            {atom_from_json(a): atom_from_json(b) for a, b in data}
        )

    def __repr__(self):
        inner = ", ".join(f"{a!r}->{b!r}" for a, b in self.items())
        return f"PartialAutomorphism({inner})"


def _solve_pair_presentation(mapping: Dict[Atom, Atom]):
    """Find (base permutation fragment, bit per level) consistent with the
    map, or None.  Constraints propagate down through payload pairs."""
    g0: Dict[Atom, Atom] = {}
    bits: Dict[int, int] = {}
    stack = list(mapping.items())
    while stack:
        a, b = stack.pop()
        if a.level != b.level:
            return None
        if a.level == 0:
            if g0.get(a, b) != b:
                return None
            g0[a] = b
        else:
            _, (x, y), ea = a.payload
            _, (x2, y2), eb = b.payload
            want = ea ^ eb
            if bits.get(a.level, want) != want:
                return None
            bits[a.level] = want
            stack.append((x, x2))
            stack.append((y, y2))
    if len(set(g0.values())) != len(g0):
        return None
    return g0, bits


def extendable(structure: AtomStructure, pa: PartialAutomorphism) -> bool:
    """Does the finite map extend to an automorphism of the (idealised,
    countable) structure?  Decided locally, per universe."""
    atoms = list(pa.pairs) + list(pa.pairs.values())
    structure.check_owns(*atoms)
    mapping = pa.pairs
    if len(set(mapping.values())) != len(mapping):
        return False
    if structure.kind == PURE_SET:
        return True
    if structure.kind == DENSE_ORDER:
        srcs = sorted(mapping, key=lambda a: a.payload)
        imgs = [mapping[a].payload for a in srcs]
        return all(p < q for p, q in zip(imgs, imgs[1:]))
    if structure.kind == PAIR_MODEL:
        return _solve_pair_presentation(mapping) is not None
    # categorical: order, relation facts, and their negations on the domain
    assert isinstance(structure, CategoricalStructure)
    for a, b in itertools.combinations(mapping, 2):
        if structure.lt(a, b) != structure.lt(mapping[a], mapping[b]):
            return False
    dom_ids = {a.payload: a for a in mapping}
    img_ids = {mapping[a].payload for a in mapping}
    for n, ids in structure._rfacts:
        if all(i in dom_ids for i in ids):
            image = tuple(mapping[dom_ids[i]].payload for i in ids)
            if (n, image) not in structure._rfacts:
                return False
    inverse = {mapping[a].payload: a.payload for a in mapping}
    for n, ids in structure._rfacts:
        if all(i in img_ids for i in ids):
            pre = tuple(inverse[i] for i in ids)
            if (n, pre) not in structure._rfacts:
                return False
    return True


class LiftedAutomorphism(PartialAutomorphism):
    """A partial automorphism that knows how to grow: images of further
    atoms are produced on demand, staying consistent with one extension
    to the whole countable structure.  The recorded pairs always form an
    extendable finite map."""

    def __init__(self, structure: AtomStructure, mapping: Dict[Atom, Atom]):
        super().__init__(dict(mapping))
        self.structure = structure
        if self.world is None:
            self.world = structure.kind
        if structure.kind == PAIR_MODEL:
            solved = _solve_pair_presentation(self.pairs)
            if solved is None:
                raise ValueError("map admits no pair-model presentation")
            self._g0, self._bits = solved

    def apply(self, atom: Atom) -> Atom:
        if atom in self.pairs:
            return self.pairs[atom]
        self.structure.check_owns(atom)
        kind = self.structure.kind
        if kind == PURE_SET:
            image = self._complete_cycle(atom, self.pairs)
            self.pairs[atom] = image
            return image
        if kind == DENSE_ORDER:
            image = self.structure.atom(self._interpolate(atom.payload))
            self.pairs[atom] = image
            return image
        if kind == PAIR_MODEL:
            image = self._apply_pair(atom)
            self.pairs[atom] = image
            return image
        image = self._apply_categorical(atom)
        self.pairs[atom] = image
        return image

    @staticmethod
    def _complete_cycle(atom: Atom, mapping: Dict[Atom, Atom]) -> Atom:
        # close the chain ending at `atom` back onto its head; fixes atoms
        # untouched by the map, keeps the completion injective
        image_set = set(mapping.values())
        if atom not in image_set:
            return atom
        inverse = {b: a for a, b in mapping.items()}
        head = atom
        while head in inverse:
            head = inverse[head]
        return head

    def _interpolate(self, q: Fraction) -> Fraction:
        nodes = sorted((a.payload, b.payload) for a, b in self.pairs.items())
        if not nodes:
            return q
        xs = [x for x, _ in nodes]
        if q <= xs[0]:
            return q + (nodes[0][1] - nodes[0][0])
        if q >= xs[-1]:
            return q + (nodes[-1][1] - nodes[-1][0])
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            if x0 <= q <= x1:
                return y0 + (q - x0) * (y1 - y0) / (x1 - x0)
        raise AssertionError("unreachable")

    def _apply_pair(self, atom: Atom) -> Atom:
        if atom.level == 0:
            if atom in self._g0:
                image = self._g0[atom]
            else:
                image = self._complete_cycle(atom, self._g0)
                self._g0[atom] = image
            if not isinstance(self.structure, PairStructure):
                raise StructureMismatch("pair-model lift needs a PairStructure")
            return self.structure.base_atom(image.payload)
        lvl, (x, y), eps = atom.payload
        ix, iy = self.apply(x), self.apply(y)
        return self.structure.pair_atom(lvl, ix, iy, eps ^ self._bits.get(lvl, 0))

    def _apply_categorical(self, atom: Atom) -> Atom:
        s = self.structure
        assert isinstance(s, CategoricalStructure)
        # target must realise, over the images, exactly the atomic type the
        # source realises over the current domain (back-and-forth step)
        dom = dict(self.pairs)
        below = [dom[a] for a in dom if s.lt(a, atom)]
        above = [dom[a] for a in dom if s.lt(atom, a)]
        lo = max((s.position(b) for b in below), default=None)
        hi = min((s.position(b) for b in above), default=None)
        dom_ids = {a.payload: a for a in dom}
        want = set()
        for n, ids in s.rfacts_touching(atom):
            if all(i == atom.payload or i in dom_ids for i in ids):
                want.add(
                    (
                        n,
                        tuple(
                            None if i == atom.payload else dom[dom_ids[i]].payload
                            for i in ids
                        ),
                    )
                )
        img_ids = {dom[a].payload for a in dom}
        for cand in s.atoms():
            if cand in dom.values():
                continue
            q = s.position(cand)
            if lo is not None and q <= lo:
                continue
            if hi is not None and q >= hi:
                continue
            have = set()
            ok = True
            for n, ids in s.rfacts_touching(cand):
                if all(i == cand.payload or i in img_ids for i in ids):
                    have.add(
                        (n, tuple(None if i == cand.payload else i for i in ids))
                    )
            ok = have == want
            if ok:
                return cand
        # no materialised node fits: realise the type freshly
        taken = sorted(s._pos.values())
        if lo is None and hi is None:
            pos = (taken[-1] + 1) if taken else Fraction(0)
        elif lo is None:
            pos = hi - 1
        elif hi is None:
            pos = lo + 1
        else:
            pos = (lo + hi) / 2
        fresh = s._new_node(pos)
        for n, holes in want:
            args = tuple(
                fresh if i is None else Atom(CATEGORICAL, i) for i in holes
            )
            s.declare_rel(args)
        return fresh


def extend_fixing(
    structure: AtomStructure,
    fixed: Iterable[Atom],
    constraints: Optional[Dict[Atom, Atom]] = None,
) -> Optional[LiftedAutomorphism]:
    """Identity on `fixed` plus the given constraints, lifted to a lazily
    extendable automorphism; None iff no automorphism satisfies both."""
    mapping: Dict[Atom, Atom] = {a: a for a in fixed}
    for a, b in (constraints or {}).items():
        if mapping.get(a, b) != b:
            return None
        mapping[a] = b
    candidate = PartialAutomorphism(mapping)
    structure.check_owns(*mapping, *mapping.values())
    if not extendable(structure, candidate):
        return None
    return LiftedAutomorphism(structure, mapping)
