"""Executable refutation engines and omega-sequence extractors.

Each engine interrogates a purported supported injection through an
oracle interface and either returns a contradiction witness that
re-verifies against the query transcript, or streams provably distinct
values.  Oracles are adversarial and lazy: a witness is a finite
certificate that only ever cites probed values, so it is independent of
the oracle's unqueried behaviour.
"""

from __future__ import annotations

import itertools
from math import ceil, factorial, log2
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .atoms import (
    Atom,
    AtomStructure,
    MissingImage,
    PairStructure,
    PartialAutomorphism,
    extend_fixing,
    extendable,
)
from .constructions import (
    Domain,
    HFSet,
    HFTuple,
    act,
    atoms_of,
    hf_from_json,
    hf_key,
    hf_to_json,
    hfset,
    hftuple,
)
from .symsets import SupportedSubset, least_support


class OracleAnswerError(ValueError):
    """Oracle produced a value outside its declared codomain."""


class EngineBug(RuntimeError):
    """An engine exceeded its probe bound without producing a witness."""


class WitnessInvalid(AssertionError):
    """A contradiction witness failed re-verification."""


def oracle_key(x):
    if isinstance(x, (HFTuple, HFSet, Atom)):
        return ("hf", hf_key(x))
    if isinstance(x, SupportedSubset):
        return ("ss", x.canonical_key())
    if isinstance(x, bool):
        raise TypeError("booleans are not oracle values")
    if isinstance(x, int):
        return ("n", x)
    if isinstance(x, tuple):
        return ("tu",) + tuple(oracle_key(i) for i in x)
    if isinstance(x, frozenset):
        return ("fs", tuple(sorted(oracle_key(i) for i in x)))
    raise TypeError(f"no canonical key for {x!r}")


class InjectionOracle:
    """Query interface to a purported injection, with a transcript.

    Answers are memoised, so the oracle is automatically stable; every
    answer is checked against the declared codomain before it enters the
    transcript.
    """

    def __init__(
        self,
        fn: Callable,
        domain: Domain,
        codomain: Domain,
        support: Sequence[Atom] = (),
        structure: Optional[AtomStructure] = None,
        name: str = "oracle",
    ):
        self.fn = fn
        self.domain = domain
        self.codomain = codomain
        self.support = tuple(support)
        self.structure = structure
        self.name = name
        self.transcript: List[Tuple[object, object]] = []
        self._memo: Dict[tuple, object] = {}

    def query(self, x):
        key = oracle_key(x)
        if key in self._memo:
            return self._memo[key]
        if not self.domain.contains(x, self.structure):
            raise OracleAnswerError(f"query {x!r} outside domain {self.domain!r}")
        y = self.fn(x)
        if not self.codomain.contains(y, self.structure):
            raise OracleAnswerError(
                f"{self.name} answered {y!r} outside {self.codomain!r}"
            )
        self._memo[key] = y
        self.transcript.append((x, y))
        return y

    def probes(self) -> int:
        return len(self.transcript)


def oracle_from_table(table: Dict, *args, **kwargs) -> InjectionOracle:
    keyed = {oracle_key(x): y for x, y in table.items()}

    def fn(x):
        try:
            return keyed[oracle_key(x)]
        except KeyError:
            raise OracleAnswerError(f"scripted table has no entry for {x!r}")

    return InjectionOracle(fn, *args, **kwargs)


# ---------------------------------------------------------------------------
# witnesses


class InjectivityCollapse:
    kind = "injectivity-collapse"

    def __init__(self, x1, x2, y, details: Optional[dict] = None):
        self.x1, self.x2, self.y = x1, x2, y
        self.details = details or {}

    def __repr__(self):
        return f"InjectivityCollapse({self.x1!r}, {self.x2!r} -> {self.y!r})"


class EquivarianceBreak:
    kind = "equivariance-break"

    def __init__(self, pi: PartialAutomorphism, fixed, x, details: Optional[dict] = None):
        self.pi = pi
        self.fixed = tuple(fixed)
        self.x = x
        self.details = details or {}

    def __repr__(self):
        return f"EquivarianceBreak(x={self.x!r}, pi={self.pi!r})"


class BudgetExhausted:
    kind = "budget-exhausted"

    def __init__(self, needed: int, budget: int, details: Optional[dict] = None):
        self.needed = needed
        self.budget = budget
        self.details = details or {}

    def __repr__(self):
        return f"BudgetExhausted(needed={self.needed}, budget={self.budget})"


def verify_witness(witness, structure: AtomStructure, support: Sequence[Atom], transcript) -> bool:
    """Re-check a witness against the transcript alone.  Raises
    ``WitnessInvalid`` with the failed condition, returns True otherwise."""
    answers = {oracle_key(x): (x, y) for x, y in transcript}
    if isinstance(witness, BudgetExhausted):
        return True
    if isinstance(witness, InjectivityCollapse):
        k1, k2 = oracle_key(witness.x1), oracle_key(witness.x2)
        if k1 == k2:
            raise WitnessInvalid("collapse inputs are equal")
        for k in (k1, k2):
            if k not in answers:
                raise WitnessInvalid("collapse input was never probed")
        if oracle_key(answers[k1][1]) != oracle_key(answers[k2][1]):
            raise WitnessInvalid("collapse answers differ")
        if oracle_key(answers[k1][1]) != oracle_key(witness.y):
            raise WitnessInvalid("cited common value does not match the transcript")
        return True
    if isinstance(witness, EquivarianceBreak):
        pi = witness.pi
        if not extendable(structure, pi):
            raise WitnessInvalid("cited map is not a partial automorphism")
        if not pi.fixes_pointwise(support):
            raise WitnessInvalid("cited map moves the declared support")
        kx = oracle_key(witness.x)
        if kx not in answers:
            raise WitnessInvalid("cited input was never probed")
        y = answers[kx][1]
        try:
            pix = act(pi, witness.x)
            piy = act(pi, y)
        except MissingImage:
            raise WitnessInvalid("cited map does not cover the cited objects")
        if oracle_key(pix) == kx:
            if oracle_key(piy) == oracle_key(y):
                raise WitnessInvalid("map fixes both the input and its value")
            return True
        kpix = oracle_key(pix)
        if kpix not in answers:
            raise WitnessInvalid("image input was never probed")
        if oracle_key(answers[kpix][1]) == oracle_key(piy):
            raise WitnessInvalid("oracle commutes with the cited map here")
        return True
    raise WitnessInvalid(f"unknown witness {witness!r}")


def _checked(witness, oracle: InjectionOracle):
    verify_witness(witness, oracle.structure, oracle.support, oracle.transcript)
    return witness


def seq_count(n: int) -> int:
    """Number of one-to-one finite sequences over an n-element set."""
    return sum(factorial(n) // factorial(n - k) for k in range(n + 1))


def _acquire(structure: AtomStructure, count: int, avoid) -> List[Atom]:
    """Probe atoms outside `avoid`: the materialised pool first, in
    canonical order, then freshly materialised ones.  Keeps engines inside
    a scripted table's pool whenever it is big enough."""
    avoid = set(avoid)
    pool = structure.atoms()
    if structure.kind == "pair_model":
        pool = [a for a in pool if a.level == 0]
    out = [a for a in pool if a not in avoid][:count]
    if len(out) < count:
        if structure.kind == "pair_model":
            out += structure.fresh_base(count - len(out), avoid=avoid | set(out))
        else:
            out += structure.fresh(count - len(out), avoid=avoid | set(out))
    return out


def all_seqs(items: Sequence) -> List[tuple]:
    out = []
    for k in range(len(items) + 1):
        out.extend(itertools.permutations(items, k))
    return out


# ---------------------------------------------------------------------------
# engines over the bare atom set


def refute_fin_to_seq_fraenkel(oracle: InjectionOracle):
    """Break a purported injection finite-sets -> one-to-one sequences.

    Probes the value on support-plus-a-fresh-pair inputs.  An answer that
    mentions an atom outside the support is killed by the swap of the
    fresh pair (which fixes the input setwise but moves the value); while
    answers stay inside the support they live in a finite set, so a
    repeat is forced."""
    s = oracle.structure
    E = list(oracle.support)
    seen: Dict[tuple, object] = {}
    used: Set[Atom] = set(E)
    bound = seq_count(len(E)) + 1
    for _ in range(bound):
        a0, a1 = _acquire(s, 2, used)
        used |= {a0, a1}
        x = hfset(E + [a0, a1])
        y = oracle.query(x)
        k = oracle_key(y)
        if k in seen:
            return _checked(InjectivityCollapse(seen[k], x, y), oracle)
        seen[k] = x
        outside = [a for a in y if a not in E]
        if outside:
            target = outside[0]
            constraints = {a0: a1, a1: a0}
            if target not in (a0, a1):
                (z,) = _acquire(s, 1, used | atoms_of(y))
                used.add(z)
                constraints.update({target: z, z: target})
            pi = extend_fixing(s, E, constraints)
            act(pi, x), act(pi, y)  # materialise every needed image
            return _checked(
                EquivarianceBreak(pi.snapshot(), E, x), oracle
            )
    raise EngineBug("probe bound exhausted without witness")


def refute_fin_to_seqstar_fraenkel(oracle: InjectionOracle):
    """Break a purported injection finite-sets -> arbitrary sequences,
    probing two disjoint fresh pairs.  A value naming an atom outside the
    support dies by the pair swap; two support-only values either repeat
    (collapse) or are exchanged by the pair-to-pair map they should
    commute with."""
    s = oracle.structure
    E = list(oracle.support)
    used: Set[Atom] = set(E)

    def probe():
        nonlocal used
        p = _acquire(s, 2, used)
        used |= set(p)
        x = hfset(p)
        return p, x, oracle.query(x)

    def outside_break(pair, x, y):
        target = next(a for a in y if a not in E)
        constraints = {pair[0]: pair[1], pair[1]: pair[0]}
        if target not in pair:
            (z,) = _acquire(s, 1, used | atoms_of(y))
            constraints.update({target: z, z: target})
        pi = extend_fixing(s, E, constraints)
        act(pi, x), act(pi, y)
        return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)

    pair1, x1, y1 = probe()
    if any(a not in E for a in y1):
        return outside_break(pair1, x1, y1)
    pair2, x2, y2 = probe()
    if any(a not in E for a in y2):
        return outside_break(pair2, x2, y2)
    if oracle_key(y1) == oracle_key(y2):
        return _checked(InjectivityCollapse(x1, x2, y1), oracle)
    pi = extend_fixing(
        s,
        E,
        {pair1[0]: pair2[0], pair2[0]: pair1[0], pair1[1]: pair2[1], pair2[1]: pair1[1]},
    )
    act(pi, x1), act(pi, y1)
    return _checked(EquivarianceBreak(pi.snapshot(), E, x1), oracle)


def refute_seq_to_power_fraenkel(oracle: InjectionOracle):
    """Break a purported injection one-to-one-sequences -> power object.

    Enumerates every one-to-one sequence over the support; there are more
    of them than there are subsets supported by the support, so either
    two values repeat or some value needs an atom beyond the support, and
    a transposition of that atom with a fresh one breaks equivariance."""
    s = oracle.structure
    E = list(oracle.support)
    n = len(E)
    if n < 4:
        raise ValueError("this argument needs a support of at least 4 atoms")
    counting = {"seq_count": seq_count(n), "supported_bound": 2 * 2 ** n}
    if not counting["seq_count"] > counting["supported_bound"]:
        raise EngineBug("counting step failed; the argument does not apply")
    seen: Dict[tuple, object] = {}
    used: Set[Atom] = set(E)
    for entry in all_seqs(E):
        x = hftuple(entry)
        y = oracle.query(x)
        k = oracle_key(y)
        if k in seen:
            return _checked(
                InjectivityCollapse(seen[k], x, y, details=counting), oracle
            )
        seen[k] = x
        escape = [a for a in least_support(y) if a not in E]
        if escape:
            target = escape[0]
            (z,) = _acquire(s, 1, used | set(y.support) | {target})
            used.add(z)
            pi = extend_fixing(s, E, {target: z, z: target})
            act(pi, x), act(pi, y)
            return _checked(
                EquivarianceBreak(pi.snapshot(), E, x, details=counting), oracle
            )
    raise EngineBug("pigeonhole failed; engine or counting is wrong")


def refute_nat_to_power_fraenkel(oracle: InjectionOracle):
    """Break a purported injection of the naturals into the power object:
    naturals are fixed by every automorphism, so a value whose least
    support escapes the declared support cannot be stable, and values
    supported by the support run out."""
    s = oracle.structure
    E = list(oracle.support)
    used: Set[Atom] = set(E)
    seen: Dict[tuple, object] = {}
    bound = 2 ** (len(E) + 1) + 1
    for n in range(bound):
        y = oracle.query(n)
        k = oracle_key(y)
        if k in seen:
            return _checked(InjectivityCollapse(seen[k], n, y), oracle)
        seen[k] = n
        escape = [a for a in least_support(y) if a not in E]
        if escape:
            target = escape[0]
            (z,) = _acquire(s, 1, used | set(y.support) | {target})
            pi = extend_fixing(s, E, {target: z, z: target})
            act(pi, y)
            return _checked(EquivarianceBreak(pi.snapshot(), E, n), oracle)
    raise EngineBug("probe bound exhausted without witness")


# ---------------------------------------------------------------------------
# omega-sequence extractors


class StreamResult:
    """Either T pairwise-distinct extracted values, or a collapse report
    naming two probed inputs; never both."""

    def __init__(self, values: list, collapse=None):
        self.values = values
        self.collapse = collapse

    @property
    def ok(self) -> bool:
        return self.collapse is None

    def __repr__(self):
        if self.ok:
            return f"StreamResult({len(self.values)} values)"
        return f"StreamResult(collapse={self.collapse!r})"


def extract_fin_to_atom_mostowski(oracle: InjectionOracle, count: int) -> StreamResult:
    """Iterate the value on the set of everything extracted so far; the
    inputs grow strictly, so a repeated atom convicts the oracle."""
    emitted: List[Atom] = []
    for k in range(count):
        x = hfset(emitted)
        y = oracle.query(x)
        for j, prev in enumerate(emitted):
            if prev == y:
                earlier = hfset(emitted[:j])
                collapse = InjectivityCollapse(earlier, x, y)
                verify_witness(collapse, oracle.structure, oracle.support, oracle.transcript)
                return StreamResult(emitted, collapse)
        emitted.append(y)
    return StreamResult(emitted)


def extract_seqstar_to_seq(oracle: InjectionOracle, marker: Atom, count: int) -> StreamResult:
    """Probe constant sequences of growing length; the one-to-one values
    over finitely many atoms run out, so new atoms keep appearing."""
    seen_answers: Dict[tuple, object] = {}
    seen_atoms: List[Atom] = []
    known: Set[Atom] = set()
    n = 0
    idle = 0
    while len(seen_atoms) < count:
        x = hftuple([marker] * n)
        y = oracle.query(x)
        k = oracle_key(y)
        if k in seen_answers:
            collapse = InjectivityCollapse(seen_answers[k], x, y)
            verify_witness(collapse, oracle.structure, oracle.support, oracle.transcript)
            return StreamResult(seen_atoms, collapse)
        seen_answers[k] = x
        fresh = [a for a in y if a not in known]
        if fresh:
            idle = 0
            for a in fresh:
                known.add(a)
                seen_atoms.append(a)
        else:
            idle += 1
            if idle > seq_count(len(known)) + 1:
                raise EngineBug("distinct one-to-one values over a finite set ran out")
        n += 1
    return StreamResult(seen_atoms[:count])


def extract_from_surplus(n: int, oracle: InjectionOracle, count: int, seed=frozenset()) -> StreamResult:
    """From a purported injection (n+1) copies -> n copies of a power set,
    extract pairwise-distinct subsets: each sweep over the labelled
    current values has more inputs than available answers, so the first
    sweep without an escaping second component repeats an answer."""
    values: List[frozenset] = [seed]
    answers: Dict[tuple, tuple] = {}
    while len(values) < count:
        known = set(values)
        escaped = False
        for i in range(len(values)):
            for label in range(n + 1):
                x = (label, values[i])
                y = oracle.query(x)
                k = oracle_key(y)
                if k in answers and oracle_key(answers[k]) != oracle_key(x):
                    collapse = InjectivityCollapse(answers[k], x, y)
                    verify_witness(
                        collapse, oracle.structure, oracle.support, oracle.transcript
                    )
                    return StreamResult(values, collapse)
                answers[k] = x
                if y[1] not in known:
                    values.append(y[1])
                    escaped = True
                    break
            if escaped:
                break
        if not escaped:
            raise EngineBug("sweep ended without escape or repeat")
    return StreamResult(values[:count])


def rgs_partitions(l: int):
    """Set partitions of range(l) as block tuples, in lexicographic order
    of their restricted-growth strings."""
    a = [0] * l
    while True:
        blocks: Dict[int, list] = {}
        for i, bi in enumerate(a):
            blocks.setdefault(bi, []).append(i)
        yield tuple(tuple(blocks[b]) for b in sorted(blocks))
        # next restricted growth string
        i = l - 1
        while i > 0:
            if a[i] <= max(a[:i]):
                a[i] += 1
                for j in range(i + 1, l):
                    a[j] = 0
                break
            a[i] = 0
            i -= 1
        else:
            return


def extract_from_partition_injection(
    oracle: InjectionOracle,
    ground: Sequence[int],
    distinguished: Sequence[int],
    count: int,
) -> StreamResult:
    """From a purported injection partitions -> subsets, extract
    pairwise-distinct subsets.  Starting from four singled-out points,
    each round refines the current blocks by the first probed value that
    is not a union of blocks; coarse partitions outnumber the unions, so
    the round always ends in an escape or a repeat."""
    ground = list(dict.fromkeys(ground))
    a = list(distinguished)[:4]
    if len(a) != 4 or len(ground) <= 4:
        raise ValueError("need four distinguished points inside a larger ground set")
    rest = frozenset(g for g in ground if g not in a)
    X: List[frozenset] = [frozenset({p}) for p in a] + [frozenset(ground)]
    emitted: List[frozenset] = []
    answers: Dict[tuple, object] = {}
    while len(emitted) < count:
        chi = {}
        for g in ground:
            chi.setdefault(tuple(0 if g in x else 1 for x in X), []).append(g)
        blocks = [frozenset(chi[sig]) for sig in sorted(chi)]
        l = len(blocks)
        probes_left = 2 ** l + 2
        for q in rgs_partitions(l):
            if probes_left <= 0:
                raise EngineBug("per-round probe bound exhausted")
            probes_left -= 1
            parts = frozenset(
                frozenset().union(*(blocks[i] for i in qb)) for qb in q
            )
            y = oracle.query(parts)
            k = oracle_key(y)
            if k in answers and oracle_key(answers[k]) != oracle_key(parts):
                collapse = InjectivityCollapse(answers[k], parts, y)
                verify_witness(
                    collapse, oracle.structure, oracle.support, oracle.transcript
                )
                return StreamResult(emitted, collapse)
            answers[k] = parts
            if any(b & y and not b <= y for b in blocks):
                X.append(y)
                emitted.append(y)
                break
        else:
            raise EngineBug("partition supply exhausted before the pigeonhole")
    return StreamResult(emitted[:count])


# ---------------------------------------------------------------------------
# pair-model engine


def _pair_closed(E: Sequence[Atom]) -> bool:
    have = set(E)
    for e in E:
        if e.level > 0:
            _, (x, y), _ = e.payload
            if x not in have or y not in have:
                return False
    return True


def refute_unordered_to_ordered_pairmodel(
    oracle: InjectionOracle, budget: int = 8
):
    """Break a purported injection unordered-pairs -> ordered-pairs over
    the pair-model atoms.

    All pairs from a sample of fresh base atoms are probed and coloured
    by where the two value components land (a support atom, the smaller
    or larger input, another base atom, a decorated atom).  A repeated
    value collapses immediately; otherwise a colour-monochromatic triple
    drives the case split: min/max values die by swapping the pair,
    stray base atoms by a transposition with a fresh atom, decorated
    atoms by a bit flip at their level with structured fallbacks.  With a
    sample smaller than the coloring guarantee the engine may report
    budget exhaustion, never a wrong witness."""
    from .cardtable import ramsey_upper

    s = oracle.structure
    if not isinstance(s, PairStructure):
        raise ValueError("this engine runs over the pair model")
    E = list(oracle.support)
    if not _pair_closed(E):
        raise ValueError("support must contain the components of its pair atoms")
    k = len(E)
    r = k + 4
    needed = ramsey_upper(r * r)
    avoid = set(E) | PairStructure.fixed_bases(E)
    sample = _acquire(s, min(budget, needed), avoid)
    sample.sort(key=lambda a: a.payload)
    pinned = PairStructure.pinned_levels(E)

    # probe every pair, collapsing eagerly on a repeated value
    answer: Dict[Tuple[int, int], HFTuple] = {}
    seen: Dict[tuple, object] = {}
    for i, j in itertools.combinations(range(len(sample)), 2):
        x = hfset(sample[i], sample[j])
        y = oracle.query(x)
        kk = oracle_key(y)
        if kk in seen:
            return _checked(InjectivityCollapse(seen[kk], x, y), oracle)
        seen[kk] = x
        answer[(i, j)] = y

    def colour(t: Atom, i: int, j: int) -> int:
        if t in E:
            return E.index(t)
        if t == sample[i]:
            return k
        if t == sample[j]:
            return k + 1
        if t.level == 0:
            return k + 2
        return k + 3

    tau = {
        ij: (colour(answer[ij].items[0], *ij), colour(answer[ij].items[1], *ij))
        for ij in answer
    }

    def try_case(iA: int, iB: int, iC: int, colours: Tuple[int, int]):
        xA, xB, xC = sample[iA], sample[iB], sample[iC]
        x = hfset(xA, xB)
        y = answer[(iA, iB)]
        if set(colours) == {k, k + 1}:
            pi = extend_fixing(s, E, {xA: xB, xB: xA})
            act(pi, x), act(pi, y)
            return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
        if k + 2 in colours:
            t = y.items[colours.index(k + 2)]
            keep = set(E) | {xA, xB}
            (z,) = _acquire(s, 1, avoid | set(sample) | atoms_of(y))
            pi = extend_fixing(s, list(keep), {t: z, z: t})
            if pi is not None:
                act(pi, x), act(pi, y)
                return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
        if k + 3 in colours:
            t = y.items[colours.index(k + 3)]
            lvl, payload_pair, eps = t.payload
            if lvl not in pinned:
                flipped = s.pair_atom(lvl, *payload_pair, 1 - eps)
                pi = extend_fixing(s, list(set(E) | {xA, xB}), {t: flipped})
                if pi is not None:
                    act(pi, x), act(pi, y)
                    return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
            # bit pinned: move a stray base component, if any
            strays = [
                b
                for b in PairStructure.hereditary_atoms(t)
                if b.level == 0 and b not in avoid and b not in (xA, xB)
            ]
            if strays:
                (z,) = _acquire(s, 1, avoid | set(sample) | atoms_of(y))
                pi = extend_fixing(s, list(set(E) | {xA, xB}), {strays[0]: z, z: strays[0]})
                if pi is not None and oracle_key(act(pi, y)) != oracle_key(y):
                    return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
            # value built over the input pair: swapping the pair may move it
            pi = extend_fixing(s, E, {xA: xB, xB: xA})
            if pi is not None and oracle_key(act(pi, y)) != oracle_key(y):
                act(pi, x)
                return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
            # last resort: rotate the triple; the value is pinned, the input moves
            pi = extend_fixing(s, E, {xA: xB, xB: xC, xC: xA})
            if pi is not None:
                piy = act(pi, y)
                y2 = answer[(iB, iC)]
                if oracle_key(piy) != oracle_key(y2):
                    act(pi, x)
                    return _checked(EquivarianceBreak(pi.snapshot(), E, x), oracle)
        return None

    for iA, iB, iC in itertools.combinations(range(len(sample)), 3):
        c = tau[(iA, iB)]
        if tau[(iA, iC)] == c and tau[(iB, iC)] == c:
            if set(c) <= set(range(k)) | {k, k + 1} and set(c) != {k, k + 1}:
                raise EngineBug(
                    "support-determined values survived the eager collapse scan"
                )
            w = try_case(iA, iB, iC, c)
            if w is not None:
                return w
    if len(sample) < needed:
        return BudgetExhausted(needed, len(sample))
    raise EngineBug("guaranteed monochromatic triple not found")


# ---------------------------------------------------------------------------
# witness files


def witness_to_json(witness, engine: str, oracle: InjectionOracle) -> dict:
    from .atoms import atom_to_json

    out = {
        "version": 1,
        "engine": engine,
        "oracle": oracle.name,
        "structure": oracle.structure.to_json(),
        "support": [atom_to_json(a) for a in oracle.support],
        "transcript": [
            [hf_to_json(x), hf_to_json(y)] for x, y in oracle.transcript
        ],
        "witness": {"kind": witness.kind},
    }
    w = out["witness"]
    if isinstance(witness, InjectivityCollapse):
        w["x1"] = hf_to_json(witness.x1)
        w["x2"] = hf_to_json(witness.x2)
        w["y"] = hf_to_json(witness.y)
    elif isinstance(witness, EquivarianceBreak):
        w["pi"] = witness.pi.to_json()
        w["x"] = hf_to_json(witness.x)
    elif isinstance(witness, BudgetExhausted):
        w["needed"] = witness.needed
        w["budget"] = witness.budget
    if getattr(witness, "details", None):
        w["details"] = witness.details
    return out


def witness_from_json(data: dict):
    from .atoms import atom_from_json, structure_from_json

    structure = structure_from_json(data["structure"])
    support = tuple(atom_from_json(a) for a in data["support"])
    transcript = [
        (hf_from_json(x, structure), hf_from_json(y, structure))
        for x, y in data["transcript"]
    ]
    w = data["witness"]
    if w["kind"] == InjectivityCollapse.kind:
        witness = InjectivityCollapse(
            hf_from_json(w["x1"], structure),
            hf_from_json(w["x2"], structure),
            hf_from_json(w["y"], structure),
        )
    elif w["kind"] == EquivarianceBreak.kind:
        witness = EquivarianceBreak(
            PartialAutomorphism.from_json(w["pi"]), support, hf_from_json(w["x"], structure)
        )
    elif w["kind"] == BudgetExhausted.kind:
        witness = BudgetExhausted(w["needed"], w["budget"])
    else:
        raise ValueError(f"unknown witness kind {w['kind']!r}")
    return witness, structure, support, transcript


def verify_witness_json(data: dict) -> bool:
    witness, structure, support, transcript = witness_from_json(data)
    return verify_witness(witness, structure, support, transcript)


# ---------------------------------------------------------------------------
# finite combinatorial maps


class DisjointClasses:
    def __init__(self, classes: List[frozenset], signatures: List[tuple]):
        self.classes = classes
        self.signatures = signatures

    def __repr__(self):
        return f"DisjointClasses({self.classes})"


def disjointify_finite(m: Iterable, ps: Sequence[Iterable]) -> DisjointClasses:
    """Split a finite set by membership signature against a list of
    distinct subsets: the classes partition the set, every listed subset
    is a union of classes, and the classes carry the induced total order
    (membership bit 0, non-membership 1, ordered lexicographically)."""
    m = list(dict.fromkeys(m))
    ps = [frozenset(p) for p in ps]
    if len(set(ps)) != len(ps):
        raise ValueError("listed subsets must be pairwise distinct")
    by_sig: Dict[tuple, list] = {}
    for x in m:
        sig = tuple(0 if x in p else 1 for p in ps)
        by_sig.setdefault(sig, []).append(x)
    sigs = sorted(by_sig)
    classes = [frozenset(by_sig[sig]) for sig in sigs]
    for p in ps:
        assert all(c <= p or not c & p for c in classes)
    if ps and all(ps):
        assert len(classes) >= ceil(log2(len(ps) + 1))
    return DisjointClasses(classes, sigs)


def surjection_to_power_injection(g: Dict, onto: Optional[Iterable] = None) -> Dict:
    """Turn a finite surjection y ->> x into the preimage injection
    P(x) -> P(y)."""
    image = set(g.values())
    if onto is not None and set(onto) != image:
        raise ValueError("map is not onto the declared codomain")
    table = {}
    xs = sorted(image, key=repr)
    for k in range(len(xs) + 1):
        for combo in itertools.combinations(xs, k):
            X = frozenset(combo)
            table[X] = frozenset(y for y, v in g.items() if v in X)
    assert len(set(table.values())) == len(table)
    return table


def partition_to_edges(p: Iterable) -> frozenset:
    """A partition as the set of within-block unordered pairs."""
    blocks = [frozenset(b) for b in p]
    union: set = set()
    for b in blocks:
        if not b or union & b:
            raise ValueError("not a partition: empty or overlapping blocks")
        union |= b
    return frozenset(
        frozenset(pair) for b in blocks for pair in itertools.combinations(b, 2)
    )
