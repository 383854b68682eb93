"""Bifix codes, parses, F-degree, group-code intersections and their groups."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import InsufficientHorizon
from .monoid import Automaton, PermGroup, f_group, parse_permutation
from .words import Alphabet, FactorSet


def is_prefix_free(words: Iterable[str]) -> bool:
    ws = set(words)
    return not any(
        u != v and v.startswith(u) for u in ws for v in ws
    )


def is_suffix_free(words: Iterable[str]) -> bool:
    ws = set(words)
    return not any(
        u != v and v.endswith(u) for u in ws for v in ws
    )


def is_bifix(words: Iterable[str]) -> bool:
    ws = set(words)
    if "" in ws:
        return False
    return is_prefix_free(ws) and is_suffix_free(ws)


@dataclass(frozen=True)
class BifixCode:
    words: frozenset[str]

    def __post_init__(self) -> None:
        if not is_bifix(self.words):
            raise ValueError("word set is not bifix")

    @classmethod
    def of(cls, words: Iterable[str]) -> "BifixCode":
        return cls(frozenset(words))

    def sorted_words(self) -> list[str]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def max_length(self) -> int:
        return max(len(w) for w in self.words)

    def to_json(self) -> str:
        return json.dumps(self.sorted_words())


@dataclass(frozen=True)
class Parse:
    prefix: str
    blocks: tuple[str, ...]
    suffix: str

    def word(self) -> str:
        return self.prefix + "".join(self.blocks) + self.suffix


def _star_factorization(w: str, start: int, X: frozenset[str]) -> dict[int, tuple[str, ...]]:
    """One X-factorization of w[start:j] per reachable endpoint j (X a code)."""
    out: dict[int, tuple[str, ...]] = {start: ()}
    for i in range(start, len(w) + 1):
        if i not in out:
            continue
        for x in X:
            j = i + len(x)
            if j <= len(w) and w.startswith(x, i) and j not in out:
                out[j] = out[i] + (x,)
    return out


def parses(w: str, X: BifixCode) -> list[Parse]:
    """All parses (p, x-blocks, q) with p suffixless and q prefixless in X."""
    out = []
    for i in range(len(w) + 1):
        p = w[:i]
        if any(p.endswith(x) for x in X.words):
            continue
        for j, blocks in sorted(_star_factorization(w, i, X.words).items()):
            q = w[j:]
            if any(q.startswith(x) for x in X.words):
                continue
            out.append(Parse(p, blocks, q))
    return out


def f_degree(X: BifixCode, F: FactorSet) -> int:
    """Maximal parse count over factors; attained on non-internal factors.

    A factor at least as long as the longest code word cannot be internal
    to a code word, so its parse count realizes the maximum.
    """
    if not F.complete:
        raise InsufficientHorizon("factor set is not certified complete")
    n = X.max_length()
    if n > F.horizon:
        raise InsufficientHorizon(f"degree needs factors of length {n}")
    witnesses = F.words_of_length(n)
    if not witnesses:
        raise ValueError("factor set has no word of the required length")
    return max(len(parses(w, X)) for w in witnesses)


# ------------------------------------------------------------ group codes


@dataclass(frozen=True)
class GroupCodeSpec:
    """Transitive permutation morphism with a distinguished stabilized point.

    The group code is the set of words whose image stabilizes ``base_point``
    along a path that first returns to it exactly at the end.
    """

    domain: tuple
    images: dict  # letter -> point permutation (dict)
    base_point: object

    @classmethod
    def from_cycles(
        cls, domain: Iterable, cycles: dict[str, str], base_point=None
    ) -> "GroupCodeSpec":
        dom = tuple(domain)
        images = {a: parse_permutation(text, dom) for a, text in cycles.items()}
        return cls(dom, images, dom[0] if base_point is None else base_point)

    @classmethod
    def cyclic(cls, m: int, weights: dict[str, int]) -> "GroupCodeSpec":
        """Regular representation of Z/m with letter a adding weights[a]."""
        dom = tuple(range(m))
        images = {
            a: {p: (p + k) % m for p in dom} for a, k in weights.items()
        }
        return cls(dom, images, 0)

    def degree(self) -> int:
        """Index of the stabilizer = orbit size of the base point."""
        orbit = {self.base_point}
        queue = [self.base_point]
        while queue:
            p = queue.pop()
            for g in self.images.values():
                if g[p] not in orbit:
                    orbit.add(g[p])
                    queue.append(g[p])
        return len(orbit)


def group_code_intersection(spec: GroupCodeSpec, F: FactorSet) -> BifixCode:
    """The code words of the group code that are factors.

    A factor belongs iff its point walk from the base returns to the base
    exactly at the end.  If some maximal-length factor has no nonempty
    prefix returning to the base, longer code words may have been cut off.
    """
    if not F.complete:
        raise InsufficientHorizon("factor set is not certified complete")
    base = spec.base_point
    out = set()
    for w in F.sorted_words():
        if not w:
            continue
        p = base
        internal_return = False
        for a in w[:-1]:
            p = spec.images[a][p]
            if p == base:
                internal_return = True
                break
        if internal_return:
            continue
        p = spec.images[w[-1]][p]
        if p == base:
            out.add(w)
    for w in F.words_of_length(F.horizon):
        p = base
        returned = False
        for a in w:
            p = spec.images[a][p]
            if p == base:
                returned = True
                break
        if not returned:
            raise InsufficientHorizon(
                f"factor {w!r} has no code-word prefix; horizon too small"
            )
    return BifixCode.of(out)


# ------------------------------------------------------------ automata


def minimal_automaton_of_star(X: BifixCode, alphabet: Alphabet | None = None) -> Automaton:
    """Minimal deterministic automaton of the submonoid generated by X.

    Built as the literal trie with code words looping back to the root,
    then minimized (partial-map Moore refinement with an explicit sink).
    """
    if alphabet is None:
        alphabet = Alphabet.of(sorted({c for w in X.words for c in w}))
    prefixes = sorted(
        {w[:i] for w in X.words for i in range(len(w))},
        key=lambda w: (len(w), w),
    )
    states = list(prefixes)  # "" is the root
    trans: dict[tuple[str, str], str | None] = {}
    for p in states:
        for a in alphabet:
            q = p + a
            if q in X.words:
                trans[(p, a)] = ""
            elif q in set(prefixes):
                trans[(p, a)] = q
            else:
                trans[(p, a)] = None

    # Moore minimization over states + sink
    sink = object()
    everything = states + [sink]
    block = {s: (0 if s == "" else 1 if s is not sink else 2) for s in everything}
    while True:
        signature = {}
        for s in everything:
            if s is sink:
                sig = (block[s], tuple(block[sink] for _ in alphabet))
            else:
                sig = (
                    block[s],
                    tuple(
                        block[trans[(s, a)] if trans[(s, a)] is not None else sink]
                        for a in alphabet
                    ),
                )
            signature[s] = sig
        relabel = {}
        for s in everything:
            relabel.setdefault(signature[s], len(relabel))
        new_block = {s: relabel[signature[s]] for s in everything}
        if new_block == block:
            break
        block = new_block

    class_of = {s: block[s] for s in states}

    # breadth-first renumbering from the root, states named 1..n
    root = class_of[""]
    order = [root]
    reps = {root: ""}
    queue = [""]
    while queue:
        s = queue.pop(0)
        for a in alphabet:
            t = trans[(s, a)]
            if t is None:
                continue
            c = class_of[t]
            if c not in reps:
                reps[c] = t
                order.append(c)
                queue.append(t)
    number = {c: i + 1 for i, c in enumerate(order)}
    transitions = {}
    for s in states:
        for a in alphabet:
            t = trans[(s, a)]
            if t is not None:
                transitions[(number[class_of[s]], a)] = number[class_of[t]]
    state_names = tuple(number[c] for c in order)
    return Automaton(
        alphabet,
        state_names,
        initial=1,
        terminals=frozenset({1}),
        transitions=transitions,
    )


def g_x_f(X: BifixCode, F: FactorSet, base: str | None = None):
    """The permutation group of the code on its minimal images in F."""
    A = minimal_automaton_of_star(X)
    return f_group(A, F, base=base)
