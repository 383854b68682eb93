"""Pseudoword expressions evaluated in finite monoids, h-orders, separation.

Expressions are finite trees built from letters, concatenation, the
omega-power of a subexpression, and the omega-iterate of a substitution
applied to a letter.  They are evaluated through a morphism into a finite
monoid, where every such limit exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable

from .errors import (
    InternalInvariantError,
    NotACode,
    NothingToSeparate,
    NotPrimitive,
    ParseError,
)
from .monoid import FiniteMonoid, DEFAULT_MONOID_BUDGET
from .returns import right_return_words
from .words import FactorSet, Substitution


# ------------------------------------------------------------ expressions


class PseudowordExpr:
    pass


@dataclass(frozen=True)
class Letter(PseudowordExpr):
    letter: str


@dataclass(frozen=True)
class Concat(PseudowordExpr):
    left: PseudowordExpr
    right: PseudowordExpr


@dataclass(frozen=True)
class OmegaPower(PseudowordExpr):
    body: PseudowordExpr


@dataclass(frozen=True)
class SubstOmega(PseudowordExpr):
    subst: Substitution
    letter: str


@dataclass(frozen=True)
class MorphismToFinite:
    target: FiniteMonoid
    images: dict[str, Hashable]

    def of_word(self, word: str):
        return self.target.product(self.images[a] for a in word)


def _assignment_orbit(
    subst: Substitution, morphism: MorphismToFinite
) -> tuple[list[dict], int, int]:
    """Iterates of the induced update on letter assignments.

    Returns (orbit, preperiod, period) where orbit[n] maps each letter to
    the image of the n-th iterate of that letter.
    """
    letters = subst.alphabet.letters
    M = morphism.target
    vector = {a: morphism.images[a] for a in letters}
    orbit = [vector]
    seen = {tuple(vector[a] for a in letters): 0}
    while True:
        vector = {
            a: M.product(vector[b] for b in subst.images[a]) for a in letters
        }
        key = tuple(vector[a] for a in letters)
        if key in seen:
            start = seen[key]
            return orbit, start, len(orbit) - start
        seen[key] = len(orbit)
        orbit.append(vector)


def evaluate(expr: PseudowordExpr, morphism: MorphismToFinite):
    """Value of the expression under the morphism."""
    M = morphism.target
    if isinstance(expr, Letter):
        return morphism.images[expr.letter]
    if isinstance(expr, Concat):
        return M.mul(evaluate(expr.left, morphism), evaluate(expr.right, morphism))
    if isinstance(expr, OmegaPower):
        return M.omega_power(evaluate(expr.body, morphism))
    if isinstance(expr, SubstOmega):
        if not expr.subst.is_primitive():
            raise NotPrimitive("omega iterate requires a primitive substitution")
        orbit, start, period = _assignment_orbit(expr.subst, morphism)
        # factorials are eventually multiples of the period past the preperiod
        m = period * ((start + period - 1) // period) if start else 0
        return orbit[m][expr.letter]
    raise TypeError(f"not an expression: {expr!r}")


def eval_by_iteration(
    subst: Substitution, letter: str, morphism: MorphismToFinite, n: int
):
    """Oracle: image of the n!-th iterate, computed by n! update steps."""
    import math

    letters = subst.alphabet.letters
    M = morphism.target
    vector = {a: morphism.images[a] for a in letters}
    for _ in range(math.factorial(n)):
        vector = {
            a: M.product(vector[b] for b in subst.images[a]) for a in letters
        }
    return vector[letter]


def h_order(
    subst: Substitution, morphism: MorphismToFinite
) -> int | tuple[None, int, int]:
    """Least n >= 1 with the n-th assignment iterate back at the start.

    If the orbit never returns, yields (None, preperiod, period) instead.
    """
    orbit, start, period = _assignment_orbit(subst, morphism)
    if start == 0:
        return period
    return None, start, period


# ------------------------------------------------------------ parsing


def parse_expression(
    text: str, substitutions: dict[str, Substitution] | None = None
) -> PseudowordExpr:
    """Grammar: letters, juxtaposition, "^w" postfix, "subst^w(name, a)"."""
    substitutions = substitutions or {}
    pos = 0

    def peek() -> str:
        return text[pos] if pos < len(text) else ""

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_atom() -> PseudowordExpr:
        nonlocal pos
        skip_ws()
        if text.startswith("subst^w(", pos):
            pos += len("subst^w(")
            close = text.find(")", pos)
            if close < 0:
                raise ParseError("missing ')' in subst^w(...)")
            inner = text[pos:close]
            pos = close + 1
            parts = [p.strip() for p in inner.split(",")]
            if len(parts) != 2:
                raise ParseError(f"subst^w needs (name, letter), got {inner!r}")
            name, a = parts
            if name not in substitutions:
                raise ParseError(f"unknown substitution {name!r}")
            return SubstOmega(substitutions[name], a)
        if peek() == "(":
            pos += 1
            node = parse_concat()
            skip_ws()
            if peek() != ")":
                raise ParseError("missing ')'")
            pos += 1
            return node
        c = peek()
        if c.isalpha() and c.islower():
            pos += 1
            return Letter(c)
        raise ParseError(f"unexpected {c!r} at position {pos}")

    def parse_postfix() -> PseudowordExpr:
        nonlocal pos
        node = parse_atom()
        skip_ws()
        while text.startswith("^w", pos):
            pos += 2
            node = OmegaPower(node)
            skip_ws()
        return node

    def parse_concat() -> PseudowordExpr:
        nonlocal pos
        node = parse_postfix()
        skip_ws()
        while pos < len(text) and peek() not in ")":
            right = parse_postfix()
            node = Concat(node, right)
            skip_ws()
        return node

    node = parse_concat()
    skip_ws()
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos:]!r}")
    return node


# ------------------------------------------------------------ codes


def is_code(words: set[str] | frozenset[str]) -> bool:
    """Sardinas-Patterson: no word has two factorizations."""
    X = {w for w in words if w}
    if len(X) != len(words):
        return False  # the empty word is never part of a code
    first = {
        x[len(y):]
        for x in X
        for y in X
        if x != y and x.startswith(y)
    }
    seen: set[frozenset[str]] = set()
    current = first
    while current:
        if "" in current:
            return False
        key = frozenset(current)
        if key in seen:
            return True
        seen.add(key)
        nxt = set()
        for u in current:
            for x in X:
                if x.startswith(u) and x != u:
                    nxt.add(x[len(u):])
                if u.startswith(x):
                    if u != x:
                        nxt.add(u[len(x):])
                    else:
                        nxt.add("")
        current = nxt
    return True


# ------------------------------------------------------------ separation


def _matrix_mul(A, B, mul):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            term = None
            terms = [
                mul(A[i][k], B[k][j])
                for k in range(n)
                if A[i][k] is not None and B[k][j] is not None
            ]
            if terms:
                term = terms[0]
                for t in terms[1:]:
                    if t != term:
                        raise InternalInvariantError(
                            "ambiguous matrix entry: decoding not unambiguous"
                        )
            row.append(term)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class SeparationReport:
    prefixes: tuple[str, ...]
    alpha_u: tuple
    alpha_v: tuple
    separated: bool
    decode_checks: int
    matrix_monoid_size: int

    def to_json(self) -> str:
        def show(m):
            return [["." if e is None else str(e) for e in row] for row in m]

        return json.dumps(
            {
                "prefixes": list(self.prefixes),
                "alpha_u": show(self.alpha_u),
                "alpha_v": show(self.alpha_v),
                "separated": self.separated,
                "decode_checks": self.decode_checks,
                "matrix_monoid_size": self.matrix_monoid_size,
            },
            sort_keys=True,
        )


def separation_witness(
    X: set[str],
    beta: dict[str, str],
    psi: MorphismToFinite,
    u: str,
    v: str,
    samples: int = 100,
    seed: int = 0,
    budget: int = DEFAULT_MONOID_BUDGET,
) -> SeparationReport:
    """Matrix morphism realizing the decoder of X, separating u from v.

    States are the proper prefixes of X; the letter matrix records, for each
    prefix pair, the image under ``psi`` of whatever the decoder emits on
    that move (the identity while inside a code word).  The base entry of
    the matrix of an encoded word equals its image under ``psi``, so words
    with distinct images get distinct matrices.
    """
    import random

    X = frozenset(X)
    if not is_code(X):
        raise NotACode(f"{sorted(X)} is not a code")
    if set(beta.values()) != set(X) or len(beta) != len(X):
        raise ValueError("beta must be a bijection onto the code")
    M = psi.target
    if psi.of_word(u) == psi.of_word(v):
        raise NothingToSeparate("the two words have equal images already")

    decode = {x: y for y, x in beta.items()}
    prefixes = sorted(
        {x[:i] for x in X for i in range(len(x))}, key=lambda w: (len(w), w)
    )
    index = {p: i for i, p in enumerate(prefixes)}
    n = len(prefixes)
    alphabet = sorted({c for x in X for c in x})

    letter_matrix = {}
    for a in alphabet:
        rows = []
        for p in prefixes:
            row = [None] * n
            q = p + a
            if q in index:
                row[index[q]] = M.identity
            if q in X:
                entry = psi.images[decode[q]]
                if row[index[""]] is not None and row[index[""]] != entry:
                    raise InternalInvariantError("conflicting decoder moves")
                row[index[""]] = entry
            rows.append(tuple(row))
        letter_matrix[a] = tuple(rows)

    ident = tuple(
        tuple(M.identity if i == j else None for j in range(n)) for i in range(n)
    )
    mul = lambda A, B: _matrix_mul(A, B, M.mul)

    def alpha(word: str):
        acc = ident
        for a in word:
            acc = mul(acc, letter_matrix[a])
        return acc

    def encode(word: str) -> str:
        return "".join(beta[y] for y in word)

    e = index[""]
    letters_b = sorted(beta)
    rng = random.Random(seed)
    checks = 0
    for y in letters_b:
        if alpha(encode(y))[e][e] != psi.images[y]:
            raise InternalInvariantError(f"decoder identity fails on letter {y!r}")
        checks += 1
    for _ in range(samples):
        w = "".join(rng.choice(letters_b) for _ in range(rng.randint(0, 8)))
        if alpha(encode(w))[e][e] != psi.of_word(w):
            raise InternalInvariantError(f"decoder identity fails on {w!r}")
        checks += 1

    # size of the matrix monoid generated by the letter matrices
    seen = {ident}
    queue = [ident]
    while queue:
        m0 = queue.pop()
        for a in alphabet:
            m1 = mul(m0, letter_matrix[a])
            if m1 not in seen:
                seen.add(m1)
                queue.append(m1)
                if len(seen) > budget:
                    raise InternalInvariantError(
                        f"matrix monoid larger than budget {budget}"
                    )

    au, av = alpha(encode(u)), alpha(encode(v))
    return SeparationReport(
        tuple(prefixes), au, av, au != av, checks, len(seen)
    )


# ------------------------------------------------------------ convenience


def connective_code(F: FactorSet, a: str, b: str) -> set[str]:
    """The conjugated return-word code: a-conjugates of returns to ba."""
    out = set()
    for w in right_return_words(F, b + a).words:
        z = a + w
        if not z.endswith(a):
            raise InternalInvariantError("return word does not end as expected")
        out.add(z[: len(z) - len(a)])
    return out
