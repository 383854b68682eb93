"""Alphabets, words, substitutions and certified truncated factor sets.

Words are plain Python strings whose characters all belong to an ordered
alphabet.  A :class:`FactorSet` holds every factor of a subshift up to a
horizon ``L`` together with a completeness certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    BudgetExceeded,
    InsufficientHorizon,
    NotPrimitive,
    ParseError,
)

DEFAULT_MAX_PREFIX = 10**6
DEFAULT_MAX_HORIZON = 64


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet has duplicate letters")
        for c in self.letters:
            if len(c) != 1:
                raise ValueError(f"letters must be single characters, got {c!r}")

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.letters)}

    def __contains__(self, letter: str) -> bool:
        return letter in self._index

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} not in alphabet {self.letters}")

    def key(self, word: str):
        """Sort key ordering words by length, then by alphabet order."""
        return (len(word), [self.index(c) for c in word])

    def check_word(self, word: str) -> str:
        for c in word:
            if c not in self._index:
                raise ValueError(f"letter {c!r} not in alphabet {self.letters}")
        return word


def factors_of(word: str, maxlen: int) -> set[str]:
    """All factors of ``word`` of length at most ``maxlen`` (including '')."""
    out = {""}
    n = len(word)
    for i in range(n):
        top = min(maxlen, n - i)
        for j in range(1, top + 1):
            out.add(word[i : i + j])
    return out


def occurrences(pattern: str, text: str) -> int:
    """Number of (possibly overlapping) occurrences of ``pattern``."""
    if not pattern:
        return len(text) + 1
    count = 0
    start = 0
    while True:
        pos = text.find(pattern, start)
        if pos < 0:
            return count
        count += 1
        start = pos + 1


@dataclass(frozen=True)
class Substitution:
    """A letter-to-word morphism with nonempty images."""

    alphabet: Alphabet
    images: dict[str, str]

    def __post_init__(self) -> None:
        for a in self.alphabet:
            img = self.images.get(a)
            if not img:
                raise ValueError(f"image of {a!r} missing or empty")
            self.alphabet.check_word(img)
        extra = set(self.images) - set(self.alphabet.letters)
        if extra:
            raise ValueError(f"images given for unknown letters {sorted(extra)}")

    @classmethod
    def parse(cls, text: str) -> "Substitution":
        """Parse the ``"a->ab;b->a"`` serialization."""
        images: dict[str, str] = {}
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            if "->" not in part:
                raise ParseError(f"missing '->' in {part!r}")
            left, _, right = part.partition("->")
            left, right = left.strip(), right.strip()
            if len(left) != 1 or not right:
                raise ParseError(f"bad rule {part!r}")
            if left in images:
                raise ParseError(f"duplicate rule for {left!r}")
            images[left] = right
        if not images:
            raise ParseError("no rules given")
        alphabet = Alphabet.of(sorted(images))
        return cls(alphabet, images)

    def serialize(self) -> str:
        return ";".join(f"{a}->{self.images[a]}" for a in self.alphabet)

    def __call__(self, word: str) -> str:
        return self.apply(word)

    def apply(self, word: str) -> str:
        """Homomorphic extension: concatenation of letter images."""
        return "".join(self.images[self.alphabet.check_word(c)] for c in word)

    def iterate(self, letter: str, k: int, budget: int = DEFAULT_MAX_PREFIX) -> str:
        """The word obtained by applying the substitution ``k`` times to a letter."""
        if k < 0:
            raise ValueError("iteration count must be nonnegative")
        w = self.alphabet.check_word(letter)
        for _ in range(k):
            w = self.apply(w)
            if len(w) > budget:
                raise BudgetExceeded(f"iterate longer than budget {budget}")
        return w

    def incidence_matrix(self) -> list[list[int]]:
        """Entry [i][j] counts occurrences of letter i in the image of letter j."""
        letters = self.alphabet.letters
        return [
            [self.images[b].count(a) for b in letters]
            for a in letters
        ]

    def is_primitive(self) -> bool:
        """True iff some power of the incidence matrix is entrywise positive.

        The power (|A|-1)^2 + 1 suffices (Wielandt's bound).
        """
        k = len(self.alphabet)
        n = (k - 1) ** 2 + 1
        m = self.incidence_matrix()
        # boolean matrix power by repeated multiplication; k is tiny
        acc = m
        for _ in range(n - 1):
            acc = [
                [
                    int(any(acc[i][t] and m[t][j] for t in range(k)))
                    for j in range(k)
                ]
                for i in range(k)
            ]
        return all(all(row) for row in acc)


class FactorSet:
    """All factors of a subshift up to a horizon, with provenance.

    ``complete`` asserts that ``factors`` equals the set of all factors of
    the underlying subshift of length <= ``horizon``.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        horizon: int,
        factors: Iterable[str],
        complete: bool,
        source: str,
    ) -> None:
        self.alphabet = alphabet
        self.horizon = horizon
        self.factors = frozenset(factors)
        self.complete = complete
        self.source = source
        self._by_length: dict[int, tuple[str, ...]] = {}

    def __contains__(self, word: str) -> bool:
        return word in self.factors

    def __len__(self) -> int:
        return len(self.factors)

    def words_of_length(self, n: int) -> tuple[str, ...]:
        if n not in self._by_length:
            key = self.alphabet.key
            self._by_length[n] = tuple(
                sorted((w for w in self.factors if len(w) == n), key=key)
            )
        return self._by_length[n]

    def sorted_words(self) -> list[str]:
        return sorted(self.factors, key=self.alphabet.key)

    def complexity(self, n: int) -> int:
        """Number of factors of length exactly ``n``."""
        if n > self.horizon:
            raise InsufficientHorizon(f"complexity({n}) beyond horizon {self.horizon}")
        if not self.complete:
            raise InsufficientHorizon("factor set is not certified complete")
        return len(self.words_of_length(n))

    def uniform_recurrence_witness(self, x: str) -> int:
        """Least n such that ``x`` occurs in every factor of length n."""
        if x not in self.factors:
            raise ValueError(f"{x!r} is not a factor")
        if not self.complete:
            raise InsufficientHorizon("factor set is not certified complete")
        if x == "":
            return 0
        for n in range(len(x), self.horizon + 1):
            if all(x in w for w in self.words_of_length(n)):
                return n
        raise InsufficientHorizon(
            f"no uniform recurrence witness for {x!r} within horizon {self.horizon}"
        )

    # -- constructors -------------------------------------------------

    @classmethod
    def from_substitution(
        cls,
        subst: Substitution,
        letter: str,
        horizon: int,
        max_prefix: int = DEFAULT_MAX_PREFIX,
        max_rounds: int = 1000,
    ) -> "FactorSet":
        """Certified factor set of the fixed point of a primitive substitution.

        Seeds the set with factors of iterates of ``letter``, then closes it
        under "apply the substitution to a maximal factor and re-collect".
        The closure fixpoint is exactly the set of length-<=horizon factors
        of all iterates, which certifies completeness for primitive input.
        """
        if not subst.is_primitive():
            raise NotPrimitive(f"{subst.serialize()} is not primitive")
        subst.alphabet.check_word(letter)

        seed: set[str] = set()
        w = letter
        seed |= factors_of(w, horizon)
        while len(w) < 2 * horizon + 2:
            nxt = subst.apply(w)
            if nxt == w:
                break
            w = nxt
            if len(w) > max_prefix:
                raise BudgetExceeded("fixed-point prefix budget exceeded")
            seed |= factors_of(w, horizon)

        factors = set(seed)
        for _ in range(max_rounds):
            top = min(horizon, max(len(v) for v in factors))
            frontier = [v for v in factors if len(v) == top]
            new: set[str] = set()
            for v in frontier:
                for f in factors_of(subst.apply(v), horizon):
                    if f not in factors:
                        new.add(f)
            if not new:
                break
            factors |= new
        else:
            raise BudgetExceeded("factor-set stabilization budget exceeded")

        return cls(
            subst.alphabet,
            horizon,
            factors,
            complete=True,
            source=f"substitution {subst.serialize()} from {letter}",
        )

    @classmethod
    def from_periodic(cls, word: str, horizon: int) -> "FactorSet":
        """Factors of the periodic word ``word^infinity``."""
        if not word:
            raise ValueError("periodic word must be nonempty")
        alphabet = Alphabet.of(sorted(set(word)))
        reps = (horizon // len(word)) + 2
        factors = factors_of(word * reps, horizon)
        return cls(alphabet, horizon, factors, complete=True, source=f"periodic {word}")

    @classmethod
    def from_words(
        cls,
        alphabet: Alphabet,
        words: Iterable[str],
        horizon: int,
        complete: bool = False,
        source: str = "explicit list",
    ) -> "FactorSet":
        """Factorial closure of an explicit word list, truncated at the horizon."""
        factors: set[str] = set()
        for w in words:
            alphabet.check_word(w)
            factors |= factors_of(w, horizon)
        return cls(alphabet, horizon, factors, complete=complete, source=source)

    # -- export -------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join(self.sorted_words())

    def to_json(self) -> str:
        return json.dumps(
            {
                "horizon": self.horizon,
                "complete": self.complete,
                "factors": self.sorted_words(),
            },
            sort_keys=True,
        )

    def check_factorial(self) -> bool:
        """Every factor of a member is a member (test support)."""
        return all(
            w[1:] in self.factors and w[:-1] in self.factors
            for w in self.factors
            if w
        )
