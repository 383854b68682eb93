"""Palindromic closure, directive words and episturmian return-word recipes."""

from __future__ import annotations

from .errors import BudgetExceeded, InsufficientHorizon, InternalInvariantError
from .words import Alphabet, FactorSet, Substitution, factors_of

DEFAULT_PAL_BUDGET = 10**6


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


def palindromic_closure(w: str) -> str:
    """Shortest palindrome having ``w`` as a prefix.

    If w = vq with q the longest palindromic suffix of w, the closure is
    v q reversed(v).
    """
    n = len(w)
    for i in range(n):
        if is_palindrome(w[i:]):
            return w + w[:i][::-1]
    return w  # n == 0


def palindromic_closure_bruteforce(w: str) -> str:
    """Oracle: scan extensions of ``w`` by increasing length."""
    candidate = w
    while not is_palindrome(candidate):
        candidate = w + candidate[: len(candidate) - len(w) + 1][::-1]
        # the closure never exceeds 2|w|
        if len(candidate) > 2 * len(w):
            raise InternalInvariantError("palindromic closure overran 2|w|")
    return candidate


def pal(u: str, budget: int = DEFAULT_PAL_BUDGET) -> str:
    """Iterated palindromic closure: Pal(ua) = (Pal(u)a)^(+), Pal('') = ''."""
    out = ""
    for a in u:
        out = palindromic_closure(out + a)
        if len(out) > budget:
            raise BudgetExceeded(f"palindromic prefix longer than {budget}")
    return out


def tower(u: str, budget: int = DEFAULT_PAL_BUDGET) -> list[str]:
    """The palindromic prefixes u_0 = '', u_1, ..., u_n for n = |u|."""
    out = [""]
    for a in u:
        nxt = palindromic_closure(out[-1] + a)
        if len(nxt) > budget:
            raise BudgetExceeded(f"palindromic prefix longer than {budget}")
        out.append(nxt)
    return out


def elementary_morphism(a: str, alphabet: Alphabet) -> Substitution:
    """The morphism sending a to a and every other letter b to ab."""
    images = {b: (a if b == a else a + b) for b in alphabet}
    return Substitution(alphabet, images)


def psi(u: str, alphabet: Alphabet) -> Substitution:
    """Composition of elementary morphisms along ``u`` (left factor outermost)."""
    images = {b: b for b in alphabet}
    for a in reversed(u):
        step = elementary_morphism(a, alphabet)
        images = {b: step.apply(images[b]) for b in alphabet}
    return Substitution(alphabet, images)


def justin_check(u: str, v: str, alphabet: Alphabet | None = None) -> bool:
    """Pal(uv) == psi_u(Pal(v)) + Pal(u); holds for all u, v."""
    if alphabet is None:
        alphabet = Alphabet.of(sorted(set(u + v)) or ["a"])
    return pal(u + v) == psi(u, alphabet).apply(pal(v)) + pal(u)


def episturmian_factor_set(
    directive: str,
    horizon: int,
    alphabet: Alphabet | None = None,
    budget: int = DEFAULT_PAL_BUDGET,
) -> FactorSet:
    """Certified factor set of the standard word directed by ``directive``.

    Grows the palindromic prefix until it is at least 2*horizon long and its
    set of factors of length <= horizon has been stable for a full cycle of
    alphabet letters; new short factors only arise from closure steps, so
    stability over every letter certifies completeness.
    """
    if alphabet is None:
        alphabet = Alphabet.of(sorted(set(directive)))
    u = ""
    seen = factors_of(u, horizon)
    stable = 0
    done = False
    for a in directive:
        alphabet.check_word(a)
        u = palindromic_closure(u + a)
        if len(u) > budget:
            raise BudgetExceeded(f"palindromic prefix longer than {budget}")
        current = factors_of(u, horizon)
        stable = stable + 1 if current == seen else 0
        seen = current
        if len(u) >= 2 * horizon and stable >= len(alphabet):
            done = True
            break
    if not done and horizon > 0:
        raise InsufficientHorizon(
            f"directive prefix {directive!r} reaches only length {len(u)} "
            f"without the length-{horizon} factors stabilizing"
        )
    return FactorSet.from_words(
        alphabet,
        [u],
        horizon,
        complete=True,
        source=f"episturmian directive {directive}",
    )


def episturmian_left_returns(
    directive: str,
    u: str,
    alphabet: Alphabet | None = None,
) -> set[str]:
    """Left return words to the factor ``u`` of the directed word.

    Recipe: take the minimal n with u a factor of the n-th palindromic
    prefix u_n, the unique z with z+u a prefix of u_n, and conjugate the
    images psi(directive[:n])(a) by z.
    """
    if not u:
        raise ValueError("factor must be nonempty")
    if alphabet is None:
        alphabet = Alphabet.of(sorted(set(directive)))
    alphabet.check_word(u)

    prefix = ""
    n = None
    for k, a in enumerate(directive, start=1):
        prefix = palindromic_closure(prefix + a)
        if u in prefix:
            n = k
            break
    if n is None:
        raise InsufficientHorizon(
            f"{u!r} not a factor of the prefix directed by {directive!r}"
        )

    zs = [
        prefix[:i]
        for i in range(len(prefix) - len(u) + 1)
        if prefix[i : i + len(u)] == u
    ]
    if len(zs) != 1:
        raise InternalInvariantError(
            f"{u!r} occurs {len(zs)} times in the minimal tower stage, expected once"
        )
    z = zs[0]

    morphism = psi(directive[:n], alphabet)
    out = set()
    for a in alphabet:
        y = morphism.apply(a)
        yz = y + z
        if not yz.startswith(z):
            raise InternalInvariantError(
                f"conjugation failed: {y!r} does not commute past {z!r}"
            )
        out.add(yz[len(z) :])
    return out
