"""Command-line surface: one-shot deterministic computations, JSON output."""

from __future__ import annotations

import json
import sys

import click

from . import arith as arith_mod
from . import bifix as bifix_mod
from . import episturmian as epi_mod
from . import extension as ext_mod
from . import freegroup as fg_mod
from . import monoid as monoid_mod
from . import returns as ret_mod
from . import shadow as shadow_mod
from .errors import (
    BudgetExceeded,
    InsufficientHorizon,
    InternalInvariantError,
    MinishiftError,
    ParseError,
)
from .words import Alphabet, FactorSet, Substitution

EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


def emit(payload) -> None:
    click.echo(json.dumps(payload, sort_keys=True))


def build_factor_set(subst: str, start: str, horizon: int) -> FactorSet:
    return FactorSet.from_substitution(Substitution.parse(subst), start, horizon)


def parse_perm_images(text: str) -> dict[str, str]:
    """Parse "a:(1 2 3);b:(3 4 5)" into letter -> cycle text."""
    out = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ParseError(f"missing ':' in image {part!r}")
        letter, _, cycles = part.partition(":")
        out[letter.strip()] = cycles.strip()
    if not out:
        raise ParseError("no permutation images given")
    return out


def parse_weights(text: str) -> dict[str, int]:
    """Parse "a=1,b=1" into letter -> integer."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"missing '=' in weight {part!r}")
        letter, _, value = part.partition("=")
        try:
            out[letter.strip()] = int(value)
        except ValueError:
            raise ParseError(f"bad integer in weight {part!r}")
    if not out:
        raise ParseError("no weights given")
    return out


def group_spec_from_options(group: str, images: str, base_point) -> bifix_mod.GroupCodeSpec:
    if group.startswith("cyclic:"):
        m = int(group.split(":", 1)[1])
        return bifix_mod.GroupCodeSpec.cyclic(m, parse_weights(images))
    # permutation images define the group; named groups are only a hint
    cycles = parse_perm_images(images)
    points = set()
    for text in cycles.values():
        for tok in text.replace("(", " ").replace(")", " ").split():
            points.add(int(tok) if tok.lstrip("-").isdigit() else tok)
    domain = tuple(sorted(points))
    return bifix_mod.GroupCodeSpec.from_cycles(
        domain, cycles, base_point=base_point if base_point is not None else domain[0]
    )


def morphism_from_options(group: str, images: str) -> shadow_mod.MorphismToFinite:
    if group.startswith("cyclic:"):
        m = int(group.split(":", 1)[1])
        M = monoid_mod.cyclic_monoid(m)
        return shadow_mod.MorphismToFinite(M, parse_weights(images))
    cycles = parse_perm_images(images)
    points = set()
    for text in cycles.values():
        for tok in text.replace("(", " ").replace(")", " ").split():
            points.add(int(tok) if tok.lstrip("-").isdigit() else tok)
    domain = tuple(sorted(points))
    perms = {
        a: monoid_mod.parse_permutation(text, domain) for a, text in cycles.items()
    }
    M = monoid_mod.monoid_from_permutations(perms, domain)
    pos = {p: i for i, p in enumerate(domain)}
    gens = {a: tuple(pos[m[p]] for p in domain) for a, m in perms.items()}
    return shadow_mod.MorphismToFinite(M, gens)


@click.group()
def cli() -> None:
    """Finite computations on substitution shifts, return words and codes."""


@cli.command("subst")
@click.option("--subst", "subst_text", required=True)
@click.option("--apply", "apply_word", default=None)
@click.option("--iterate", "iterate_letter", default=None)
@click.option("-k", "--power", default=1, show_default=True)
@click.option("--primitive", is_flag=True)
def subst_cmd(subst_text, apply_word, iterate_letter, power, primitive):
    """Apply or iterate a substitution, or test primitivity."""
    sigma = Substitution.parse(subst_text)
    out = {"substitution": sigma.serialize()}
    if apply_word is not None:
        out["apply"] = sigma.apply(apply_word)
    if iterate_letter is not None:
        out["iterate"] = sigma.iterate(iterate_letter, power)
    if primitive:
        out["primitive"] = sigma.is_primitive()
    emit(out)


@cli.command("factors")
@click.option("--subst", "subst_text", default=None)
@click.option("--start", default=None)
@click.option("--periodic", default=None)
@click.option("--horizon", default=8, show_default=True)
@click.option("--complexity", "complexity_n", default=None, type=int)
@click.option("--witness", "witness_word", default=None)
def factors_cmd(subst_text, start, periodic, horizon, complexity_n, witness_word):
    """Certified factor set of a substitution fixed point or periodic word."""
    if periodic is not None:
        F = FactorSet.from_periodic(periodic, horizon)
    elif subst_text is not None and start is not None:
        F = build_factor_set(subst_text, start, horizon)
    else:
        raise click.UsageError("need --periodic or both --subst and --start")
    out = json.loads(F.to_json())
    if complexity_n is not None:
        out["complexity"] = F.complexity(complexity_n)
    if witness_word is not None:
        out["witness"] = F.uniform_recurrence_witness(witness_word)
    emit(out)


@cli.command("classify")
@click.option("--subst", "subst_text", required=True)
@click.option("--start", required=True)
@click.option("--maxlen", default=6, show_default=True)
@click.option("--word", "graph_word", default=None)
@click.option("--dot", "dot_path", default=None, type=click.Path())
def classify_cmd(subst_text, start, maxlen, graph_word, dot_path):
    """Tree/neutral classification of the factor set up to a length."""
    F = build_factor_set(subst_text, start, maxlen + 2)
    cl = ext_mod.classify(F, maxlen)
    out = {
        "acyclic": cl.acyclic,
        "connected": cl.connected,
        "neutral": cl.neutral,
        "tree": cl.tree,
        "max_length": maxlen,
    }
    if graph_word is not None:
        g = ext_mod.extension_graph(F, graph_word)
        out["word"] = graph_word
        out["multiplicity"] = g.multiplicity()
        if dot_path:
            with open(dot_path, "w") as fh:
                fh.write(g.to_dot())
    emit(out)


@cli.command("returns")
@click.option("--subst", "subst_text", required=True)
@click.option("--start", required=True)
@click.option("--word", required=True)
@click.option("--horizon", default=32, show_default=True)
@click.option("--left", is_flag=True)
@click.option("--gamma", "gamma_maxlen", default=None, type=int)
def returns_cmd(subst_text, start, word, horizon, left, gamma_maxlen):
    """Return words to a factor."""
    F = build_factor_set(subst_text, start, horizon)
    out = {}
    if left:
        out["left"] = ret_mod.left_return_words(F, word).sorted_words()
    else:
        out["right"] = ret_mod.right_return_words(F, word).sorted_words()
    if gamma_maxlen is not None:
        out["gamma"] = sorted(
            ret_mod.gamma(F, word, gamma_maxlen), key=lambda w: (len(w), w)
        )
    emit(out)


@cli.command("episturmian")
@click.option("--directive", required=True)
@click.option("--word", default=None)
@click.option("--pal", "pal_word", default=None)
@click.option("--horizon", default=None, type=int)
def episturmian_cmd(directive, word, pal_word, horizon):
    """Palindromic closures and left return words of a directed word."""
    out = {"directive": directive}
    if pal_word is not None:
        out["pal"] = epi_mod.pal(pal_word)
    if word is not None:
        out["left"] = sorted(
            epi_mod.episturmian_left_returns(directive, word),
            key=lambda w: (len(w), w),
        )
    if horizon is not None:
        F = epi_mod.episturmian_factor_set(directive, horizon)
        out["factors"] = F.sorted_words()
    emit(out)


@cli.command("freegroup")
@click.option("--alphabet", "alphabet_text", required=True)
@click.option("--generators", required=True, help="comma-separated group words")
@click.option("--member", default=None)
@click.option("--separate", default=None)
@click.option("--dot", "dot_path", default=None, type=click.Path())
def freegroup_cmd(alphabet_text, generators, member, separate, dot_path):
    """Folded subgroup graph: rank, index, membership, Hall separation."""
    alphabet = Alphabet.of(alphabet_text)
    gens = [g.strip() for g in generators.split(",") if g.strip()]
    H = fg_mod.subgroup(gens, alphabet)
    out = {
        "rank": H.rank(),
        "index": H.index(),
        "generates": H.index() == 1,
        "basis": fg_mod.is_basis_of_free_group(gens, alphabet),
    }
    if member is not None:
        out["member"] = H.membership(member)
    if separate is not None:
        K = fg_mod.separating_subgroup(H, separate)
        out["separating_index"] = K.index()
        out["separated"] = not K.membership(separate)
        if dot_path:
            with open(dot_path, "w") as fh:
                fh.write(K.to_dot())
    elif dot_path:
        with open(dot_path, "w") as fh:
            fh.write(H.to_dot())
    emit(out)


@cli.command("monoid")
@click.option("--code", required=True, help="comma-separated code words")
@click.option("--subst", "subst_text", default=None)
@click.option("--start", default=None)
@click.option("--horizon", default=24, show_default=True)
@click.option("--eggbox", is_flag=True, help="print the F-minimal eggbox as text")
@click.option("--budget", default=monoid_mod.DEFAULT_MONOID_BUDGET, show_default=True)
def monoid_cmd(code, subst_text, start, horizon, eggbox, budget):
    """Transition monoid of the minimal automaton of a code's submonoid."""
    X = bifix_mod.BifixCode.of(w.strip() for w in code.split(",") if w.strip())
    A = bifix_mod.minimal_automaton_of_star(X)
    M = monoid_mod.transition_monoid(A, budget)
    structure = monoid_mod.green(M)
    out = {
        "states": len(A.states),
        "monoid_size": len(M),
        "j_classes": len(structure.classes("J")),
    }
    if subst_text is not None and start is not None:
        F = build_factor_set(subst_text, start, horizon)
        rank, word, _ = monoid_mod.f_min_rank_data(A, F)
        G, base, image = monoid_mod.f_group(A, F)
        out["f_min_rank"] = rank
        out["f_group_order"] = G.order()
        out["f_group_generators"] = G.generator_cycles()
        out["minimal_image"] = list(image)
        if eggbox:
            t = A.transformation(word)
            cid = structure.j_class[M.pos[t]]
            click.echo(structure.eggbox(cid))
            return
    emit(out)


@cli.command("bifix")
@click.option("--group", required=True, help="cyclic:M or a named permutation group")
@click.option("--images", required=True, help='"a=1,b=1" or "a:(1 2 3);b:(3 4 5)"')
@click.option("--base-point", default=None)
@click.option("--subst", "subst_text", required=True)
@click.option("--start", required=True)
@click.option("--horizon", default=24, show_default=True)
@click.option("--degree/--no-degree", default=True, show_default=True)
def bifix_cmd(group, images, base_point, subst_text, start, horizon, degree):
    """Group code intersected with a factor set; F-degree and F-group."""
    spec = group_spec_from_options(group, images, base_point)
    F = build_factor_set(subst_text, start, horizon)
    X = bifix_mod.group_code_intersection(spec, F)
    out = {"code": X.sorted_words(), "size": len(X.words)}
    if degree:
        out["degree"] = bifix_mod.f_degree(X, F)
    emit(out)


@cli.group("shadow")
def shadow_group() -> None:
    """Pseudoword evaluation, h-orders and separation witnesses."""


@shadow_group.command("eval")
@click.option("--expr", required=True)
@click.option("--subst-def", "subst_defs", multiple=True, help='"phi=a->ab;b->a"')
@click.option("--group", required=True)
@click.option("--images", required=True)
def shadow_eval_cmd(expr, subst_defs, group, images):
    """Evaluate a pseudoword expression under a morphism."""
    named = {}
    for d in subst_defs:
        name, _, body = d.partition("=")
        if not name or not body:
            raise ParseError(f"bad substitution definition {d!r}")
        named[name.strip()] = Substitution.parse(body)
    tree = shadow_mod.parse_expression(expr, named)
    morphism = morphism_from_options(group, images)
    value = shadow_mod.evaluate(tree, morphism)
    emit({"expr": expr, "value": str(value)})


def _horder_impl(subst_text, group, images):
    sigma = Substitution.parse(subst_text)
    morphism = morphism_from_options(group, images)
    result = shadow_mod.h_order(sigma, morphism)
    if isinstance(result, int):
        emit({"h_order": result})
    else:
        _, preperiod, period = result
        emit({"h_order": None, "preperiod": preperiod, "period": period})


@shadow_group.command("horder")
@click.option("--subst", "subst_text", required=True)
@click.option("--group", required=True)
@click.option("--images", required=True)
def shadow_horder_cmd(subst_text, group, images):
    """Least n with the substitution's action on letter images returning."""
    _horder_impl(subst_text, group, images)


@cli.command("horder")
@click.option("--subst", "subst_text", required=True)
@click.option("--group", required=True)
@click.option("--images", required=True)
def horder_cmd(subst_text, group, images):
    """Shortcut for 'shadow horder'."""
    _horder_impl(subst_text, group, images)


@shadow_group.command("separate")
@click.option("--code", required=True, help="comma-separated code words")
@click.option("--beta", required=True, help='"x=a,y=ab,z=bb"')
@click.option("--group", required=True)
@click.option("--images", required=True)
@click.option("-u", required=True)
@click.option("-v", required=True)
def shadow_separate_cmd(code, beta, group, images, u, v):
    """Matrix decoding morphism separating two differently valued words."""
    X = {w.strip() for w in code.split(",") if w.strip()}
    bmap = {}
    for part in beta.split(","):
        part = part.strip()
        if not part:
            continue
        letter, _, word = part.partition("=")
        bmap[letter.strip()] = word.strip()
    psi = morphism_from_options(group, images)
    report = shadow_mod.separation_witness(X, bmap, psi, u, v)
    click.echo(report.to_json())


@cli.command("arith")
@click.option("--to-factorial", "to_fact", default=None, type=int)
@click.option("-k", "--precision", default=4, show_default=True)
@click.option("--fib-mod", "fib_args", default=None, nargs=2, type=int)
@click.option("--fib-limit", "fib_limit_mod", default=None, type=int)
@click.option("--offset", default=0, show_default=True)
def arith_cmd(to_fact, precision, fib_args, fib_limit_mod, offset):
    """Factorial digits and modular Fibonacci limits."""
    out = {}
    if to_fact is not None:
        d = arith_mod.to_factorial(to_fact, precision)
        out["digits"] = list(d.digits)
        out["display"] = str(d)
    if fib_args:
        n, m = fib_args
        out["fib_mod"] = arith_mod.fib_mod(n, m)
    if fib_limit_mod is not None:
        out["fib_factorial_sequence"] = arith_mod.fib_factorial_limit(
            fib_limit_mod, offset, 1, 12
        )
    if not out:
        raise click.UsageError("nothing to compute")
    emit(out)


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(EXIT_PARSE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_PARSE)
    except click.exceptions.Abort:
        sys.exit(EXIT_PARSE)
    except ParseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    except (InsufficientHorizon, BudgetExceeded) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    except InternalInvariantError as exc:
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    except MinishiftError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)


if __name__ == "__main__":
    main()
