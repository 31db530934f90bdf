"""Candidate PI-exponent d(L) and desk-scale bound verification.

d(L) is computed by a span fixpoint over subsets of simple quotient
components: D(empty) starts at the nilradical, D({i}) at the lifted
component basis, and brackets propagate values to unions of subsets.
The height of a subset is the sum of the dimensions of the distinct
components it contains, and d(L) is the maximal height with a nonzero
span.

The upper-bound mechanism checks that every multilinear polynomial
with nilpotency-class many disjoint alternating sets of size d+1 is an
identity; the lower bound searches for explicit non-identities with
alternating sets of size d.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, MalformedInputError
from .evaluation import CodimEngine, ExactMode, Mode, SampledMode
from .freelie import (
    AltSpec,
    MultilinearPolynomial,
    Word,
    alternate,
    basis_Pn,
    format_word,
    signed_set_permutations,
)
from .liealg import LieAlgebra, StructureReport, analyze
from .linalg import (
    Subspace,
    Vector,
    format_fraction,
    is_zero_vec,
    vec_add,
    vec_scale,
    zero_vec,
)

# witness products are expression trees: leaf = ("elem", vector),
# node = ("br", left, right); leaves re-evaluate to the exact stored value


def product_leaf(v: Vector):
    return ("elem", v)


def product_node(left, right):
    return ("br", left, right)


def eval_product(algebra: LieAlgebra, expr) -> Vector:
    if expr[0] == "elem":
        return expr[1]
    _, left, right = expr
    return algebra.bracket(eval_product(algebra, left), eval_product(algebra, right))


def format_product(algebra: LieAlgebra, expr) -> str:
    if expr[0] == "elem":
        return vector_label(algebra, expr[1])
    _, left, right = expr
    return f"[{format_product(algebra, left)}, {format_product(algebra, right)}]"


def vector_label(algebra: LieAlgebra, v: Vector) -> str:
    parts = []
    for c, name in zip(v, algebra.labels):
        if c == 0:
            continue
        if c == 1:
            parts.append(f"+{name}")
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{'+' if c > 0 else '-'}{format_fraction(abs(c))}*{name}")
    if not parts:
        return "0"
    joined = "".join(parts)
    return joined[1:] if joined.startswith("+") else joined


@dataclass(frozen=True)
class HeightSpanTable:
    spans: dict[frozenset[int], Subspace]
    generators: dict[frozenset[int], tuple[tuple[Vector, object], ...]]
    component_dims: tuple[int, ...]

    def height(self, subset: frozenset[int]) -> int:
        return sum(self.component_dims[i] for i in subset)


def height_spans(report: StructureReport) -> HeightSpanTable:
    """Least fixpoint of the subset-span recursion.

    Completeness rests on two reductions: any bracketing splits into a
    bracket of two subproducts, which the pairwise update covers, and
    arbitrary elements with a single nonzero component projection
    decompose over the lifted component basis plus the nilradical, whose
    parts land in the same or a smaller subset.  Subsets combine by
    union (not necessarily disjoint): a component represented by several
    factors still counts its dimension once.
    """
    algebra = report.algebra
    gens: dict[frozenset[int], list] = {}
    spans: dict[frozenset[int], Subspace] = {}

    def add(subset, vector, expr) -> bool:
        span = spans.get(subset, Subspace.zero(algebra.dim))
        if is_zero_vec(vector) or span.contains(vector):
            return False
        spans[subset] = span.add(Subspace.from_vectors(algebra.dim, [vector]))
        gens.setdefault(subset, []).append((vector, expr))
        return True

    empty = frozenset()
    spans[empty] = Subspace(algebra.dim, report.nilradical.basis)
    gens[empty] = [(v, product_leaf(v)) for v in report.nilradical_basis]
    for i, comp in enumerate(report.components):
        for v in comp.lifted_basis:
            add(frozenset([i]), v, product_leaf(v))

    changed = True
    while changed:
        changed = False
        keys = list(gens.keys())
        for t1 in keys:
            for t2 in keys:
                union = t1 | t2
                for v1, e1 in list(gens.get(t1, ())):
                    for v2, e2 in list(gens.get(t2, ())):
                        w = algebra.bracket(v1, v2)
                        if add(union, w, product_node(e1, e2)):
                            changed = True
    dims = tuple(c.dim for c in report.components)
    return HeightSpanTable(spans, {k: tuple(v) for k, v in gens.items()}, dims)


@dataclass(frozen=True)
class ExponentReport:
    d: int
    maximizing_subset: tuple[int, ...]
    witness_expr: object | None
    witness_value: Vector | None
    structure: StructureReport
    table: HeightSpanTable

    def witness_str(self) -> str | None:
        if self.witness_expr is None:
            return None
        return format_product(self.structure.algebra, self.witness_expr)


def pi_exponent_candidate(algebra: LieAlgebra, seed: int = 0) -> ExponentReport:
    report = analyze(algebra, seed=seed)
    table = height_spans(report)
    best_subset = frozenset()
    best = 0
    for subset, span in table.spans.items():
        if span.is_zero() or not subset:
            continue
        h = table.height(subset)
        if h > best:
            best, best_subset = h, subset
    witness_expr = witness_value = None
    if best > 0:
        vector, expr = table.generators[best_subset][0]
        witness_expr, witness_value = expr, vector
    return ExponentReport(
        d=best,
        maximizing_subset=tuple(sorted(best_subset)),
        witness_expr=witness_expr,
        witness_value=witness_value,
        structure=report,
        table=table,
    )


@dataclass(frozen=True)
class QPolySpec:
    """k disjoint alternating sets of size r inside degree n."""

    r: int
    k: int
    n: int

    def __post_init__(self):
        if self.r < 1 or self.k < 1 or self.n < self.r * self.k:
            raise MalformedInputError("need r, k >= 1 and n >= r*k")

    @property
    def free_count(self) -> int:
        return self.n - self.r * self.k


def _set_assignments(spec: QPolySpec):
    """All ways to pick k disjoint r-subsets of {1..n}, order-free."""
    variables = list(range(1, spec.n + 1))

    def descend(available, chosen, min_first):
        if len(chosen) == spec.k:
            yield tuple(chosen)
            return
        for combo in itertools.combinations(available, spec.r):
            if combo[0] < min_first:
                continue  # fix increasing first elements to kill set-order dups
            rest = [v for v in available if v not in combo]
            yield from descend(rest, chosen + [combo], combo[0])

    yield from descend(variables, [], 0)


class _AlternatedChecker:
    """Identity decision for alternations of a single basis word.

    Multilinearity reduces identity checking to basis tuples, and the
    alternation vanishes whenever a set repeats a value and only changes
    sign when set values are permuted, so scanning strictly increasing
    basis assignments per set is equivalent to the full tuple sweep.
    """

    def __init__(self, engine: CodimEngine):
        self.engine = engine
        self.algebra = engine.algebra

    def find_nonzero(self, word: Word, sets: tuple[tuple[int, ...], ...]):
        """A basis assignment where the alternated word is nonzero, or None."""
        p = self.algebra.dim
        r = len(sets[0])
        if r > p:
            return None  # alternating set larger than the algebra: always zero
        n = len(word)
        in_set = set(itertools.chain.from_iterable(sets))
        free = [v for v in range(1, n + 1) if v not in in_set]
        spec = AltSpec.of(*sets)
        perms = list(signed_set_permutations(spec))
        for set_vals in itertools.product(
            itertools.combinations(range(p), r), repeat=len(sets)
        ):
            assign = {}
            for s, vals in zip(sets, set_vals):
                assign.update(zip(s, vals))
            for free_vals in itertools.product(range(p), repeat=len(free)):
                assign.update(zip(free, free_vals))
                total = zero_vec(p)
                for mapping, sign in perms:
                    seq = tuple(
                        assign[mapping.get(l, l)] for l in word
                    )
                    value = self.engine.evaluator.word_value(seq)
                    if not is_zero_vec(value):
                        total = vec_add(total, vec_scale(Fraction(sign), value))
                if not is_zero_vec(total):
                    return dict(assign), total
        return None


@dataclass(frozen=True)
class UpperVerdict:
    passed: bool
    spec: QPolySpec
    checks: int
    exhaustive: bool  # all (monomial, set-assignment) pairs covered
    counterexample: tuple | None  # (word, sets, assignment labels)

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        scope = "full" if self.exhaustive else "sampled"
        return (
            f"verify_upper r={self.spec.r} k={self.spec.k} n={self.spec.n}: "
            f"{status} ({self.checks} checks, {scope})"
        )


def verify_upper(
    algebra: LieAlgebra,
    spec: QPolySpec,
    mode: Mode = ExactMode(),
    engine: CodimEngine | None = None,
    budget: int = 1_000_000,
) -> UpperVerdict:
    """Check that alternations on k disjoint (d+1)-sets are identities.

    The alternated images of canonical basis words over all set
    assignments span the degree-n part of the multialternating space, so
    a full pass proves the vanishing statement at this degree.  Each
    individual check is exhaustive over basis tuples.
    """
    engine = engine or CodimEngine(algebra)
    checker = _AlternatedChecker(engine)
    words = basis_Pn(spec.n)
    assignments = list(_set_assignments(spec))
    work = [(w, sets) for sets in assignments for w in words]
    exhaustive = True
    if isinstance(mode, SampledMode):
        rng = random.Random(mode.seed)
        if mode.count < len(work):
            work = rng.sample(work, mode.count)
            exhaustive = False
    elif not isinstance(mode, ExactMode):
        raise MalformedInputError("verify_upper supports exact or sampled mode")
    if len(work) > budget:
        raise BudgetExceededError(
            f"{len(work)} alternation checks exceed budget {budget}",
            required=len(work),
        )
    checks = 0
    for word, sets in work:
        checks += 1
        found = checker.find_nonzero(word, sets)
        if found is not None:
            assign, _ = found
            labels = {
                f"x{v}": algebra.labels[idx] for v, idx in sorted(assign.items())
            }
            return UpperVerdict(False, spec, checks, exhaustive, (word, sets, labels))
    return UpperVerdict(True, spec, checks, exhaustive, None)


@dataclass(frozen=True)
class LowerWitness:
    spec: QPolySpec
    word: Word
    sets: tuple[tuple[int, ...], ...]
    assignment: dict[int, int]  # variable -> basis index
    value: Vector

    def polynomial(self) -> MultilinearPolynomial:
        base = MultilinearPolynomial(len(self.word), {self.word: Fraction(1)})
        return alternate(base, AltSpec.of(*self.sets))

    def describe(self, algebra: LieAlgebra) -> str:
        sets_str = " ".join(
            "{" + ",".join(f"x{v}" for v in s) + "}" for s in self.sets
        )
        assign_str = ", ".join(
            f"x{v}={algebra.labels[idx]}" for v, idx in sorted(self.assignment.items())
        )
        return (
            f"Alt[{sets_str}] {format_word(self.word)} at ({assign_str}) "
            f"= {vector_label(algebra, self.value)}"
        )


def find_lower_witness(
    algebra: LieAlgebra,
    r: int,
    k: int,
    n_max: int,
    engine: CodimEngine | None = None,
    n_min: int | None = None,
) -> LowerWitness | None:
    """Search for a non-identity alternating on k disjoint r-sets.

    A single nonzero evaluation refutes identity, so a returned witness
    is sound; None only means the search budget was exhausted.
    """
    if r < 1:
        raise MalformedInputError("need r >= 1")
    engine = engine or CodimEngine(algebra)
    checker = _AlternatedChecker(engine)
    for n in range(n_min if n_min is not None else r * k, n_max + 1):
        spec = QPolySpec(r, k, n)
        for sets in _set_assignments(spec):
            for word in basis_Pn(n):
                found = checker.find_nonzero(word, sets)
                if found is not None:
                    assign, value = found
                    return LowerWitness(spec, word, sets, assign, value)
    return None


@dataclass(frozen=True)
class GrowthRow:
    n: int
    codimension: int
    colength: int
    nth_root: float


@dataclass(frozen=True)
class GrowthReport:
    rows: tuple[GrowthRow, ...]
    d: int | None  # None when the structure hypotheses fail

    note = (
        "desk-scale table; n-th roots at small n do not certify the "
        "asymptotic exponent"
    )


def growth_report(
    algebra: LieAlgebra,
    n_max: int,
    mode: Mode = ExactMode(),
    engine: CodimEngine | None = None,
    seed: int = 0,
) -> GrowthReport:
    from .errors import HypothesisFailure

    engine = engine or CodimEngine(algebra)
    rows = []
    for n in range(1, n_max + 1):
        c = engine.codimension(n, mode)
        colength = engine.cocharacter(n, mode).colength if c else 0
        rows.append(GrowthRow(n, c, colength, float(c) ** (1.0 / n) if c else 0.0))
    try:
        d = pi_exponent_candidate(algebra, seed=seed).d
    except HypothesisFailure:
        d = None
    return GrowthReport(tuple(rows), d)
