"""Evaluation of multilinear polynomials in a Lie algebra, identity
decision, codimensions c_n, cocharacter multiplicities m_lambda,
colengths l_n, and Capelli checks.

The workhorse is the evaluation matrix: rows are canonical basis words
of P_n, columns are (basis tuple, coordinate) pairs.  Exhausting all
dim(L)^n basis tuples is sound and complete by multilinearity, so the
row space dimension is exactly c_n(L).  Columns are deduplicated and a
maximal independent set is kept; a polynomial is an identity iff its
coefficient vector pairs to zero with every kept column.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import BudgetExceededError, MalformedInputError
from .freelie import (
    AltSpec,
    MultilinearPolynomial,
    Word,
    alternate,
    basis_Pn,
    dim_Pn,
)
from .liealg import LieAlgebra
from .linalg import Vector, is_zero_vec, rank_modular, vec_add, vec_scale, zero_vec
from .symgroup import Partition, YoungTableau, act, hook_dim, partitions, symmetrizer

DEFAULT_TUPLE_BUDGET = 500_000


@dataclass(frozen=True)
class ExactMode:
    pass


@dataclass(frozen=True)
class SampledMode:
    count: int
    seed: int = 0
    plateau: int | None = None  # default: number of rows


@dataclass(frozen=True)
class ModularMode:
    trials: int = 3
    seed: int = 0


Mode = "ExactMode | SampledMode | ModularMode"


class Evaluator:
    """Caches values of right-normed words at basis tuples.

    A word evaluation is keyed by the sequence of 0-based basis indices
    substituted into the word, so suffixes are shared across all words
    and all tuples.
    """

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self._cache: dict[tuple[int, ...], Vector] = {}
        self._basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
        self._ad = {}

    def _bracket_left_basis(self, i: int, v: Vector) -> Vector:
        out = None
        for j, c in enumerate(v):
            if c == 0:
                continue
            row = self._ad.get((i, j))
            if row is None:
                row = self.algebra.bracket_basis(i, j)
                self._ad[(i, j)] = row
            if is_zero_vec(row):
                continue
            term = vec_scale(c, row)
            out = term if out is None else vec_add(out, term)
        return out if out is not None else zero_vec(self.algebra.dim)

    def word_value(self, seq: tuple[int, ...]) -> Vector:
        """Value of the right-normed word on the basis elements seq."""
        cached = self._cache.get(seq)
        if cached is not None:
            return cached
        if len(seq) == 1:
            value = self._basis[seq[0]]
        else:
            value = self._bracket_left_basis(seq[0], self.word_value(seq[1:]))
        self._cache[seq] = value
        return value


def evaluate(
    f: MultilinearPolynomial, elements: Iterable[Vector], algebra: LieAlgebra
) -> Vector:
    """Value of f at arbitrary algebra elements (one per variable)."""
    elems = list(elements)
    if len(elems) != f.degree:
        raise MalformedInputError(
            f"need {f.degree} elements, got {len(elems)}"
        )
    out = zero_vec(algebra.dim)
    for word, coeff in f.terms.items():
        value = elems[word[-1] - 1]
        for letter in reversed(word[:-1]):
            value = algebra.bracket(elems[letter - 1], value)
        if not is_zero_vec(value):
            out = vec_add(out, vec_scale(coeff, value))
    return out


@dataclass
class _ColumnSpace:
    """Incremental echelon over column vectors; keeps one original column
    per pivot so the kept set spans the full column space."""

    nrows: int
    pivots: list = field(default_factory=list)  # (lead index, reduced column)
    kept: list = field(default_factory=list)  # original independent columns

    def insert(self, col: tuple[Fraction, ...]) -> bool:
        w = list(col)
        for lead, reduced in self.pivots:
            if w[lead] != 0:
                f = w[lead]
                w = [x - f * y for x, y in zip(w, reduced)]
        for lead, x in enumerate(w):
            if x != 0:
                inv = Fraction(1) / x
                self.pivots.append((lead, tuple(inv * y for y in w)))
                self.kept.append(col)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.kept)


@dataclass(frozen=True)
class CocharacterRow:
    shape: Partition
    multiplicity: int
    degree: int  # d_lambda


@dataclass(frozen=True)
class CocharacterTable:
    n: int
    rows: tuple[CocharacterRow, ...]

    @property
    def colength(self) -> int:
        return sum(r.multiplicity for r in self.rows)

    @property
    def codimension_sum(self) -> int:
        return sum(r.multiplicity * r.degree for r in self.rows)


class CodimEngine:
    """Per-algebra engine; reuses word-value caches and column selections
    across calls at the same degree."""

    def __init__(self, algebra: LieAlgebra, tuple_budget: int = DEFAULT_TUPLE_BUDGET):
        self.algebra = algebra
        self.tuple_budget = tuple_budget
        self.evaluator = Evaluator(algebra)
        self._exhaustive: dict[int, _ColumnSpace] = {}

    # -- column generation ------------------------------------------------

    def _tuple_columns(self, words: list[Word], tup: tuple[int, ...]):
        p = self.algebra.dim
        values = [
            self.evaluator.word_value(tuple(tup[l - 1] for l in w)) for w in words
        ]
        for coord in range(p):
            yield tuple(v[coord] for v in values)

    def _require_budget(self, n: int):
        total = self.algebra.dim**n
        if total > self.tuple_budget:
            raise BudgetExceededError(
                f"exhaustive evaluation needs {total} basis tuples, "
                f"budget is {self.tuple_budget}",
                required=total,
            )
        return total

    def exhaustive_columns(self, n: int) -> _ColumnSpace:
        """Maximal independent column set over all basis tuples (cached)."""
        cached = self._exhaustive.get(n)
        if cached is not None:
            return cached
        self._require_budget(n)
        p = self.algebra.dim
        words = basis_Pn(n)
        space = _ColumnSpace(len(words))
        seen: set = set()
        max_rank = len(words)
        for tup in itertools.product(range(p), repeat=n):
            for col in self._tuple_columns(words, tup):
                if col in seen:
                    continue
                seen.add(col)
                space.insert(col)
            if space.rank == max_rank:
                break
        self._exhaustive[n] = space
        return space

    def sampled_columns(self, n: int, mode: SampledMode) -> _ColumnSpace:
        p = self.algebra.dim
        words = basis_Pn(n)
        space = _ColumnSpace(len(words))
        seen: set = set()
        rng = random.Random(mode.seed)
        plateau = mode.plateau if mode.plateau is not None else dim_Pn(n)
        since_increase = 0
        for _ in range(mode.count):
            tup = tuple(rng.randrange(p) for _ in range(n))
            increased = False
            for col in self._tuple_columns(words, tup):
                if col in seen:
                    continue
                seen.add(col)
                if space.insert(col):
                    increased = True
            since_increase = 0 if increased else since_increase + 1
            if since_increase >= plateau or space.rank == len(words):
                break
        return space

    # -- public operations ------------------------------------------------

    def codimension(self, n: int, mode: Mode = ExactMode()) -> int:
        if isinstance(mode, ExactMode):
            return self.exhaustive_columns(n).rank
        if isinstance(mode, SampledMode):
            return self.sampled_columns(n, mode).rank
        if isinstance(mode, ModularMode):
            space = self.exhaustive_columns(n)
            if not space.kept:
                return 0
            m = tuple(zip(*space.kept))  # rows = monomials
            return rank_modular(m, trials=mode.trials, seed=mode.seed)
        raise MalformedInputError(f"unknown mode {mode!r}")

    def pairing(self, coeffs: tuple[Fraction, ...], space: _ColumnSpace):
        return tuple(
            sum((c * x for c, x in zip(coeffs, col) if c != 0), Fraction(0))
            for col in space.kept
        )

    def is_identity(self, f: MultilinearPolynomial, mode: Mode = ExactMode()) -> bool:
        """Exhaustive mode is sound and complete; sampled mode can only
        refute, so True means "not refuted"."""
        n = f.degree
        if f.is_zero():
            return True
        if isinstance(mode, ExactMode):
            space = self.exhaustive_columns(n)
            words = basis_Pn(n)
            coeffs = f.coefficient_vector(words)
            return all(x == 0 for x in self.pairing(coeffs, space))
        if isinstance(mode, SampledMode):
            rng = random.Random(mode.seed)
            p = self.algebra.dim
            for _ in range(mode.count):
                tup = [
                    self.algebra.basis_vector(rng.randrange(p)) for _ in range(n)
                ]
                if not is_zero_vec(evaluate(f, tup, self.algebra)):
                    return False
            return True  # not refuted
        raise MalformedInputError(f"unknown mode {mode!r}")

    def cocharacter(self, n: int, mode: Mode = ExactMode()) -> CocharacterTable:
        if isinstance(mode, ExactMode):
            space = self.exhaustive_columns(n)
        elif isinstance(mode, SampledMode):
            space = self.sampled_columns(n, mode)
        else:
            raise MalformedInputError("cocharacter supports exact or sampled mode")
        words = basis_Pn(n)
        rows = []
        height_cap = self.algebra.dim  # alternating > dim L basis slots repeats
        for shape in partitions(n):
            d = hook_dim(shape)
            if shape.height > height_cap or space.rank == 0:
                rows.append(CocharacterRow(shape, 0, d))
                continue
            tableau = YoungTableau.row_reading(shape)
            e = symmetrizer(tableau)
            image = _ColumnSpace(space.rank)
            for w in words:
                g = act(e, MultilinearPolynomial(n, {w: Fraction(1)}))
                paired = self.pairing(g.coefficient_vector(words), space)
                image.insert(paired)
                if image.rank == min(space.rank, len(words)):
                    break
            rows.append(CocharacterRow(shape, image.rank, d))
        return CocharacterTable(n, tuple(rows))

    def capelli_holds(self, t: int, n: int, mode: Mode = ExactMode()) -> bool:
        """True iff every polynomial of P_n alternating on some t variables
        is an identity.  Checking alternations of canonical basis words over
        every t-subset spans all such polynomials, so this is complete."""
        if not 1 <= t <= n:
            raise MalformedInputError("need 1 <= t <= n")
        words = basis_Pn(n)
        for subset in itertools.combinations(range(1, n + 1), t):
            spec = AltSpec.of(subset)
            for w in words:
                f = alternate(MultilinearPolynomial(n, {w: Fraction(1)}), spec)
                if not self.is_identity(f, mode):
                    return False
        return True


def codimension(
    algebra: LieAlgebra,
    n: int,
    mode: Mode = ExactMode(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> int:
    return CodimEngine(algebra, tuple_budget).codimension(n, mode)


def cocharacter(
    algebra: LieAlgebra,
    n: int,
    mode: Mode = ExactMode(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> CocharacterTable:
    return CodimEngine(algebra, tuple_budget).cocharacter(n, mode)


def is_identity(
    f: MultilinearPolynomial,
    algebra: LieAlgebra,
    mode: Mode = ExactMode(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> bool:
    return CodimEngine(algebra, tuple_budget).is_identity(f, mode)


def capelli_holds(
    algebra: LieAlgebra,
    t: int,
    n: int,
    mode: Mode = ExactMode(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> bool:
    return CodimEngine(algebra, tuple_budget).capelli_holds(t, n, mode)
