"""First-order logic core: vocabulary, formula ASTs, weights, grounding, evaluation.

Formulas are immutable trees of frozen dataclasses.  The empty conjunction
``And(())`` serves as "true" and the empty disjunction ``Or(())`` as "false".
Domain elements are always the integers ``1..n``; named constants are not
supported anywhere.  All values here are safe to share across threads once
constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Union


class LogicError(ValueError):
    """Raised for ill-formed logical inputs (unbound variables, bad arity...)."""


@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class Const:
    value: int

    def __repr__(self):
        return f"Const({self.value})"


Term = Union[Var, Const]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Iff:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class CountingExists:
    """Counting quantifier: exactly / at most / at least ``count`` witnesses."""

    var: str
    comparator: str  # one of '=', '<=', '>='
    count: int
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, Forall, Exists, CountingExists]

TRUE: Formula = And(())
FALSE: Formula = Or(())


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def free_vars(f: Formula, bound: frozenset = frozenset()) -> set[str]:
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var) and a.name not in bound}
    if isinstance(f, Not):
        return free_vars(f.body, bound)
    if isinstance(f, (And, Or)):
        out: set[str] = set()
        for p in f.parts:
            out |= free_vars(p, bound)
        return out
    if isinstance(f, (Implies, Iff)):
        return free_vars(f.lhs, bound) | free_vars(f.rhs, bound)
    if isinstance(f, (Forall, Exists, CountingExists)):
        return free_vars(f.body, bound | {f.var})
    raise LogicError(f"unknown formula node: {f!r}")


def all_vars(f: Formula) -> set[str]:
    """Every variable name occurring in f, bound or free."""
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var)}
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, (And, Or)):
        out: set[str] = set()
        for p in f.parts:
            out |= all_vars(p)
        return out
    if isinstance(f, (Implies, Iff)):
        return all_vars(f.lhs) | all_vars(f.rhs)
    if isinstance(f, (Forall, Exists, CountingExists)):
        return all_vars(f.body) | {f.var}
    raise LogicError(f"unknown formula node: {f!r}")


def predicates_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.pred}
    if isinstance(f, Not):
        return predicates_of(f.body)
    if isinstance(f, (And, Or)):
        out: set[str] = set()
        for p in f.parts:
            out |= predicates_of(p)
        return out
    if isinstance(f, (Implies, Iff)):
        return predicates_of(f.lhs) | predicates_of(f.rhs)
    if isinstance(f, (Forall, Exists, CountingExists)):
        return predicates_of(f.body)
    raise LogicError(f"unknown formula node: {f!r}")


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Replace free variables by terms.  Quantified variables shadow the mapping."""
    if isinstance(f, Atom):
        args = tuple(
            mapping.get(a.name, a) if isinstance(a, Var) else a for a in f.args
        )
        return Atom(f.pred, args)
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, And):
        return And(tuple(substitute(p, mapping) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(substitute(p, mapping) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(substitute(f.lhs, mapping), substitute(f.rhs, mapping))
    if isinstance(f, Iff):
        return Iff(substitute(f.lhs, mapping), substitute(f.rhs, mapping))
    if isinstance(f, (Forall, Exists, CountingExists)):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        body = substitute(f.body, inner)
        if isinstance(f, Forall):
            return Forall(f.var, body)
        if isinstance(f, Exists):
            return Exists(f.var, body)
        return CountingExists(f.var, f.comparator, f.count, body)
    raise LogicError(f"unknown formula node: {f!r}")


def ground(f: Formula, substitution: Mapping[str, int], n: int) -> Formula:
    """Ground a formula over the domain 1..n.

    Quantifiers expand to finite conjunctions/disjunctions; exactly-k
    quantifiers expand to the disjunction over all k-subsets of witnesses.
    Raises LogicError if a free variable is not covered by the substitution.
    """
    if isinstance(f, Atom):
        args = []
        for a in f.args:
            if isinstance(a, Const):
                args.append(a)
            elif a.name in substitution:
                args.append(Const(substitution[a.name]))
            else:
                raise LogicError(f"unbound variable {a.name!r} in {f.pred}")
        return Atom(f.pred, tuple(args))
    if isinstance(f, Not):
        return Not(ground(f.body, substitution, n))
    if isinstance(f, And):
        return And(tuple(ground(p, substitution, n) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(ground(p, substitution, n) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(ground(f.lhs, substitution, n), ground(f.rhs, substitution, n))
    if isinstance(f, Iff):
        return Iff(ground(f.lhs, substitution, n), ground(f.rhs, substitution, n))
    if isinstance(f, Forall):
        return And(
            tuple(ground(f.body, {**substitution, f.var: t}, n) for t in range(1, n + 1))
        )
    if isinstance(f, Exists):
        return Or(
            tuple(ground(f.body, {**substitution, f.var: t}, n) for t in range(1, n + 1))
        )
    if isinstance(f, CountingExists):
        instances = [ground(f.body, {**substitution, f.var: t}, n) for t in range(1, n + 1)]
        if f.comparator == "=":
            ks = [f.count]
        elif f.comparator == "<=":
            ks = list(range(0, min(f.count, n) + 1))
        elif f.comparator == ">=":
            ks = list(range(f.count, n + 1))
        else:
            raise LogicError(f"unknown comparator {f.comparator!r}")
        options = []
        for k in ks:
            if k > n or k < 0:
                continue
            for chosen in combinations(range(n), k):
                chosen_set = set(chosen)
                literals = tuple(
                    instances[i] if i in chosen_set else Not(instances[i])
                    for i in range(n)
                )
                options.append(And(literals))
        return Or(tuple(options))
    raise LogicError(f"unknown formula node: {f!r}")


def eval_ground(f: Formula, world: frozenset | set) -> bool:
    """Truth of a ground formula in a world (a set of true ground atoms)."""
    if isinstance(f, Atom):
        if any(isinstance(a, Var) for a in f.args):
            raise LogicError(f"eval on non-ground atom {f!r}")
        return f in world
    if isinstance(f, Not):
        return not eval_ground(f.body, world)
    if isinstance(f, And):
        return all(eval_ground(p, world) for p in f.parts)
    if isinstance(f, Or):
        return any(eval_ground(p, world) for p in f.parts)
    if isinstance(f, Implies):
        return (not eval_ground(f.lhs, world)) or eval_ground(f.rhs, world)
    if isinstance(f, Iff):
        return eval_ground(f.lhs, world) == eval_ground(f.rhs, world)
    if isinstance(f, (Forall, Exists, CountingExists)):
        raise LogicError("eval requires a ground formula; expand quantifiers first")
    raise LogicError(f"unknown formula node: {f!r}")


def mask_eval(f: Formula, atom_masks: Mapping[Atom, int], full: int) -> int:
    """Evaluate a ground formula over bit-parallel world encodings.

    ``atom_masks[a]`` has bit *w* set iff atom *a* is true in world *w*;
    ``full`` is the all-ones mask.  Returns the mask of satisfying worlds.
    """
    if isinstance(f, Atom):
        return atom_masks[f]
    if isinstance(f, Not):
        return full ^ mask_eval(f.body, atom_masks, full)
    if isinstance(f, And):
        m = full
        for p in f.parts:
            m &= mask_eval(p, atom_masks, full)
            if not m:
                return 0
        return m
    if isinstance(f, Or):
        m = 0
        for p in f.parts:
            m |= mask_eval(p, atom_masks, full)
            if m == full:
                return full
        return m
    if isinstance(f, Implies):
        return (full ^ mask_eval(f.lhs, atom_masks, full)) | mask_eval(f.rhs, atom_masks, full)
    if isinstance(f, Iff):
        return full ^ (mask_eval(f.lhs, atom_masks, full) ^ mask_eval(f.rhs, atom_masks, full))
    raise LogicError("mask_eval requires a ground, quantifier-free formula")


def herbrand_base(vocabulary: Mapping[str, Predicate], n: int) -> list[Atom]:
    """All ground atoms, ordered by predicate name then argument tuple."""
    if n < 1:
        raise LogicError("domain size must be at least 1")
    atoms = []
    for name in sorted(vocabulary):
        arity = vocabulary[name].arity
        for args in product(range(1, n + 1), repeat=arity):
            atoms.append(Atom(name, tuple(Const(v) for v in args)))
    return atoms


@dataclass(frozen=True)
class CardTarget:
    """Cardinality target linear in the domain size: times_n * n + constant."""

    times_n: int
    constant: int

    def evaluate(self, n: int) -> int:
        return self.times_n * n + self.constant

    def __str__(self):
        if self.times_n == 0:
            return str(self.constant)
        head = "n" if self.times_n == 1 else f"{self.times_n}*n"
        return head if self.constant == 0 else f"{head} + {self.constant}"


@dataclass(frozen=True)
class CardinalityConstraint:
    pred: str
    target: CardTarget

    def __str__(self):
        return f"|{self.pred}| = {self.target}"


@dataclass(frozen=True)
class WeightEntry:
    w: Fraction
    w_false: Fraction
    symbolic: bool = False


DEFAULT_WEIGHT = WeightEntry(Fraction(1), Fraction(1), False)


class WeightMap:
    """Per-predicate pair of exact rational weights with a symbolic marker.

    Predicates without an explicit entry weigh (1, 1).  Instances are treated
    as immutable; updates go through ``updated``/``with_symbolic``.
    """

    def __init__(self, entries: Mapping[str, WeightEntry] | None = None):
        self._entries: dict[str, WeightEntry] = dict(entries) if entries else {}

    def lookup(self, pred: str) -> WeightEntry:
        return self._entries.get(pred, DEFAULT_WEIGHT)

    def explicit(self) -> dict[str, WeightEntry]:
        return dict(self._entries)

    def updated(self, pred: str, w: Fraction, w_false: Fraction, symbolic: bool = False) -> "WeightMap":
        entries = dict(self._entries)
        entries[pred] = WeightEntry(Fraction(w), Fraction(w_false), symbolic)
        return WeightMap(entries)

    def with_symbolic(self, preds: Iterable[str]) -> "WeightMap":
        entries = dict(self._entries)
        for p in preds:
            old = entries.get(p, DEFAULT_WEIGHT)
            entries[p] = WeightEntry(old.w, old.w_false, True)
        return WeightMap(entries)

    def __eq__(self, other):
        if not isinstance(other, WeightMap):
            return NotImplemented
        names = set(self._entries) | set(other._entries)
        return all(self.lookup(p) == other.lookup(p) for p in names)

    def __repr__(self):
        return f"WeightMap({self._entries!r})"


@dataclass
class Theory:
    """A conjunction of sentences plus cardinality constraints and weights."""

    vocabulary: dict[str, Predicate]
    sentences: tuple[Formula, ...]
    constraints: tuple[CardinalityConstraint, ...]
    weights: WeightMap

    def __post_init__(self):
        used: set[str] = set()
        for s in self.sentences:
            used |= predicates_of(s)
        used |= {c.pred for c in self.constraints}
        missing = used - set(self.vocabulary)
        if missing:
            raise LogicError(f"predicates not in vocabulary: {sorted(missing)}")

    def pred_names(self) -> list[str]:
        return sorted(self.vocabulary)

    def structurally_equal(self, other: "Theory") -> bool:
        return (
            self.vocabulary == other.vocabulary
            and self.sentences == other.sentences
            and self.constraints == other.constraints
            and self.weights == other.weights
        )


def cc_degree(constraints: Iterable[CardinalityConstraint], vocabulary: Mapping[str, Predicate]) -> int:
    """Oracle-call exponent contributed by cardinality constraints: sum of (arity + 1)."""
    return sum(vocabulary[c.pred].arity + 1 for c in constraints)
