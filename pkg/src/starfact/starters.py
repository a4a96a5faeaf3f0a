"""Starters for sharply transitive one-factorizations, their verification,
and their development into full factorizations.

A starter is a family of edge sets S_1..S_k with companion subgroups
H_1..H_k satisfying three conditions:

1. the differences of all edges cover Omega exactly once (as a multiset);
2. the marked endpoints of each S_i form an exact transversal of the
   cosets of H_i, counted with multiplicity per edge;
3. the difference of every short edge of S_i lies in H_i.

Developing a valid starter (translating each S_i by H_i and then by the
whole group) yields a one-factorization left invariant by every
translation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .cayley import SHORT, CayleyModel, Edge
from .groups import Element, Subgroup

__all__ = [
    "StarterSet",
    "Starter",
    "OneFactorization",
    "ConditionVerdict",
    "VerificationReport",
    "InvalidStarterError",
    "verify_starter",
    "develop_factorization",
    "verify_factorization",
    "check_invariance",
]


@dataclass(frozen=True)
class StarterSet:
    """One edge set together with its companion subgroup."""

    edges: tuple[Edge, ...]
    subgroup: Subgroup


@dataclass(frozen=True)
class Starter:
    model: CayleyModel
    sets: tuple[StarterSet, ...]
    provenance: dict | None = None

    def set_count(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class OneFactorization:
    """Factors are tuples of edges, each factor sorted, factors sorted."""

    model: CayleyModel
    factors: tuple[tuple[Edge, ...], ...]


@dataclass
class ConditionVerdict:
    label: str
    ok: bool = True
    violations: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.violations.append(message)


@dataclass
class VerificationReport:
    passed: bool
    condition1: ConditionVerdict
    condition2: ConditionVerdict
    condition3: ConditionVerdict

    def summary(self) -> str:
        lines = [f"passed: {self.passed}"]
        for cond in (self.condition1, self.condition2, self.condition3):
            lines.append(f"{cond.label}: {'ok' if cond.ok else 'FAILED'}")
            lines.extend(f"  - {v}" for v in cond.violations)
        return "\n".join(lines)

    def payload(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [
                {"label": c.label, "ok": c.ok, "violations": list(c.violations)}
                for c in (self.condition1, self.condition2, self.condition3)
            ],
        }


class InvalidStarterError(ValueError):
    """Raised when an operation needs a valid starter but verification failed."""

    def __init__(self, report: VerificationReport):
        super().__init__("starter failed verification:\n" + report.summary())
        self.report = report


def edge_differences_unchecked(model: CayleyModel, e: Edge) -> tuple[Element, ...]:
    """Difference contribution of an edge: one element for a short edge, the
    pair {d, -d} for a long one.  No legality check."""
    d = model.group.sub(e.u, e.v)
    if e.kind == SHORT:
        return (d,)
    return tuple(sorted((d, model.group.neg(d))))


def phi_vertices(e: Edge) -> tuple[Element, ...]:
    """Marked endpoints: the canonical endpoint of a short edge, both of a
    long one."""
    if e.kind == SHORT:
        return (e.u,)
    return (e.u, e.v)


def check_difference_cover(model: CayleyModel, sets) -> ConditionVerdict:
    verdict = ConditionVerdict("condition 1 (differences cover Omega exactly once)")
    counts: Counter[Element] = Counter()
    for i, sset in enumerate(sets):
        for e in sset.edges:
            d = model.group.sub(e.u, e.v)
            if d not in model.omega:
                verdict.fail(f"set {i}: edge {e.u}~{e.v} is illegal (difference {d} in H)")
                continue
            counts.update(edge_differences_unchecked(model, e))
    for d in sorted(counts):
        if counts[d] > 1:
            verdict.fail(f"difference {d} covered {counts[d]} times")
    for d in sorted(model.omega):
        if d not in counts:
            verdict.fail(f"difference {d} not covered")
    return verdict


def check_coset_transversals(model: CayleyModel, sets) -> ConditionVerdict:
    verdict = ConditionVerdict("condition 2 (marked endpoints form coset transversals)")
    group = model.group
    for i, sset in enumerate(sets):
        sub = sset.subgroup
        reps = group.cosets(sub)
        rep_of = {}
        for r in reps:
            for h in sub.elements:
                rep_of[group.add(r, h)] = r
        hits: Counter[Element] = Counter()
        for e in sset.edges:
            for v in phi_vertices(e):
                hits[rep_of[v]] += 1
        for r in reps:
            if hits[r] != 1:
                verdict.fail(
                    f"set {i}: coset of {r} has {hits[r]} marked endpoints"
                    f" (companion order {sub.order})"
                )
    return verdict


def check_short_edge_membership(model: CayleyModel, sets) -> ConditionVerdict:
    verdict = ConditionVerdict("condition 3 (short-edge differences lie in the companion)")
    for i, sset in enumerate(sets):
        for e in sset.edges:
            if e.kind == SHORT:
                d = model.group.sub(e.u, e.v)
                if d not in sset.subgroup.elements:
                    verdict.fail(
                        f"set {i}: short edge {e.u}~{e.v} has difference {d}"
                        " outside its companion subgroup"
                    )
    return verdict


def verify_starter(starter: Starter) -> VerificationReport:
    """Check the three starter conditions, reporting every violation."""
    c1 = check_difference_cover(starter.model, starter.sets)
    c2 = check_coset_transversals(starter.model, starter.sets)
    c3 = check_short_edge_membership(starter.model, starter.sets)
    return VerificationReport(c1.ok and c2.ok and c3.ok, c1, c2, c3)


def develop_factorization(starter: Starter) -> OneFactorization:
    """Translate each set by its companion, then by coset representatives,
    deduplicate factors as edge sets, and order them lexicographically."""
    report = verify_starter(starter)
    if not report.passed:
        raise InvalidStarterError(report)
    model = starter.model
    group = model.group
    seen: dict[tuple[Edge, ...], None] = {}
    for sset in starter.sets:
        base: set[Edge] = set()
        for h in sset.subgroup.sorted_elements:
            for e in sset.edges:
                base.add(model.translate_edge(e, h))
        base_edges = tuple(base)
        # Translating by one representative per coset of the companion
        # already reaches every distinct translate of the base factor.
        for r in group.cosets(sset.subgroup):
            factor = tuple(sorted(model.translate_edge(e, r) for e in base_edges))
            seen.setdefault(factor, None)
    return OneFactorization(model, tuple(sorted(seen)))


def verify_factorization(model: CayleyModel, fact: OneFactorization) -> VerificationReport:
    """Check factors are perfect matchings of legal edges, that they
    partition the edge set, and that there are exactly mn - n of them."""
    c1 = ConditionVerdict("factors are perfect matchings of legal edges")
    c2 = ConditionVerdict("factors partition the edge set")
    c3 = ConditionVerdict("factor count equals mn - n")
    group = model.group
    edge_counts: Counter[tuple[Element, Element]] = Counter()
    for fi, factor in enumerate(fact.factors):
        covered: Counter[Element] = Counter()
        for e in factor:
            d = group.sub(e.u, e.v)
            if d not in model.omega:
                c1.fail(f"factor {fi}: illegal edge {e.u}~{e.v} (difference {d} in H)")
            covered[e.u] += 1
            covered[e.v] += 1
            edge_counts[(e.u, e.v)] += 1
        bad = sorted(v for v in group.elements() if covered[v] != 1)
        if bad:
            c1.fail(f"factor {fi}: vertices covered != once: {bad[:4]}{'...' if len(bad) > 4 else ''}")
    dups = {e: c for e, c in edge_counts.items() if c > 1}
    if dups:
        some = sorted(dups)[:4]
        c2.fail(f"{len(dups)} edges appear in more than one factor, e.g. {some}")
    if c1.ok and not dups and len(edge_counts) != model.edge_count:
        c2.fail(
            f"{len(edge_counts)} distinct edges used, expected {model.edge_count}"
        )
    expected = model.group.order - model.n
    if len(fact.factors) != expected:
        c3.fail(f"{len(fact.factors)} factors, expected {expected}")
    return VerificationReport(c1.ok and c2.ok and c3.ok, c1, c2, c3)


def check_invariance(model: CayleyModel, fact: OneFactorization, exhaustive: bool = False) -> bool:
    """True when translating any factor by any group element lands on a
    factor.  Checking the standard generators suffices because translations
    compose; exhaustive=True checks every group element anyway."""
    keys = {factor: None for factor in fact.factors}
    if exhaustive:
        shifts = [g for g in model.group.elements() if g != model.group.identity()]
    else:
        shifts = list(model.group.full_subgroup().generators)
    for factor in fact.factors:
        for g in shifts:
            moved = tuple(sorted(model.translate_edge(e, g) for e in factor))
            if moved not in keys:
                return False
    return True
