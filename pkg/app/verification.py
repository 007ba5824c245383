"""Exhaustive cross-check of the grammars against the reduction oracle.

Every term up to a size cap is reduced by brute force and matched
against R_0 .. R_max_n. A term that reduces in n <= max_n steps must be
generated by R_n and by no other grammar, through exactly one production.
A term generated by R_m must reduce in exactly m steps, and `classify`
must say the same. Any violation is recorded as a `Mismatch`.

With more than one job the terms are split into index ranges per size and
checked in worker processes, each holding its own `GrammarStore`. Chunks
are merged in submission order, so the report does not depend on the
number of workers.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from app.grammar import GrammarStore
from app.membership import (
    InSteps,
    NotWithin,
    classify,
    count_matching_productions,
    generates,
    reduces_in,
)
from app.terms import (
    FuelExhausted,
    Normalized,
    Term,
    enumerate_terms,
    reduce_count,
)
from app.trees import nonterminal

logger = logging.getLogger(__name__)

CHUNK_SIZE = 2048


@dataclass(frozen=True)
class Mismatch:
    """One disagreement between the grammars and the oracle.

    Attributes:
        term (str): The term, printed.
        kind (str): 'soundness', 'completeness', 'disjointness',
            'unambiguity' or 'classification'.
        detail (str): Human-readable description.
    """
    term: str
    kind: str
    detail: str

    def to_dict(self) -> dict:
        return {'term': self.term, 'kind': self.kind, 'detail': self.detail}


@dataclass
class VerificationReport:
    """Census and mismatches of one verification run.

    `census[n][k]` counts terms of size k the oracle normalises in exactly
    n steps (n <= max_n). `beyond[k]` counts those needing more than max_n
    steps and `exhausted[k]` those that ran out of fuel.
    """
    max_size: int
    max_n: int
    fuel: int
    census: list[list[int]] = field(default_factory=list)
    beyond: list[int] = field(default_factory=list)
    exhausted: list[int] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            'max_size': self.max_size,
            'max_n': self.max_n,
            'fuel': self.fuel,
            'checked': self.checked,
            'census': self.census,
            'beyond': self.beyond,
            'exhausted': self.exhausted,
            'mismatches': [mismatch.to_dict() for mismatch in self.mismatches],
            'ok': self.ok,
        }


@dataclass
class _ChunkResult:
    counts: list[int]
    beyond: int = 0
    exhausted: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    checked: int = 0


def check_term(
    term: Term,
    max_n: int,
    fuel: int,
    store: GrammarStore,
) -> tuple[object, list[Mismatch]]:
    """Checks one term; returns the oracle outcome and any mismatches."""
    outcome = reduce_count(term, fuel)
    text = str(term)
    found: list[Mismatch] = []
    matched = [
        m for m in range(max_n + 1)
        if generates(nonterminal(m), term, store)
    ]

    if len(matched) > 1:
        found.append(Mismatch(
            text,
            'disjointness',
            f'generated by R{matched[0]} and R{matched[1]}',
        ))
    for m in matched:
        wrong = (
            isinstance(outcome, Normalized) and outcome.steps != m
        ) or (
            isinstance(outcome, FuelExhausted) and m <= fuel
        )
        if wrong:
            found.append(Mismatch(
                text,
                'soundness',
                f'in R{m} but oracle says {_describe(outcome)}',
            ))
        productions = count_matching_productions(m, term, store)
        if productions != 1:
            found.append(Mismatch(
                text,
                'unambiguity',
                f'{productions} productions of R{m} match',
            ))
    if (
        isinstance(outcome, Normalized)
        and outcome.steps <= max_n
        and outcome.steps not in matched
    ):
        found.append(Mismatch(
            text,
            'completeness',
            f'reduces in {outcome.steps} steps but is not in R{outcome.steps}',
        ))

    result = classify(term, max_n, store)
    if isinstance(outcome, Normalized):
        expected = (
            InSteps(outcome.steps) if outcome.steps <= max_n
            else NotWithin(max_n)
        )
        disagrees = result != expected
    else:
        disagrees = (
            isinstance(result, InSteps)
            and not reduces_in(term, result.steps, fuel)
        )
    if disagrees:
        found.append(Mismatch(
            text,
            'classification',
            f'classified {result} but oracle says {_describe(outcome)}',
        ))
    return outcome, found


def _describe(outcome) -> str:
    if isinstance(outcome, Normalized):
        return f'{outcome.steps} steps'
    return f'no normal form within {outcome.fuel} steps'


def _check_range(
    size: int,
    start: int,
    stop: int,
    max_n: int,
    fuel: int,
    store: GrammarStore,
) -> _ChunkResult:
    chunk = _ChunkResult(counts=[0] * (max_n + 1))
    for term in enumerate_terms(size)[start:stop]:
        outcome, found = check_term(term, max_n, fuel, store)
        chunk.checked += 1
        chunk.mismatches.extend(found)
        if isinstance(outcome, FuelExhausted):
            chunk.exhausted += 1
        elif outcome.steps <= max_n:
            chunk.counts[outcome.steps] += 1
        else:
            chunk.beyond += 1
    return chunk


_worker_store: Optional[GrammarStore] = None


def _init_worker(max_n: int) -> None:
    global _worker_store
    _worker_store = GrammarStore()
    _worker_store.ensure(max_n)


def _check_in_worker(task: tuple[int, int, int, int, int]) -> _ChunkResult:
    size, start, stop, max_n, fuel = task
    return _check_range(size, start, stop, max_n, fuel, _worker_store)


def _tasks(max_size: int, max_n: int, fuel: int):
    for size in range(max_size + 1):
        total = len(enumerate_terms(size))
        for start in range(0, total, CHUNK_SIZE):
            yield (size, start, min(start + CHUNK_SIZE, total), max_n, fuel)


def run_verification(
    max_size: int,
    max_n: int,
    fuel: int,
    store: GrammarStore,
    jobs: int = 1,
) -> VerificationReport:
    """Checks every term of size <= max_size against R_0 .. R_max_n.

    Args:
        store (GrammarStore): Used in-process; grammars up to R_max_n are
            constructed in it if missing.
        jobs (int): Worker processes; 1 checks everything in-process.
    """
    if min(max_size, max_n, fuel) < 0 or jobs < 1:
        raise ValueError('limits must be non-negative and jobs positive')
    store.ensure(max_n)
    report = VerificationReport(
        max_size=max_size,
        max_n=max_n,
        fuel=fuel,
        census=[[0] * (max_size + 1) for _ in range(max_n + 1)],
        beyond=[0] * (max_size + 1),
        exhausted=[0] * (max_size + 1),
    )
    tasks = list(_tasks(max_size, max_n, fuel))
    if jobs == 1:
        results = (
            _check_range(size, start, stop, max_n, fuel, store)
            for size, start, stop, _, _ in tasks
        )
        _merge(report, tasks, results)
    else:
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(max_n,),
        ) as executor:
            _merge(report, tasks, executor.map(_check_in_worker, tasks))
    logger.info(
        'verified %d terms: %d mismatches',
        report.checked,
        len(report.mismatches),
    )
    return report


def _merge(report: VerificationReport, tasks, results) -> None:
    for task, chunk in zip(tasks, results):
        size = task[0]
        for n, count in enumerate(chunk.counts):
            report.census[n][size] += count
        report.beyond[size] += chunk.beyond
        report.exhausted[size] += chunk.exhausted
        report.checked += chunk.checked
        for mismatch in chunk.mismatches:
            logger.warning(
                'mismatch (%s) on %s: %s',
                mismatch.kind,
                mismatch.term,
                mismatch.detail,
            )
        report.mismatches.extend(chunk.mismatches)
        if task[2] == len(enumerate_terms(size)):
            logger.info('size %d checked', size)
