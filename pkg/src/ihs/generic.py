"""Oracle-driven exact solver for implicit hitting set instances, plus the
online augmenting heuristic.

The exact solver alternates two moves. Starting from the full universe it
improves the current feasible set through bounded swaps (remove ``|Y|``
elements, add ``|X| < |Y|``) that keep the set feasible for every subset
collected so far; each oracle rejection contributes the missed subset to the
collection. When no swap applies, it solves the explicit minimum hitting set
over the collection: matching sizes or a feasible explicit optimum certify
global optimality, otherwise the collection grows and the climb restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .hitting import HittingSet, SubsetFamily, exact_min_hitting_set
from .oracles import OracleContract, OracleProtocolError, OracleVerdict


@dataclass
class GenericSolverConfig:
    """Solver knobs: the oracle, the swap width bound, and a safety cap.

    ``max_swap_out`` bounds ``|Y|``; the default of 2 keeps every swap scan
    polynomial. Any value yields a correct optimum on termination because the
    certificate does not depend on the neighborhood size. ``max_iterations``
    defaults to ``10 * universe_size + 1000`` and counts oracle queries.
    """

    oracle: OracleContract
    max_swap_out: int = 2
    max_iterations: int | None = None


@dataclass
class SolveCertificate:
    solution: HittingSet
    collected: SubsetFamily
    proof: str  # "size_match" or "feasible_optimum"
    oracle_calls: int
    subroutine_calls: int


class SolverAbort(RuntimeError):
    """Iteration cap exceeded; carries the partial state for diagnosis."""

    def __init__(self, message: str, best: tuple[int, ...], collected: SubsetFamily):
        super().__init__(message)
        self.best = best
        self.collected = collected


def _validated(verdict: OracleVerdict, query: set[int]) -> OracleVerdict:
    if not verdict.feasible:
        if not verdict.missed:
            raise OracleProtocolError("oracle returned an empty missed subset")
        if not query.isdisjoint(verdict.missed):
            raise OracleProtocolError("oracle returned a subset intersecting the query")
    return verdict


def solve_implicit_hitting_set(universe_size: int, cfg: GenericSolverConfig) -> SolveCertificate:
    """Run the alternating swap/relaxation loop to a certified optimum.

    Swap enumeration is deterministic: ``|Y|`` ascending, Y over sorted subsets
    of the current set, then ``|X|`` ascending over sorted subsets of the
    complement, first feasible candidate accepted.
    """
    if universe_size <= 0:
        raise ValueError("universe must be nonempty")
    oracle = cfg.oracle
    budget = cfg.max_iterations if cfg.max_iterations is not None else 10 * universe_size + 1000
    collected = SubsetFamily(universe_size)
    gamma: list[set[int]] = []
    oracle_calls = 0
    subroutine_calls = 0

    def ask(query: set[int]) -> OracleVerdict:
        nonlocal oracle_calls
        oracle_calls += 1
        if oracle_calls > budget:
            raise SolverAbort(
                f"iteration cap {budget} exceeded", tuple(sorted(current)), collected
            )
        return _validated(oracle.check(frozenset(query)), query)

    def collect(subset: tuple[int, ...]) -> None:
        # a duplicate here means the candidate was never collection-feasible: a bug
        if not collected.add(subset):
            raise RuntimeError(f"oracle repeated an already collected subset {subset}")
        gamma.append(set(subset))

    def gamma_feasible(candidate: set[int]) -> bool:
        return all(not s.isdisjoint(candidate) for s in gamma)

    current: set[int] = set(range(universe_size))
    while True:
        current = set(range(universe_size))
        # bounded-swap descent: keep the collected family hit at every step
        while True:
            proposal = None
            for y_size in range(1, cfg.max_swap_out + 1):
                if y_size > len(current):
                    break
                outside = sorted(set(range(universe_size)) - current)
                for y in combinations(sorted(current), y_size):
                    for x_size in range(0, min(y_size, len(outside) + 1)):
                        for x in combinations(outside, x_size):
                            cand = (current | set(x)) - set(y)
                            if gamma_feasible(cand):
                                proposal = cand
                                break
                        if proposal is not None:
                            break
                    if proposal is not None:
                        break
                if proposal is not None:
                    break
            if proposal is None:
                break
            verdict = ask(proposal)
            if verdict.feasible:
                current = proposal
            else:
                collect(verdict.missed)
        optimum = exact_min_hitting_set(collected)
        subroutine_calls += 1
        if len(optimum.members) == len(current):
            return SolveCertificate(
                solution=HittingSet.of(current),
                collected=collected,
                proof="size_match",
                oracle_calls=oracle_calls,
                subroutine_calls=subroutine_calls,
            )
        verdict = ask(set(optimum.members))
        if verdict.feasible:
            return SolveCertificate(
                solution=optimum,
                collected=collected,
                proof="feasible_optimum",
                oracle_calls=oracle_calls,
                subroutine_calls=subroutine_calls,
            )
        collect(verdict.missed)


def online_augment(
    universe_size: int,
    oracle: OracleContract,
    pick: Callable[[tuple[int, ...], frozenset[int]], int] | None = None,
) -> tuple[HittingSet, int]:
    """Online mode: start empty, commit one new element per missed subset.

    ``pick(missed, current)`` chooses the element to add (default: the minimum
    id in the missed subset). Elements are never removed. Returns the feasible
    set and the number of oracle misses.
    """
    chosen: set[int] = set()
    misses = 0
    while True:
        verdict = _validated(oracle.check(frozenset(chosen)), chosen)
        if verdict.feasible:
            return HittingSet.of(chosen), misses
        misses += 1
        pick_fn = pick if pick is not None else (lambda missed, _state: min(missed))
        element = pick_fn(verdict.missed, frozenset(chosen))
        if element not in verdict.missed:
            raise OracleProtocolError("pick rule chose an element outside the missed subset")
        chosen.add(element)
        if len(chosen) > universe_size:
            raise OracleProtocolError("augmenting exceeded the universe; oracle is inconsistent")
