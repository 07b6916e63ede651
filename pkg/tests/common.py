"""Shared helpers: seeded random elections and exhaustive election enumeration."""
from __future__ import annotations

import random
from itertools import product

from mwrobust import Election, election


def random_election(
    rng: random.Random,
    max_m: int = 5,
    max_n: int = 4,
    min_m: int = 1,
    min_n: int = 0,
    tiebreak_chance: float = 0.25,
) -> Election:
    m = rng.randint(min_m, max_m)
    n = rng.randint(min_n, max_n)
    density = rng.choice((0.2, 0.5, 0.8))
    ballots = [[c for c in range(m) if rng.random() < density] for _ in range(n)]
    tiebreak = None
    if rng.random() < tiebreak_chance:
        order = list(range(m))
        rng.shuffle(order)
        tiebreak = tuple(order)
    return election(m, ballots, tiebreak=tiebreak)


def all_elections(m: int, n: int):
    """Every ballot matrix over m candidates and n voters (2^(mn) elections)."""
    for bits in product((False, True), repeat=m * n):
        ballots = [[c for c in range(m) if bits[v * m + c]] for v in range(n)]
        yield election(m, ballots)


def random_feasible_op(rng: random.Random, e: Election, kinds=("add", "remove", "swap")):
    """A uniformly random feasible operation of a random kind, or None."""
    from mwrobust import feasible_operations

    kinds = list(kinds)
    rng.shuffle(kinds)
    for kind in kinds:
        ops = feasible_operations(e, kind)
        if ops:
            return ops[rng.randrange(len(ops))]
    return None
