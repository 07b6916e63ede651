"""Approval elections and exact committee scoring.

An election is an ordered list of voters, each casting an approval ballot
(a subset of the candidates ``0..m-1``).  Voter order matters: perturbations
address votes by index.  Candidate ties are broken by an explicit priority
permutation, defaulting to ascending candidate index.

All scores are exact: integers for approval counts, ``fractions.Fraction``
for satisfaction-based quantities.  No floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Committee = tuple[int, ...]  # sorted, distinct candidate indices


class CapExceeded(Exception):
    """Raised when an operation would enumerate more committees than allowed."""


@dataclass(frozen=True)
class Election:
    """An approval election: ``num_candidates`` candidates, ordered ballots.

    ``tiebreak`` is the candidate priority order used by sequential rules
    (first entry = highest priority); ``None`` means ascending index.
    """

    num_candidates: int
    ballots: tuple[frozenset[int], ...]
    tiebreak: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        m = self.num_candidates
        if m < 1:
            raise ValueError(f"need at least one candidate, got m={m}")
        for v, ballot in enumerate(self.ballots):
            for c in ballot:
                if not 0 <= c < m:
                    raise ValueError(f"ballot of voter {v} mentions candidate {c}, not in [0, {m})")
        if self.tiebreak is not None and sorted(self.tiebreak) != list(range(m)):
            raise ValueError(f"tiebreak must be a permutation of 0..{m - 1}, got {self.tiebreak}")

    @property
    def m(self) -> int:
        return self.num_candidates

    @property
    def n(self) -> int:
        return len(self.ballots)

    def priority(self) -> tuple[int, ...]:
        """Candidates in tie-breaking order (most preferred first)."""
        if self.tiebreak is not None:
            return self.tiebreak
        return tuple(range(self.num_candidates))

    def priority_rank(self) -> list[int]:
        """rank[c] = position of candidate c in the tie-breaking order."""
        rank = [0] * self.num_candidates
        for pos, c in enumerate(self.priority()):
            rank[c] = pos
        return rank

    def approvers(self, candidate: int) -> list[int]:
        return [v for v, ballot in enumerate(self.ballots) if candidate in ballot]


def election(m: int, ballots: Iterable[Iterable[int]], tiebreak: Sequence[int] | None = None) -> Election:
    """Convenience constructor normalising ballot containers."""
    return Election(
        num_candidates=m,
        ballots=tuple(frozenset(b) for b in ballots),
        tiebreak=None if tiebreak is None else tuple(tiebreak),
    )


def approval_score(e: Election, candidate: int) -> int:
    """Number of voters approving ``candidate``."""
    _check_candidate(e, candidate)
    return sum(1 for ballot in e.ballots if candidate in ballot)


def approval_scores(e: Election) -> list[int]:
    scores = [0] * e.m
    for ballot in e.ballots:
        for c in ballot:
            scores[c] += 1
    return scores


def sav_score(e: Election, candidate: int) -> Fraction:
    """Satisfaction score: each approver contributes 1/|ballot|.

    Voters with empty ballots contribute nothing to anyone.
    """
    _check_candidate(e, candidate)
    return sum(
        (Fraction(1, len(ballot)) for ballot in e.ballots if candidate in ballot),
        Fraction(0),
    )


def sav_scores(e: Election) -> list[Fraction]:
    scores = [Fraction(0)] * e.m
    for ballot in e.ballots:
        if not ballot:
            continue
        share = Fraction(1, len(ballot))
        for c in ballot:
            scores[c] += share
    return scores


def committee_score(e: Election, scoring, committee: Iterable[int]):
    """Exact score of ``committee`` under ``scoring``.

    ``scoring`` is ``"av"``, ``"sav"``, or a weight sequence ``omega``
    (anything with a ``weights`` attribute also works): the committee's
    Thiele score is ``sum_v sum_{i=1}^{|ballot_v ∩ S|} omega_i``.
    """
    members = frozenset(committee)
    for c in members:
        _check_candidate(e, c)
    if scoring == "av":
        return sum(len(ballot & members) for ballot in e.ballots)
    if scoring == "sav":
        return sum(
            (Fraction(len(ballot & members), len(ballot)) for ballot in e.ballots if ballot),
            Fraction(0),
        )
    weights = tuple(getattr(scoring, "weights", scoring))
    if len(weights) < len(members):
        raise ValueError(f"weight vector has {len(weights)} entries, committee has {len(members)}")
    # prefix[j] = omega_1 + ... + omega_j, so a voter approving j members adds prefix[j]
    prefix = [Fraction(0)]
    for w in weights:
        prefix.append(prefix[-1] + Fraction(w))
    return sum((prefix[len(ballot & members)] for ballot in e.ballots), Fraction(0))


def render_diff_matrix(before: Election, after: Election) -> str:
    """Plain-text voter-by-candidate view of how ``after`` differs from ``before``.

    Cells: ``o`` approved in both, ``-`` only in ``before``, ``+`` only in
    ``after``, blank otherwise.  Both elections must have the same shape.
    """
    if before.m != after.m or before.n != after.n:
        raise ValueError("diff requires elections with identical numbers of candidates and voters")
    width = max(2, len(str(before.m - 1)) + 1)
    header = " " * (len(str(max(before.n - 1, 0))) + 2) + "".join(f"c{c}".rjust(width) for c in range(before.m))
    lines = [header]
    for v in range(before.n):
        old, new = before.ballots[v], after.ballots[v]
        cells = []
        for c in range(before.m):
            if c in old and c in new:
                cells.append("o")
            elif c in old:
                cells.append("-")
            elif c in new:
                cells.append("+")
            else:
                cells.append(" ")
        lines.append(f"v{v} ".ljust(len(str(max(before.n - 1, 0))) + 2) + "".join(cell.rjust(width) for cell in cells))
    return "\n".join(lines)


def _check_candidate(e: Election, candidate: int) -> None:
    if not 0 <= candidate < e.m:
        raise ValueError(f"candidate {candidate} not in [0, {e.m})")
