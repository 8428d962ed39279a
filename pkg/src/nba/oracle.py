"""Brute-force symbolic triple store.

The reference oracle for every blackboard query: exact set semantics,
answers by linear scan. Kept free of any dynamics so the two answer routes
stay independent.
"""

from __future__ import annotations

from .query import EPISODIC, FORWARD, AnswerSet, Query


class OracleStore:
    def __init__(self):
        self._triples: set[tuple[str, str, str, str]] = set()

    def record(self, subject: str, relation: str, obj: str, mode: str = EPISODIC) -> None:
        self._triples.add((mode, subject.casefold(), relation, obj.casefold()))

    def query(self, query: Query) -> AnswerSet:
        cue = query.cue.casefold()
        if query.direction == FORWARD:
            matches = {
                o for (m, s, r, o) in self._triples
                if m == query.mode and s == cue and r == query.relation
            }
        else:
            matches = {
                s for (m, s, r, o) in self._triples
                if m == query.mode and o == cue and r == query.relation
            }
        return AnswerSet.from_words(sorted(matches))

    def triples(self):
        return sorted(self._triples)

    def clear(self) -> None:
        self._triples.clear()

    def __len__(self) -> int:
        return len(self._triples)
