"""Relational queries answered by controlled activation flow.

A query cues one concept population, asserts the relation's direction-specific
control label, and lets activation flow until it settles (or a step budget
runs out). Concepts at or above the readout threshold form the answer, cue
excluded. Queries are non-destructive: activation state and asserted labels
are rolled back after readout, so queries compose.

Mini-language:  "<word> <relation>?"    forward   (cat do?)
                "? <relation> <word>"   reverse   (? do run)
optionally prefixed with "sem:" for semantic mode (default is episodic).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import labels
from .blackboard import Blackboard
from .dynamics import PopulationKind
from .errors import QuerySyntaxError, UnknownRelation

FORWARD = "forward"
REVERSE = "reverse"
EPISODIC = "episodic"
SEMANTIC = "semantic"

_SETTLE_TOL = 1e-9


@dataclass(frozen=True)
class Query:
    cue: str
    relation: str
    direction: str = FORWARD
    mode: str = EPISODIC


@dataclass(frozen=True)
class AnswerSet:
    """Words read out at or above threshold, strongest first, ties lexicographic."""

    entries: tuple  # ((word, activation), ...)

    @classmethod
    def from_pairs(cls, pairs) -> "AnswerSet":
        ordered = sorted(pairs, key=lambda p: (-p[1], p[0]))
        return cls(entries=tuple((w, a) for w, a in ordered))

    @classmethod
    def from_words(cls, words, activation: float = 1.0) -> "AnswerSet":
        return cls.from_pairs((w, activation) for w in words)

    @property
    def words(self) -> tuple:
        return tuple(w for w, _ in self.entries)

    def word_set(self) -> frozenset:
        return frozenset(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.word_set()

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)


def parse_query(text: str) -> Query:
    t = text.strip()
    mode = EPISODIC
    if t.startswith("sem:"):
        mode = SEMANTIC
        t = t[4:].strip()
    parts = t.split()
    if len(parts) == 2 and parts[0] != "?" and parts[1].endswith("?"):
        relation = parts[1][:-1]
        if not relation:
            raise QuerySyntaxError(f"missing relation in {text!r}")
        return Query(cue=parts[0].casefold(), relation=relation, direction=FORWARD, mode=mode)
    if len(parts) == 3 and parts[0] == "?":
        if not parts[1]:
            raise QuerySyntaxError(f"missing relation in {text!r}")
        return Query(cue=parts[2].casefold(), relation=parts[1], direction=REVERSE, mode=mode)
    raise QuerySyntaxError(
        f"cannot parse {text!r}; expected '<word> <relation>?' or '? <relation> <word>'"
    )


def run_query(blackboard: Blackboard, query: Query) -> AnswerSet:
    """Answer a query by activation flow over the blackboard's network.

    The probe holds the cue active, asserts the relation's directional label,
    and runs for exactly the relation's connection-path depth (cue to hub,
    two steps per matrix cell, hub to answer; one step for a direct semantic
    edge). Propagation is exact in path-length steps, so every fact about the
    cue has arrived by then, while flow that would continue through an answer
    word's other bindings into a second same-relation structure has not.

    The cue population is externally driven for the whole probe, so it is
    never part of the answer: a fact relating a word to itself is encodable
    but cannot be read out by cueing that same word.
    """
    lex = blackboard.lexicon
    entry = lex.entry(query.cue)
    if query.mode == SEMANTIC:
        if query.relation not in lex.semantic_labels:
            raise UnknownRelation(f"no semantic relation {query.relation!r}")
        label = (
            labels.semantic_forward(query.relation)
            if query.direction == FORWARD
            else labels.semantic_reverse(query.relation)
        )
        depth = 1
    else:
        relation = blackboard.config.query_aliases.get(query.relation, query.relation)
        if relation not in blackboard.relation_names:
            raise UnknownRelation(f"no blackboard relation {query.relation!r}")
        label = (
            labels.matrix_forward(relation)
            if query.direction == FORWARD
            else labels.matrix_reverse(relation)
        )
        # clause facts ride two chained grids (via a C hub), others one cell
        grids = sum(1 for spec in blackboard.config.relation_specs() if spec.name == relation)
        depth = 2 + 2 * grids

    net = blackboard.network
    saved = net.save_state()
    try:
        net.set_control(label, True)
        prev = None
        for _ in range(min(depth, blackboard.config.settle_budget)):
            net.inject(entry.concept, 1.0)
            net.step()
            cur = {pid: net.activation(pid) for pid in net.active_pids()}
            if prev is not None and _settled(prev, cur):
                break
            prev = cur
        threshold = blackboard.config.readout_threshold
        pairs = []
        for pid in net.active_pids():
            pop = net.population(pid)
            if (
                pop.kind is PopulationKind.CONCEPT
                and pop.activation >= threshold
                and pid != entry.concept
            ):
                word = lex.word_of(pid)
                if word is not None:
                    pairs.append((word, pop.activation))
        return AnswerSet.from_pairs(pairs)
    finally:
        net.restore_state(saved)


def _settled(prev: dict, cur: dict, tol: float = _SETTLE_TOL) -> bool:
    for key in prev.keys() | cur.keys():
        if abs(prev.get(key, 0.0) - cur.get(key, 0.0)) > tol:
            return False
    return True
