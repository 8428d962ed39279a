"""In-situ word store: one concept population per word, never copied.

The lexicon owns the network's concept populations and the long-term
control-gated relations between them (semantic memory). Word types come
from the lexicon file; classification is a lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import labels
from .dynamics import ControlGate, Network, PopulationKind
from .errors import DuplicateWord, ParseError, UnknownWord


class WordType(Enum):
    NOUN = "N"
    VERB = "V"
    ADJECTIVE = "ADJ"
    PREPOSITION = "P"
    DETERMINER = "DET"
    OTHER = "X"


# word types that bind hubs, and the pool they bind into
POOL_FOR_TYPE = {
    WordType.NOUN: "N",
    WordType.ADJECTIVE: "N",
    WordType.VERB: "V",
}


@dataclass(frozen=True)
class LexicalEntry:
    word: str
    word_type: WordType
    concept: int  # population id; stable for the life of the lexicon


class Lexicon:
    """Single-writer during construction; freely shareable for reads after."""

    def __init__(self, network: Network | None = None):
        self.network = network if network is not None else Network()
        self._entries: dict[str, LexicalEntry] = {}
        self._word_of_pid: dict[int, str] = {}
        self.semantic_triples: list[tuple[str, str, str]] = []
        self._triple_set: set[tuple[str, str, str]] = set()
        self.semantic_labels: set[str] = set()

    # -------------------------------------------------------------- entries

    def add_word(self, word: str, word_type: WordType) -> LexicalEntry:
        word = word.casefold()
        if not word:
            raise ValueError("word must be nonempty")
        if word in self._entries:
            raise DuplicateWord(word)
        with self.network.structural_extension():
            pid = self.network.add_population(PopulationKind.CONCEPT)
        entry = LexicalEntry(word=word, word_type=word_type, concept=pid)
        self._entries[word] = entry
        self._word_of_pid[pid] = word
        return entry

    def entry(self, word: str) -> LexicalEntry:
        try:
            return self._entries[word.casefold()]
        except KeyError:
            raise UnknownWord(word) from None

    def classify(self, word: str) -> WordType:
        return self.entry(word).word_type

    def concept(self, word: str) -> int:
        return self.entry(word).concept

    def word_of(self, pid: int) -> str | None:
        return self._word_of_pid.get(pid)

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self):
        return self._entries.values()

    def words(self):
        return list(self._entries)

    def words_of_pool(self, pool: str) -> list[str]:
        return [
            e.word for e in self._entries.values()
            if POOL_FOR_TYPE.get(e.word_type) == pool
        ]

    # ---------------------------------------------------- semantic relations

    def add_semantic_relation(self, subject: str, relation_label: str, obj: str) -> None:
        """Install a directed control-gated edge subject -> object plus its mirror."""
        s = self.entry(subject)
        o = self.entry(obj)
        if not relation_label:
            raise ValueError("relation label must be nonempty")
        triple = (s.word, relation_label, o.word)
        if triple in self._triple_set:
            return
        with self.network.structural_extension():
            self.network.add_gated_connection(
                s.concept, o.concept, ControlGate(labels.semantic_forward(relation_label))
            )
            self.network.add_gated_connection(
                o.concept, s.concept, ControlGate(labels.semantic_reverse(relation_label))
            )
        self._triple_set.add(triple)
        self.semantic_triples.append(triple)
        self.semantic_labels.add(relation_label)

    # ------------------------------------------------------------- file I/O

    @classmethod
    def from_tsv(cls, text: str, network: Network | None = None) -> "Lexicon":
        lex = cls(network)
        tags = {t.value: t for t in WordType}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"expected 'word<TAB>type', got {raw!r}", line=lineno)
            word, tag = cols[0].strip(), cols[1].strip()
            if not word:
                raise ParseError("empty word", line=lineno)
            if tag not in tags:
                raise ParseError(f"unknown type tag {tag!r}", line=lineno)
            if word.casefold() in lex._entries:
                raise DuplicateWord(word, line=lineno)
            lex.add_word(word, tags[tag])
        return lex

    def load_relations(self, text: str) -> int:
        """Load subject<TAB>label<TAB>object rows; returns the number added."""
        count = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ParseError(f"expected 'subject<TAB>label<TAB>object', got {raw!r}", line=lineno)
            subject, label, obj = (c.strip() for c in cols)
            if subject.casefold() not in self._entries:
                raise UnknownWord(subject, line=lineno)
            if obj.casefold() not in self._entries:
                raise UnknownWord(obj, line=lineno)
            if not label:
                raise ParseError("empty relation label", line=lineno)
            self.add_semantic_relation(subject, label, obj)
            count += 1
        return count

    # ------------------------------------------------------------- snapshot

    def to_dict(self) -> dict:
        return {
            "entries": [[e.word, e.word_type.value] for e in self._entries.values()],
            "semantic_relations": [list(t) for t in self.semantic_triples],
        }

    @classmethod
    def from_dict(cls, data: dict, network: Network | None = None) -> "Lexicon":
        lex = cls(network)
        tags = {t.value: t for t in WordType}
        for word, tag in data.get("entries", []):
            lex.add_word(word, tags[tag])
        for subject, label, obj in data.get("semantic_relations", []):
            lex.add_semantic_relation(subject, label, obj)
        return lex


def load_lexicon(text: str) -> Lexicon:
    """Parse the lexicon TSV format (see Lexicon.from_tsv)."""
    return Lexicon.from_tsv(text)
