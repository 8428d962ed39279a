"""Run configuration: pool capacities, relation catalog, dynamics parameters.

Every field has a documented default; a JSON config file may override any
subset of keys. Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

from .errors import InvalidConfig

# relation families and the hub-pool grids they instantiate
_FAMILY_GRIDS = {
    "agent": (("agent", "N", "V"),),
    "theme": (("theme", "V", "N"),),
    "modifier": (("modifier", "N", "N"),),
    "clause": (("clause", "V", "C"), ("clause", "C", "V")),
    # "prep" expands to one N->N grid per configured preposition label
}
KNOWN_FAMILIES = tuple(_FAMILY_GRIDS) + ("prep",)


@dataclass(frozen=True)
class RelationSpec:
    """One grid of matrix cells: relation name plus its from/to hub pools."""

    name: str
    from_pool: str
    to_pool: str


@dataclass
class Config:
    # hub pool capacities (fixed at blackboard construction)
    k_n: int = 8
    k_v: int = 8
    k_c: int = 4
    # enabled relation families
    relations: tuple[str, ...] = ("agent", "theme", "modifier", "prep", "clause")
    prep_labels: tuple[str, ...] = ("of", "in", "on")
    # dynamics
    gain: float = 1.0
    decay: float = 0.0
    wm_decay: float = 1.0
    sustain_threshold: float = 0.5
    readout_threshold: float = 0.5
    settle_budget: int = 32
    # encoding policy
    auto_add_words: bool = True
    strict_labels: bool = True
    # optional spontaneous working-memory release after this many steps
    wm_decay_horizon: int | None = None
    # query-language relation aliases (episodic mode)
    query_aliases: dict = field(default_factory=lambda: {"do": "agent", "mod": "modifier"})

    def validate(self) -> "Config":
        if self.k_n < 1 or self.k_v < 1 or self.k_c < 1:
            raise InvalidConfig(f"pool capacities must be >= 1, got k_n={self.k_n} k_v={self.k_v} k_c={self.k_c}")
        for fam in self.relations:
            if fam not in KNOWN_FAMILIES:
                raise InvalidConfig(f"unknown relation family {fam!r}")
        for label in self.prep_labels:
            if not label or any(ch.isspace() for ch in label):
                raise InvalidConfig(f"bad preposition label {label!r}")
        if self.gain <= 0.0:
            raise InvalidConfig(f"gain must be positive, got {self.gain}")
        if not 0.0 <= self.decay <= 1.0 or not 0.0 <= self.wm_decay <= 1.0:
            raise InvalidConfig("decay values must be in [0, 1]")
        if not 0.0 <= self.sustain_threshold <= 1.0:
            raise InvalidConfig("sustain_threshold must be in [0, 1]")
        if not 0.0 <= self.readout_threshold <= 1.0:
            raise InvalidConfig("readout_threshold must be in [0, 1]")
        if self.settle_budget < 1:
            raise InvalidConfig("settle_budget must be >= 1")
        if self.wm_decay_horizon is not None and self.wm_decay_horizon < 1:
            raise InvalidConfig("wm_decay_horizon must be >= 1 when set")
        return self

    def relation_specs(self) -> list[RelationSpec]:
        """Concrete cell grids implied by the enabled families."""
        specs: list[RelationSpec] = []
        for fam in self.relations:
            if fam == "prep":
                for label in self.prep_labels:
                    specs.append(RelationSpec(f"prep:{label}", "N", "N"))
            else:
                for name, src, dst in _FAMILY_GRIDS[fam]:
                    specs.append(RelationSpec(name, src, dst))
        return specs

    def relation_names(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for spec in self.relation_specs():
            seen.setdefault(spec.name, None)
        return tuple(seen)

    def capacity(self, pool: str) -> int:
        return {"N": self.k_n, "V": self.k_v, "C": self.k_c}[pool]

    # ------------------------------------------------------------ (de)serialize

    def to_dict(self) -> dict:
        return {
            "k_n": self.k_n,
            "k_v": self.k_v,
            "k_c": self.k_c,
            "relations": list(self.relations),
            "prep_labels": list(self.prep_labels),
            "gain": self.gain,
            "decay": self.decay,
            "wm_decay": self.wm_decay,
            "sustain_threshold": self.sustain_threshold,
            "readout_threshold": self.readout_threshold,
            "settle_budget": self.settle_budget,
            "auto_add_words": self.auto_add_words,
            "strict_labels": self.strict_labels,
            "wm_decay_horizon": self.wm_decay_horizon,
            "query_aliases": dict(self.query_aliases),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key in ("relations", "prep_labels"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs).validate()

    @classmethod
    def from_json(cls, text: str) -> "Config":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfig("config JSON must be an object")
        return cls.from_dict(data)
