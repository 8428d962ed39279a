"""Sentences as temporal connection paths over a fixed gated network.

Words live in situ as concept populations; a sentence is encoded by
sustaining working-memory bindings that route activation through shared
noun/verb/clause hubs and a relation-labelled connection matrix. Queries are
answered by controlling the flow of activation, not by lookup.
"""

from .blackboard import Binding, Blackboard, HubPool, MatrixCell
from .config import Config, RelationSpec
from .dynamics import (
    BindingGate,
    ControlGate,
    GatedConnection,
    Network,
    Population,
    PopulationKind,
)
from .encoder import (
    ConnectionPathReport,
    ConstituentSpan,
    ControlProgram,
    DependencyArc,
    RelationMap,
    Token,
    compile,
    default_relation_map,
    execute,
    iter_conllu,
    parse_conllu,
)
from .errors import NbaError
from .lexicon import LexicalEntry, Lexicon, WordType, load_lexicon
from .oracle import OracleStore
from .query import AnswerSet, Query, parse_query, run_query
from .trace import ActivityTrace, PatternReport, detect_rise_decline, trace_encode

__version__ = "0.1.0"

__all__ = [
    "AnswerSet",
    "Binding",
    "BindingGate",
    "Blackboard",
    "Config",
    "ConnectionPathReport",
    "ConstituentSpan",
    "ControlGate",
    "ControlProgram",
    "DependencyArc",
    "GatedConnection",
    "HubPool",
    "LexicalEntry",
    "Lexicon",
    "MatrixCell",
    "NbaError",
    "Network",
    "OracleStore",
    "PatternReport",
    "Population",
    "PopulationKind",
    "Query",
    "RelationMap",
    "RelationSpec",
    "Token",
    "WordType",
    "ActivityTrace",
    "compile",
    "default_relation_map",
    "detect_rise_decline",
    "execute",
    "iter_conllu",
    "load_lexicon",
    "parse_conllu",
    "parse_query",
    "run_query",
    "trace_encode",
]
