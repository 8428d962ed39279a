"""Control-label naming scheme.

Every gated route is opened by a direction-specific label so that a forward
query never leaks activation back through the mirror edges of the same
binding. Labels are built here and nowhere else.
"""

MATRIX_FORWARD_PREFIX = "mx:fwd:"
MATRIX_REVERSE_PREFIX = "mx:rev:"
SEMANTIC_FORWARD_PREFIX = "sem:fwd:"
SEMANTIC_REVERSE_PREFIX = "sem:rev:"


def matrix_forward(relation: str) -> str:
    return MATRIX_FORWARD_PREFIX + relation


def matrix_reverse(relation: str) -> str:
    return MATRIX_REVERSE_PREFIX + relation


def semantic_forward(label: str) -> str:
    return SEMANTIC_FORWARD_PREFIX + label


def semantic_reverse(label: str) -> str:
    return SEMANTIC_REVERSE_PREFIX + label
