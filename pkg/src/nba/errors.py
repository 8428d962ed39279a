"""Domain exceptions. The CLI maps any NbaError to exit code 2."""


class NbaError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownPopulation(NbaError):
    pass


class UnknownWord(NbaError):
    def __init__(self, word, line=None):
        self.word = word
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown word {word!r}{where}")


class DuplicateWord(NbaError):
    def __init__(self, word, line=None):
        self.word = word
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate word {word!r}{where}")


class ParseError(NbaError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class NotATree(NbaError):
    pass


class UnknownUpos(NbaError):
    def __init__(self, tag, line=None):
        self.tag = tag
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unsupported UPOS tag {tag!r}{where}")


class UnmappedLabel(NbaError):
    pass


class TypeMismatch(NbaError):
    pass


class HubBusy(NbaError):
    pass


class PoolExhausted(NbaError):
    def __init__(self, kind):
        self.kind = kind
        super().__init__(f"no free hub in pool {kind}")


class NoSuchCell(NbaError):
    pass


class CellBusy(NbaError):
    pass


class InvalidConfig(NbaError):
    pass


class QuerySyntaxError(NbaError):
    pass


class UnknownRelation(NbaError):
    pass


class SpanNotClosed(NbaError):
    pass
