"""Exception types shared across the termgraph package."""


class TermgraphError(Exception):
    """Base class for all termgraph errors."""


class MalformedRecord(TermgraphError):
    """A corpus record could not be parsed."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class EmptyCorpus(TermgraphError):
    """The corpus stream produced zero documents."""


class MalformedTagMapLine(TermgraphError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"tag map line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MalformedLexiconLine(TermgraphError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"lexicon line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MalformedResourceLine(TermgraphError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"resource line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class EmptyAfterNormalization(TermgraphError):
    """Normalization stripped every word of a sequence."""


class UnknownTerm(TermgraphError):
    def __init__(self, term_id: int):
        super().__init__(f"unknown term id {term_id}")
        self.term_id = term_id


class FormatVersionMismatch(TermgraphError):
    def __init__(self, found, expected):
        super().__init__(f"network file version {found!r}, reader expects {expected!r}")
        self.found = found
        self.expected = expected


class CorruptPayload(TermgraphError):
    def __init__(self, offset: int, reason: str = "invalid payload"):
        super().__init__(f"{reason} at offset {offset}")
        self.offset = offset


class UnsupportedFormat(TermgraphError):
    def __init__(self, fmt: str):
        super().__init__(f"unsupported report format {fmt!r}")
        self.fmt = fmt
