"""Exception hierarchy shared by every module of the package."""


class GraphError(Exception):
    """Base class for all errors raised by mbgraph."""


class CycleDetected(GraphError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("directed graph has a cycle: " + " -> ".join(self.cycle))


class DuplicateLabel(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class UnknownLabel(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class KindMismatch(GraphError):
    pass


class NotATrail(GraphError):
    pass


class NoSeparator(GraphError):
    """No (d-)separator exists between the two vertex sets given the evidence."""


class TooLarge(GraphError):
    """Brute-force oracle refused an instance above its size guard."""


class NoMinimum(GraphError):
    pass


class NotUnique(GraphError):
    pass


class ZeroEvidenceProbability(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class BadRowSum(ParseError):
    pass


class MissingCPT(ParseError):
    pass
