from metrics.errors import SkewError


class IngestError(SkewError):
    pass


class MalformedRow(IngestError):
    def __init__(self, line, reason='malformed row'):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class NegativeCount(IngestError):
    def __init__(self, line):
        self.line = line
        super().__init__(f"line {line}: negative count")


class ConflictingCovariate(IngestError):
    def __init__(self, member, covariate):
        self.member = member
        self.covariate = covariate
        super().__init__(f"member {member!r} has conflicting {covariate} values")


class EmptyAfterFilter(IngestError):
    def __init__(self, message="no members left after filtering"):
        super().__init__(message)


class UnknownDimension(IngestError):
    def __init__(self, key, known):
        self.key = key
        super().__init__(f"unknown dimension {key!r}; table has {sorted(known)}")
