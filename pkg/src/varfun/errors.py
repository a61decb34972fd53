"""Exception hierarchy.

Every error raised on purpose by the library derives from VarfunError, so
the CLI can map them to exit code 2 (or 1 for property failures).
"""


class VarfunError(Exception):
    pass


class AlphabetMismatch(VarfunError, ValueError):
    def __init__(self, word, letters):
        super().__init__(f"word {word!r} is not over alphabet {letters!r}")
        self.word = word


class UnknownLetter(VarfunError, ValueError):
    def __init__(self, letter, letters):
        super().__init__(f"letter {letter!r} is not in alphabet {letters!r}")
        self.letter = letter


class FormatError(VarfunError, ValueError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingEntry(VarfunError, ValueError):
    def __init__(self, word):
        super().__init__(f"no entry for word {word or 'eps'!r}")
        self.word = word


class DuplicateEntry(VarfunError, ValueError):
    def __init__(self, word, line=None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate entry for word {word or 'eps'!r}{where}")
        self.word = word


class OutOfDomain(VarfunError, ValueError):
    pass


class WrongCodomain(VarfunError, ValueError):
    pass


class NotLengthPreserving(VarfunError, ValueError):
    pass


class PartialOuterMap(VarfunError, ValueError):
    def __init__(self, value, arity=None):
        super().__init__(f"outer map for arity {arity} is undefined on {value!r}")
        self.value = value
        self.arity = arity


class BudgetExceeded(VarfunError):
    def __init__(self, count, budget):
        super().__init__(f"{count} items exceed the budget of {budget}")
        self.count = count
        self.budget = budget


class PropertyViolation(VarfunError):
    """A required property failed; carries the failing report."""

    def __init__(self, report, message=None):
        super().__init__(message or report.render())
        self.report = report


class NotBPreassociative(PropertyViolation):
    pass


class NotBAssociative(PropertyViolation):
    pass


class NotMQuasiRangeIdempotent(VarfunError):
    def __init__(self, arity, m, value=None):
        super().__init__(
            f"arity {arity} part is not {m}-quasi-range-idempotent"
            + (f" (value {value!r} is missed by the diagonal section)" if value is not None else "")
        )
        self.arity = arity
        self.m = m
        self.value = value


class NotMGeneratedRange(PropertyViolation):
    pass


class NotSingleLetterOutputs(VarfunError, ValueError):
    pass


class EmptyPrefixOutput(VarfunError, ValueError):
    def __init__(self, word):
        super().__init__(f"prefix function has an unusable output at {word or 'eps'!r}")
        self.word = word


class ChainConditionViolated(VarfunError, ValueError):
    def __init__(self, n):
        super().__init__(f"chain condition violated at position {n}")
        self.n = n


class OuterNotInjective(VarfunError, ValueError):
    def __init__(self, n):
        super().__init__(f"outer map for arity {n} is not one-to-one")
        self.n = n


class DomainViolation(VarfunError, ValueError):
    def __init__(self, index, value):
        super().__init__(f"argument {index} = {value!r} lies outside the domain")
        self.index = index


class InternalConsistencyError(VarfunError):
    """A construction the theory guarantees failed its own verification."""


class TheoremViolation(VarfunError):
    def __init__(self, theorem, table, witness):
        super().__init__(f"{theorem} violated\n{witness}\n{table}")
        self.theorem = theorem
        self.table = table
        self.witness = witness
