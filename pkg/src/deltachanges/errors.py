"""Exception hierarchy shared by every module."""


class DeltaChangesError(Exception):
    """Base class; the CLI prints the subclass name as the diagnostic tag."""


class ParseError(DeltaChangesError, ValueError):
    pass


class TraceError(DeltaChangesError, ValueError):
    pass


class MachineError(DeltaChangesError, ValueError):
    pass


class DuplicateProgram(MachineError):
    def __init__(self, program: str):
        super().__init__(f"program {program or '-'!r} appears more than once")
        self.program = program


class PrefixViolation(MachineError):
    def __init__(self, shorter: str, longer: str):
        super().__init__(f"program {shorter or '-'!r} is a proper prefix of {longer!r}")
        self.pair = (shorter, longer)


class KraftViolation(MachineError):
    def __init__(self, total):
        super().__init__(f"Kraft sum {total} exceeds 1")
        self.total = total


class CostRangeError(DeltaChangesError, IndexError):
    pass


class FamilyError(DeltaChangesError, ValueError):
    pass
