class BikeigebraError(Exception):
    pass


class StructureError(BikeigebraError, ValueError):
    """Malformed operation tables (wrong order, out-of-range cell, non-involutive twist)."""


class ParameterError(StructureError):
    code = "PARAMS"


class NotVerifiedError(StructureError):
    pass


class BudgetExceeded(BikeigebraError):
    code = "BUDGET_EXCEEDED"


class ParseError(BikeigebraError, ValueError):
    def __init__(self, code, message, line=None, col=None):
        self.code = code
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(f"{code}: {where}{message}")
