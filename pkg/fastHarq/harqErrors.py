# ------------------------------------------------------------------------------
# harqErrors.py
# Exception hierarchy shared by the analytical engine, the optimizers, the
# packet simulator and the command line front end.
# ------------------------------------------------------------------------------


class harqError(Exception):
    pass


# ------------------------------------------------------------------------------
# specialFunctionError
# Raised when a special function overflows or a series hits its iteration cap
# param message - description of the failure
# param partialSum - best estimate available when the failure occurred
# ------------------------------------------------------------------------------
class specialFunctionError(harqError):
    def __init__(self, message, partialSum=None):
        super().__init__(message)
        self.partialSum = partialSum


class quadratureError(harqError):
    def __init__(self, message, interval=None, estimate=None):
        super().__init__(message)
        self.interval = interval
        self.estimate = estimate


class infeasibleError(harqError):
    pass


# ------------------------------------------------------------------------------
# nonBracketedError
# The error probability at the ends of the power bracket does not straddle the
# requested target
# param bracket - (low, high) consumed power
# param values - error probability at (low, high)
# ------------------------------------------------------------------------------
class nonBracketedError(harqError):
    def __init__(self, message, bracket=None, values=None):
        super().__init__(message)
        self.bracket = bracket
        self.values = values


class degenerateSuccessError(harqError):
    pass


class unsupportedConfigError(harqError):
    pass


class configError(harqError):
    def __init__(self, message, key=None, line=None):
        if line is not None:
            message = 'line {}: {}'.format(line, message)

        super().__init__(message)
        self.key = key
        self.line = line

# ------------------------------------ EOF -------------------------------------
