class ValidationError(ValueError):
    pass

class OrderBoundError(ValidationError):
    def __init__(self, message, argument = None, value = None):
        super(OrderBoundError, self).__init__(message)
        self.argument = argument
        self.value = value


class SolverError(RuntimeError):
    def __init__(self, message, node = None, level = None):
        super(SolverError, self).__init__(message)
        self.node = node
        self.level = level

    def __str__(self):
        message = self.args[0] if self.args else ''
        if self.node is not None:
            message = '%s (node %d)' % (message, self.node)
        if self.level is not None:
            message = 'N=%d: %s' % (self.level, message)
        return message

class SingularJacobian(SolverError):
    pass

class NonConvergence(SolverError):
    def __init__(self, message, node = None, level = None, outcome = None):
        super(NonConvergence, self).__init__(message, node = node, level = level)
        self.outcome = outcome
