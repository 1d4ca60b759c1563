class ParseError(Exception):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)
        self.message = message
        self.line_number = line_number


class InvalidVertex(Exception):
    pass


class UnbalancedParts(Exception):
    def __init__(self, part_a_size, part_b_size):
        super().__init__(f'parts differ: {part_a_size} != {part_b_size}')
        self.part_a_size = part_a_size
        self.part_b_size = part_b_size


class NotAPerfectMatching(Exception):
    pass


class OracleUnavailable(Exception):
    def __init__(self, message, cap):
        super().__init__(message)
        self.cap = cap


class BoundExceeded(Exception):
    pass


class GeneratorError(Exception):
    pass


class NoHerzogHibiOrder(Exception):
    pass


class OrderCycle(NoHerzogHibiOrder):
    def __init__(self, cycle):
        super().__init__('pair digraph has a cycle: ' + ' -> '.join(str(i + 1) for i in cycle))
        self.cycle = cycle


class OrderViolation(NoHerzogHibiOrder):
    def __init__(self, violation):
        condition, indices = violation
        super().__init__(f'{condition} violated at pairs ' +
                         ', '.join(str(i + 1) for i in indices))
        self.violation = violation


class SelfCheckFailed(Exception):
    pass
