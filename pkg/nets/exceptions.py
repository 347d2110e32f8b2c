from typing import Optional


class NetError(Exception):
    """Error base de todo el paquete de análisis"""


class InvalidNetError(NetError):
    pass


class UnknownNodeError(NetError):
    def __init__(self, node: str, kind: str = 'nodo'):
        self.node = node
        self.kind = kind
        super().__init__(f"{kind} desconocido: {node}")


class DimensionError(NetError):
    def __init__(self, expected: int, got: int, what: str = 'vector'):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} de longitud {got}, se esperaba {expected}")


class NotEnabledError(NetError):
    """La transición no está habilitada: `place` es el primer lugar sin fichas suficientes"""

    def __init__(self, transition: str, place: str):
        self.transition = transition
        self.place = place
        super().__init__(
            f"{transition} no está habilitada (lugar {place} sin fichas suficientes)"
        )


class NotEnabledAtStepError(NotEnabledError):
    def __init__(self, step: int, transition: str, place: str):
        self.step = step
        super().__init__(transition, place)
        self.args = (
            f"paso {step}: {transition} no está habilitada "
            f"(lugar {place} sin fichas suficientes)",
        )


class OverlappingMergeError(NetError):
    def __init__(self, place: str):
        self.place = place
        super().__init__(f"el lugar {place} aparece en más de un conjunto a fusionar")


class PreconditionError(NetError):
    """Se invocó una operación fuera del alcance de su teorema"""

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: precondición no satisfecha ({reason})")


class MalformedSystemError(NetError):
    pass


class PcmgSpecError(NetError):
    pass


class NetParseError(NetError):
    """Error de lectura del formato textual, con posición (1-based)"""

    def __init__(self, message: str, line: int, column: int = 1,
                 source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ''
        super().__init__(f"{where}{line}:{column}: {message}")


class NetSyntaxError(NetParseError):
    pass


class DuplicateIdError(NetParseError):
    pass


class UnknownIdError(NetParseError):
    pass


class ZeroWeightError(NetParseError):
    pass


class UnknownFixtureError(NetError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"fixture desconocida: {key}")
