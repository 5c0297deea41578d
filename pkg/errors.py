"""
Jerarquía de excepciones de expanse
La CLI traduce cada familia a un código de salida
"""


class ExpanseError(Exception):
    """Error base de expanse"""

    exit_code = 2


class AlphabetMismatchError(ExpanseError):
    """Palabras o sustituciones sobre alfabetos incompatibles"""


class EmptyWordError(ExpanseError):
    """Palabra vacía donde se exige una no vacía"""


class FormatError(ExpanseError):
    """Texto de entrada mal formado"""

    def __init__(self, message: str, line_number: int = 0):
        if line_number:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class PremiseError(ExpanseError):
    """Una hipótesis requerida por la operación no se cumple"""


class NotGrowingError(PremiseError):
    """La sucesión directiva no es everywhere-growing"""


class WindowTooNarrowError(PremiseError):
    """Ventana demasiado corta para la sustitución o el radio pedido"""


class RecoverabilityRangeError(PremiseError):
    """q fuera del rango [1, <tau>)"""


class BudgetExceededError(ExpanseError):
    """Se superó un presupuesto de recursos"""

    exit_code = 3

    def __init__(self, what: str, requested: int, budget: int):
        super().__init__(f"{what}: requested {requested} exceeds budget {budget}")
        self.what = what
        self.requested = requested
        self.budget = budget
