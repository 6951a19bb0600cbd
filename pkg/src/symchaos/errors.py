"""Exception types shared by every module.

Each error carries a short machine-readable ``reason`` code which the CLI
copies into its JSON error payload.
"""


class SymchaosError(Exception):
    reason = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        return {"error": self.reason, "message": str(self), **self.details}


class EmptyShift(SymchaosError):
    reason = "EmptyShift"


class NotTransitive(SymchaosError):
    reason = "NotTransitive"


class FiniteShift(SymchaosError):
    reason = "FiniteShift"


class NotSurjective(SymchaosError):
    reason = "NotSurjective"


class NotApplicable(SymchaosError):
    reason = "NotApplicable"


class HypothesisUnmet(SymchaosError):
    reason = "HypothesisUnmet"


class ConstructionStuck(SymchaosError):
    reason = "ConstructionStuck"

    def __init__(self, level, reason_text):
        super().__init__(f"level {level}: {reason_text}", level=level)
        self.level = level


class ParseError(SymchaosError):
    reason = "ParseError"
