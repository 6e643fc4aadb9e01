from __future__ import annotations
from typing import Optional


EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAPABILITY = 3
EXIT_CAP_EXCEEDED = 4


class KcmapError(Exception):
    exit_code = EXIT_USAGE

    def __init__(self, value: str):
        super().__init__(value)
        self.value = value

    def __str__(self) -> str:
        return str(self.value)


class InvalidReferenceError(KcmapError):
    pass


class MissingVariableError(KcmapError):
    def __init__(self, var: int):
        super().__init__(f"assignment does not cover variable x{var}")
        self.var = var


class NnfParseError(KcmapError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class DimacsParseError(KcmapError):
    # kind: header | range | unterminated | count | token
    def __init__(self, line: int, kind: str, msg: str):
        super().__init__(f"line {line}: {kind} error: {msg}")
        self.line = line
        self.kind = kind


class PreconditionError(KcmapError):
    pass


class CapabilityError(KcmapError):
    exit_code = EXIT_CAPABILITY

    def __init__(self, value: str, lang: Optional[str] = None, op: Optional[str] = None):
        super().__init__(value)
        self.lang = lang
        self.op = op


class NotInLanguageError(CapabilityError):
    def __init__(self, lang: str, prop: str, witness: Optional[int] = None):
        where = f" (witness node {witness})" if witness is not None else ""
        super().__init__(f"sentence is not in {lang}: {prop} fails{where}", lang=lang)
        self.prop = prop
        self.witness = witness


class OracleCapError(KcmapError):
    exit_code = EXIT_CAP_EXCEEDED

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: {n} variables exceeds cap {cap}")
        self.n = n
        self.cap = cap
