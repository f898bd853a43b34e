from .base import (
    InstructBackend,
    InstructRequest,
    LogitBackend,
    LogitResult,
    Token,
    detokenize,
    parse_items,
)
from .mock import MockInstructBackend, MockLogitBackend
from .remote import RemoteInstructBackend, RemoteLogitBackend, backends_from_env

__all__ = [
    "Token",
    "LogitResult",
    "InstructRequest",
    "LogitBackend",
    "InstructBackend",
    "detokenize",
    "parse_items",
    "MockLogitBackend",
    "MockInstructBackend",
    "RemoteLogitBackend",
    "RemoteInstructBackend",
    "backends_from_env",
]
