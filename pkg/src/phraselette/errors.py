"""Exception types shared across the engine.

Every error raised by phraselette's own logic derives from PhraseletteError so
callers (CLI, HTTP layer) can map failures to exit codes / status codes in one
place.
"""


class PhraseletteError(Exception):
    """Base class for all phraselette errors."""

    code = "Error"


class ValidationError(PhraseletteError):
    """Bad user-supplied input (configs, CLI flags, request bodies)."""

    code = "Validation"


# --- document / inlet ------------------------------------------------------

class OutOfBoundsError(ValidationError):
    code = "OutOfBounds"


class EmptyRangeError(ValidationError):
    code = "EmptyRange"


class OverlappingInletError(ValidationError):
    code = "OverlappingInlet"


class UnknownInletError(PhraseletteError):
    code = "UnknownInlet"


class StaleGenerationError(PhraseletteError):
    """The rephrasing was produced for an older generation of the inlet."""

    code = "StaleGeneration"


# --- language model backends ------------------------------------------------

class BackendUnavailableError(PhraseletteError):
    code = "BackendUnavailable"


class ContextTooLongError(BackendUnavailableError):
    code = "ContextTooLong"


class MalformedResponseError(PhraseletteError):
    """Remote output could not be parsed into the expected items."""

    code = "MalformedResponse"


# --- phonology ---------------------------------------------------------------

class UnpronounceableError(ValidationError):
    """Input contains no letters, so no pronunciation can be derived."""

    code = "Unpronounceable"


# --- constraints / search ----------------------------------------------------

class MissingAnnotationError(PhraseletteError):
    """A constraint needs an annotation the rephrasing does not carry yet.

    Signals the orchestrator to annotate on demand and retry.
    """

    code = "MissingAnnotation"

    def __init__(self, needs: str, constraint_id: str = ""):
        super().__init__(f"constraint {constraint_id or '?'} needs annotation: {needs}")
        self.needs = needs
        self.constraint_id = constraint_id


class NoHypothesesError(PhraseletteError):
    """Every search hypothesis was pruned (typically by a probability band)."""

    code = "NoHypotheses"


class EmptyInputError(ValidationError):
    code = "EmptyInput"


# --- orchestration / service --------------------------------------------------

class NoActiveWellsError(ValidationError):
    code = "NoActiveWells"


class UnknownWellError(PhraseletteError):
    code = "UnknownWell"


class NotFoundError(PhraseletteError):
    code = "NotFound"


class SchemaVersionMismatchError(PhraseletteError):
    code = "SchemaVersionMismatch"


class SessionIoError(PhraseletteError):
    code = "IoError"
