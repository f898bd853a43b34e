from .base import (
    Backends,
    Insight,
    WellDescriptor,
    WellOutput,
    get_well,
    register,
    registered_kinds,
    unregister,
    validate_config,
)
from .presets import all_presets, cycle_preset, load_presets

# Importing the modules registers the built-in wells.
from . import words, thesaurus, reader, context, sound, dictionary  # noqa: F401,E402

__all__ = [
    "Backends",
    "Insight",
    "WellDescriptor",
    "WellOutput",
    "get_well",
    "register",
    "unregister",
    "registered_kinds",
    "validate_config",
    "all_presets",
    "cycle_preset",
    "load_presets",
]
