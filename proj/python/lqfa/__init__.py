from ._lqfa import (
    CapacityError,
    choose_n,
    format_event_csv,
    membership,
    mell_event,
    parse_event_csv,
    recognizer_event,
    synthesize,
    verify,
)

__all__ = [
    "CapacityError",
    "choose_n",
    "format_event_csv",
    "membership",
    "mell_event",
    "parse_event_csv",
    "recognizer_event",
    "synthesize",
    "verify",
]
