from .app import create_app
from .config import ServiceConfig, load_kernel_script
from .events import (
    EVENT_KINDS,
    EventLog,
    SessionEvent,
    deterministic_clock,
    wall_clock,
)
from .manager import (
    ARCHITECTURES,
    BadArtifactName,
    Session,
    SessionManager,
    SessionNotFound,
    TurnInFlight,
)

__all__ = [
    "ARCHITECTURES", "BadArtifactName", "EVENT_KINDS", "EventLog", "Session",
    "SessionEvent", "SessionManager", "SessionNotFound", "ServiceConfig",
    "TurnInFlight", "create_app", "deterministic_clock", "load_kernel_script",
    "wall_clock",
]
