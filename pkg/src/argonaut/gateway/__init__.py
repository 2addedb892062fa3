from .backends import (
    Backend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
    ScriptRule,
    load_script_rules,
)
from .complete import complete
from .digest import canonical_form, digest
from .provider import PRIMARY_KEY_ENV, SECONDARY_KEY_ENV, HttpProviderBackend
from .types import (
    ChatRequest,
    ChatResponse,
    GatewayError,
    ImagePart,
    Message,
    NoMatchingScript,
    Part,
    ProviderUnreachable,
    SchemaViolation,
    TextPart,
    Usage,
)

__all__ = [
    "Backend",
    "ChatRequest",
    "ChatResponse",
    "GatewayError",
    "ImagePart",
    "Message",
    "HttpProviderBackend",
    "NoMatchingScript",
    "PRIMARY_KEY_ENV",
    "Part",
    "ProviderUnreachable",
    "RecordingBackend",
    "ReplayBackend",
    "SchemaViolation",
    "ScriptRule",
    "SECONDARY_KEY_ENV",
    "ScriptedBackend",
    "TextPart",
    "Usage",
    "canonical_form",
    "complete",
    "digest",
    "load_script_rules",
]
