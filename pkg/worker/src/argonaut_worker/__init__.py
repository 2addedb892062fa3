from .worker import PROTOCOL_VERSION, WorkerState, serve

__all__ = ["PROTOCOL_VERSION", "WorkerState", "serve"]
