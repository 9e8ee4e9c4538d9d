"""HTTP service and report builders wrapping the exact core.

The handlers in :mod:`ncequiv.service.handlers` turn validated requests
into JSON-ready report dictionaries; :mod:`ncequiv.service.app` exposes
them over HTTP, and the command-line interface calls them directly so
both front ends produce identical reports.
"""

from .app import create_app
from .schemas import (
    ComaxRequest,
    EvalRequest,
    MatrixTuplePayload,
    PadPencilRequest,
    PencilPayload,
    PencilSimilarityRequest,
    PolyPairRequest,
    PolyRequest,
    RectangularTuplePayload,
    RunConfig,
    VerifyPaperRequest,
)

__all__ = [
    "ComaxRequest",
    "EvalRequest",
    "MatrixTuplePayload",
    "PadPencilRequest",
    "PencilPayload",
    "PencilSimilarityRequest",
    "PolyPairRequest",
    "PolyRequest",
    "RectangularTuplePayload",
    "RunConfig",
    "VerifyPaperRequest",
    "create_app",
]
