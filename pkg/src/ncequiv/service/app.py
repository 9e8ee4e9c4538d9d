"""HTTP front end: one POST route per command, plus /verify and /health.

The service is a thin shell around :mod:`ncequiv.service.handlers`; the
command-line interface calls the same handlers directly, so both front
ends emit identical reports.  Malformed polynomial text returns a 400
response carrying the offending position; internal certificate failures
surface as 500s because they indicate a bug, never bad input.
"""

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse

from ..equiv import VerificationError
from ..parsing import ParseError
from . import handlers
from .recheck import ReportFormatError, verify_report
from .schemas import (
    ComaxRequest,
    EvalRequest,
    PadPencilRequest,
    PencilSimilarityRequest,
    PolyPairRequest,
    PolyRequest,
    VerifyPaperRequest,
)


def create_app():
    app = FastAPI(
        title="ncequiv",
        description="Exact equivalence checking for noncommutative "
                    "polynomials, with machine-checkable certificates "
                    "and refutation witnesses.",
    )

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError):
        return JSONResponse(status_code=400,
                            content={"error": str(exc), "position": exc.pos})

    @app.exception_handler(ReportFormatError)
    async def _report_error(request: Request, exc: ReportFormatError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(VerificationError)
    async def _verification_error(request: Request, exc: VerificationError):
        return JSONResponse(status_code=500,
                            content={"error": "internal certificate check "
                                              "failed: %s" % exc})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/eval")
    async def run_eval(req: EvalRequest):
        return handlers.handle_eval(req)

    @app.post("/intertwiner")
    async def run_intertwiner(req: PolyPairRequest):
        return handlers.handle_intertwiner(req)

    @app.post("/isospectral")
    async def run_isospectral(req: PolyPairRequest):
        return handlers.handle_isospectral(req)

    @app.post("/chain")
    async def run_chain(req: PolyPairRequest):
        return handlers.handle_chain(req)

    @app.post("/stable-assoc")
    async def run_stable_assoc(req: PolyPairRequest):
        return handlers.handle_stable_assoc(req)

    @app.post("/similar")
    async def run_similar(req: PolyPairRequest):
        return handlers.handle_similar(req)

    @app.post("/norm-equiv")
    async def run_norm_equiv(req: PolyPairRequest):
        return handlers.handle_norm_equiv(req)

    @app.post("/decompose")
    async def run_decompose(req: PolyRequest):
        return handlers.handle_decompose(req)

    @app.post("/factor-homog")
    async def run_factor_homog(req: PolyRequest):
        return handlers.handle_factor_homog(req)

    @app.post("/gcrd")
    async def run_gcrd(req: PolyPairRequest):
        return handlers.handle_gcrd(req)

    @app.post("/comax")
    async def run_comax(req: ComaxRequest):
        return handlers.handle_comax(req)

    @app.post("/pencil-sim")
    async def run_pencil_sim(req: PencilSimilarityRequest):
        return handlers.handle_pencil_sim(req)

    @app.post("/pad-pencil")
    async def run_pad_pencil(req: PadPencilRequest):
        return handlers.handle_pad_pencil(req)

    @app.post("/nc-witness")
    async def run_nc_witness(req: PolyPairRequest):
        return handlers.handle_nc_witness(req)

    @app.post("/verify-paper")
    async def run_verify_paper(req: VerifyPaperRequest):
        return handlers.handle_verify_paper(req)

    @app.post("/verify")
    async def run_verify(report: dict = Body(...)):
        return verify_report(report)

    return app
