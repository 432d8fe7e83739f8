"""HTTP facade over the tuning, verification, analysis and simulation
handlers.  Run with: uvicorn adrckit.service.app:app"""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import (AdrcKitError, ConvergenceError, DefinitenessError,
                      DivergenceError, InterconnectionError, NumericsError,
                      SingularMatrixError)
from . import handlers, schemas

app = FastAPI(
    title="adrckit",
    description="Linear ADRC tuning, half-gain/Riccati cross-checks, "
                "loop analysis and closed-loop simulation.",
    version="0.1.0",
)

_NUMERICAL_FAILURES = (ConvergenceError, SingularMatrixError, DefinitenessError,
                       InterconnectionError, NumericsError)


@app.exception_handler(AdrcKitError)
async def _domain_error(request: Request, exc: AdrcKitError):
    if isinstance(exc, DivergenceError):
        return JSONResponse(status_code=422,
                            content={"detail": str(exc), "time": exc.time})
    if isinstance(exc, _NUMERICAL_FAILURES):
        return JSONResponse(status_code=500, content={"detail": str(exc)})
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/tune", response_model=schemas.TuneResponse)
def tune(req: schemas.TuneRequest):
    return handlers.run_tune(req)


@app.post("/verify-theorem", response_model=schemas.VerifyTheoremResponse)
def verify_theorem(req: schemas.VerifyTheoremRequest):
    return handlers.run_verify_theorem(req)


@app.post("/bode", response_model=schemas.TableResponse)
def bode(req: schemas.BodeRequest):
    return handlers.run_bode(req)


@app.post("/gangofsix", response_model=schemas.TableResponse)
def gangofsix(req: schemas.GangOfSixRequest):
    return handlers.run_gang_of_six(req)


@app.post("/step", response_model=schemas.TableResponse)
def step(req: schemas.StepRequest):
    return handlers.run_step(req)


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate(case: schemas.CaseConfig, mode: str | None = None):
    return handlers.run_simulate(case, mode=mode)
