"""
FastAPI implementation of the numerans HTTP surface.

Each route wraps the same service operation as the matching CLI subcommand.
"""
import logging
import time
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Optional

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from automata.builtins import BUILTIN_DESCRIPTIONS, get_builtin, prefix_closure
from automata.dfa_file import load_dfa_file
from config import API_CONFIG
from data import AUTOMATA_DIR, bundled_dfa_names
from models.errors import InputError, NumeransError
from models.values import RealValue
from models.words import word_text
from services.numeration_service import NumerationSystem, value_of, word_at
from services.reals_service import (Policy, convergence_table, encode_real, interval_of, subdivide,
                                    value_of_infinite, value_of_prefix_stream)
from utils.formatting import format_decimal, format_rational
from utils.monitoring import OperationMonitor, configure_logging

configure_logging()

logger = logging.getLogger(__name__)

# Initialize FastAPI
app = FastAPI(
    title="Numerans API",
    description="Abstract numeration systems and real-number representation",
    version="1.0.0"
)

operation_monitor = OperationMonitor()


# API Models
class SystemRequest(BaseModel):
    """Selects a numeration system: a builtin name or a bundled DFA file."""
    lang: str = "dyck"
    dfa: Optional[str] = None
    prefix_closure: bool = False


class WordRequest(SystemRequest):
    word: str = ""


class RepRequest(SystemRequest):
    value: int = Field(..., ge=0)


class EncodeRequest(SystemRequest):
    x: str
    depth: int = Field(12, ge=0, le=10_000)
    policy: Policy = Policy.RIGHTMOST


class DecodeRequest(SystemRequest):
    word: str
    depth: Optional[int] = Field(None, ge=0)


class ConvergeRequest(SystemRequest):
    word: str
    n: int = Field(15, ge=1, le=100_000)


def get_system(request: SystemRequest) -> NumerationSystem:
    """Shared system per selector; count caches are safe for concurrent readers."""
    return _cached_system(request.lang, request.dfa, request.prefix_closure)


@lru_cache(maxsize=API_CONFIG["system_cache_size"])
def _cached_system(lang: str, dfa: Optional[str], closure: bool) -> NumerationSystem:
    if dfa:
        if dfa not in bundled_dfa_names():
            raise InputError(f"Unknown bundled DFA {dfa!r}")
        spec = load_dfa_file(str(AUTOMATA_DIR / f"{dfa}.dfa"))
    else:
        spec = get_builtin(lang)
    if closure:
        spec = prefix_closure(spec)
    return NumerationSystem(spec)


def real_payload(value: RealValue) -> Dict[str, Any]:
    return {
        "lo": format_rational(value.lo),
        "hi": format_rational(value.hi),
        "exact": value.is_exact,
        "certified": value.certified,
        "decimal": format_decimal(value.midpoint, 10),
    }


def interval_payload(interval) -> Dict[str, Any]:
    return {"word": word_text(interval.label), "lo": real_payload(interval.lo), "hi": real_payload(interval.hi),
            "text": str(interval)}


@app.exception_handler(NumeransError)
async def numerans_error_handler(request: Request, exc: NumeransError):
    status = 400 if isinstance(exc, InputError) else 422
    logger.error(f"Request to {request.url.path} failed: {exc.code}: {exc.message}")
    return JSONResponse(status_code=status, content={"code": exc.code, "detail": exc.message})


@app.exception_handler(RequestValidationError)
async def validation_error_handler(request: Request, exc: RequestValidationError):
    logger.error(f"Invalid request to {request.url.path}")
    return JSONResponse(status_code=400, content={"code": InputError.code, "detail": str(exc.errors())})


# API Routes
@app.get("/")
def root():
    """Root endpoint."""
    return {"message": "Numerans API"}


@app.get("/langs")
def langs():
    return {"builtins": BUILTIN_DESCRIPTIONS, "dfa": bundled_dfa_names()}


@app.get("/health")
def health_check():
    """
    Health check endpoint.

    Returns:
        Operation metrics with a status and timestamp
    """
    health_metrics = operation_monitor.get_system_health()
    health_metrics["status"] = "healthy"
    health_metrics["timestamp"] = time.time()
    return health_metrics


@app.post("/val")
def val(request: WordRequest):
    with operation_monitor.track("val"):
        system = get_system(request)
        word = system.parse_word(request.word)
        return {"word": word_text(word), "value": str(value_of(system, word))}


@app.post("/rep")
def rep(request: RepRequest):
    with operation_monitor.track("rep"):
        system = get_system(request)
        return {"value": str(request.value), "word": word_text(word_at(system, request.value))}


@app.post("/interval")
def interval(request: WordRequest):
    with operation_monitor.track("interval"):
        system = get_system(request)
        return interval_payload(interval_of(system, system.parse_word(request.word)))


@app.post("/subdivide")
def subdivide_route(request: WordRequest):
    with operation_monitor.track("subdivide"):
        system = get_system(request)
        children = subdivide(system, system.parse_word(request.word))
        return {"children": [interval_payload(child) for child in children]}


@app.post("/decode")
def decode(request: DecodeRequest):
    with operation_monitor.track("decode"):
        system = get_system(request)
        word = system.alphabet.parse_upword(request.word)
        if request.depth is not None:
            value = value_of_prefix_stream(system, word.letters(), request.depth)
        else:
            value = value_of_infinite(system, word)
        return {"word": str(word), "value": real_payload(value)}


@app.post("/encode")
def encode(request: EncodeRequest):
    with operation_monitor.track("encode"):
        system = get_system(request)
        try:
            x = Fraction(request.x)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"Expected a rational like 3/4, got {request.x!r}")
        word = encode_real(system, x, request.depth, request.policy)
        return {"x": format_rational(x), "word": word_text(word)}


@app.post("/converge")
def converge(request: ConvergeRequest):
    with operation_monitor.track("converge"):
        system = get_system(request)
        table = convergence_table(system, system.alphabet.parse_upword(request.word), request.n)
        rows = [{"n": row.n, "prefix": word_text(row.prefix), "val": str(row.val), "v": str(row.v),
                 "ratio_exact": format_rational(row.ratio), "ratio_dec": format_decimal(row.ratio)}
                for row in table.rows]
        return {"word": table.word, "rows": rows, "truncated": table.truncated, "note": table.note}


if __name__ == "__main__":
    # Run the API using Uvicorn
    uvicorn.run(app, host=API_CONFIG["host"], port=API_CONFIG["port"])
