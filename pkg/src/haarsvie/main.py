"""
haarsvie FastAPI application.

This module initializes the FastAPI application with its exception handlers
and the v1 routers over the problem registry, ensembles and single-path solves.
"""
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from haarsvie.api.v1.api import api_router
from haarsvie.config import settings
from haarsvie.core.exceptions import DomainError, HaarSvieError, RegistryError
from haarsvie.core.logging import setup_logging
from haarsvie.schemas.msg import ErrorMsg

# Initialize logging
setup_logging()
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log startup and shutdown of the application."""
    logger.info(f"Starting {settings.PROJECT_NAME} {settings.VERSION} ({settings.ENV})")
    yield
    logger.info("Shutting down...")


# Initialize FastAPI application
app = FastAPI(
    title="haarsvie API",
    description="Haar collocation and Monte Carlo for 2D stochastic Volterra integral equations",
    version=settings.VERSION,
    docs_url="/docs" if settings.ENV != "production" else None,
    redoc_url="/redoc" if settings.ENV != "production" else None,
    openapi_url="/openapi.json" if settings.ENV != "production" else None,
    lifespan=lifespan,
)


def jsonable_errors(errors):
    """Strip ``ctx`` and ``input``, which may hold values JSON cannot encode."""
    return [{k: v for k, v in err.items() if k not in ("ctx", "input")} for err in errors]


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Handle validation errors in requests."""
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={
            "detail": {"errors": jsonable_errors(exc.errors())},
            "message": "Validation Error",
        },
    )


@app.exception_handler(ValidationError)
async def pydantic_validation_exception_handler(request: Request, exc: ValidationError):
    """Handle Pydantic validation errors raised inside services."""
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={
            "detail": jsonable_errors(exc.errors()),
            "message": "Validation Error",
        },
    )


@app.exception_handler(HaarSvieError)
async def haarsvie_exception_handler(request: Request, exc: HaarSvieError):
    """Map library errors onto HTTP status codes."""
    if isinstance(exc, RegistryError):
        status_code = status.HTTP_404_NOT_FOUND
    elif isinstance(exc, DomainError):
        status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
        logger.error(
            f"Request to {request.url.path} failed: {exc}",
            exc_info=exc,
            extra={"code": exc.code},
        )
    body = ErrorMsg(msg=str(exc), error=exc.code, details=exc.details)
    return JSONResponse(status_code=status_code, content=body.model_dump(mode="json"))


# Include API routers
app.include_router(api_router, prefix=settings.API_V1_STR)


# Health check endpoint
@app.get("/health")
async def health_check():
    """Health check endpoint for load balancers and monitoring."""
    return {
        "status": "healthy",
        "version": settings.VERSION,
        "environment": settings.ENV,
    }


# Root endpoint
@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "name": settings.PROJECT_NAME,
        "version": settings.VERSION,
        "docs": "/docs" if settings.ENV != "production" else None,
    }
