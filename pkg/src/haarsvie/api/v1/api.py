"""
Main API router for version 1 of the haarsvie API.
"""
from fastapi import APIRouter

from haarsvie.api.v1.endpoints import ensembles, problems, solutions

# Create main API router
api_router = APIRouter()

api_router.include_router(problems.router, prefix="/problems", tags=["Problems"])
api_router.include_router(ensembles.router, prefix="/ensembles", tags=["Ensembles"])
api_router.include_router(solutions.router, prefix="/solutions", tags=["Solutions"])
