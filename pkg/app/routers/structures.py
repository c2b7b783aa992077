from fastapi import APIRouter, HTTPException, Query
from fastapi.concurrency import run_in_threadpool

from ..core.debug import log_timing
from ..core.errors import GarsideError
from ..garside.analysis import (alpha_beta_model, build_report, delta_pure_report, essential_names,
                                growth_report, transitivity_report)
from ..garside.descriptors import parse_descriptor
from ..garside.langgraph import build_acceptor, counts_json, count_sequence, export_digraph
from ..garside.penetration import build_pi
from ..models.models import DeltaPureModel, GrowthProfileModel, ReportResponse

router = APIRouter(
    prefix="/structures",
    tags=["Structure Analysis API"],
    responses={404: {"description": "Not found"}},
)

DESCRIPTOR = Query(..., description="Structure descriptor such as 'artin:A3' or 'table:aa_bb.json'")


def _acceptor_summary(descriptor: str, k: int) -> dict:
    graph = build_acceptor(parse_descriptor(descriptor))
    return {
        "structure": descriptor,
        "vertices": graph.vertex_count,
        "edges": graph.edge_count,
        "digraph": export_digraph(graph),
        "word_counts": counts_json(count_sequence(graph, k)),
    }


def _essential(descriptor: str) -> dict:
    structure = parse_descriptor(descriptor)
    transitivity = transitivity_report(descriptor)
    return {
        "structure": descriptor,
        "essential": essential_names(structure, build_acceptor(structure)),
        "transitivity": transitivity.model_dump(),
    }


def _pseq(descriptor: str, k: int) -> dict:
    structure = parse_descriptor(descriptor)
    pi = build_pi(structure)
    return {
        "structure": descriptor,
        "states": pi.vertex_count,
        "edges": pi.edge_count,
        "counts": counts_json(count_sequence(pi, k)[1:]),
        "rates": alpha_beta_model(descriptor, k=k).model_dump(),
    }


@router.get("/report", response_model=ReportResponse)
@log_timing
async def get_report(descriptor: str = DESCRIPTOR, k: int = Query(8, ge=1, le=64)):
    """
    Get acceptor statistics, Ess, transitivity, growth, α/β and Δ-purity
    """
    try:
        return await run_in_threadpool(build_report, descriptor, k)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error building report: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error building report: {str(e)}")


@router.get("/acceptor")
@log_timing
async def get_acceptor(descriptor: str = DESCRIPTOR, k: int = Query(8, ge=0, le=64)):
    """
    Get the acceptor digraph and its word counts
    """
    try:
        return await run_in_threadpool(_acceptor_summary, descriptor, k)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error building acceptor: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error building acceptor: {str(e)}")


@router.get("/growth", response_model=GrowthProfileModel)
@log_timing
async def get_growth(descriptor: str = DESCRIPTOR, k: int = Query(12, ge=1, le=256)):
    """
    Get the growth profile of the normal-form language and of its ball
    """
    try:
        return await run_in_threadpool(growth_report, descriptor, k)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error computing growth: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error computing growth: {str(e)}")


@router.get("/essential")
@log_timing
async def get_essential(descriptor: str = DESCRIPTOR):
    """
    Get the essential elements and the essential transitivity degree
    """
    try:
        return await run_in_threadpool(_essential, descriptor)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error computing essential elements: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error computing essential elements: {str(e)}")


@router.get("/delta-pure", response_model=DeltaPureModel)
@log_timing
async def get_delta_pure(descriptor: str = DESCRIPTOR):
    """
    Check whether Δ_a = Δ for every atom a
    """
    try:
        return await run_in_threadpool(delta_pure_report, descriptor)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error checking Δ-purity: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error checking Δ-purity: {str(e)}")


@router.get("/pseq")
@log_timing
async def get_pseq(descriptor: str = DESCRIPTOR, k: int = Query(12, ge=1, le=64)):
    """
    Get penetration-sequence counts and the rates α and β
    """
    try:
        return await run_in_threadpool(_pseq, descriptor, k)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error counting penetration sequences: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error counting penetration sequences: {str(e)}")
