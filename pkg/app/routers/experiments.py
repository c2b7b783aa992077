from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query
from fastapi.concurrency import run_in_threadpool

from ..core.debug import log_timing
from ..core.errors import GarsideError
from ..garside.analysis import run_pd_experiment, verify_all
from ..models.models import ExperimentConfig, PdExperimentRow, VerifyReport

router = APIRouter(
    prefix="/experiments",
    tags=["Experiment API"],
    responses={404: {"description": "Not found"}},
)


@router.post("/pd", response_model=List[PdExperimentRow])
@log_timing
async def run_pd(config: ExperimentConfig):
    """
    Sample the penetration distance pd(x, a) for uniform x in L^(k) and a uniform atom
    """
    try:
        return await run_in_threadpool(run_pd_experiment, config)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error running pd experiment: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error running pd experiment: {str(e)}")


@router.get("/verify", response_model=VerifyReport)
@log_timing
async def get_verify(heavy: Optional[bool] = Query(None, description="Include the heavy checks")):
    """
    Run the verification suite
    """
    try:
        return await run_in_threadpool(verify_all, heavy)
    except GarsideError as e:
        raise HTTPException(status_code=400, detail=f"Error running verification: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error running verification: {str(e)}")
