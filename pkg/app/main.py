# app/main.py
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from .routers import structures, experiments
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

app = FastAPI(
    title="Garside Lab",
    description="Normal forms, acceptors and growth of Garside monoids",
    version="1.0.0",
    openapi_tags=[
        {
            "name": "Structure Analysis API",
            "description": "Acceptors, essential elements, growth and penetration sequences of one structure"
        },
        {
            "name": "Experiment API",
            "description": "Penetration-distance sampling and the verification suite"
        }
    ]
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # Allows all origins
    allow_credentials=True,
    allow_methods=["*"],  # Allows all methods
    allow_headers=["*"],  # Allows all headers
)

# Include routers
app.include_router(structures.router)
app.include_router(experiments.router)

@app.get("/")
async def root():
    return {
        "message": "Welcome to Garside Lab",
        "version": "1.0.0",
        "endpoints": {
            "structures": "/structures",
            "experiments": "/experiments"
        }
    }
