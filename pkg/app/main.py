# app/main.py
from fastapi import FastAPI
from fastapi.responses import PlainTextResponse, RedirectResponse

from .config import configure_logging
from .db import create_db_and_tables
from . import routes_api, views_reports

configure_logging()

# ✅ crea l'app PRIMA di includere i router
app = FastAPI(title="Bergman Toeplitz lab")


@app.on_event("startup")
def on_startup():
    create_db_and_tables()


@app.get("/health", response_class=PlainTextResponse)
def health():
    return "OK"


@app.get("/", include_in_schema=False)
def index():
    return RedirectResponse(url="/reports", status_code=302)


# ✅ include di tutti i router DOPO la creazione dell'app
app.include_router(routes_api.router)
app.include_router(views_reports.router)
