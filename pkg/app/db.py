# app/db.py
from sqlmodel import SQLModel, create_engine, Session, select
from sqlalchemy import event
import os

# Modelli (solo import: nessuna logica qui)
from .models import ReportRecord

# ---- Engine ----
DB_URL = os.getenv("BERGMAN_DB_URL", "sqlite:///reports.db")
IS_SQLITE = DB_URL.startswith("sqlite")

connect_args = {"check_same_thread": False, "timeout": 30} if IS_SQLITE else {}

engine = create_engine(DB_URL, echo=False, connect_args=connect_args, pool_pre_ping=True)

# Migliorie per SQLite
if IS_SQLITE:
    @event.listens_for(engine, "connect")
    def set_sqlite_pragmas(dbapi_connection, connection_record):
        cur = dbapi_connection.cursor()
        # WAL migliora i read paralleli con write
        cur.execute("PRAGMA journal_mode=WAL;")
        cur.execute("PRAGMA busy_timeout=30000;")
        cur.close()


# ---- Schema ----
def create_db_and_tables(bind=None):
    SQLModel.metadata.create_all(bind or engine)


# ---- Sessioni: dipendenza FastAPI corretta ----
def get_session_dep():
    """Dipendenza per FastAPI: garantisce sempre la chiusura della sessione."""
    with Session(engine, expire_on_commit=False) as session:
        yield session


def save_report(session: Session, command: str, expression: str, body: str,
                verdict: str | None = None, config: dict | None = None,
                media_type: str = "application/json") -> ReportRecord:
    """Archivia l'output di un comando; la sessione arriva dall'esterno."""
    rec = ReportRecord(command=command, expression=expression, verdict=verdict,
                       config=config or {}, body=body, media_type=media_type)
    session.add(rec)
    session.commit()
    session.refresh(rec)
    return rec


def list_reports(session: Session, command: str | None = None, limit: int = 50) -> list[ReportRecord]:
    q = select(ReportRecord).order_by(ReportRecord.id.desc()).limit(limit)
    if command:
        q = q.where(ReportRecord.command == command)
    return list(session.exec(q).all())


def archive(command: str, expression: str, body: str, verdict: str | None = None,
            config: dict | None = None, media_type: str = "application/json") -> int:
    """Per la CLI: apre una sola sessione e la chiude correttamente."""
    create_db_and_tables()
    with Session(engine, expire_on_commit=False) as session:
        return save_report(session, command, expression, body, verdict, config, media_type).id
