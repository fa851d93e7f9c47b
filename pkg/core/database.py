from __future__ import annotations

import json
import os
from datetime import datetime
from typing import Dict, Optional, Tuple

from dotenv import load_dotenv
from sqlalchemy import (
    BigInteger,
    Column,
    DateTime,
    Integer,
    String,
    Text,
    UniqueConstraint,
    create_engine,
    event,
    select,
)
from sqlalchemy.engine import Engine
from sqlalchemy.orm import DeclarativeBase, Session, sessionmaker

load_dotenv()

DATABASE_URL = os.getenv("TILING_DATABASE_URL", "sqlite:///data/census.db")

BranchCounts = Tuple[Dict[str, int], int]


def normalize_url(url: str) -> str:
    # Hosted Postgres strings use postgres:// but SQLAlchemy requires postgresql://
    if url.startswith("postgres://"):
        url = url.replace("postgres://", "postgresql://", 1)
    return url


def make_engine(url: str = DATABASE_URL) -> Engine:
    url = normalize_url(url)
    if not url.startswith("sqlite"):
        return create_engine(url)

    # Ensure data directory exists for SQLite
    db_path = url[len("sqlite:///"):] if url.startswith("sqlite:///") else ""
    if db_path and db_path != ":memory:":
        if not os.path.isabs(db_path):
            db_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), db_path)
            url = f"sqlite:///{db_path}"
        os.makedirs(os.path.dirname(db_path), exist_ok=True)
    engine = create_engine(url, connect_args={"check_same_thread": False})

    @event.listens_for(engine, "connect")
    def set_pragmas(dbapi_conn, connection_record):
        cursor = dbapi_conn.cursor()
        cursor.execute("PRAGMA journal_mode=WAL")
        cursor.execute("PRAGMA foreign_keys=ON")
        cursor.close()

    return engine


class Base(DeclarativeBase):
    pass


class BranchCheckpoint(Base):
    """One finished top-level branch (first pair 0-partner with a sign) of a search."""

    __tablename__ = "branch_checkpoints"

    id = Column(Integer, primary_key=True, index=True)
    request_key = Column(String(255), nullable=False, index=True)
    branch_partner = Column(Integer, nullable=False)
    branch_sign = Column(Integer, nullable=False)
    counts_json = Column(Text, nullable=False, default="{}")
    nodes = Column(BigInteger, nullable=False, default=0)
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)

    __table_args__ = (
        UniqueConstraint("request_key", "branch_partner", "branch_sign", name="uq_request_branch"),
    )


class CensusEntry(Base):
    __tablename__ = "census_entries"

    id = Column(Integer, primary_key=True, index=True)
    surface = Column(String(32), nullable=False)
    n = Column(Integer, nullable=False)
    count = Column(Integer, nullable=False)
    nodes = Column(BigInteger, nullable=False, default=0)
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)

    __table_args__ = (UniqueConstraint("surface", "n", name="uq_surface_n"),)


def init_db(engine: Engine) -> None:
    Base.metadata.create_all(bind=engine)


class CheckpointStore:
    """Resumable progress for long enumerations and finished census cells."""

    def __init__(self, url: str = DATABASE_URL) -> None:
        self.engine = make_engine(url)
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        init_db(self.engine)

    def _session(self) -> Session:
        return self.SessionLocal()

    def finished_branches(self, request_key: str) -> Dict[Tuple[int, int], BranchCounts]:
        with self._session() as db:
            rows = db.scalars(
                select(BranchCheckpoint).where(BranchCheckpoint.request_key == request_key)
            ).all()
            return {
                (row.branch_partner, row.branch_sign): (json.loads(row.counts_json), row.nodes)
                for row in rows
            }

    def save_branch(
        self, request_key: str, partner: int, sign: int, counts: Dict[str, int], nodes: int
    ) -> None:
        with self._session() as db:
            row = db.scalars(
                select(BranchCheckpoint).where(
                    BranchCheckpoint.request_key == request_key,
                    BranchCheckpoint.branch_partner == partner,
                    BranchCheckpoint.branch_sign == sign,
                )
            ).first()
            if row is None:
                row = BranchCheckpoint(request_key=request_key, branch_partner=partner, branch_sign=sign)
                db.add(row)
            row.counts_json = json.dumps(counts, sort_keys=True)
            row.nodes = nodes
            db.commit()

    def census_count(self, surface: str, n: int) -> Optional[int]:
        with self._session() as db:
            row = db.scalars(
                select(CensusEntry).where(CensusEntry.surface == surface, CensusEntry.n == n)
            ).first()
            return None if row is None else row.count

    def save_census_count(self, surface: str, n: int, count: int, nodes: int = 0) -> None:
        with self._session() as db:
            row = db.scalars(
                select(CensusEntry).where(CensusEntry.surface == surface, CensusEntry.n == n)
            ).first()
            if row is None:
                row = CensusEntry(surface=surface, n=n, count=count)
                db.add(row)
            row.count = count
            row.nodes = nodes
            db.commit()

