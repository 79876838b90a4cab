# app/config.py
from __future__ import annotations
import json
import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from .paths import CONFIG_FILE

DEFAULT_SCHEDULE = (0.0, 0.25, 0.5, 0.6, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99, 0.999)

PHI_TEXT = "radial(z1; [0,1/2]: 1 - 2*r, [1/2,1]: 0)"
PSI_TEXT = "radial(z1; [0,1/2]: 0, [1/2,1]: 2*r - 1)"


@dataclass
class RunConfig:
    n: int | None = None            # None -> dedotto dal testo dell'espressione
    caps: tuple[int, ...] = (32,)
    pad: int | None = None          # None -> default_pad dell'espressione
    qr: int = 64
    xi_count: int = 64
    tol_slice: float = 1e-8
    tol_decay: float = 1e-6
    persistence: float = 0.5
    schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    out: str | None = None
    seed: int = 0
    exact: bool = True

    def __post_init__(self):
        self.caps = tuple(int(c) for c in self.caps)
        self.schedule = tuple(float(t) for t in self.schedule)

    def caps_for(self, n: int) -> tuple[int, ...]:
        """Un solo cap vale per tutte le variabili."""
        if len(self.caps) == 1:
            return self.caps * n
        if len(self.caps) != n:
            raise ValueError(f"caps {self.caps} do not match {n} variables")
        return self.caps

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        known = {f.name for f in fields(self)}
        clean = {k: v for k, v in overrides.items() if k in known and v is not None}
        return replace(self, **clean)

    def echo(self) -> dict:
        data = asdict(self)
        data["caps"] = list(self.caps)
        data["schedule"] = list(self.schedule)
        return data


@dataclass
class ExamplesConfig:
    phi: str = PHI_TEXT
    psi: str = PSI_TEXT
    caps: tuple[int, ...] = (16, 32, 64)
    decay_caps: int = 64
    spectrum_terms: int = 51


@dataclass
class AppConfig:
    # ⚠️ Usare default_factory per oggetti mutabili
    run: RunConfig = field(default_factory=RunConfig)
    examples: ExamplesConfig = field(default_factory=ExamplesConfig)


def _merge(dst: dict, src: dict) -> dict:
    for k, v in src.items():
        if isinstance(v, dict) and isinstance(dst.get(k), dict):
            dst[k] = _merge(dst[k], v)
        else:
            dst[k] = v
    return dst


def _pick(cls, data: dict):
    known = {f.name for f in fields(cls)}
    return cls(**{k: v for k, v in data.items() if k in known})


def load_config(path: Path = CONFIG_FILE) -> AppConfig:
    # default
    data: dict = {"run": asdict(RunConfig()), "examples": asdict(ExamplesConfig())}
    if path.exists():
        try:
            file_data = json.loads(path.read_text(encoding="utf-8"))
            data = _merge(data, file_data or {})
        except Exception:
            # file malformato → mantieni default
            logging.getLogger("bergman.config").warning("config file %s is malformed, using defaults", path)
    try:
        return AppConfig(run=_pick(RunConfig, data["run"]), examples=_pick(ExamplesConfig, data["examples"]))
    except (TypeError, ValueError):
        return AppConfig()


def configure_logging(level: int | None = None) -> None:
    """BERGMAN_DEBUG=1 → livello DEBUG; i log vanno su stderr, stdout resta per CSV/JSON."""
    if level is None:
        level = logging.DEBUG if os.getenv("BERGMAN_DEBUG", "0") == "1" else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger("bergman").setLevel(level)


# istanza singleton caricata a import
CONFIG = load_config()
