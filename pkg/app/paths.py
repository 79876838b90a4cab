# app/paths.py
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
TEMPLATES_DIR = BASE_DIR / "templates"
# config di default letto da load_config()
CONFIG_FILE = BASE_DIR / "config.json"
