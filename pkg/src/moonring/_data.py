"""Location of the embedded tables (overridable with ``MOONRING_DATA``)."""
import os
from pathlib import Path

PACKAGE_DATA = Path(__file__).resolve().parent / "data"


def data_dir() -> Path:
    override = os.environ.get("MOONRING_DATA")
    return Path(override) if override else PACKAGE_DATA


def series_file(label: str) -> Path:
    return data_dir() / "series" / f"{label}.csv"


def ring_file(name: str) -> Path:
    return data_dir() / "rings" / f"{name}.json"
