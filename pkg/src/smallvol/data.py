"""Shipped fixtures: the proof-script corpus and the figure-eight system."""

from importlib import resources

PROP43 = [f"p43_{i:02d}" for i in range(1, 12)]
PROP44 = [f"p44_{i:02d}" for i in range(1, 10)]
CORPUS = PROP43 + PROP44


def _read(name: str) -> str:
    return resources.files("smallvol").joinpath("data", name).read_text()


def presentation_text(name: str) -> str:
    return _read(f"{name}.pres")


def script_text(name: str) -> str:
    return _read(f"{name}.script")


def figure_eight_text() -> str:
    return _read("fig8.gluing")
