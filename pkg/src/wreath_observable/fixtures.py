"""Graph files shipped with the package (``data/*.g``)."""
from importlib import resources
from pathlib import Path

from .graphs import Graph, parse_graph


def fixture_path(name: str) -> Path:
    if not name.endswith(".g"):
        name += ".g"
    path = resources.files("wreath_observable") / "data" / name
    if not path.is_file():
        raise FileNotFoundError(f"no fixture graph named {name!r}")
    return Path(str(path))


def load_fixture(name: str) -> Graph:
    return parse_graph(fixture_path(name).read_bytes())


def fixture_names() -> list[str]:
    return sorted(p.name[:-2] for p in (resources.files("wreath_observable") / "data").iterdir()
                  if p.name.endswith(".g"))
