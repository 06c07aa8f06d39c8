"""Backend selection for the dictionary passes.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Setting ``WREATH_OBSERVABLE_PURE_PYTHON=1`` forces the fallback.
"""
import importlib
import os
from types import ModuleType

_MODULES = {"cython": "wreath_observable._kernels", "python": "wreath_observable._kernels_py"}


def load_backend(name: str) -> ModuleType:
    if name not in _MODULES:
        raise ValueError(f"unknown kernel backend {name!r}; choose from {sorted(_MODULES)}")
    return importlib.import_module(_MODULES[name])


def available_backends() -> list[str]:
    names = []
    for name in _MODULES:
        try:
            load_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select() -> tuple[str, ModuleType]:
    if os.environ.get("WREATH_OBSERVABLE_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()
dictionary_matvec = _impl.dictionary_matvec
dictionary_rmatvec = _impl.dictionary_rmatvec
dictionary_rows = _impl.dictionary_rows
