from __future__ import annotations

from pathlib import Path

import pytest

from hott.loader import ProcessOptions, process_module
from hott.parser import parse
from hott.terms import EMPTY_SIGNATURE, Signature

ROOT = Path(__file__).resolve().parents[1]
STDLIB = ROOT / "stdlib"

STDLIB_ORDER = [
    "prelude.hott",
    "nat.hott",
    "int.hott",
    "identity.hott",
    "eqnat.hott",
    "fin.hott",
    "sigma-id.hott",
    "equiv.hott",
    "axioms.hott",
    "circle.hott",
]


def stdlib_paths() -> list[Path]:
    return [STDLIB / name for name in STDLIB_ORDER]


def load_stdlib(collect_output: list[str] | None = None) -> Signature:
    sig = EMPTY_SIGNATURE
    sink = collect_output.append if collect_output is not None else (lambda line: None)
    opts = ProcessOptions(out=sink)
    for path in stdlib_paths():
        sig = process_module(sig, parse(path.read_text(), path.name), opts)
    return sig


@pytest.fixture(scope="session")
def stdlib_sig() -> Signature:
    return load_stdlib()
