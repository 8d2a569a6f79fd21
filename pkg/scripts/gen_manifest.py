#!/usr/bin/env python3
"""Regenerate stdlib/MANIFEST from the stdlib sources.

Each line is ``name<TAB>file<TAB>type`` where the type is the declared
surface type, printed back from its resolved form.  The acceptance
harness replays every line as a ``#check name : type`` pragma.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hott.parser import DefItem, PostulateItem, PragmaFail, parse, resolve_expr
from hott.pretty import pretty

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


def main() -> None:
    root = Path(__file__).resolve().parents[1] / "stdlib"
    names: set[str] = set()
    lines = []
    for filename in STDLIB_ORDER:
        module = parse((root / filename).read_text(), filename)
        for item in module.items:
            if isinstance(item, PragmaFail):
                continue
            if isinstance(item, (DefItem, PostulateItem)):
                ty = resolve_expr(item.type, [], names)
                lines.append(f"{item.name}\t{filename}\t{pretty(ty)}")
                names.add(item.name)
    (root / "MANIFEST").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} entries")


if __name__ == "__main__":
    main()
