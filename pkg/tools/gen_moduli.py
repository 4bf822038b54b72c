"""Regenerate src/qlrc/data/moduli.json.

For every prime p and m >= 2 with p**m <= 2**16 the table stores the smallest
primitive polynomial, ordered by the encoding of its lower coefficients.
Degree-one fields need no entry (the modulus x is used).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from qlrc.gf import MAX_ORDER, is_prime, smallest_primitive_modulus  # noqa: E402


def main() -> None:
    moduli = {}
    for p in range(2, 257):
        if not is_prime(p):
            continue
        m = 2
        while p**m <= MAX_ORDER:
            moduli[f"{p},{m}"] = list(smallest_primitive_modulus(p, m))
            m += 1
    out = Path(__file__).resolve().parents[1] / "src" / "qlrc" / "data" / "moduli.json"
    lines = [f'  "{k}": {json.dumps(v)}' for k, v in moduli.items()]
    out.write_text('{"moduli": {\n' + ",\n".join(lines) + "\n}}\n")
    print(f"wrote {len(moduli)} entries to {out}")


if __name__ == "__main__":
    main()
