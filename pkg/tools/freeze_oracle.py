"""Regenerate tests/data/oracle_values.json from the cellular oracle.

The file pins the oracle's level values for H~_k(S^V) and H~^k(S^V) over
the sphere grid with at most two irreducibles, for Z and A coefficients.
"""

import json
import sys
from pathlib import Path

from bredon.cellular import assemble_functor, coefficient_table, sphere_complex
from bredon.repring import format_grading
from bredon.verify import sphere_grid


def freeze(ns=(15, 21)) -> dict:
    out = {"schema": "oracle-values/1", "entries": []}
    for n in ns:
        for coeff in ("Z", "A"):
            M = coefficient_table(n, coeff)
            for V in sphere_grid(n, 2):
                C = sphere_complex(V)
                for k in range(V.dim + 2):
                    for variance in ("homology", "cohomology"):
                        t = assemble_functor(C, M, k - 1, variance).table
                        out["entries"].append({
                            "n": n,
                            "coeff": coeff,
                            "V": format_grading(V),
                            "k": k,
                            "variance": variance,
                            "levels": {str(d): str(t.value(d)) for d in V.group.divisors},
                        })
    return out


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "tests/data/oracle_values.json"
    target.write_text(json.dumps(freeze(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {target}")
