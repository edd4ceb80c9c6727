"""Shipped derivation scripts in the proof DSL.

Two families: the scaling step showing that additive commutation with 1/k
propagates from n/k to (n+1)/k, and the cocycle reduction that drops a
trivial coefficient from the three-factor cocycle product.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["commutation_scaling_script", "cocycle_reduction_script"]


def commutation_scaling_script(n: int, k: int) -> str:
    """From d(a, 1/k) = 1 and d(a, n/k) = 1 derive d(a, (n+1)/k) = 1.

    The two nonzero declarations discharge the side conditions of
    d1-from-comm; whether they can be dropped is not decidable
    equationally, so they are explicit hypotheses.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    u = str(Fraction(n, k))
    v = str(Fraction(1, k))
    w = str(Fraction(n + 1, k))
    lines = [
        f"# scaling step: commutation with {v} and {u} yields commutation with {w}",
        "var a",
        f"assume d(a, {v}) = 1",
        f"assume d(a, {u}) = 1",
        f"nonzero a + {u}",
        f"nonzero {w} + a",
        f"step d({u}, {v}) = 1 by rat",
        f"step {u} + {v} = {w} by rat",
        f"step {u} + ({v} + a) = ({u} + {v}) + a by assoc-from-d1 from 3",
        f"step {v} + a = a + {v} by comm-from-d1 from 1",
        f"step {u} + (a + {v}) = ({u} + {v}) + a by subst with pos=0.1 from 5, 6",
        f"step {u} + a = a + {u} by comm-from-d1 from 2",
        f"step d({u}, a) = 1 by d1-from-comm from 8",
        f"step {u} + (a + {v}) = ({u} + a) + {v} by assoc-from-d1 from 9",
        f"step ({u} + a) + {v} = ({u} + {v}) + a by subst with pos=0 from 7, 10",
        f"step (a + {u}) + {v} = ({u} + {v}) + a by subst with pos=0.0 from 11, 8",
        f"step (a + {u}) + {v} = a + ({u} + {v}) by assoc-from-d1 from 2",
        f"step a + ({u} + {v}) = ({u} + {v}) + a by subst with pos=0 from 12, 13",
        f"step a + {w} = ({u} + {v}) + a by subst with pos=0.1 from 14, 4",
        f"step a + {w} = {w} + a by subst with pos=1.0 from 15, 4",
        f"step d(a, {w}) = 1 by d1-from-comm from 16",
        f"qed d(a, {w}) = 1",
    ]
    return "\n".join(lines) + "\n"


def cocycle_reduction_script() -> str:
    """From d(-j, i) = 1 derive d(a, i) = d(a, j) * d(j + a, -j + i)."""
    lines = [
        "# cocycle with a trivial third factor collapses to two factors",
        "var a",
        "var i",
        "var j",
        "assume d(-j, i) = 1",
        "step d(a, i) = d(a, j) * d(j + a, -j + i) * d(-j, i) by cocycle",
        "step d(a, i) = d(a, j) * d(j + a, -j + i) * 1"
        " by subst with pos=1.1 from 2, 1",
        "step d(a, j) * d(j + a, -j + i) * 1 = d(a, j) * d(j + a, -j + i)"
        " by ax-group",
        "step d(a, i) = d(a, j) * d(j + a, -j + i) by subst with pos=1 from 3, 4",
        "qed d(a, i) = d(a, j) * d(j + a, -j + i)",
    ]
    return "\n".join(lines) + "\n"
