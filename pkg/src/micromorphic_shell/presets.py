"""Parameter sets of the built-in parametric studies, stored as data.

Each figure sweeps one dimensionless key over a list of values with the
others held fixed. ``source`` records where the numbers come from.
"""

from __future__ import annotations

from dataclasses import dataclass

from .material import DimensionlessSet


@dataclass(frozen=True)
class FigurePreset:
    figure: int
    title: str
    fixed: dict
    key: str
    values: tuple
    source: str = "fixed by the study"

    def cases(self):
        """(value, DimensionlessSet) for every curve, in table order."""
        for v in self.values:
            yield v, DimensionlessSet(**{**self.fixed, self.key: v})


_L_C_STUDY = dict(g1=1.5, g2=5.0, g3=2.0, beta=0.25, delta=0.5)

FIGURES = {
    2: FigurePreset(
        2, "thick shell, influence of G1",
        dict(g2=5.0, g3=2.0, beta=0.15, lc_ratio=2.0, delta=0.0), "g1", (1.45, 3.25, 4.95),
    ),
    3: FigurePreset(
        3, "thin shell, influence of G1",
        dict(g2=5.0, g3=2.0, beta=0.85, lc_ratio=2.0, delta=0.0), "g1", (1.45, 3.25, 4.95),
    ),
    4: FigurePreset(
        4, "thick shell, influence of G2",
        dict(g1=2.0, g3=1.3, beta=0.15, lc_ratio=2.0, delta=0.0), "g2", (3.0, 5.0, 7.0),
    ),
    5: FigurePreset(
        5, "thick shell, influence of G3",
        dict(g1=2.5, g2=3.5, beta=0.15, lc_ratio=2.0, delta=0.0), "g3", (1.5, 2.0, 2.5),
        source="implementer-chosen g3 values; other values fixed by the study",
    ),
    6: FigurePreset(
        6, "thick shell, influence of the displacement ratio",
        dict(g1=1.5, g2=5.5, g3=2.0, beta=0.2, lc_ratio=1.0), "delta", (-0.5, -0.25, 0.0, 0.25, 0.5),
    ),
    7: FigurePreset(
        7, "deviation from classical, large characteristic length",
        _L_C_STUDY, "lc_ratio", (0.05, 0.1, 0.2, 0.5, 1.0),
    ),
    8: FigurePreset(
        8, "deviation from classical, small characteristic length",
        _L_C_STUDY, "lc_ratio", (2.0, 5.0, 10.0, 20.0, 200.0),
    ),
}


def get_figure(figure: int) -> FigurePreset:
    try:
        return FIGURES[int(figure)]
    except (KeyError, ValueError):
        raise KeyError(f"unknown figure {figure!r}; available: {sorted(FIGURES)}") from None
