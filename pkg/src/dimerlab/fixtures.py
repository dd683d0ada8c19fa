"""Bundled example quivers and contraction maps.

Files live in the package ``data`` directory.  Maps name a source fixture
and the arrows to contract, plus reference presentations of the cycle
algebra (generators) and center (ideal generators) in square-dimer
variables x, y, z, w.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import NamedTuple

from .contraction import ContractionMap, contract
from .io import parse
from .quiver import DimerQuiver

NAMES = (
    "c3_hex",
    "fig1i_Q", "fig1i_Qp",
    "fig1ii_Q", "fig1ii_Qp",
    "fig1iii_Q", "fig1iii_Qp", "fig1iii_Qp_reduced",
    "fig1iv_Q", "fig1iv_Qp", "fig1iv_Qp_reduced",
    "non_example_unit",
    "permanent_2cycle",
)


class MapSpec(NamedTuple):
    source: str
    arrows: tuple
    target: str               # fixture isomorphic to the unreduced target
    reduced: str              # fixture after removing removable 2-cycles
    cycle_generators: tuple   # words in x, y, z, w
    center_ideal: tuple       # R = k + (these) S


MAPS = {
    "fig1i": MapSpec("fig1i_Q", ("x1", "y1", "z1", "w1"), "fig1i_Qp", "fig1i_Qp",
                     ("xz", "xw", "yz", "yw"), ("xyzw",)),
    "fig1ii": MapSpec("fig1ii_Q", ("w1", "z2"), "fig1ii_Qp", "fig1ii_Qp",
                      ("xz", "xw", "yz", "yw"), ("xxzw", "yyzw", "xyzw")),
    "fig1iii": MapSpec("fig1iii_Q", ("c",), "fig1iii_Qp", "fig1iii_Qp_reduced",
                       ("xz", "yz", "xw", "yw"), ("xz", "yz")),
    "fig1iv": MapSpec("fig1iv_Q", ("lambda",), "fig1iv_Qp", "fig1iv_Qp_reduced",
                      ("xz", "yw", "xxww", "yyzz"), ("yw", "xxww", "yyzz")),
}

# Contracting two non-green arrows of fig1iii_Q: the target is cancellative
# but has a cycle-algebra generator that no source cycle reaches.
CONTROL = MapSpec("fig1iii_Q", ("u", "d"), "", "", (), ())

# The triangle whose contraction would collapse a face to a point.
UNIT_TRIANGLE = ("x0", "y1", "z2")


def text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")
    return resources.files("dimerlab").joinpath("data").joinpath(f"{name}.dimer").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> DimerQuiver:
    return parse(text(name))


def all_quivers() -> dict:
    return {n: load(n) for n in NAMES}


@lru_cache(maxsize=None)
def load_map(name: str) -> ContractionMap:
    spec = CONTROL if name == "control" else MAPS[name]
    return contract(load(spec.source), spec.arrows)


def cancellative_names() -> list:
    from .matchings import is_cancellative
    return [n for n in NAMES if is_cancellative(load(n))]
