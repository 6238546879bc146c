"""Mod-2 real monopole Floer packages: flavour assembly, exact triangles,
tower decompositions, link numerics and the real Froyshov invariant."""
from __future__ import annotations

__version__ = "0.1.0"
