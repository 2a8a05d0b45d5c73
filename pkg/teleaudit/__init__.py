"""Density-operator channel engine for teleportation, no-cloning and the frame-ordering audit."""

__version__ = "0.1.0"
