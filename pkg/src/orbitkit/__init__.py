"""Exact combinatorics of unipotent classes in reductive groups."""
from .root_datum import RootDatum, build_root_datum, datum_from_cartan
from .orbits import Orbit, generate_all, orbit_by_diagram, orbit_by_label
from .fusion import fuse, fuse_class_spec, fuse_trace

__version__ = "0.1.0"

__all__ = ["RootDatum", "build_root_datum", "datum_from_cartan", "Orbit", "generate_all",
           "orbit_by_diagram", "orbit_by_label", "fuse", "fuse_class_spec", "fuse_trace"]
