"""pqstab - stabbing families with the (p,q)-property."""

from src.data_classes import ConvexPolygon, Family, Interval, Point2, PQParams, StabbingResult
from src.discrete import Poset, PosetSystem, Tree, TreeSystem
from src.instance_io import InstanceFile, InstanceJSON, ResultJSON, load_instance, save_instance
from src.oracles import check_pq_property, min_stab_bruteforce, verify_stabbing
from src.ordered_helly import HellySystem, reduce_pq_generic, stab_generic
from src.planar_hd import PLANAR, StabMode, reduce_pq, stab_planar

__all__ = [
    'ConvexPolygon',
    'Family',
    'Interval',
    'Point2',
    'PQParams',
    'StabbingResult',
    'Poset',
    'PosetSystem',
    'Tree',
    'TreeSystem',
    'InstanceFile',
    'InstanceJSON',
    'ResultJSON',
    'load_instance',
    'save_instance',
    'check_pq_property',
    'min_stab_bruteforce',
    'verify_stabbing',
    'HellySystem',
    'reduce_pq_generic',
    'stab_generic',
    'PLANAR',
    'StabMode',
    'reduce_pq',
    'stab_planar',
]
