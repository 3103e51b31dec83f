from trilat.surface.triangulation import DegreeType, Triangulation, degree_type
from trilat.surface.parser import format_triangulation, load_triangulation, parse_triangulation
from trilat.surface.canonical import canonical_code, canonical_form, is_isomorphic
from trilat.surface.subdivide import subdivide
from trilat.surface.enumeration import brute_force, enumerate_t, enumerate_triangulations
from trilat.surface.named import get_complex_params, named_triangulation
