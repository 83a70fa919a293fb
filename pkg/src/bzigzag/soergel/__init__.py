"""Type B Soergel diagrams: term language, parser, evaluation and relation checks."""
from .diagram import (
    Diagram, DiagramTypeError, alternating, barbell, broken, cap, comp, crossing, cup, dot_end,
    dot_start, dotted_vertex, identity, jw2, jw3, lin, merge, mirror, needle, poly, split, tens,
    to_text,
)
from .evaluate import SOLVED, Scalars, evaluate, evaluate_matrix, polynomial_image
from .ledger import CoefficientLedger, build_ledger, solution, verify_coefficient_ledger
from .parser import DiagramSyntaxError, parse_diagram, parse_diagram_file
from .relations import (
    CATALOGUE, RelationError, check_relation, degree_four_images_vanish, equalities,
    forcing_polynomials, instances, minimal_rank, relation_ids, relation_suite, run_relation,
)
from .rouquier import compare_with_rouquier, matching_rouquier, soergel_rouquier
