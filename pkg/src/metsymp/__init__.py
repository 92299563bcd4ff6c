"""Contact metric structures, their metric symplectizations, and verifiers.

The package is organized in layers:

``expressions`` / ``jets``
    Closed-form component functions and exact second-order jet arithmetic.
``charts`` / ``fields``
    Coordinate boxes, tensor fields, and the exterior and Lie calculus.
``curvature``
    Levi-Civita connection, curvature, Ricci, sectional curvature.
``contact``
    Contact metric structures, the h tensor, nullity-constant fitting,
    rescalings, the classification index, eigenspace curvature identities.
``symplectization``
    The product structure with form d(exp(2t) eta), the unique compatible
    metric, slices, induced hypersurface structures, integrability.
``submersion``
    The projection onto the line factor, its fundamental tensors, and the
    curvature and Ricci relations they imply.
``catalog`` / ``structfile`` / ``suite`` / ``cli``
    Built-in examples, a declarative input format, the check runner, and
    the command line front end.
"""

__version__ = "0.1.0"

from .charts import Chart, product_with_line
from .contact import (
    ContactMetricStructure,
    KmuReport,
    boeckx_index,
    compute_h,
    d_homothety,
    eta_einstein_fit,
    fit_kappa_mu,
    h_eigendecomposition,
    is_K_contact,
    kappa_mu_after_rescale,
    reeb_field,
    solve_reeb,
    verify_compatibility,
    verify_contact_form,
    verify_kmu_curvature,
    verify_structure_isomorphism,
)
from .catalog import CatalogEntry, catalog_load, catalog_names
from .curvature import (
    ChristoffelData,
    christoffel,
    covariant_derivative,
    first_bianchi_check,
    ricci,
    riemann,
    sectional,
)
from .fields import (
    ScalarField,
    SmoothMap,
    TensorField,
    contract,
    exterior_derivative,
    interior_product,
    jet_eval,
    lie_bracket,
    lie_derivative,
    lower_index,
    pointwise_solve,
    pullback,
    raise_index,
    wedge,
)
from .jets import Jet2
from .structfile import load_structure_file, parse_structure_text
from .submersion import (
    fit_symplectization_kmu,
    oneill_A,
    oneill_T,
    split,
    verify_currel,
    verify_kumrig_negative,
    verify_fundamental_tensors,
    verify_oneill_curvature,
    verify_ricci_relations,
)
from .suite import SuiteConfig, SuiteReport, report_emit, run_suite
from .symplectization import (
    SliceStructure,
    SymplecticMetricStructure,
    build_metric_symplectization,
    induced_contact_on_hypersurface,
    natural_acs,
    nijenhuis,
    slice_structure,
    translation_isomorphism_check,
    verify_liouville,
    verify_symplectic,
)
