"""Linear stability of the integrator on the Dahlquist problem.

Submodules:

* `polynomials`: Gelfand-Shilov terms, the closed-form characteristic polynomial, the root-locus and variant polynomials, the generating function and the Fourier discriminant.
* `region`: ρ(R(z)) with a matrix cross-check, stability regions on grids, root-locus curves and their real-axis crossings.
* `radius`: parabolic radii, the maximum permissible order for a radius and the decay witness of the discriminant.
"""

from abtk.stability.polynomials import (
    char_poly,
    fourier_discriminant,
    gelfand_shilov,
    generating_eval,
    poly_value_direct,
    variant_poly,
    z_poly,
)
from abtk.stability.radius import (
    ParabolicRadiusResult,
    decay_witness,
    max_permissible_order,
    order_scan,
    parabolic_radius,
)
from abtk.stability.region import (
    RootLocusCurve,
    StabilityGrid,
    real_axis_crossings,
    root_locus,
    stability_indicator,
    stability_region,
)
