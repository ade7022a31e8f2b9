"""Outage probability of a reference link inside a finite wireless network.

A fixed number of interferers is placed uniformly in a convex region (disk
or convex polygon) and every link fades independently with Nakagami-m
statistics. The package computes the spatially averaged outage probability
of a reference receiver anywhere in the region, exactly up to numerical
tolerances, through two independent analytic engines plus a Monte Carlo
simulator and an infinite-network closed-form baseline:

- transform inversion (`outage_mgf`): works for any fading shapes >= 0.5;
- reference-link power series (`outage_rlpg`): integer reference shape,
  typically faster and with closed-form building blocks;
- `simulate_outage`: deterministic, parallel Monte Carlo;
- `outage_ppp_rayleigh`: boundary-free Poisson baseline for comparison.

Geometry enters only through the distance distribution from the receiver to
a uniform point (`distance_profile`), so any convex region works.
"""

from .baselines import outage_ppp_rayleigh
from .channel import (GeneralFadingCdf, NakagamiChannel, general_cdf_eval,
                      general_fading_cdf, nakagami_as_general_cdf,
                      nakagami_power_gain_pdf, nakagami_reference_cdf)
from .errors import (InvalidParameterError, ModelInconsistencyError,
                     NumericFailure, ScenarioParseError, UnsupportedModelError)
from .geometry import (DistanceProfile, Region, disk_region, distance_profile,
                       inside_arc_measure, make_fig2_region,
                       make_regular_polygon, pdf_disk_closed_form,
                       pdf_regular_polygon_center, polygon_region,
                       reference_point, region_contains, segment_corner_pdf)
from .mgf import (EulerInversionParams, euler_invert_cdf, inner_expectation,
                  outage_mgf, phi_closed_form)
from .montecarlo import (EmpiricalCdf, McEstimate, sample_uniform_in_region,
                         simulate_distance_distribution, simulate_outage)
from .rlpg import (OmegaExpectationTable, expectation_omega,
                   omega_expectation_table, outage_disk_center,
                   outage_general_family, outage_rlpg, outage_rlpg_for_counts,
                   psi_closed_form)
from .scenario import OutageResult, Scenario
from .specfun import (enumerate_weighted_partitions, gauss_2f1, ln_gamma,
                      upper_incomplete_gamma_regularized)

__version__ = "0.1.0"

__all__ = [
    "DistanceProfile",
    "EmpiricalCdf",
    "EulerInversionParams",
    "GeneralFadingCdf",
    "InvalidParameterError",
    "McEstimate",
    "ModelInconsistencyError",
    "NakagamiChannel",
    "NumericFailure",
    "OmegaExpectationTable",
    "OutageResult",
    "Region",
    "Scenario",
    "ScenarioParseError",
    "UnsupportedModelError",
    "disk_region",
    "distance_profile",
    "enumerate_weighted_partitions",
    "euler_invert_cdf",
    "expectation_omega",
    "gauss_2f1",
    "general_cdf_eval",
    "general_fading_cdf",
    "inner_expectation",
    "inside_arc_measure",
    "ln_gamma",
    "make_fig2_region",
    "make_regular_polygon",
    "nakagami_as_general_cdf",
    "nakagami_power_gain_pdf",
    "nakagami_reference_cdf",
    "omega_expectation_table",
    "outage_disk_center",
    "outage_general_family",
    "outage_mgf",
    "outage_ppp_rayleigh",
    "outage_rlpg",
    "outage_rlpg_for_counts",
    "pdf_disk_closed_form",
    "pdf_regular_polygon_center",
    "phi_closed_form",
    "polygon_region",
    "psi_closed_form",
    "reference_point",
    "region_contains",
    "sample_uniform_in_region",
    "segment_corner_pdf",
    "simulate_distance_distribution",
    "simulate_outage",
    "upper_incomplete_gamma_regularized",
]
