"""Photon counting at the dark port of a squeezed-light interferometer.

Exact number statistics of a displaced squeezed vacuum, their semiclassical
fringe structure, photon loss, Fisher information for displacement sensing,
and Monte Carlo estimation experiments.
"""

from .errors import (CutoffError, DarkportError, EstimationError,
                     InvalidCovarianceError)
from .estimation import (EstimationReport, ExperimentConfig,
                         default_search_interval, mle_estimate,
                         run_avg_estimator, run_experiment, sample)
from .fisher import (DipAnnotation, FisherCurve, approx_fisher,
                     avg_photon_sensitivity, classical_fisher,
                     dip_annotations, exact_fisher, fisher_curve,
                     outcome_fisher_term, pure_state_fisher_terms,
                     quantum_fisher, reduction_factor, refine_dip_location)
from .fock import (AmplitudeSet, PhotonDistribution, ZeroPoint, ZeroSet,
                   amplitude, amplitude_set, brute_force_state,
                   displaced_squeezed_number_amplitude, distribution,
                   distribution_derivative, distribution_pair,
                   expected_photon_number, moments, number_state_amplitudes,
                   photon_number_variance, zeros)
from .gaussian import (InterferometerConfig, SqueezedVacuumSpec,
                       TwoModeGaussianState, critical_phase,
                       dark_port_fidelity, displacement_sensitivity_to_phase,
                       exact_dark_port_displacement, interferometer_transform,
                       phase_to_displacement, reduce_dark_port,
                       symplectic_form, two_mode_input)
from .loss import (LossChannel, compose_channels, density_operator_oracle,
                   dip_sharpness, effective_spec, effective_squeezing,
                   lossy_distribution, lossy_distribution_derivative,
                   lossy_expected_photon_number, lossy_pair,
                   lossy_photon_number_variance, mixture_approx_distribution,
                   thermal_coefficient, thermal_decomposition)
from .semiclassics import (MinimaGeometry, WkbApprox, action, envelope,
                           first_fringe_displacement, gaussian_approx,
                           minima_count, minima_geometry, n_of_minimum,
                           phase_gap, segment_action, wkb_approximation,
                           wkb_probability, y_of_minimum)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
