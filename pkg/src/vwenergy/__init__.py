"""
Extrinsic energy tests for equality of two distributions of planar
Kendall shapes, calibrated by bootstrap or permutation resampling.
"""

__version__ = "0.1.0"

from .datagen import ContourTemplate, circle_template, perturb_sample, \
    square_template
from .dataio import GroupedDataset, LandmarkTable, load_grouped_dataset, \
    parse_landmark_file, read_landmark_file, read_report, write_landmarks, \
    write_report
from .energy import EnergyReport, energy_statistic, pairwise_distance_matrix, \
    t_energy, v_statistic
from .exceptions import DegenerateConfigurationError, InputError, \
    LandmarkParseError, MeanNotUniqueError, VWEnergyError
from .resampling import CalibrationResult, ResamplePlan, TwoSampleResult, \
    bootstrap_resample_pooled, calibrate, critical_value, p_value, \
    permutation_resample_pooled, shape_energy_test, two_sample_energy_test
from .shapes import canonicalize_phase, preshape, preshapes, \
    vw_chord_distance, vw_chord_distances, vw_embed, vw_extrinsic_mean
