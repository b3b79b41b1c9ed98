"""Positive definite functions on strips via Fourier-Laplace transforms of exponentially finite measures."""

from .catalog import CatalogEntry, entry, reference_eval, zed_eval
from .certify import (
    GramReport,
    PointSet,
    StripVerdict,
    classify_strip,
    gram_codifference,
    gram_cosum,
    psd_verdict,
    rotate_to_cosum,
)
from .engine import (
    GridSpec,
    LineSamples,
    QuadResult,
    fl_derivative,
    fl_grid,
    fl_transform,
    invert_on_line,
    moment_transform,
    tail_cutoff,
)
from .measure import (
    MeasureDescriptor,
    descriptor_from_json,
    dump_measure,
    finiteness_interval,
    parse_measure_file,
    scale_add,
    tilt,
    weighted_mass,
)
from .moments import MomentRecord, cf_eval, mgf_eval, moment, zeta_moment
from .strips import Strip

__version__ = "0.1.0"
