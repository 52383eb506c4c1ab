"""Exact lattice and period arithmetic for Lagrangian RP^2 in the triply blown-up ball."""

__version__ = "0.1.0"

from .blowup import (  # noqa: E402
    BettiTriple,
    Correspondence,
    EpsilonValue,
    PeriodVector3,
    PeriodVector4,
    betti_transport,
    enumerate_correspondences,
    epsilon_supremum,
    period_forward,
    period_inverse,
    sigma_class,
    standard_correspondence,
    volume_identity,
)
from .cone import (  # noqa: E402
    KahlerClass,
    area,
    ball_form_conditions,
    decompose_curve_class,
    positivity_certificate,
    tilde_cone_membership,
)
from .decision import Certificate, admits_lagrangian_rp2, audin_scan, replay  # noqa: E402
from .errors import DomainError, UnboundedQueryError  # noqa: E402
from .lattice import (  # noqa: E402
    BlowupLattice,
    LatticeClass,
    Mod2Class,
    blowup_lattice,
    c1_degree,
    enumerate_classes,
    is_primitive,
    pairing,
    pontrjagin_square,
    tilde_lattice,
)
