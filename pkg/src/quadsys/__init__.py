"""Steiner quadruple systems with resolvable derived designs.

A construction-and-verification engine: orbit development of base-block
systems, group divisible designs filled from congruence-rule transversal
designs, star certificates, and the quadrupling construction that turns a
certified 28-point system into a 112-point system whose derived design at
every point resolves.  Every structural claim is checked exhaustively; an
independent exact-cover search oracle cross-checks resolvability on small
instances.
"""

from .core import (
    Block,
    ConstructionError,
    DataIntegrityError,
    Design,
    DesignError,
    DuplicateBlockError,
    Gdd,
    Label,
    ParameterError,
    Resolution,
    Shift,
    TableError,
    VerifyReport,
    admissible,
    derived_design,
    derived_gdd,
    expected_block_count,
    make_design,
    translate,
    verify_gdd,
    verify_resolution,
    verify_steiner,
)
from .catalog import (
    BaseBlockSystem,
    CongruenceRule,
    GENERATORS,
    develop,
    fill_gdd,
    rdgdd24,
    rdgdd24_resolutions,
    rdgdd42,
    rdgdd42_resolutions,
    rule_for_block,
    sqs8,
    sqs14,
    sqs16,
    sqs22,
    sqs22_resolutions,
    sqs28,
    sqs28_star,
    td343,
)
from .quadruple import (
    QuadrupleAssembly,
    assemble_design,
    boolean_sqs16,
    construct_rdsqs_4v,
    e_classes,
    rdtd_blocks,
    two_column_blocks,
)
from .resolver import SearchOutcome, confirm_rds, find_parallel_class, find_resolution
from .star import (
    StarCertificate,
    StarGroup,
    StarPointCertificate,
    expand_certificate,
    verify_star,
    verify_star_point,
)

__version__ = "0.1.0"
